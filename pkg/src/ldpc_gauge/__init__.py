"""Classical LDPC codes, their gauge theories, dualities and cluster models over GF(2)."""

from .barriers import (
    BarrierProfile,
    SoundnessReport,
    descent_certificate,
    energy_barrier,
    locally_minimal_distance,
    soundness,
)
from .chain import (
    ChainComplex,
    HomologySummary,
    attach_local_redundancies,
    classify_redundancies,
    cohomology,
    dualize,
    homology,
    pairing,
    validate,
)
from .code import (
    ClassicalCode,
    CodeParameters,
    canonical_info_bits,
    code_parameters,
    distance,
    ldpc_profile,
    logicals_basis,
    min_weight_logical,
    redundancy_basis,
    transpose_code,
)
from .families import (
    FamilyInstance,
    FamilySpec,
    classical_gauge_theory_code,
    haah_code,
    ising,
    newman_moore,
    plaquette_ising,
    random_expander_code,
    toric_complex,
    xcube_complex,
)
from .formats import ParseError, emit_alist, emit_report, load_codefile, parse_alist
from .gauge import (
    BackgroundCoupledCode,
    GaugedSystem,
    ThreeCodeDictionary,
    build_subsystem_gauge_hamiltonian,
    couple_background,
    css_from_complex,
    disorder_operator,
    extended_kw,
    gauge,
    gauge_fix,
    kw_map,
    quantum_distances,
    rate_identity_check,
)
from .gf2 import (
    GF2Matrix,
    GF2Vector,
    image_membership,
    kernel_basis,
    min_weight_in_coset,
    rank,
    solve,
)
from .kernels import available_backends, backend, set_threads, use_backend
from .pauli import (
    PauliHamiltonian,
    PauliOperator,
    QubitRegister,
    SymplecticMap,
    apply_map,
    commute,
    compose,
    ground_space_log2_dim,
    hamiltonian_equal,
    stabilizer_group_rank,
)
from .spt import (
    ClusterSystem,
    OpenBoundarySystem,
    build_cluster,
    dw_map,
    kt_map,
    open_boundaries_1complex,
    open_boundaries_2complex,
    order_parameter_supports,
)

__version__ = "0.1.0"
