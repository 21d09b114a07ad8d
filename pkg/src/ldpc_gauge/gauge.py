"""Gauging classical codes.

Covers the Kramers-Wannier map on the symmetric algebra, background fields
that remove global redundancies, disorder operators, the fully extended
symplectic Kramers-Wannier map, minimal coupling with Gauss laws, gauge fixing,
the CSS code of a two-level complex together with its two classical codes, and
the coupled pair of gauge theories whose strong-coupling limit is a subsystem
code.

Registers use string labels: ``s{i}`` matter bits, ``t{a}`` gauge qubits on
checks, ``eta{r}`` background ancillas and ``mu{l}`` logical ancillas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .chain import ChainComplex, attach_local_redundancies, cohomology, homology, validate
from .code import ClassicalCode, InfoBits, canonical_info_bits
from .gf2 import (
    DEFAULT_CAP,
    GF2Matrix,
    GF2Vector,
    SpanTester,
    image_basis,
    min_weight_in_coset,
    min_weight_nontrivial,
    rank,
    solve,
)
from .pauli import (
    PauliHamiltonian,
    PauliOperator,
    QubitRegister,
    SymplecticMap,
    commute,
)

__all__ = [
    "Couplings",
    "KramersWannier",
    "kw_map",
    "transverse_field_hamiltonian",
    "BackgroundCoupledCode",
    "couple_background",
    "disorder_operator",
    "ExtendedKW",
    "build_extended_kw",
    "extended_kw",
    "GaugedSystem",
    "gauge",
    "gauge_fix",
    "ThreeCodeDictionary",
    "css_from_complex",
    "css_hamiltonian",
    "RateIdentity",
    "rate_identity_check",
    "QuantumDistances",
    "quantum_distances",
    "SubsystemGaugeModel",
    "build_subsystem_gauge_hamiltonian",
]


class Couplings(NamedTuple):
    J: Fraction = Fraction(1)
    g: Fraction = Fraction(1)
    K: Fraction = Fraction(1)
    Gamma: Fraction = Fraction(1)

    @classmethod
    def of(cls, values: Sequence[object] | Couplings | None) -> Couplings:
        if values is None:
            return cls()
        if len(values) != 4:
            raise ValueError("couplings are (J, g, K, Gamma)")
        return cls(*(Fraction(v) for v in values))


def matter_register(n: int) -> QubitRegister:
    return QubitRegister.named("s", n)


def gauge_register(m: int) -> QubitRegister:
    return QubitRegister.named("t", m)


def _bits(support: Sequence[int], offset: int = 0) -> int:
    out = 0
    for i in support:
        out ^= 1 << (i + offset)
    return out


# Kramers-Wannier on the symmetric algebra


class KramersWannier:
    """Generator substitution C_a -> Z(t_a), X(s_i) -> A_i = prod_{a in delta^T(i)} X(t_a).

    Only operators commuting with every logical flip can be mapped. Z-parts are
    decomposed into checks by elimination; the decomposition is unique up to
    redundancies, so the image is replaced by the lightest (then
    lexicographically first) member of its class. Past ``cap`` the class is
    reduced against the redundancy basis instead, which is still canonical.
    """

    def __init__(self, code: ClassicalCode, cap: int = 1 << 16) -> None:
        self.code = code
        self.source = matter_register(code.n)
        self.target = gauge_register(code.m)
        self.cap = cap
        self._redundancies = SpanTester(code.redundancies)
        self._span = GF2Matrix.from_columns(code.m, list(code.redundancies))

    def violated_logical(self, op: PauliOperator) -> Optional[int]:
        """Index of the first logical flip anticommuting with ``op``, if any."""
        for lam, sigma in enumerate(self.code.logicals):
            if (op.z & sigma.bits).bit_count() & 1:
                return lam
        return None

    def __call__(self, op: PauliOperator) -> PauliOperator:
        if op.register != self.source:
            raise ValueError("operator is not on the matter register")
        lam = self.violated_logical(op)
        if lam is not None:
            raise ValueError(f"operator is charged under logical {lam}; it is outside the symmetric algebra")
        x = 0
        rows = self.code.delta.rows
        i_bits = op.x
        while i_bits:
            low = i_bits & -i_bits
            x ^= rows[low.bit_length() - 1]
            i_bits ^= low
        z = 0
        if op.z:
            y = solve(self.code.delta, GF2Vector(self.code.n, op.z))
            assert y is not None
            best = min_weight_in_coset(y, self._span, self.cap)
            z = best[1].bits if best is not None else self._redundancies.reduce(y.bits)
        return PauliOperator(self.target, x, z)

    def apply_hamiltonian(self, h: PauliHamiltonian) -> PauliHamiltonian:
        return PauliHamiltonian(self.target, [(c, self(op)) for c, op in h.terms])


def kw_map(c: ClassicalCode, cap: int = 1 << 16) -> KramersWannier:
    return KramersWannier(c, cap)


def transverse_field_hamiltonian(c: ClassicalCode, J: object = 1, g: object = 1) -> PauliHamiltonian:
    """-J sum_a C_a - g sum_i X(s_i)."""
    reg = matter_register(c.n)
    terms = [(-Fraction(J), PauliOperator(reg, 0, col)) for col in c.delta.columns]
    terms += [(-Fraction(g), PauliOperator(reg, 1 << i, 0)) for i in range(c.n)]
    return PauliHamiltonian(reg, terms)


# background fields and disorder operators


@dataclass(frozen=True)
class BackgroundCoupledCode:
    """A code with one ancilla per removed redundancy.

    Row ``n + r`` of ``modified_delta`` is the ancilla ``eta{r}``; its support
    is the seam set G_r of checks that pick up that ancilla.
    """

    base: ClassicalCode
    ancillas: tuple[str, ...]
    redundancies: tuple[GF2Vector, ...]
    seam_sets: tuple[GF2Vector, ...]
    modified_delta: GF2Matrix

    @cached_property
    def code(self) -> ClassicalCode:
        return ClassicalCode(self.modified_delta)

    @cached_property
    def register(self) -> QubitRegister:
        return matter_register(self.base.n) + QubitRegister(self.ancillas)

    def modified_check(self, a: int) -> PauliOperator:
        return PauliOperator(self.register, 0, self.modified_delta.columns[a])


def couple_background(
    c: ClassicalCode,
    basis: Sequence[GF2Vector],
    seams: Optional[Sequence[GF2Vector]] = None,
) -> BackgroundCoupledCode:
    """Couple one ancilla to each basis redundancy.

    The seam sets satisfy <G_r|R_r'> = [r = r']. They are solved for unless
    supplied, in which case they are checked.
    """
    tester = SpanTester(())
    for r, vec in enumerate(basis):
        if vec.length != c.m:
            raise ValueError(f"redundancy {r} has length {vec.length}, expected {c.m}")
        if c.delta.matvec(vec):
            raise ValueError(f"basis element {r} is not a redundancy")
        if not tester.add(vec):
            raise ValueError(f"basis element {r} is dependent on the previous ones")
    t = len(basis)
    rmat = GF2Matrix.from_rows(c.m, list(basis))
    if seams is None:
        seams = []
        for r in range(t):
            g = solve(rmat, GF2Vector.unit(t, r))
            assert g is not None, "independent rows always admit a dual basis"
            seams.append(g)
    else:
        if len(seams) != t:
            raise ValueError("need one seam set per redundancy")
        for r, g in enumerate(seams):
            if rmat.matvec(g) != GF2Vector.unit(t, r):
                raise ValueError(f"seam set {r} is not dual to the redundancy basis")
    modified = GF2Matrix(c.n + t, c.m, c.delta.rows + tuple(g.bits for g in seams))
    for r, vec in enumerate(basis):
        if modified.matvec(vec) != GF2Vector.unit(c.n + t, c.n + r):
            raise AssertionError("product of modified checks over R_r is not eta_r")
    bc = BackgroundCoupledCode(
        c, tuple(f"eta{r}" for r in range(t)), tuple(basis), tuple(seams), modified
    )
    if bc.code.kT != c.kT - t:
        raise AssertionError("coupling did not remove the expected redundancies")
    return bc


def disorder_operator(bc: BackgroundCoupledCode, a: int) -> PauliOperator:
    """Spin flip over bits and ancillas that violates exactly the check a."""
    code = bc.code
    if code.kT:
        raise ValueError(f"{code.kT} redundancies remain; no disorder operator exists")
    if not 0 <= a < code.m:
        raise IndexError(a)
    x = solve(code.delta.T, GF2Vector.unit(code.m, a))
    assert x is not None
    op = PauliOperator(bc.register, x.bits, 0)
    for b in range(code.m):
        if commute(op, bc.modified_check(b)) != (b == a):
            raise AssertionError(f"disorder operator for check {a} fails against check {b}")
    return op


# fully extended Kramers-Wannier map


@dataclass(frozen=True)
class ExtendedKW:
    """The extended map together with the data it was built from.

    Source register: ``s*`` then ``eta*``. Target register: ``t*`` then ``mu*``.
    """

    code: ClassicalCode
    background: BackgroundCoupledCode
    info: InfoBits
    map: SymplecticMap

    @property
    def source(self) -> QubitRegister:
        return self.map.source

    @property
    def target(self) -> QubitRegister:
        return self.map.target

    def modified_check(self, a: int) -> PauliOperator:
        """C-hat_a on the source register."""
        return self.background.modified_check(a)

    def modified_star(self, i: int) -> PauliOperator:
        """A-hat_i on the target register: X on delta^T(i) plus the mu owning bit i."""
        return PauliOperator(self.target, self._star_bits(i), 0)

    def _star_bits(self, i: int) -> int:
        m = self.code.m
        x = self.code.delta.rows[i]
        for lam, bit in enumerate(self.info.indices):
            if bit == i:
                x |= 1 << (m + lam)
        return x


def build_extended_kw(c: ClassicalCode) -> ExtendedKW:
    """Symplectic map on n + kT = m + k qubits extending the Kramers-Wannier map.

    X images: X(s_i) -> A-hat_i and X(eta_r) -> X on the seam set G_r. Z images
    are fixed by duality: C-hat_a -> Z(t_a) and Z(s_{i_l}) -> Z(mu_l), so the
    image of each Z(s_i) or Z(eta_r) is read off its decomposition into
    modified checks and information-bit operators.
    """
    bc = couple_background(c, list(c.redundancies))
    info = canonical_info_bits(c)
    n, m, k, t = c.n, c.m, len(info.indices), len(bc.ancillas)
    if n + t != m + k:
        raise AssertionError("register sizes disagree")
    source = bc.register
    target = gauge_register(m) + QubitRegister.named("mu", k)
    ext_rows = bc.modified_delta.rows
    x_images = []
    for s in range(n + t):
        x = ext_rows[s]
        if s < n:
            for lam, bit in enumerate(info.indices):
                if bit == s:
                    x |= 1 << (m + lam)
        x_images.append(PauliOperator(target, x, 0))
    columns = list(bc.modified_delta.columns) + [1 << bit for bit in info.indices]
    decomposition = GF2Matrix.from_columns(n + t, columns)
    z_images = []
    for s in range(n + t):
        y = solve(decomposition, GF2Vector.unit(n + t, s))
        if y is None:
            raise AssertionError(f"Z on source qubit {s} has no decomposition")
        z_images.append(PauliOperator(target, 0, y.bits))
    return ExtendedKW(c, bc, info, SymplecticMap(source, target, x_images, z_images))


def extended_kw(c: ClassicalCode) -> SymplecticMap:
    return build_extended_kw(c).map


# minimal coupling


@dataclass(frozen=True)
class GaugedSystem:
    register: QubitRegister
    hamiltonian: PauliHamiltonian
    gauss_laws: tuple[PauliOperator, ...]
    source_code: ClassicalCode
    complex: Optional[ChainComplex]
    couplings: Couplings


def gauge(
    c: ClassicalCode,
    plaquettes: Optional[GF2Matrix] = None,
    couplings: Sequence[object] | Couplings | None = None,
) -> GaugedSystem:
    """Minimally couple the code to gauge qubits on its checks.

    H = -J sum_a Z(t_a) C_a - g sum_i X(s_i) - K sum_p B_p - Gamma sum_a X(t_a),
    with Gauss laws G_i = X(s_i) prod_{a in delta^T(i)} X(t_a). Terms with a
    zero coupling are dropped.
    """
    cp = Couplings.of(couplings)
    cc = attach_local_redundancies(c, plaquettes) if plaquettes is not None else None
    n, m = c.n, c.m
    reg = matter_register(n) + gauge_register(m)
    terms = []
    for a, col in enumerate(c.delta.columns):
        terms.append((-cp.J, PauliOperator(reg, 0, col | (1 << (n + a)))))
    for i in range(n):
        terms.append((-cp.g, PauliOperator(reg, 1 << i, 0)))
    if plaquettes is not None:
        for col in plaquettes.columns:
            terms.append((-cp.K, PauliOperator(reg, 0, col << n)))
    for a in range(m):
        terms.append((-cp.Gamma, PauliOperator(reg, 1 << (n + a), 0)))
    h = PauliHamiltonian(reg, terms)
    laws = tuple(PauliOperator(reg, (1 << i) | (row << n), 0) for i, row in enumerate(c.delta.rows))
    for _, op in h.terms:
        for i, g in enumerate(laws):
            if commute(op, g):
                raise AssertionError(f"term {op.to_text()} violates Gauss law {i}")
    return GaugedSystem(reg, h, laws, c, cc, cp)


def gauge_fix(gs: GaugedSystem) -> PauliHamiltonian:
    """Unitary gauge: trade X(s_i) for A_i using G_i, then set Z(s_i) to one."""
    n = gs.source_code.n
    target = gauge_register(gs.source_code.m)
    mask = (1 << n) - 1
    terms = []
    for coeff, op in gs.hamiltonian.terms:
        x = op.x
        sx = x & mask
        while sx:
            low = sx & -sx
            x ^= gs.gauss_laws[low.bit_length() - 1].x
            sx ^= low
        terms.append((coeff, PauliOperator(target, x >> n, op.z >> n)))
    return PauliHamiltonian(target, terms)


# the CSS code of a two-level complex


@dataclass(frozen=True)
class ThreeCodeDictionary:
    """A two-level complex read as a CSS code and as two classical codes.

    ``c_cl`` has delta = delta_1 (bits on sites, checks on edges); ``c_cl_tilde``
    has delta = delta_2^T (bits on plaquettes, checks on edges). Either is None
    when its map is not a valid code (for instance an empty top level).
    X-checks are the rows of delta_1, Z-checks the columns of delta_2.
    """

    complex: ChainComplex
    c_cl: Optional[ClassicalCode]
    c_cl_tilde: Optional[ClassicalCode]
    x_checks: GF2Matrix
    z_checks: GF2Matrix

    @property
    def css(self) -> tuple[GF2Matrix, GF2Matrix]:
        return self.x_checks, self.z_checks

    @property
    def n_qubits(self) -> int:
        return self.x_checks.ncols

    @cached_property
    def k_q(self) -> int:
        return self.n_qubits - rank(self.x_checks) - rank(self.z_checks)

    @property
    def k_cl(self) -> int:
        d1 = self.complex.boundary(1)
        return d1.nrows - rank(d1)

    @property
    def k_cl_tilde(self) -> int:
        d2 = self.complex.boundary(2)
        return d2.ncols - rank(d2)

    def table(self) -> list[dict[str, object]]:
        """Rows of the geometric dictionary with the dimension of each space."""
        d1, d2 = self.complex.boundary(1), self.complex.boundary(2)
        n0, n1, n2 = self.complex.level_sizes
        r1, r2 = rank(d1), rank(d2)
        return [
            _row("sites", "V_0", n0, "X-checks", "bits", "local redundancies"),
            _row("edges", "V_1", n1, "qubits", "checks", "checks"),
            _row("plaquettes", "V_2", n2, "Z-checks", "local redundancies", "bits"),
            _row("cycles", "Ker(delta_1)", n1 - r1, "Z loops", "redundancies", "domain walls"),
            _row("cocycles", "Ker(delta_2^T)", n1 - r2, "X loops", "domain walls", "redundancies"),
            _row("closed surfaces", "Ker(delta_2)", n2 - r2, "Z redundancies", "meta-redundancies", "logicals"),
            _row("closed co-surfaces", "Ker(delta_1^T)", n0 - r1, "X redundancies", "logicals", "meta-redundancies"),
        ]


def _row(obj: str, space: str, dim: int, quantum: str, classical: str, classical_tilde: str) -> dict[str, object]:
    return {
        "object": obj,
        "space": space,
        "dimension": dim,
        "quantum": quantum,
        "classical": classical,
        "classical_tilde": classical_tilde,
    }


def _code_or_none(delta: GF2Matrix) -> Optional[ClassicalCode]:
    try:
        return ClassicalCode(delta)
    except ValueError:
        return None


def css_from_complex(cc: ChainComplex) -> ThreeCodeDictionary:
    if cc.D != 2:
        raise ValueError(f"expected a two-level complex, got {cc.D} maps")
    if not validate(cc):
        raise ValueError("boundary maps do not compose to zero")
    d1, d2 = cc.boundary(1), cc.boundary(2)
    x_checks, z_checks = d1, d2.T
    for i, xr in enumerate(x_checks.rows):
        for p, zr in enumerate(z_checks.rows):
            if (xr & zr).bit_count() & 1:
                raise AssertionError(f"X-check {i} anticommutes with Z-check {p}")
    return ThreeCodeDictionary(cc, _code_or_none(d1), _code_or_none(d2.T), x_checks, z_checks)


def css_hamiltonian(d: ThreeCodeDictionary, coefficient: object = -1) -> PauliHamiltonian:
    """Sum of all X- and Z-checks on the qubit register ``t*``."""
    reg = gauge_register(d.n_qubits)
    c = Fraction(coefficient)
    terms = [(c, PauliOperator(reg, r, 0)) for r in d.x_checks.rows]
    terms += [(c, PauliOperator(reg, 0, r)) for r in d.z_checks.rows]
    return PauliHamiltonian(reg, terms)


class RateIdentity(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def rate_identity_check(d: ThreeCodeDictionary) -> RateIdentity:
    """k_q - k_cl - k~_cl against m - n - l.

    k_q comes from the first homology of the complex; the classical dimensions
    come from the ranks of delta_1 and delta_2 separately.
    """
    n, m, l = d.complex.level_sizes
    k_q = homology(d.complex, 1, minimize=False).betti
    lhs = k_q - d.k_cl - d.k_cl_tilde
    rhs = m - n - l
    return RateIdentity(lhs, rhs, lhs == rhs)


class QuantumDistances(NamedTuple):
    d_X: Optional[int]
    d_Z: Optional[int]

    @property
    def d(self) -> Optional[int]:
        vals = [v for v in self if v is not None]
        return min(vals) if len(vals) == 2 else None


def quantum_distances(
    d: ThreeCodeDictionary, cap: int = DEFAULT_CAP, threads: Optional[int] = None, method: str = "auto"
) -> QuantumDistances:
    """Minimum weights of nontrivial Z- and X-type logical operators.

    d_Z ranges over Ker(delta_1) minus Im(delta_2), d_X over Ker(delta_2^T)
    minus Im(delta_1^T). Each is None when k_q = 0 or the enumeration budget
    exceeds ``cap``. ``method`` is passed to the coset search.
    """
    cc = d.complex
    n1 = d.n_qubits
    z_reps = homology(cc, 1, minimize=False).representatives
    x_reps = cohomology(cc, 1, minimize=False).representatives
    z_triv = image_basis(cc.boundary(2))
    x_triv = image_basis(cc.boundary(1).T)
    dz = min_weight_nontrivial(z_triv, z_reps, n1, cap, threads, method)
    dx = min_weight_nontrivial(x_triv, x_reps, n1, cap, threads, method)
    return QuantumDistances(None if dx is None else dx[0], None if dz is None else dz[0])


# coupled gauge theories


@dataclass(frozen=True)
class SubsystemGaugeModel:
    """Two gauge-fixed theories sharing gauge labels, coupled with strength lambda.

    ``hamiltonian`` lives on ``t*`` and ``u*`` (the second theory). ``identified``
    is the strong-coupling term set on ``t*`` alone obtained by substituting
    X(u_a) -> Z(t_a), Z(u_a) -> X(t_a) with the local fields removed;
    ``subsystem`` is the same term set built directly from the check matrices.
    """

    hamiltonian: PauliHamiltonian
    identified: PauliHamiltonian
    subsystem: PauliHamiltonian
    commutation_matrix: GF2Matrix

    @property
    def is_stabilizer(self) -> bool:
        return self.commutation_matrix.is_zero()


def _gauge_fixed_terms(
    reg: QubitRegister, offset: int, stars: GF2Matrix, stabilizers: Optional[GF2Matrix], cp: Couplings
) -> list[tuple[Fraction, PauliOperator]]:
    m = stars.ncols
    terms = [(-cp.J, PauliOperator(reg, 0, 1 << (offset + a))) for a in range(m)]
    terms += [(-cp.g, PauliOperator(reg, row << offset, 0)) for row in stars.rows]
    if stabilizers is not None:
        terms += [(-cp.K, PauliOperator(reg, 0, col << offset)) for col in stabilizers.columns]
    terms += [(-cp.Gamma, PauliOperator(reg, 1 << (offset + a), 0)) for a in range(m)]
    return terms


def build_subsystem_gauge_hamiltonian(
    delta1: GF2Matrix,
    delta2tildeT: GF2Matrix,
    couplings: Sequence[object] | Couplings | None = None,
    lam: object = 1,
    couplings_tilde: Sequence[object] | Couplings | None = None,
    z_stabilizers: Optional[GF2Matrix] = None,
    x_stabilizers: Optional[GF2Matrix] = None,
) -> SubsystemGaugeModel:
    """Couple the gauge theories of two codes that share their check labels.

    ``delta1`` (bits x checks) gives X gauge checks A_i = X on row i, and
    ``delta2tildeT`` (bits x checks) gives the second theory, whose star terms
    become Z gauge checks after the identification. Optional ``z_stabilizers``
    and ``x_stabilizers`` are local redundancies (columns over checks) of the
    first and second code respectively.
    """
    m = delta1.ncols
    if delta2tildeT.ncols != m:
        raise ValueError(f"codes have {m} and {delta2tildeT.ncols} check labels")
    for name, stab in (("z_stabilizers", z_stabilizers), ("x_stabilizers", x_stabilizers)):
        if stab is not None and stab.nrows != m:
            raise ValueError(f"{name} must have one row per check label")
    cp = Couplings.of(couplings)
    cpt = Couplings.of(couplings_tilde) if couplings_tilde is not None else cp
    lam = Fraction(lam)
    reg = gauge_register(m) + QubitRegister.named("u", m)
    terms = _gauge_fixed_terms(reg, 0, delta1, z_stabilizers, cp)
    terms += _gauge_fixed_terms(reg, m, delta2tildeT, x_stabilizers, cpt)
    for a in range(m):
        terms.append((-lam, PauliOperator(reg, 1 << a, 1 << (m + a))))
        terms.append((-lam, PauliOperator(reg, 1 << (m + a), 1 << a)))
    h = PauliHamiltonian(reg, terms)

    single = gauge_register(m)
    mask = (1 << m) - 1
    strong = Couplings(0, cp.g, cp.K, 0)
    strong_t = Couplings(0, cpt.g, cpt.K, 0)
    pre = _gauge_fixed_terms(reg, 0, delta1, z_stabilizers, strong)
    pre += _gauge_fixed_terms(reg, m, delta2tildeT, x_stabilizers, strong_t)
    identified = PauliHamiltonian(
        single,
        [
            (c, PauliOperator(single, (op.x & mask) ^ (op.z >> m), (op.z & mask) ^ (op.x >> m)))
            for c, op in pre
        ],
    )
    direct = [(-cp.g, PauliOperator(single, row, 0)) for row in delta1.rows]
    direct += [(-cpt.g, PauliOperator(single, 0, row)) for row in delta2tildeT.rows]
    if z_stabilizers is not None:
        direct += [(-cp.K, PauliOperator(single, 0, col)) for col in z_stabilizers.columns]
    if x_stabilizers is not None:
        direct += [(-cpt.K, PauliOperator(single, col, 0)) for col in x_stabilizers.columns]
    subsystem = PauliHamiltonian(single, direct)
    if identified != subsystem:
        raise AssertionError("strong-coupling substitution does not reproduce the subsystem Hamiltonian")
    return SubsystemGaugeModel(h, identified, subsystem, delta1 @ delta2tildeT.T)
