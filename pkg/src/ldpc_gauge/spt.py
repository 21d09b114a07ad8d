"""Cluster Hamiltonians on Tanner graphs and their open-boundary edge modes.

The cluster model of a code puts a matter qubit ``s{i}`` on each bit and a
gauge qubit ``t{a}`` on each check, with stabilizers Z(t_a) C_a and X(s_i) A_i.
Its symmetries are the logical flips of the code (X on s) and the redundancies
(Z on t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional, Sequence

from .chain import ChainComplex, classify_redundancies, homology
from .code import ClassicalCode
from .gauge import ExtendedKW, build_extended_kw
from .gf2 import GF2Matrix, GF2Vector, echelon
from .pauli import (
    PauliHamiltonian,
    PauliOperator,
    QubitRegister,
    SymplecticMap,
    commute,
    compose,
    ground_space_log2_dim,
)

__all__ = [
    "ClusterSystem",
    "build_cluster",
    "dw_map",
    "KTResult",
    "build_kt",
    "kt_map",
    "OpenBoundarySystem",
    "open_boundaries_1complex",
    "open_boundaries_2complex",
    "OrderParameterReport",
    "order_parameter_supports",
]


def _support(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _fold_rows(rows: Sequence[int], select: int) -> int:
    out = 0
    for i in _support(select):
        out ^= rows[i]
    return out


def _sweep(ops: Sequence[PauliOperator], against: Sequence[PauliOperator], what: str) -> None:
    for i, p in enumerate(ops):
        for j, q in enumerate(against):
            if commute(p, q):
                raise AssertionError(f"{what} {i} anticommutes with term {j} ({q.to_text(True)})")


@dataclass(frozen=True)
class ClusterSystem:
    code: ClassicalCode
    register: QubitRegister
    hamiltonian: PauliHamiltonian
    x_symmetries: tuple[PauliOperator, ...]
    z_symmetries: tuple[PauliOperator, ...]
    plaquettes: Optional[GF2Matrix] = None

    @property
    def symmetries(self) -> tuple[PauliOperator, ...]:
        return self.x_symmetries + self.z_symmetries

    def edge_term(self, a: int) -> PauliOperator:
        n = self.code.n
        return PauliOperator(self.register, 0, self.code.delta.columns[a] | 1 << (n + a))

    def vertex_term(self, i: int) -> PauliOperator:
        return PauliOperator(self.register, (1 << i) | self.code.delta.rows[i] << self.code.n, 0)

    def hadamard_frame(self) -> PauliHamiltonian:
        """Swap X and Z on the gauge qubits, giving graph-state form X_v prod Z_neighbours."""
        n = self.code.n
        low = (1 << n) - 1

        def flip(op: PauliOperator) -> PauliOperator:
            return PauliOperator(
                self.register, (op.x & low) | (op.z & ~low), (op.z & low) | (op.x & ~low)
            )

        return self.hamiltonian.map_terms(flip)

    def tanner_graph(self) -> dict[str, Any]:
        """JSON-ready node and edge lists of the Tanner graph."""
        c = self.code
        return {
            "bits": [f"s{i}" for i in range(c.n)],
            "checks": [f"t{a}" for a in range(c.m)],
            "edges": [[f"s{i}", f"t{a}"] for i, a in c.delta.coords()],
        }


def _cluster_register(c: ClassicalCode) -> QubitRegister:
    return QubitRegister.named("s", c.n) + QubitRegister.named("t", c.m)


def build_cluster(c: ClassicalCode, plaquettes: Optional[GF2Matrix] = None) -> ClusterSystem:
    """Commuting cluster Hamiltonian with one stabilizer per qubit.

    With ``plaquettes``, the products of edge terms around each plaquette,
    Z on its gauge qubits, are added as well; they are dependent on the edge
    terms and only matter once boundaries are cut.
    """
    reg = _cluster_register(c)
    n = c.n
    terms = [(-1, PauliOperator(reg, 0, col | 1 << (n + a))) for a, col in enumerate(c.delta.columns)]
    terms += [(-1, PauliOperator(reg, (1 << i) | row << n, 0)) for i, row in enumerate(c.delta.rows)]
    if plaquettes is not None:
        if plaquettes.nrows != c.m:
            raise ValueError("plaquette matrix needs one row per check")
        if not (c.delta @ plaquettes).is_zero():
            raise ValueError("plaquettes are not redundancies")
        terms += [(-1, PauliOperator(reg, 0, col << n)) for col in plaquettes.columns]
    h = PauliHamiltonian(reg, terms)
    xs = tuple(PauliOperator(reg, v.bits, 0) for v in c.logicals)
    zs = tuple(PauliOperator(reg, 0, v.bits << n) for v in c.redundancies)
    _sweep(h.operators, h.operators, "term")
    _sweep(xs + zs, h.operators, "symmetry")
    return ClusterSystem(c, reg, h, xs, zs, plaquettes)


def dw_map(c: ClassicalCode) -> SymplecticMap:
    """CNOT circuit from each bit to its checks: X(s_i) -> X(s_i) A_i, Z(t_a) -> Z(t_a) C_a."""
    reg = _cluster_register(c)
    n, m = c.n, c.m
    x_images = [PauliOperator(reg, (1 << i) | c.delta.rows[i] << n, 0) for i in range(n)]
    x_images += [PauliOperator(reg, 1 << (n + a), 0) for a in range(m)]
    z_images = [PauliOperator(reg, 0, 1 << i) for i in range(n)]
    z_images += [PauliOperator(reg, 0, c.delta.columns[a] | 1 << (n + a)) for a in range(m)]
    return SymplecticMap(reg, reg, x_images, z_images)


# Kennedy-Tasaki on the extended register


@dataclass(frozen=True)
class KTResult:
    """The Kennedy-Tasaki map with the Hamiltonians it relates.

    The register is ``s*, eta*, t*, mu*``; ``spt`` and ``ssb`` are the cluster
    and decoupled symmetry-breaking Hamiltonians built from the modified checks
    and stars of the extended Kramers-Wannier map.
    """

    extended: ExtendedKW
    kw: SymplecticMap
    dw: SymplecticMap
    map: SymplecticMap
    spt: PauliHamiltonian
    ssb: PauliHamiltonian

    @property
    def register(self) -> QubitRegister:
        return self.map.source

    def eta_z(self, r: int) -> PauliOperator:
        return PauliOperator.from_labels(self.register, z=[f"eta{r}"])

    def z_symmetry(self, r: int) -> PauliOperator:
        return self.extended.map.z_images[self.extended.code.n + r].embed(self.register)

    def x_symmetry(self, lam: int) -> PauliOperator:
        sigma = self.extended.info.logicals[lam]
        return PauliOperator.from_labels(self.register, x=[f"s{i}" for i in sigma.support()])


def _swap_map(ext: ExtendedKW, reg: QubitRegister) -> SymplecticMap:
    fwd, back = ext.map, ext.map.inverse()
    xs = [p.embed(reg) for p in fwd.x_images] + [p.embed(reg) for p in back.x_images]
    zs = [p.embed(reg) for p in fwd.z_images] + [p.embed(reg) for p in back.z_images]
    return SymplecticMap(reg, reg, xs, zs)


def _extended_dw(ext: ExtendedKW, reg: QubitRegister) -> SymplecticMap:
    """CNOTs from (s, eta) controls to (t, mu) targets along the extended star adjacency."""
    half = ext.source.size
    adjacency = [ext.map.x_images[j].x for j in range(half)]
    target_rows = [0] * half
    for j, row in enumerate(adjacency):
        for t in _support(row):
            target_rows[t] |= 1 << j
    xs = [PauliOperator(reg, (1 << j) | adjacency[j] << half, 0) for j in range(half)]
    xs += [PauliOperator(reg, 1 << (half + t), 0) for t in range(half)]
    zs = [PauliOperator(reg, 0, 1 << j) for j in range(half)]
    zs += [PauliOperator(reg, 0, (1 << (half + t)) | target_rows[t]) for t in range(half)]
    return SymplecticMap(reg, reg, xs, zs)


def build_kt(c: ClassicalCode) -> KTResult:
    ext = build_extended_kw(c)
    reg = ext.source + ext.target
    kw = _swap_map(ext, reg)
    dw = _extended_dw(ext, reg)
    kt = compose(kw, compose(dw, kw))
    n, m = c.n, c.m
    checks = [ext.modified_check(a).embed(reg) for a in range(m)]
    stars = [ext.modified_star(i).embed(reg) for i in range(n)]
    t = [PauliOperator.from_labels(reg, z=[f"t{a}"]) for a in range(m)]
    s = [PauliOperator.from_labels(reg, x=[f"s{i}"]) for i in range(n)]
    spt = PauliHamiltonian(reg, [(-1, t[a] * checks[a]) for a in range(m)] + [(-1, s[i] * stars[i]) for i in range(n)])
    ssb = PauliHamiltonian(reg, [(-1, op) for op in checks + stars])
    if spt.map_terms(kt) != ssb:
        raise AssertionError("Kennedy-Tasaki map does not send the cluster terms to the decoupled terms")
    return KTResult(ext, kw, dw, kt, spt, ssb)


def kt_map(c: ClassicalCode) -> SymplecticMap:
    return build_kt(c).map


# open boundaries


@dataclass(frozen=True)
class OpenBoundarySystem:
    """A cluster system with terms removed along a cut.

    ``dropped_edges`` is the set of cut checks (one per global redundancy) in
    the 1-complex case and the dangling edges in the 2-complex case.
    ``edge_pairs`` are anticommuting pairs of boundary operators commuting with
    the truncated Hamiltonian. ``symmetry_pieces`` maps a symmetry name such as
    ``"Z0"`` or ``"X1"`` to its boundary factors.
    """

    parent: ClusterSystem
    register: QubitRegister
    hamiltonian: PauliHamiltonian
    dropped_edges: tuple[int, ...]
    boundary_sites: tuple[int, ...]
    edge_pairs: tuple[tuple[PauliOperator, PauliOperator], ...] = ()
    symmetry_pieces: dict[str, tuple[PauliOperator, ...]] = field(default_factory=dict)
    truncated_symmetries: dict[str, PauliOperator] = field(default_factory=dict)
    removed_edges: tuple[int, ...] = ()
    removed_sites: tuple[int, ...] = ()
    boundary_code: Optional[GF2Matrix] = None

    @cached_property
    def log2_degeneracy(self) -> int:
        return ground_space_log2_dim(self.hamiltonian)


def _cut_labels(c: ClassicalCode) -> tuple[list[int], list[int]]:
    """One cut check per redundancy: the pivots of the reduced redundancy basis.

    Returns the cut checks and the reduced basis rows, so that row r contains
    cut check r and no other.
    """
    basis = echelon(v.bits for v in c.redundancies)
    pivots = sorted(basis)
    return pivots, [basis[p] for p in pivots]


def open_boundaries_1complex(
    cs: ClusterSystem, locality_bound: int = 4, check_locality: bool = True
) -> OpenBoundarySystem:
    """Cut one check per redundancy and drop every term touching its gauge qubit.

    Refuses codes with redundancies supported on at most ``locality_bound``
    checks; those need the 2-complex construction.
    """
    c = cs.code
    if check_locality:
        local = classify_redundancies(c, locality_bound).local
        if local:
            raise ValueError(
                f"code has {len(local)} local redundancies at bound {locality_bound}; cut a 2-complex instead"
            )
    n = c.n
    cuts, rows = _cut_labels(c)
    cut_set = set(cuts)
    boundary = 0
    for a in cuts:
        boundary |= c.delta.columns[a]
    boundary_sites = tuple(_support(boundary))
    reg = QubitRegister([lab for lab in cs.register.labels if lab not in {f"t{a}" for a in cuts}])
    cut_mask = sum(1 << a for a in cuts)
    terms = [(-1, cs.edge_term(a).restrict(reg)) for a in range(c.m) if a not in cut_set]
    terms += [(-1, cs.vertex_term(i).restrict(reg)) for i in range(n) if not boundary >> i & 1]
    h = PauliHamiltonian(reg, terms)
    _sweep(h.operators, h.operators, "term")

    pairs = []
    for i in boundary_sites:
        z = PauliOperator.from_labels(reg, z=[f"s{i}"])
        g = PauliOperator.from_labels(
            reg, x=[f"s{i}"] + [f"t{a}" for a in _support(c.delta.rows[i] & ~cut_mask)]
        )
        pairs.append((z, g))
    flat = [p for pair in pairs for p in pair]
    _sweep(flat, h.operators, "edge operator")
    for u, (z, g) in enumerate(pairs):
        for v, (z2, g2) in enumerate(pairs):
            if commute(z, g2) != (u == v) or commute(z, z2) or commute(g, g2):
                raise AssertionError(f"edge pairs {u} and {v} have the wrong commutation pattern")

    pieces: dict[str, tuple[PauliOperator, ...]] = {}
    truncated: dict[str, PauliOperator] = {}
    terms_by_edge = {a: cs.edge_term(a).restrict(reg) for a in range(c.m) if a not in cut_set}
    for r, (a_r, row) in enumerate(zip(cuts, rows)):
        sym = PauliOperator(cs.register, 0, row << n).restrict(reg)
        bits = tuple(PauliOperator.from_labels(reg, z=[f"s{i}"]) for i in c.delta.column_support(a_r))
        prod = PauliOperator.identity(reg)
        for a in _support(row & ~(1 << a_r)):
            prod = prod * terms_by_edge[a]
        for p in bits:
            prod = prod * p
        if prod != sym:
            raise AssertionError(f"Z symmetry {r} does not split into its boundary pieces")
        pieces[f"Z{r}"] = bits
        truncated[f"Z{r}"] = sym
    vertex_by_site = {i: cs.vertex_term(i).restrict(reg) for i in range(n) if not boundary >> i & 1}
    for lam, sym_full in enumerate(cs.x_symmetries):
        sym = sym_full.restrict(reg)
        support = _support(sym_full.x)
        own = tuple(g for (z, g), i in zip(pairs, boundary_sites) if i in support)
        prod = PauliOperator.identity(reg)
        for i in support:
            if i in vertex_by_site:
                prod = prod * vertex_by_site[i]
        for g in own:
            prod = prod * g
        if prod != sym:
            raise AssertionError(f"X symmetry {lam} does not split into truncated Gauss laws")
        pieces[f"X{lam}"] = own
        truncated[f"X{lam}"] = sym
    _sweep([p for ps in pieces.values() for p in ps], h.operators, "symmetry piece")

    obs = OpenBoundarySystem(cs, reg, h, tuple(cuts), boundary_sites, tuple(pairs), pieces, truncated)
    if obs.log2_degeneracy != len(pairs):
        raise AssertionError(f"degeneracy 2^{obs.log2_degeneracy} does not match {len(pairs)} edge pairs")
    return obs


def open_boundaries_2complex(
    cs: ClusterSystem,
    cc: ChainComplex,
    cycles: Optional[Sequence[GF2Vector]] = None,
    boundary_type: str = "rough",
) -> OpenBoundarySystem:
    """Remove the edges of a set of cycles and their endpoint sites.

    ``cycles`` defaults to one representative per first-homology class. Edges
    left hanging off a removed site are the dangling set; their edge terms are
    dropped, plaquettes are truncated to the surviving edges, and the plaquettes'
    restrictions to the dangling edges form the boundary code.
    """
    if boundary_type != "rough":
        raise ValueError("only rough boundaries are supported")
    if cc.D != 2:
        raise ValueError("need a two-level complex")
    c = cs.code
    if cc.boundary(1) != c.delta:
        raise ValueError("complex does not match the cluster system's code")
    d2 = cc.boundary(2)
    n, m = c.n, c.m
    if cycles is None:
        cycles = homology(cc, 1).representatives
    removed = 0
    for z in cycles:
        if c.delta.matvec(z):
            raise ValueError("cut set contains a vector that is not a cycle")
        removed |= z.bits
    sites = 0
    for a in _support(removed):
        sites |= c.delta.columns[a]
    dangling = 0
    for i in _support(sites):
        dangling |= c.delta.rows[i]
    dangling &= ~removed

    drop_labels = {f"s{i}" for i in _support(sites)} | {f"t{a}" for a in _support(removed)}
    reg = QubitRegister([lab for lab in cs.register.labels if lab not in drop_labels])
    terms = [(-1, cs.vertex_term(i).restrict(reg)) for i in range(n) if not sites >> i & 1]
    terms += [
        (-1, cs.edge_term(a).restrict(reg)) for a in range(m) if not (removed | dangling) >> a & 1
    ]
    bdry_cols = []
    for col in d2.columns:
        kept = col & ~removed
        if kept:
            terms.append((-1, PauliOperator(cs.register, 0, kept << n).restrict(reg)))
        if col & dangling:
            bdry_cols.append(col & dangling)
    h = PauliHamiltonian(reg, terms)
    _sweep(h.operators, h.operators, "term")

    pieces: dict[str, tuple[PauliOperator, ...]] = {}
    truncated: dict[str, PauliOperator] = {}
    for lam, sym_full in enumerate(cs.x_symmetries):
        sym = sym_full.restrict(reg)
        cut_part = sym_full.x & sites
        piece = PauliOperator(cs.register, _fold_rows(c.delta.rows, cut_part) << n, 0)
        if piece.x >> n & ~dangling:
            raise AssertionError(f"matter symmetry {lam} leaks off the dangling edges")
        piece = piece.restrict(reg)
        prod = piece
        for i in _support(sym_full.x & ~sites):
            prod = prod * cs.vertex_term(i).restrict(reg)
        if prod != sym:
            raise AssertionError(f"matter symmetry {lam} does not reduce to the dangling edges")
        pieces[f"X{lam}"] = (piece,)
        truncated[f"X{lam}"] = sym
    for r, red in enumerate(c.redundancies):
        kept = red.bits & ~removed
        sym = PauliOperator(cs.register, 0, kept << n).restrict(reg)
        bulk = kept & ~dangling
        edge = PauliOperator(cs.register, 0, (kept & dangling) << n).restrict(reg)
        matter = PauliOperator(cs.register, 0, _fold_rows(c.delta.columns, bulk)).restrict(reg)
        prod = edge * matter
        for a in _support(bulk):
            prod = prod * cs.edge_term(a).restrict(reg)
        if prod != sym:
            raise AssertionError(f"magnetic symmetry {r} does not split into bulk and edge parts")
        pieces[f"Z{r}"] = (edge, matter)
        truncated[f"Z{r}"] = sym
    _sweep(list(truncated.values()), h.operators, "truncated symmetry")

    dangling_list = _support(dangling)
    pos = {a: j for j, a in enumerate(dangling_list)}
    bcode = GF2Matrix.from_coords(
        len(dangling_list), len(bdry_cols), [(pos[a], p) for p, col in enumerate(bdry_cols) for a in _support(col)]
    )
    for lam, (piece,) in ((k, v) for k, v in pieces.items() if k.startswith("X")):
        flip = 0
        for a in dangling_list:
            if piece.x >> reg.index(f"t{a}") & 1:
                flip |= 1 << pos[a]
        if bcode.T.matvec(GF2Vector(len(dangling_list), flip)):
            raise AssertionError(f"matter symmetry {lam} is not a logical of the boundary code")
    return OpenBoundarySystem(
        cs,
        reg,
        h,
        tuple(dangling_list),
        (),
        (),
        pieces,
        truncated,
        tuple(_support(removed)),
        tuple(_support(sites)),
        bcode,
    )


# order and disorder parameters


@dataclass(frozen=True)
class OrderParameterReport:
    checks: tuple[int, ...]
    check_boundary: tuple[int, ...]
    flips: tuple[int, ...]
    flip_coboundary: tuple[int, ...]
    order: PauliOperator
    disorder: PauliOperator
    dressed_disorder: PauliOperator
    dressed_order: PauliOperator
    charges: tuple[int, ...]

    @property
    def sizes(self) -> dict[str, int]:
        return {
            "M": len(self.checks),
            "delta_M": len(self.check_boundary),
            "N": len(self.flips),
            "deltaT_N": len(self.flip_coboundary),
        }


def order_parameter_supports(cs: ClusterSystem, M: Sequence[int], N: Sequence[int]) -> OrderParameterReport:
    """Supports of O_M = prod C_a, P_N = prod X(s_i) and their cluster dressings.

    The dressed disorder parameter is the product of Gauss laws over N and the
    dressed order parameter the product of edge stabilizers over M. ``charges``
    records whether the dressed disorder parameter anticommutes with each Z
    symmetry.
    """
    c = cs.code
    n = c.n
    mset = sum(1 << a for a in set(M))
    nset = sum(1 << i for i in set(N))
    dm = _fold_rows(c.delta.columns, mset)
    dn = _fold_rows(c.delta.rows, nset)
    order = PauliOperator(cs.register, 0, dm)
    disorder = PauliOperator(cs.register, nset, 0)
    dressed_disorder = PauliOperator.identity(cs.register)
    for i in _support(nset):
        dressed_disorder = dressed_disorder * cs.vertex_term(i)
    if dressed_disorder != dw_map(c)(disorder):
        raise AssertionError("dressed disorder parameter is not the product of Gauss laws")
    dressed_order = PauliOperator.identity(cs.register)
    for a in _support(mset):
        dressed_order = dressed_order * cs.edge_term(a)
    charges = tuple(commute(dressed_disorder, z) for z in cs.z_symmetries)
    return OrderParameterReport(
        tuple(_support(mset)),
        tuple(_support(dm)),
        tuple(_support(nset)),
        tuple(_support(dn)),
        order,
        disorder,
        dressed_disorder,
        dressed_order,
        charges,
    )
