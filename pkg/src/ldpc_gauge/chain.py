"""Chain complexes over GF(2).

``ChainComplex(maps)`` takes the boundary maps from the top level down,
``[delta_D, ..., delta_1]``, where ``delta_q`` sends level-q chains to level q-1.
Level sizes are read off the matrix shapes.

Conventions used throughout:

* cycles ``Z_q = Ker delta_q`` (all of level 0), boundaries ``B_q = Im delta_{q+1}``
* cocycles ``Z^q = Ker delta_{q+1}^T`` (all of level D), coboundaries ``B^q = Im delta_q^T``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .code import ClassicalCode
from .gf2 import (
    DEFAULT_CAP,
    GF2Matrix,
    GF2Vector,
    SpanTester,
    image_basis,
    kernel_basis,
    min_weight_in_coset,
)

__all__ = [
    "ChainComplex",
    "HomologySummary",
    "RedundancyClassification",
    "validate",
    "homology",
    "cohomology",
    "dualize",
    "pairing",
    "attach_local_redundancies",
    "classify_redundancies",
    "DEFAULT_LOCALITY_BOUND",
]

DEFAULT_LOCALITY_BOUND = 8


class ChainComplex:
    def __init__(self, maps: Sequence[GF2Matrix]) -> None:
        if not maps:
            raise ValueError("a complex needs at least one map")
        ascending = list(reversed(maps))
        for q in range(1, len(ascending)):
            lower, upper = ascending[q - 1], ascending[q]
            if upper.nrows != lower.ncols:
                raise ValueError(
                    f"delta_{q + 1} has {upper.nrows} rows but level {q} has size {lower.ncols}"
                )
        self._ascending = tuple(ascending)

    @classmethod
    def from_css(cls, x_checks: GF2Matrix, z_checks: GF2Matrix) -> ChainComplex:
        """Complex with delta_1 = X-check matrix and delta_2 = Z-check matrix transposed."""
        return cls([z_checks.T, x_checks])

    @property
    def D(self) -> int:
        return len(self._ascending)

    @property
    def maps(self) -> tuple[GF2Matrix, ...]:
        """Boundary maps from the top level down."""
        return tuple(reversed(self._ascending))

    @property
    def level_sizes(self) -> tuple[int, ...]:
        return (self._ascending[0].nrows,) + tuple(m.ncols for m in self._ascending)

    def boundary(self, q: int) -> Optional[GF2Matrix]:
        """delta_q for 1 <= q <= D, else None (the zero map)."""
        if 1 <= q <= self.D:
            return self._ascending[q - 1]
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self._ascending == other._ascending

    def __hash__(self) -> int:
        return hash(self._ascending)

    def __repr__(self) -> str:
        return f"ChainComplex(level_sizes={self.level_sizes})"


@dataclass(frozen=True)
class HomologySummary:
    level: int
    dim_cycles: int
    dim_boundaries: int
    betti: int
    representatives: tuple[GF2Vector, ...]
    minimized: bool


class RedundancyClassification(NamedTuple):
    local: tuple[GF2Vector, ...]
    global_classes: int


def validate(cc: ChainComplex) -> bool:
    for q in range(1, cc.D):
        if not (cc.boundary(q) @ cc.boundary(q + 1)).is_zero():
            return False
    return True


def _check_level(cc: ChainComplex, q: int) -> None:
    if not 0 <= q <= cc.D:
        raise ValueError(f"level {q} outside 0..{cc.D}")


def _summary(
    q: int,
    size: int,
    cycle_map: Optional[GF2Matrix],
    boundary_map: Optional[GF2Matrix],
    cap: int,
    minimize: bool,
) -> HomologySummary:
    if cycle_map is None:
        cycles = [GF2Vector.unit(size, i) for i in range(size)]
    else:
        cycles = kernel_basis(cycle_map)
    if boundary_map is None:
        boundary_map = GF2Matrix.zeros(size, 0)
    boundaries = image_basis(boundary_map)
    tester = SpanTester(boundaries)
    reps = [z for z in cycles if tester.add(z)]
    if not minimize:
        return HomologySummary(q, len(cycles), len(boundaries), len(reps), tuple(reps), False)
    minimized = True
    out = []
    for z in reps:
        best = min_weight_in_coset(z, boundary_map, cap)
        if best is None:
            minimized = False
            out.append(z)
        else:
            out.append(best[1])
    if not minimized:
        out = reps
    return HomologySummary(q, len(cycles), len(boundaries), len(reps), tuple(out), minimized)


def homology(cc: ChainComplex, q: int, cap: int = DEFAULT_CAP, minimize: bool = True) -> HomologySummary:
    """Cycles modulo boundaries at level q, with one representative per generator.

    Representatives are minimum-weight members of their class when every coset
    search fits in ``cap``; otherwise the raw basis-completion vectors are kept
    and ``minimized`` is False. ``minimize=False`` skips the search.
    """
    _check_level(cc, q)
    return _summary(q, cc.level_sizes[q], cc.boundary(q), cc.boundary(q + 1), cap, minimize)


def cohomology(cc: ChainComplex, q: int, cap: int = DEFAULT_CAP, minimize: bool = True) -> HomologySummary:
    """Cocycles modulo coboundaries at level q."""
    _check_level(cc, q)
    up = cc.boundary(q + 1)
    down = cc.boundary(q)
    return _summary(
        q, cc.level_sizes[q], None if up is None else up.T, None if down is None else down.T, cap, minimize
    )


def dualize(cc: ChainComplex) -> ChainComplex:
    """The complex with transposed maps in reversed order."""
    return ChainComplex([cc.boundary(q).T for q in range(1, cc.D + 1)])


def pairing(cc: ChainComplex, cycle: GF2Vector, cocycle: GF2Vector, q: int) -> int:
    """Overlap parity of a level-q cycle and cocycle."""
    _check_level(cc, q)
    size = cc.level_sizes[q]
    if cycle.length != size or cocycle.length != size:
        raise ValueError(f"level {q} vectors must have length {size}")
    down = cc.boundary(q)
    if down is not None and down.matvec(cycle):
        raise ValueError(f"not a cycle: boundary has support {down.matvec(cycle).support()}")
    up = cc.boundary(q + 1)
    if up is not None and up.T.matvec(cocycle):
        raise ValueError(f"not a cocycle: coboundary has support {up.T.matvec(cocycle).support()}")
    return cycle.dot(cocycle)


def attach_local_redundancies(c: ClassicalCode, plaquettes: GF2Matrix) -> ChainComplex:
    """Two-level complex with delta_1 = c.delta and delta_2 = plaquettes."""
    if plaquettes.nrows != c.m:
        raise ValueError(f"plaquette matrix has {plaquettes.nrows} rows, code has {c.m} checks")
    product = c.delta @ plaquettes
    for p, col in enumerate(product.columns):
        if col:
            raise ValueError(f"plaquette {p} is not a redundancy")
    cc = ChainComplex([plaquettes, c.delta])
    assert validate(cc)
    return cc


def _low_weight_redundancies(c: ClassicalCode, bound: int) -> set[int]:
    """All circuits of delta with at most ``bound`` checks.

    A circuit grows from its smallest check; while the partial product is
    nonzero some remaining check must touch its lowest unsatisfied bit, so
    branching over the checks on that bit reaches every circuit.
    """
    cols = c.delta.columns
    on_bit = [c.delta.row_support(i) for i in range(c.n)]
    max_w = max((col.bit_count() for col in cols), default=0)
    found: set[int] = set()

    def grow(anchor: int, chosen: int, syndrome: int, size: int) -> None:
        if not syndrome:
            found.add(chosen)
            return
        if size == bound or syndrome.bit_count() > (bound - size) * max_w:
            return
        low = (syndrome & -syndrome).bit_length() - 1
        for a in on_bit[low]:
            if a > anchor and not chosen >> a & 1:
                grow(anchor, chosen | 1 << a, syndrome ^ cols[a], size + 1)

    for a in range(c.m):
        grow(a, 1 << a, cols[a], 1)
    return found


def classify_redundancies(
    c: ClassicalCode, locality_bound: int = DEFAULT_LOCALITY_BOUND
) -> RedundancyClassification:
    """Greedy basis of redundancies supported on at most ``locality_bound`` checks.

    Candidates are taken by increasing weight, then lexicographic support. The
    remaining ``kT - len(local)`` dimensions are reported as global classes.
    """
    if locality_bound < 1:
        raise ValueError("locality_bound must be at least 1")
    candidates = sorted(
        (GF2Vector(c.m, r) for r in _low_weight_redundancies(c, locality_bound)),
        key=lambda v: (v.weight, v.support()),
    )
    tester = SpanTester(())
    local = tuple(v for v in candidates if tester.add(v))
    return RedundancyClassification(local, c.kT - len(local))
