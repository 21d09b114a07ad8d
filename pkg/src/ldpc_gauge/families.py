"""Deterministic generators for the standard example codes and complexes.

Lattice sites are indexed row-major with the first coordinate fastest:
``x = (x_0, ..., x_{D-1})`` has index ``sum x_d L^d``. A q-cell of the cubic
lattice is a pair (base site, set of q directions); cells are listed
direction-set first, then by base site.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from .chain import ChainComplex
from .code import ClassicalCode
from .gf2 import GF2Matrix

__all__ = [
    "FamilySpec",
    "FamilyInstance",
    "FAMILIES",
    "cubic_complex",
    "ising",
    "plaquette_ising",
    "newman_moore",
    "toric_complex",
    "xcube_complex",
    "haah_code",
    "random_expander_code",
    "vertex_expansion",
    "classical_gauge_theory_code",
    "build_family",
]

PERIODIC = "periodic"
OPEN = "open"


@dataclass(frozen=True)
class FamilySpec:
    name: str
    dims: tuple[int, ...]
    boundary: str = PERIODIC
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}")
        if self.boundary not in (PERIODIC, OPEN):
            raise ValueError(f"boundary must be {PERIODIC!r} or {OPEN!r}")


@dataclass(frozen=True)
class FamilyInstance:
    """A generated family member.

    ``code`` is set for classical families, ``complex`` for anything carrying a
    chain complex (including a code with its plaquette basis). ``css`` holds
    (X-checks, Z-checks) for quantum families. ``expected`` lists the
    parameters the construction is known to produce.
    """

    spec: FamilySpec
    code: Optional[ClassicalCode] = None
    complex: Optional[ChainComplex] = None
    plaquettes: Optional[GF2Matrix] = None
    css: Optional[tuple[GF2Matrix, GF2Matrix]] = None
    expected: dict[str, Any] = field(default_factory=dict)


def _check_L(L: int, least: int = 2) -> None:
    if L < least:
        raise ValueError(f"L must be at least {least}")


def _site(coords: tuple[int, ...], L: int) -> int:
    return sum(c * L**d for d, c in enumerate(coords))


def _sites(D: int, L: int) -> list[tuple[int, ...]]:
    return [tuple(reversed(t)) for t in itertools.product(range(L), repeat=D)]


def _shift(coords: tuple[int, ...], d: int, L: int, by: int = 1) -> tuple[int, ...]:
    out = list(coords)
    out[d] = (out[d] + by) % L
    return tuple(out)


def _cells(D: int, L: int, q: int, boundary: str) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    cells = []
    for dirs in itertools.combinations(range(D), q):
        for s in _sites(D, L):
            if boundary == OPEN and any(s[d] + 1 >= L for d in dirs):
                continue
            cells.append((s, dirs))
    return cells


def cubic_complex(D: int, L: int, top: int, boundary: str = PERIODIC) -> ChainComplex:
    """Cells of dimension 0..top of the cubic lattice on the D-torus or open box."""
    _check_L(L)
    if not 1 <= top <= D:
        raise ValueError(f"top level must be between 1 and {D}")
    levels = [_cells(D, L, q, boundary) for q in range(top + 1)]
    index = [{c: i for i, c in enumerate(cells)} for cells in levels]
    maps = []
    for q in range(1, top + 1):
        coords = []
        for j, (s, dirs) in enumerate(levels[q]):
            for d in dirs:
                face = tuple(e for e in dirs if e != d)
                coords.append((index[q - 1][(s, face)], j))
                coords.append((index[q - 1][(_shift(s, d, L), face)], j))
        maps.append(GF2Matrix.from_coords(len(levels[q - 1]), len(levels[q]), coords))
    return ChainComplex(list(reversed(maps)))


def ising(D: int, L: int, boundary: str = PERIODIC) -> FamilyInstance:
    """Nearest-neighbour bond checks; plaquettes attached for D >= 2."""
    spec = FamilySpec("ising", (D, L), boundary)
    top = 2 if D >= 2 else 1
    cc = cubic_complex(D, L, top, boundary)
    code = ClassicalCode(cc.boundary(1))
    n = L**D
    expected = {"n": n, "k": 1, "d": n, "m": code.m}
    if D >= 2:
        return FamilyInstance(spec, code, cc, cc.boundary(2), expected=expected)
    return FamilyInstance(spec, code, expected=expected)


def toric_complex(D: int, L: int) -> FamilyInstance:
    """Sites, edges and plaquettes of the D-torus."""
    if D < 2:
        raise ValueError("the toric complex needs D >= 2")
    cc = cubic_complex(D, L, 2)
    return FamilyInstance(
        FamilySpec("toric", (D, L)),
        ClassicalCode(cc.boundary(1)),
        cc,
        cc.boundary(2),
        expected={"n": D * L**D, "k": D, "d": L},
    )


def plaquette_ising(D: int, L: int) -> FamilyInstance:
    """One check per elementary hypercube, acting on its 2^D corners."""
    _check_L(L)
    sites = _sites(D, L)
    coords = []
    for a, s in enumerate(sites):
        for corner in itertools.product((0, 1), repeat=D):
            c = tuple((x + o) % L for x, o in zip(s, corner))
            coords.append((_site(c, L), a))
    delta = GF2Matrix.from_coords(len(sites), len(sites), coords)
    expected = {"n": L**D, "k": D * (L - 1) + 1, "d": L ** (D - 1)}
    return FamilyInstance(FamilySpec("plaquette_ising", (D, L)), ClassicalCode(delta), expected=expected)


def newman_moore(L: int) -> FamilyInstance:
    """Check at (i, j) acts on (i, j), (i+1, j), (i, j+1), periodic."""
    _check_L(L)
    coords = []
    for j in range(L):
        for i in range(L):
            a = i + L * j
            for di, dj in ((0, 0), (1, 0), (0, 1)):
                coords.append((((i + di) % L) + L * ((j + dj) % L), a))
    delta = GF2Matrix.from_coords(L * L, L * L, coords)
    expected: dict[str, Any] = {"n": L * L}
    if L & (L - 1) == 0:
        expected["k"] = 0
    return FamilyInstance(FamilySpec("newman_moore", (L,)), ClassicalCode(delta), expected=expected)


def xcube_complex(L: int) -> FamilyInstance:
    """X-cube with qubits on plaquettes of the 3-torus.

    A plaquette is (base site, normal direction). Each vertex carries an X-check
    on the 12 plaquettes having it as a corner. Each cube carries three Z-checks,
    one per direction mu, on the four faces whose normals are not mu.
    """
    _check_L(L)
    sites = _sites(3, L)
    nsite = len(sites)

    def plaq(s: tuple[int, ...], d: int) -> int:
        return d * nsite + _site(s, L)

    x_coords, z_coords = [], []
    for v, s in enumerate(sites):
        for d in range(3):
            a, b = (e for e in range(3) if e != d)
            for oa, ob in itertools.product((0, 1), repeat=2):
                base = _shift(_shift(s, a, L, -oa), b, L, -ob)
                x_coords.append((v, plaq(base, d)))
    for c, s in enumerate(sites):
        for mu in range(3):
            row = 3 * c + mu
            for d in range(3):
                if d != mu:
                    z_coords.append((row, plaq(s, d)))
                    z_coords.append((row, plaq(_shift(s, d, L), d)))
    n = 3 * nsite
    xs = GF2Matrix.from_coords(nsite, n, x_coords)
    zs = GF2Matrix.from_coords(3 * nsite, n, z_coords)
    return FamilyInstance(
        FamilySpec("xcube", (L,)),
        complex=ChainComplex.from_css(xs, zs),
        css=(xs, zs),
        expected={"n": n, "k": 6 * L - 3, "d": L},
    )


# corner patterns of the cubic code, as offsets (x, y, z) from the cube's base site
_HAAH_X = (((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)), ((0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)))
_HAAH_Z = (((1, 1, 1), (0, 0, 1), (1, 0, 0), (0, 1, 0)), ((1, 1, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0)))


def haah_code(L: int) -> FamilyInstance:
    """Cubic code with two qubits per site; qubit (s, t) has index t * L^3 + s."""
    _check_L(L)
    sites = _sites(3, L)
    nsite = len(sites)

    def build(pattern) -> GF2Matrix:
        coords = []
        for c, s in enumerate(sites):
            for t, corners in enumerate(pattern):
                for off in corners:
                    p = tuple((x + o) % L for x, o in zip(s, off))
                    coords.append((c, t * nsite + _site(p, L)))
        return GF2Matrix.from_coords(nsite, 2 * nsite, coords)

    xs, zs = build(_HAAH_X), build(_HAAH_Z)
    return FamilyInstance(
        FamilySpec("haah", (L,)), complex=ChainComplex.from_css(xs, zs), css=(xs, zs), expected={"n": 2 * nsite}
    )


def random_expander_code(n: int, bit_degree: int, check_degree: int, seed: int = 0) -> FamilyInstance:
    """Random regular Tanner graph from one permutation of the edge sockets.

    Socket e belongs to bit e // bit_degree and is wired to check
    perm[e] // check_degree. Parallel edges cancel mod 2. If that leaves an
    empty check or bit the permutation is redrawn from the same generator, so
    the result depends only on the arguments.
    """
    if n < 1 or bit_degree < 1 or check_degree < 1:
        raise ValueError("n and degrees must be positive")
    sockets = n * bit_degree
    if sockets % check_degree:
        raise ValueError("n * bit_degree must be divisible by check_degree")
    m = sockets // check_degree
    rng = random.Random(seed)
    for _ in range(1000):
        perm = list(range(sockets))
        rng.shuffle(perm)
        delta = GF2Matrix.from_coords(n, m, [(e // bit_degree, perm[e] // check_degree) for e in range(sockets)])
        if 0 not in delta.col_weights() and 0 not in delta.row_weights():
            break
    else:
        raise RuntimeError("could not draw a graph without empty vertices")
    code = ClassicalCode(delta)
    return FamilyInstance(
        FamilySpec("expander", (n, bit_degree, check_degree), seed=seed),
        code,
        expected={"n": n, "m": m, "k_min": n - m, "expansion": vertex_expansion(code, 3)},
    )


def vertex_expansion(c: ClassicalCode, max_size: int = 3) -> Fraction:
    """min |N(S)| / |S| over bit sets S with 1 <= |S| <= max_size."""
    best: Optional[Fraction] = None
    rows = c.delta.rows
    for size in range(1, min(max_size, c.n) + 1):
        for S in itertools.combinations(range(c.n), size):
            nb = 0
            for i in S:
                nb |= rows[i]
            r = Fraction(nb.bit_count(), size)
            if best is None or r < best:
                best = r
    assert best is not None
    return best


def classical_gauge_theory_code(L: int) -> FamilyInstance:
    """Bits on edges, checks on plaquettes of the 3-torus, with the full complex attached."""
    cc = cubic_complex(3, L, 3)
    code = ClassicalCode(cc.boundary(2))
    return FamilyInstance(
        FamilySpec("gauge_theory", (L,)),
        code,
        cc,
        cc.boundary(3),
        expected={"n": 3 * L**3, "m": 3 * L**3},
    )


def _ising(p: dict[str, Any]) -> FamilyInstance:
    return ising(int(p.get("D", 1)), int(p["L"]), p.get("boundary", PERIODIC))


FAMILIES: dict[str, Callable[[dict[str, Any]], FamilyInstance]] = {
    "ising": _ising,
    "toric": lambda p: toric_complex(int(p.get("D", 2)), int(p["L"])),
    "plaquette_ising": lambda p: plaquette_ising(int(p.get("D", 2)), int(p["L"])),
    "newman_moore": lambda p: newman_moore(int(p["L"])),
    "xcube": lambda p: xcube_complex(int(p["L"])),
    "haah": lambda p: haah_code(int(p["L"])),
    "expander": lambda p: random_expander_code(
        int(p["n"]), int(p.get("bit_degree", 3)), int(p.get("check_degree", 6)), int(p.get("seed", 0))
    ),
    "gauge_theory": lambda p: classical_gauge_theory_code(int(p["L"])),
}


def build_family(name: str, params: dict[str, Any]) -> FamilyInstance:
    """Look up a family by name and build it from string or int parameters."""
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}") from None
    try:
        return builder(params)
    except KeyError as e:
        raise ValueError(f"family {name!r} needs parameter {e.args[0]}") from None
