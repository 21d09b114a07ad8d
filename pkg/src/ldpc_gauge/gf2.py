"""Bit-packed vectors and matrices over GF(2).

Vectors and matrix rows are Python ints used as bitsets, bit ``i`` holding
coordinate ``i``. The 64-bit word view needed by the compiled kernels is
available through :attr:`GF2Vector.words`.

Row reduction pivots on the lowest set bit of each incoming row, so kernel
bases, solutions and pivot choices are reproducible across runs.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import kernels

__all__ = [
    "DEFAULT_CAP",
    "GF2Vector",
    "GF2Matrix",
    "rank",
    "kernel_basis",
    "image_basis",
    "solve",
    "image_membership",
    "SpanTester",
    "min_weight_in_coset",
    "min_weight_nontrivial",
    "echelon",
]

DEFAULT_CAP = 1 << 28


def _bit_support(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return tuple(out)


class GF2Vector:
    """Immutable vector of ``length`` bits."""

    __slots__ = ("_length", "_bits")

    def __init__(self, length: int, bits: int = 0) -> None:
        if length < 0:
            raise ValueError("length must be non-negative")
        if bits < 0 or bits >> length:
            raise ValueError("bits exceed vector length")
        self._length = length
        self._bits = bits

    @classmethod
    def zeros(cls, length: int) -> GF2Vector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, i: int) -> GF2Vector:
        if not 0 <= i < length:
            raise IndexError(i)
        return cls(length, 1 << i)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> GF2Vector:
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise IndexError(f"coordinate {i} outside length {length}")
            bits ^= 1 << i
        return cls(length, bits)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> GF2Vector:
        bits = 0
        for i, b in enumerate(values):
            if b & 1:
                bits |= 1 << i
        return cls(len(values), bits)

    @property
    def length(self) -> int:
        return self._length

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def words(self) -> np.ndarray:
        """Packed 64-coordinate blocks, least significant block first."""
        nw = (self._length + 63) // 64
        return np.frombuffer(self._bits.to_bytes(8 * nw, "little"), dtype="<u8").astype(np.uint64)

    @property
    def weight(self) -> int:
        return self._bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return _bit_support(self._bits)

    def dot(self, other: GF2Vector) -> int:
        self._check(other)
        return (self._bits & other._bits).bit_count() & 1

    def to_list(self) -> list[int]:
        return [(self._bits >> i) & 1 for i in range(self._length)]

    def _check(self, other: GF2Vector) -> None:
        if self._length != other._length:
            raise ValueError(f"length mismatch: {self._length} vs {other._length}")

    def __xor__(self, other: GF2Vector) -> GF2Vector:
        self._check(other)
        return GF2Vector(self._length, self._bits ^ other._bits)

    __add__ = __xor__

    def __and__(self, other: GF2Vector) -> GF2Vector:
        self._check(other)
        return GF2Vector(self._length, self._bits & other._bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._length:
            raise IndexError(i)
        return (self._bits >> i) & 1

    def __len__(self) -> int:
        return self._length

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_list())

    def __bool__(self) -> bool:
        return self._bits != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Vector):
            return NotImplemented
        return self._length == other._length and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((self._length, self._bits))

    def __repr__(self) -> str:
        return f"GF2Vector({self._length}, support={list(self.support())})"


class GF2Matrix:
    """Immutable ``nrows x ncols`` matrix stored as packed rows.

    The column index is built lazily the first time columns are requested.
    """

    def __init__(self, nrows: int, ncols: int, rows: Iterable[int] = ()) -> None:
        rows = tuple(rows)
        if nrows < 0 or ncols < 0:
            raise ValueError("dimensions must be non-negative")
        if not rows:
            rows = (0,) * nrows
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        for r in rows:
            if r < 0 or r >> ncols:
                raise ValueError("row has bits beyond the column count")
        self._nrows = nrows
        self._ncols = ncols
        self._rows = rows

    # construction

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> GF2Matrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> GF2Matrix:
        return cls(n, n, (1 << i for i in range(n)))

    @classmethod
    def from_dense(cls, array) -> GF2Matrix:
        a = np.asarray(array, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        nrows, ncols = a.shape
        rows = []
        for r in a:
            bits = 0
            for j in np.flatnonzero(r & 1):
                bits |= 1 << int(j)
            rows.append(bits)
        return cls(nrows, ncols, rows)

    @classmethod
    def from_coords(cls, nrows: int, ncols: int, coords: Iterable[tuple[int, int]]) -> GF2Matrix:
        """Build from (row, col) pairs; repeated pairs cancel mod 2."""
        rows = [0] * nrows
        for i, j in coords:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            rows[i] ^= 1 << j
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int | GF2Vector]) -> GF2Matrix:
        rows = [0] * nrows
        for j, c in enumerate(columns):
            bits = c.bits if isinstance(c, GF2Vector) else c
            if isinstance(c, GF2Vector) and c.length != nrows:
                raise ValueError("column length mismatch")
            for i in _bit_support(bits):
                if i >= nrows:
                    raise ValueError("column has bits beyond the row count")
                rows[i] |= 1 << j
        return cls(nrows, len(columns), rows)

    @classmethod
    def from_rows(cls, ncols: int, rows: Sequence[int | GF2Vector]) -> GF2Matrix:
        return cls(len(rows), ncols, (r.bits if isinstance(r, GF2Vector) else r for r in rows))

    # accessors

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @cached_property
    def columns(self) -> tuple[int, ...]:
        cols = [0] * self._ncols
        for i, r in enumerate(self._rows):
            for j in _bit_support(r):
                cols[j] |= 1 << i
        return tuple(cols)

    def row(self, i: int) -> GF2Vector:
        return GF2Vector(self._ncols, self._rows[i])

    def column(self, j: int) -> GF2Vector:
        return GF2Vector(self._nrows, self.columns[j])

    def row_support(self, i: int) -> tuple[int, ...]:
        return _bit_support(self._rows[i])

    def column_support(self, j: int) -> tuple[int, ...]:
        return _bit_support(self.columns[j])

    @cached_property
    def T(self) -> GF2Matrix:
        return GF2Matrix(self._ncols, self._nrows, self.columns)

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def col_weights(self) -> list[int]:
        return [c.bit_count() for c in self.columns]

    def is_zero(self) -> bool:
        return not any(self._rows)

    def coords(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self._rows) for j in _bit_support(r)]

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self._nrows, self._ncols), dtype=np.uint8)
        for i, j in self.coords():
            out[i, j] = 1
        return out

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self._nrows and 0 <= j < self._ncols):
            raise IndexError(key)
        return (self._rows[i] >> j) & 1

    # algebra

    def matvec(self, v: GF2Vector | int) -> GF2Vector:
        bits = v.bits if isinstance(v, GF2Vector) else v
        if isinstance(v, GF2Vector) and v.length != self._ncols:
            raise ValueError(f"vector length {v.length} != {self._ncols} columns")
        out = 0
        for i, r in enumerate(self._rows):
            if (r & bits).bit_count() & 1:
                out |= 1 << i
        return GF2Vector(self._nrows, out)

    def __matmul__(self, other):
        if isinstance(other, GF2Vector):
            return self.matvec(other)
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        if self._ncols != other._nrows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        orows = other._rows
        out = []
        for r in self._rows:
            acc = 0
            for j in _bit_support(r):
                acc ^= orows[j]
            out.append(acc)
        return GF2Matrix(self._nrows, other._ncols, out)

    def __add__(self, other: GF2Matrix) -> GF2Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return GF2Matrix(self._nrows, self._ncols, (a ^ b for a, b in zip(self._rows, other._rows)))

    def hstack(self, other: GF2Matrix) -> GF2Matrix:
        if self._nrows != other._nrows:
            raise ValueError("row count mismatch")
        s = self._ncols
        return GF2Matrix(self._nrows, s + other._ncols, (a | (b << s) for a, b in zip(self._rows, other._rows)))

    def vstack(self, other: GF2Matrix) -> GF2Matrix:
        if self._ncols != other._ncols:
            raise ValueError("column count mismatch")
        return GF2Matrix(self._nrows + other._nrows, self._ncols, self._rows + other._rows)

    def select_columns(self, cols: Sequence[int]) -> GF2Matrix:
        return GF2Matrix.from_columns(self._nrows, [self.columns[j] for j in cols])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._nrows, self._ncols, self._rows))

    def __repr__(self) -> str:
        return f"GF2Matrix({self._nrows}x{self._ncols}, nnz={sum(self.row_weights())})"


def echelon(rows: Iterable[int]) -> dict[int, int]:
    """Fully reduced row basis keyed by pivot (lowest set bit), in insertion order."""
    basis: dict[int, int] = {}
    for r in rows:
        for p, b in basis.items():
            if r >> p & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            for q, b in basis.items():
                if b >> p & 1:
                    basis[q] = b ^ r
            basis[p] = r
    return basis


def rank(m: GF2Matrix) -> int:
    return len(echelon(m.rows))


def kernel_basis(m: GF2Matrix) -> list[GF2Vector]:
    """Basis of {v : m v = 0}, one vector per free column in increasing order."""
    basis = echelon(m.rows)
    pivots = set(basis)
    out = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        v = 1 << f
        for p, b in basis.items():
            if b >> f & 1:
                v |= 1 << p
        out.append(GF2Vector(m.ncols, v))
    return out


def image_basis(m: GF2Matrix) -> list[GF2Vector]:
    """Independent columns spanning the column space, ordered by pivot."""
    basis = echelon(m.columns)
    return [GF2Vector(m.nrows, basis[p]) for p in sorted(basis)]


def solve(m: GF2Matrix, b: GF2Vector) -> Optional[GF2Vector]:
    """Some x with m x = b, free variables set to zero; None if b is not in Im(m)."""
    if b.length != m.nrows:
        raise ValueError(f"right-hand side length {b.length} != {m.nrows} rows")
    n = m.ncols
    aug = (r | (((b.bits >> i) & 1) << n) for i, r in enumerate(m.rows))
    basis = echelon(aug)
    if n in basis:
        return None
    x = 0
    for p, row in basis.items():
        if row >> n & 1:
            x |= 1 << p
    sol = GF2Vector(n, x)
    if m.matvec(sol) != b:
        raise AssertionError("solve produced a non-solution")
    return sol


def image_membership(m: GF2Matrix, v: GF2Vector) -> bool:
    if v.length != m.nrows:
        raise ValueError(f"vector length {v.length} != {m.nrows} rows")
    return SpanTester(m.columns).contains(v.bits)


class SpanTester:
    """Repeated membership tests against a fixed span of bitsets."""

    def __init__(self, vectors: Iterable[int | GF2Vector]) -> None:
        self._basis = echelon(v.bits if isinstance(v, GF2Vector) else v for v in vectors)

    @property
    def rank(self) -> int:
        return len(self._basis)

    def reduce(self, v: int) -> int:
        for p, b in self._basis.items():
            if v >> p & 1:
                v ^= b
        return v

    def contains(self, v: int | GF2Vector) -> bool:
        return self.reduce(v.bits if isinstance(v, GF2Vector) else v) == 0

    def add(self, v: int | GF2Vector) -> bool:
        """Insert v; return False when it was already in the span."""
        r = self.reduce(v.bits if isinstance(v, GF2Vector) else v)
        if not r:
            return False
        p = (r & -r).bit_length() - 1
        for q, b in self._basis.items():
            if b >> p & 1:
                self._basis[q] = b ^ r
        self._basis[p] = r
        return True


def _annihilator(gens: list[int], length: int) -> list[int]:
    """Basis of vectors orthogonal to every generator."""
    return [v.bits for v in kernel_basis(GF2Matrix(len(gens), length, gens))]


def _syndrome_columns(checks: list[int], length: int) -> list[int]:
    cols = [0] * length
    for j, c in enumerate(checks):
        for i in _bit_support(c):
            cols[i] |= 1 << j
    return cols


def _syndrome(checks: list[int], v: int) -> int:
    s = 0
    for j, c in enumerate(checks):
        if (c & v).bit_count() & 1:
            s |= 1 << j
    return s


_METHODS = ("auto", "span", "ambient")


def _pick(method: str, span_dim: int, length: int) -> str:
    if method not in _METHODS:
        raise ValueError(f"method must be one of {_METHODS}")
    if method == "auto":
        # the span never has more than 2^length elements, so it is never the larger space
        return "span" if span_dim <= length else "ambient"
    return method


def min_weight_in_coset(
    offset: GF2Vector,
    span: GF2Matrix,
    cap: int = DEFAULT_CAP,
    threads: Optional[int] = None,
    method: str = "auto",
) -> Optional[tuple[int, GF2Vector]]:
    """Exact minimum weight over ``offset + span·y``.

    ``method="span"`` walks the span (2^rank steps); ``"ambient"`` walks all
    2^n vectors and keeps those with the offset's syndrome. ``"auto"`` takes
    the smaller. Returns None when the chosen budget exceeds ``cap``. Ties
    resolve to the lexicographically smallest support.
    """
    if span.nrows != offset.length:
        raise ValueError(f"span has {span.nrows} rows, offset has length {offset.length}")
    n = offset.length
    gens = [v.bits for v in image_basis(span)]
    if _pick(method, len(gens), n) == "span":
        if 1 << len(gens) > cap:
            return None
        res = kernels.min_combination(offset.bits, gens, n, 0, threads)
    else:
        if 1 << n > cap:
            return None
        checks = _annihilator(gens, n)
        res = kernels.min_syndrome_match(
            _syndrome(checks, offset.bits), _syndrome_columns(checks, n), len(checks), 0, threads
        )
    assert res is not None
    return res[0], GF2Vector(n, res[1])


def min_weight_nontrivial(
    trivial: Sequence[GF2Vector],
    logical: Sequence[GF2Vector],
    length: int,
    cap: int = DEFAULT_CAP,
    threads: Optional[int] = None,
    method: str = "auto",
) -> Optional[tuple[int, GF2Vector]]:
    """Minimum weight over span(trivial + logical) minus span(trivial).

    ``logical`` must be independent modulo ``trivial``. ``method`` selects the
    enumeration as in :func:`min_weight_in_coset`. Returns None when the space
    is empty or the chosen budget exceeds ``cap``.
    """
    if not logical:
        return None
    triv = [v.bits for v in trivial]
    logi = [v.bits for v in logical]
    reduced = echelon(triv)
    triv = [reduced[p] for p in sorted(reduced)]
    if _pick(method, len(triv) + len(logi), length) == "span":
        if 1 << (len(triv) + len(logi)) > cap:
            return None
        required = ((1 << len(logi)) - 1) << len(triv)
        res = kernels.min_combination(0, triv + logi, length, required, threads)
    else:
        if 1 << length > cap:
            return None
        inside = _annihilator(triv + logi, length)
        tester = SpanTester(inside)
        extra = [q for q in _annihilator(triv, length) if tester.add(q)]
        checks = inside + extra
        nonzero = ((1 << len(extra)) - 1) << len(inside)
        res = kernels.min_syndrome_match(0, _syndrome_columns(checks, length), len(checks), nonzero, threads)
    if res is None:
        return None
    return res[0], GF2Vector(length, res[1])
