"""Classical codes defined by a check map.

A code is stored as its map ``delta``: an ``n x m`` matrix whose entry (i, a) is
set when bit i takes part in check a. Logicals are Ker(delta^T) and
redundancies are Ker(delta), so k = n - rank and kT = m - rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .gf2 import DEFAULT_CAP, GF2Matrix, GF2Vector, echelon, kernel_basis, min_weight_nontrivial, rank

__all__ = [
    "ClassicalCode",
    "CodeParameters",
    "InfoBits",
    "LDPCProfile",
    "logicals_basis",
    "redundancy_basis",
    "canonical_info_bits",
    "distance",
    "min_weight_logical",
    "code_parameters",
    "transpose_code",
    "ldpc_profile",
    "duplicate_checks",
]


class ClassicalCode:
    """A classical linear code given by its bits-by-checks map.

    Parameters
    ----------
    delta:
        ``n x m`` GF(2) matrix; column a is the support of check a.
    bit_names, check_names:
        Optional labels, used only for reporting.
    """

    def __init__(
        self,
        delta: GF2Matrix,
        bit_names: Optional[Sequence[str]] = None,
        check_names: Optional[Sequence[str]] = None,
    ) -> None:
        if delta.nrows < 1:
            raise ValueError("a code needs at least one bit")
        empty = [a for a, w in enumerate(delta.col_weights()) if w == 0]
        if empty:
            raise ValueError(f"check {empty[0]} acts on no bits")
        if bit_names is not None and len(bit_names) != delta.nrows:
            raise ValueError("bit_names length does not match n")
        if check_names is not None and len(check_names) != delta.ncols:
            raise ValueError("check_names length does not match m")
        self.delta = delta
        self.bit_names = tuple(bit_names) if bit_names is not None else None
        self.check_names = tuple(check_names) if check_names is not None else None

    @property
    def n(self) -> int:
        return self.delta.nrows

    @property
    def m(self) -> int:
        return self.delta.ncols

    @cached_property
    def rank(self) -> int:
        return rank(self.delta)

    @property
    def k(self) -> int:
        return self.n - self.rank

    @property
    def kT(self) -> int:
        return self.m - self.rank

    @cached_property
    def logicals(self) -> tuple[GF2Vector, ...]:
        return tuple(kernel_basis(self.delta.T))

    @cached_property
    def redundancies(self) -> tuple[GF2Vector, ...]:
        return tuple(kernel_basis(self.delta))

    def check_support(self, a: int) -> tuple[int, ...]:
        """Bits acted on by check a."""
        return self.delta.column_support(a)

    def bit_checks(self, i: int) -> tuple[int, ...]:
        """Checks containing bit i."""
        return self.delta.row_support(i)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicalCode):
            return NotImplemented
        return self.delta == other.delta

    def __hash__(self) -> int:
        return hash(self.delta)

    def __repr__(self) -> str:
        return f"ClassicalCode(n={self.n}, m={self.m}, k={self.k}, kT={self.kT})"


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: Optional[int]
    kT: int
    d_upper: Optional[int] = None
    d_reason: Optional[str] = None

    def __str__(self) -> str:
        d = self.d if self.d is not None else "?"
        return f"[{self.n},{self.k},{d}]"


class InfoBits(NamedTuple):
    indices: tuple[int, ...]
    logicals: tuple[GF2Vector, ...]


class LDPCProfile(NamedTuple):
    max_check_weight: int
    max_bit_degree: int


def logicals_basis(c: ClassicalCode) -> list[GF2Vector]:
    return list(c.logicals)


def redundancy_basis(c: ClassicalCode) -> list[GF2Vector]:
    return list(c.redundancies)


def canonical_info_bits(c: ClassicalCode) -> InfoBits:
    """Information bits with a logical basis dual to them.

    Reduce the logical basis so that each element owns one bit no other element
    touches: pick a bit of the first logical, clear it from the rest, repeat.
    """
    basis = echelon(v.bits for v in c.logicals)
    pivots = sorted(basis)
    return InfoBits(tuple(pivots), tuple(GF2Vector(c.n, basis[p]) for p in pivots))


def _min_logical(c: ClassicalCode, cap: int, threads: Optional[int], method: str = "auto"):
    if c.k == 0:
        return None
    return min_weight_nontrivial([], c.logicals, c.n, cap, threads, method)


def distance(
    c: ClassicalCode, cap: int = DEFAULT_CAP, threads: Optional[int] = None, method: str = "auto"
) -> Optional[int]:
    """Exact minimum weight of a nonzero codeword; None if k = 0 or over budget.

    ``method="span"`` enumerates the 2^k codewords, ``"ambient"`` all 2^n
    spin configurations.
    """
    res = _min_logical(c, cap, threads, method)
    return None if res is None else res[0]


def min_weight_logical(
    c: ClassicalCode, cap: int = DEFAULT_CAP, threads: Optional[int] = None
) -> Optional[GF2Vector]:
    """Lexicographically first codeword among those of minimum weight."""
    res = _min_logical(c, cap, threads)
    return None if res is None else res[1]


def code_parameters(c: ClassicalCode, cap: int = DEFAULT_CAP, threads: Optional[int] = None) -> CodeParameters:
    if c.k == 0:
        return CodeParameters(c.n, 0, None, c.kT, None, "k=0")
    d = distance(c, cap, threads)
    if d is not None:
        return CodeParameters(c.n, c.k, d, c.kT, d)
    upper = min(v.weight for v in canonical_info_bits(c).logicals)
    return CodeParameters(c.n, c.k, None, c.kT, upper, "budget_exceeded")


def transpose_code(c: ClassicalCode) -> ClassicalCode:
    """Swap bits and checks."""
    return ClassicalCode(c.delta.T, c.check_names, c.bit_names)


def ldpc_profile(c: ClassicalCode) -> LDPCProfile:
    return LDPCProfile(max(c.delta.col_weights(), default=0), max(c.delta.row_weights(), default=0))


def duplicate_checks(c: ClassicalCode) -> list[tuple[int, int]]:
    """Pairs (a, b), a < b, of checks with identical support."""
    seen: dict[int, int] = {}
    out = []
    for a, col in enumerate(c.delta.columns):
        if col in seen:
            out.append((seen[col], a))
        else:
            seen[col] = a
    return out
