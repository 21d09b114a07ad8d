"""Energy barriers, soundness and locally minimal cocycles.

Flipping a set S of bits violates the checks in delta^T(S); its energy is the
number of those checks. The barrier profile tracks the cheapest way to flip F
bits of a minimum-weight logical.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Optional, Union

from . import kernels
from .chain import ChainComplex
from .code import ClassicalCode, canonical_info_bits, min_weight_logical
from .gf2 import DEFAULT_CAP, GF2Matrix, GF2Vector, kernel_basis

__all__ = [
    "EXHAUSTIVE",
    "GREEDY",
    "BarrierProfile",
    "energy_barrier",
    "profile_csv",
    "SoundnessReport",
    "soundness",
    "LocallyMinimalResult",
    "locally_minimal_distance",
    "DescentStep",
    "DescentTrace",
    "descent_certificate",
    "energy",
]

EXHAUSTIVE = "exhaustive"
GREEDY = "greedy-upper-bound"
LM_DEFAULT_CAP = 1 << 24


def _support(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def energy(delta: GF2Matrix, flips: int) -> int:
    """Number of checks violated by flipping the bits in ``flips``."""
    acc = 0
    rows = delta.rows
    for i in _support(flips):
        acc ^= rows[i]
    return acc.bit_count()


@dataclass(frozen=True)
class BarrierProfile:
    code: ClassicalCode
    logical: GF2Vector
    logical_is_minimal: bool
    F_values: tuple[int, ...]
    E_min: tuple[int, ...]
    witnesses: tuple[tuple[int, ...], ...]
    exact: tuple[bool, ...]

    @property
    def method(self) -> str:
        return EXHAUSTIVE if all(self.exact) else GREEDY

    @property
    def exact_up_to(self) -> int:
        """Largest F such that every entry up to F is an exact minimum."""
        top = -1
        for F, ok in zip(self.F_values, self.exact):
            if not ok:
                break
            top = F
        return top

    def as_dict(self) -> dict[str, object]:
        return {
            "logical_weight": self.logical.weight,
            "logical_is_minimal": self.logical_is_minimal,
            "method": self.method,
            "exact_up_to": self.exact_up_to,
            "profile": [{"F": F, "E_min": e, "exact": x} for F, e, x in zip(self.F_values, self.E_min, self.exact)],
        }


def _greedy_subset(rows: list[int], size: int) -> tuple[int, tuple[int, ...]]:
    chosen: list[int] = []
    acc = 0
    for _ in range(size):
        best = None
        for j, r in enumerate(rows):
            if j in chosen:
                continue
            w = (acc ^ r).bit_count()
            if best is None or w < best[0]:
                best = (w, j)
        assert best is not None
        chosen.append(best[1])
        acc ^= rows[best[1]]
    return acc.bit_count(), tuple(sorted(chosen))


def energy_barrier(
    c: ClassicalCode, F_max: int, cap: int = DEFAULT_CAP, threads: Optional[int] = None
) -> BarrierProfile:
    """E_min(F) for F = 0..F_max over subsets of one minimum-weight logical.

    Entries whose subset count C(|Sigma|, F) exceeds ``cap`` are greedy upper
    bounds and flagged as inexact.
    """
    if c.k == 0:
        raise ValueError("code has no logicals (k=0)")
    sigma = min_weight_logical(c, cap, threads)
    minimal = sigma is not None
    if sigma is None:
        sigma = min(canonical_info_bits(c).logicals, key=lambda v: (v.weight, v.support()))
    if F_max < 0 or 2 * F_max > sigma.weight:
        raise ValueError(f"F_max must lie in 0..{sigma.weight // 2} for a logical of weight {sigma.weight}")
    support = sigma.support()
    rows = [c.delta.rows[i] for i in support]
    values, witnesses, exact = [], [], []
    for F in range(F_max + 1):
        if comb(len(rows), F) <= cap:
            w, combo = kernels.min_subset(rows, F, c.m, threads)
            exact.append(True)
        else:
            w, combo = _greedy_subset(rows, F)
            exact.append(False)
        values.append(w)
        witnesses.append(tuple(support[j] for j in combo))
    return BarrierProfile(c, sigma, minimal, tuple(range(F_max + 1)), tuple(values), tuple(witnesses), tuple(exact))


def profile_csv(bp: BarrierProfile) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["F", "E_min", "exact"])
    for F, e, x in zip(bp.F_values, bp.E_min, bp.exact):
        w.writerow([F, e, int(x)])
    return buf.getvalue()


@dataclass(frozen=True)
class SoundnessReport:
    kappa_lower_empirical: Fraction
    d_half: int
    F_range: int
    satisfied: Optional[bool]


def soundness(bp: BarrierProfile, kappa: Optional[object] = None) -> SoundnessReport:
    """min E_min(F) / F over the exactly computed range 1 <= F."""
    top = bp.exact_up_to
    ratios = [Fraction(e, F) for F, e in zip(bp.F_values, bp.E_min) if 1 <= F <= top]
    if not ratios:
        raise ValueError("profile has no exact entries with F >= 1")
    k_emp = min(ratios)
    satisfied = None if kappa is None else k_emp >= Fraction(kappa)
    return SoundnessReport(k_emp, bp.logical.weight // 2, top, satisfied)


class LocallyMinimalResult(NamedTuple):
    value: Optional[int]
    cocycle: Optional[GF2Vector]
    reason: Optional[str]


def locally_minimal_distance(
    cc: ChainComplex, cap: int = LM_DEFAULT_CAP, threads: Optional[int] = None
) -> LocallyMinimalResult:
    """Weight of the lightest nonzero cocycle that no single-site move shortens.

    Cocycles are Ker(delta_2^T) at the edge level; a move adds the coboundary
    delta_1^T(i) of one site.
    """
    if cc.D != 2:
        raise ValueError("need a two-level complex")
    d1, d2 = cc.boundary(1), cc.boundary(2)
    if d2.ncols == 0:
        return LocallyMinimalResult(None, None, "no plaquettes")
    gens = [v.bits for v in kernel_basis(d2.T)]
    if not gens:
        return LocallyMinimalResult(None, None, "no nonzero cocycles")
    if 1 << len(gens) > cap:
        return LocallyMinimalResult(None, None, "budget_exceeded")
    res = kernels.min_locally_minimal(gens, list(d1.rows), d1.ncols, threads)
    if res is None:
        return LocallyMinimalResult(None, None, "no locally minimal cocycle")
    return LocallyMinimalResult(res[0], GF2Vector(d1.ncols, res[1]), None)


class DescentStep(NamedTuple):
    spin: int
    energy: int


@dataclass(frozen=True)
class DescentTrace:
    start_energy: int
    steps: tuple[DescentStep, ...]
    final_flips: GF2Vector

    @property
    def final_energy(self) -> int:
        return self.steps[-1].energy if self.steps else self.start_energy

    @property
    def verdict(self) -> str:
        return "ground" if self.final_energy == 0 else "locally_minimal"


def descent_certificate(system: Union[ChainComplex, ClassicalCode], start: GF2Vector) -> DescentTrace:
    """Greedy single-spin descent from the domain-wall state of a flipped set.

    Each step flips the spin with the largest energy drop, lowest index on
    ties, and stops at zero energy or when no flip lowers the energy.
    """
    delta = system.boundary(1) if isinstance(system, ChainComplex) else system.delta
    if start.length != delta.nrows:
        raise ValueError(f"start has length {start.length}, expected {delta.nrows}")
    rows = delta.rows
    walls = 0
    for i in start.support():
        walls ^= rows[i]
    flips = start.bits
    e0 = walls.bit_count()
    steps = []
    e = e0
    while e:
        best = None
        for i, r in enumerate(rows):
            after = (walls ^ r).bit_count()
            if after < e and (best is None or after < best[1]):
                best = (i, after)
        if best is None:
            break
        walls ^= rows[best[0]]
        flips ^= 1 << best[0]
        e = best[1]
        steps.append(DescentStep(*best))
    return DescentTrace(e0, tuple(steps), GF2Vector(delta.nrows, flips))
