"""Small instances shared by the oracle, property and acceptance tests."""

from __future__ import annotations

import random
from pathlib import Path

from ldpc_gauge.chain import ChainComplex
from ldpc_gauge.code import ClassicalCode
from ldpc_gauge.families import (
    classical_gauge_theory_code,
    haah_code,
    ising,
    newman_moore,
    plaquette_ising,
    random_expander_code,
    toric_complex,
    xcube_complex,
)
from ldpc_gauge.formats import load_codefile
from ldpc_gauge.gf2 import GF2Matrix, kernel_basis

FIXTURES = Path(__file__).with_name("fixtures")


def random_complex(seed: int, sites: int, edges: int, faces: int) -> ChainComplex:
    """delta_1 random, delta_2 built from random combinations of Ker(delta_1)."""
    rng = random.Random(seed)
    d1 = GF2Matrix(sites, edges, [rng.getrandbits(edges) for _ in range(sites)])
    ker = [v.bits for v in kernel_basis(d1)]
    cols = []
    for _ in range(faces):
        acc = 0
        for v in ker:
            if rng.random() < 0.5:
                acc ^= v
        cols.append(acc)
    return ChainComplex([GF2Matrix.from_columns(edges, cols), d1])


def small_codes() -> list[tuple[str, ClassicalCode]]:
    """Classical codes with n <= 16 bits."""
    out = [(f"ising1_L{L}", ising(1, L).code) for L in range(3, 9)]
    out += [("ising1_L5_open", ising(1, 5, "open").code)]
    out += [(f"ising2_L{L}", ising(2, L).code) for L in (2, 3, 4)]
    out += [(f"plaquette_L{L}", plaquette_ising(2, L).code) for L in (2, 3, 4)]
    out += [(f"newman_moore_L{L}", newman_moore(L).code) for L in (2, 3, 4)]
    out += [(f"expander_seed{s}", random_expander_code(12, 3, 6, s).code) for s in range(3)]
    for path in sorted((FIXTURES / "valid").iterdir()) + [FIXTURES / "ising1_L3.alist", FIXTURES / "newman_moore_L4.alist"]:
        cf = load_codefile(path)
        if cf.code is not None and cf.code.n <= 16:
            out.append((path.name, cf.code))
    return out


def small_complexes() -> list[tuple[str, ChainComplex]]:
    """Two-level complexes with at most 16 qubits (edges)."""
    out = [("toric2_L2", toric_complex(2, 2).complex), ("haah_L2", haah_code(2).complex)]
    out += [(f"ising1_L{L}_bare", ChainComplex([GF2Matrix.zeros(L, 0), ising(1, L).code.delta])) for L in (3, 5)]
    out += [(f"random{s}", random_complex(s, 6, 12, 5)) for s in range(6)]
    out += [(f"random_wide{s}", random_complex(100 + s, 8, 16, 6)) for s in range(2)]
    return out


def all_complexes() -> list[tuple[str, ChainComplex]]:
    """Every complex the families build, at the sizes used in tests."""
    out = [(f"ising2_L{L}", ising(2, L).complex) for L in (2, 3, 4, 5)]
    out += [("ising3_L2", ising(3, 2).complex)]
    out += [(f"toric{D}_L{L}", toric_complex(D, L).complex) for D, L in ((2, 2), (2, 3), (2, 4), (3, 2), (3, 3))]
    out += [(f"xcube_L{L}", xcube_complex(L).complex) for L in (2, 3)]
    out += [(f"haah_L{L}", haah_code(L).complex) for L in (2, 3)]
    out += [(f"gauge_theory_L{L}", classical_gauge_theory_code(L).complex) for L in (2, 3)]
    out += small_complexes()[2:]
    return out
