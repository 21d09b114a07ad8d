import random

import pytest

from corpus import all_complexes, random_complex
from ldpc_gauge.chain import (
    ChainComplex,
    attach_local_redundancies,
    classify_redundancies,
    cohomology,
    dualize,
    homology,
    pairing,
    validate,
)
from ldpc_gauge.code import ClassicalCode
from ldpc_gauge.families import ising, newman_moore, toric_complex
from ldpc_gauge.gf2 import GF2Matrix, GF2Vector, rank

COMPLEXES = all_complexes()
IDS = [n for n, _ in COMPLEXES]


def test_validate_examples():
    assert validate(ChainComplex([GF2Matrix.identity(3)]))
    cc = toric_complex(2, 3).complex
    assert validate(cc)
    d2 = cc.boundary(2)
    bad = GF2Matrix(d2.nrows, d2.ncols, [d2.rows[0] ^ 1] + list(d2.rows[1:]))
    assert not validate(ChainComplex([bad, cc.boundary(1)]))


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        ChainComplex([GF2Matrix.zeros(3, 2), GF2Matrix.zeros(2, 4)])


def test_homology_examples():
    assert homology(toric_complex(2, 3).complex, 1).betti == 2
    assert homology(toric_complex(3, 2).complex, 1).betti == 3
    assert cohomology(toric_complex(2, 4).complex, 1).betti == 2


def test_representatives_are_minimal_loops():
    h = homology(toric_complex(2, 3).complex, 1)
    assert h.minimized
    assert sorted(v.weight for v in h.representatives) == [3, 3]


def test_single_level_matches_code():
    c = newman_moore(3).code
    cc = ChainComplex([c.delta])
    assert cohomology(cc, 0).betti == c.k
    assert homology(cc, 1).betti == c.kT


def test_zero_maps_give_level_sizes():
    cc = ChainComplex([GF2Matrix.zeros(4, 3), GF2Matrix.zeros(2, 4)])
    assert [homology(cc, q).betti for q in range(3)] == [2, 4, 3]
    assert [cohomology(cc, q).betti for q in range(3)] == [2, 4, 3]


def test_dualize_examples():
    cc = ising(2, 3).complex
    assert dualize(dualize(cc)) == cc
    dual = dualize(cc)
    # bottom layer: Ising on the dual lattice; top layer: one star per original site
    assert set(dual.boundary(1).col_weights()) == {2}
    assert set(dual.boundary(2).col_weights()) == {4}
    assert dual.boundary(2).T == cc.boundary(1)
    single = ChainComplex([newman_moore(3).code.delta])
    assert dualize(single).boundary(1) == newman_moore(3).code.delta.T


def _loop(L, direction, offset):
    # edges are listed direction-first; edge (site, d) has index d*L*L + site
    sites = [(offset * L + x) if direction == 0 else (x * L + offset) for x in range(L)]
    return GF2Vector.from_support(2 * L * L, [direction * L * L + s for s in sites])


def _dual_loop(L, direction, offset):
    # edges crossing a fixed column (direction 0 edges at x = offset) or row
    if direction == 0:
        edges = [y * L + offset for y in range(L)]
    else:
        edges = [L * L + offset * L + x for x in range(L)]
    return GF2Vector.from_support(2 * L * L, edges)


def test_pairing_examples():
    L = 3
    cc = toric_complex(2, L).complex
    z_h = _loop(L, 0, 0)
    x_v = _dual_loop(L, 0, 1)
    x_h = _dual_loop(L, 1, 1)
    assert pairing(cc, z_h, x_v, 1) == 1
    assert pairing(cc, z_h, x_h, 1) == 0
    cob = cc.boundary(1).T.matvec(GF2Vector.unit(9, 4))
    assert pairing(cc, z_h, cob, 1) == 0
    with pytest.raises(ValueError):
        pairing(cc, GF2Vector.unit(18, 0), x_v, 1)


def test_attach_examples():
    inst = ising(2, 3)
    cc = attach_local_redundancies(inst.code, inst.plaquettes)
    assert validate(cc) and homology(cc, 1).betti == 2
    c1 = ising(1, 4).code
    bare = attach_local_redundancies(c1, GF2Matrix.zeros(4, 0))
    assert homology(bare, 1).betti == c1.kT == 1
    with pytest.raises(ValueError, match="plaquette 0"):
        attach_local_redundancies(c1, GF2Matrix(4, 1, [1, 0, 0, 0]))


def test_classify_examples():
    cls = classify_redundancies(ising(2, 3).code, 4)
    # at L=3 the three-bond loops around the torus also fit under the bound
    assert len(cls.local) == 10
    assert cls.global_classes == 0
    assert sorted(v.weight for v in cls.local)[:2] == [3, 3]
    big = classify_redundancies(ising(2, 5).code, 4)
    assert (len(big.local), big.global_classes) == (24, 2)
    assert classify_redundancies(newman_moore(8).code, 8).local == ()
    assert classify_redundancies(ising(1, 5, "open").code, 4) == ((), 0)


def test_classify_is_deterministic():
    c = ising(2, 4).code
    assert classify_redundancies(c, 6) == classify_redundancies(c, 6)


@pytest.mark.parametrize("name,cc", COMPLEXES, ids=IDS)
def test_boundary_of_boundary(name, cc):
    assert validate(cc)
    for q in range(1, cc.D):
        assert (cc.boundary(q) @ cc.boundary(q + 1)).is_zero()


@pytest.mark.parametrize("name,cc", COMPLEXES, ids=IDS)
def test_duality_of_betti_numbers(name, cc):
    dual = dualize(cc)
    for q in range(cc.D + 1):
        h = homology(cc, q, minimize=False).betti
        assert h == cohomology(cc, q, minimize=False).betti
        assert h == cohomology(dual, cc.D - q, minimize=False).betti


@pytest.mark.parametrize("name,cc", [c for c in COMPLEXES if c[1].D == 2], ids=[n for n, c in COMPLEXES if c.D == 2])
def test_rank_formula_matches_betti(name, cc):
    n_edges = cc.level_sizes[1]
    assert homology(cc, 1, minimize=False).betti == n_edges - rank(cc.boundary(1)) - rank(cc.boundary(2))


def _random_span_element(rng, mat):
    acc = 0
    for col in mat.columns:
        if rng.random() < 0.5:
            acc ^= col
    return GF2Vector(mat.nrows, acc)


PAIRING_CASES = [
    ("toric2_L3", toric_complex(2, 3).complex),
    ("toric3_L2", toric_complex(3, 2).complex),
    ("ising2_L4", ising(2, 4).complex),
    ("random0", random_complex(0, 6, 12, 5)),
]


@pytest.mark.parametrize("name,cc", PAIRING_CASES, ids=[n for n, _ in PAIRING_CASES])
def test_pairing_invariance(name, cc):
    rng = random.Random(name)
    zs = homology(cc, 1, minimize=False).representatives
    xs = cohomology(cc, 1, minimize=False).representatives
    d1, d2 = cc.boundary(1), cc.boundary(2)
    failures = 0
    trials = 0
    for _ in range(120):
        for z in zs:
            for x in xs:
                base = pairing(cc, z, x, 1)
                z2 = z ^ _random_span_element(rng, d2)
                x2 = x ^ _random_span_element(rng, d1.T)
                failures += pairing(cc, z2, x2, 1) != base
                trials += 1
    assert trials >= 100
    assert failures == 0


@pytest.mark.parametrize("name,cc", PAIRING_CASES, ids=[n for n, _ in PAIRING_CASES])
def test_pairing_matrix_is_invertible(name, cc):
    zs = homology(cc, 1, minimize=False).representatives
    xs = cohomology(cc, 1, minimize=False).representatives
    mat = GF2Matrix(len(zs), len(xs), [sum(pairing(cc, z, x, 1) << j for j, x in enumerate(xs)) for z in zs])
    assert rank(mat) == len(zs) == len(xs)


def test_code_roundtrip_through_complex():
    c = ising(2, 3).code
    cc = attach_local_redundancies(c, ising(2, 3).plaquettes)
    assert ClassicalCode(cc.boundary(1)) == c
