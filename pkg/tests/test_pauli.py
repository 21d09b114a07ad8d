import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ldpc_gauge.families import ising, toric_complex
from ldpc_gauge.gauge import css_from_complex, css_hamiltonian
from ldpc_gauge.pauli import (
    NonCommutingError,
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
from ldpc_gauge.spt import build_cluster, dw_map

REG = QubitRegister.named("q", 6)


def paulis(reg=REG):
    top = (1 << reg.size) - 1
    return st.builds(lambda x, z: PauliOperator(reg, x, z), st.integers(0, top), st.integers(0, top))


def test_register_rejects_duplicates():
    with pytest.raises(ValueError):
        QubitRegister(["a", "a"])


def test_commute_examples():
    reg = QubitRegister.named("q", 2)
    x0 = PauliOperator.from_labels(reg, x=["q0"])
    assert commute(x0, PauliOperator.from_labels(reg, z=["q0"])) == 1
    assert commute(x0, PauliOperator.from_labels(reg, z=["q1"])) == 0


def test_toric_checks_commute():
    d = css_from_complex(toric_complex(2, 3).complex)
    h = css_hamiltonian(d)
    ops = h.operators
    assert all(commute(p, q) == 0 for p in ops for q in ops)


def test_commute_rejects_register_mismatch():
    with pytest.raises(ValueError):
        commute(PauliOperator(REG, 1, 0), PauliOperator(QubitRegister.named("r", 6), 0, 1))


def test_stabilizer_rank_examples():
    reg = QubitRegister.named("q", 1)
    x0 = PauliOperator(reg, 1, 0)
    assert stabilizer_group_rank([x0, x0]) == 1
    assert stabilizer_group_rank([]) == 0
    d = css_from_complex(toric_complex(2, 3).complex)
    assert stabilizer_group_rank(css_hamiltonian(d).operators) == 16


def test_stabilizer_rank_rejects_anticommuting():
    reg = QubitRegister.named("q", 2)
    with pytest.raises(NonCommutingError) as e:
        stabilizer_group_rank([PauliOperator(reg, 1, 0), PauliOperator(reg, 0, 2), PauliOperator(reg, 0, 1)])
    assert e.value.pair == (0, 2)


def test_ground_space_examples():
    assert ground_space_log2_dim(css_hamiltonian(css_from_complex(toric_complex(2, 3).complex))) == 2
    assert ground_space_log2_dim(build_cluster(ising(2, 3).code).hamiltonian) == 0
    c = ising(1, 4).code
    reg = QubitRegister.named("s", 4)
    h = PauliHamiltonian(reg, [(-1, PauliOperator(reg, 0, col)) for col in c.delta.columns])
    assert ground_space_log2_dim(h) == 1


def test_ground_space_invariant_under_generator_change():
    d = css_from_complex(toric_complex(2, 3).complex)
    ops = css_hamiltonian(d).operators
    mixed = [ops[0] * ops[1], ops[1]] + ops[2:] + [ops[3] * ops[5]]
    reg = ops[0].register
    h = PauliHamiltonian(reg, [(-1, op) for op in mixed])
    assert ground_space_log2_dim(h) == 2


def test_hamiltonian_merges_and_compares():
    reg = QubitRegister.named("q", 2)
    a, b = PauliOperator(reg, 1, 0), PauliOperator(reg, 0, 2)
    h1 = PauliHamiltonian(reg, [(-1, a), (-1, b)])
    h2 = PauliHamiltonian(reg, [(-1, b), (-1, a)])
    assert hamiltonian_equal(h1, h2)
    assert not hamiltonian_equal(h1, PauliHamiltonian(reg, [(1, a), (-1, b)]))
    assert PauliHamiltonian(reg, [(-1, a), (-1, a)]).terms == ((-2, a),)


def test_text_rendering():
    reg = QubitRegister.named("q", 13)
    op = PauliOperator.from_supports(reg, x=[3, 7], z=[12])
    assert op.to_text() == "X3 X7 Z12"
    assert PauliOperator(reg, 1, 1).to_text(labels=True) == "Y(q0)"


def test_identity_map_and_compose():
    m = dw_map(ising(1, 3).code)
    ident = SymplecticMap.identity(m.source)
    p = PauliOperator(m.source, 0b101, 0b11)
    assert apply_map(ident, p) == p
    assert compose(ident, m) == m


def test_dw_examples():
    c = ising(1, 4).code
    m = dw_map(c)
    cs = build_cluster(c)
    for i in range(c.n):
        x = PauliOperator.from_labels(m.source, x=[f"s{i}"])
        star = PauliOperator(m.source, c.delta.rows[i] << c.n, 0)
        assert m(x) == x * star
        z = PauliOperator.from_labels(m.source, z=[f"s{i}"])
        assert m(z) == z
    assert compose(m, m) == SymplecticMap.identity(cs.register)


def test_bad_map_rejected_at_construction():
    reg = QubitRegister.named("q", 2)
    x0, z0 = PauliOperator(reg, 1, 0), PauliOperator(reg, 0, 1)
    with pytest.raises(ValueError, match="symplectic"):
        SymplecticMap(reg, reg, [x0, x0], [z0, z0])


def test_inverse_round_trip():
    m = dw_map(ising(2, 2).code)
    assert compose(m, m.inverse()) == SymplecticMap.identity(m.source)


def test_matrix_identity_on_dw():
    m = dw_map(ising(1, 5).code)
    assert oracles.symplectic_form_holds(m.matrix_rows(), m.source.size)


@given(paulis(), paulis(), paulis())
def test_commute_bilinear(p, r, q):
    assert commute(p, q) == commute(q, p)
    assert commute(p * r, q) == commute(p, q) ^ commute(r, q)


@given(paulis(), paulis())
def test_map_preserves_commutation_and_products(p, q):
    reg = REG
    # a fixed Clifford: CNOTs q0->q1, q2->q3, q4->q5, then a Hadamard on q2
    xs, zs = [], []
    for j in range(6):
        xs.append(PauliOperator(reg, (0b11 << j) if j % 2 == 0 else (1 << j), 0))
        zs.append(PauliOperator(reg, 0, (0b11 << (j - 1)) if j % 2 else (1 << j)))
    cnot = SymplecticMap(reg, reg, xs, zs)
    h2 = SymplecticMap(
        reg, reg,
        [PauliOperator(reg, 0, 4) if j == 2 else PauliOperator(reg, 1 << j, 0) for j in range(6)],
        [PauliOperator(reg, 4, 0) if j == 2 else PauliOperator(reg, 0, 1 << j) for j in range(6)],
    )
    m = compose(cnot, h2)
    assert commute(m(p), m(q)) == commute(p, q)
    assert m(p * q) == m(p) * m(q)
    assert oracles.symplectic_form_holds(m.matrix_rows(), 6)
