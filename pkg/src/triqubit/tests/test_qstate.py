import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from triqubit.bases import EEB, KET0, KET1, MINUS, PLUS, SHIFTS, basis_ket, ghz
from triqubit.errors import BadWeights, NotHermitian, NotNormalized, ZeroVector
from triqubit.qstate import (DensityMatrix3Q, HermitianMatrix, Party, PartyPair, ProductState3Q,
                             PureState3Q, Qubit2Vec, amp_index, density_of, expand,
                             hermitian_eigenvalues, inner, make_pure, mix, normalized,
                             partial_transpose, reduce_pair, reduce_single)
from triqubit.sampling import RNG

R = 1 / np.sqrt(2)

amplitude_vectors = st.lists(st.floats(-1, 1, allow_nan=False), min_size=16, max_size=16).map(
    lambda xs: np.array(xs[:8]) + 1j * np.array(xs[8:])).filter(lambda v: np.linalg.norm(v) > 1e-3)


@pytest.mark.parametrize("ijk,r", [((0, 0, 0), 0), ((1, 1, 1), 7), ((1, 0, 1), 5)])
def test_amp_index(ijk, r):
    assert amp_index(*ijk) == r


def test_amp_index_is_a_bijection():
    seen = {amp_index(i, j, k) for i in (0, 1) for j in (0, 1) for k in (0, 1)}
    assert seen == set(range(8))


def test_make_pure():
    assert make_pure([1, 0, 0, 0, 0, 0, 0, 0])[0] == 1
    phi1 = make_pure(EEB[0])
    assert abs(inner(phi1, phi1) - 1) < 1e-12
    with pytest.raises(NotNormalized):
        make_pure([1, 1, 0, 0, 0, 0, 0, 0])


def test_make_pure_renormalizes_small_drift():
    psi = make_pure(np.array([1 + 1e-10, 0, 0, 0, 0, 0, 0, 0]))
    assert np.vdot(psi.amps, psi.amps).real == pytest.approx(1, abs=1e-15)


def test_normalized():
    assert np.allclose(normalized([2, 0, 0, 0, 0, 0, 0, 0]).amps, basis_ket(0, 0, 0).amps)
    g = normalized([1, 0, 0, 0, 0, 0, 0, 1])
    assert g[0] == pytest.approx(R) and g[7] == pytest.approx(R)
    with pytest.raises(ZeroVector):
        normalized(np.zeros(8))


def test_states_reject_bad_input():
    with pytest.raises(ValueError):
        PureState3Q(np.zeros(7))
    with pytest.raises(ValueError):
        PureState3Q([np.nan, 0, 0, 0, 0, 0, 0, 0])
    with pytest.raises(NotNormalized):
        Qubit2Vec([1, 1])
    with pytest.raises(ZeroVector):
        Qubit2Vec.of(0, 0)
    assert np.allclose(Qubit2Vec.of(1, 1).amps, PLUS.amps)


def test_inner_orthogonality_of_tables():
    s1, s2, phi1 = make_pure(SHIFTS[0]), make_pure(SHIFTS[1]), make_pure(EEB[0])
    assert abs(inner(phi1, s2)) < 1e-15
    assert abs(inner(s1, phi1)) < 1e-15
    assert inner(phi1, phi1) == pytest.approx(1)


def test_inner_is_conjugate_linear_in_first_argument():
    x = normalized([1j, 1, 0, 0, 0, 0, 0, 0])
    y = basis_ket(0, 0, 0)
    assert inner(x, y) == pytest.approx(-1j * R)


def test_expand():
    assert np.allclose(expand(ProductState3Q(KET0, KET0, KET0)).amps, SHIFTS[0])
    assert np.allclose(expand(ProductState3Q(KET1, MINUS, PLUS)).amps, SHIFTS[1], atol=1e-15)
    assert np.allclose(expand(ProductState3Q(PLUS, KET0, KET0)).amps, [R, 0, 0, 0, R, 0, 0, 0])


def test_density_of():
    rho = density_of(make_pure(EEB[0])).entries
    support = [1, 2, 4, 7]
    assert np.allclose(rho[np.ix_(support, support)], 0.25)
    assert np.count_nonzero(np.abs(rho) > 1e-15) == 16
    g = density_of(ghz()).entries
    for r, s in [(0, 0), (0, 7), (7, 0), (7, 7)]:
        assert g[r, s] == pytest.approx(0.5)


def test_mix():
    k0 = basis_ket(0, 0, 0)
    assert np.allclose(mix([k0], [1]).entries, density_of(k0).entries)
    with pytest.raises(BadWeights):
        mix([k0, basis_ket(1, 1, 1)], [0.3, 0.8])
    with pytest.raises(BadWeights):
        mix([k0, basis_ket(1, 1, 1)], [1.5, -0.5])
    with pytest.raises(BadWeights):
        mix([k0], [0.5, 0.5])
    with pytest.raises(BadWeights):
        mix([], [])
    with pytest.raises(BadWeights):
        mix([k0, basis_ket(1, 1, 1)], [np.nan, 1.0])


def test_uniform_mix_of_a_full_basis_is_maximally_mixed():
    basis = [make_pure(r) for r in SHIFTS + EEB]
    assert np.allclose(mix(basis, [1 / 8] * 8).entries, np.eye(8) / 8, atol=1e-12)


def test_reduce_single():
    assert np.allclose(reduce_single(density_of(basis_ket(0, 0, 0)), Party.A).entries, np.diag([1, 0]))
    assert np.allclose(reduce_single(density_of(make_pure(EEB[0])), Party.A).entries, np.eye(2) / 2)
    plus = density_of(make_pure([R, 0, 0, 0, R, 0, 0, 0]))
    assert np.allclose(reduce_single(plus, Party.A).entries, np.full((2, 2), 0.5))


def test_reduce_pair_orders_the_kept_bits():
    rho = density_of(basis_ket(1, 0, 1))
    for pp, kept in [(PartyPair.AB, 2), (PartyPair.BC, 1), (PartyPair.AC, 3)]:
        m = reduce_pair(rho, pp).entries
        assert m[kept, kept] == pytest.approx(1)
        assert m.trace().real == pytest.approx(1)


def test_reduce_pair_of_ghz_is_dephased_bell():
    assert np.allclose(reduce_pair(density_of(ghz()), PartyPair.AB).entries, np.diag([0.5, 0, 0, 0.5]))


def test_partial_transpose_of_ghz_is_indefinite():
    ev = hermitian_eigenvalues(partial_transpose(density_of(ghz()), Party.A))
    assert np.allclose(ev, [0.5, 0.5, 0.5, 0, 0, 0, 0, -0.5], atol=1e-12)


def test_partial_transpose_fixes_product_states():
    rho = density_of(basis_ket(0, 0, 0))
    for p in Party:
        assert np.array_equal(partial_transpose(rho, p).entries, rho.entries)


@settings(max_examples=50, deadline=None)
@given(amplitude_vectors)
def test_partial_transpose_is_a_trace_preserving_involution(v):
    rho = density_of(normalized(v))
    for p in Party:
        once = partial_transpose(rho, p)
        assert abs(once.trace() - 1) < 1e-12
        assert np.array_equal(partial_transpose(once, p).entries, rho.entries)


@settings(max_examples=50, deadline=None)
@given(amplitude_vectors)
def test_marginals_are_states(v):
    rho = density_of(normalized(v))
    for pp in PartyPair:
        ev = hermitian_eigenvalues(reduce_pair(rho, pp))
        assert sum(ev) == pytest.approx(1, abs=1e-9)
        assert min(ev) >= -1e-10


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_product_marginals_are_pure(seed):
    rng = RNG(seed)
    prod = ProductState3Q(*(Qubit2Vec(rng.amplitudes(2)) for _ in Party))
    rho = density_of(expand(prod))
    for party in Party:
        m = reduce_single(rho, party).entries
        assert np.trace(m @ m).real == pytest.approx(1, abs=1e-9)
        assert np.allclose(m, np.outer(prod.factors[party.axis].amps, prod.factors[party.axis].amps.conj()), atol=1e-12)


@pytest.mark.parametrize("m,expected", [
    (np.diag([3, 1]), [3, 1]),
    (np.ones((2, 2)), [2, 0]),
    (np.eye(8) / 8, [1 / 8] * 8),
])
def test_hermitian_eigenvalues(m, expected):
    assert np.allclose(hermitian_eigenvalues(HermitianMatrix(m)), expected)


def test_hermitian_contract_is_enforced():
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotHermitian):
        HermitianMatrix(np.array([[0, 1j], [1j, 0]]))
    with pytest.raises(ValueError):
        HermitianMatrix(np.eye(3))


def test_density_matrix_checks():
    with pytest.raises(ValueError):
        DensityMatrix3Q(np.eye(8) / 4)
    with pytest.raises(ValueError):
        DensityMatrix3Q(np.diag([1.5, -0.5, 0, 0, 0, 0, 0, 0]))
    assert DensityMatrix3Q(np.eye(8) / 8).trace() == pytest.approx(1)
