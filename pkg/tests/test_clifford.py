import numpy as np
import pytest

from abw.clifford import (
    PAULI,
    UnsupportedSignature,
    build_clifford,
    fiber_background,
    is_spin_group_element,
    time_orientation_form,
)
from abw.krein import krein_adjoint
from abw.linalg import OperatorSubspace

SIGNATURES = [(2, 0), (0, 2), (1, 3), (3, 1), (0, 4), (4, 0), (2, 2)]


@pytest.mark.parametrize("p,q", SIGNATURES)
def test_anticommutation_exact(p, q):
    mod = build_clifford(p, q)
    k = mod.spinor_dim
    signs = [1] * p + [-1] * q
    for a, ga in enumerate(mod.gammas):
        for b, gb in enumerate(mod.gammas):
            want = 2.0 * (signs[a] if a == b else 0.0) * np.eye(k)
            assert np.array_equal(ga @ gb + gb @ ga, want)


@pytest.mark.parametrize("p,q", SIGNATURES)
def test_entries_are_exact_units(p, q):
    mod = build_clifford(p, q)
    for g in mod.gammas:
        vals = np.unique(np.round(g.ravel(), 15))
        for v in vals:
            assert v in (0, 1, -1, 1j, -1j)


@pytest.mark.parametrize("p,q", SIGNATURES)
def test_chirality_and_metric(p, q):
    mod = build_clifford(p, q)
    k = mod.spinor_dim
    n = p + q
    chi = (1j ** (n // 2 + q)) * np.eye(k, dtype=complex)
    for g in mod.gammas:
        chi = chi @ g
    assert np.allclose(chi, mod.chi0)
    assert np.allclose(mod.chi0 @ mod.chi0, np.eye(k))
    for g in mod.gammas:
        assert np.allclose(mod.chi0 @ g, -g @ mod.chi0)
        assert np.allclose(krein_adjoint(g, mod.H0), g)


@pytest.mark.parametrize("p,q", SIGNATURES)
def test_ko_indices_follow_signature(p, q):
    mod = build_clifford(p, q)
    assert mod.space.signs.pair() == ((-p - q) % 8, (q - p) % 8)


@pytest.mark.parametrize("p,q", SIGNATURES)
def test_vector_span_and_chirality_adjoint_sign(p, q):
    mod = build_clifford(p, q)
    assert mod.vector_span.dim == p + q
    s = mod.space.signs
    assert np.allclose(krein_adjoint(mod.chi0, mod.H0), s.eps2 * s.kappa2 * mod.chi0)


def test_real_structure_commutes_with_generators():
    for p, q in SIGNATURES:
        mod = build_clifford(p, q)
        cm = mod.C0.mat
        for g in mod.gammas:
            assert np.linalg.norm(cm @ np.conj(g) - g @ cm) < 1e-12


def test_minkowski_matrices_match_standard_chiral_conventions():
    mod = build_clifford(1, 3)
    i2 = np.eye(2)
    z2 = np.zeros((2, 2))
    assert np.array_equal(mod.gammas[0], np.block([[z2, i2], [i2, z2]]))
    for k in range(3):
        assert np.array_equal(
            mod.gammas[k + 1], np.block([[z2, PAULI[k]], [-PAULI[k], z2]])
        )
    assert np.array_equal(mod.chi0, np.diag([-1, -1, 1, 1]).astype(complex))
    assert np.array_equal(mod.H0, mod.gammas[0])
    assert np.array_equal(mod.C0.mat, mod.chi0 @ mod.gammas[2])


def test_euclidean_plane_matrices():
    mod = build_clifford(2, 0)
    assert np.array_equal(mod.gammas[0], np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.array_equal(mod.gammas[1], np.array([[0, 1j], [-1j, 0]], dtype=complex))
    assert np.array_equal(mod.chi0, np.diag([1.0, -1.0]).astype(complex))
    assert np.array_equal(mod.H0, np.eye(2))
    assert np.array_equal(mod.C0.mat, mod.gammas[0])


def test_unsupported_signatures():
    with pytest.raises(UnsupportedSignature):
        build_clifford(1, 2)
    with pytest.raises(UnsupportedSignature):
        build_clifford(1, 1)
    with pytest.raises(UnsupportedSignature):
        build_clifford(0, 0)


def test_build_is_deterministic():
    a = build_clifford(2, 2)
    b = build_clifford(2, 2)
    for ga, gb in zip(a.gammas, b.gammas):
        assert np.array_equal(ga, gb)
    assert np.array_equal(a.H0, b.H0)
    assert np.array_equal(a.C0.mat, b.C0.mat)


def test_spin_group_membership(cliff13, rng):
    g = cliff13.gammas
    assert is_spin_group_element(np.eye(4), cliff13)
    assert is_spin_group_element(g[1] @ g[2], cliff13)
    # product of two unit vectors (one timelike, one spacelike)
    assert is_spin_group_element(g[0] @ g[3], cliff13)
    # odd products fail the chirality test
    assert not is_spin_group_element(g[1], cliff13)
    assert not is_spin_group_element(g[0] @ g[1] @ g[2], cliff13)
    # not Krein-unitary up to sign
    assert not is_spin_group_element(np.diag([2.0, 1.0, 1.0, 1.0]), cliff13)


def test_even_products_of_unit_vectors_are_spin(cliff13, rng):
    signs = cliff13.metric_signs
    for _ in range(5):
        u = np.eye(4, dtype=complex)
        for _ in range(2):
            coeff = rng.standard_normal(4)
            norm2 = sum(s * c * c for s, c in zip(signs, coeff))
            while abs(norm2) < 0.1:
                coeff = rng.standard_normal(4)
                norm2 = sum(s * c * c for s, c in zip(signs, coeff))
            v = sum(c * g for c, g in zip(coeff, cliff13.gammas)) / np.sqrt(abs(norm2))
            u = u @ v
        assert is_spin_group_element(u, cliff13)


def test_time_orientation_witness_in_lorentz_fiber(cliff13, fiber13):
    beta = time_orientation_form(fiber13)
    assert beta is not None
    # witness sits on the timelike axis up to a complex multiple
    coeff = np.trace(cliff13.gammas[0].conj().T @ beta) / 4
    assert np.linalg.norm(beta - coeff * cliff13.gammas[0]) < 1e-9
    # and is a complex multiple of a bimodule element
    assert fiber13.omega1.contains(1j * beta / coeff)


def test_no_time_orientation_witness_in_euclidean_fiber():
    assert time_orientation_form(fiber_background(build_clifford(4, 0))) is None


def test_no_witness_without_one_forms(cliff13, fiber13):
    from abw.background import AlgebraicBackground

    empty = AlgebraicBackground(
        fiber13.space, fiber13.algebra, fiber13.rep, OperatorSubspace.zero(4)
    )
    assert time_orientation_form(empty) is None
