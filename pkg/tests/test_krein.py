import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abw.krein import (
    AntilinearOp,
    GradedKreinSpace,
    NotAGradedRealKreinSpace,
    antilinear_krein_adjoint,
    detect_ko_signs,
    is_compatible_fundamental_symmetry,
    krein_adjoint,
    krein_schmidt,
    opposite,
)

ETA4 = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def krein_product(eta, psi, phi):
    return np.vdot(psi, eta @ phi)


def test_fundamental_symmetry_is_its_own_adjoint():
    assert np.allclose(krein_adjoint(ETA4, ETA4), ETA4)


def test_scalar_i_is_anti_selfadjoint():
    a = 1j * np.eye(4)
    assert np.allclose(krein_adjoint(a, ETA4), -a)


def test_adjoint_against_inner_product_oracle(rng):
    # (psi, A phi) = (A^x psi, phi) evaluated directly on random vectors
    a = random_complex(rng, (4, 4))
    ax = krein_adjoint(a, ETA4)
    for _ in range(10):
        psi, phi = random_complex(rng, (2, 4))
        lhs = krein_product(ETA4, psi, a @ phi)
        rhs = krein_product(ETA4, ax @ psi, phi)
        assert abs(lhs - rhs) < 1e-9 * (1 + abs(lhs))


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 10_000))
def test_adjoint_involutive_and_antimultiplicative(seed):
    rng = np.random.default_rng(seed)
    a, b = random_complex(rng, (2, 4, 4))
    scale = np.linalg.norm(a) * np.linalg.norm(b)
    assert np.linalg.norm(krein_adjoint(krein_adjoint(a, ETA4), ETA4) - a) < 1e-9 * np.linalg.norm(a)
    lhs = krein_adjoint(a @ b, ETA4)
    rhs = krein_adjoint(b, ETA4) @ krein_adjoint(a, ETA4)
    assert np.linalg.norm(lhs - rhs) < 1e-9 * max(scale, 1.0)


def test_adjoint_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        krein_adjoint(np.eye(3), ETA4)


def test_antilinear_composition_rule(rng):
    c1 = AntilinearOp(random_complex(rng, (4, 4)))
    c2 = AntilinearOp(random_complex(rng, (4, 4)))
    psi = random_complex(rng, (4,))
    composed = c1.compose(c2)  # linear matrix
    assert np.allclose(composed @ psi, c1(c2(psi)))


def test_antilinear_adjoint_oracle(rng):
    # (C^x phi, psi) = (C psi, phi) on random vectors
    c = AntilinearOp(random_complex(rng, (4, 4)))
    cx = antilinear_krein_adjoint(c, ETA4)
    for _ in range(10):
        psi, phi = random_complex(rng, (2, 4))
        assert abs(krein_product(ETA4, cx(phi), psi) - krein_product(ETA4, c(psi), phi)) < 1e-9


def test_opposite_is_an_anti_automorphism(cliff13, rng):
    space = cliff13.space
    a, b = random_complex(rng, (2, 4, 4))
    lhs = opposite(a @ b, space)
    rhs = opposite(b, space) @ opposite(a, space)
    assert np.linalg.norm(lhs - rhs) < 1e-9 * max(np.linalg.norm(a @ b), 1.0)
    assert np.allclose(opposite(np.eye(4), space), np.eye(4))


def test_opposite_squares_to_identity(cliff13, rng):
    a = random_complex(rng, (4, 4))
    again = opposite(opposite(a, cliff13.space), cliff13.space)
    assert np.linalg.norm(again - a) < 1e-9 * np.linalg.norm(a)


def test_trace_pairing_values():
    assert abs(krein_schmidt(np.eye(4), np.eye(4), ETA4) - 4.0) < 1e-12
    assert abs(krein_schmidt(ETA4, ETA4, ETA4) - 4.0) < 1e-12
    with pytest.raises(ValueError):
        krein_schmidt(np.eye(3), np.eye(4), ETA4)


def test_trace_pairing_sesquilinear(rng):
    a, b = random_complex(rng, (2, 4, 4))
    z = 0.7 - 0.2j
    assert np.isclose(krein_schmidt(a, z * b, ETA4), z * krein_schmidt(a, b, ETA4))
    assert np.isclose(krein_schmidt(z * a, b, ETA4), np.conj(z) * krein_schmidt(a, b, ETA4))


def test_trivial_space_signs():
    space = GradedKreinSpace.build(np.eye(1), np.eye(1), AntilinearOp(np.eye(1)))
    s = space.signs
    assert (s.eps, s.kappa, s.eps2, s.kappa2) == (1, 1, 1, 1)
    assert s.pair() == (0, 0)


def test_detection_rejects_bad_square():
    with pytest.raises(NotAGradedRealKreinSpace):
        detect_ko_signs(np.eye(2), np.eye(2), AntilinearOp(2.0 * np.eye(2)))
    with pytest.raises(NotAGradedRealKreinSpace):
        detect_ko_signs(np.diag([1.0, 2.0]), np.eye(2), AntilinearOp(np.eye(2)))


def test_spinor_fiber_signs_from_direct_relations(cliff13):
    # independent oracle: evaluate the defining relations entrywise
    space = cliff13.space
    cmat = space.C.mat
    square = cmat @ np.conj(cmat)
    assert np.allclose(square, -np.eye(4))              # C.C = -1
    cx = antilinear_krein_adjoint(space.C, space.eta)
    assert np.allclose(cx.mat, -cmat)                   # C^x = -C
    assert np.allclose(cmat @ np.conj(space.chi), -space.chi @ cmat)  # C chi = -chi C
    assert np.allclose(krein_adjoint(space.chi, space.eta), -space.chi)
    s = space.signs
    assert (s.eps, s.kappa, s.eps2, s.kappa2) == (-1, -1, -1, 1)
    assert s.pair() == (4, 2)


def test_time_direction_is_compatible_symmetry(cliff13):
    assert is_compatible_fundamental_symmetry(cliff13.space.eta, cliff13.space)
    assert is_compatible_fundamental_symmetry(cliff13.gammas[0], cliff13.space)


def test_boosted_symmetry_family_is_incompatible(cliff13):
    # a boosted fundamental symmetry with no commutation relation at all
    g0, g1 = cliff13.gammas[0], cliff13.gammas[1]
    chi = cliff13.chi0
    for lam in (1.0, 0.5):
        eta_l = (1 + lam**2 / 2) * g0 + (lam**2 / 2) * g0 @ chi + 1j * lam * g0 @ g1
        assert np.allclose(eta_l @ eta_l, np.eye(4))  # it is an involution
        form = cliff13.space.eta @ eta_l
        assert np.allclose(form, form.conj().T)       # and defines a scalar product
        assert np.linalg.eigvalsh(form).min() > 0
        assert not is_compatible_fundamental_symmetry(eta_l, cliff13.space)


def test_sm_space_signs_read_off_structures(sm1):
    # direct relation checks on the built matrices, then the detector
    space = sm1.space
    s, eps_f = sm1.y.s, sm1.y.eps_F
    jm = space.J.mat
    assert np.allclose(jm @ np.conj(jm), eps_f * np.eye(32))       # J.J = eps_F
    assert np.allclose(space.C.mat @ np.conj(space.C.mat), -eps_f * np.eye(32))
    detected = space.signs
    assert detected.eps == -eps_f
    assert detected.kappa == -s * eps_f
    assert detected.eps2 == -1
    assert detected.kappa2 == -1
    assert detected.pair() == (2, 6)  # at the default signs s = eps_F = -1


def test_gamma_span_intersection(cliff13):
    from abw.linalg import OperatorSubspace

    g = cliff13.gammas
    s = OperatorSubspace.span([g[0], g[1]])
    t = OperatorSubspace.span([g[1], g[2]])
    inter = s.intersect(t)
    assert inter.dim == 1
    assert inter.contains(g[1])


def test_complement_orthogonality_in_trace_pairing(sm2):
    # on operators commuting with the metric the trace pairing reduces to
    # the Frobenius one, so complements computed there are also orthogonal
    # for the indefinite pairing
    from abw.symmetry import flavour_complement_report, generator_catalog

    rep = flavour_complement_report(sm2)
    cat = generator_catalog(2)
    eta = sm2.space.eta
    for v in (cat.hypercharge, cat.x, cat.b_minus_l):
        for b in rep["complement"].basis[:5]:
            assert abs(krein_schmidt(v, b, eta).real) < 1e-9
