import dataclasses

import numpy as np
import pytest

from abw.background import (
    check_background,
    check_order0,
    check_order1,
    configuration_space,
    is_compatible,
    is_dirac_operator,
    is_regular,
    one_forms_of,
)
from abw.krein import krein_adjoint, opposite
from abw.linalg import real_inner
from abw.sm import (
    QUATERNION_UNITS,
    build_extended_background,
    build_sm_background,
    dirac_qm,
    is_generic,
    majorana_block,
    quaternion,
    random_yukawa,
    sigma_block,
    yukawa_block,
    _offdiag,
    _tilde,
)
from abw.symmetry import majorana_family

SIGN_CHOICES = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def reference_dirac(y):
    """Block assembly of the reference operator, written out sector by
    sector as an independent oracle."""
    y0 = yukawa_block(y)
    m0 = majorana_block(y)
    return _offdiag(y.N, {
        ("R", "L"): -y0.conj().T,
        ("L", "R"): y0,
        ("R", "Rbar"): y.s * m0.conj().T,
        ("Rbar", "R"): m0,
        ("Rbar", "Lbar"): -y0.T,
        ("Lbar", "Rbar"): y0.conj(),
    })


@pytest.mark.parametrize("s,eps_f", SIGN_CHOICES)
def test_axioms_and_orders_all_sign_choices(s, eps_f):
    for n in (1, 2):
        y = random_yukawa(n, seed=11, s=s, eps_F=eps_f)
        b = build_sm_background(y).background
        assert check_background(b).passed
        assert check_order0(b)
        assert check_order1(b)


@pytest.mark.parametrize("s,eps_f", SIGN_CHOICES)
def test_structure_squares(s, eps_f):
    y = random_yukawa(2, seed=3, s=s, eps_F=eps_f)
    model = build_sm_background(y)
    n = model.dim
    assert np.allclose(model.space.eta @ model.space.eta, np.eye(n))
    assert np.allclose(model.space.chi @ model.space.chi, np.eye(n))
    jm = model.space.J.mat
    assert np.allclose(jm @ np.conj(jm), eps_f * np.eye(n))


def test_yukawa_symmetry_class_enforced():
    rng = np.random.default_rng(0)
    bad = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    good = random_yukawa(2, seed=1, s=-1, eps_F=-1)
    with pytest.raises(ValueError):
        dataclasses.replace(good, Y_R=bad - bad.T)  # wrong class for s*eps_F = +1
    with pytest.raises(ValueError):
        random_shape = np.zeros((3, 3))
        dataclasses.replace(good, Y_nu=random_shape)


@pytest.mark.parametrize("s,eps_f", SIGN_CHOICES)
def test_reference_dirac_matches_block_assembly(s, eps_f):
    y = random_yukawa(3, seed=5, s=s, eps_F=eps_f)
    model = build_sm_background(y)
    d0 = model.d0
    oracle = reference_dirac(y)
    assert np.linalg.norm(d0 - oracle) <= 1e-12 * np.linalg.norm(oracle)
    assert is_dirac_operator(model.background, d0)


def test_dirac_family_edge_cases(sm1):
    y = sm1.y
    assert np.allclose(dirac_qm(y, np.zeros((2, 2)), np.zeros((1, 1))), 0.0)
    with pytest.raises(ValueError):
        sigma_block(y, np.array([[1.0, 2.0], [3.0, 4.0]]))  # wrong shape
    y2 = random_yukawa(2, seed=1)
    with pytest.raises(ValueError):
        # wrong symmetry class for the scalar block
        sigma_block(y2, np.array([[0.0, 1.0], [-1.0, 0.0]]))


def test_scalar_block_centralizes_and_is_own_opposite(sm2):
    y = sm2.y
    m = np.array([[1.0, 0.2j], [0.2j, -0.5]])
    sig = sigma_block(y, m)
    for g in sm2.background.rep_matrices():
        assert np.linalg.norm(sig @ g - g @ sig) < 1e-12
    assert np.linalg.norm(opposite(sig, sm2.space) - sig) < 1e-12
    assert np.linalg.norm(krein_adjoint(sig, sm2.space.eta) - sig) < 1e-12


def test_one_form_bimodule_dimension_and_oddness(sm2):
    b = sm2.background
    assert b.omega1.dim == 8
    chi = b.space.chi
    for w in b.omega1.basis:
        assert np.linalg.norm(chi @ w + w @ chi) < 1e-12


def test_reference_dirac_is_regular(sm2):
    gen = one_forms_of(sm2.background, sm2.d0)
    assert gen.dim == 8
    assert all(sm2.background.omega1.contains(x) for x in gen.basis)
    assert is_regular(sm2.background, sm2.d0)


@pytest.mark.parametrize("s,eps_f", SIGN_CHOICES)
@pytest.mark.parametrize("n", [1, 2])
def test_configuration_space_matches_family_count(n, s, eps_f):
    y = random_yukawa(n, seed=13, s=s, eps_F=eps_f)
    model = build_sm_background(y)
    cfg = configuration_space(model.background)
    sig = s * eps_f
    assert cfg.dim == 4 + (n * (n + 1) if sig == 1 else n * (n - 1))
    assert all(is_compatible(model.background, d) for d in cfg.basis)
    # the family itself sits inside the solver output
    q = quaternion(0.3 + 0.1j, -0.7j)
    assert cfg.contains(dirac_qm(y, q, np.zeros((n, n))))


def test_configuration_space_contains_scalar_directions(sm2):
    cfg = configuration_space(sm2.background)
    fam = majorana_family(sm2, +1)
    assert fam.dim == sm2.N * (sm2.N + 1)
    assert cfg.intersect(fam).dim == fam.dim


def test_pairing_constant(sm2, rng):
    y = sm2.y
    kconst = float(np.trace(y.M_nu + y.M_e + 3 * y.M_u + 3 * y.M_d).real)
    units = list(QUATERNION_UNITS.values())
    for _ in range(6):
        c = rng.standard_normal((4, 4))
        qa, qb, qc, qd = (sum(ci * u for ci, u in zip(row, units)) for row in c)
        lhs = real_inner(sm2.omega_element(qa, qb), sm2.omega_element(qc, qd))
        rhs = kconst * 0.5 * np.real(
            np.trace(qa.conj().T @ qc) + np.trace(qb.conj().T @ qd)
        )
        assert abs(lhs - rhs) < 1e-9 * max(abs(rhs), 1.0)


def test_genericity_predicate():
    assert is_generic(random_yukawa(3, seed=4))
    ident = np.eye(3)
    equal = dataclasses.replace(
        random_yukawa(3, seed=4), Y_nu=ident, Y_e=ident
    )
    assert not is_generic(equal)
    singular = random_yukawa(3, seed=4)
    y_nu = singular.Y_nu.copy()
    y_nu[:, 0] = 0
    assert not is_generic(dataclasses.replace(singular, Y_nu=y_nu))


def test_tilde_convention():
    # the doubled action: a 2x2 block on lepton isospin and on quark isospin
    # with colour untouched
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    t = _tilde(a, 1)
    assert np.allclose(t[:2, :2], a)           # lepton (nu, e)
    assert np.allclose(t[2:5, 2:5], np.eye(3))  # u-u colour block of a11 = 1
    assert np.allclose(t[2:5, 5:8], 2 * np.eye(3))


def test_extended_background_structure(sm2):
    y = sm2.y
    ext = build_extended_background(y)
    assert check_background(ext.background).passed
    assert ext.background.omega1.dim == 12
    assert ext.background.algebra.real_dim == 26
    # reference operator is regular for the extended bimodule
    assert is_compatible(ext.background, ext.d0)
    gen = one_forms_of(ext.background, ext.d0)
    assert gen.dim == 12
    # the extension breaks the commutation between the right action and the
    # 1-forms: scalar directions became 1-forms with nontrivial module action
    assert not check_order1(ext.background)


def test_extended_configuration_space(sm2):
    ext = build_extended_background(sm2.y)
    cfg = configuration_space(ext.background)
    assert cfg.dim == 6  # quaternion family plus one complex scalar
    sig = cfg.intersect(majorana_family(ext, +1))
    assert sig.dim == 2
    assert all(is_compatible(ext.background, d) for d in cfg.basis)


def test_extended_vertical_symmetries_keep_the_phases(sm2):
    from abw.background import automorphism_lie_algebra
    from abw.linalg import OperatorSubspace
    from abw.symmetry import generator_catalog

    ext = build_extended_background(sm2.y)
    vert = automorphism_lie_algebra(ext.background, vertical_only=True)
    cat = generator_catalog(sm2.N)
    span3 = OperatorSubspace.span(cat.vertical())
    assert vert.dim >= 3
    assert all(vert.contains(x) for x in span3.basis)
