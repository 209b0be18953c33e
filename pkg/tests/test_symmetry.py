import dataclasses

import numpy as np
import pytest
import scipy.linalg

from abw.background import automorphism_lie_algebra
from abw.clifford import PAULI
from abw.linalg import OperatorSubspace
from abw.sm import QUATERNION_UNITS, build_sm_background, random_yukawa
from abw.symmetry import (
    GELL_MANN,
    b_minus_l_element,
    bimodule_automorphism_report,
    flavour_blocks,
    flavour_complement_report,
    flavour_family,
    flavour_lie_algebra,
    flavour_matrix,
    gauge_transform,
    generator_catalog,
    majorana_family,
    odd_centralizer,
    stabilizer_lie_algebra,
    standard_elements,
    vertical_symmetry_report,
)


def doubled_conjugation_oracle(n_gen, theta, q, m3):
    """Closed block form of the doubled conjugation: diag(A, B, conj A, conj B)
    with A carrying the squared phase on leptons and the phase-conjugate
    colour action on quarks, and B the quaternion with matching phases."""
    from abw.sm import _tilde, _sector_dim

    lam = np.exp(1j * theta)
    a = np.zeros((_sector_dim(n_gen),) * 2, dtype=complex)
    lep = np.diag([1.0, lam ** -2])
    a[: 2 * n_gen, : 2 * n_gen] = np.kron(lep, np.eye(n_gen))
    quark = np.kron(np.diag([lam, np.conj(lam)]), np.conj(m3))
    a[2 * n_gen:, 2 * n_gen:] = np.kron(quark, np.eye(n_gen))
    b = np.zeros_like(a)
    b[: 2 * n_gen, : 2 * n_gen] = np.kron(np.conj(lam) * q, np.eye(n_gen))
    b[2 * n_gen:, 2 * n_gen:] = np.kron(np.kron(q, np.conj(m3)), np.eye(n_gen))
    out = np.zeros((4 * a.shape[0],) * 2, dtype=complex)
    k = a.shape[0]
    for i, blk in enumerate((a, b, np.conj(a), np.conj(b))):
        out[i * k: (i + 1) * k, i * k: (i + 1) * k] = blk
    return out


def random_unitaries(rng):
    lam = np.exp(1j * rng.standard_normal())
    q = scipy.linalg.expm(1j * sum(rng.standard_normal() * s for s in PAULI))
    h = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    m3 = scipy.linalg.expm((h - h.conj().T) / 2)
    return lam, q, m3


def test_doubled_conjugation_identity_and_kernel(sm1):
    assert np.allclose(
        gauge_transform(sm1, 1.0, QUATERNION_UNITS["1"], np.eye(3)), np.eye(32)
    )
    assert np.allclose(
        gauge_transform(sm1, -1.0, -QUATERNION_UNITS["1"], -np.eye(3)), np.eye(32)
    )


def test_doubled_conjugation_matches_block_oracle(sm2, rng):
    for _ in range(3):
        lam, q, m3 = random_unitaries(rng)
        theta = float(np.angle(lam))
        got = gauge_transform(sm2, lam, q, m3)
        want = doubled_conjugation_oracle(2, theta, q, m3)
        assert np.linalg.norm(got - want) < 1e-9


def test_doubled_conjugation_is_a_homomorphism(sm1, rng):
    for _ in range(3):
        l1, q1, m1 = random_unitaries(rng)
        l2, q2, m2 = random_unitaries(rng)
        lhs = gauge_transform(sm1, l1, q1, m1) @ gauge_transform(sm1, l2, q2, m2)
        rhs = gauge_transform(sm1, l1 * l2, q1 @ q2, m1 @ m2)
        assert np.linalg.norm(lhs - rhs) < 1e-9


def test_rejects_non_unitary_arguments(sm1):
    with pytest.raises(ValueError):
        gauge_transform(sm1, 2.0, QUATERNION_UNITS["1"], np.eye(3))
    with pytest.raises(ValueError):
        gauge_transform(sm1, 1.0, 2.0 * QUATERNION_UNITS["1"], np.eye(3))


def test_standard_elements_at_trivial_parameters(sm1):
    els = standard_elements(sm1)
    for name, mat in els.items():
        assert np.allclose(mat, np.eye(32)), name


def test_hypercharge_element_closed_form(sm2):
    theta = 0.83
    got = standard_elements(sm2, theta=theta)["hypercharge"]
    want = doubled_conjugation_oracle(
        2, theta, QUATERNION_UNITS["1"], np.exp(-1j * theta / 3) * np.eye(3)
    )
    assert np.linalg.norm(got - want) < 1e-9


def test_one_parameter_derivatives_hit_the_catalog(sm1):
    cat = generator_catalog(1)
    eps = 1e-6
    pairs = [
        (standard_elements(sm1, theta=eps)["hypercharge"], cat.hypercharge),
        (standard_elements(sm1, xi=eps)["x"], cat.x),
        (standard_elements(sm1, phi=eps)["b_minus_l"], cat.b_minus_l),
    ]
    for a in range(3):
        q = scipy.linalg.expm(1j * eps * PAULI[a])
        pairs.append((standard_elements(sm1, q=q)["weak"], cat.weak[a]))
    for bidx in range(8):
        g = scipy.linalg.expm(-1j * eps * GELL_MANN[bidx])
        pairs.append((standard_elements(sm1, g=g)["colour"], cat.colour[bidx]))
    for element, generator in pairs:
        fd = (element - np.eye(32)) / eps
        assert np.linalg.norm(fd - generator) < 1e-6 * max(np.linalg.norm(generator), 1.0)


def test_catalog_structural_properties(sm2):
    from abw.krein import krein_adjoint

    cat = generator_catalog(2)
    b = sm2.background
    span_a = b.algebra_span()
    jm = b.space.J.mat
    for x in cat.all():
        assert np.linalg.norm(krein_adjoint(x, b.space.eta) + x) < 1e-12
        assert np.linalg.norm(b.space.chi @ x - x @ b.space.chi) < 1e-12
        assert np.linalg.norm(jm @ np.conj(x) - x @ jm) < 1e-12
        for g in b.rep_matrices():
            assert span_a.contains(x @ g - g @ x)


@pytest.mark.parametrize("n", [1, 2])
def test_solver_dimensions(n):
    model = build_sm_background(random_yukawa(n, seed=7))
    assert odd_centralizer(model).dim == 2 * n * n
    assert flavour_lie_algebra(model).dim == 6 * n * n
    assert stabilizer_lie_algebra(model).dim == 13 + 6 * n * n - 2


def test_flavour_solver_matches_block_family(sm2):
    solved = flavour_lie_algebra(sm2)
    direct = flavour_family(2)
    assert solved.dim == direct.dim == 24
    assert all(solved.contains(x) for x in direct.basis)


def test_odd_centralizer_splits_into_coupling_classes(sm2):
    oc = odd_centralizer(sm2)
    plus, minus = majorana_family(sm2, +1), majorana_family(sm2, -1)
    assert plus.dim + minus.dim == oc.dim == 8
    assert all(oc.contains(x) for x in plus.basis)
    assert all(oc.contains(x) for x in minus.basis)


def test_odd_centralizer_has_no_invertible_element(sm2, rng):
    oc = odd_centralizer(sm2)
    for _ in range(5):
        x = np.tensordot(rng.standard_normal(oc.dim), oc.basis, axes=1)
        svals = np.linalg.svd(x, compute_uv=False)
        assert svals[-1] < 1e-12 * max(svals[0], 1.0)


def test_stabilizer_is_gauge_plus_flavour(sm2):
    stab = stabilizer_lie_algebra(sm2)
    flav = flavour_lie_algebra(sm2)
    cat = generator_catalog(2)
    gauge = OperatorSubspace.span(cat.gauge())
    assert gauge.dim == 13
    assert all(stab.contains(x) for x in gauge.basis)
    assert all(stab.contains(x) for x in flav.basis)
    inter = gauge.intersect(flav)
    assert inter.dim == 2
    assert inter.contains(cat.hypercharge) and inter.contains(cat.x)
    assert stab.dim == gauge.dim + flav.dim - inter.dim


def test_stabilizer_closes_under_brackets(sm1):
    stab = stabilizer_lie_algebra(sm1)
    for i in range(0, stab.dim, 5):
        for j in range(0, stab.dim, 7):
            br = stab.basis[i] @ stab.basis[j] - stab.basis[j] @ stab.basis[i]
            assert stab.contains(br)


def test_flavour_blocks_roundtrip(rng):
    hs = [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(6)]
    x = flavour_matrix(2, *hs)
    back = flavour_blocks(2, x)
    for name, h in zip(("nu", "e", "u", "d", "l", "q"), hs):
        assert np.allclose(back[name], h)


def test_flavour_complement(sm2):
    rep = flavour_complement_report(sm2)
    assert rep["passed"]
    assert rep["complement_dim"] == 6 * 4 - 3
    assert rep["max_trace_residual"] < 1e-9
    assert rep["max_bracket_residual"] < 1e-9
    assert rep["phase_system_det"] > 1e-9
    # complement is orthogonal to the three vertical phases
    cat = generator_catalog(2)
    comp = rep["complement"]
    for v in (cat.hypercharge, cat.x, cat.b_minus_l):
        coefs = [abs(np.vdot(b, v).real) for b in comp.basis]
        assert max(coefs) < 1e-9 * np.linalg.norm(v)


@pytest.mark.parametrize(
    "alpha,beta,product_ok,involution_ok",
    [
        (1.0, 1.0, True, True),
        (np.exp(0.9j), np.exp(-0.9j), True, True),
        (np.exp(0.9j), np.exp(0.4j), True, False),
        (2.0, 1.0, False, False),
        (2.0, 0.5, False, False),
    ],
)
def test_bimodule_rescaling_map(sm1, alpha, beta, product_ok, involution_ok):
    rep = bimodule_automorphism_report(sm1, alpha, beta)
    assert rep["bimodule_ok"]
    assert rep["product_preserved"] == product_ok == rep["product_expected"]
    assert rep["involution_preserved"] == involution_ok == rep["involution_expected"]


def test_vertical_symmetry_generic_and_degenerate():
    model = build_sm_background(random_yukawa(2, seed=7))
    rep = vertical_symmetry_report(model)
    assert rep["generic"] and rep["passed"] and rep["vertical_dim"] == 3

    y = random_yukawa(2, seed=7)
    degenerate = build_sm_background(dataclasses.replace(y, Y_e=y.Y_nu.copy()))
    rep = vertical_symmetry_report(degenerate)
    assert not rep["generic"]
    assert rep["vertical_dim"] > 3 and rep["passed"]


def test_full_symmetry_algebra_is_gauge_plus_one_phase(sm2):
    aut = automorphism_lie_algebra(sm2.background)
    cat = generator_catalog(2)
    span14 = OperatorSubspace.span(cat.all())
    assert aut.dim == span14.dim == 14
    assert all(aut.contains(x) for x in span14.basis)
    assert all(span14.contains(x) for x in aut.basis)


def test_centralizing_fields_are_gauge_invariant(sm2, rng):
    flav = flavour_lie_algebra(sm2)
    oc = odd_centralizer(sm2)
    for _ in range(3):
        lam, q, m3 = random_unitaries(rng)
        g = gauge_transform(sm2, lam, q, m3)
        ginv = np.linalg.inv(g)
        for x in list(flav.basis[:3]) + list(oc.basis[:3]):
            assert np.linalg.norm(g @ x @ ginv - x) < 1e-9 * max(np.linalg.norm(x), 1.0)


def test_b_minus_l_charges():
    el = b_minus_l_element(1, np.pi / 2)
    # leptons pick up -i, quarks e^{i pi/6}
    assert np.isclose(el[0, 0], np.exp(-1j * np.pi / 2))
    assert np.isclose(el[2, 2], np.exp(1j * np.pi / 6))


def test_hypercharge_is_doubled_conjugation_of_its_phases(sm1):
    theta = 0.37
    lhs = standard_elements(sm1, theta=theta)["hypercharge"]
    rhs = gauge_transform(sm1, np.exp(1j * theta), QUATERNION_UNITS["1"],
                          np.exp(-1j * theta / 3) * np.eye(3))
    assert np.allclose(lhs, rhs)
