import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from abw.linalg import (
    CommutatorRule,
    IncrementalSpan,
    OperatorSubspace,
    SignRule,
    nullspace_rows,
    solve_matrix_subspace,
)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_real_span_of_identity_and_i_identity():
    ident = np.eye(3)
    assert OperatorSubspace.span([ident, 2 * ident]).dim == 1
    assert OperatorSubspace.span([ident, 1j * ident]).dim == 2


def test_span_is_idempotent(rng):
    mats = [random_complex(rng, (4, 4)) for _ in range(6)]
    s = OperatorSubspace.span(mats)
    again = OperatorSubspace.span(list(s.basis))
    assert again.dim == s.dim


def test_span_drops_real_linear_dependencies(rng):
    a, b = random_complex(rng, (3, 3)), random_complex(rng, (3, 3))
    s = OperatorSubspace.span([a, b, 0.3 * a - 1.7 * b])
    assert s.dim == 2


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000))
def test_contains_invariant_under_rebasing(seed):
    rng = np.random.default_rng(seed)
    mats = [random_complex(rng, (3, 3)) for _ in range(3)]
    s = OperatorSubspace.span(mats)
    recomb = rng.standard_normal((3, 3))
    while abs(np.linalg.det(recomb)) < 1e-3:
        recomb = rng.standard_normal((3, 3))
    rebased = OperatorSubspace.span(
        [sum(recomb[i, j] * mats[j] for j in range(3)) for i in range(3)]
    )
    probe = sum(rng.standard_normal() * m for m in mats)
    outside = probe + 10.0 * 1j * np.eye(3) if not s.contains(1j * np.eye(3)) else probe
    assert s.contains(probe) == rebased.contains(probe)
    assert s.contains(outside) == rebased.contains(outside)


def test_intersection_and_complement(rng):
    e = [np.zeros((3, 3)) for _ in range(4)]
    for k in range(4):
        e[k] = np.zeros((3, 3), dtype=complex)
    e[0][0, 0] = 1
    e[1][1, 1] = 1
    e[2][2, 2] = 1
    e[3][0, 1] = 1
    s = OperatorSubspace.span([e[0], e[1]])
    t = OperatorSubspace.span([e[1], e[2]])
    inter = s.intersect(t)
    assert inter.dim == 1
    assert inter.contains(e[1])
    comp = s.ortho_complement_in(OperatorSubspace.span(e))
    assert comp.dim == 2
    assert comp.contains(e[2]) and comp.contains(e[3])
    assert not comp.contains(e[0])


def test_zero_subspace_edge_cases():
    z = OperatorSubspace.zero(3)
    assert z.dim == 0
    assert z.contains(np.zeros((3, 3)))
    assert not z.contains(np.eye(3))
    s = OperatorSubspace.span([np.eye(3)])
    assert z.intersect(s).dim == 0
    assert z.ortho_complement_in(s).dim == 1


def test_incremental_span_matches_svd_span(rng):
    mats = [random_complex(rng, (4, 4)) for _ in range(5)]
    mats.append(mats[0] + 2 * mats[1])
    inc = IncrementalSpan(4)
    inc.add_all(mats)
    assert inc.dim == OperatorSubspace.span(mats).dim == 5


def test_nullspace_detects_noise_as_zero(rng):
    rows = 1e-15 * rng.standard_normal((5, 40))
    combos = nullspace_rows(rows, 1e-9)
    assert combos.shape[1] == 5


def test_sign_rule_solver_matches_manual_projector(rng):
    # eigenspace of conjugation by a diagonal sign matrix
    chi = np.diag([1.0, 1.0, -1.0]).astype(complex)
    even = solve_matrix_subspace(3, [SignRule(chi, chi, 1)], ())
    odd = solve_matrix_subspace(3, [SignRule(chi, chi, -1)], ())
    assert even.dim == 10  # 2x2 and 1x1 diagonal blocks, complex
    assert odd.dim == 8
    a = random_complex(rng, (3, 3))
    assert even.contains((a + chi @ a @ chi) / 2)
    assert odd.contains((a - chi @ a @ chi) / 2)


def test_commutator_rule_with_target(rng):
    # [A, E01] = 0 has the known solution space; with a target it grows
    g = np.zeros((2, 2), dtype=complex)
    g[0, 1] = 1.0
    strict = solve_matrix_subspace(2, (), [CommutatorRule(g, None)])
    assert strict.dim == 4  # span{1, E01} over C
    target = OperatorSubspace.span([g, 1j * g])
    loose = solve_matrix_subspace(2, (), [CommutatorRule(g, target)])
    assert loose.dim == 6  # adds the diagonal-difference directions


def test_monomial_and_dense_paths_agree(rng):
    # same constraints through the orbit path and through a non-monomial
    # unitary change of basis must give equal dimensions
    n = 6
    chi = np.diag([1, 1, 1, -1, -1, -1]).astype(complex)
    eta = np.diag([1, -1, 1, -1, 1, -1]).astype(complex)
    rules = [SignRule(chi, chi, 1), SignRule(eta, eta, -1, conj=True, transpose=True)]
    base = solve_matrix_subspace(n, rules, ())
    h = random_complex(rng, (n, n))
    u = np.linalg.qr(h)[0]
    rules_u = [
        SignRule(u @ chi @ u.conj().T, u @ chi @ u.conj().T, 1),
        SignRule(u @ eta @ u.conj().T, u @ eta @ u.conj().T, -1, conj=True, transpose=True),
    ]
    moved = solve_matrix_subspace(n, rules_u, ())
    assert moved.dim == base.dim
    for b in base.basis:
        assert moved.contains(u @ b @ u.conj().T)
