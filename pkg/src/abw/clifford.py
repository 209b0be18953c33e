"""Irreducible Clifford data for even signatures.

For a metric of signature (p, q) with p + q = n even, the module consists of
gamma matrices of size 2^(n/2) with

    gamma_a gamma_b + gamma_b gamma_a = 2 g_ab,  g = diag(+1 x p, -1 x q),

a spinor metric H0 making every gamma_a selfadjoint, the chirality element
chi0 = i^(n/2+q) gamma_1 ... gamma_n, and an antilinear real structure C0
commuting with every gamma_a.

The (1, 3) and (2, 0) modules are pinned entry-by-entry to the standard
chiral conventions; every other signature uses a deterministic tensor
doubling of the two-dimensional base, with spacelike generators obtained by
multiplying Euclidean ones by i, so all entries stay in {0, +-1, +-i} and the
anticommutation relations hold exactly in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .krein import (
    AntilinearOp,
    GradedKreinSpace,
    hermitian_definite,
    krein_adjoint,
)
from .linalg import DEFAULT_TOL, OperatorSubspace, SignRule, as_matrix, frob, solve_matrix_subspace

__all__ = [
    "CliffordModule",
    "UnsupportedSignature",
    "build_clifford",
    "fiber_background",
    "is_spin_group_element",
    "time_orientation_form",
    "PAULI",
]


class UnsupportedSignature(ValueError):
    pass


PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class CliffordModule:
    p: int
    q: int
    gammas: tuple
    space: GradedKreinSpace
    vector_span: OperatorSubspace

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def spinor_dim(self) -> int:
        return self.gammas[0].shape[0]

    @property
    def metric_signs(self) -> tuple:
        return tuple([1] * self.p + [-1] * self.q)

    @property
    def H0(self) -> np.ndarray:
        return self.space.eta

    @property
    def chi0(self) -> np.ndarray:
        return self.space.chi

    @property
    def C0(self) -> AntilinearOp:
        return self.space.C


def _euclidean_generators(n: int) -> list:
    """Hermitian anticommuting squares-to-one generators, by tensor doubling."""
    gens = [PAULI[0], PAULI[1]]
    while len(gens) < n:
        gens = [np.kron(PAULI[0], g) for g in gens] + [
            np.kron(PAULI[1], np.eye(gens[0].shape[0], dtype=complex)),
            np.kron(PAULI[2], np.eye(gens[0].shape[0], dtype=complex)),
        ]
    return gens[:n]


def _phase_fix(m: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate a matrix by a phase so its first sizeable entry is positive real."""
    flat = m.ravel()
    scale = np.abs(flat).max()
    idx = int(np.argmax(np.abs(flat) > 0.5 * scale))
    z = flat[idx]
    return m * (np.abs(z) / z)


def _solve_real_structure(gammas, tol: float) -> np.ndarray:
    """Antilinear intertwiner commuting with every gamma, as its matrix part.

    C gamma_a = gamma_a C for antilinear C with matrix M reads
    M conj(gamma_a) = gamma_a M, a complex-linear condition on M with a
    one-dimensional solution space by irreducibility.
    """
    k = gammas[0].shape[0]
    blocks = []
    ident = np.eye(k, dtype=complex)
    for g in gammas:
        blocks.append(np.kron(g, ident) - np.kron(ident, np.conj(g).T))
    m = np.concatenate(blocks, axis=0)
    ns = scipy.linalg.null_space(m, rcond=tol)
    if ns.shape[1] != 1:
        raise UnsupportedSignature(
            f"real-structure solution space has dimension {ns.shape[1]}, expected 1"
        )
    c = ns[:, 0].reshape(k, k)
    square = c @ np.conj(c)
    scalar = np.trace(square) / k
    if frob(square - scalar * np.eye(k)) > tol * k or abs(scalar) < tol:
        raise UnsupportedSignature("real structure does not square to a scalar")
    c = c / np.sqrt(abs(scalar))
    return _phase_fix(c)


def _spinor_metric(gammas, p: int, q: int) -> np.ndarray:
    """Product of timelike (p odd) or spacelike (p even) generators, phased."""
    k = gammas[0].shape[0]
    if p % 2 == 1:
        factors = gammas[:p]
        phase = 1j ** ((p - 1) // 2)
    else:
        factors = gammas[p:]
        phase = 1j ** (q // 2)
    h = phase * np.eye(k, dtype=complex)
    for g in factors:
        h = h @ g
    # the product is hermitian or antihermitian; rotate to hermitian
    if frob(h - h.conj().T) > 1e-9 * k:
        h = 1j * h
    # only a sign is free once hermitian; fix it deterministically
    flat = h.ravel()
    idx = int(np.argmax(np.abs(flat) > 0.5 * np.abs(flat).max()))
    z = flat[idx]
    pick = z.real if abs(z.real) >= abs(z.imag) else z.imag
    return h if pick > 0 else -h


def build_clifford(p: int, q: int, tol: float = DEFAULT_TOL) -> CliffordModule:
    """Standard spinor module for signature (p, q), p + q even and >= 2."""
    n = p + q
    if n % 2 != 0:
        raise UnsupportedSignature(f"odd total dimension {n}")
    if n < 2:
        raise UnsupportedSignature("need at least two generators")
    if (p, q) == (1, 1):
        raise UnsupportedSignature("(1, 1) is the exceptional split signature")

    if (p, q) == (1, 3):
        # chiral basis: gamma_0 off-diagonal identity, spatial gammas built
        # from the Pauli matrices, H0 equal to gamma_0
        gamma0 = np.block([[np.zeros((2, 2)), _I2], [_I2, np.zeros((2, 2))]])
        gammas = [gamma0] + [
            np.block([[np.zeros((2, 2)), PAULI[k]], [-PAULI[k], np.zeros((2, 2))]])
            for k in range(3)
        ]
        gammas = [g.astype(complex) for g in gammas]
        h0 = gammas[0].copy()
        chi0 = np.diag([-1, -1, 1, 1]).astype(complex)
        c0 = chi0 @ gammas[2]
    elif (p, q) == (2, 0):
        gammas = [PAULI[0].copy(), np.array([[0, 1j], [-1j, 0]], dtype=complex)]
        h0 = np.eye(2, dtype=complex)
        chi0 = PAULI[2].copy()
        c0 = gammas[0].copy()
    else:
        eu = _euclidean_generators(n)
        gammas = [eu[a] if a < p else 1j * eu[a] for a in range(n)]
        h0 = _spinor_metric(gammas, p, q)
        chi0 = (1j ** (n // 2 + q)) * np.eye(gammas[0].shape[0], dtype=complex)
        for g in gammas:
            chi0 = chi0 @ g
        c0 = _solve_real_structure(gammas, tol)

    k = gammas[0].shape[0]
    signs = [1] * p + [-1] * q
    for a, ga in enumerate(gammas):
        for b, gb in enumerate(gammas):
            want = 2.0 * (signs[a] if a == b else 0.0) * np.eye(k)
            if frob(ga @ gb + gb @ ga - want) > tol * k:
                raise UnsupportedSignature(f"anticommutation fails at ({a}, {b})")
        if frob(krein_adjoint(ga, h0) - ga) > tol * k:
            raise UnsupportedSignature(f"gamma_{a} is not selfadjoint for the spinor metric")
    space = GradedKreinSpace.build(h0, chi0, AntilinearOp(c0), tol)
    v0 = OperatorSubspace.span(gammas, tol=tol)
    return CliffordModule(p, q, tuple(gammas), space, v0)


def fiber_background(module: CliffordModule):
    """The background of a constant spinor fiber: scalars acting on spinors,
    with the 1-forms given by i times the vector span."""
    from .background import AlgebraSpec, AlgebraicBackground

    algebra = AlgebraSpec(summands=(("R", 1),), generators=("one",))
    rep = {"one": np.eye(module.spinor_dim, dtype=complex)}
    omega = OperatorSubspace.span(
        [1j * g for g in module.gammas], tol=module.space.tol
    )
    return AlgebraicBackground(module.space, algebra, rep, omega)


def is_spin_group_element(u: np.ndarray, module: CliffordModule, tol: float | None = None) -> bool:
    """Whether u preserves the complexified vector span, the grading, the real
    structure, and is Krein-unitary up to sign."""
    u = as_matrix(u)
    t = module.space.tol if tol is None else tol
    k = module.spinor_dim
    if u.shape != (k, k):
        return False
    if abs(np.linalg.det(u)) < t:
        return False
    scale = max(frob(u), 1.0)
    complex_span = OperatorSubspace.span(
        list(module.gammas) + [1j * g for g in module.gammas], tol=t
    )
    uinv = np.linalg.inv(u)
    if not all(complex_span.contains(u @ g @ uinv, t) for g in module.gammas):
        return False
    if frob(u @ module.chi0 - module.chi0 @ u) > t * scale:
        return False
    uux = u @ krein_adjoint(u, module.H0)
    s = np.trace(uux) / k
    if abs(abs(s) - 1.0) > 10 * t or abs(s.imag) > 10 * t:
        return False
    if frob(uux - s.real * np.eye(k)) > t * scale**2:
        return False
    cm = module.C0.mat
    return frob(u @ cm - cm @ np.conj(u)) <= t * scale * max(frob(cm), 1.0)


def time_orientation_form(background, samples: int = 512, seed: int = 0):
    """Search the 1-form bimodule for a time-orientation witness.

    Wanted: beta, proportional to an element of the bimodule by a complex
    phase, that is Krein selfadjoint, real for C, and such that the hermitian
    form eta @ beta^{-1} is definite.  Returns the witness or None; absence
    is a meaningful answer (Euclidean-type backgrounds have none).
    """
    space = background.space
    omega = background.omega1
    if omega.dim == 0:
        return None
    n = space.dim
    # the witness may sit at a complex phase off the real span
    seed_mats = list(omega.basis) + [1j * b for b in omega.basis]
    ambient = OperatorSubspace.span(seed_mats, tol=space.tol)
    rules = [
        SignRule(space.eta, space.eta, 1, conj=True, transpose=True),
        SignRule(space.C.mat, space.C.mat, 1, conj=True),
    ]
    candidates = solve_matrix_subspace(n, rules, (), tol=space.tol, initial=ambient.basis)
    if candidates.dim == 0:
        return None
    rng = np.random.default_rng(seed)
    trial_coeffs = [row for row in np.eye(candidates.dim)]
    trial_coeffs += [-row for row in np.eye(candidates.dim)]
    trial_coeffs += list(rng.standard_normal((samples, candidates.dim)))
    for c in trial_coeffs:
        beta = np.tensordot(c, candidates.basis, axes=1)
        if np.linalg.cond(beta) > 1e8:
            continue
        form = space.eta @ np.linalg.inv(beta)
        if hermitian_definite(form, space.tol):
            return beta
    return None
