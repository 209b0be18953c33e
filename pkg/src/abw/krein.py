"""Graded Krein spaces: indefinite products, antilinear structures, sign data.

A finite Krein space is C^dim with the indefinite product (psi, phi) =
psi^dagger @ eta @ phi for a fundamental symmetry eta (hermitian, eta^2 = 1).
On top of it live a chirality chi (a linear grading, chi^2 = 1) and a real
structure C (an antilinear map).  The five structural relations

    chi^2 = 1,   C * C = eps,   C chi = eps2 * chi C,
    C^x = kappa * C,   chi^x = eps2 * kappa2 * chi

hold with signs (eps, kappa, eps2, kappa2), and the sign quadruple encodes a
pair of mod-8 indices (mu, nu).  For the spinor data of a metric of signature
(p, q) one gets mu = -p-q and nu = q-p mod 8; the constant tables below were
calibrated against direct computation on the standard spinor modules and are
exercised for every supported signature in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    OperatorSubspace,
    as_matrix,
    frob,
    real_inner,
)

__all__ = [
    "AntilinearOp",
    "KOSignature",
    "GradedKreinSpace",
    "NotAGradedRealKreinSpace",
    "krein_adjoint",
    "krein_schmidt",
    "opposite",
    "detect_ko_signs",
    "is_compatible_fundamental_symmetry",
    "SIGN_OF_INDEX_METRIC",
    "SIGN_OF_INDEX_REAL",
]


class NotAGradedRealKreinSpace(ValueError):
    """The structural relations hold for no sign assignment."""


@dataclass(frozen=True)
class AntilinearOp:
    """An antilinear operator psi -> mat @ conj(psi)."""

    mat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mat", as_matrix(self.mat))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __call__(self, psi: np.ndarray) -> np.ndarray:
        return self.mat @ np.conj(psi)

    def compose(self, other) -> "np.ndarray | AntilinearOp":
        """Composition self o other; two antilinears give a linear matrix."""
        if isinstance(other, AntilinearOp):
            return self.mat @ np.conj(other.mat)
        return AntilinearOp(self.mat @ np.conj(as_matrix(other)))

    def after_linear(self, a: np.ndarray) -> "AntilinearOp":
        """self o (multiplication by a)."""
        return AntilinearOp(self.mat @ np.conj(as_matrix(a)))

    def before_linear(self, a: np.ndarray) -> "AntilinearOp":
        """(multiplication by a) o self."""
        return AntilinearOp(as_matrix(a) @ self.mat)

    def inv(self) -> "AntilinearOp":
        return AntilinearOp(np.conj(np.linalg.inv(self.mat)))

    def conjugate_linear(self, a: np.ndarray) -> np.ndarray:
        """self o a o self^{-1}, a linear operator."""
        return self.mat @ np.conj(as_matrix(a)) @ np.conj(self.inv().mat)

    def square(self) -> np.ndarray:
        return self.mat @ np.conj(self.mat)


def krein_adjoint(a: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """Adjoint for the indefinite product: a^x = eta a^dagger eta^{-1}."""
    a = as_matrix(a)
    eta = as_matrix(eta)
    if a.shape != eta.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {eta.shape}")
    return eta @ a.conj().T @ np.linalg.inv(eta)


def antilinear_krein_adjoint(c: AntilinearOp, eta: np.ndarray) -> AntilinearOp:
    """Adjoint of an antilinear operator, defined by (C^x phi, psi) = (C psi, phi)."""
    eta = as_matrix(eta)
    return AntilinearOp(np.linalg.inv(eta) @ c.mat.T @ np.conj(eta))


def krein_schmidt(a: np.ndarray, b: np.ndarray, eta: np.ndarray) -> complex:
    """The trace pairing Tr(a^x b) on operators."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.trace(krein_adjoint(a, eta) @ b))


# ---------------------------------------------------------------------------
# sign tables
# ---------------------------------------------------------------------------

# Row "kappa, eps": the signs attached to squares/adjoint of the real
# structure; row "kappa2, eps2": the signs attached to the chirality.
_ROW_ONE = {0: 1, 2: -1, 4: -1, 6: 1}
_ROW_TWO = {0: 1, 2: -1, 4: 1, 6: -1}

# eps and eps2 (the relations not involving the product) follow the index nu;
# kappa and kappa2 (the Krein adjoints) follow the index mu.
SIGN_OF_INDEX_REAL = {nu: (_ROW_ONE[nu], _ROW_TWO[nu]) for nu in (0, 2, 4, 6)}
SIGN_OF_INDEX_METRIC = {mu: (_ROW_ONE[mu], _ROW_TWO[mu]) for mu in (0, 2, 4, 6)}

_INDEX_OF_SIGNS = {(1, 1): 0, (-1, -1): 2, (-1, 1): 4, (1, -1): 6}


@dataclass(frozen=True)
class KOSignature:
    eps: int
    kappa: int
    eps2: int
    kappa2: int
    mu: int
    nu: int

    def pair(self) -> tuple[int, int]:
        return (self.mu, self.nu)

    def __post_init__(self):
        if (self.eps, self.eps2) != SIGN_OF_INDEX_REAL[self.nu]:
            raise NotAGradedRealKreinSpace(
                f"(eps, eps2) = {(self.eps, self.eps2)} inconsistent with nu = {self.nu}"
            )
        if (self.kappa, self.kappa2) != SIGN_OF_INDEX_METRIC[self.mu]:
            raise NotAGradedRealKreinSpace(
                f"(kappa, kappa2) = {(self.kappa, self.kappa2)} inconsistent with mu = {self.mu}"
            )


def signature_from_indices(mu: int, nu: int) -> KOSignature:
    mu, nu = mu % 8, nu % 8
    eps, eps2 = SIGN_OF_INDEX_REAL[nu]
    kappa, kappa2 = SIGN_OF_INDEX_METRIC[mu]
    return KOSignature(eps, kappa, eps2, kappa2, mu, nu)


def _sign_of(actual: np.ndarray, reference: np.ndarray, tol: float, what: str) -> int:
    """Return s = +-1 with actual ~ s * reference, or raise."""
    scale = max(frob(reference), 1.0)
    for s in (1, -1):
        if frob(actual - s * reference) <= tol * scale:
            return s
    raise NotAGradedRealKreinSpace(f"{what} is neither +1 nor -1 times its reference")


def detect_ko_signs(
    eta: np.ndarray, chi: np.ndarray, C: AntilinearOp, tol: float = DEFAULT_TOL
) -> KOSignature:
    """Read off the sign quadruple and the mod-8 index pair from the structures."""
    eta, chi = as_matrix(eta), as_matrix(chi)
    n = eta.shape[0]
    ident = np.eye(n)
    if frob(eta - eta.conj().T) > tol * max(frob(eta), 1.0):
        raise NotAGradedRealKreinSpace("eta is not hermitian")
    if frob(eta @ eta - ident) > tol * n:
        raise NotAGradedRealKreinSpace("eta does not square to the identity")
    if frob(chi @ chi - ident) > tol * n:
        raise NotAGradedRealKreinSpace("chi does not square to the identity")
    eps = _sign_of(C.square(), ident, tol, "C*C")
    eps2 = _sign_of(C.after_linear(chi).mat, C.before_linear(chi).mat, tol, "C chi vs chi C")
    kappa = _sign_of(antilinear_krein_adjoint(C, eta).mat, C.mat, tol, "C^x vs C")
    prod = _sign_of(krein_adjoint(chi, eta), chi, tol, "chi^x vs chi")
    kappa2 = eps2 * prod
    try:
        nu = _INDEX_OF_SIGNS[(eps, eps2)]
        mu = _INDEX_OF_SIGNS[(kappa, kappa2)]
    except KeyError:  # unreachable: every +-1 pair is in the table
        raise NotAGradedRealKreinSpace("sign quadruple matches no index pair")
    return KOSignature(eps, kappa, eps2, kappa2, mu, nu)


@dataclass(frozen=True)
class GradedKreinSpace:
    """A finite Krein space with chirality, real structure, and sign data."""

    eta: np.ndarray
    chi: np.ndarray
    C: AntilinearOp
    signs: KOSignature
    tol: float = DEFAULT_TOL

    @classmethod
    def build(
        cls, eta, chi, C: AntilinearOp, tol: float = DEFAULT_TOL
    ) -> "GradedKreinSpace":
        eta, chi = as_matrix(eta), as_matrix(chi)
        if isinstance(C, np.ndarray):
            C = AntilinearOp(C)
        signs = detect_ko_signs(eta, chi, C, tol)
        return cls(eta, chi, C, signs, tol)

    @property
    def dim(self) -> int:
        return self.eta.shape[0]

    @property
    def J(self) -> AntilinearOp:
        """The graded real structure chi o C."""
        return self.C.before_linear(self.chi)

    def adjoint(self, a: np.ndarray) -> np.ndarray:
        return krein_adjoint(a, self.eta)

    def parity(self, a: np.ndarray, tol: float | None = None) -> int | None:
        """0 for even, 1 for odd, None if not homogeneous."""
        a = as_matrix(a)
        t = self.tol if tol is None else tol
        scale = frob(a)
        if scale == 0.0:
            return 0
        conj = self.chi @ a @ self.chi
        if frob(conj - a) <= t * scale:
            return 0
        if frob(conj + a) <= t * scale:
            return 1
        return None


def opposite(a: np.ndarray, space: GradedKreinSpace) -> np.ndarray:
    """The opposite operator a^o = J a^x J^{-1}; a real-linear anti-automorphism."""
    a = as_matrix(a)
    if a.shape[0] != space.dim:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {space.dim}")
    j = space.J
    return j.conjugate_linear(space.adjoint(a))


def is_compatible_fundamental_symmetry(
    eta_new: np.ndarray, space: GradedKreinSpace, tol: float | None = None
) -> bool:
    """Whether eta_new intertwines chi and C with the signs fixed by the space.

    A fundamental symmetry may fail to have *any* commutation relation with
    the grading and real structure; compatible ones satisfy
    chi eta' = eps2*kappa2 eta' chi and C eta' = eps*kappa eta' C.
    """
    eta_new = as_matrix(eta_new)
    t = space.tol if tol is None else tol
    n = space.dim
    if eta_new.shape != (n, n):
        return False
    if frob(eta_new @ eta_new - np.eye(n)) > t * n:
        return False
    s = space.signs
    scale = max(frob(eta_new), 1.0)
    chi_rel = space.chi @ eta_new - s.eps2 * s.kappa2 * eta_new @ space.chi
    c_rel = space.C.after_linear(eta_new).mat - s.eps * s.kappa * space.C.before_linear(eta_new).mat
    return frob(chi_rel) <= t * scale and frob(c_rel) <= t * scale


def hermitian_definite(form: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Whether a matrix is hermitian with all eigenvalues of one sign."""
    form = as_matrix(form)
    scale = max(frob(form), 1.0)
    if frob(form - form.conj().T) > tol * scale:
        return False
    w = np.linalg.eigvalsh(form)
    return bool(w[0] > tol * scale or w[-1] < -tol * scale)


def spanned_with_products(mats, extra=(), tol: float = DEFAULT_TOL) -> OperatorSubspace:
    """Real span of the given matrices together with any in `extra`."""
    return OperatorSubspace.span(list(mats) + list(extra), tol=tol)


def projection_coefficients(space: OperatorSubspace, a: np.ndarray) -> np.ndarray:
    """Real coefficients of the projection of a onto the subspace basis."""
    return np.array([real_inner(b, a) for b in space.basis])
