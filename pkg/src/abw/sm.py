"""The Standard-Model finite background.

The Krein space is C^(32N): four sectors (right, left, anti-right,
anti-left), each holding a lepton isospin doublet and a quark isospin
doublet in three colours, times N generations.  Basis ordering, fixed once
and used by the serializer as well: sectors in order (R, L, Rbar, Lbar);
inside a sector the lepton block (nu then e) comes first, then the quark
block with isospin outermost, colour next, generation innermost.

The algebra C + H + M3(C) acts by `sm_rep_element`; the indefinite product,
grading and real structure are the standard ones, with two free signs: `s`
(relative sign of the antiparticle sectors in the metric) and `eps_F` (the
sign in the real structure, J^2 = eps_F).  The Yukawa matrices enter only
through the 1-form bimodule and the admissible Dirac family

    D(q, m) = Phi(q) + Phi(q)^o + sigma(m),

where q is a quaternion and the scalar block sigma(m) couples only
right-handed-neutrino generations, with the symmetry class m^T = s*eps_F*m
forced by commutation with the real structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .background import AlgebraSpec, AlgebraicBackground, one_forms_of
from .krein import AntilinearOp, GradedKreinSpace, opposite
from .linalg import DEFAULT_TOL, OperatorSubspace, as_matrix, frob

__all__ = [
    "YukawaData",
    "SMModel",
    "quaternion",
    "QUATERNION_UNITS",
    "random_yukawa",
    "build_sm_background",
    "build_extended_background",
    "dirac_qm",
    "sigma_block",
    "phi_block",
    "is_generic",
    "complex_commutant_dim",
    "sm_rep_element",
    "basis_labels",
]


# ---------------------------------------------------------------------------
# quaternions as 2x2 complex matrices
# ---------------------------------------------------------------------------


def quaternion(alpha: complex, beta: complex) -> np.ndarray:
    """The quaternion alpha + beta j in its 2x2 complex representation."""
    return np.array([[alpha, -np.conj(beta)], [beta, np.conj(alpha)]], dtype=complex)


QUATERNION_UNITS = {
    "1": quaternion(1, 0),
    "i": quaternion(1j, 0),
    "j": quaternion(0, 1),
    "k": quaternion(0, 1j),
}


def _as_quaternion(q) -> np.ndarray:
    if np.isscalar(q):
        return quaternion(complex(q), 0) if np.isreal(q) else _bad_quat(q)
    q = as_matrix(q)
    if q.shape != (2, 2):
        raise ValueError("a quaternion is a 2x2 complex matrix here")
    if frob(q - quaternion(q[0, 0], q[1, 0])) > 1e-12 * max(frob(q), 1.0):
        raise ValueError("matrix is not of quaternion form [[a, -conj(b)], [b, conj(a)]]")
    return q


def _bad_quat(q):
    raise ValueError(f"scalar quaternions must be real, got {q!r}")


def q_lambda(lam: complex) -> np.ndarray:
    """The embedding of a complex number into the quaternions, diag(lam, conj(lam))."""
    return np.array([[lam, 0], [0, np.conj(lam)]], dtype=complex)


# ---------------------------------------------------------------------------
# Yukawa data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class YukawaData:
    N: int
    Y_nu: np.ndarray
    Y_e: np.ndarray
    Y_u: np.ndarray
    Y_d: np.ndarray
    Y_R: np.ndarray
    s: int
    eps_F: int

    def __post_init__(self):
        if self.s not in (1, -1) or self.eps_F not in (1, -1):
            raise ValueError("s and eps_F must be +1 or -1")
        for name in ("Y_nu", "Y_e", "Y_u", "Y_d", "Y_R"):
            m = as_matrix(getattr(self, name))
            if m.shape != (self.N, self.N):
                raise ValueError(f"{name} must be {self.N} x {self.N}")
            object.__setattr__(self, name, m)
        cls_sign = self.s * self.eps_F
        if frob(self.Y_R.T - cls_sign * self.Y_R) > 1e-9 * max(frob(self.Y_R), 1.0):
            kind = "symmetric" if cls_sign == 1 else "antisymmetric"
            raise ValueError(f"Y_R must be {kind} for s*eps_F = {cls_sign}")

    @property
    def M_nu(self):
        return self.Y_nu @ self.Y_nu.conj().T

    @property
    def M_e(self):
        return self.Y_e @ self.Y_e.conj().T

    @property
    def M_u(self):
        return self.Y_u @ self.Y_u.conj().T

    @property
    def M_d(self):
        return self.Y_d @ self.Y_d.conj().T

    @property
    def M_R(self):
        return self.Y_R @ self.Y_R.conj().T


def random_yukawa(n_gen: int, seed: int, s: int = -1, eps_F: int = -1) -> YukawaData:
    """Seeded complex-normal Yukawas; Y_R is projected onto its symmetry class
    and rescaled to unit Frobenius norm (when nonzero)."""
    rng = np.random.default_rng(seed)

    def cnormal():
        return (rng.standard_normal((n_gen, n_gen)) + 1j * rng.standard_normal((n_gen, n_gen))) / np.sqrt(2)

    def unit(m):
        nm = frob(m)
        return m / nm if nm > 0 else m

    ys = [unit(cnormal()) for _ in range(4)]
    g = cnormal()
    y_r = unit((g + s * eps_F * g.T) / 2)
    return YukawaData(n_gen, ys[0], ys[1], ys[2], ys[3], y_r, s, eps_F)


# ---------------------------------------------------------------------------
# block assembly
# ---------------------------------------------------------------------------


def _sector_dim(n_gen: int) -> int:
    return 8 * n_gen


def _tilde(a2: np.ndarray, n_gen: int) -> np.ndarray:
    """(A + A x 1_3) x 1_N on one sector: A on lepton isospin, A x colour x gen."""
    lep = np.kron(a2, np.eye(n_gen))
    quark = np.kron(a2, np.eye(3 * n_gen))
    out = np.zeros((8 * n_gen, 8 * n_gen), dtype=complex)
    out[: 2 * n_gen, : 2 * n_gen] = lep
    out[2 * n_gen:, 2 * n_gen:] = quark
    return out


def _colour_block(lam: complex, m3: np.ndarray, n_gen: int) -> np.ndarray:
    """lam on leptons, 1_2 x m x 1_N on quarks (one sector)."""
    out = np.zeros((8 * n_gen, 8 * n_gen), dtype=complex)
    out[: 2 * n_gen, : 2 * n_gen] = lam * np.eye(2 * n_gen)
    out[2 * n_gen:, 2 * n_gen:] = np.kron(np.eye(2), np.kron(as_matrix(m3), np.eye(n_gen)))
    return out


def _four_sectors(r, l, rbar, lbar) -> np.ndarray:
    k = r.shape[0]
    out = np.zeros((4 * k, 4 * k), dtype=complex)
    for i, blk in enumerate((r, l, rbar, lbar)):
        out[i * k: (i + 1) * k, i * k: (i + 1) * k] = blk
    return out


def sm_rep_element(n_gen: int, lam: complex, q, m3) -> np.ndarray:
    """The represented algebra element (lam, q, m): diag(q_lam~, q~, lam+m, lam+m)."""
    q = as_matrix(q)
    m3 = as_matrix(m3)
    anti = _colour_block(lam, m3, n_gen)
    return _four_sectors(_tilde(q_lambda(lam), n_gen), _tilde(q, n_gen), anti, anti)


def extended_rep_element(n_gen: int, lam: complex, mu: complex, q, m3) -> np.ndarray:
    """Extended algebra C + C + H + M3(C): the second complex factor replaces
    lam on the antiparticle lepton blocks."""
    q = as_matrix(q)
    m3 = as_matrix(m3)
    anti = _colour_block(mu, m3, n_gen)
    return _four_sectors(_tilde(q_lambda(lam), n_gen), _tilde(q, n_gen), anti, anti)


def eta_matrix(n_gen: int, s: int) -> np.ndarray:
    k = _sector_dim(n_gen)
    signs = np.concatenate([
        np.ones(k), -np.ones(k), s * np.ones(k), -s * np.ones(k)
    ])
    return np.diag(signs).astype(complex)


def chi_matrix(n_gen: int) -> np.ndarray:
    k = _sector_dim(n_gen)
    signs = np.concatenate([np.ones(k), -np.ones(k), -np.ones(k), np.ones(k)])
    return np.diag(signs).astype(complex)


def j_matrix(n_gen: int, eps_F: int) -> np.ndarray:
    """Matrix part of the antilinear swap of particle and antiparticle sectors."""
    k = _sector_dim(n_gen)
    out = np.zeros((4 * k, 4 * k), dtype=complex)
    ident = np.eye(k)
    out[:k, 2 * k: 3 * k] = eps_F * ident
    out[k: 2 * k, 3 * k:] = eps_F * ident
    out[2 * k: 3 * k, :k] = ident
    out[3 * k:, k: 2 * k] = ident
    return out


def yukawa_block(y: YukawaData) -> np.ndarray:
    """Y0: the per-sector Yukawa coupling, diagonal in isospin and colour."""
    n = y.N
    out = np.zeros((8 * n, 8 * n), dtype=complex)
    out[:n, :n] = y.Y_nu
    out[n: 2 * n, n: 2 * n] = y.Y_e
    out[2 * n: 5 * n, 2 * n: 5 * n] = np.kron(np.eye(3), y.Y_u)
    out[5 * n:, 5 * n:] = np.kron(np.eye(3), y.Y_d)
    return out


def majorana_block(y: YukawaData) -> np.ndarray:
    """M0: the Majorana coupling, supported on right-neutrino generations."""
    n = y.N
    out = np.zeros((8 * n, 8 * n), dtype=complex)
    out[:n, :n] = y.Y_R
    return out


def _offdiag(n_gen: int, blocks: dict) -> np.ndarray:
    """Assemble a 4-sector matrix from {(row_sector, col_sector): block}."""
    k = _sector_dim(n_gen)
    out = np.zeros((4 * k, 4 * k), dtype=complex)
    order = {"R": 0, "L": 1, "Rbar": 2, "Lbar": 3}
    for (r, c), blk in blocks.items():
        i, j = order[r], order[c]
        out[i * k: (i + 1) * k, j * k: (j + 1) * k] = blk
    return out


def phi_block(y: YukawaData, q) -> np.ndarray:
    """Phi(q): the Yukawa 1-form attached to a quaternion."""
    q = _as_quaternion(q)
    y0 = yukawa_block(y)
    return _offdiag(y.N, {
        ("R", "L"): -y0.conj().T @ _tilde(q.conj().T, y.N),
        ("L", "R"): _tilde(q, y.N) @ y0,
    })


def sigma_block(y: YukawaData, m) -> np.ndarray:
    """sigma(m): the scalar block on right-neutrino generations.

    Commutation with the real structure forces m^T = s*eps_F*m.
    """
    m = as_matrix(m)
    n = y.N
    cls_sign = y.s * y.eps_F
    if frob(m.T - cls_sign * m) > 1e-9 * max(frob(m), 1.0):
        kind = "symmetric" if cls_sign == 1 else "antisymmetric"
        raise ValueError(f"sigma block needs an {kind} matrix for s*eps_F = {cls_sign}")
    upper = np.zeros((8 * n, 8 * n), dtype=complex)
    upper[:n, :n] = y.s * m.conj().T
    lower = np.zeros((8 * n, 8 * n), dtype=complex)
    lower[:n, :n] = m
    return _offdiag(n, {("R", "Rbar"): upper, ("Rbar", "R"): lower})


# ---------------------------------------------------------------------------
# the model
# ---------------------------------------------------------------------------

_SM_SUMMANDS = (("C", 1), ("H", 1), ("matC", 3))
_EXT_SUMMANDS = (("C", 1), ("C", 1), ("H", 1), ("matC", 3))

_E11 = np.diag([1.0, 0.0, 0.0]).astype(complex)
_SHIFT3 = np.roll(np.eye(3), 1, axis=1).astype(complex)  # cyclic colour shift


def _sm_generators(n_gen: int) -> dict:
    u = QUATERNION_UNITS
    z3 = np.zeros((3, 3))
    q0 = np.zeros((2, 2))
    return {
        "one_C": sm_rep_element(n_gen, 1, q0, z3),
        "i_C": sm_rep_element(n_gen, 1j, q0, z3),
        "one_H": sm_rep_element(n_gen, 0, u["1"], z3),
        "i_H": sm_rep_element(n_gen, 0, u["i"], z3),
        "j_H": sm_rep_element(n_gen, 0, u["j"], z3),
        "one_M": sm_rep_element(n_gen, 0, q0, np.eye(3)),
        "e11_M": sm_rep_element(n_gen, 0, q0, _E11),
        "shift_M": sm_rep_element(n_gen, 0, q0, _SHIFT3),
        "ie11_M": sm_rep_element(n_gen, 0, q0, 1j * _E11),
    }


def _ext_generators(n_gen: int) -> dict:
    u = QUATERNION_UNITS
    z3 = np.zeros((3, 3))
    q0 = np.zeros((2, 2))
    return {
        "one_C": extended_rep_element(n_gen, 1, 0, q0, z3),
        "i_C": extended_rep_element(n_gen, 1j, 0, q0, z3),
        "one_C2": extended_rep_element(n_gen, 0, 1, q0, z3),
        "i_C2": extended_rep_element(n_gen, 0, 1j, q0, z3),
        "one_H": extended_rep_element(n_gen, 0, 0, u["1"], z3),
        "i_H": extended_rep_element(n_gen, 0, 0, u["i"], z3),
        "j_H": extended_rep_element(n_gen, 0, 0, u["j"], z3),
        "one_M": extended_rep_element(n_gen, 0, 0, q0, np.eye(3)),
        "e11_M": extended_rep_element(n_gen, 0, 0, q0, _E11),
        "shift_M": extended_rep_element(n_gen, 0, 0, q0, _SHIFT3),
        "ie11_M": extended_rep_element(n_gen, 0, 0, q0, 1j * _E11),
    }


@dataclass(frozen=True)
class SMModel:
    """A built Standard-Model background plus its Yukawa data."""

    y: YukawaData
    background: AlgebraicBackground

    @property
    def N(self) -> int:
        return self.y.N

    @property
    def space(self) -> GradedKreinSpace:
        return self.background.space

    @property
    def dim(self) -> int:
        return self.background.dim

    def rep(self, lam, q, m3) -> np.ndarray:
        return sm_rep_element(self.N, lam, q, m3)

    def omega_element(self, q1, q2) -> np.ndarray:
        """The 1-form with quaternion coordinates (q1, q2)."""
        q1, q2 = _as_quaternion(q1), _as_quaternion(q2)
        y0 = yukawa_block(self.y)
        return _offdiag(self.N, {
            ("R", "L"): y0.conj().T @ _tilde(q1, self.N),
            ("L", "R"): _tilde(q2, self.N) @ y0,
        })

    def omega_coordinates(self, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Invert omega_element on the bimodule (least squares on each block)."""
        n = self.N
        k = _sector_dim(n)
        y0 = yukawa_block(self.y)
        rl = as_matrix(w)[:k, k: 2 * k]
        lr = as_matrix(w)[k: 2 * k, :k]
        q1t, *_ = np.linalg.lstsq(y0.conj().T, rl, rcond=None)
        q2t = lr @ np.linalg.pinv(y0)
        q1 = _untilde(q1t, n)
        q2 = _untilde(q2t, n)
        return q1, q2

    def dirac(self, q, m) -> np.ndarray:
        return dirac_qm(self.y, q, m)

    @property
    def d0(self) -> np.ndarray:
        """The reference Dirac operator D(1, Y_R)."""
        return dirac_qm(self.y, QUATERNION_UNITS["1"], self.y.Y_R)


def _untilde(block: np.ndarray, n_gen: int) -> np.ndarray:
    """Average the isospin 2x2 coordinates out of a (A + A x 1_3) x 1_N block."""
    lep = block[: 2 * n_gen, : 2 * n_gen]
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[i, j] = np.trace(lep[i * n_gen: (i + 1) * n_gen, j * n_gen: (j + 1) * n_gen]) / n_gen
    return out


def build_sm_background(y: YukawaData, tol: float = DEFAULT_TOL) -> SMModel:
    """Assemble the finite background for the given Yukawa data."""
    n = y.N
    space = GradedKreinSpace.build(
        eta_matrix(n, y.s),
        chi_matrix(n),
        AntilinearOp(chi_matrix(n) @ j_matrix(n, y.eps_F)),
        tol,
    )
    gens = _sm_generators(n)
    algebra = AlgebraSpec(summands=_SM_SUMMANDS, generators=tuple(gens))
    model = SMModel(y, AlgebraicBackground(space, algebra, gens, _omega_module(y, tol)))
    return model


def _omega_module(y: YukawaData, tol: float) -> OperatorSubspace:
    mats = []
    y0 = yukawa_block(y)
    for unit in QUATERNION_UNITS.values():
        mats.append(_offdiag(y.N, {("R", "L"): y0.conj().T @ _tilde(unit, y.N)}))
        mats.append(_offdiag(y.N, {("L", "R"): _tilde(unit, y.N) @ y0}))
    return OperatorSubspace.span(mats, ambient=32 * y.N, tol=tol)


def build_extended_background(
    y: YukawaData, m0: np.ndarray | None = None, tol: float = DEFAULT_TOL
) -> SMModel:
    """The same Krein space with the algebra extended by a second complex
    factor on the antiparticle lepton blocks; the 1-forms are regenerated so
    the reference Dirac operator D(1, m0) is regular."""
    if m0 is None:
        m0 = y.Y_R
    m0 = as_matrix(m0)
    if frob(m0) == 0.0:
        raise ValueError("extended background needs a nonzero scalar coupling m0")
    n = y.N
    space = GradedKreinSpace.build(
        eta_matrix(n, y.s),
        chi_matrix(n),
        AntilinearOp(chi_matrix(n) @ j_matrix(n, y.eps_F)),
        tol,
    )
    gens = _ext_generators(n)
    algebra = AlgebraSpec(summands=_EXT_SUMMANDS, generators=tuple(gens))
    d0 = dirac_qm(y, QUATERNION_UNITS["1"], m0)
    skeleton = AlgebraicBackground(space, algebra, gens, OperatorSubspace.zero(32 * n, tol))
    omega_ext = one_forms_of(skeleton, d0)
    return SMModel(y, AlgebraicBackground(space, algebra, gens, omega_ext))


def dirac_qm(y: YukawaData, q, m) -> np.ndarray:
    """The admissible Dirac operator D(q, m) = Phi(q) + Phi(q)^o + sigma(m)."""
    n = y.N
    space = GradedKreinSpace.build(
        eta_matrix(n, y.s), chi_matrix(n),
        AntilinearOp(chi_matrix(n) @ j_matrix(n, y.eps_F)),
    )
    phi = phi_block(y, q)
    return phi + opposite(phi, space) + sigma_block(y, m)


# ---------------------------------------------------------------------------
# genericity
# ---------------------------------------------------------------------------


def complex_commutant_dim(mats, tol: float = DEFAULT_TOL) -> int:
    """Complex dimension of the joint commutant of the given matrices."""
    import scipy.linalg

    mats = [as_matrix(m) for m in mats]
    n = mats[0].shape[0]
    ident = np.eye(n)
    rows = np.concatenate(
        [np.kron(ident, m.T) - np.kron(m, ident) for m in mats], axis=0
    )
    ns = scipy.linalg.null_space(rows, rcond=tol)
    return ns.shape[1]


def is_generic(y: YukawaData, tol: float = DEFAULT_TOL) -> bool:
    """Invertible Yukawa block and scalar joint commutants per species pair."""
    svals = np.linalg.svd(yukawa_block(y), compute_uv=False)
    if svals[-1] <= tol * svals[0]:
        return False
    if complex_commutant_dim([y.M_nu, y.M_e], tol) != 1:
        return False
    return complex_commutant_dim([y.M_u, y.M_d], tol) == 1


# ---------------------------------------------------------------------------
# basis bookkeeping
# ---------------------------------------------------------------------------


def basis_labels(n_gen: int) -> list:
    """Human-readable labels for the canonical basis, in storage order."""
    labels = []
    for sector in ("R", "L", "Rbar", "Lbar"):
        for species in ("nu", "e"):
            labels += [(sector, species, None, g) for g in range(n_gen)]
        for species in ("u", "d"):
            for colour in ("r", "g", "b"):
                labels += [(sector, species, colour, g) for g in range(n_gen)]
    return labels
