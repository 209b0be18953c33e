"""Graded tensor products of backgrounds and fiber-level field content.

The graded product of two backgrounds carries Koszul signs: an operator pair
(A, B) acts as A chi_1^{|B|} (x) B, the real structures pick up chirality
dressings, and the product Krein metric acquires a correction factor on the
second factor whenever the first metric pairs opposite chirality sectors.
With those rules the mod-8 index pair of the product is the componentwise
sum of the factors'.

The second half of the module decomposes an operator on the product of the
dimension-four spinor fiber with the Standard-Model space along Clifford
words gamma_I (x) B^I and sorts the coefficients into the physical sectors:
gauge, the anomalous x-phase, the baryon-minus-lepton boson direction,
flavour (vector and pseudovector), the two Majorana classes, the Higgs
quaternion, and the scalar that couples right-neutrino generations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .background import AlgebraSpec, AlgebraicBackground
from .clifford import CliffordModule, build_clifford, fiber_background
from .krein import AntilinearOp, GradedKreinSpace, krein_adjoint, opposite
from .linalg import (
    CommutatorRule,
    OperatorSubspace,
    SignRule,
    as_matrix,
    frob,
    solve_matrix_subspace,
)
from .sm import (
    QUATERNION_UNITS,
    SMModel,
    phi_block,
    sigma_block,
)
from .symmetry import (
    flavour_family,
    generator_catalog,
    majorana_family,
)

__all__ = [
    "ResidualNonzero",
    "graded_tensor_space",
    "graded_tensor",
    "beta_correction",
    "graded_product_identities",
    "central_structure_dims",
    "satisfies_splitting_hypotheses",
    "FiberModel",
    "fiber_model",
    "FieldDecomposition",
    "classify_fiber_field",
    "act_symmetry_on_field",
]


class ResidualNonzero(ValueError):
    """The field does not decompose into the admissible sectors."""


# ---------------------------------------------------------------------------
# graded tensor product
# ---------------------------------------------------------------------------


def _chirality_parity_of_real_structure(space: GradedKreinSpace) -> int:
    """0 when C commutes with chi, 1 when it anticommutes."""
    return 0 if space.signs.eps2 == 1 else 1


def _product_is_even(space: GradedKreinSpace) -> bool:
    """Whether the Krein product pairs equal chirality sectors (chi^x = chi)."""
    return space.signs.eps2 * space.signs.kappa2 == 1


def beta_correction(k1: GradedKreinSpace, k2: GradedKreinSpace) -> np.ndarray:
    """The metric correction on the second factor."""
    if _product_is_even(k1):
        return np.eye(k2.dim, dtype=complex)
    if _product_is_even(k2):
        return k2.chi.copy()
    return 1j * k2.chi


def graded_kron(a: np.ndarray, b: np.ndarray, chi1: np.ndarray, b_parity: int) -> np.ndarray:
    """The matrix of the graded pair (a, b) of linear operators."""
    left = a @ chi1 if b_parity else a
    return np.kron(left, as_matrix(b))


def graded_tensor_space(k1: GradedKreinSpace, k2: GradedKreinSpace) -> GradedKreinSpace:
    """Product graded Krein space; index pairs add mod 8."""
    p1 = _chirality_parity_of_real_structure(k1)
    p2 = _chirality_parity_of_real_structure(k2)
    chi = np.kron(k1.chi, k2.chi)
    eta = np.kron(k1.eta, k2.eta @ beta_correction(k1, k2))
    # real structure: each factor is dressed by the other's chirality parity,
    # and the graded pairing of the two antilinear maps contracts the first
    # dressing away (conj(chi)^2 = 1), leaving the second factor dressed
    c_mat = np.kron(k1.C.mat, k2.C.mat @ np.conj(k2.chi) if p1 else k2.C.mat)
    return GradedKreinSpace.build(eta, chi, AntilinearOp(c_mat), min(k1.tol, k2.tol))


def graded_tensor(b1: AlgebraicBackground, b2: AlgebraicBackground) -> AlgebraicBackground:
    """Graded product background: spaces, algebras, and 1-forms combined."""
    space = graded_tensor_space(b1.space, b2.space)
    n1, n2 = b1.dim, b2.dim
    i1, i2 = np.eye(n1, dtype=complex), np.eye(n2, dtype=complex)
    rep = {}
    for name, g in b1.rep.items():
        rep[f"L:{name}"] = np.kron(g, i2)
    for name, g in b2.rep.items():
        rep[f"R:{name}"] = np.kron(i1, g)
    algebra = AlgebraSpec(
        summands=(("tensor", 0),),
        generators=tuple(rep),
        real_dim_override=b1.algebra.real_dim * b2.algebra.real_dim,
    )
    omega = []
    span2 = b2.algebra_span()
    span1 = b1.algebra_span()
    for w in b1.omega1.basis:
        for p in span2.basis:
            omega.append(graded_kron(w, p, b1.space.chi, 0))
    for p in span1.basis:
        for w in b2.omega1.basis:
            omega.append(graded_kron(p, w, b1.space.chi, 1))
    tol = space.tol
    return AlgebraicBackground(
        space, algebra, rep, OperatorSubspace.span(omega, ambient=n1 * n2, tol=tol)
    )


def graded_product_identities(
    a: np.ndarray,
    b: np.ndarray,
    k1: GradedKreinSpace,
    k2: GradedKreinSpace,
    tol: float = 1e-9,
) -> dict:
    """Residuals of the three product identities for homogeneous operators:
    conjugation by J acts factorwise, while the Krein adjoint and the
    opposite pick up the Koszul sign (-1)^{|a||b|}."""
    pa, pb = k1.parity(a), k2.parity(b)
    if pa is None or pb is None:
        raise ValueError("operators must be homogeneous for the product identities")
    prod_space = graded_tensor_space(k1, k2)
    ab = graded_kron(a, b, k1.chi, pb)
    sign = (-1) ** (pa * pb)

    j_prod, j1, j2 = prod_space.J, k1.J, k2.J
    lhs = j_prod.conjugate_linear(ab)
    rhs = graded_kron(j1.conjugate_linear(a), j2.conjugate_linear(b), k1.chi, pb)
    j_res = frob(lhs - rhs)

    lhs = krein_adjoint(ab, prod_space.eta)
    rhs = sign * graded_kron(
        krein_adjoint(a, k1.eta), krein_adjoint(b, k2.eta), k1.chi, pb
    )
    adj_res = frob(lhs - rhs)

    lhs = opposite(ab, prod_space)
    rhs = sign * graded_kron(opposite(a, k1), opposite(b, k2), k1.chi, pb)
    opp_res = frob(lhs - rhs)

    scale = max(frob(ab), 1.0)
    return {
        "j_residual": float(j_res),
        "adjoint_residual": float(adj_res),
        "opposite_residual": float(opp_res),
        "passed": max(j_res, adj_res, opp_res) <= tol * scale,
    }


# ---------------------------------------------------------------------------
# splitting hypotheses for product Dirac operators
# ---------------------------------------------------------------------------


def central_structure_dims(b: AlgebraicBackground) -> tuple[int, int]:
    """(dim of J-real selfadjoint central algebra elements,
    dim of central J-commuting anti-selfadjoint 1-forms)."""
    space = b.space
    jm = space.J.mat
    comm = [CommutatorRule(g, None) for g in b.rep_matrices()]
    z = solve_matrix_subspace(
        b.dim,
        [SignRule(jm, jm, 1, conj=True),
         SignRule(space.eta, space.eta, 1, conj=True, transpose=True)],
        comm,
        tol=space.tol,
        initial=b.algebra_span().basis,
    )
    if b.omega1.dim:
        c = solve_matrix_subspace(
            b.dim,
            [SignRule(jm, jm, 1, conj=True),
             SignRule(space.eta, space.eta, -1, conj=True, transpose=True)],
            comm,
            tol=space.tol,
            initial=b.omega1.basis,
        )
        c_dim = c.dim
    else:
        c_dim = 0
    return z.dim, c_dim


def satisfies_splitting_hypotheses(b: AlgebraicBackground) -> bool:
    """True when the scalar center is one-dimensional and no 1-form is a
    central J-commuting anti-selfadjoint element; under these conditions the
    regular product Dirac operators split into a frame part and a fiber
    field."""
    z, c = central_structure_dims(b)
    return z == 1 and c == 0


# ---------------------------------------------------------------------------
# fiber fields over the Standard-Model background
# ---------------------------------------------------------------------------


_SECTORS = (
    "gauge",
    "x",
    "b_minus_l",
    "flavour_vector",
    "flavour_pseudovector",
    "majorana_bivector",
    "majorana_pseudoscalar",
    "higgs",
    "sigma",
)


@dataclass(frozen=True)
class FiberModel:
    """The product of the dimension-four spinor fiber with a Standard-Model
    background, with everything the field classifier needs precomputed."""

    cliff: CliffordModule
    sm: SMModel
    background: AlgebraicBackground
    words: dict
    sector_spaces: dict

    @property
    def fiber_dim(self) -> int:
        return self.cliff.spinor_dim

    @property
    def dim(self) -> int:
        return self.background.dim

    def lift_finite(self, g: np.ndarray) -> np.ndarray:
        """1 (x) g for an even finite operator."""
        return np.kron(np.eye(self.fiber_dim, dtype=complex), as_matrix(g))


def _clifford_words(cliff: CliffordModule) -> dict:
    """Left-factor matrices W_I = i^{|I|} gamma_I chi^{|I|+1} per index set.

    An odd product field splits as sum_I of i^{|I|} (gamma_I, B^I) graded
    pairs with B^I of parity opposite to gamma_I; converting the graded pair
    to a plain Kronecker product dresses gamma_I by chi^{|B^I|}.  The sixteen
    W_I are pairwise orthogonal for the trace pairing.
    """
    words = {}
    n = cliff.n
    for size in range(n + 1):
        for idx in combinations(range(n), size):
            g = np.eye(cliff.spinor_dim, dtype=complex)
            for a in idx:
                g = g @ cliff.gammas[a]
            w = (1j ** size) * g
            if (size + 1) % 2:
                w = w @ cliff.chi0
            words[idx] = w
    return words


def _sector_spaces(sm_model: SMModel, tol: float) -> dict:
    n = sm_model.N
    cat = generator_catalog(n)
    vert = OperatorSubspace.span(cat.vertical(), tol=tol)
    flavour = flavour_family(n, hermitian=False, tol=tol)
    higgs = OperatorSubspace.span(
        [phi_block(sm_model.y, u) + opposite(phi_block(sm_model.y, u), sm_model.space)
         for u in QUATERNION_UNITS.values()],
        ambient=sm_model.dim, tol=tol,
    )
    cls = sm_model.y.s * sm_model.y.eps_F
    sigma_mats = []
    for a in range(n):
        for b in range(a, n):
            e = np.zeros((n, n), dtype=complex)
            e[a, b] = 1.0
            mm = e + cls * e.T
            for m in (mm, 1j * mm):
                if frob(m) > 0:
                    sigma_mats.append(sigma_block(sm_model.y, m))
    return {
        "gauge": OperatorSubspace.span([cat.hypercharge, *cat.weak, *cat.colour], tol=tol),
        "x": OperatorSubspace.span([cat.x], tol=tol),
        "b_minus_l": OperatorSubspace.span([cat.b_minus_l], tol=tol),
        "flavour_vector": vert.ortho_complement_in(flavour),
        "flavour_pseudovector": flavour_family(n, hermitian=True, tol=tol),
        "majorana_bivector": majorana_family(sm_model, -1, tol=tol),
        "majorana_pseudoscalar": majorana_family(sm_model, +1, tol=tol),
        "higgs": higgs,
        "sigma": OperatorSubspace.span(sigma_mats, ambient=sm_model.dim, tol=tol),
    }


def fiber_model(sm_model: SMModel) -> FiberModel:
    """Assemble the anti-Lorentzian four-dimensional fiber over the given
    Standard-Model background."""
    cliff = build_clifford(1, 3)
    prod = graded_tensor(fiber_background(cliff), sm_model.background)
    tol = prod.space.tol
    return FiberModel(
        cliff, sm_model, prod, _clifford_words(cliff), _sector_spaces(sm_model, tol)
    )


_WORD_SECTORS = {
    1: ("gauge", "x", "b_minus_l", "flavour_vector"),
    3: ("flavour_pseudovector",),
    2: ("majorana_bivector",),
    4: ("majorana_pseudoscalar",),
    0: ("higgs", "sigma"),
}


@dataclass
class FieldDecomposition:
    """Sector-sorted coefficients of a fiber field."""

    model: FiberModel
    coefficients: dict           # index tuple -> finite coefficient matrix
    sector_fields: dict          # sector -> product-space matrix
    residual: np.ndarray

    def reassemble(self) -> np.ndarray:
        total = sum(self.sector_fields.values()) + self.residual
        return total

    def sector_norms(self) -> dict:
        out = {name: frob(m) for name, m in self.sector_fields.items()}
        out["residual"] = frob(self.residual)
        return out

    def dominant_sector(self) -> str:
        norms = self.sector_norms()
        return max(norms, key=norms.get)

    def sigma_matrix(self) -> np.ndarray:
        """The generation matrix of the sigma sector (lower coupling block)."""
        n = self.model.sm.N
        k = self.model.fiber_dim
        part = self.coefficients.get((), np.zeros((self.model.sm.dim,) * 2))
        sig = self.model.sector_spaces["sigma"].project(part)
        return sig[16 * n: 17 * n, :n].copy()

    def __repr__(self):
        norms = self.sector_norms()
        body = ", ".join(f"{k}={v:.3e}" for k, v in norms.items() if v > 1e-12)
        return f"FieldDecomposition({body or '0'})"


def _partial_trace_coefficient(model: FiberModel, zeta: np.ndarray, idx: tuple) -> np.ndarray:
    k = model.fiber_dim
    d2 = model.sm.dim
    w = model.words[idx]
    z4 = zeta.reshape(k, d2, k, d2)
    return np.einsum("ab,biaj->ij", w.conj().T, z4) / k


def _oblique_split(spaces: list, b: np.ndarray) -> tuple[list, np.ndarray]:
    """Split b along a direct (not necessarily orthogonal) sum of subspaces.

    Least-squares coefficients over the joint basis, grouped per subspace;
    the remainder is whatever the joint span cannot reach.
    """
    from .linalg import realify, unrealify

    n = b.shape[0]
    rows = [s._rows for s in spaces if s.dim > 0]
    if not rows:
        return [np.zeros_like(b) for _ in spaces], b
    joint = np.concatenate(rows, axis=0)
    v = realify(b[None])[0]
    coeff, *_ = np.linalg.lstsq(joint.T, v, rcond=None)
    parts = []
    at = 0
    for s in spaces:
        if s.dim == 0:
            parts.append(np.zeros_like(b))
            continue
        block = coeff[at: at + s.dim] @ s._rows
        parts.append(unrealify(block[None], n)[0])
        at += s.dim
    remainder = b - sum(parts)
    return parts, remainder


def _validate_field(model: FiberModel, zeta: np.ndarray, tol: float):
    space = model.background.space
    scale = max(frob(zeta), 1.0)
    if frob(space.chi @ zeta + zeta @ space.chi) > tol * scale:
        raise ValueError("field must be odd")
    jm = space.J.mat
    if frob(jm @ np.conj(zeta) @ np.linalg.inv(jm) - zeta) > tol * scale:
        raise ValueError("field must be real for the graded real structure")
    if frob(krein_adjoint(zeta, space.eta) - zeta) > tol * scale:
        raise ValueError("field must be Krein selfadjoint")


def classify_fiber_field(
    model: FiberModel, zeta, tol: float = 1e-9, require_clean: bool = False
) -> FieldDecomposition:
    """Decompose a fiber field along Clifford words and physical sectors.

    Raises ResidualNonzero (with ``require_clean``) when some component
    falls outside every admissible sector.
    """
    zeta = as_matrix(zeta)
    if zeta.shape != (model.dim, model.dim):
        raise ValueError(f"field must be {model.dim} x {model.dim}")
    _validate_field(model, zeta, tol)
    coeffs = {}
    sector_fields = {name: np.zeros_like(zeta) for name in _SECTORS}
    residual = np.zeros_like(zeta)
    for idx, w in model.words.items():
        b_i = _partial_trace_coefficient(model, zeta, idx)
        if frob(b_i) <= tol:
            continue
        coeffs[idx] = b_i
        names = _WORD_SECTORS[len(idx)]
        parts, remaining = _oblique_split(
            [model.sector_spaces[name] for name in names], b_i
        )
        for name, part in zip(names, parts):
            if frob(part) > tol * max(frob(b_i), 1.0):
                sector_fields[name] = sector_fields[name] + np.kron(w, part)
        residual = residual + np.kron(w, remaining)
    if require_clean and frob(residual) > tol * max(frob(zeta), 1.0):
        raise ResidualNonzero(
            f"field has a component of norm {frob(residual):.3e} outside every sector"
        )
    return FieldDecomposition(model, coeffs, sector_fields, residual)


def act_symmetry_on_field(
    model: FiberModel, zeta, g, tol: float = 1e-9
) -> FieldDecomposition:
    """Classify the conjugate of a fiber field by a constant symmetry.

    ``g`` may act on the finite space (it is lifted as 1 (x) g) or already on
    the product.
    """
    zeta = as_matrix(zeta)
    g = as_matrix(g)
    if g.shape[0] == model.sm.dim:
        g = model.lift_finite(g)
    return classify_fiber_field(model, g @ zeta @ np.linalg.inv(g), tol=tol)
