"""Real-linear algebra over spaces of complex matrices.

Almost every question downstream reduces to one mechanical problem: find the
real-linear subspace of ``End(C^n)`` cut out by

* *sign rules* -- eigenspace conditions ``iota(A) = s*A`` for an involution
  ``iota`` built from fixed matrices (conjugation by a grading, a Krein
  adjoint, conjugation by an antilinear map), and
* *commutator rules* -- conditions ``[A, G] = 0`` or ``[A, G] in W`` for fixed
  matrices ``G`` and a fixed target subspace ``W``.

These conditions are real-linear but usually not complex-linear (complex
conjugation appears), so the computation happens on the realified coordinate
space: a complex ``n x n`` matrix is the real vector ``(Re vec A, Im vec A)``
of dimension ``2*n^2``.

For small ambient dimensions everything is done densely.  For large ones two
structural facts keep the cost down:

* when the matrices entering a sign rule are monomial (one nonzero per row
  and column -- true for all the graded structures built here), the rule
  permutes matrix entries up to phases, so its joint eigenspaces have a basis
  of matrices supported on small entry orbits, built combinatorially;
* a commutator rule against a *diagonal* ``G`` forces ``A_ij = 0`` whenever
  ``d_i != d_j`` and ``(i, j)`` lies outside the support of the target
  subspace.  Those entrywise masks are folded into the orbit construction,
  which typically collapses the search space by two orders of magnitude
  before any dense factorization runs.

Rank and nullspace decisions follow one convention throughout: a singular
value counts as zero iff it is below ``tol`` times the largest one.  Large
nullspace computations go through the Gram matrix (with a conservative
candidate threshold and an exact-residual verification pass; a direct SVD is
the fallback if verification ever fails).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9

# Above this number of realified coordinates (2*n^2) the dense fallback for
# non-monomial structures is refused rather than letting memory blow up.
_DENSE_AMBIENT_LIMIT = 2 * 48 * 48

_CHUNK = 256


def as_matrix(a) -> np.ndarray:
    """Coerce to a complex 2-d array without copying when possible."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {m.shape}")
    return m


def frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def real_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Re Tr(a^dagger b), the real part of the Frobenius pairing."""
    return float(np.real(np.vdot(a, b)))


def realify(stack: np.ndarray) -> np.ndarray:
    """(K, n, n) complex -> (K, 2*n^2) float64."""
    k = stack.shape[0]
    if k == 0:
        return np.zeros((0, 2 * stack.shape[-1] * stack.shape[-2]))
    flat = stack.reshape(k, -1)
    return np.concatenate([flat.real, flat.imag], axis=1)


def unrealify(rows: np.ndarray, n: int) -> np.ndarray:
    """(K, 2*n^2) float64 -> (K, n, n) complex."""
    k = rows.shape[0]
    half = n * n
    return (rows[:, :half] + 1j * rows[:, half:]).reshape(k, n, n)


def _svd_row_basis(rows: np.ndarray, tol: float):
    """Orthonormal basis of the row space; returns (basis_rows, rank)."""
    if rows.size == 0:
        return np.zeros((0, rows.shape[1])), 0
    u, s, vt = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((0, rows.shape[1])), 0
    rank = int(np.sum(s > tol * s[0]))
    return vt[:rank], rank


def nullspace_rows(
    rows: np.ndarray, tol: float, exact: bool = False, scale_floor: float = 1.0
) -> np.ndarray:
    """Orthonormal combinations c with c @ rows ~ 0, as columns of (K, d).

    The null cut is ``sigma <= tol * max(sigma_max, scale_floor)``: for a
    well-scaled problem this is the usual relative rule, while for an image
    matrix consisting purely of rounding noise (sigma_max near machine
    epsilon) the floor makes the whole space null, as it should be.

    Small problems (and ``exact=True``) use a direct SVD.  Large ones use
    eigh on the Gram matrix rows @ rows.T; squaring pushes true zeros far
    below the threshold, but eigenvalue noise sits near ``eps * lmax``, so
    the candidate cut is floored at an effective singular-value ratio of
    1e-7.  Callers verify residuals against the unsquared data and fall back
    to the SVD path on failure.
    """
    k, m = rows.shape
    if k == 0:
        return np.zeros((0, 0))
    if exact or k <= 128 or k * m <= 600_000:
        u, s, vt = np.linalg.svd(rows, full_matrices=False)
        smax = s[0] if s.size else 0.0
        cut = tol * max(smax, scale_floor)
        ns = [u[:, i] for i in range(s.size) if s[i] <= cut]
        # rows of u beyond min(k, m) (the k > m case) are exact null directions
        if k > m:
            extra = _complete_orthonormal(u[:, : s.size], k)
            ns.extend(extra.T)
        if not ns:
            return np.zeros((k, 0))
        return np.array(ns).T
    gram = rows @ rows.T
    w, v = np.linalg.eigh(gram)
    lmax = float(w[-1]) if w.size else 0.0
    cut = (max(tol, 1e-7) * max(np.sqrt(max(lmax, 0.0)), scale_floor)) ** 2
    return v[:, w <= cut]


def _complete_orthonormal(cols: np.ndarray, k: int) -> np.ndarray:
    """Orthonormal complement of the given orthonormal columns in R^k."""
    d = cols.shape[1]
    if d >= k:
        return np.zeros((k, 0))
    q, _ = np.linalg.qr(np.concatenate([cols, np.eye(k)], axis=1))
    return q[:, d:k]


class IncrementalSpan:
    """Grow an orthonormal row basis one matrix at a time.

    Orthogonalizes twice against the current basis (classical Gram-Schmidt
    with one re-orthogonalization pass, enough at these scales) and keeps a
    new direction only when the residual exceeds ``tol`` times the original
    norm.  Much cheaper than re-factorizing when saturating products.
    """

    def __init__(self, ambient: int, tol: float = DEFAULT_TOL):
        self.ambient = ambient
        self.tol = tol
        self._rows: list = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def add(self, mat: np.ndarray, scale: float = 0.0):
        """Returns the new orthonormal direction (as a matrix), or None.

        ``scale`` should be the natural magnitude of the expression that
        produced ``mat`` (e.g. the product of the factors' norms): a residual
        below ``tol * scale`` is indistinguishable from rounding noise and is
        not admitted as a new direction, even when ``mat`` itself is small
        through cancellation.
        """
        v = realify(np.asarray(mat, dtype=complex)[None])[0]
        norm0 = np.linalg.norm(v)
        if norm0 == 0.0:
            return None
        if self._rows:
            stack = np.array(self._rows)
            for _ in range(2):
                v = v - stack.T @ (stack @ v)
        norm = np.linalg.norm(v)
        if norm <= self.tol * max(norm0, scale):
            return None
        v = v / norm
        self._rows.append(v)
        return unrealify(v[None], self.ambient)[0]

    def add_all(self, mats, scale: float = 0.0) -> int:
        return sum(self.add(m, scale) is not None for m in mats)

    def subspace(self) -> "OperatorSubspace":
        rows = np.array(self._rows) if self._rows else np.zeros((0, 2 * self.ambient**2))
        return OperatorSubspace(self.ambient, unrealify(rows, self.ambient), self.tol)


class OperatorSubspace:
    """A real-linear subspace of n x n complex matrices.

    The basis is kept orthonormal for the real Frobenius pairing, which makes
    projections, membership tests and complements one matmul each.
    """

    def __init__(self, ambient: int, basis: np.ndarray, tol: float = DEFAULT_TOL):
        basis = np.asarray(basis, dtype=complex)
        if basis.ndim != 3 or basis.shape[1:] != (ambient, ambient):
            raise ValueError(f"basis shape {basis.shape} does not match ambient {ambient}")
        self.ambient = ambient
        self.basis = basis
        self.tol = tol
        self._rows = realify(basis)

    # -- construction ------------------------------------------------------

    @classmethod
    def span(cls, mats, ambient: int | None = None, tol: float = DEFAULT_TOL) -> "OperatorSubspace":
        """Span of the given matrices, with real-linear dependencies removed."""
        mats = [as_matrix(m) for m in mats]
        if not mats:
            if ambient is None:
                raise ValueError("cannot infer ambient dimension from an empty list")
            return cls(ambient, np.zeros((0, ambient, ambient)), tol)
        n = mats[0].shape[0]
        stack = np.array(mats)
        rows = realify(stack)
        # an already-orthonormal family is kept verbatim, so round trips
        # through serialization preserve the basis exactly
        if rows.shape[0] <= rows.shape[1]:
            gram = rows @ rows.T
            if np.abs(gram - np.eye(rows.shape[0])).max() <= tol:
                return cls(n, stack, tol)
        rows, rank = _svd_row_basis(rows, tol)
        return cls(n, unrealify(rows, n), tol)

    @classmethod
    def zero(cls, ambient: int, tol: float = DEFAULT_TOL) -> "OperatorSubspace":
        return cls(ambient, np.zeros((0, ambient, ambient)), tol)

    # -- queries -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, a) -> np.ndarray:
        a = as_matrix(a)
        if self.dim == 0:
            return np.zeros_like(a)
        v = realify(a[None])[0]
        coeff = self._rows @ v
        return unrealify((coeff @ self._rows)[None], self.ambient)[0]

    def distance(self, a) -> float:
        a = as_matrix(a)
        return frob(a - self.project(a))

    def contains(self, a, tol: float | None = None, zero_scale: float = 1.0) -> bool:
        """Membership at relative tolerance.

        A matrix whose norm is below ``tol * zero_scale`` counts as zero and
        is contained in any subspace; ``zero_scale`` should be the natural
        scale of the expression that produced ``a`` (all bases here are
        orthonormal, so 1.0 is the right default).
        """
        a = as_matrix(a)
        t = self.tol if tol is None else tol
        na = frob(a)
        if na <= t * zero_scale:
            return True
        return self.distance(a) <= t * na

    def contains_all(self, mats, tol: float | None = None) -> bool:
        return all(self.contains(m, tol) for m in mats)

    def __contains__(self, a) -> bool:
        return self.contains(a)

    # -- lattice operations -------------------------------------------------

    def intersect(self, other: "OperatorSubspace") -> "OperatorSubspace":
        """Intersection via principal angles between the two row spaces."""
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        if self.dim == 0 or other.dim == 0:
            return OperatorSubspace.zero(self.ambient, self.tol)
        m = self._rows @ other._rows.T
        u, s, vt = np.linalg.svd(m, full_matrices=False)
        keep = s >= 1.0 - 10 * self.tol
        rows = (u[:, keep].T @ self._rows)
        rows, _ = _svd_row_basis(rows, self.tol)
        return OperatorSubspace(self.ambient, unrealify(rows, self.ambient), self.tol)

    def ortho_complement_in(self, other: "OperatorSubspace") -> "OperatorSubspace":
        """Part of `other` orthogonal to self, for the Re-Frobenius pairing."""
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        if self.dim == 0:
            return other
        rows = other._rows - (other._rows @ self._rows.T) @ self._rows
        rows, _ = _svd_row_basis(rows, self.tol)
        return OperatorSubspace(self.ambient, unrealify(rows, self.ambient), self.tol)

    def union(self, other: "OperatorSubspace") -> "OperatorSubspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        return OperatorSubspace.span(
            list(self.basis) + list(other.basis), ambient=self.ambient, tol=self.tol
        )

    def support(self, cut: float = 1e-12) -> np.ndarray:
        """Boolean mask of entries where some basis element is nonzero."""
        if self.dim == 0:
            return np.zeros((self.ambient, self.ambient), dtype=bool)
        return (np.abs(self.basis) > cut).any(axis=0)

    def digest(self) -> bytes:
        import hashlib

        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.basis).tobytes())
        return h.digest()


# ---------------------------------------------------------------------------
# constraint rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignRule:
    """Constraint  left @ f(A) == sign * A @ right  with f in {id, conj, T, dagger}.

    ``conj`` and ``transpose`` select f.  The balanced two-sided form avoids
    matrix inverses, so badly conditioned structure matrices do not square
    their condition numbers in the residual.  When left and right are
    invertible the constraint is the eigenspace of the involution
    A -> left f(A) right^{-1}; the factories below always build involutions,
    which is what the orbit construction relies on.
    """

    left: np.ndarray
    right: np.ndarray
    sign: int
    conj: bool = False
    transpose: bool = False

    def residual(self, stack: np.ndarray) -> np.ndarray:
        a = stack
        if self.transpose:
            a = np.swapaxes(a, -1, -2)
        if self.conj:
            a = np.conj(a)
        return np.matmul(self.left, a) - self.sign * np.matmul(stack, self.right)


@dataclass(frozen=True)
class CommutatorRule:
    """Constraint  [A, g] == 0  (target None) or  [A, g] in target."""

    g: np.ndarray
    target: OperatorSubspace | None = None

    def residual(self, stack: np.ndarray) -> np.ndarray:
        comm = np.matmul(stack, self.g) - np.matmul(self.g, stack)
        if self.target is None or self.target.dim == 0:
            return comm
        rows = realify(comm)
        rows -= (rows @ self.target._rows.T) @ self.target._rows
        return unrealify(rows, comm.shape[-1])


# ---------------------------------------------------------------------------
# monomial / orbit machinery
# ---------------------------------------------------------------------------


def _monomial_decomp(m: np.ndarray, tol: float):
    """Return (col_of_row, val_of_row) if m is monomial, else None."""
    n = m.shape[0]
    scale = np.max(np.abs(m))
    if scale == 0.0:
        return None
    big = np.abs(m) > tol * scale
    if not (big.sum(axis=0) == 1).all() or not (big.sum(axis=1) == 1).all():
        return None
    # entries below the cut must be exactly negligible
    if np.abs(np.where(big, 0.0, m)).max() > tol * scale:
        return None
    cols = np.argmax(big, axis=1)
    vals = m[np.arange(n), cols]
    return cols, vals


@dataclass
class _EntryRule:
    """Entrywise form of a monomial SignRule.

    A_{ij} = factor(i, j) * g(A_{src(i, j)}) with g = conj iff ``conj``.
    """

    src_row: np.ndarray
    src_col: np.ndarray
    factor: np.ndarray  # (n, n) complex
    conj: bool


def _entry_rule(rule: SignRule, tol: float) -> _EntryRule | None:
    """Entrywise form of  left f(A) = sign A right  for monomial left/right.

    Writing left[i, lcol[i]] = lval[i] and right[j, rcol[j]] = rval[j], the
    (i, rcol-inverse...) bookkeeping reduces the constraint to
    A_{i,j} = sign * lval[i] / rval[j] * g(A_src) with src = (lcol[i], rcol[j])
    (swapped when f transposes) and g = conj or identity.
    """
    left = _monomial_decomp(rule.left, tol)
    right = _monomial_decomp(rule.right, tol)
    if left is None or right is None:
        return None
    n = rule.left.shape[0]
    lcol, lval = left
    rcol, rval = right
    a = np.broadcast_to(lcol[:, None], (n, n))
    b = np.broadcast_to(rcol[None, :], (n, n))
    if rule.transpose:
        src_row, src_col = b, a
    else:
        src_row, src_col = a, b
    factor = rule.sign * np.outer(lval, 1.0 / rval)
    return _EntryRule(np.array(src_row), np.array(src_col), factor, rule.conj)


def _orbit_basis(n: int, rules: list[_EntryRule], zero_mask: np.ndarray | None) -> list:
    """Sparse basis of the joint eigenspace of entrywise involutions.

    Returns a list of (flat_indices, values) pairs; values rows are the one
    or two real-linearly independent fillings of the orbit.
    """
    seen = np.zeros(n * n, dtype=bool)
    if zero_mask is None:
        zero_mask = np.zeros((n, n), dtype=bool)
    basis = []
    for root in range(n * n):
        if seen[root]:
            continue
        # BFS over entry positions; record each entry as alpha * z or
        # alpha * conj(z) in terms of the root value z.
        orbit = [root]
        coeff = {root: (1.0 + 0j, 0)}
        seen[root] = True
        constraints = []  # rows of a real 2-var homogeneous system on z
        queue = [root]
        while queue:
            e = queue.pop()
            i, j = divmod(e, n)
            a_e, h_e = coeff[e]
            for r in rules:
                si, sj = int(r.src_row[i, j]), int(r.src_col[i, j])
                s = si * n + sj
                c = r.factor[i, j]
                # relation: A_e = c * g(A_s)
                if s not in coeff:
                    # express A_s in terms of the root: invert the relation
                    # A_s = g^{-1}(A_e / c) = g(A_e) / g(c)
                    if r.conj:
                        a_s, h_s = np.conj(a_e) / np.conj(c), 1 - h_e
                    else:
                        a_s, h_s = a_e / c, h_e
                    coeff[s] = (a_s, h_s)
                    seen[s] = True
                    orbit.append(s)
                    queue.append(s)
                else:
                    a_s, h_s = coeff[s]
                    # consistency: a_e conj^{h_e}(z) == c * g(a_s conj^{h_s}(z))
                    if r.conj:
                        rhs_a, rhs_h = c * np.conj(a_s), 1 - h_s
                    else:
                        rhs_a, rhs_h = c * a_s, h_s
                    constraints.append((a_e, h_e, rhs_a, rhs_h))
        for e in orbit:
            if zero_mask[divmod(e, n)]:
                constraints.append((coeff[e][0], coeff[e][1], 0.0, 0))
        # solve the residual real-linear system on z = x + i y
        rows = []
        for a1, h1, a2, h2 in constraints:
            # value of a*conj^h(z) as a real-linear map of (x, y)
            def lin(a, h):
                return np.array([[a.real, -a.imag if h == 0 else a.imag],
                                 [a.imag, a.real if h == 0 else -a.real]])

            rows.append(lin(a1, h1) - lin(a2, h2))
        if rows:
            m = np.concatenate(rows, axis=0)
            _, s, vt = np.linalg.svd(m)
            smax = s[0] if s.size else 0.0
            free = [vt[k] for k in range(2) if k >= s.size or s[k] <= 1e-9 * max(smax, 1.0)]
        else:
            free = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
        if not free:
            continue
        idx = np.array(orbit)
        alph = np.array([coeff[e][0] for e in orbit])
        hbit = np.array([coeff[e][1] for e in orbit])
        fills = []
        for xy in free:
            z = complex(xy[0], xy[1])
            vals = alph * np.where(hbit == 0, z, np.conj(z))
            fills.append(vals)
        fills = np.array(fills)
        # orthonormalize within the orbit (cross-orbit supports are disjoint)
        gram_rows = np.concatenate([fills.real, fills.imag], axis=1)
        q, rank = _svd_row_basis(gram_rows, 1e-12)
        vals = q[:, : len(orbit)] + 1j * q[:, len(orbit):]
        for k in range(rank):
            basis.append((idx, vals[k]))
    return basis


class _SparseStack:
    """A stack of sparse matrices sharing one coefficient space."""

    def __init__(self, n: int, items: list):
        self.n = n
        self.items = items  # list of (flat_indices, values)

    def __len__(self):
        return len(self.items)

    def densify(self, sel=None) -> np.ndarray:
        items = self.items if sel is None else [self.items[k] for k in sel]
        out = np.zeros((len(items), self.n * self.n), dtype=complex)
        for k, (idx, vals) in enumerate(items):
            out[k, idx] = vals
        return out.reshape(len(items), self.n, self.n)

    def combine(self, combos: np.ndarray) -> np.ndarray:
        """Dense stack of sum_k combos[k, j] * item_k, for each column j."""
        out = np.zeros((combos.shape[1], self.n * self.n), dtype=complex)
        for k, (idx, vals) in enumerate(self.items):
            ck = combos[k]
            if np.abs(ck).max() == 0.0:
                continue
            out[:, idx] += np.outer(ck, vals)
        return out.reshape(combos.shape[1], self.n, self.n)


def _diag_of(m: np.ndarray, tol: float):
    scale = max(np.max(np.abs(m)), 1.0)
    d = np.diagonal(m)
    if np.abs(m - np.diag(d)).max() <= tol * scale:
        return d
    return None


def _mask_from_rules(n: int, comm_rules, tol: float) -> np.ndarray:
    """Entries forced to zero by commutator rules against diagonal matrices."""
    mask = np.zeros((n, n), dtype=bool)
    for rule in comm_rules:
        d = _diag_of(rule.g, tol)
        if d is None:
            continue
        scale = max(np.max(np.abs(d)), 1.0)
        differ = np.abs(d[None, :] - d[:, None]) > tol * scale
        if rule.target is not None and rule.target.dim > 0:
            differ &= ~rule.target.support()
        mask |= differ
    return mask


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------


class SolverError(RuntimeError):
    pass


def _fold(stack_src, n: int, residual_fn, tol: float, exact: bool):
    """One constraint fold: keep the combinations annihilating residual_fn.

    ``stack_src`` is either a _SparseStack or a dense (K, n, n) array.
    Returns the new dense stack (K', n, n).
    """
    k = len(stack_src) if isinstance(stack_src, _SparseStack) else stack_src.shape[0]
    if k == 0:
        return np.zeros((0, n, n), dtype=complex)
    rows = np.empty((k, 2 * n * n))
    for lo in range(0, k, _CHUNK):
        hi = min(lo + _CHUNK, k)
        if isinstance(stack_src, _SparseStack):
            chunk = stack_src.densify(range(lo, hi))
        else:
            chunk = stack_src[lo:hi]
        rows[lo:hi] = realify(residual_fn(chunk))
    combos = nullspace_rows(rows, tol, exact=exact)
    if combos.shape[1] == 0:
        return np.zeros((0, n, n), dtype=complex)
    if isinstance(stack_src, _SparseStack):
        return stack_src.combine(combos)
    flat = stack_src.reshape(k, -1)
    return (combos.T @ flat).reshape(combos.shape[1], n, n)


def solve_matrix_subspace(
    n: int,
    sign_rules=(),
    comm_rules=(),
    tol: float = DEFAULT_TOL,
    initial: np.ndarray | None = None,
) -> OperatorSubspace:
    """Subspace of n x n matrices satisfying all rules.

    ``initial`` restricts the search to the span of the given stack (used to
    refine an already-computed space by extra conditions).
    """
    sign_rules = list(sign_rules)
    comm_rules = list(comm_rules)
    return _solve(n, sign_rules, comm_rules, tol, initial, exact=False)


def _solve(n, sign_rules, comm_rules, tol, initial, exact):
    if initial is not None:
        stack = np.asarray(initial, dtype=complex)
        pending_sign = sign_rules
    else:
        entry_rules = [_entry_rule(r, tol) for r in sign_rules]
        if all(er is not None for er in entry_rules):
            mask = _mask_from_rules(n, comm_rules, tol)
            stack = _SparseStack(n, _orbit_basis(n, entry_rules, mask))
            pending_sign = []
        else:
            if 2 * n * n > _DENSE_AMBIENT_LIMIT:
                raise SolverError(
                    f"ambient dimension {n} too large for the dense path; "
                    "structure matrices must be monomial"
                )
            mask = _mask_from_rules(n, comm_rules, tol)
            items = []
            for e in range(n * n):
                if mask[divmod(e, n)]:
                    continue
                items.append((np.array([e]), np.array([1.0 + 0j])))
                items.append((np.array([e]), np.array([1j])))
            stack = _SparseStack(n, items)
            pending_sign = sign_rules

    for rule in pending_sign:
        stack = _fold(stack, n, rule.residual, tol, exact)
    for rule in comm_rules:
        stack = _fold(stack, n, rule.residual, tol, exact)

    if isinstance(stack, _SparseStack):
        stack = stack.densify()
    # orthonormalize (folds keep coefficient combos orthonormal, but the
    # orbit basis itself is only blockwise orthonormal)
    rows, _ = _svd_row_basis(realify(stack), tol)
    stack = unrealify(rows, n)

    # verification against the original, unsquared constraints
    bad = _max_residual(stack, sign_rules, comm_rules)
    if bad > 100 * tol and not exact:
        return _solve(n, sign_rules, comm_rules, tol, initial, exact=True)
    if bad > 100 * tol:
        raise SolverError(f"verification failed: residual {bad:.3e} at tol {tol:.1e}")
    return OperatorSubspace(n, stack, tol)


def _max_residual(stack, sign_rules, comm_rules) -> float:
    if stack.shape[0] == 0:
        return 0.0
    worst = 0.0
    for lo in range(0, stack.shape[0], _CHUNK):
        chunk = stack[lo: lo + _CHUNK]
        for rule in list(sign_rules) + list(comm_rules):
            r = rule.residual(chunk)
            worst = max(worst, float(np.abs(r).max()))
    return worst
