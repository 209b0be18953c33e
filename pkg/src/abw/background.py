"""Algebraic backgrounds and the solvers attached to them.

An algebraic background packages a graded Krein space, a real algebra
represented on it by even operators, and a fixed bimodule of odd "1-form"
operators.  No Dirac operator is part of the data: the space of admissible
Dirac operators (Krein selfadjoint, odd, anticommuting with the real
structure, with all commutators against the algebra falling inside the
1-form bimodule) is the *configuration space*, and is computed here by the
staged real-linear solver.  The infinitesimal symmetries (anti-selfadjoint
even operators commuting with the real structure that normalize the algebra
and stabilize the bimodule) form the automorphism Lie algebra.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .krein import GradedKreinSpace, opposite
from .linalg import (
    CommutatorRule,
    IncrementalSpan,
    OperatorSubspace,
    SignRule,
    SolverError,
    as_matrix,
    frob,
    solve_matrix_subspace,
)

__all__ = [
    "AlgebraSpec",
    "AlgebraicBackground",
    "BackgroundReport",
    "check_background",
    "right_rep",
    "check_order0",
    "check_order1",
    "one_forms_of",
    "is_dirac_operator",
    "is_compatible",
    "is_regular",
    "configuration_space",
    "automorphism_lie_algebra",
]

_SUMMAND_DIMS = {"R": lambda n: 1, "C": lambda n: 2, "H": lambda n: 4,
                 "matR": lambda n: n * n, "matC": lambda n: 2 * n * n}


@dataclass(frozen=True)
class AlgebraSpec:
    """A finite direct sum of simple real algebras with named generators.

    ``summands`` is a tuple of (kind, n) pairs with kind in
    {"R", "C", "H", "matR", "matC"}; ``generators`` names a finite set whose
    real algebra closure is the whole algebra.  ``real_dim_override`` covers
    constructions (tensor products) whose summand decomposition is not
    tracked explicitly.
    """

    summands: tuple
    generators: tuple
    real_dim_override: int | None = None

    @property
    def real_dim(self) -> int:
        if self.real_dim_override is not None:
            return self.real_dim_override
        total = 0
        for kind, n in self.summands:
            if kind not in _SUMMAND_DIMS:
                raise ValueError(f"unknown summand kind {kind!r}")
            total += _SUMMAND_DIMS[kind](n)
        return total


class AlgebraicBackground:
    """Graded Krein space + represented algebra + 1-form bimodule."""

    def __init__(
        self,
        space: GradedKreinSpace,
        algebra: AlgebraSpec,
        rep: dict,
        omega1: OperatorSubspace,
    ):
        self.space = space
        self.algebra = algebra
        self.rep = {name: as_matrix(m) for name, m in rep.items()}
        self.omega1 = omega1
        self._algebra_span = None
        if set(rep) != set(algebra.generators):
            raise ValueError("represented generators do not match the algebra's generator list")

    @property
    def dim(self) -> int:
        return self.space.dim

    def rep_of(self, g) -> np.ndarray:
        """Representation of a generator name, or pass a matrix through."""
        if isinstance(g, str):
            try:
                return self.rep[g]
            except KeyError:
                raise KeyError(f"unknown generator {g!r}") from None
        return as_matrix(g)

    def rep_matrices(self) -> list:
        return [self.rep[name] for name in self.algebra.generators]

    def algebra_span(self, max_rounds: int = 20) -> OperatorSubspace:
        """Real span of the represented algebra, saturated under products."""
        if self._algebra_span is not None:
            return self._algebra_span
        gens = self.rep_matrices()
        inc = IncrementalSpan(self.dim, self.space.tol)
        scales = {id(g): frob(g) for g in gens}
        fresh = [d for g in gens if (d := inc.add(g, frob(g))) is not None]
        for _ in range(max_rounds):
            grown = []
            for g in gens:
                for b in fresh:
                    # basis directions are unit norm, so the product scale
                    # is the generator's
                    d = inc.add(g @ b, scales[id(g)])
                    if d is not None:
                        grown.append(d)
            if not grown:
                self._algebra_span = inc.subspace()
                return self._algebra_span
            fresh = grown
        raise SolverError("algebra span did not stabilize; generator list suspect")

    def digest(self, extra: bytes = b"") -> bytes:
        h = hashlib.sha256()
        for m in (self.space.eta, self.space.chi, self.space.C.mat):
            h.update(np.ascontiguousarray(m).tobytes())
        for name in sorted(self.rep):
            h.update(name.encode())
            h.update(np.ascontiguousarray(self.rep[name]).tobytes())
        h.update(extra)
        return h.digest()


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


@dataclass
class BackgroundReport:
    items: list = field(default_factory=list)

    def add(self, name: str, passed: bool, residual: float):
        self.items.append({"name": name, "passed": bool(passed), "residual": float(residual)})

    @property
    def passed(self) -> bool:
        return all(item["passed"] for item in self.items)

    def __repr__(self):
        lines = [
            f"  [{'ok' if i['passed'] else 'FAIL'}] {i['name']} (residual {i['residual']:.2e})"
            for i in self.items
        ]
        return "BackgroundReport(\n" + "\n".join(lines) + "\n)"


def check_background(b: AlgebraicBackground) -> BackgroundReport:
    """Evaluate every background axiom; failures land in the report."""
    rep = b.rep_matrices()
    chi = b.space.chi
    tol = b.space.tol
    report = BackgroundReport()

    span = b.algebra_span()
    report.add(
        "faithful representation",
        span.dim == b.algebra.real_dim,
        abs(span.dim - b.algebra.real_dim),
    )

    res = max((frob(chi @ m - m @ chi) / max(frob(m), 1.0) for m in rep), default=0.0)
    report.add("algebra acts by even operators", res <= tol, res)

    res = 0.0
    for w in b.omega1.basis:
        res = max(res, frob(chi @ w + w @ chi) / max(frob(w), 1.0))
    report.add("one-forms are odd", res <= tol, res)

    res = 0.0
    for g in rep:
        for w in b.omega1.basis:
            res = max(res, b.omega1.distance(g @ w) / max(frob(g @ w), 1.0))
            res = max(res, b.omega1.distance(w @ g) / max(frob(w @ g), 1.0))
    report.add("one-forms form a bimodule", res <= 10 * tol, res)
    return report


def right_rep(b: AlgebraicBackground, g) -> np.ndarray:
    """The right action of a generator (or matrix): the opposite of its rep."""
    return opposite(b.rep_of(g), b.space)


def check_order0(b: AlgebraicBackground, tol: float | None = None) -> bool:
    """Right representation commutes with the left one on all generator pairs."""
    t = b.space.tol if tol is None else tol
    rep = b.rep_matrices()
    ops = [right_rep(b, g) for g in b.algebra.generators]
    for ro in ops:
        for m in rep:
            if frob(ro @ m - m @ ro) > t * max(frob(ro) * frob(m), 1.0):
                return False
    return True


def check_order1(b: AlgebraicBackground, tol: float | None = None) -> bool:
    """Right representation commutes with every 1-form."""
    t = b.space.tol if tol is None else tol
    ops = [right_rep(b, g) for g in b.algebra.generators]
    for ro in ops:
        for w in b.omega1.basis:
            if frob(ro @ w - w @ ro) > t * max(frob(ro) * frob(w), 1.0):
                return False
    return True


# ---------------------------------------------------------------------------
# Dirac operators
# ---------------------------------------------------------------------------


def _dirac_sign_rules(space: GradedKreinSpace) -> list:
    eta, chi, cm = space.eta, space.chi, space.C.mat
    return [
        SignRule(eta, eta, 1, conj=True, transpose=True),   # Krein selfadjoint
        SignRule(chi, chi, -1),                              # odd
        SignRule(cm, cm, -1, conj=True),                     # anticommutes with C
    ]


def is_dirac_operator(b: AlgebraicBackground, d, tol: float | None = None) -> bool:
    """Structural predicates only: Krein selfadjoint, odd, C-anticommuting."""
    d = as_matrix(d)
    t = b.space.tol if tol is None else tol
    scale = max(frob(d), 1.0)
    return all(frob(rule.residual(d[None])[0]) <= t * scale for rule in _dirac_sign_rules(b.space))


def one_forms_of(b: AlgebraicBackground, d, max_rounds: int = 20) -> OperatorSubspace:
    """Bimodule generated by commutators of d with the algebra."""
    d = as_matrix(d)
    span_a = b.algebra_span()
    inc = IncrementalSpan(b.dim, b.space.tol)
    seed_scale = 2.0 * frob(d)
    fresh = [x for p in span_a.basis if (x := inc.add(d @ p - p @ d, seed_scale)) is not None]
    for _ in range(max_rounds):
        grown = []
        for p in span_a.basis:
            for w in fresh:
                for prod in (p @ w, w @ p):
                    x = inc.add(prod, 1.0)
                    if x is not None:
                        grown.append(x)
        if not grown:
            return inc.subspace()
        fresh = grown
    raise SolverError("generated 1-form bimodule did not stabilize")


def is_compatible(b: AlgebraicBackground, d, tol: float | None = None) -> bool:
    """All commutators with the algebra stay inside the 1-form bimodule."""
    d = as_matrix(d)
    t = b.space.tol if tol is None else tol
    for p in b.algebra_span().basis:
        c = d @ p - p @ d
        if not b.omega1.contains(c, t):
            return False
    return True


def is_regular(b: AlgebraicBackground, d, tol: float | None = None) -> bool:
    return is_compatible(b, d, tol) and one_forms_of(b, d).dim == b.omega1.dim


def configuration_space(b: AlgebraicBackground) -> OperatorSubspace:
    """All admissible Dirac operators, as a real subspace.

    Structural constraints are parametrized first; the bimodule-membership
    conditions are then imposed generator by generator (commuting with the
    whole algebra follows from commuting with generators because the
    bimodule is stable under the algebra actions).
    """
    rules = [CommutatorRule(g, b.omega1) for g in b.rep_matrices()]
    return solve_matrix_subspace(
        b.dim, _dirac_sign_rules(b.space), rules, tol=b.space.tol
    )


# cache for the 1-form-independent stage of the automorphism solver
_AUT_STAGE_CACHE: dict = {}
_AUT_STAGE_CACHE_MAX = 8


def _symmetry_sign_rules(space: GradedKreinSpace) -> list:
    eta, chi, cm = space.eta, space.chi, space.C.mat
    return [
        SignRule(eta, eta, -1, conj=True, transpose=True),  # anti Krein selfadjoint
        SignRule(chi, chi, 1),                               # even
        SignRule(cm, cm, 1, conj=True),                      # commutes with C
    ]


def automorphism_lie_algebra(
    b: AlgebraicBackground, vertical_only: bool = False
) -> OperatorSubspace:
    """Infinitesimal background symmetries.

    Anti Krein-selfadjoint even operators commuting with the real structure
    that normalize the represented algebra (for vertical symmetries:
    commute with it) and stabilize the 1-form bimodule.  The 1-form
    conditions are folded last, so the heavier algebra stage can be reused
    across backgrounds differing only in their bimodule.
    """
    key = b.digest(extra=b"vertical" if vertical_only else b"full")
    stage = _AUT_STAGE_CACHE.get(key)
    if stage is None:
        span_a = b.algebra_span()
        target = None if vertical_only else span_a
        rules = [CommutatorRule(g, target) for g in b.rep_matrices()]
        stage = solve_matrix_subspace(
            b.dim, _symmetry_sign_rules(b.space), rules, tol=b.space.tol
        )
        if len(_AUT_STAGE_CACHE) >= _AUT_STAGE_CACHE_MAX:
            _AUT_STAGE_CACHE.clear()
        _AUT_STAGE_CACHE[key] = stage
    if b.omega1.dim == 0:
        return stage
    omega_rules = [CommutatorRule(w, b.omega1) for w in b.omega1.basis]
    return solve_matrix_subspace(
        b.dim, (), omega_rules, tol=b.space.tol, initial=stage.basis
    )
