"""Finite-dimensional algebraic backgrounds and their symmetry solvers.

The package builds graded Krein spaces and Clifford modules, assembles
algebraic backgrounds (a represented real algebra plus a fixed bimodule of
odd 1-form operators), and solves numerically for the two derived objects
the whole construction is about: the configuration space of admissible
Dirac operators and the Lie algebra of background symmetries.  A full
Standard-Model background with seeded Yukawa couplings is included, together
with the graded tensor product against a four-dimensional spinor fiber and a
classifier sorting fiber fields into physical sectors.
"""

from .linalg import (
    DEFAULT_TOL,
    CommutatorRule,
    IncrementalSpan,
    OperatorSubspace,
    SignRule,
    SolverError,
    solve_matrix_subspace,
)
from .krein import (
    AntilinearOp,
    GradedKreinSpace,
    KOSignature,
    NotAGradedRealKreinSpace,
    detect_ko_signs,
    is_compatible_fundamental_symmetry,
    krein_adjoint,
    krein_schmidt,
    opposite,
)
from .clifford import (
    CliffordModule,
    UnsupportedSignature,
    build_clifford,
    fiber_background,
    is_spin_group_element,
    time_orientation_form,
)
from .background import (
    AlgebraSpec,
    AlgebraicBackground,
    automorphism_lie_algebra,
    check_background,
    check_order0,
    check_order1,
    configuration_space,
    is_compatible,
    is_dirac_operator,
    is_regular,
    one_forms_of,
    right_rep,
)
from .sm import (
    SMModel,
    YukawaData,
    build_extended_background,
    build_sm_background,
    dirac_qm,
    is_generic,
    quaternion,
    random_yukawa,
)
from .symmetry import (
    GaugeGenerators,
    bimodule_automorphism_report,
    flavour_complement_report,
    flavour_lie_algebra,
    gauge_transform,
    generator_catalog,
    odd_centralizer,
    stabilizer_lie_algebra,
    standard_elements,
    vertical_symmetry_report,
)
from .tensor import (
    FiberModel,
    FieldDecomposition,
    ResidualNonzero,
    act_symmetry_on_field,
    classify_fiber_field,
    fiber_model,
    graded_tensor,
    graded_tensor_space,
)
from .serialize import ValidationError, load_background, save_background
from .suite import SuiteOptions, VerificationReport, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
