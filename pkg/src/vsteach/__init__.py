"""Teaching version-space learners with local preferences."""

from .core import (
    EnumerationCapError,
    ForbiddenExampleError,
    InconsistentTeachingError,
    LabeledExample,
    OutOfBoundsError,
    TeachingError,
    TeachingTrace,
    Terminal,
    TieBreakMode,
    TieBreakPolicy,
    UnsupportedConfigurationError,
    VersionSpace,
    choice_set,
    consistent,
)
from .abstract import (
    TabularClass,
    random_state_independent_class,
    subset_removal_class,
)
from .experiments import ExperimentSpec, run_experiment, sample_scenario
from .lattice import LatticeClass, LatticeConfig
from .learner import (
    NoiseModel,
    choice_set_bruteforce,
    run_session,
    worst_case_cost,
)
from .optimal import CostReport, cost_report, dstar, nonadaptive_opt
from .teachers import (
    AdaLTeacher,
    AdaRTeacher,
    MyopicTeacher,
    RandTeacher,
    SCTeacher,
    build_non_l,
    build_non_r,
    check_thm2_conditions,
    compute_pbtd,
    compute_td,
    make_teacher,
    myopic_objective,
    preferred_version_space,
    rank_tilde_D,
)
from .tworec import Rect, TwoRec, TwoRecClass, TwoRecPrefConfig, dist_e

__all__ = [
    "AdaLTeacher",
    "AdaRTeacher",
    "CostReport",
    "ExperimentSpec",
    "MyopicTeacher",
    "NoiseModel",
    "RandTeacher",
    "SCTeacher",
    "TabularClass",
    "build_non_l",
    "build_non_r",
    "check_thm2_conditions",
    "choice_set_bruteforce",
    "compute_pbtd",
    "compute_td",
    "cost_report",
    "dstar",
    "make_teacher",
    "myopic_objective",
    "nonadaptive_opt",
    "preferred_version_space",
    "random_state_independent_class",
    "rank_tilde_D",
    "run_experiment",
    "run_session",
    "sample_scenario",
    "subset_removal_class",
    "worst_case_cost",
    "EnumerationCapError",
    "ForbiddenExampleError",
    "InconsistentTeachingError",
    "LabeledExample",
    "LatticeClass",
    "LatticeConfig",
    "OutOfBoundsError",
    "Rect",
    "TeachingError",
    "TeachingTrace",
    "Terminal",
    "TieBreakMode",
    "TieBreakPolicy",
    "TwoRec",
    "TwoRecClass",
    "TwoRecPrefConfig",
    "UnsupportedConfigurationError",
    "VersionSpace",
    "choice_set",
    "consistent",
    "dist_e",
]
