"""Generator actions on K-types, ladder verification and group actions."""

from .crosscheck import apply_fd, cross_picture_deviation, noncompact_form
from .generators import GeneratorTag, apply_compact, apply_to_jet
from .group import (
    SUBGROUPS,
    ChartError,
    DerivativeCheck,
    ExpQuadraticProbe,
    DEFAULT_PROBE,
    act,
    apply_operator,
    derivative_check,
    group_action,
    heis_act,
    sl2_act,
    subgroup_epsilon,
    subgroup_matrix,
    subgroup_operator,
)
from .ladder import (
    LADDER_GENERATORS,
    LadderTerm,
    VerificationRecord,
    extract_coefficients,
    ladder_terms,
    probe_grid,
    verify_ladder,
)

__all__ = [
    "GeneratorTag",
    "apply_compact",
    "apply_to_jet",
    "apply_fd",
    "cross_picture_deviation",
    "noncompact_form",
    "SUBGROUPS",
    "ChartError",
    "DerivativeCheck",
    "ExpQuadraticProbe",
    "DEFAULT_PROBE",
    "act",
    "apply_operator",
    "derivative_check",
    "group_action",
    "heis_act",
    "sl2_act",
    "subgroup_epsilon",
    "subgroup_matrix",
    "subgroup_operator",
    "LADDER_GENERATORS",
    "LadderTerm",
    "VerificationRecord",
    "extract_coefficients",
    "ladder_terms",
    "probe_grid",
    "verify_ladder",
]
