"""Weight lattice, picture transforms and residual certificates."""

from .lattice import (
    InadmissibleIndexError,
    KTypeIndex,
    indicial_roots,
    is_admissible,
    lambda_to_l,
    required_class,
    weights,
    window_indices,
)
from .pictures import (
    COMPACT,
    NONCOMPACT,
    R_PHYS,
    S_PHYS,
    GridSpec,
    PictureFunction,
    PoleError,
    combination,
    ktype_function,
    parity_residual,
    reduce_theta,
    to_compact,
    to_noncompact,
)
from .residuals import (
    Residual,
    SchrodingerResidual,
    cond_D_residual,
    schrodinger_fd,
    schrodinger_residual,
)

__all__ = [
    "KTypeIndex",
    "InadmissibleIndexError",
    "indicial_roots",
    "is_admissible",
    "lambda_to_l",
    "required_class",
    "weights",
    "window_indices",
    "COMPACT",
    "NONCOMPACT",
    "R_PHYS",
    "S_PHYS",
    "GridSpec",
    "PictureFunction",
    "PoleError",
    "combination",
    "ktype_function",
    "parity_residual",
    "reduce_theta",
    "to_compact",
    "to_noncompact",
    "Residual",
    "SchrodingerResidual",
    "cond_D_residual",
    "schrodinger_fd",
    "schrodinger_residual",
]
