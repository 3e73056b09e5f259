"""Wigner-function negativity as a nonclassicality indicator."""
from .kernels import BACKEND
from .negativity import (
    ConvergenceWarning,
    NegativityResult,
    PhaseGrid,
    QuadratureConfig,
    delta_from_nu,
    delta_indicator,
    evaluate_grid,
    nu_from_delta,
    support_rectangle,
)
from .states import (
    Cat,
    Coherent,
    Fock,
    SqueezedDisplacedFock,
    SqueezedVacuum,
    format_state,
    parse_state,
    wigner,
)

__version__ = "0.1.0"
