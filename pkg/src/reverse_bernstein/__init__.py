"""Sharp constants, extremal functions and numerical verification of the
reverse Bernstein inequality on the circle."""

__version__ = "0.1.0"

from .constants import B, C, D_exact, cross_validate, euler_number, poly_P
from .fourier import DomainError, TrigSeries
from .piecewise import CirclePiecewisePoly, PiScaled
from .waves import make_c, make_extremal, make_J, make_s

__all__ = [
    "B",
    "C",
    "CirclePiecewisePoly",
    "D_exact",
    "DomainError",
    "PiScaled",
    "TrigSeries",
    "__version__",
    "cross_validate",
    "euler_number",
    "make_J",
    "make_c",
    "make_extremal",
    "make_s",
    "poly_P",
]
