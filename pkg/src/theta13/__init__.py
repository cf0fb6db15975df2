"""Numerical toolkit for the (1,3)-polarized abelian surface A_Z and its theta divisor C_A."""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .torus import (  # noqa: E402
    ZERO_CHAR,
    RealCharacteristic,
    SiegelMatrix,
    TorusPoint,
    make_siegel,
    parity,
    polarization_kernel,
    random_siegel,
    reduce_mod_lattice,
    two_torsion_points,
)
from .theta import (  # noqa: E402
    DEFAULT_EPS,
    ComplexCharacteristic,
    canonical_theta,
    classical_theta,
    classical_theta_batch,
    classical_theta_gradient,
    eigenspace_dims,
    inverse_formula_residual,
    quasiperiodicity_residual,
)
from .divisor import (  # noqa: E402
    product_components,
    theta_A,
    theta_A_batch,
    theta_A_canonical,
    translates_distinct,
    two_torsion_census,
)
from .zeros import (  # noqa: E402
    ComplexLine,
    Window,
    count_zeros_on_rectangle,
    locate_zeros_on_line,
    sample_curve_points,
    smoothness_report,
)
from .oracle import direct_theta, enumerate_parities, fd_gradient  # noqa: E402
