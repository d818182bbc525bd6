"""Two contact-interacting bosons in a 1D quartic double well, solved on a sinc-DVR grid."""

__version__ = "0.1.0"

from .correlations import (  # noqa: E402
    momentum_distribution,
    momentum_distribution_direct,
    natural_orbitals,
    rspdm,
    schmidt_number,
    von_neumann_entropy,
)
from .dvr import Grid, kinetic_matrix, make_grid, potential_vector  # noqa: E402
from .estimators import (  # noqa: E402
    BandSpectrum,
    BoseHubbardDimer,
    RSPDMAnalyzer,
    SingleParticleSolver,
    TwoBosonSolver,
)
from .exceptions import (  # noqa: E402
    BosonPairError,
    ClassificationError,
    ConfigError,
    ConvergenceError,
    InvalidGridError,
    InvalidParameterError,
    PreconditionError,
    SingularityError,
    UndefinedGroundError,
)
from .hubbard import HubbardParams, analytic_eigensystem, dimer_entropy  # noqa: E402
from .single import solve_single  # noqa: E402
from .two_body import lowest_band, solve_band  # noqa: E402

__all__ = [
    "BandSpectrum", "BoseHubbardDimer", "BosonPairError", "ClassificationError", "ConfigError",
    "ConvergenceError", "Grid", "HubbardParams", "InvalidGridError", "InvalidParameterError",
    "PreconditionError", "RSPDMAnalyzer", "SingleParticleSolver", "SingularityError",
    "TwoBosonSolver", "UndefinedGroundError", "analytic_eigensystem", "dimer_entropy",
    "kinetic_matrix", "lowest_band", "make_grid", "momentum_distribution",
    "momentum_distribution_direct", "natural_orbitals", "potential_vector", "rspdm",
    "schmidt_number", "solve_band", "solve_single", "von_neumann_entropy",
]
