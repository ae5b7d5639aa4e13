"""Continuous-time quantum walks of one and two particles on quantum-dot graphs."""

from .dynamics import (
    SpectralDecomposition,
    decompose,
    evolve,
    probability_series,
    propagate,
    transition_probability,
)
from .errors import (
    ConvergenceFailure,
    DimensionLimit,
    DimensionMismatch,
    EmptySeries,
    GraphSyntaxError,
    PauliViolation,
    QGWError,
    SweepPointError,
    UnknownParameter,
    ValidationError,
)
from .graphspec import (
    Edge,
    GraphSpec,
    Site,
    build_hamiltonian,
    builtin_braess4,
    builtin_braess10,
    parse_graph_spec,
    serialize_graph_spec,
)
from .metrics import (
    SweepRow,
    SweepSpec,
    first_peak_time,
    half_passage_time,
    log_mean_rate,
    sweep,
)
from .multiparticle import (
    BOSON,
    FERMION,
    PairState,
    Statistics,
    evolve_pair,
    initial_pair,
    p_perp,
    p_perp_series,
    pair_amplitude,
    pair_dimension,
    tensor_oracle_p_perp,
)
from .series import ProbabilitySeries, TimeGrid

__version__ = "0.1.0"
