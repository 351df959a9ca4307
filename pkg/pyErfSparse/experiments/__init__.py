"""
Experiments: metrics, the gNSP falsifier and the benchmark harnesses.
"""

from pyErfSparse.experiments.gnsp import GnspVerdict, gnsp_falsifier
from pyErfSparse.experiments.harness import (
    HarnessResult,
    run_noisy,
    run_sigma_sweep,
    run_success_rate,
    run_superres,
    tune_lambda_scale,
)
from pyErfSparse.experiments.metrics import (
    oracle_least_squares,
    oracle_mse,
    relative_error,
    squared_error,
    success,
)
from pyErfSparse.experiments.spec import ExperimentKind, ExperimentSpec, TrialRecord
