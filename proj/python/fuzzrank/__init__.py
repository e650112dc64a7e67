"""Bootstrap fuzzy-set feature ranking.

Thin Python facade over the C++ core.  All heavy lifting happens in the
compiled ``_core`` module; this package just re-exports its public names.
"""

from ._core import (
    Dataset,
    SdConvention,
    accuracy_curves,
    compute_apc,
    compute_asd,
    cross_fold_stability,
    discretize,
    kfold_split,
    load_csv,
    load_wbc,
    normalize_scores,
    pearson,
    rank_features,
    score,
    subsample,
    subsample_stability,
)

__all__ = [
    "Dataset",
    "SdConvention",
    "accuracy_curves",
    "compute_apc",
    "compute_asd",
    "cross_fold_stability",
    "discretize",
    "kfold_split",
    "load_csv",
    "load_wbc",
    "normalize_scores",
    "pearson",
    "rank_features",
    "score",
    "subsample",
    "subsample_stability",
]

__version__ = "0.1.0"
