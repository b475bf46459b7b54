"""Input validation for measure arrays fed to the estimator."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np
from sklearn.utils.validation import check_array


def is_exact_array(X) -> bool:
    """True when every entry is an int or Fraction (so arithmetic can stay exact)."""
    arr = np.asarray(X, dtype=object)
    return arr.size > 0 and all(
        isinstance(v, Rational) and not isinstance(v, bool) for v in arr.ravel()
    )


def check_measures(X, feature_names, exact=None):
    """Return a 2-D array of measures with columns in ``feature_names`` order.

    DataFrame-like inputs are reordered by column name; anything else must
    already have one column per feature. Exact inputs come back as an object
    array of Fractions, the rest as float64.
    """
    feature_names = list(feature_names)
    if hasattr(X, "columns"):
        missing = [n for n in feature_names if n not in list(X.columns)]
        if missing:
            raise ValueError(f"input is missing columns {missing}")
        X = X[feature_names].to_numpy(dtype=object)
    if exact is None:
        exact = is_exact_array(X)
    if exact:
        arr = check_array(X, dtype=None, ensure_all_finite=False, ensure_min_features=0)
        arr = np.vectorize(Fraction, otypes=[object])(arr)
    else:
        arr = check_array(X, dtype=np.float64, ensure_min_features=0)
    if arr.shape[1] != len(feature_names):
        raise ValueError(
            f"X has {arr.shape[1]} columns, expected {len(feature_names)} ({', '.join(feature_names)})"
        )
    return arr


def check_target(y, n_samples, exact):
    y = np.asarray(y, dtype=object if exact else np.float64).ravel()
    if y.shape[0] != n_samples:
        raise ValueError(f"y has {y.shape[0]} entries, expected {n_samples}")
    if exact:
        return np.array([Fraction(v) for v in y], dtype=object)
    return y
