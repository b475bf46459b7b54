"""scikit-learn style transformer producing pi-group features.

The dimensional analysis is "fitted" from a model; ``transform`` then maps
rows of measures (one column per non-dependent variable) to the values of
the dimensionless groups of one chosen adequate partition. This lets the
pi groups feed a regular scikit-learn pipeline.

>>> from pitheorem import load_example
>>> tr = PiGroupTransformer(load_example("pendulum")).fit()
>>> tr.get_feature_names_out().tolist()
['theta']
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .analysis import run_analysis
from .model import AnalysisModel, parse_model
from .render import pi_text
from .validation import check_measures, check_target, is_exact_array

__all__ = ["PiGroupTransformer"]


def _resolve_model(model) -> AnalysisModel:
    if isinstance(model, AnalysisModel):
        return model
    if isinstance(model, Path):
        return parse_model(model.read_text(encoding="utf-8"))
    if isinstance(model, str):
        return parse_model(model)
    raise TypeError("model must be an AnalysisModel, a model document string, or a Path")


def _power(v, e):
    if isinstance(v, Fraction):
        return v ** e
    return np.power(v, float(e))


class PiGroupTransformer(TransformerMixin, BaseEstimator):
    """Map measures to the pi groups of an adequate partition.

    Parameters
    ----------
    model : AnalysisModel, str or Path
        The dimensional model. A string is parsed as a model document.
    dependent : str, optional
        Overrides the model's dependent variable.
    partition : int, default=0
        Which adequate partition (in enumeration order) to use.
    normalize : bool, default=False
        Use the lcm-normalized system (only affects ``target_transform``).
    """

    def __init__(self, model=None, dependent=None, partition=0, normalize=False):
        self.model = model
        self.dependent = dependent
        self.partition = partition
        self.normalize = normalize

    def fit(self, X=None, y=None):
        report = run_analysis(
            _resolve_model(self.model), normalize=self.normalize, dependent=self.dependent
        )
        if not report.system.equations:
            raise ValueError(report.system.diagnostic)
        if not 0 <= self.partition < len(report.system.equations):
            raise ValueError(
                f"partition={self.partition} out of range; "
                f"{len(report.system.equations)} adequate partition(s) exist"
            )
        t = report.tuple
        self.report_ = report
        self.equation_ = report.system.equations[self.partition]
        self.feature_names_in_ = np.array(
            [n for i, n in enumerate(t.names) if i != t.dependent_index], dtype=object
        )
        self.n_features_in_ = len(self.feature_names_in_)
        self.rank_ = report.rank
        if X is not None:
            check_measures(X, self.feature_names_in_)
        return self

    def _columns(self, X):
        names = list(self.feature_names_in_)
        arr = check_measures(X, names)
        return arr, {n: arr[:, j] for j, n in enumerate(names)}

    def _check_basis_nonzero(self, cols):
        t = self.report_.tuple
        for i in self.equation_.partition.a_indices:
            if np.any(cols[t.names[i]] == 0):
                raise ValueError(f"basis variable {t.names[i]!r} has a zero measure")

    def transform(self, X):
        """Values of ``pi_k = y_k^W_k / prod x_j^W_kj``, one column per group."""
        check_is_fitted(self, "report_")
        arr, cols = self._columns(X)
        self._check_basis_nonzero(cols)
        t, eq = self.report_.tuple, self.equation_
        exact = arr.dtype == object
        out = np.empty((arr.shape[0], len(eq.pi_groups)), dtype=object if exact else np.float64)
        for k, g in enumerate(eq.pi_groups):
            for s in range(arr.shape[0]):
                v = _power(cols[t.names[g.subject_index]][s], g.row.w0)
                for i, w in zip(eq.partition.a_indices, g.row.wj):
                    if w:
                        v = v / _power(cols[t.names[i]][s], w)
                out[s, k] = v
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "report_")
        return np.array(
            [pi_text(g, self.report_, self.equation_) for g in self.equation_.pi_groups], dtype=object
        )

    def target_transform(self, X, y):
        """Dimensionless target ``y^W_0 / prod x_j^W_0j`` (the value of ``Psi``).

        With ``normalize=True`` the partition's ``Lambda`` power is applied.
        """
        check_is_fitted(self, "report_")
        arr, cols = self._columns(X)
        self._check_basis_nonzero(cols)
        y = check_target(y, arr.shape[0], arr.dtype == object and is_exact_array(y))
        t, eq = self.report_.tuple, self.equation_
        lam = self.report_.system.lambda_for(self.partition)
        out = []
        for s in range(arr.shape[0]):
            v = _power(y[s], eq.lhs_row.w0 * lam)
            for i, w in zip(eq.partition.a_indices, eq.lhs_row.wj):
                if w:
                    v = v / _power(cols[t.names[i]][s], w * lam)
            out.append(v)
        return np.array(out, dtype=object if y.dtype == object else np.float64)
