"""scikit-learn style wrappers around normal forms, invariant features and the stationary search."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from ._validation import check_array_2d, check_invariant
from .cartan import canonicalize, normal_form
from .invariants import fingerprint, fingerprint_array, fingerprint_cartan
from .stationary import multistart_search, tangential_residual, verify_point


class CartanNormalForm(TransformerMixin, BaseEstimator):
    """Map four-qubit states (rows of 16 amplitudes) to canonical Cartan points."""

    def __init__(self, require_critical=True, tol=1e-8):
        self.require_critical = require_critical
        self.tol = tol

    def fit(self, X, y=None):
        X = check_array_2d(X, 16)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        if not hasattr(self, "n_features_in_"):
            raise NotFittedError("CartanNormalForm is not fitted")
        X = check_array_2d(X, 16)
        return np.array([normal_form(row, self.require_critical, self.tol).z for row in X])


class InvariantFeatures(TransformerMixin, BaseEstimator):
    """(|F1|, |F3|, |F4|, |F6|[, |Hdet|]) of each normalized row.

    Rows are full states (16 amplitudes) or Cartan points (4 coordinates),
    selected by ``space``.
    """

    def __init__(self, space="state", with_hdet=False):
        self.space = space
        self.with_hdet = with_hdet

    def _width(self):
        if self.space not in ("state", "cartan"):
            raise ValueError(f"space must be 'state' or 'cartan', got {self.space!r}")
        return 16 if self.space == "state" else 4

    def fit(self, X, y=None):
        X = check_array_2d(X, self._width())
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        if not hasattr(self, "n_features_in_"):
            raise NotFittedError("InvariantFeatures is not fitted")
        X = check_array_2d(X, self._width())
        fn = fingerprint if self.space == "state" else fingerprint_cartan
        cols = 5 if self.with_hdet else 4
        out = np.empty((len(X), cols))
        for i, row in enumerate(X):
            fp = fn(row, with_hdet=self.with_hdet)
            out[i, :4] = fp.as_array()
            if self.with_hdet:
                out[i, 4] = fp.hdet
        return out

    def get_feature_names_out(self, input_features=None):
        names = ["F1", "F3", "F4", "F6"] + (["Hdet"] if self.with_hdet else [])
        return np.array(names, dtype=object)


class StationaryPointSearch(BaseEstimator):
    """Classes of nonvanishing stationary points of |F3| or |F4|.

    ``fit(None)`` runs the multistart search. ``fit(X)`` instead verifies the
    candidate Cartan points in ``X`` and keeps one per fingerprint class.
    ``predict`` returns the class index of stationary points and -1 otherwise.

    Attributes
    ----------
    reports_ : list of StationaryReport
    points_ : ndarray of shape (n_classes, 4)
    fingerprints_ : ndarray of shape (n_classes, 4)
    """

    def __init__(self, invariant="F3", n_starts=20_000, seed=0, n_jobs=1, dedup_tol=1e-6, tol=1e-8):
        self.invariant = invariant
        self.n_starts = n_starts
        self.seed = seed
        self.n_jobs = n_jobs
        self.dedup_tol = dedup_tol
        self.tol = tol

    def fit(self, X=None, y=None):
        name = check_invariant(self.invariant)
        if X is None:
            reports = multistart_search(name, self.n_starts, self.seed, self.n_jobs, dedup_tol=self.dedup_tol)
        else:
            X = check_array_2d(X, 4)
            reports, seen = [], []
            for row in X:
                rep = verify_point(canonicalize(row), name, tol=self.tol)
                if not rep.stationary:
                    continue
                fp = fingerprint_array(rep.point.z)[0]
                if any(np.abs(fp - s).max() < self.dedup_tol for s in seen):
                    continue
                seen.append(fp)
                reports.append(rep)
        self.reports_ = reports
        self.points_ = np.array([r.point.z for r in reports]).reshape(-1, 4)
        self.fingerprints_ = fingerprint_array(self.points_) if reports else np.empty((0, 4))
        return self

    def predict(self, X):
        if not hasattr(self, "reports_"):
            raise NotFittedError("StationaryPointSearch is not fitted")
        X = check_array_2d(X, 4)
        out = np.full(len(X), -1, dtype=int)
        if not len(self.reports_):
            return out
        fps = fingerprint_array(X)
        for i, (row, fp) in enumerate(zip(X, fps)):
            dist = np.abs(self.fingerprints_ - fp).max(axis=1)
            j = int(np.argmin(dist))
            if dist[j] < self.dedup_tol and tangential_residual(row, self.invariant) < self.tol:
                out[i] = j
        return out
