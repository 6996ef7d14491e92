"""scikit-learn style front end: fit on generators, transform query points to codes."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .arrangement import signs_at
from .chroma import code_from_signs
from .diagram import build_diagram
from .exact_geom import Point2
from .exceptions import InputError


def check_exact_points(X, min_points: int = 1) -> tuple[Point2, ...]:
    """Validate an ``(m, 2)`` array-like of exact coordinates.

    Rows may hold ints, strings (``"3"``, ``"-0.25"``, ``"7/3"``), Fractions,
    Decimals or floats with an exact binary value. Nothing is rounded.
    """
    if isinstance(X, np.ndarray):
        if X.ndim != 2 or X.shape[1] != 2:
            raise InputError(f"expected an (m, 2) array, got shape {X.shape}")
        rows = X.tolist()
    else:
        try:
            rows = [list(r) for r in X]
        except TypeError as exc:
            raise InputError("points must be an iterable of (x, y) pairs") from exc
    if len(rows) < min_points:
        raise InputError(f"need at least {min_points} point(s), got {len(rows)}")
    out = []
    for r in rows:
        if len(r) != 2:
            raise InputError(f"point {r!r} does not have two coordinates")
        out.append(Point2.of(*r))
    return tuple(out)


class ChromaticDiagram(BaseEstimator, TransformerMixin):
    """Full-coded diagram of a generator set.

    ``fit`` builds the arrangement of all perpendicular bisectors of ``X``.
    ``transform`` maps query points to their chromatic codes and ``predict``
    to the index of the particle (cell, edge or vertex) that contains them.

    Parameters
    ----------
    natural_units : bool
        Return codes from ``transform`` as floats in natural units instead of
        doubled integers.
    """

    def __init__(self, natural_units: bool = False):
        self.natural_units = natural_units

    def fit(self, X, y=None):
        generators = check_exact_points(X, min_points=2)
        self.diagram_ = build_diagram(generators)
        self.n_generators_ = len(generators)
        self.n_features_in_ = 2
        return self

    def _codes(self, X):
        check_is_fitted(self, "diagram_")
        d = self.diagram_
        pairs = d.arrangement.pairs
        return [code_from_signs(signs_at(p, d.bisectors), pairs, d.n) for p in check_exact_points(X)]

    def transform(self, X):
        codes = np.array(self._codes(X), dtype=np.int64).reshape(-1, self.n_generators_)
        return codes / 2 if self.natural_units else codes

    def predict(self, X):
        codes = self._codes(X)
        order = {p.code: i for i, p in enumerate(self.diagram_.particles)}
        return np.array([order[c] for c in codes], dtype=np.int64)

    def particle_kinds(self, X) -> list[str]:
        codes = self._codes(X)
        return [self.diagram_.index[c].kind.value for c in codes]
