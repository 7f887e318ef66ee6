"""A scikit-learn style wrapper around the whole pipeline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from deepja.mrs import extract_mrs
from deepja.parser import EDGE_LIMIT, ParseOptions, parse, unpack_nbest
from deepja.preproc import preprocess


def check_texts(X) -> list[str]:
    """A list of input strings; a bare string is rejected to avoid parsing characters."""
    if isinstance(X, str):
        raise TypeError("expected a sequence of strings, got a single string")
    if isinstance(X, np.ndarray):
        X = X.ravel().tolist()
    texts = list(X)
    for k, t in enumerate(texts):
        if not isinstance(t, str):
            raise TypeError(f"item {k} is {type(t).__name__}, expected str")
    return texts


def check_labels(y, n: int) -> np.ndarray:
    y = np.asarray(y).ravel()
    if len(y) != n:
        raise ValueError(f"got {len(y)} labels for {n} inputs")
    return y.astype(bool)


class DeepParser(BaseEstimator):
    """Parse strings with a grammar.

    ``fit`` loads the grammar (nothing is learned), ``predict`` gives the
    number of readings per input, ``transform`` the canonical MRS of the
    best reading (``None`` if there is none) and ``score`` the accuracy of
    "has a reading" against grammaticality labels.
    """

    def __init__(self, grammar=None, qc=True, edge_limit=EDGE_LIMIT, lexrule_depth=5):
        self.grammar = grammar
        self.qc = qc
        self.edge_limit = edge_limit
        self.lexrule_depth = lexrule_depth

    def _validate_params(self):
        if not isinstance(self.edge_limit, int) or self.edge_limit < 1:
            raise ValueError(f"edge_limit must be a positive int, got {self.edge_limit!r}")
        if not isinstance(self.lexrule_depth, int) or self.lexrule_depth < 0:
            raise ValueError(f"lexrule_depth must be a non-negative int, got {self.lexrule_depth!r}")

    def fit(self, X=None, y=None):
        self._validate_params()
        if self.grammar is None:
            from deepja.fragment import load_fragment

            self.grammar_ = load_fragment()
        elif isinstance(self.grammar, str):
            from deepja.grammar.grammar import load_grammar

            self.grammar_ = load_grammar(self.grammar)
        else:
            self.grammar_ = self.grammar
        self.options_ = ParseOptions(qc=bool(self.qc), edge_limit=self.edge_limit,
                                     lexrule_depth=self.lexrule_depth)
        return self

    def parse(self, text: str):
        check_is_fitted(self, "grammar_")
        prepped, spans = preprocess(text)
        return parse(prepped, self.grammar_, self.options_, spans=spans)

    def predict(self, X) -> np.ndarray:
        return np.array([len(self.parse(t).roots) for t in check_texts(X)], dtype=int)

    def transform(self, X) -> np.ndarray:
        out = []
        for t in check_texts(X):
            forest = self.parse(t)
            best = unpack_nbest(forest, 1)
            out.append(extract_mrs(forest.root_sign(best[0].edge), self.grammar_.hierarchy).text()
                       if best else None)
        return np.array(out, dtype=object)

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)

    def score(self, X, y) -> float:
        texts = check_texts(X)
        y = check_labels(y, len(texts))
        return float(np.mean((self.predict(texts) > 0) == y)) if len(texts) else 0.0
