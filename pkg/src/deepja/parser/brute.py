"""Naive recursive enumeration of derivations, used as an oracle for the chart."""

from __future__ import annotations

from collections import Counter

from deepja.grammar.rules import apply_schema
from deepja.parser.chart import lexical_edges
from deepja.preproc.segment import segment
from deepja.tfs.fs import unify

MAX_UNARY = 4


def enumerate_derivations(text_or_lattice, grammar, spans=(), root=None):
    """Every root derivation, as a Counter of bracketed trees.

    No chart, no agenda, no quick check: each span is derived from all its
    splits, then closed under unary rules.
    """
    g = grammar
    lattice = text_or_lattice if hasattr(text_or_lattice, "tokens") else segment(text_or_lattice, g)
    lex, n = lexical_edges(g, lattice, spans)
    unary = [r for _, r in sorted(g.rules.items()) if r.arity == 1]
    binary = [r for _, r in sorted(g.rules.items()) if r.arity == 2]
    memo: dict[tuple, list] = {}

    def derive(i, j):
        if (i, j) in memo:
            return memo[(i, j)]
        found = [(item.fs, f'({item.label} "{surface}")')
                 for span, item, surface in lex if span == (i, j)]
        for k in range(i + 1, j):
            for left_fs, left_t in derive(i, k):
                for right_fs, right_t in derive(k, j):
                    for r in binary:
                        res = apply_schema(g, r, [left_fs, right_fs])
                        if res:
                            found.append((res, f"({r.name} {left_t} {right_t})"))
        layer = found
        for _ in range(MAX_UNARY):
            nxt = []
            for fs, t in layer:
                for r in unary:
                    res = apply_schema(g, r, [fs])
                    if res:
                        nxt.append((res, f"({r.name} {t})"))
            found = found + nxt
            layer = nxt
            if not layer:
                break
        memo[(i, j)] = found
        return found

    root_fs = next(iter(g.roots.values())) if root is None else g.roots[root]
    if n <= 0:
        return Counter()
    return Counter(t for fs, t in derive(0, n) if unify(g.hierarchy, fs, root_fs))
