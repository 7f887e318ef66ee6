"""Ranking analyses by hand-coded preferences."""

from __future__ import annotations

from dataclasses import dataclass

from deepja.parser.chart import Edge, Forest, derivation, lb_bonus


@dataclass(frozen=True)
class Reading:
    edge: Edge
    score: int

    @property
    def tree(self) -> str:
        return derivation(self.edge)


def preference_table(grammar) -> dict[str, int]:
    """Default weights: schemata, lexical rules and lexical entries."""
    prefs = dict(grammar.preferences)
    prefs.update({n: r.weight for n, r in grammar.lexrules.items()})
    prefs.update({n: e.weight for n, e in grammar.lexicon.items()})
    return prefs


def score(edge: Edge, prefs: dict, grammar) -> int:
    """Sum of preference weights over the derivation plus left-branching bonuses."""
    if edge.lexical:
        return sum(prefs.get(part, 0) for part in edge.rule.split("+"))
    total = prefs.get(edge.rule, 0) + lb_bonus(grammar, edge.rule, edge.daughters)
    return total + sum(score(d, prefs, grammar) for d in edge.daughters)


def unpack_nbest(forest: Forest, n: int | None = None, prefs: dict | None = None) -> list[Reading]:
    """Analyses sorted by descending score; ties go to the smaller edge id."""
    g = forest.grammar
    if prefs is None:
        ranked = [Reading(e, e.score) for e in forest.roots]
    else:
        ranked = [Reading(e, score(e, prefs, g)) for e in forest.roots]
    ranked.sort(key=lambda r: (-r.score, r.edge.id))
    return ranked if n is None else ranked[:n]


def is_left_branching(edge: Edge, grammar) -> bool:
    """No left-branching-eligible rule has another such rule as its right daughter."""
    if edge.lexical:
        return True
    r = grammar.rules.get(edge.rule)
    if r is not None and r.lb and len(edge.daughters) == 2:
        right = grammar.rules.get(edge.daughters[1].rule)
        if right is not None and right.lb:
            return False
    return all(is_left_branching(d, grammar) for d in edge.daughters)
