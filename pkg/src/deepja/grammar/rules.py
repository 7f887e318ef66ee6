"""Applying lexical rules and schemata, including the adjacency principle.

Semantic and contextual lists (``CONT.RELS``, ``CONT.HCONS``,
``CONTEXT.BACKGROUND``) are not threaded with difference lists. The mother's
list is built here: the daughters' elements in order, followed by whatever
the rule itself contributes. ``PHON`` is built the same way. Every
daughter also shares ``CONTEXT.EMPATHY`` and ``CONTEXT.C-INDICES`` with its
mother.
"""

from __future__ import annotations

from dataclasses import dataclass

from deepja.grammar.grammar import Grammar, LexicalRule, RuleSchema, phon_of
from deepja.tfs.fs import FeatureStructure, Session, _Clash, list_nodes
from deepja.tfs.hierarchy import TypeHierarchy

SLOTS = ("SUBJ", "OBJ", "OBJ2", "SPR")
SAT_PATH = ("SYNSEM", "LOCAL", "SUBCAT", "SAT")
APPENDED = (
    ("SYNSEM", "LOCAL", "CONT", "RELS"),
    ("SYNSEM", "LOCAL", "CONT", "HCONS"),
    ("CONTEXT", "BACKGROUND"),
)
SHARED_CONTEXT = ("EMPATHY", "C-INDICES")


@dataclass(frozen=True)
class RuleFailure:
    """Why a rule did not apply. Falsy."""

    reason: str  # unification-clash | adjacency-violation | orthography | arity
    detail: str = ""
    path: tuple = ()

    def __bool__(self):
        return False

    def __str__(self):
        return f"{self.reason}: {self.detail}" if self.detail else self.reason


@dataclass(frozen=True)
class Adjacency:
    """Outcome of the adjacency check; truthy when the combination is allowed."""

    ok: bool
    clause: str = ""
    slots: tuple = ()

    def __bool__(self):
        return self.ok


def adjacent_slots(h: TypeHierarchy, sat: dict) -> tuple:
    return tuple(s for s in SLOTS
                 if sat.get(s) is not None and h.subsumes("unsat-adj", sat[s]))


def _adjacency(h, kind, head_sat, nonhead_sat, realized) -> Adjacency:
    if nonhead_sat is not None:
        bad = adjacent_slots(h, nonhead_sat)
        if bad:
            return Adjacency(False, "a", bad)
    head_adj = adjacent_slots(h, head_sat)
    if kind == "head-complement":
        extra = tuple(s for s in head_adj if s != realized) if realized else head_adj[1:]
        if extra:
            return Adjacency(False, "b", extra)
    elif kind in ("head-adjunct", "relative-clause") and head_adj:
        return Adjacency(False, "c", head_adj)
    return Adjacency(True)


def _sat_of(fs: FeatureStructure) -> dict:
    return {s: fs.get(SAT_PATH + (s,)) for s in SLOTS}


def check_adjacency(h: TypeHierarchy, kind: str, head: FeatureStructure,
                    nonhead: FeatureStructure | None = None,
                    realized: str | None = None) -> Adjacency:
    """Adjacency principle for a would-be phrase of ``kind``.

    (a) the non-head daughter may not have adjacent arguments left;
    (b) in head-complement structures the head may have no adjacent argument
        other than the one ``realized`` by the non-head;
    (c) in head-adjunct structures the head may have no adjacent argument.
    Unsaturated-adjacent means a SAT value below ``unsat-adj``.
    """
    return _adjacency(h, kind, _sat_of(head),
                      None if nonhead is None else _sat_of(nonhead), realized)


def _session_sat(s: Session, node: int) -> dict:
    return {sl: s.type_at(node, SAT_PATH + (sl,)) for sl in SLOTS}


def _new_list(s: Session, items: list[int]) -> int:
    end = s.new_node("*null*")
    for item in reversed(items):
        end = s.new_node("*cons*", {"FIRST": item, "REST": end})
    return end


def _combine(g: Grammar, rule_fs: FeatureStructure, dtrs, kind: str | None,
             head: int, phon: str):
    h = g.hierarchy
    s = Session(h)
    s.add(rule_fs)
    args_path = ("ARGS",)
    if len(list_nodes(s.arcs, s.follow(0, args_path), s.find)) != len(dtrs):
        return RuleFailure("arity", f"rule takes a different number of daughters")
    dnodes = []
    for k, d in enumerate(dtrs):
        off = s.add(d)
        arg = list_nodes(s.arcs, s.follow(0, args_path), s.find)[k]
        fail = s.unify(arg, off, ("ARGS", str(k)))
        if fail is not None:
            return RuleFailure("unification-clash", str(fail), fail.path)
        dnodes.append(off)
    for off in dnodes:
        for f in SHARED_CONTEXT:
            a, b = s.follow(0, ("CONTEXT", f)), s.follow(off, ("CONTEXT", f))
            if a is not None and b is not None:
                fail = s.unify(a, b, ("CONTEXT", f))
                if fail is not None:
                    return RuleFailure("unification-clash", str(fail), fail.path)
    if kind is not None and len(dnodes) == 2:
        hd, nh = dnodes[head], dnodes[1 - head]
        head_sat = _session_sat(s, hd)
        mother_sat = _session_sat(s, 0)
        realized = None
        for sl in SLOTS:
            ht, mt = head_sat[sl], mother_sat[sl]
            if ht and mt and h.subsumes("unsat", ht) and h.subsumes("sat", mt):
                realized = sl
        adj = _adjacency(h, kind, head_sat, _session_sat(s, nh), realized)
        if not adj:
            return RuleFailure("adjacency-violation",
                               f"clause ({adj.clause}): {', '.join(adj.slots)}")
    for path in APPENDED:
        parent = s.follow(0, path[:-1])
        if parent is None:
            continue
        items: list[int] = []
        for off in dnodes:
            dl = s.follow(off, path)
            if dl is not None:
                items.extend(list_nodes(s.arcs, dl, s.find))
        own = s.follow(0, path)
        if own is not None and own not in {s.follow(off, path) for off in dnodes}:
            items.extend(list_nodes(s.arcs, own, s.find))
        s.set_arc(parent, path[-1], _new_list(s, items))
    s.set_arc(0, "PHON", s.new_node('"' + phon + '"'))
    try:
        return s.extract(0, skip=frozenset(("ARGS",)))
    except _Clash as c:
        return RuleFailure("unification-clash", str(c.failure), c.failure.path)


def apply_schema(g: Grammar, schema: RuleSchema, daughters):
    """Build the mother of ``schema`` over ``daughters`` or return a :class:`RuleFailure`."""
    if len(daughters) != schema.arity:
        return RuleFailure("arity", f"{schema.name} takes {schema.arity} daughters")
    # word-internal combinations (stem + ending) are written solid
    sep = "" if schema.fs.get("LEX") == "+" else " "
    phon = sep.join(p for p in (phon_of(d) for d in daughters) if p)
    return _combine(g, schema.fs, daughters, schema.kind, schema.head, phon)


def apply_lexical_rule(g: Grammar, rule: LexicalRule, sign: FeatureStructure):
    """Apply a lexical rule, rewriting PHON by its suffix patterns."""
    phon = rule.apply_orthography(phon_of(sign))
    if phon is None:
        return RuleFailure("orthography", f"no suffix of {rule.name} matches")
    return _combine(g, rule.fs, [sign], None, 0, phon)
