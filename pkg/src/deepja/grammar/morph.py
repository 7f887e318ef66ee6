"""Full-form lexicon: every lexical entry closed under the lexical rules."""

from __future__ import annotations

from dataclasses import dataclass

from deepja.grammar.grammar import Grammar, LexEntry, phon_of
from deepja.grammar.rules import apply_lexical_rule
from deepja.tfs.fs import FeatureStructure

MAX_DEPTH = 5


@dataclass(frozen=True)
class LexItem:
    """A word form ready for parsing: an entry plus the lexical rules applied to it."""

    entry: str
    surface: str
    fs: FeatureStructure
    rules: tuple = ()

    @property
    def label(self) -> str:
        """Derivation label, innermost first: ``taberu`` or ``taberu+ichidan-stem``."""
        return "+".join((self.entry,) + self.rules)


def closure(g: Grammar, entry_id: str, fs: FeatureStructure,
            depth: int = MAX_DEPTH) -> list[LexItem]:
    """All forms derivable from ``fs`` with at most ``depth`` rule applications."""
    out = [LexItem(entry_id, phon_of(fs), fs)]
    frontier = list(out)
    for _ in range(depth):
        nxt = []
        for item in frontier:
            for rule in g.lexrules.values():
                res = apply_lexical_rule(g, rule, item.fs)
                if res:
                    nxt.append(LexItem(entry_id, phon_of(res), res, item.rules + (rule.name,)))
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    return out


class FullForms:
    """Surface form -> lexical items, built once per grammar."""

    def __init__(self, g: Grammar, depth: int = MAX_DEPTH):
        self.grammar = g
        self.depth = depth
        self.by_surface: dict[str, list[LexItem]] = {}
        for e in g.lexicon.values():
            for item in closure(g, e.id, e.fs, depth):
                # uninflected lexemes only feed the lexical rules
                if item.fs.get("INFLECTED") != "-":
                    self.by_surface.setdefault(item.surface, []).append(item)
        self.max_len = max((len(s) for s in self.by_surface), default=0)

    def __contains__(self, surface: str) -> bool:
        return surface in self.by_surface

    def __getitem__(self, surface: str) -> list[LexItem]:
        return self.by_surface.get(surface, [])

    def surfaces(self):
        return self.by_surface.keys()


def full_forms(g: Grammar) -> FullForms:
    """The (cached) full-form lexicon of ``g``."""
    ff = getattr(g, "_full_forms", None)
    if ff is None:
        ff = FullForms(g)
        g._full_forms = ff
    return ff


def entry_items(g: Grammar, entry: LexEntry, surface: str | None = None) -> list[LexItem]:
    items = closure(g, entry.id, entry.fs)
    return [i for i in items if surface is None or i.surface == surface]
