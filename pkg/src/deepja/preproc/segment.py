"""Dictionary segmentation into a token lattice, with POS tags and inflection labels.

Whitespace and punctuation are hard boundaries. Inside a chunk every
substring that is a full form of the grammar becomes an arc. When a chunk
cannot be covered by known forms, unknown-word arcs are added between any
position reachable from the chunk start and any position from which the
chunk end is reachable; they are tagged by a few surface heuristics and are
later turned into default lexical entries. Arcs that lie on no complete
path are dropped.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from importlib import resources

from deepja.grammar.grammar import Grammar
from deepja.grammar.morph import full_forms

log = logging.getLogger(__name__)

POS_TAGS = (
    "common-noun", "proper-noun", "pronoun", "verbal-noun", "verb", "auxiliary",
    "ending", "particle", "number", "classifier", "adverb", "adjective", "prefix",
    "interjection", "punctuation", "placeholder",
)

# lexical type -> POS, most specific first
_POS_BY_TYPE = (
    ("pn-lex", "proper-noun"),
    ("pron-lex", "pronoun"),
    ("vn-lex", "verbal-noun"),
    ("aux-lex", "auxiliary"),
    ("ending-lex", "ending"),
    ("verb-lex", "verb"),
    ("light-verb-lex", "verb"),
    ("particle-lex", "particle"),
    ("num-lex", "number"),
    ("cl-lex", "classifier"),
    ("adv-lex", "adverb"),
    ("pred-adj-lex", "adjective"),
    ("attr-adj-lex", "adjective"),
    ("prefix-lex", "prefix"),
    ("interj-lex", "interjection"),
    ("punct-lex", "punctuation"),
    ("noun-lex", "common-noun"),
)

PLACEHOLDER = re.compile(r"⟦[A-Z]+⟧")
PUNCT = set(':?"')
MIN_UNKNOWN = 2  # shortest unknown word, in characters


class SegmentationGapError(Exception):
    """Some stretch of the input got no arc at all."""


@dataclass(frozen=True, order=True)
class Token:
    span: tuple
    surface: str
    pos: str
    lemma: str
    inflection_type: str | None = None
    entries: tuple = ()  # full-form item labels; empty for unknown words

    @property
    def known(self) -> bool:
        return bool(self.entries)


@dataclass
class Lattice:
    """Token arcs over character offsets.

    ``joins`` maps the end of a chunk to the start of the next one, so a
    path steps over the whitespace between them.
    """

    text: str
    tokens: list = field(default_factory=list)
    joins: dict = field(default_factory=dict)

    def next_vertex(self, tok: Token) -> int:
        return self.joins.get(tok.span[1], tok.span[1])

    @property
    def vertices(self) -> list[int]:
        """Distinct path positions, in order."""
        return sorted({t.span[0] for t in self.tokens} | {self.next_vertex(t) for t in self.tokens})

    @property
    def start(self) -> int:
        return min((t.span[0] for t in self.tokens), default=0)

    @property
    def end(self) -> int:
        return max((t.span[1] for t in self.tokens), default=0)

    def outgoing(self, pos: int) -> list[Token]:
        return [t for t in self.tokens if t.span[0] == pos]

    def paths(self, limit: int = 10000):
        """Token paths from start to end (at most ``limit``)."""
        out: list[list[Token]] = []

        def walk(pos, acc):
            if len(out) >= limit:
                return
            if pos == self.end:
                out.append(list(acc))
                return
            for t in self.outgoing(pos):
                acc.append(t)
                walk(self.next_vertex(t), acc)
                acc.pop()

        if self.tokens:
            walk(self.start, [])
        return out

    def surfaces(self, path) -> list[str]:
        return [t.surface for t in path]


def pos_of_type(g: Grammar, lextype: str) -> str:
    anc = g.hierarchy.ancestors(lextype) if lextype in g.hierarchy else {lextype}
    for t, pos in _POS_BY_TYPE:
        if t in anc:
            return pos
    return "common-noun"


def inflection_label(rule_name: str) -> str | None:
    """Segmenter-level label for a lexical rule: ``godan-t-stem`` -> ``godan-t``."""
    for suffix in ("-stem", "-form"):
        if rule_name.endswith(suffix):
            return rule_name[: -len(suffix)]
    return None


def _load_inflections() -> dict[str, str]:
    text = resources.files("deepja.preproc").joinpath("data/inflection.tsv").read_text("utf-8")
    table = {}
    for line in text.splitlines():
        if line.strip() and not line.startswith("#"):
            label, morph = line.split("\t")
            table[label.strip()] = morph.strip()
    return table


INFLECTIONS = _load_inflections()


def map_inflection(token_or_label) -> str | None:
    """Segmenter inflection label -> RMORPH-BIND-TYPE value, or None.

    Unknown labels are logged and give None.
    """
    label = getattr(token_or_label, "inflection_type", token_or_label)
    if label is None:
        return None
    morph = INFLECTIONS.get(label)
    if morph is None:
        log.warning("unknown inflection label %r", label)
    return morph


def _known_tokens(g: Grammar, text: str, i: int, j: int) -> list[Token]:
    groups: dict[tuple, list[str]] = {}
    for item in full_forms(g)[_key(text[i:j])]:
        entry = g.lexicon[item.entry]
        label = inflection_label(item.rules[-1]) if item.rules else None
        if entry.id.startswith("ph_") or PLACEHOLDER.fullmatch(entry.orth):
            pos = "placeholder"
        else:
            pos = pos_of_type(g, entry.lextype)
        groups.setdefault((pos, entry.orth, label), []).append(item.label)
    return [Token((i, j), text[i:j], pos, lemma, label, tuple(labels))
            for (pos, lemma, label), labels in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or ""))]


def _key(surface: str) -> str:
    return surface if PLACEHOLDER.fullmatch(surface) else surface.lower()


def _chunks(text: str):
    """Maximal stretches between hard boundaries, as (start, end)."""
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        m = PLACEHOLDER.match(text, i)
        if m:
            yield i, m.end()
            i = m.end()
            continue
        if c in PUNCT:
            yield i, i + 1
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in PUNCT and not PLACEHOLDER.match(text, j):
            j += 1
        yield i, j
        i = j


def _reach(arcs, start, forward=True):
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for t in arcs:
            a, b = t.span if forward else t.span[::-1]
            if a == p and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def _stem_label(stem: str, following: list[Token]) -> str | None:
    """Guess the conjugation class of an unknown verb stem from its ending."""
    endings = {t.lemma for t in following if t.pos in ("ending", "auxiliary")}
    if not endings:
        return None
    if endings & {"da", "de"}:
        return "godan-nd" if stem.endswith("n") else None
    if stem.endswith("shi"):
        return "godan-s"
    if stem.endswith("t"):
        return "godan-t"
    if stem.endswith("i"):
        return "godan-i"
    if stem.endswith("e"):
        return "ichidan"
    return None


def _starts_light_verb(tokens: list[Token]) -> bool:
    return any(t.lemma == "suru" for t in tokens)


def _unknown_tokens(text, i, j, following, next_chunk) -> list[Token]:
    surface = text[i:j]
    low = surface.lower()
    out = []
    if following:
        label = _stem_label(low, following)
        if label is not None:
            out.append(Token((i, j), surface, "verb", low, label))
    nxt = following or next_chunk
    if _starts_light_verb(nxt):
        out.append(Token((i, j), surface, "verbal-noun", low))
    if surface[:1].isupper():
        out.append(Token((i, j), surface, "proper-noun", low))
    if not out or not following or all(t.pos != "verb" for t in out):
        out.append(Token((i, j), surface, "common-noun", low))
    return sorted(set(out))


def segment(text: str, grammar: Grammar) -> Lattice:
    """Token lattice for ``text`` (placeholders already substituted)."""
    chunks = list(_chunks(text))
    known: list[list[Token]] = []
    ff = full_forms(grammar)
    for a, b in chunks:
        arcs = []
        for i in range(a, b):
            for j in range(i + 1, min(b, i + ff.max_len) + 1):
                if _key(text[i:j]) in ff:
                    arcs.extend(_known_tokens(grammar, text, i, j))
        known.append(arcs)

    tokens: list[Token] = []
    for k, (a, b) in enumerate(chunks):
        arcs = known[k]
        if b not in _reach(arcs, a):
            fwd = _reach(arcs, a)
            bwd = _reach(arcs, b, forward=False)
            next_chunk = [t for t in known[k + 1] if t.span[0] == chunks[k + 1][0]] \
                if k + 1 < len(chunks) else []
            extra = []
            for i in sorted(fwd):
                for j in sorted(bwd):
                    if (j - i >= MIN_UNKNOWN or (i, j) == (a, b)) and _key(text[i:j]) not in ff:
                        following = [t for t in arcs if t.span[0] == j]
                        extra.extend(_unknown_tokens(text, i, j, following, next_chunk))
            arcs = arcs + extra
        fwd = _reach(arcs, a)
        bwd = _reach(arcs, b, forward=False)
        if b not in fwd:
            raise SegmentationGapError(f"no path through {text[a:b]!r} at {a}")
        tokens.extend(t for t in arcs if t.span[0] in fwd and t.span[1] in bwd)
    joins = {chunks[k][1]: chunks[k + 1][0] for k in range(len(chunks) - 1)}
    return Lattice(text, sorted(set(tokens)), joins)
