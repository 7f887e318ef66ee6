"""The bundled Japanese grammar fragment and its lexical lookups."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from deepja.grammar.grammar import Grammar, load_grammar
from deepja.tfs.fs import FeatureStructure, Session, _Clash

# POS tag -> lexical type of the default entry; closed classes have none
DEFAULT_TYPES = {
    "common-noun": "generic-cn-lex",
    "proper-noun": "pn-lex",
    "verbal-noun": "generic-vn-lex",
    "verb": "generic-verb-lex",
    "adverb": "generic-adv-lex",
    "interjection": "generic-interj-lex",
}

# placeholder kind -> lexical entry
PLACEHOLDER_ENTRIES = {
    "number": "ph_num",
    "date": "ph_date",
    "address": "ph_addr",
    "email": "ph_email",
    "url": "ph_url",
    "phone": "ph_phone",
    "currency": "ph_curr",
}

PAYLOAD = ("SYNSEM", "LOCAL", "CONT", "PAYLOAD")
RMORPH = ("SYNSEM", "LOCAL", "RMORPH-BIND-TYPE")
FIN = ("SYNSEM", "LOCAL", "HEAD", "FIN")


def data_dir():
    return resources.files("deepja.fragment").joinpath("data")


@lru_cache(maxsize=1)
def load_fragment() -> Grammar:
    """The fragment grammar, loaded once."""
    return load_grammar(str(data_dir()))


def lookup(surface: str, grammar: Grammar | None = None) -> list[FeatureStructure]:
    """Expanded stem entries whose orthography is ``surface``."""
    g = grammar or load_fragment()
    return [e.fs for e in g.entries(surface)]


def specialise(g: Grammar, fs: FeatureStructure, values: dict) -> FeatureStructure | None:
    """Unify atomic ``values`` (path -> type) into ``fs``; None on a clash."""
    s = Session(g.hierarchy)
    s.add(fs)
    for path, t in values.items():
        node = s.follow(0, path)
        if node is None:
            parent = s.follow(0, path[:-1])
            if parent is None:
                return None
            s.set_arc(parent, path[-1], s.new_node(t))
            continue
        if s.unify(node, s.new_node(t), path) is not None:
            return None
    try:
        return s.extract(0)
    except _Clash:
        return None


def _literal(text: str) -> str:
    return '"' + text.replace('"', "'") + '"'


def default_entry(surface: str, pos: str, inflection: str | None = None,
                  grammar: Grammar | None = None) -> FeatureStructure | None:
    """Generic sign for an unknown word of part of speech ``pos``.

    The surface becomes PHON and the payload of the generic relation.
    ``inflection`` (a RMORPH-BIND-TYPE value) applies to verb stems.
    Closed classes give None.
    """
    g = grammar or load_fragment()
    lextype = DEFAULT_TYPES.get(pos)
    if lextype is None:
        return None
    base = g.hierarchy.constraint(lextype) or FeatureStructure.atom(lextype)
    values = {("PHON",): _literal(surface), PAYLOAD: _literal(surface.lower())}
    if pos == "verb":
        values[FIN] = "-"
        if inflection is not None:
            values[RMORPH] = inflection
    return specialise(g, base, values)


def placeholder_entry(kind: str, payload: str,
                      grammar: Grammar | None = None) -> FeatureStructure | None:
    """Lexical sign for a placeholder, carrying the normalised ``payload``."""
    g = grammar or load_fragment()
    entry = g.lexicon.get(PLACEHOLDER_ENTRIES.get(kind, ""))
    if entry is None:
        return None
    return specialise(g, entry.fs, {PAYLOAD: _literal(payload)})


def fragment_regression_items() -> list:
    """The fragment's regression suite."""
    text = data_dir().joinpath("regression.tsv").read_text("utf-8")
    from deepja.harness.items import parse_items

    return parse_items(text, "regression.tsv")


__all__ = [
    "load_fragment", "lookup", "default_entry", "placeholder_entry",
    "fragment_regression_items", "DEFAULT_TYPES", "PLACEHOLDER_ENTRIES",
]
