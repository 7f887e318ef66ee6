"""Grammar objects: lexicon, lexical rules, phrase-structure schemata, roots."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from deepja.grammar.loader import build_fs, load_type_hierarchy
from deepja.grammar.source import Avm, Definition, StringLit, parse_source
from deepja.tfs.errors import GrammarError
from deepja.tfs.fs import FeatureStructure
from deepja.tfs.hierarchy import TypeHierarchy, is_string_literal

LoadError = GrammarError

# Rule kinds, as type names. A rule's kind is its most specific kind ancestor.
KINDS = (
    "head-complement-rule",
    "head-adjunct-rule",
    "head-specifier-rule",
    "head-marker-rule",
    "vn-light-rule",
    "relative-clause-rule",
    "unary-promotion-rule",
    "fragment-rule",
    "quotation-rule",
)
ROLES = ("types", "lexicon", "lexrules", "schemata", "roots")


def kind_name(type_name: str) -> str:
    """``head-complement-rule`` -> ``head-complement``."""
    return type_name[:-5] if type_name.endswith("-rule") else type_name


def phon_of(fs: FeatureStructure) -> str:
    t = fs.get("PHON")
    if t is None or not is_string_literal(t):
        return ""
    return t[1:-1]


@dataclass
class LexEntry:
    id: str
    orth: str
    fs: FeatureStructure
    lextype: str
    weight: int = 0


@dataclass
class LexicalRule:
    name: str
    fs: FeatureStructure
    suffixes: list = field(default_factory=list)
    weight: int = 0

    def apply_orthography(self, phon: str) -> str | None:
        """Rewrite ``phon``; the first matching pattern wins. None when nothing matches."""
        if not self.suffixes:
            return phon
        for match, repl in self.suffixes:
            if phon.endswith(match):
                return phon[: len(phon) - len(match)] + repl
        return None


@dataclass
class RuleSchema:
    name: str
    fs: FeatureStructure
    kind: str
    arity: int
    head: int
    lb: bool = False
    weight: int = 0


@dataclass
class Grammar:
    hierarchy: TypeHierarchy
    lexicon: dict[str, LexEntry]
    lexrules: dict[str, LexicalRule]
    rules: dict[str, RuleSchema]
    roots: dict[str, FeatureStructure]
    by_orth: dict[str, list[LexEntry]] = field(default_factory=dict)

    @property
    def preferences(self) -> dict[str, int]:
        """Schema weights used for ranking."""
        return {n: r.weight for n, r in self.rules.items()}

    def entries(self, orth: str) -> list[LexEntry]:
        return self.by_orth.get(orth, [])


def _role(name: str) -> str:
    stem = os.path.splitext(os.path.basename(name))[0].lower()
    if stem in ("rules", "schema"):
        stem = "schemata"
    if stem not in ROLES:
        raise LoadError(f"cannot tell what {name!r} contains; expected one of {ROLES}")
    return stem


def _collect(source) -> dict[str, list[Definition]]:
    """Accept a directory, a list of files, or a mapping role -> text."""
    texts: list[tuple[str, str, str]] = []
    if isinstance(source, dict):
        for role, text in source.items():
            texts.append((_role(role), text, role))
    else:
        if isinstance(source, (str, os.PathLike)) and os.path.isdir(source):
            files = sorted(os.path.join(source, f) for f in os.listdir(source)
                           if f.endswith(".gs"))
        elif isinstance(source, (str, os.PathLike)):
            files = [source]
        else:
            files = list(source)
        for path in files:
            try:
                with open(path, encoding="utf-8") as fh:
                    texts.append((_role(str(path)), fh.read(), str(path)))
            except OSError as exc:
                raise LoadError(f"cannot read {path}: {exc}") from None
    out: dict[str, list[Definition]] = {r: [] for r in ROLES}
    for role, text, name in texts:
        out[role].extend(parse_source(text, name))
    if not out["types"]:
        raise LoadError("grammar has no type definitions")
    return out


def _instance(h: TypeHierarchy, d: Definition, must_be: str) -> FeatureStructure:
    fs = build_fs(h, d.body, d.name)
    if not h.subsumes(must_be, fs.root_type):
        raise LoadError(f"{d.name} (line {d.line}) is a {fs.root_type}, expected a {must_be}")
    return fs


def _kind(h: TypeHierarchy, t: str) -> str | None:
    anc = h.ancestors(t)
    found = [k for k in KINDS if k in anc]
    found = [k for k in found if not any(o != k and h.subsumes(k, o) for o in found)]
    return found[0] if found else None


def load_grammar(source) -> Grammar:
    """Load a complete grammar. Raises :class:`LoadError` subclasses on any problem."""
    defs = _collect(source)
    h = load_type_hierarchy(defs["types"])

    lexicon: dict[str, LexEntry] = {}
    by_orth: dict[str, list[LexEntry]] = {}
    for d in defs["lexicon"]:
        if d.name in lexicon:
            raise LoadError(f"lexical entry {d.name} defined twice (line {d.line})")
        fs = _instance(h, d, "sign")
        if not is_string_literal(fs.get("PHON") or ""):
            body = d.body + [Avm([(("PHON",), [StringLit(d.name)])])]
            fs = build_fs(h, body, d.name)
        supers = d.supertypes
        entry = LexEntry(d.name, phon_of(fs), fs, supers[0] if supers else fs.root_type,
                         d.weight)
        lexicon[d.name] = entry
        by_orth.setdefault(entry.orth, []).append(entry)

    lexrules: dict[str, LexicalRule] = {}
    for d in defs["lexrules"]:
        if d.name in lexrules:
            raise LoadError(f"lexical rule {d.name} defined twice (line {d.line})")
        lexrules[d.name] = LexicalRule(d.name, _instance(h, d, "lex-rule"), d.suffixes, d.weight)

    rules: dict[str, RuleSchema] = {}
    for d in defs["schemata"]:
        if d.name in rules:
            raise LoadError(f"rule {d.name} defined twice (line {d.line})")
        fs = _instance(h, d, "rule")
        kind = _kind(h, fs.root_type)
        if kind is None:
            raise LoadError(f"rule {d.name} (line {d.line}) has no rule kind")
        arity = len(fs.list_items("ARGS"))
        if arity not in (1, 2):
            raise LoadError(f"rule {d.name} (line {d.line}) must have one or two daughters")
        pos = fs.get("HDPOS")
        head = arity - 1 if pos == "hd-last" else 0
        rules[d.name] = RuleSchema(d.name, fs, kind_name(kind), arity, head,
                                   fs.get("LBR") == "+", d.weight)

    roots = {d.name: _instance(h, d, "sign") for d in defs["roots"]}
    if not roots:
        raise LoadError("grammar has no root condition")
    return Grammar(h, lexicon, lexrules, rules, roots, by_orth)
