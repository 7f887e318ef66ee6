"""Reader for the grammar-source format.

Definitions look like::

    ; comment
    name := parent & other & [ PATH.TO.FEAT value, FEAT #tag, LIST < a, b > ].

``%suffix (match replacement) ...`` and ``%weight n`` lines annotate the
definition that follows them. In suffix pairs ``*`` stands for the empty
string. Feature names are case-insensitive; type names are not.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from deepja.tfs.errors import GrammarError


class GrammarSyntaxError(GrammarError):
    def __init__(self, message, line, col, source=None):
        self.line, self.col, self.source = line, col, source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{col}: {message}")


@dataclass
class TypeRef:
    name: str


@dataclass
class StringLit:
    value: str


@dataclass
class Tag:
    name: str


@dataclass
class Avm:
    pairs: list  # list of (path tuple, Conj)


@dataclass
class ListLit:
    items: list  # list of Conj
    open: bool = False


Conj = list  # list of TypeRef | StringLit | Tag | Avm | ListLit


@dataclass
class Definition:
    name: str
    body: Conj
    line: int
    source: str | None = None
    suffixes: list = field(default_factory=list)  # (match, replacement)
    weight: int = 0

    @property
    def supertypes(self) -> list[str]:
        return [t.name for t in self.body if isinstance(t, TypeRef)]


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>;[^\n]*)
  | (?P<assign>:=)
  | (?P<ellipsis>\.\.\.)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<tag>\#[A-Za-z0-9_\-]+)
  | (?P<annot>%[A-Za-z]+)
  | (?P<punct>[\[\]<>,&()])
  | (?P<ident>[A-Za-z0-9_*+\-!?'À-￿](?:[A-Za-z0-9_*+\-!?'.À-￿]*[A-Za-z0-9_*+\-!?'À-￿])?)
  | (?P<dot>\.)
    """,
    re.VERBOSE,
)


def _tokens(text: str, source: str | None):
    pos = 0
    line, line_start = 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GrammarSyntaxError(f"unexpected character {text[pos]!r}",
                                     line, pos - line_start + 1, source)
        kind = m.lastgroup
        value = m.group()
        col = pos - line_start + 1
        if kind not in ("ws", "comment"):
            if kind == "string":
                value = bytes(value[1:-1], "utf-8").decode("unicode_escape").encode(
                    "latin-1").decode("utf-8")
            yield kind, value, line, col
        nl = value.count("\n") if kind in ("ws", "comment") else 0
        if nl:
            line += nl
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    yield "eof", "", line, pos - line_start + 1


class _Parser:
    def __init__(self, text: str, source: str | None):
        self.toks = list(_tokens(text, source))
        self.i = 0
        self.source = source

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return GrammarSyntaxError(msg, tok[2], tok[3], self.source)

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise self.error(f"expected {want!r}, found {tok[1] or tok[0]!r}", tok)
        return tok

    def definitions(self) -> list[Definition]:
        defs = []
        suffixes: list = []
        weight = 0
        while self.peek()[0] != "eof":
            tok = self.peek()
            if tok[0] == "annot":
                self.next()
                name = tok[1][1:].lower()
                if name == "suffix":
                    suffixes.extend(self.suffix_pairs())
                elif name == "weight":
                    w = self.expect("ident")
                    try:
                        weight = int(w[1])
                    except ValueError:
                        raise self.error(f"bad weight {w[1]!r}", w) from None
                else:
                    raise self.error(f"unknown annotation %{name}", tok)
                continue
            name_tok = self.next()
            if name_tok[0] not in ("ident", "string"):
                raise self.error(f"expected definition name, found {name_tok[1]!r}", name_tok)
            self.expect("assign")
            body = self.conj()
            self.expect("dot")
            defs.append(Definition(name_tok[1], body, name_tok[2], self.source,
                                   suffixes, weight))
            suffixes, weight = [], 0
        return defs

    def suffix_pairs(self):
        pairs = []
        while self.peek()[0] == "punct" and self.peek()[1] == "(":
            self.next()
            a = self.next()
            b = self.next()
            self.expect("punct", ")")
            for t in (a, b):
                if t[0] not in ("ident", "string"):
                    raise self.error("suffix patterns take two bare strings", t)
            pairs.append(("" if a[1] == "*" else a[1], "" if b[1] == "*" else b[1]))
        if not pairs:
            raise self.error("%suffix needs at least one (match replacement) pair")
        return pairs

    def conj(self) -> Conj:
        terms = [self.term()]
        while self.peek()[:2] == ("punct", "&"):
            self.next()
            terms.append(self.term())
        return terms

    def term(self):
        tok = self.next()
        kind, value = tok[0], tok[1]
        if kind == "ident":
            return TypeRef(value)
        if kind == "string":
            return StringLit(value)
        if kind == "tag":
            return Tag(value[1:])
        if kind == "punct" and value == "[":
            return self.avm()
        if kind == "punct" and value == "<":
            return self.list_lit()
        raise self.error(f"unexpected {value or kind!r}", tok)

    def avm(self) -> Avm:
        pairs = []
        if self.peek()[:2] == ("punct", "]"):
            self.next()
            return Avm(pairs)
        while True:
            ptok = self.expect("ident")
            path = tuple(f.upper() for f in ptok[1].split("."))
            if any(not f for f in path):
                raise self.error(f"malformed path {ptok[1]!r}", ptok)
            pairs.append((path, self.conj()))
            tok = self.next()
            if tok[:2] == ("punct", ","):
                continue
            if tok[:2] == ("punct", "]"):
                return Avm(pairs)
            raise self.error(f"expected ',' or ']', found {tok[1]!r}", tok)

    def list_lit(self) -> ListLit:
        items = []
        if self.peek()[:2] == ("punct", ">"):
            self.next()
            return ListLit(items)
        while True:
            if self.peek()[0] == "ellipsis":
                self.next()
                self.expect("punct", ">")
                return ListLit(items, open=True)
            items.append(self.conj())
            tok = self.next()
            if tok[:2] == ("punct", ","):
                continue
            if tok[:2] == ("punct", ">"):
                return ListLit(items)
            raise self.error(f"expected ',' or '>', found {tok[1]!r}", tok)


def parse_source(text: str, source: str | None = None) -> list[Definition]:
    """Parse a grammar-source text into a list of definitions."""
    return _Parser(text, source).definitions()


def parse_term(text: str) -> Conj:
    """Parse a single conjunctive term, e.g. ``"[ A #1, B #1 ]"``."""
    p = _Parser(text, None)
    c = p.conj()
    if p.peek()[0] != "eof":
        raise p.error("trailing input after term")
    return c
