"""Build type hierarchies and expanded feature structures from grammar source."""

from __future__ import annotations

from deepja.grammar.source import (
    Avm,
    Definition,
    ListLit,
    StringLit,
    Tag,
    TypeRef,
    parse_source,
)
from deepja.tfs.errors import (
    ConstraintClashError,
    FeatureReintroductionError,
    GrammarError,
    HierarchyError,
    UndefinedTypeError,
    UnknownFeatureError,
)
from deepja.tfs.fs import FeatureStructure, Session, _Clash
from deepja.tfs.hierarchy import TOP, TypeHierarchy

LIST, CONS, NULL = "*list*", "*cons*", "*null*"


def _as_definitions(source) -> list[Definition]:
    if isinstance(source, str):
        return parse_source(source)
    defs: list[Definition] = []
    for item in source:
        if isinstance(item, Definition):
            defs.append(item)
        else:
            defs.extend(parse_source(item))
    return defs


def load_type_hierarchy(source) -> TypeHierarchy:
    """Load, validate and expand a hierarchy from grammar-source text.

    ``source`` is a text, a list of texts, or parsed definitions.
    """
    defs = _as_definitions(source)
    parents: dict[str, tuple[str, ...]] = {TOP: ()}
    by_name: dict[str, Definition] = {}
    for d in defs:
        if d.name in by_name or (d.name == TOP and d.supertypes):
            raise HierarchyError(f"type {d.name} defined twice (line {d.line})")
        if any(isinstance(t, (StringLit, Tag, ListLit)) for t in d.body):
            raise HierarchyError(f"type {d.name}: only supertypes and [...] allowed (line {d.line})")
        by_name[d.name] = d
        if d.name != TOP:
            parents[d.name] = tuple(d.supertypes) or (TOP,)
    for d in defs:
        for p in d.supertypes:
            if p not in parents:
                raise UndefinedTypeError(p, context=f"{d.name} (line {d.line})")
    h = TypeHierarchy(parents)
    _introduce_features(h, by_name)
    _expand_all(h, by_name)
    return h


def _introduce_features(h: TypeHierarchy, by_name: dict[str, Definition]) -> None:
    for t in h.order:
        d = by_name.get(t)
        if d is None:
            continue
        anc = h.ancestors(t)
        for term in d.body:
            if not isinstance(term, Avm):
                continue
            for path, _ in term.pairs:
                f = path[0]
                intro = h.introduced_by.get(f)
                if intro is None:
                    h.introduced_by[f] = t
                elif intro not in anc:
                    raise FeatureReintroductionError(f, intro, t)


class _Builder:
    """Turns parsed terms into nodes of a :class:`Session`."""

    def __init__(self, h: TypeHierarchy, s: Session, context: str):
        self.h, self.s, self.context = h, s, context
        self.tags: dict[str, int] = {}
        self.raw: list[int] = []

    def fail(self, failure):
        raise ConstraintClashError(self.context, failure)

    def node(self, type_name: str = TOP) -> int:
        n = self.s.new_node(type_name)
        self.raw.append(n)
        return n

    def restrict(self, node: int, type_name: str) -> None:
        s = self.s
        r = s.find(node)
        g = self.h.glb(s.types[r], type_name)
        if g is None:
            raise ConstraintClashError(
                self.context, f"type {type_name} incompatible with {s.types[r]}")
        if g != s.types[r]:
            # the node now needs the constraint of its new type
            self.raw.append(r)
        s.types[r] = g

    def merge(self, a: int, b: int) -> None:
        fail = self.s.unify(a, b)
        if fail is not None:
            self.fail(fail)

    def conj(self, terms, node: int | None = None) -> int:
        if node is None:
            node = self.node()
        for term in terms:
            if isinstance(term, TypeRef):
                if term.name not in self.h:
                    raise UndefinedTypeError(term.name, context=self.context)
                self.restrict(node, term.name)
            elif isinstance(term, StringLit):
                self.restrict(node, '"' + term.value + '"')
            elif isinstance(term, Tag):
                other = self.tags.get(term.name)
                if other is None:
                    self.tags[term.name] = node
                else:
                    self.merge(node, other)
            elif isinstance(term, Avm):
                for path, value in term.pairs:
                    target = self.walk(node, path)
                    self.conj(value, target)
            elif isinstance(term, ListLit):
                self.list_lit(term, node)
        return node

    def walk(self, node: int, path) -> int:
        s = self.s
        for f in path:
            intro = self.h.introduced_by.get(f)
            if intro is None:
                raise UnknownFeatureError(f, self.context)
            self.restrict(node, intro)
            r = s.find(node)
            nxt = s.arcs[r].get(f)
            if nxt is None:
                nxt = self.node()
                s.set_arc(r, f, nxt)
            node = nxt
        return node

    def list_lit(self, lit: ListLit, node: int) -> None:
        cur = node
        for item in lit.items:
            self.restrict(cur, CONS)
            first = self.walk(cur, ("FIRST",))
            self.conj(item, first)
            cur = self.walk(cur, ("REST",))
        self.restrict(cur, LIST if lit.open else NULL)


def _welltype(h: TypeHierarchy, s: Session, nodes, context: str) -> None:
    """Unify every listed node with the expanded constraint of its type."""
    done: set[tuple[int, str]] = set()
    for n in nodes:
        r = s.find(n)
        t = s.types[r]
        if (r, t) in done:
            continue
        done.add((r, t))
        con = h.constraint(t)
        if con is None or len(con.types) == 1 and con.types[0] == t:
            continue
        off = s.add(con)
        fail = s.unify(r, off)
        if fail is not None:
            raise ConstraintClashError(context, fail)


def _check_appropriate(h: TypeHierarchy, fs: FeatureStructure, context: str) -> None:
    for path, node in fs.paths():
        t = fs.types[node]
        for f in fs.arcs[node]:
            intro = h.introduced_by.get(f)
            if intro is None or not h.subsumes(intro, t):
                raise ConstraintClashError(
                    context, f"feature {f} not appropriate for {t} at {'.'.join(path) or '<root>'}")


def _expand_all(h: TypeHierarchy, by_name: dict[str, Definition]) -> None:
    in_progress: set[str] = set()

    def expand(t: str):
        if t in h._constraints:
            return h._constraints[t]
        if t in in_progress:
            raise ConstraintClashError(t, "constraint is recursive")
        in_progress.add(t)
        try:
            s = Session(h)
            b = _Builder(h, s, t)
            root = s.new_node(t)
            for p in h.parents[t]:
                con = expand(p)
                if con is not None:
                    off = s.add(con)
                    fail = s.unify(root, off)
                    if fail is not None:
                        raise ConstraintClashError(t, fail)
            d = by_name.get(t)
            if d is not None:
                avms = [x for x in d.body if isinstance(x, Avm)]
                b.conj(avms, root)
            _welltype(h, s, b.raw, t)
            if s.types[s.find(root)] != t:
                raise ConstraintClashError(t, f"root specialised to {s.types[s.find(root)]}")
            try:
                fs = s.extract(root)
            except _Clash as c:
                raise ConstraintClashError(t, c.failure) from None
            result = None if len(fs.types) == 1 else fs
            h.set_constraint(t, result)
            return result
        finally:
            in_progress.discard(t)

    h._resolver = expand
    try:
        for t in h.order:
            expand(t)
    finally:
        h._resolver = None
    for t in h.order:
        con = h.constraint(t)
        if con is not None:
            _check_appropriate(h, con, t)
            h.appropriate[t] = {f: con.types[n] for f, n in con.arcs[0].items()}


def build_fs(h: TypeHierarchy, terms, context: str = "<term>") -> FeatureStructure:
    """Expanded, well-typed structure for a parsed term (instance bodies)."""
    s = Session(h)
    b = _Builder(h, s, context)
    root = b.conj(terms)
    _welltype(h, s, b.raw, context)
    try:
        fs = s.extract(root)
    except _Clash as c:
        raise ConstraintClashError(context, c.failure) from None
    return fs


def fs_from_text(h: TypeHierarchy, text: str) -> FeatureStructure:
    """Convenience: ``fs_from_text(h, "[ A #1, B #1 ]")``."""
    from deepja.grammar.source import parse_term

    return build_fs(h, parse_term(text), text)


__all__ = ["load_type_hierarchy", "build_fs", "fs_from_text", "GrammarError"]
