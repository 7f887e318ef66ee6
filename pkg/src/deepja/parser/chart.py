"""Agenda-driven bottom-up chart parsing over token lattices.

Edges are passive and never packed: every edge is one derivation, so the
set of root edges is the set of analyses. Before a rule is tried, the
quick check compares the types found at a few paths of each daughter with
the types the rule expects there; a clash at any path means unification
would fail, so the task is skipped.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from deepja.fragment import default_entry, placeholder_entry
from deepja.grammar.grammar import Grammar, phon_of
from deepja.grammar.morph import LexItem, closure, full_forms
from deepja.grammar.rules import apply_schema
from deepja.preproc.segment import Lattice, map_inflection, segment
from deepja.tfs.fs import FeatureStructure, parse_path, unify

DEFAULT_QC_PATHS = (
    "SYNSEM.LOCAL.HEAD",
    "SYNSEM.LOCAL.SUBCAT.SAT.SUBJ",
    "SYNSEM.LOCAL.SUBCAT.SAT.OBJ",
    "SYNSEM.LOCAL.SUBCAT.SAT.OBJ2",
    "SYNSEM.LOCAL.SUBCAT.SAT.SPR",
    "SYNSEM.LOCAL.HEAD.SPEC",
    "SYNSEM.LOCAL.HEAD.MARK",
)
EDGE_LIMIT = 20000


class ResourceLimitExceeded(Exception):
    pass


@dataclass(frozen=True)
class QuickCheckVector:
    """Ordered feature paths for the quick check."""

    paths: tuple = tuple(parse_path(p) for p in DEFAULT_QC_PATHS)

    @classmethod
    def of(cls, paths) -> "QuickCheckVector":
        return cls(tuple(parse_path(p) if isinstance(p, str) else tuple(p) for p in paths))

    def vector(self, fs: FeatureStructure, prefix: tuple = ()) -> tuple:
        """Type at each path (None when absent)."""
        return tuple(fs.get(prefix + p) for p in self.paths)


def compatible(h, v1, v2) -> bool:
    for a, b in zip(v1, v2):
        if a is not None and b is not None and a != b and h.glb(a, b) is None:
            return False
    return True


@dataclass(eq=False)
class Edge:
    span: tuple
    sign: FeatureStructure
    rule: str  # schema name, or lexical item label for lexical edges
    daughters: tuple = ()
    score: int = 0
    id: int = 0
    qc: tuple = ()
    surface: str = ""

    @property
    def lexical(self) -> bool:
        return not self.daughters

    @property
    def daughter_ids(self) -> tuple:
        return tuple(d.id for d in self.daughters)

    def __repr__(self):
        return f"<Edge {self.id} {self.rule} {self.span}>"


def quick_check(e1, e2, qc: QuickCheckVector | None = None, hierarchy=None) -> bool:
    """True unless some quick-check path carries clashing types in the two signs.

    Accepts edges or feature structures. Absent paths count as compatible.
    """
    qc = qc or QuickCheckVector()
    v1 = e1.qc if isinstance(e1, Edge) and e1.qc else qc.vector(getattr(e1, "sign", e1))
    v2 = e2.qc if isinstance(e2, Edge) and e2.qc else qc.vector(getattr(e2, "sign", e2))
    if hierarchy is None:
        from deepja.fragment import load_fragment

        hierarchy = load_fragment().hierarchy
    return compatible(hierarchy, v1, v2)


@dataclass
class ParseStats:
    items: int = 1
    tasks: int = 0
    etasks: int = 0
    filtered: int = 0
    edges: int = 0
    first_time: float | None = None
    total_time: float = 0.0
    space: int = 0  # feature-structure nodes held in the chart
    lexical_items: int = 0
    readings: int = 0

    @property
    def filter_rate(self) -> float:
        return self.filtered / self.tasks if self.tasks else 0.0

    def __add__(self, other: "ParseStats") -> "ParseStats":
        firsts = [t for t in (self.first_time, other.first_time) if t is not None]
        return ParseStats(
            self.items + other.items, self.tasks + other.tasks, self.etasks + other.etasks,
            self.filtered + other.filtered, self.edges + other.edges,
            sum(firsts) if firsts else None, self.total_time + other.total_time,
            self.space + other.space, self.lexical_items + other.lexical_items,
            self.readings + other.readings)


@dataclass
class ParseOptions:
    qc: bool = True
    qc_paths: tuple = DEFAULT_QC_PATHS
    edge_limit: int = EDGE_LIMIT
    root: str | None = None  # name of the root condition; first one by default
    lexrule_depth: int = 5


@dataclass
class Forest:
    grammar: Grammar
    lattice: Lattice
    edges: list = field(default_factory=list)
    roots: list = field(default_factory=list)
    root_signs: dict = field(default_factory=dict)  # edge id -> sign unified with root
    stats: ParseStats = field(default_factory=ParseStats)
    n: int = 0  # number of chart vertices - 1

    def __len__(self):
        return len(self.roots)

    def root_sign(self, edge: Edge) -> FeatureStructure:
        return self.root_signs.get(edge.id, edge.sign)


def _lex_items(g: Grammar, tok, spans, depth) -> list[LexItem]:
    if tok.known:
        wanted = set(tok.entries)
        key = tok.surface if tok.pos == "placeholder" else tok.surface.lower()
        items = [i for i in full_forms(g)[key] if i.label in wanted]
        if tok.pos == "placeholder":
            sp = spans.get(tok.span[0])
            if sp is not None:
                out = []
                for it in items:
                    fs = placeholder_entry(sp.kind, sp.payload, g)
                    out.append(LexItem(it.entry, it.surface, fs if fs is not None else it.fs,
                                       it.rules))
                items = out
        return items
    fs = default_entry(tok.surface, tok.pos, map_inflection(tok), g)
    if fs is None:
        return []
    name = f"generic:{tok.pos}"
    return [i for i in closure(g, name, fs, depth) if i.fs.get("INFLECTED") != "-"]


def lexical_edges(g: Grammar, lattice: Lattice, spans=(), depth: int = 5):
    """(vertex span, lexical item, surface) triples for every lattice arc."""
    index = {v: k for k, v in enumerate(lattice.vertices)}
    by_start = {sp.out_start: sp for sp in spans}
    out = []
    for tok in lattice.tokens:
        span = (index[tok.span[0]], index[lattice.next_vertex(tok)])
        for item in _lex_items(g, tok, by_start, depth):
            out.append((span, item, tok.surface))
    out.sort(key=lambda x: (x[0], x[1].label, x[2]))
    return out, len(index) - 1


def lb_bonus(g: Grammar, rule_name: str, daughters) -> int:
    """+1 when a left-branching-eligible rule attaches something that is not
    itself built by such a rule on its right."""
    r = g.rules.get(rule_name)
    if r is None or not r.lb or len(daughters) != 2:
        return 0
    right = daughters[1]
    rr = g.rules.get(right.rule)
    return 0 if rr is not None and rr.lb else 1


class Chart:
    def __init__(self, g: Grammar, options: ParseOptions):
        self.g = g
        self.opt = options
        self.qcv = QuickCheckVector.of(options.qc_paths)
        self.edges: list[Edge] = []
        self.starting: dict[int, list[Edge]] = {}
        self.ending: dict[int, list[Edge]] = {}
        self.agenda: deque = deque()
        self.stats = ParseStats()
        self.unary = [r for _, r in sorted(g.rules.items()) if r.arity == 1]
        self.binary = [r for _, r in sorted(g.rules.items()) if r.arity == 2]
        self.rule_qc = {
            r.name: tuple(self.qcv.vector(r.fs, ("ARGS",) + ("REST",) * k + ("FIRST",))
                          for k in range(r.arity))
            for r in g.rules.values()
        }

    def new_edge(self, span, sign, rule, daughters=(), score=0, surface="") -> Edge:
        if len(self.edges) >= self.opt.edge_limit:
            raise ResourceLimitExceeded(f"more than {self.opt.edge_limit} edges")
        e = Edge(span, sign, rule, tuple(daughters), score, len(self.edges),
                 self.qcv.vector(sign), surface)
        self.edges.append(e)
        self.stats.space += len(sign)
        self.agenda.append(e)
        return e

    def task(self, rule, dtrs) -> None:
        st = self.stats
        st.tasks += 1
        if self.opt.qc:
            h = self.g.hierarchy
            for k, d in enumerate(dtrs):
                if not compatible(h, self.rule_qc[rule.name][k], d.qc):
                    st.filtered += 1
                    return
        st.etasks += 1
        res = apply_schema(self.g, rule, [d.sign for d in dtrs])
        if res:
            span = (dtrs[0].span[0], dtrs[-1].span[1])
            score = rule.weight + sum(d.score for d in dtrs) + lb_bonus(self.g, rule.name, dtrs)
            self.new_edge(span, res, rule.name, dtrs, score)

    def process(self, e: Edge) -> None:
        self.starting.setdefault(e.span[0], []).append(e)
        self.ending.setdefault(e.span[1], []).append(e)
        for r in self.unary:
            self.task(r, (e,))
        for r in self.binary:
            for right in list(self.starting.get(e.span[1], ())):
                self.task(r, (e, right))
            for left in list(self.ending.get(e.span[0], ())):
                self.task(r, (left, e))


def _root_fs(g: Grammar, name: str | None) -> FeatureStructure:
    if name is None:
        return next(iter(g.roots.values()))
    return g.roots[name]


def parse(text_or_lattice, grammar: Grammar, options: ParseOptions | None = None,
          spans=()) -> Forest:
    """Parse a (preprocessed) string or a lattice exhaustively."""
    opt = options or ParseOptions()
    g = grammar
    t0 = time.perf_counter()
    lattice = text_or_lattice if isinstance(text_or_lattice, Lattice) else segment(text_or_lattice, g)
    lex, n = lexical_edges(g, lattice, spans, opt.lexrule_depth)
    chart = Chart(g, opt)
    root = _root_fs(g, opt.root)
    forest = Forest(g, lattice, chart.edges, stats=chart.stats, n=n)
    for span, item, surface in lex:
        w = sum(g.lexrules[r].weight for r in item.rules if r in g.lexrules)
        entry = g.lexicon.get(item.entry)
        w += entry.weight if entry is not None else 0
        chart.new_edge(span, item.fs, item.label, (), w, surface)
    chart.stats.lexical_items = len(lex)
    while chart.agenda:
        e = chart.agenda.popleft()
        chart.process(e)
        if n > 0 and e.span == (0, n):
            r = unify(g.hierarchy, e.sign, root)
            if r:
                forest.roots.append(e)
                forest.root_signs[e.id] = r
                if chart.stats.first_time is None:
                    chart.stats.first_time = time.perf_counter() - t0
    chart.stats.edges = len(chart.edges)
    chart.stats.readings = len(forest.roots)
    chart.stats.total_time = time.perf_counter() - t0
    return forest


def derivation(edge: Edge) -> str:
    """Bracketed derivation tree: ``(rule (entry "surface") ...)``."""
    if edge.lexical:
        return f'({edge.rule} "{edge.surface or phon_of(edge.sign)}")'
    return f"({edge.rule} " + " ".join(derivation(d) for d in edge.daughters) + ")"
