"""Typed feature structures and well-typed unification.

A :class:`FeatureStructure` is an immutable rooted DAG stored as two
parallel tuples: ``types[i]`` is the type of node ``i`` and ``arcs[i]``
maps feature names to node ids. Node 0 is the root. Reentrancy is simply
two arcs pointing at the same id.

Unification copies: both operands are loaded into a scratch
:class:`Session` (a union-find over node ids), merged, and a fresh
structure is read back out. Operands are never touched.
"""

from __future__ import annotations

from dataclasses import dataclass

from deepja.tfs.hierarchy import TOP, TypeHierarchy

Path = tuple[str, ...]


class FeatureStructure:
    __slots__ = ("types", "arcs", "_hash")

    def __init__(self, types, arcs):
        self.types = tuple(types)
        self.arcs = tuple(arcs)
        self._hash = None

    @classmethod
    def atom(cls, type_name: str = TOP) -> "FeatureStructure":
        return cls((type_name,), ({},))

    @property
    def root_type(self) -> str:
        return self.types[0]

    def __len__(self) -> int:
        return len(self.types)

    def node_at(self, path: Path | str, start: int = 0) -> int | None:
        if isinstance(path, str):
            path = parse_path(path)
        node = start
        for feat in path:
            node = self.arcs[node].get(feat)
            if node is None:
                return None
        return node

    def get(self, path: Path | str) -> str | None:
        """Type at ``path`` or ``None`` when the path is absent."""
        node = self.node_at(path)
        return None if node is None else self.types[node]

    def sub(self, path: Path | str) -> "FeatureStructure | None":
        node = self.node_at(path)
        return None if node is None else self.subgraph(node)

    def subgraph(self, node: int) -> "FeatureStructure":
        ids = {node: 0}
        order = [node]
        i = 0
        while i < len(order):
            for tgt in self.arcs[order[i]].values():
                if tgt not in ids:
                    ids[tgt] = len(order)
                    order.append(tgt)
            i += 1
        return FeatureStructure(
            [self.types[n] for n in order],
            [{f: ids[t] for f, t in self.arcs[n].items()} for n in order],
        )

    def paths(self):
        """Yield ``(path, node)`` for every node, shortest path first."""
        seen = {0}
        frontier = [((), 0)]
        while frontier:
            nxt = []
            for path, node in frontier:
                yield path, node
                for f in sorted(self.arcs[node]):
                    tgt = self.arcs[node][f]
                    if tgt not in seen:
                        seen.add(tgt)
                        nxt.append((path + (f,), tgt))
            frontier = nxt

    def list_items(self, path: Path | str) -> list[int]:
        """Node ids of the elements of a FIRST/REST list at ``path``."""
        node = self.node_at(path)
        return [] if node is None else list_nodes(self.arcs, node)

    def __repr__(self):
        return f"<FeatureStructure {self.root_type} ({len(self)} nodes)>"

    def __str__(self):
        return dump(self)


def parse_path(text: str) -> Path:
    text = text.strip()
    return tuple(f.upper() for f in text.split(".")) if text else ()


def list_nodes(arcs, node: int, find=None) -> list[int]:
    out = []
    seen = set()
    while node is not None and node not in seen:
        seen.add(node)
        a = arcs[node]
        first = a.get("FIRST")
        if first is None:
            break
        out.append(first if find is None else find(first))
        node = a.get("REST")
        if node is not None and find is not None:
            node = find(node)
    return out


@dataclass(frozen=True)
class UnificationFailure:
    """Why a unification failed. Always falsy."""

    path: Path
    reason: str = "type-clash"
    types: tuple = ()

    def __bool__(self):
        return False

    def __str__(self):
        where = ".".join(self.path) or "<root>"
        detail = f" ({' vs '.join(self.types)})" if self.types else ""
        return f"{self.reason} at {where}{detail}"


class _Clash(Exception):
    def __init__(self, failure):
        self.failure = failure


class Session:
    """Mutable scratch space for one or more unifications.

    Structures are appended with :meth:`add`, merged with :meth:`unify`,
    and read back with :meth:`extract`.
    """

    __slots__ = ("h", "types", "arcs", "owned", "parent")

    def __init__(self, hierarchy: TypeHierarchy):
        self.h = hierarchy
        self.types: list[str] = []
        self.arcs: list[dict] = []
        self.owned: list[bool] = []
        self.parent: list[int] = []

    def add(self, fs: FeatureStructure) -> int:
        off = len(self.types)
        self.types.extend(fs.types)
        if off == 0:
            self.arcs.extend(fs.arcs)
            self.owned.extend([False] * len(fs.types))
        else:
            self.arcs.extend({f: t + off for f, t in a.items()} for a in fs.arcs)
            self.owned.extend([True] * len(fs.types))
        self.parent.extend(range(off, off + len(fs.types)))
        return off

    def new_node(self, type_name: str, arcs: dict | None = None) -> int:
        n = len(self.types)
        self.types.append(type_name)
        self.arcs.append(dict(arcs or {}))
        self.owned.append(True)
        self.parent.append(n)
        return n

    def find(self, n: int) -> int:
        parent = self.parent
        root = n
        while parent[root] != root:
            root = parent[root]
        while parent[n] != root:
            parent[n], n = root, parent[n]
        return root

    def follow(self, node: int, path: Path) -> int | None:
        node = self.find(node)
        for f in path:
            nxt = self.arcs[node].get(f)
            if nxt is None:
                return None
            node = self.find(nxt)
        return node

    def type_at(self, node: int, path: Path) -> str | None:
        n = self.follow(node, path)
        return None if n is None else self.types[n]

    def set_arc(self, node: int, feat: str, target: int) -> None:
        node = self.find(node)
        if not self.owned[node]:
            self.arcs[node] = dict(self.arcs[node])
            self.owned[node] = True
        self.arcs[node][feat] = target

    def unify(self, a: int, b: int, path: Path = ()) -> UnificationFailure | None:
        try:
            self._unify(a, b, path)
        except _Clash as c:
            return c.failure
        return None

    def _unify(self, a: int, b: int, path: Path) -> None:
        h = self.h
        types, arcs, owned, parent = self.types, self.arcs, self.owned, self.parent
        find = self.find
        stack = [(a, b, path)]
        while stack:
            a, b, path = stack.pop()
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            ta, tb = types[ra], types[rb]
            g = ta if ta == tb else h.glb(ta, tb)
            if g is None:
                raise _Clash(UnificationFailure(path, "type-clash", (ta, tb)))
            # keep the node with more arcs as representative
            if len(arcs[rb]) > len(arcs[ra]):
                ra, rb = rb, ra
            parent[rb] = ra
            types[ra] = g
            src = arcs[rb]
            if src:
                if not owned[ra]:
                    arcs[ra] = dict(arcs[ra])
                    owned[ra] = True
                dst = arcs[ra]
                for f, v in src.items():
                    w = dst.get(f)
                    if w is None:
                        dst[f] = v
                    else:
                        stack.append((w, v, path + (f,)))
            if g != ta and g != tb:
                con = h.constraint(g)
                if con is not None and len(con.types) > 1:
                    off = self.add(con)
                    stack.append((ra, off, path))

    def extract(self, root: int, skip: frozenset = frozenset()) -> FeatureStructure:
        """Read the structure reachable from ``root`` back out.

        Features in ``skip`` are dropped at the root only. Cyclic results
        raise :class:`_Clash` with reason ``cycle``.
        """
        find = self.find
        types, arcs = self.types, self.arcs
        root = find(root)
        ids = {root: 0}
        out_types = [types[root]]
        out_arcs: list[dict] = [None]
        # iterative DFS with cycle check
        state = {root: 1}
        stack = [(root, iter(sorted(arcs[root].items())), {}, ())]
        while stack:
            node, it, built, path = stack[-1]
            advanced = False
            for f, tgt in it:
                if node == root and f in skip:
                    continue
                t = find(tgt)
                st = state.get(t)
                if st == 1:
                    raise _Clash(UnificationFailure(path + (f,), "cycle"))
                if t not in ids:
                    ids[t] = len(out_types)
                    out_types.append(types[t])
                    out_arcs.append(None)
                built[f] = ids[t]
                if st is None:
                    state[t] = 1
                    stack.append((t, iter(sorted(arcs[t].items())), {}, path + (f,)))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                state[node] = 2
                out_arcs[ids[node]] = built
        return FeatureStructure(out_types, out_arcs)


def unify(hierarchy: TypeHierarchy, f1: FeatureStructure, f2: FeatureStructure,
          path: Path = ()) -> FeatureStructure | UnificationFailure:
    """Unify ``f2`` into ``f1`` at ``path`` (root by default).

    Returns the new structure, or an :class:`UnificationFailure` naming the
    path of the clash. ``path`` must exist in ``f1``.
    """
    s = Session(hierarchy)
    s.add(f1)
    target = s.follow(0, path)
    if target is None:
        return UnificationFailure(path, "missing-path")
    off = s.add(f2)
    fail = s.unify(target, off, path)
    if fail is not None:
        return fail
    try:
        return s.extract(0)
    except _Clash as c:
        return c.failure


def subsumes(hierarchy: TypeHierarchy, general: FeatureStructure,
             specific: FeatureStructure) -> bool:
    """True iff every type, path and reentrancy fact of ``general`` holds in ``specific``."""
    mapping: dict[int, int] = {}
    stack = [(0, 0)]
    while stack:
        g, s = stack.pop()
        seen = mapping.get(g)
        if seen is not None:
            if seen != s:
                return False
            continue
        mapping[g] = s
        if not hierarchy.subsumes(general.types[g], specific.types[s]):
            return False
        sarcs = specific.arcs[s]
        for f, gt in general.arcs[g].items():
            st = sarcs.get(f)
            if st is None:
                return False
            stack.append((gt, st))
    return True


def equivalent(hierarchy: TypeHierarchy, f1: FeatureStructure, f2: FeatureStructure) -> bool:
    return subsumes(hierarchy, f1, f2) and subsumes(hierarchy, f2, f1)


def dump(fs: FeatureStructure) -> str:
    """Indented attribute-value text; features sorted, ``#n`` marks shared nodes."""
    indeg: dict[int, int] = {}
    for a in fs.arcs:
        for t in a.values():
            indeg[t] = indeg.get(t, 0) + 1
    tags: dict[int, int] = {}
    lines: list[str] = []

    def walk(node: int, prefix: str, depth: int) -> None:
        pad = "  " * depth
        if indeg.get(node, 0) > 1:
            if node in tags:
                lines.append(f"{pad}{prefix}#{tags[node]}")
                return
            tags[node] = len(tags) + 1
            label = f"#{tags[node]} {fs.types[node]}"
        else:
            label = fs.types[node]
        lines.append(f"{pad}{prefix}{label}")
        for f in sorted(fs.arcs[node]):
            walk(fs.arcs[node][f], f + ": ", depth + 1)

    walk(0, "", 0)
    return "\n".join(lines)
