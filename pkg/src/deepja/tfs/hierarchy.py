"""Multiple-inheritance type hierarchy with a precomputed GLB table.

String literals (``'"yon"'``) are not declared; each one behaves as an
immediate, mutually incompatible subtype of ``string``.
"""

from __future__ import annotations

from collections import deque

from deepja.tfs.errors import (
    AmbiguousGlbError,
    CycleError,
    HierarchyError,
    UnknownTypeError,
)

TOP = "*top*"
STRING = "string"


def is_string_literal(name: str) -> bool:
    return len(name) >= 2 and name[0] == '"' and name[-1] == '"'


class TypeHierarchy:
    """Validated type lattice.

    ``parents`` maps every declared type to its direct supertypes. ``*top*``
    must be declared (with no parents) and be the unique root.
    """

    def __init__(self, parents: dict[str, tuple[str, ...]]):
        if TOP not in parents:
            raise HierarchyError(f"missing top type {TOP}")
        for t, ps in parents.items():
            if t != TOP and not ps:
                raise HierarchyError(f"type {t} has no supertype (only {TOP} may be a root)")
            for p in ps:
                if p not in parents:
                    raise UnknownTypeError(p, context=t)
        self.parents = {t: tuple(ps) for t, ps in parents.items()}
        self.order = self._toposort()
        self._index = {t: i for i, t in enumerate(self.order)}
        self.children: dict[str, list[str]] = {t: [] for t in self.order}
        for t in self.order:
            for p in self.parents[t]:
                self.children[p].append(t)
        self._below = self._descendant_masks()
        self._by_mask = {m: t for t, m in self._below.items()}
        self._glb = self._glb_table()
        # filled in by the grammar loader
        self.appropriate: dict[str, dict[str, str]] = {t: {} for t in self.order}
        self.introduced_by: dict[str, str] = {}
        self._constraints: dict = {}
        self._resolver = None

    # -- construction -----------------------------------------------------

    def _toposort(self) -> list[str]:
        indeg = {t: len(ps) for t, ps in self.parents.items()}
        kids: dict[str, list[str]] = {t: [] for t in self.parents}
        for t, ps in self.parents.items():
            for p in ps:
                kids[p].append(t)
        queue = deque(sorted(t for t, d in indeg.items() if d == 0))
        out = []
        while queue:
            t = queue.popleft()
            out.append(t)
            for k in kids[t]:
                indeg[k] -= 1
                if indeg[k] == 0:
                    queue.append(k)
        if len(out) != len(self.parents):
            stuck = sorted(t for t, d in indeg.items() if d > 0)
            raise CycleError(stuck)
        return out

    def _descendant_masks(self) -> dict[str, int]:
        below: dict[str, int] = {}
        for t in reversed(self.order):
            m = 1 << self._index[t]
            for k in self.children[t]:
                m |= below[k]
            below[t] = m
        return below

    def _glb_table(self) -> dict[tuple[str, str], str | None]:
        table: dict[tuple[str, str], str | None] = {}
        order = self.order
        for i, a in enumerate(order):
            ma = self._below[a]
            for b in order[i:]:
                mb = self._below[b]
                common = ma & mb
                if common == 0:
                    g = None
                elif common == ma:
                    g = a
                elif common == mb:
                    g = b
                else:
                    g = self._by_mask.get(common)
                    if g is None:
                        raise AmbiguousGlbError(a, b, self._maximal(common))
                table[a, b] = table[b, a] = g
        return table

    def _maximal(self, mask: int) -> list[str]:
        members = [t for t in self.order if mask >> self._index[t] & 1]
        return [t for t in members
                if not any(u != t and self._below[u] >> self._index[t] & 1 for u in members)]

    # -- queries ----------------------------------------------------------

    def __contains__(self, t: str) -> bool:
        return t in self._index or is_string_literal(t)

    def __len__(self) -> int:
        return len(self.order)

    def check(self, t: str) -> None:
        if t not in self:
            raise UnknownTypeError(t)

    def subsumes(self, general: str, specific: str) -> bool:
        """True when ``specific`` is ``general`` or one of its subtypes."""
        if general == specific:
            return True
        if is_string_literal(specific):
            if is_string_literal(general):
                return False
            self.check(general)
            return STRING in self._index and self.subsumes(general, STRING)
        if is_string_literal(general):
            return False
        try:
            return bool(self._below[general] >> self._index[specific] & 1)
        except KeyError as exc:
            raise UnknownTypeError(exc.args[0]) from None

    def glb(self, a: str, b: str) -> str | None:
        """Greatest lower bound of two types; ``None`` stands for bottom."""
        if a == b:
            self.check(a)
            return a
        sa, sb = is_string_literal(a), is_string_literal(b)
        if sa or sb:
            if sa and sb:
                return None
            lit, other = (a, b) if sa else (b, a)
            return lit if self.subsumes(other, lit) else None
        try:
            return self._glb[a, b]
        except KeyError:
            self.check(a)
            self.check(b)
            raise

    def ancestors(self, t: str) -> set[str]:
        if is_string_literal(t):
            return {t} | self.ancestors(STRING)
        self.check(t)
        seen = {t}
        stack = [t]
        while stack:
            for p in self.parents[stack.pop()]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def descendants(self, t: str) -> list[str]:
        m = self._below[t]
        return [u for u in self.order if m >> self._index[u] & 1]

    def constraint(self, t: str):
        """Expanded constraint of ``t`` or ``None`` when it is a bare node."""
        if t in self._constraints:
            return self._constraints[t]
        if self._resolver is not None and not is_string_literal(t):
            return self._resolver(t)
        return None

    def set_constraint(self, t: str, fs) -> None:
        self._constraints[t] = fs
