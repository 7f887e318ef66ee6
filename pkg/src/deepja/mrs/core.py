"""MRS values and their canonical text form.

Variables are strings whose first letter is the sort: ``h`` handle, ``e``
event, ``x`` instance, ``i`` unspecified individual, ``u`` anything else.
Constant arguments (CARG) are kept as quoted strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

ROLE_ORDER = ("LBL", "ARG0", "ARG1", "ARG2", "ARG3", "ARG", "RSTR", "BODY",
              "HONORER", "HONORED", "CARG")
_VAR = re.compile(r"^[hexiu]\d+$")


def is_var(v) -> bool:
    return isinstance(v, str) and bool(_VAR.match(v))


def is_handle(v) -> bool:
    return is_var(v) and v[0] == "h"


def role_key(role: str):
    return (ROLE_ORDER.index(role) if role in ROLE_ORDER else len(ROLE_ORDER), role)


@dataclass(frozen=True)
class EP:
    """Elementary predication."""

    pred: str
    label: str | None
    args: tuple = ()  # sorted (role, value) pairs

    @classmethod
    def of(cls, pred, label, **args) -> "EP":
        return cls(pred, label, tuple(sorted(args.items(), key=lambda kv: role_key(kv[0]))))

    @property
    def argmap(self) -> dict:
        return dict(self.args)

    def get(self, role, default=None):
        return self.argmap.get(role, default)

    @property
    def is_quantifier(self) -> bool:
        roles = self.argmap
        return "RSTR" in roles and "BODY" in roles

    def holes(self) -> list[str]:
        return [v for r, v in self.args if is_handle(v)]

    def variables(self) -> list[str]:
        return [v for r, v in self.args if is_var(v) and not is_handle(v)]

    def rename(self, f) -> "EP":
        return EP(self.pred, f(self.label) if self.label else self.label,
                  tuple((r, f(v) if is_var(v) else v) for r, v in self.args))

    def text(self) -> str:
        parts = [self.pred]
        if self.label is not None:
            parts.append(f"LBL: {self.label}")
        parts.extend(f"{r}: {v}" for r, v in self.args)
        return "[ " + " ".join(parts) + " ]"


@dataclass(frozen=True)
class Mrs:
    top: str | None
    index: str | None
    rels: tuple = ()
    hcons: tuple = ()  # (hole, label) pairs, read "hole qeq label"
    background: tuple = ()  # contextual EPs, printed in a separate section
    props: tuple = ()  # (variable, ((feature, value), ...)) pairs

    def properties(self) -> dict:
        return {v: dict(p) for v, p in self.props}

    def labels(self) -> set[str]:
        return {ep.label for ep in self.rels if ep.label is not None}

    def rename(self, f) -> "Mrs":
        g = lambda v: f(v) if is_var(v) else v
        return Mrs(g(self.top) if self.top else None, g(self.index) if self.index else None,
                   tuple(ep.rename(f) for ep in self.rels),
                   tuple((g(a), g(b)) for a, b in self.hcons),
                   tuple(ep.rename(f) for ep in self.background),
                   tuple((g(v), p) for v, p in self.props))

    def text(self, context: bool = False, properties: bool = False) -> str:
        """Canonical one-line serialisation."""
        rels = " ".join(ep.text() for ep in self.rels)
        hcons = " ".join(f"{a} qeq {b}" for a, b in self.hcons)
        out = (f"[ TOP: {self.top or '_'} INDEX: {self.index or '_'} "
               f"RELS: < {rels} > HCONS: < {hcons} > ]").replace("<  >", "< >")
        if properties and self.props:
            ps = " ".join(f"{v} [ " + " ".join(f"{k}: {x}" for k, x in p) + " ]"
                          for v, p in self.props)
            out += f" PROPS: < {ps} >"
        if context:
            bg = " ".join(ep.text() for ep in self.background)
            out += f" CONTEXT: < {bg} >".replace("<  >", "< >")
        return out

    def __str__(self):
        return self.text()


def canonicalize(m: Mrs) -> Mrs:
    """Sort relations by (predicate, label) and renumber variables.

    Numbering starts with TOP, the top label and INDEX (so ``h0``, ``h1``,
    ``e2`` in the usual case), then follows first occurrence.
    """
    ltop = next((b for a, b in m.hcons if a == m.top), None)
    order: list[str] = []

    def visit(v):
        if is_var(v) and v not in order:
            order.append(v)

    def walk(mm: Mrs, first: list):
        order.clear()
        for v in first:
            visit(v)
        for ep in mm.rels:
            visit(ep.label)
            for _, v in ep.args:
                visit(v)
        for a, b in mm.hcons:
            visit(a)
            visit(b)
        for ep in mm.background:
            visit(ep.label)
            for _, v in ep.args:
                visit(v)

    def renamer():
        table = {v: f"{v[0]}{k}" for k, v in enumerate(order)}
        return lambda v: table.get(v, v)

    first = [v for v in (m.top, ltop, m.index) if v]
    # first pass: order by predicate so numbering does not depend on derivation order
    pre = Mrs(m.top, m.index, tuple(sorted(m.rels, key=lambda ep: ep.pred)), m.hcons,
              m.background, m.props)
    walk(pre, first)
    r = pre.rename(renamer())
    rels = tuple(sorted(r.rels, key=lambda ep: (ep.pred, _num(ep.label))))
    hcons = tuple(sorted(r.hcons, key=lambda ab: (_num(ab[0]), _num(ab[1]))))
    bg = tuple(sorted(r.background, key=lambda ep: (ep.pred, _num(ep.label))))
    props = tuple(sorted(r.props, key=lambda vp: _num(vp[0])))
    return Mrs(r.top, r.index, rels, hcons, bg, props)


def _num(v):
    return int(v[1:]) if is_var(v) else -1


@dataclass
class Check:
    """Result of a well-formedness check; truthy when there are no diagnostics."""

    diagnostics: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def __bool__(self):
        return self.ok

    def __iter__(self):
        return iter(self.diagnostics)
