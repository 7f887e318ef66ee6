"""Well-formedness and exhaustive scope resolution.

A scoped form plugs every hole (TOP and every handle-valued argument that
is not itself a label) with exactly one label, using each label exactly
once, so that the result is a tree rooted at TOP, every ``hi qeq lo``
holds (``lo`` is reached from ``hi`` passing only through quantifier
bodies) and every quantified variable is used only inside its quantifier's
scope.
"""

from __future__ import annotations

from deepja.mrs.core import Check, Mrs, is_handle

SCOPE_CAP = 4096


class ScopeLimitExceeded(Exception):
    pass


def _groups(m: Mrs) -> dict:
    groups: dict[str, list] = {}
    for ep in m.rels:
        if ep.label is not None:
            groups.setdefault(ep.label, []).append(ep)
    return groups


def _holes(m: Mrs, labels) -> list[str]:
    """TOP first, then handle arguments in relation order (labels excluded)."""
    out = [m.top] if m.top is not None else []
    for ep in m.rels:
        for v in ep.holes():
            if v not in labels and v not in out:
                out.append(v)
    return out


def check_wellformed(m: Mrs) -> Check:
    """Structural checks; each violation gives one diagnostic string."""
    diags: list[str] = []
    groups = _groups(m)
    labels = set(groups)
    for ep in m.rels:
        if ep.label is None:
            diags.append(f"missing label: {ep.pred}")
        elif ep.label in ep.holes():
            diags.append(f"handle cycle: {ep.pred} {ep.label} is both label and hole")
    if m.top is None or not is_handle(m.top):
        diags.append("unresolvable top")
    used = {v for ep in m.rels for v in ep.variables()}
    if m.index is None or m.index not in used:
        diags.append("unresolvable index")
    holes = _holes(m, labels)
    qeq_of = {}
    for hi, lo in m.hcons:
        if hi not in holes:
            diags.append(f"dangling qeq: {hi} is not a hole")
        if lo not in labels:
            diags.append(f"dangling qeq: {lo} is not a label")
        if hi in qeq_of:
            diags.append(f"conflicting qeq on {hi}")
        qeq_of[hi] = lo
    bodies = {ep.get("BODY") for ep in m.rels if ep.is_quantifier}
    for hole in holes:
        if hole not in qeq_of and hole not in bodies:
            diags.append(f"unbound hole: {hole}")
    if len(holes) != len(labels):
        diags.append(f"label/hole mismatch: {len(labels)} labels for {len(holes)} holes")
    # qeq edges plus label identities must not loop: label -> its holes -> qeq label
    succ = {lab: {qeq_of[h] for ep in eps for h in ep.holes() if h in qeq_of}
            | {h for ep in eps for h in ep.holes() if h in labels}
            for lab, eps in groups.items()}
    state: dict[str, int] = {}

    def cyclic(lab):
        state[lab] = 1
        for nxt in succ.get(lab, ()):
            if state.get(nxt) == 1 or (nxt not in state and cyclic(nxt)):
                return True
        state[lab] = 2
        return False

    if any(lab not in state and cyclic(lab) for lab in sorted(succ)):
        diags.append("handle cycle")
    # every quantified variable needs a quantifier whose scope can hold its users
    bound = {}
    for ep in m.rels:
        if ep.is_quantifier:
            x = ep.get("ARG0")
            if x in bound:
                diags.append(f"doubly bound variable: {x}")
            bound[x] = ep
    return Check(diags)


def resolve_scopes(m: Mrs, cap: int = SCOPE_CAP) -> list[dict]:
    """All scoped forms, as hole -> label maps. Empty when none exists.

    Raises :class:`ScopeLimitExceeded` when more than ``cap`` are found.
    """
    groups = _groups(m)
    if m.top is None or any(ep.label is None for ep in m.rels) or not groups:
        return []
    labels = set(groups)
    holes = _holes(m, labels)
    if len(holes) != len(labels):
        return []
    if m.index is None or m.index not in {v for ep in m.rels for v in ep.variables()}:
        return []
    qeqs = list(m.hcons)
    for hi, lo in qeqs:
        if hi not in holes or lo not in labels:
            return []
    group_holes = {lab: [h for ep in eps for h in ep.holes() if h not in labels]
                   for lab, eps in groups.items()}
    # fixed pluggings: a handle argument that is itself a label
    fixed_children = {lab: [h for ep in eps for h in ep.holes() if h in labels]
                      for lab, eps in groups.items()}
    quant_body = {}
    for lab, eps in groups.items():
        if len(eps) == 1 and eps[0].is_quantifier:
            quant_body[lab] = eps[0].get("BODY")
    bodies = set(quant_body.values())
    binders = {}
    for ep in m.rels:
        if ep.is_quantifier:
            if ep.get("ARG0") in binders:
                return []
            binders[ep.get("ARG0")] = ep.label
    users = {}
    for ep in m.rels:
        for v in ep.variables():
            if v in binders and binders[v] != ep.label:
                users.setdefault(v, set()).add(ep.label)
    results: list[dict] = []

    def bound_ok(parent: dict) -> bool:
        for v, labs in users.items():
            q = binders[v]
            for lab in labs:
                while lab is not None and lab != q:
                    lab = parent.get(lab)
                if lab is None:
                    return False
        return True

    def place(lab, owner, free, parent, frontier):
        """Put ``lab`` (and labels it embeds directly) into the tree."""
        if lab not in free:
            return False
        free.discard(lab)
        parent[lab] = owner
        frontier.extend(group_holes[lab])
        return all(place(c, lab, free, parent, frontier) for c in fixed_children[lab])

    def search(frontier, plug, free, parent, oblig):
        if not frontier:
            if not free and bound_ok(parent):
                if len(results) >= cap:
                    raise ScopeLimitExceeded(f"more than {cap} scoped forms")
                results.append(dict(plug))
            return
        hole, rest = frontier[0], frontier[1:]
        if hole not in oblig and hole not in bodies:
            return  # apart from quantifier bodies, a hole is licensed by its qeq
        for lab in sorted(free):
            pending = tuple(lo for lo in oblig.get(hole, ()) if lo != lab)
            ob = oblig
            if pending:
                # only a quantifier may intervene; its body inherits the constraint
                body = quant_body.get(lab)
                if body is None:
                    continue
                ob = dict(oblig)
                ob[body] = ob.get(body, ()) + pending
            f2, p2, fr2 = set(free), dict(parent), list(rest)
            if not place(lab, parent_of[hole], f2, p2, fr2):
                continue
            plug[hole] = lab
            search(fr2, plug, f2, p2, ob)
            del plug[hole]

    parent_of = {m.top: None}
    for lab, hs in group_holes.items():
        for h in hs:
            parent_of[h] = lab
    oblig0: dict = {}
    for hi, lo in qeqs:
        oblig0[hi] = oblig0.get(hi, ()) + (lo,)
    search([m.top], {}, set(labels), {}, oblig0)
    return results
