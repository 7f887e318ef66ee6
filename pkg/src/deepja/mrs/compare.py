"""MRS equivalence up to renaming of variables and handles."""

from __future__ import annotations

from deepja.mrs.core import EP, Mrs, is_var


def _extend(mapping: dict, used: set, a, b) -> dict | None:
    """``mapping`` plus a -> b, or None if that clashes."""
    if is_var(a) != is_var(b):
        return None
    if not is_var(a):
        return mapping if a == b else None
    if a[0] != b[0]:
        return None
    if a in mapping:
        return mapping if mapping[a] == b else None
    if b in used:
        return None
    out = dict(mapping)
    out[a] = b
    return out


def _match_ep(mapping, used, e1: EP, e2: EP):
    if e1.pred != e2.pred or len(e1.args) != len(e2.args):
        return None
    if (e1.label is None) != (e2.label is None):
        return None
    if e1.label is not None:
        mapping = _extend(mapping, used, e1.label, e2.label)
        if mapping is None:
            return None
        used = used | {e2.label}
    for (r1, v1), (r2, v2) in zip(e1.args, e2.args):
        if r1 != r2:
            return None
        mapping = _extend(mapping, used, v1, v2)
        if mapping is None:
            return None
        if is_var(v2):
            used = used | {v2}
    return mapping


def _match_bag(mapping, eps1, eps2):
    """Every bijection between the two EP bags that extends ``mapping``."""
    if not eps1:
        yield mapping
        return
    first, rest = eps1[0], eps1[1:]
    used = set(mapping.values())
    for k, cand in enumerate(eps2):
        m2 = _match_ep(mapping, used, first, cand)
        if m2 is not None:
            yield from _match_bag(m2, rest, eps2[:k] + eps2[k + 1:])


def mrs_equal(m1: Mrs, m2: Mrs) -> bool:
    """True iff ``m1`` and ``m2`` are isomorphic, with rels and context as bags.

    Handle constraints and variable properties must correspond under the
    same renaming.
    """
    if len(m1.rels) != len(m2.rels) or len(m1.background) != len(m2.background):
        return False
    if len(m1.hcons) != len(m2.hcons):
        return False
    start: dict | None = {}
    for a, b in ((m1.top, m2.top), (m1.index, m2.index)):
        if (a is None) != (b is None):
            return False
        if a is not None:
            start = _extend(start, set(start.values()), a, b)
            if start is None:
                return False
    eps1 = list(m1.rels) + list(m1.background)
    eps2 = list(m2.rels) + list(m2.background)
    n = len(m1.rels)
    props2 = m2.properties()
    for mapping in _match_bag(start, eps1, eps2):
        # rels must map onto rels and background onto background
        if not _same_sections(mapping, eps1[:n], m2.rels):
            continue
        h1 = sorted((mapping.get(a, a), mapping.get(b, b)) for a, b in m1.hcons)
        if h1 != sorted(m2.hcons):
            continue
        p1 = {mapping.get(v, v): p for v, p in m1.properties().items()}
        if p1 == props2:
            return True
    return False


def _same_sections(mapping, rels1, rels2) -> bool:
    renamed = sorted(ep.rename(lambda v: mapping.get(v, v)).text() for ep in rels1)
    return renamed == sorted(ep.text() for ep in rels2)
