"""Ill-formed MRSs made by breaking well-formed ones, for testing the checker."""

from __future__ import annotations

import random

from deepja.mrs.core import EP, Mrs


def _fresh(m: Mrs, sort: str) -> str:
    nums = [int(v[1:]) for v in _all_vars(m)]
    return f"{sort}{max(nums, default=0) + 100}"


def _all_vars(m: Mrs) -> set:
    out = {m.top, m.index} - {None}
    for ep in m.rels:
        out.add(ep.label)
        out.update(v for _, v in ep.args if isinstance(v, str) and v[:1] in "hexiu" and v[1:].isdigit())
    for a, b in m.hcons:
        out.update((a, b))
    return out - {None}


def _replace(m: Mrs, **kw) -> Mrs:
    d = dict(top=m.top, index=m.index, rels=m.rels, hcons=m.hcons,
             background=m.background, props=m.props)
    d.update(kw)
    return Mrs(**d)


def drop_qeq(m, rng):
    if not m.hcons:
        return None
    k = rng.randrange(len(m.hcons))
    return _replace(m, hcons=m.hcons[:k] + m.hcons[k + 1:])


def dangle_qeq(m, rng):
    """Point a qeq at a label no EP carries."""
    if not m.hcons:
        return None
    k = rng.randrange(len(m.hcons))
    hi, _ = m.hcons[k]
    hc = list(m.hcons)
    hc[k] = (hi, _fresh(m, "h"))
    return _replace(m, hcons=tuple(hc))


def break_index(m, rng):
    return _replace(m, index=_fresh(m, "e"))


def drop_top(m, rng):
    return _replace(m, top=None)


def self_cycle(m, rng):
    """Make some EP's hole its own label."""
    cands = [k for k, ep in enumerate(m.rels) if ep.holes()]
    if not cands:
        return None
    k = rng.choice(cands)
    ep = m.rels[k]
    hole = rng.choice(ep.holes())
    args = tuple((r, ep.label if v == hole else v) for r, v in ep.args)
    rels = list(m.rels)
    rels[k] = EP(ep.pred, ep.label, args)
    return _replace(m, rels=tuple(rels))


def extra_label(m, rng):
    """An EP under a label nothing can plug."""
    ep = EP.of("stray_rel", _fresh(m, "h"), ARG0=_fresh(m, "x"))
    return _replace(m, rels=m.rels + (ep,))


def unlabel(m, rng):
    k = rng.randrange(len(m.rels))
    ep = m.rels[k]
    rels = list(m.rels)
    rels[k] = EP(ep.pred, None, ep.args)
    return _replace(m, rels=tuple(rels))


def remove_ep(m, rng):
    """Drop an EP that is alone under its label, leaving a hole without a label."""
    counts = {}
    for ep in m.rels:
        counts[ep.label] = counts.get(ep.label, 0) + 1
    cands = [k for k, ep in enumerate(m.rels) if counts[ep.label] == 1]
    if not cands:
        return None
    k = rng.choice(cands)
    return _replace(m, rels=m.rels[:k] + m.rels[k + 1:])


MUTATIONS = {
    "drop_qeq": drop_qeq,
    "dangle_qeq": dangle_qeq,
    "break_index": break_index,
    "drop_top": drop_top,
    "self_cycle": self_cycle,
    "extra_label": extra_label,
    "unlabel": unlabel,
    "remove_ep": remove_ep,
}


def generate_negatives(seeds, n: int = 100, seed: int = 0) -> list[tuple[str, Mrs]]:
    """``n`` mutated copies of the well-formed ``seeds`` as (mutation, mrs) pairs.

    Mutations cycle in a fixed order so every kind is represented.
    """
    seeds = [m for m in seeds if m.rels]
    if not seeds:
        return []
    rng = random.Random(seed)
    names = sorted(MUTATIONS)
    out = []
    tries = 0
    while len(out) < n and tries < 50 * n:
        name = names[tries % len(names)]
        tries += 1
        bad = MUTATIONS[name](rng.choice(seeds), rng)
        if bad is not None:
            out.append((name, bad))
    return out
