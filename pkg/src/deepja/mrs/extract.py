"""Reading an MRS off a sign."""

from __future__ import annotations

from deepja.mrs.core import EP, Mrs, canonicalize, role_key
from deepja.tfs.fs import FeatureStructure, list_nodes
from deepja.tfs.hierarchy import is_string_literal

CONT = ("SYNSEM", "LOCAL", "CONT")
EVENT_PROPS = ("TENSE", "ASPECT")


class MalformedSemanticsError(Exception):
    pass


def _sort(h, t: str) -> str | None:
    if h.subsumes("handle", t):
        return "h"
    if h.subsumes("event", t):
        return "e"
    if h.subsumes("ref-ind", t):
        return "x"
    if h.subsumes("individual", t):
        return "i"
    return None


def extract_mrs(sign: FeatureStructure, hierarchy=None, canonical: bool = True) -> Mrs:
    """MRS of ``sign``: its hook, relations, handle constraints and background.

    A fresh top handle is added, qeq the sign's LTOP.
    """
    if hierarchy is None:
        from deepja.fragment import load_fragment

        hierarchy = load_fragment().hierarchy
    h = hierarchy
    cont = sign.node_at(CONT)
    if cont is None:
        raise MalformedSemanticsError("sign has no CONT")
    ltop = sign.node_at(("HOOK", "LTOP"), cont)
    index = sign.node_at(("HOOK", "INDEX"), cont)
    if ltop is None or index is None:
        raise MalformedSemanticsError("hook LTOP/INDEX unset")
    names: dict[int, str] = {}

    def var(node: int) -> str | None:
        if node in names:
            return names[node]
        s = _sort(h, sign.types[node])
        if s is None:
            return None
        names[node] = f"{s}{len(names) + 1}"
        return names[node]

    if var(ltop) is None or not var(ltop).startswith("h"):
        raise MalformedSemanticsError("LTOP is not a handle")
    if var(index) is None:
        raise MalformedSemanticsError("INDEX is not an individual")

    def eps(list_node):
        out = []
        if list_node is None:
            return out
        for n in list_nodes(sign.arcs, list_node):
            args = {}
            label = None
            for role, tgt in sign.arcs[n].items():
                t = sign.types[tgt]
                if role == "LBL":
                    label = var(tgt)
                elif is_string_literal(t):
                    args[role] = t
                else:
                    v = var(tgt)
                    if v is not None:
                        args[role] = v
            out.append(EP(sign.types[n], label,
                          tuple(sorted(args.items(), key=lambda kv: role_key(kv[0])))))
        return out

    rels = eps(sign.node_at(("RELS",), cont))
    hcons = []
    hc = sign.node_at(("HCONS",), cont)
    for n in list_nodes(sign.arcs, hc) if hc is not None else []:
        hi, lo = sign.arcs[n].get("HARG"), sign.arcs[n].get("LARG")
        if hi is None or lo is None:
            raise MalformedSemanticsError("qeq without HARG/LARG")
        hcons.append((var(hi), var(lo)))
    background = eps(sign.node_at(("CONTEXT", "BACKGROUND")))
    props = []
    for node, v in list(names.items()):
        if v.startswith("e"):
            p = []
            for f in EVENT_PROPS:
                tgt = sign.arcs[node].get(f)
                if tgt is not None:
                    t = sign.types[tgt]
                    if not h.appropriate.get(sign.types[node], {}).get(f) == t:
                        p.append((f, t))
            if p:
                props.append((v, tuple(p)))
    # a dropped scopal argument: its qeq points at a label no relation carries;
    # it surfaces as an unspecified variable, like a dropped subject's index
    labels = {ep.label for ep in rels}
    unexpressed = {hi: f"u{len(names) + 1 + k}"
                   for k, (hi, lo) in enumerate(hcons) if lo not in labels}
    if unexpressed:
        hcons = [(hi, lo) for hi, lo in hcons if hi not in unexpressed]
        rels = [ep.rename(lambda v: unexpressed.get(v, v)) for ep in rels]
    top = "h0"
    m = Mrs(top, var(index), tuple(rels), ((top, var(ltop)),) + tuple(hcons),
            tuple(background), tuple(props))
    return canonicalize(m) if canonical else m
