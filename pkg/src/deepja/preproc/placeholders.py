"""Shallow recognition of numbers, dates, addresses and the like.

Each recognised expression is replaced by a reserved placeholder token
(``⟦NUM⟧`` and so on) that has its own lexical entry in the grammar. The
original text and a normalised payload are kept so that the replacement can
be undone and the payload can reach the semantics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

KINDS = ("number", "date", "address", "email", "url", "phone", "currency")


@dataclass(frozen=True)
class PlaceholderSpan:
    kind: str
    original: str
    placeholder_token: str
    payload: str
    start: int = 0  # offsets of the original in the input text
    end: int = 0
    out_start: int = 0  # offsets of the placeholder in the rewritten text
    out_end: int = 0


def load_patterns(path=None) -> list[tuple[str, str, re.Pattern]]:
    """Read the ordered (kind, token, pattern) table."""
    if path is None:
        text = resources.files("deepja.preproc").joinpath("data/placeholders.tsv").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    rows = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3 or parts[0] not in KINDS:
            raise ValueError(f"bad placeholder pattern on line {n}: {line!r}")
        rows.append((parts[0], parts[1], re.compile(parts[2])))
    return rows


_PATTERNS = None


def _patterns():
    global _PATTERNS
    if _PATTERNS is None:
        _PATTERNS = load_patterns()
    return _PATTERNS


_CURRENCY = {"¥": "JPY", "円": "JPY", "yen": "JPY", "$": "USD", "€": "EUR"}


def normalize(kind: str, text: str) -> str:
    """Canonical payload for a recognised expression."""
    if kind == "number":
        return text.replace(",", "")
    if kind == "date":
        y, m, d = re.split(r"[-/.]", text)
        return f"{int(y):04d}-{int(m):02d}-{int(d):02d}"
    if kind == "phone":
        return re.sub(r"[()]", "", text)
    if kind == "address":
        digits = re.sub(r"\D", "", text)
        return f"{digits[:3]}-{digits[3:]}"
    if kind == "email":
        return text.lower()
    if kind == "currency":
        amount = re.search(r"\d[\d,]*(?:\.\d+)?", text).group().replace(",", "")
        unit = next(code for sym, code in _CURRENCY.items() if sym in text)
        return f"{unit} {amount}"
    return text


def preprocess(text: str, patterns=None):
    """Replace recognised expressions by placeholders.

    Returns ``(new_text, spans)``. At each position every pattern is tried;
    the longest match wins, ties go to the earlier pattern.
    """
    patterns = _patterns() if patterns is None else patterns
    out: list[str] = []
    spans: list[PlaceholderSpan] = []
    i = last = 0
    olen = 0
    n = len(text)
    while i < n:
        best = None
        for kind, token, rx in patterns:
            m = rx.match(text, i)
            if m and m.end() > i and (best is None or m.end() > best[2].end()):
                best = (kind, token, m)
        if best is None:
            i += 1
            continue
        kind, token, m = best
        out.append(text[last:i])
        olen += i - last
        spans.append(PlaceholderSpan(kind, m.group(), token, normalize(kind, m.group()),
                                     i, m.end(), olen, olen + len(token)))
        out.append(token)
        olen += len(token)
        i = last = m.end()
    out.append(text[last:])
    return "".join(out), spans


def restore(text: str, spans) -> str:
    """Undo :func:`preprocess`: put the originals back."""
    parts = []
    pos = 0
    for sp in sorted(spans, key=lambda s: s.out_start):
        parts.append(text[pos:sp.out_start])
        parts.append(sp.original)
        pos = sp.out_end
    parts.append(text[pos:])
    return "".join(parts)


def original_offset(pos: int, spans) -> int:
    """Map an offset in the rewritten text back to the input text."""
    shift = 0
    for sp in sorted(spans, key=lambda s: s.out_start):
        if pos < sp.out_start:
            break
        if pos < sp.out_end:
            return sp.start if pos == sp.out_start else sp.end
        shift += (sp.end - sp.start) - (sp.out_end - sp.out_start)
    return pos + shift
