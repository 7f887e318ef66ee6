"""Batch profiles in the style of a competence/performance test bench.

A profile holds one row per test item and an aggregate row computed from
the rows. Its TSV form has two sections, ``## items`` and ``## aggregate``,
each with its own header line; ``#`` lines before them document the
coverage formula.
"""

from __future__ import annotations

import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

from deepja.harness.items import TestItem
from deepja.mrs import check_wellformed, extract_mrs
from deepja.parser.chart import ParseOptions, parse
from deepja.preproc.placeholders import preprocess

log = logging.getLogger(__name__)

COVERAGE_NOTE = ("overall coverage % = 100 * (positive items with >= 1 analysis; "
                 "an expected count is only taken as met when >= 1 analysis is found) "
                 "/ positive items")
OMITTED_NOTE = "the word string % column is not reported"
TIMING_COLUMNS = ("first", "total", "first ∅", "total ∅")
UNDEFINED = "-"

ITEM_COLUMNS = ("id", "input", "flag", "expected", "readings", "tasks", "etasks",
                "filtered", "edges", "first", "total", "space", "lexical",
                "mrs_ok", "error")
AGGREGATE_COLUMNS = ("items", "etasks ∅", "filter %", "edges ∅", "first ∅", "total ∅",
                     "space ∅", "lexical items ∅", "parser analyses ∅",
                     "total results", "overall coverage %")


class SuiteMismatchError(Exception):
    """Two profiles were not made from the same test items."""


@dataclass(frozen=True)
class ItemRow:
    id: str
    input: str
    flag: str
    expected: int | None
    readings: int = 0
    tasks: int = 0
    etasks: int = 0
    filtered: int = 0
    edges: int = 0
    first: float | None = None
    total: float = 0.0
    space: int = 0
    lexical: int = 0
    mrs_ok: int = 0  # readings whose MRS passed the well-formedness check
    error: str = ""

    @property
    def positive(self) -> bool:
        return self.flag == "g"

    @property
    def covered(self) -> bool:
        return self.readings >= 1


def _mean(values):
    values = list(values)
    return sum(values) / len(values) if values else None


def _fmt(v, digits=2) -> str:
    if v is None:
        return UNDEFINED
    if isinstance(v, float):
        return f"{v:.{digits}f}"
    return str(v)


@dataclass
class Profile:
    rows: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def row(self, item_id: str) -> ItemRow:
        return next(r for r in self.rows if r.id == item_id)

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.rows]

    def aggregates(self) -> dict:
        rows = self.rows
        pos = [r for r in rows if r.positive]
        tasks = sum(r.tasks for r in rows)
        covered = [r for r in pos if r.covered]
        return {
            "items": len(rows),
            "etasks ∅": _mean(r.etasks for r in rows),
            "filter %": 100.0 * sum(r.filtered for r in rows) / tasks if tasks else None,
            "edges ∅": _mean(r.edges for r in rows),
            "first ∅": _mean(r.first for r in rows if r.first is not None),
            "total ∅": _mean(r.total for r in rows),
            "space ∅": _mean(r.space for r in rows),
            "lexical items ∅": _mean(r.lexical for r in pos),
            "parser analyses ∅": _mean(r.readings for r in pos),
            "total results": len(covered),
            "overall coverage %": 100.0 * len(covered) / len(pos) if pos else None,
        }

    @property
    def coverage(self) -> float | None:
        return self.aggregates()["overall coverage %"]

    def aggregate_strings(self) -> dict:
        return {k: _fmt(v, 4 if k in TIMING_COLUMNS else 2) for k, v in self.aggregates().items()}

    def to_tsv(self, timing: bool = True) -> str:
        keep = lambda cols: [c for c in cols if timing or c not in TIMING_COLUMNS]
        out = io.StringIO()
        out.write(f"# {COVERAGE_NOTE}\n# {OMITTED_NOTE}\n## items\n")
        cols = keep(ITEM_COLUMNS)
        out.write("\t".join(cols) + "\n")
        for r in self.rows:
            vals = {c: _cell(r, c) for c in cols}
            out.write("\t".join(vals[c] for c in cols) + "\n")
        out.write("## aggregate\n")
        agg = self.aggregate_strings()
        acols = keep(AGGREGATE_COLUMNS)
        out.write("\t".join(acols) + "\n")
        out.write("\t".join(agg[c] for c in acols) + "\n")
        return out.getvalue()

    def to_table(self) -> str:
        """Aligned text table of the aggregate columns."""
        agg = self.aggregate_strings()
        widths = [max(len(c), len(agg[c])) for c in AGGREGATE_COLUMNS]
        head = " | ".join(c.rjust(w) for c, w in zip(AGGREGATE_COLUMNS, widths))
        body = " | ".join(agg[c].rjust(w) for c, w in zip(AGGREGATE_COLUMNS, widths))
        rule = "-+-".join("-" * w for w in widths)
        return f"{head}\n{rule}\n{body}\n({COVERAGE_NOTE}; {OMITTED_NOTE})\n"


def _cell(r: ItemRow, col: str) -> str:
    v = getattr(r, col)
    if col in ("first", "total"):
        return _fmt(v, 4)
    if v is None:
        return ""
    return str(v).replace("\t", " ").replace("\n", " ")


def _run_item(item: TestItem, grammar, options) -> ItemRow:
    base = dict(id=item.id, input=item.input, flag=item.flag, expected=item.expected_readings)
    try:
        text, spans = preprocess(item.input)
        forest = parse(text, grammar, options, spans=spans)
        ok = 0
        for e in forest.roots:
            try:
                if check_wellformed(extract_mrs(forest.root_sign(e), grammar.hierarchy)):
                    ok += 1
            except Exception as exc:  # noqa: BLE001 - counted as not well-formed
                log.debug("item %s: MRS extraction failed: %s", item.id, exc)
        s = forest.stats
        return ItemRow(**base, readings=s.readings, tasks=s.tasks, etasks=s.etasks,
                       filtered=s.filtered, edges=s.edges,
                       first=None if s.first_time is None else round(s.first_time, 4),
                       total=round(s.total_time, 4), space=s.space,
                       lexical=s.lexical_items, mrs_ok=ok)
    except Exception as exc:  # noqa: BLE001 - a failing item never aborts the batch
        log.warning("item %s failed: %s", item.id, exc)
        return ItemRow(**base, error=f"{type(exc).__name__}: {exc}")


def run_profile(suite, grammar=None, options: ParseOptions | None = None,
                jobs: int = 1) -> Profile:
    """Parse every item of ``suite``; rows come back in suite order."""
    if grammar is None:
        from deepja.fragment import load_fragment

        grammar = load_fragment()
    options = options or ParseOptions()
    suite = list(suite)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            rows = list(pool.map(lambda it: _run_item(it, grammar, options), suite))
    else:
        rows = [_run_item(it, grammar, options) for it in suite]
    return Profile(rows)


def _convert(name: str, text: str):
    f = {f.name: f for f in fields(ItemRow)}[name]
    if name in ("id", "input", "flag", "error"):
        return text
    if text in ("", UNDEFINED):
        return None if name in ("expected", "first") else (0.0 if name == "total" else 0)
    if name in ("first", "total"):
        return float(text)
    return int(text)


def parse_profile(text: str) -> Profile:
    """Read the rows of a TSV profile (the aggregate section is recomputed)."""
    section = None
    header = None
    rows = []
    for line in text.splitlines():
        if line.startswith("## "):
            section, header = line[3:].strip(), None
            continue
        if not line or line.startswith("#"):
            continue
        cells = line.split("\t")
        if header is None:
            header = cells
            continue
        if section == "items":
            vals = dict(zip(header, cells + [""] * (len(header) - len(cells))))
            rows.append(ItemRow(**{k: _convert(k, v) for k, v in vals.items() if k in ITEM_COLUMNS}))
    return Profile(rows)


def read_profile(path) -> Profile:
    with open(path, encoding="utf-8") as f:
        return parse_profile(f.read())


def write_profile(profile: Profile, path, timing: bool = True) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(profile.to_tsv(timing))


def strip_timing(tsv: str) -> str:
    """Drop the timing columns from a TSV profile, for reproducibility checks."""
    out = []
    drop: list[int] = []
    expect_header = False
    for line in tsv.splitlines():
        if line.startswith("#"):
            expect_header = line.startswith("## ")
            out.append(line)
            continue
        cells = line.split("\t")
        if expect_header:
            drop = [k for k, c in enumerate(cells) if c in TIMING_COLUMNS]
            expect_header = False
        out.append("\t".join(c for k, c in enumerate(cells) if k not in drop))
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ItemDelta:
    id: str
    readings: tuple  # (old, new)
    edges: int
    etasks: int
    total: float
    flags: tuple = ()

    @property
    def reading_delta(self) -> int:
        return self.readings[1] - self.readings[0]


@dataclass
class Report:
    items: list = field(default_factory=list)
    aggregate: dict = field(default_factory=dict)  # column -> (old, new), changed ones only

    def __len__(self):
        return len(self.items)

    def __bool__(self):
        return bool(self.items or self.aggregate)

    def flagged(self, flag: str) -> list[str]:
        return [d.id for d in self.items if flag in d.flags]

    def text(self) -> str:
        lines = []
        for d in self.items:
            flags = f"  [{', '.join(d.flags)}]" if d.flags else ""
            lines.append(f"{d.id}: readings {d.readings[0]} -> {d.readings[1]}, "
                         f"edges {d.edges:+d}, etasks {d.etasks:+d}, total {d.total:+.4f}{flags}")
        for k, (a, b) in self.aggregate.items():
            lines.append(f"{k}: {a} -> {b}")
        return "\n".join(lines) + ("\n" if lines else "")


def compare_profiles(old: Profile, new: Profile) -> Report:
    """Per-item deltas between two profiles of the same suite."""
    if old.ids != new.ids:
        missing = sorted(set(old.ids) ^ set(new.ids))
        raise SuiteMismatchError(f"profiles differ in items: {', '.join(missing) or 'order'}")
    report = Report()
    for a, b in zip(old.rows, new.rows):
        flags = []
        if a.covered and not b.covered:
            flags.append("coverage lost")
        if b.covered and not a.covered:
            flags.append("coverage gained")
        if a.readings != b.readings:
            flags.append("readings changed")
        if a.error != b.error and b.error:
            flags.append("error")
        d = ItemDelta(a.id, (a.readings, b.readings), b.edges - a.edges,
                      b.etasks - a.etasks, round(b.total - a.total, 4), tuple(flags))
        if flags or d.edges or d.etasks or d.total:
            report.items.append(d)
    sa, sb = old.aggregate_strings(), new.aggregate_strings()
    report.aggregate = {k: (sa[k], sb[k]) for k in AGGREGATE_COLUMNS if sa[k] != sb[k]}
    return report
