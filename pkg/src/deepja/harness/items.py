"""Test items and the TSV test-suite format.

One item per line: ``id  input  flag  expected_readings  phenomenon``.
``flag`` is ``g`` (grammatical) or ``*`` (ungrammatical); an empty
readings column means "at least one". Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

COLUMNS = ("id", "input", "flag", "expected_readings", "phenomenon")


class SuiteError(Exception):
    """A test suite file is malformed."""


@dataclass(frozen=True)
class TestItem:
    id: str
    input: str
    flag: str = "g"
    expected_readings: int | None = None
    phenomenon: str = ""

    __test__ = False  # keep pytest from collecting this class

    @property
    def grammatical(self) -> bool:
        return self.flag == "g"


def parse_items(text: str, source: str = "<suite>") -> list[TestItem]:
    items: list[TestItem] = []
    seen: set[str] = set()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    for n, row in enumerate(csv.reader(lines, delimiter="\t", quoting=csv.QUOTE_NONE), 1):
        if row and row[0] == "id":
            continue
        if len(row) < 3:
            raise SuiteError(f"{source}: row {n} needs at least id, input and flag")
        row = row + [""] * (5 - len(row))
        iid, inp, flag, readings, phen = row[:5]
        if flag not in ("g", "*"):
            raise SuiteError(f"{source}: item {iid} has flag {flag!r}, expected g or *")
        if iid in seen:
            raise SuiteError(f"{source}: duplicate item id {iid}")
        seen.add(iid)
        try:
            exp = int(readings) if readings.strip() else None
        except ValueError:
            raise SuiteError(f"{source}: item {iid} has bad reading count {readings!r}") from None
        if flag == "*":
            exp = 0
        items.append(TestItem(iid, inp, flag, exp, phen))
    return items


def read_items(path) -> list[TestItem]:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_items(fh.read(), str(path))
    except OSError as exc:
        raise SuiteError(f"cannot read {path}: {exc}") from None


def format_items(items) -> str:
    buf = io.StringIO()
    buf.write("\t".join(COLUMNS) + "\n")
    for it in items:
        exp = "" if it.expected_readings is None else str(it.expected_readings)
        buf.write("\t".join((it.id, it.input, it.flag, exp, it.phenomenon)) + "\n")
    return buf.getvalue()


def write_items(items, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_items(items))
