import io

import pytest

from deepja.harness import (
    SuiteError, SuiteMismatchError, TestItem, compare_profiles, read_items, read_profile,
    run_profile, write_items, write_profile,
)
from deepja.harness import cli
from deepja.harness.items import parse_items
from deepja.harness.profile import (
    COVERAGE_NOTE, OMITTED_NOTE, ItemRow, Profile, parse_profile, strip_timing,
)
from deepja.parser import ParseOptions


@pytest.fixture(scope="module")
def profile(grammar, suite):
    return run_profile(suite, grammar)


def run_cli(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


def test_items_round_trip(tmp_path):
    items = [TestItem("a1", "neko ga kita"), TestItem("a2", "Juu neko ga kita", "*", 0, "cl"),
             TestItem("a3", "benkyou shita", "g", 1)]
    write_items(items, tmp_path / "s.tsv")
    assert read_items(tmp_path / "s.tsv") == items


@pytest.mark.parametrize("text", [
    "x1\tneko\tq\n",
    "x1\tneko\tg\nx1\tinu\tg\n",
    "x1\tneko\tg\tmany\n",
    "x1\tneko\n",
])
def test_bad_suites(text):
    with pytest.raises(SuiteError):
        parse_items(text)


def test_missing_suite_file(tmp_path):
    with pytest.raises(SuiteError):
        read_items(tmp_path / "none.tsv")


def test_comments_and_header_skipped():
    items = parse_items("# note\nid\tinput\tflag\texpected_readings\tphenomenon\nb\tneko\t*\n")
    assert items == [TestItem("b", "neko", "*", 0)]


def test_aggregates_recomputed_from_rows(profile):
    agg = profile.aggregates()
    rows = profile.rows
    pos = [r for r in rows if r.flag == "g"]
    assert agg["items"] == len(rows)
    assert agg["edges ∅"] == pytest.approx(sum(r.edges for r in rows) / len(rows))
    assert agg["filter %"] == pytest.approx(
        100 * sum(r.filtered for r in rows) / sum(r.tasks for r in rows))
    assert agg["total results"] == sum(1 for r in pos if r.readings)
    assert agg["overall coverage %"] == pytest.approx(100 * agg["total results"] / len(pos))
    assert agg["parser analyses ∅"] == pytest.approx(sum(r.readings for r in pos) / len(pos))


def test_suite_profile_values(profile):
    assert profile.coverage == 100.0
    assert all(r.readings == 0 for r in profile.rows if r.flag == "*")
    for r in profile.rows:
        if r.expected and r.flag == "g":
            assert r.readings == r.expected, r.id
        assert r.mrs_ok == r.readings, r.id


def test_empty_suite():
    p = run_profile([])
    agg = p.aggregate_strings()
    assert agg["items"] == "0"
    assert agg["overall coverage %"] == agg["edges ∅"] == agg["first ∅"] == "-"


def test_unparseable_item_gives_zero_coverage(grammar):
    p = run_profile([TestItem("u1", "wo ga")], grammar)
    assert p.coverage == 0.0
    assert p.aggregate_strings()["first ∅"] == "-"


def test_error_items_do_not_abort(grammar, suite):
    p = run_profile(suite[:3], grammar, ParseOptions(edge_limit=3))
    assert len(p) == 3
    assert any(r.error for r in p.rows)


def test_tsv_format_and_round_trip(profile, tmp_path):
    tsv = profile.to_tsv()
    assert tsv.startswith(f"# {COVERAGE_NOTE}\n# {OMITTED_NOTE}\n## items\n")
    assert "## aggregate" in tsv
    write_profile(profile, tmp_path / "p.tsv")
    back = read_profile(tmp_path / "p.tsv")
    assert back.to_tsv() == tsv
    assert parse_profile(tsv).aggregate_strings() == profile.aggregate_strings()


def test_strip_timing_is_deterministic(grammar, suite):
    a = run_profile(suite, grammar).to_tsv()
    b = run_profile(suite, grammar, jobs=3).to_tsv()
    assert strip_timing(a) == strip_timing(b)
    assert "total ∅" not in strip_timing(a)
    assert strip_timing(a) == run_profile(suite, grammar).to_tsv(timing=False)


def test_compare_identical(profile):
    assert not compare_profiles(profile, profile)


def test_compare_lost_item(profile):
    rows = list(profile.rows)
    k = next(i for i, r in enumerate(rows) if r.flag == "g")
    r = rows[k]
    rows[k] = ItemRow(r.id, r.input, r.flag, r.expected)
    report = compare_profiles(profile, Profile(rows))
    assert report.flagged("coverage lost") == [r.id]
    assert report.flagged("readings changed") == [r.id]
    assert "overall coverage %" in report.aggregate


def test_compare_mismatched_suites(profile):
    with pytest.raises(SuiteMismatchError):
        compare_profiles(profile, Profile(profile.rows[1:]))


def test_quick_check_changes_only_work(grammar, suite, profile):
    off = run_profile(suite, grammar, ParseOptions(qc=False))
    report = compare_profiles(off, profile)
    assert report.items
    assert all(d.reading_delta == 0 and not d.flags for d in report.items)
    assert any(d.etasks < 0 for d in report.items)


def test_cli_parse():
    code, out = run_cli("parse", "neko ga kita", "--mrs")
    assert code == cli.EXIT_OK
    assert "readings: 1" in out and "_neko_n_rel" in out and "TENSE: past" in out
    assert "ILL-FORMED" not in out


def test_cli_reports_ill_formed(monkeypatch):
    from deepja.mrs.scope import Check

    monkeypatch.setattr(cli, "check_wellformed", lambda m: Check(("unbound hole h9",)))
    _, out = run_cli("parse", "neko ga kita", "--mrs")
    assert "ILL-FORMED: unbound hole h9" in out


def test_cli_batch_and_diff(tmp_path):
    suite = tmp_path / "s.tsv"
    write_items([TestItem("a", "neko ga kita"), TestItem("b", "Juu neko ga kita", "*")], suite)
    code, out = run_cli("batch", str(suite), "--profile", str(tmp_path / "a.tsv"))
    assert code == 0 and "overall coverage %" in out
    run_cli("batch", str(suite), "--qc", "off", "--profile", str(tmp_path / "b.tsv"))
    code, out = run_cli("diff", str(tmp_path / "a.tsv"), str(tmp_path / "a.tsv"))
    assert code == 0 and out == "no differences\n"
    code, out = run_cli("diff", str(tmp_path / "b.tsv"), str(tmp_path / "a.tsv"))
    assert code == 0 and "etasks" in out


def test_cli_exit_codes(tmp_path):
    assert run_cli("lint")[0] == cli.EXIT_OK
    assert run_cli("lint", "--grammar", str(tmp_path / "nothing"))[0] == cli.EXIT_LOAD
    assert run_cli("batch", str(tmp_path / "nothing.tsv"))[0] == cli.EXIT_SUITE
    (tmp_path / "bad.tsv").write_text("a\tneko\tmaybe\n")
    assert run_cli("batch", str(tmp_path / "bad.tsv"))[0] == cli.EXIT_SUITE
