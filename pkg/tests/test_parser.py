from collections import Counter

import pytest

from deepja.parser import (
    ParseOptions, ParseStats, ResourceLimitExceeded, derivation, enumerate_derivations,
    is_left_branching, parse, preference_table, quick_check, unpack_nbest,
)
from deepja.parser.chart import QuickCheckVector
from deepja.preproc import preprocess, segment


def forest_of(grammar, text, **kw):
    prepped, spans = preprocess(text)
    return parse(prepped, grammar, ParseOptions(**kw), spans=spans)


def test_example_2_parses_with_progressive(grammar):
    from deepja.mrs import extract_mrs

    f = forest_of(grammar, "Keeki wo tabete iru")
    assert f.roots
    m = extract_mrs(f.root_sign(f.roots[0]), grammar.hierarchy)
    assert m.properties()[m.index]["ASPECT"] == "prog"


def test_quotes_restrict_to(grammar):
    quoted = forest_of(grammar, '"Botan wo osu" to itta')
    bare = forest_of(grammar, "Botan wo osu to itta")
    assert len(quoted.roots) < len(bare.roots)
    assert all("to_comp" in derivation(e) for e in quoted.roots)
    assert any("to_conj" in derivation(e) for e in bare.roots)


def test_starred_ending_order(grammar):
    assert not forest_of(grammar, "tabesasetamashirare").roots


def test_unknown_words_do_not_crash(grammar):
    assert forest_of(grammar, "Suzuki ga kenkyuu shita").roots
    # gibberish still segments; it just may not parse
    forest_of(grammar, "xqzvk")


def test_edge_limit(grammar):
    with pytest.raises(ResourceLimitExceeded):
        forest_of(grammar, "watashi no toukyou no imoto", edge_limit=5)


def test_root_condition_by_name(grammar):
    name = next(iter(grammar.roots))
    assert forest_of(grammar, "benkyou shita", root=name).roots


def test_quick_check_examples(grammar):
    h = grammar.hierarchy
    neko = grammar.lexicon["neko"].fs
    taberu = grammar.lexicon["taberu"].fs
    assert quick_check(neko, neko, hierarchy=h)
    head = QuickCheckVector.of(["SYNSEM.LOCAL.HEAD"])
    assert not quick_check(neko, taberu, head, h)
    assert quick_check(neko, taberu, QuickCheckVector.of(["NO.SUCH.PATH"]), h)


def test_quick_check_does_not_change_forest(grammar, suite):
    for it in suite:
        on = forest_of(grammar, it.input, qc=True)
        off = forest_of(grammar, it.input, qc=False)
        assert [derivation(e) for e in on.roots] == [derivation(e) for e in off.roots]
        assert off.stats.filtered == 0
        assert on.stats.etasks + on.stats.filtered == on.stats.tasks


def test_stats(grammar):
    s = forest_of(grammar, "neko ga keeki wo tabeta").stats
    assert 0 <= s.filter_rate <= 1
    assert s.readings == 1 and s.edges > s.lexical_items > 0
    assert s.first_time is not None and s.first_time <= s.total_time
    total = s + s
    assert total.items == 2 and total.etasks == 2 * s.etasks


def test_stats_addition_associative():
    a, b, c = ParseStats(tasks=3, etasks=1), ParseStats(tasks=5, filtered=2), ParseStats(edges=7)
    assert (a + b) + c == a + (b + c)


def test_derivation_format(grammar):
    f = forest_of(grammar, "benkyou shita")
    assert derivation(f.roots[0]) == \
        '(vn-light (benkyou "benkyou") (head-spec (suru+suru-stem "shi") (ta "ta")))'


def test_nbest_deterministic(grammar):
    a = [r.tree for r in unpack_nbest(forest_of(grammar, "Botan wo osu to itta"))]
    b = [r.tree for r in unpack_nbest(forest_of(grammar, "Botan wo osu to itta"))]
    assert a == b


def test_head_complement_preferred(grammar):
    f = forest_of(grammar, "Botan wo osu to itta")
    best, second = unpack_nbest(f, prefs=preference_table(grammar))
    assert best.tree.startswith("(hc-obj") and second.tree.startswith("(adjunct-head")
    assert best.score > second.score


def test_single_reading_any_n(grammar):
    f = forest_of(grammar, "benkyou shita")
    assert len(unpack_nbest(f, 1)) == len(unpack_nbest(f, 10)) == 1


@pytest.mark.parametrize("text", ["watashi no toukyou no imoto", "ginkou kouza bangou"])
def test_left_branching_preferred(grammar, text):
    f = forest_of(grammar, text)
    ranked = unpack_nbest(f)
    assert len(ranked) > 1
    assert is_left_branching(ranked[0].edge, grammar)
    assert any(not is_left_branching(r.edge, grammar) for r in ranked)


def test_edge_scores_match_preference_table(grammar, suite):
    prefs = preference_table(grammar)
    for it in suite[:20]:
        f = forest_of(grammar, it.input)
        for r in unpack_nbest(f, prefs=prefs):
            assert r.score == r.edge.score


def test_adjacency_audit(grammar, suite):
    from deepja.grammar.rules import adjacent_slots, _sat_of

    h = grammar.hierarchy
    for it in suite:
        for e in forest_of(grammar, it.input).edges:
            if len(e.daughters) == 2:
                rule = grammar.rules[e.rule]
                nonhead = e.daughters[1 - rule.head]
                assert not adjacent_slots(h, _sat_of(nonhead.sign)), (it.id, e)


def test_edge_spans_concatenate(grammar):
    for e in forest_of(grammar, "neko ga keeki wo tabeta").edges:
        if e.daughters:
            assert e.daughters[0].span[0] == e.span[0]
            assert e.daughters[-1].span[1] == e.span[1]
            assert all(a.span[1] == b.span[0] for a, b in zip(e.daughters, e.daughters[1:]))


def test_chart_equals_brute_force_small(grammar, suite):
    checked = 0
    for it in suite:
        prepped, spans = preprocess(it.input)
        f = parse(prepped, grammar, spans=spans)
        if f.n > 5:
            continue
        brute = enumerate_derivations(segment(prepped, grammar), grammar, spans)
        assert Counter(derivation(e) for e in f.roots) == brute, it.id
        checked += 1
    assert checked >= 25
