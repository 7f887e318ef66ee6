import pytest

from deepja.mrs import (
    EP, MalformedSemanticsError, Mrs, ScopeLimitExceeded, canonicalize, check_wellformed,
    extract_mrs, generate_negatives, mrs_equal, resolve_scopes,
)
from deepja.parser import parse
from deepja.preproc import preprocess
from deepja.tfs.fs import FeatureStructure


def mrss(grammar, text):
    prepped, spans = preprocess(text)
    f = parse(prepped, grammar, spans=spans)
    return [extract_mrs(f.root_sign(e), grammar.hierarchy) for e in f.roots]


def one(grammar, text):
    (m,) = mrss(grammar, text)
    return m


def by_pred(m, pred):
    return [ep for ep in m.rels if ep.pred == pred]


def simple(quantified=True):
    rels = [EP.of("_neko_n_rel", "h3", ARG0="x4"), EP.of("_kuru_v_rel", "h1", ARG0="e2", ARG1="x4")]
    hcons = [("h0", "h1")]
    if quantified:
        rels.append(EP.of("udef_q_rel", "h5", ARG0="x4", RSTR="h6", BODY="h7"))
        hcons.append(("h6", "h3"))
    return Mrs("h0", "e2", tuple(rels), tuple(hcons))


def test_canonical_text_golden(grammar):
    assert one(grammar, "benkyou shita").text() == (
        "[ TOP: h0 INDEX: e2 RELS: < [ _benkyou_v_rel LBL: h1 ARG0: e2 ARG1: i3 ARG2: i4 ] > "
        "HCONS: < h0 qeq h1 > ]")


def test_properties_and_context_sections(grammar):
    m = one(grammar, "o benkyou shimashita")
    assert "PROPS: < e2 [ TENSE: past ] >" in m.text(properties=True)
    assert "CONTEXT: < [ honor_rel" in m.text(context=True)
    assert "honor_rel" not in m.text()


def test_canonicalize_is_idempotent(grammar):
    m = one(grammar, "neko ga keeki wo tabeta")
    assert canonicalize(m) == m


def test_extract_requires_hook(grammar):
    with pytest.raises(MalformedSemanticsError):
        extract_mrs(FeatureStructure.atom("sign"), grammar.hierarchy)


def test_example_6_nominalization(grammar):
    m = one(grammar, "Nihongo no benkyou wo hajimeru")
    (nom,) = by_pred(m, "nominalization_rel")
    (verb,) = by_pred(m, "_benkyou_v_rel")
    assert (nom.get("ARG1"), verb.label) in m.hcons
    # the genitive stays a single underspecified relation
    gens = [ep for ep in m.rels if "gen" in ep.pred]
    assert [ep.pred for ep in gens] == ["unspec_gen_rel"]
    assert gens[0].get("ARG1") == nom.get("ARG0")


def test_example_7_topic_relation(grammar):
    m = one(grammar, "atama ga yoku naru hon")
    (topic,) = by_pred(m, "topic_rel")
    assert topic.get("ARG1") == by_pred(m, "_hon_n_rel")[0].get("ARG0")
    assert topic.get("ARG2") == by_pred(m, "_naru_v_rel")[0].get("ARG0")


def test_classifier_semantics(grammar):
    m = one(grammar, "Juu hiki no neko ga kita")
    (cl,) = by_pred(m, "_hiki_cl_rel")
    (card,) = by_pred(m, "card_rel")
    assert cl.get("ARG") == by_pred(m, "_neko_n_rel")[0].get("ARG0")
    assert cl.get("ARG1") == card.get("ARG0")
    assert card.get("ARG") is None and card.get("CARG") == '"10"'


def test_bare_number_promotion(grammar):
    assert by_pred(one(grammar, "juu san"), "unspec_cl_rel")
    assert by_pred(one(grammar, "hyaku en"), "_en_unit_rel")
    assert not by_pred(one(grammar, "hyaku en"), "unspec_cl_rel")


def test_wellformed_examples():
    assert check_wellformed(simple())
    m = simple()
    dangling = Mrs(m.top, m.index, m.rels, m.hcons[:1])
    assert any(d.startswith("unbound hole") for d in check_wellformed(dangling))
    empty = Mrs("h0", None)
    assert "unresolvable index" in check_wellformed(empty).diagnostics


def test_cycle_detected():
    m = Mrs("h0", "e2", (EP.of("_a_rel", "h1", ARG0="e2", ARG1="h1"),), (("h0", "h1"),))
    assert any("cycle" in d for d in check_wellformed(m))
    assert resolve_scopes(m) == []


def test_scope_counts(grammar):
    assert len(resolve_scopes(simple())) == 1
    # an unquantified noun floats with no hole to fill
    assert resolve_scopes(simple(quantified=False)) == []
    shared = Mrs("h0", "e2", (EP.of("_neko_n_rel", "h1", ARG0="x4"),
                              EP.of("_kuru_v_rel", "h1", ARG0="e2", ARG1="x4")), (("h0", "h1"),))
    assert len(resolve_scopes(shared)) == 1
    assert len(resolve_scopes(one(grammar, "neko ga keeki wo tabeta"))) == 2
    m = simple()
    assert resolve_scopes(Mrs(m.top, m.index, m.rels, m.hcons[:1])) == []


def test_scoped_forms_are_trees(grammar):
    m = one(grammar, "Sensei wa watashi ni hon wo katte kureta")
    forms = resolve_scopes(m)
    assert len(forms) == len({tuple(sorted(f.items())) for f in forms})
    for f in forms:
        assert sorted(f.values()) == sorted(m.labels())


def test_scope_cap(grammar):
    m = one(grammar, "Sensei wa watashi ni hon wo katte kureta")
    n = len(resolve_scopes(m))
    assert n > 2
    with pytest.raises(ScopeLimitExceeded):
        resolve_scopes(m, cap=n - 1)


def test_checker_agrees_with_resolver_on_suite(grammar, suite):
    count = 0
    for it in suite:
        for m in mrss(grammar, it.input):
            assert check_wellformed(m), (it.id, m.diagnostics if hasattr(m, "diagnostics") else m)
            assert resolve_scopes(m), it.id
            count += 1
    assert count >= 48


def test_checker_agrees_with_resolver_on_negatives(grammar, suite):
    seeds = [m for it in suite for m in mrss(grammar, it.input)]
    negatives = generate_negatives(seeds, 120, seed=1)
    assert len(negatives) == 120
    assert len({name for name, _ in negatives}) == 8
    for name, m in negatives:
        assert not check_wellformed(m), name
        assert resolve_scopes(m) == [], name


def test_mrs_equal_examples(grammar):
    m = one(grammar, "neko ga keeki wo tabeta")
    assert mrs_equal(m, m)
    assert mrs_equal(one(grammar, "tabechatta"), one(grammar, "tabete shimatta"))
    assert not mrs_equal(m, one(grammar, "neko ga kita"))


def test_mrs_equal_renaming_and_order():
    m = simple()
    renamed = m.rename(lambda v: v[0] + str(int(v[1:]) + 10))
    shuffled = Mrs(renamed.top, renamed.index, tuple(reversed(renamed.rels)), renamed.hcons)
    assert mrs_equal(m, shuffled)


def test_mrs_equal_sees_properties_and_sorts():
    m = simple()
    assert not mrs_equal(m, Mrs(m.top, m.index, m.rels, m.hcons, props=(("e2", (("TENSE", "past"),)),)))
    other = m.rename(lambda v: "i4" if v == "x4" else v)
    assert not mrs_equal(m, other)
