import pytest

from deepja.grammar.grammar import KINDS, LoadError, load_grammar
from deepja.grammar.morph import closure, full_forms
from deepja.grammar.rules import apply_lexical_rule, apply_schema, check_adjacency
from deepja.grammar.source import GrammarSyntaxError, parse_source
from deepja.tfs.errors import UndefinedTypeError
from deepja.tfs.fs import subsumes

SAT = "SYNSEM.LOCAL.SUBCAT.SAT."
VAL = "SYNSEM.LOCAL.SUBCAT.VAL."

MINI_TYPES = """
string := *top*.
sign := *top* & [ PHON string, SYNSEM *top* ].
rule := sign & [ ARGS *top* ].
lex-rule := rule.
noun := *top*.
dog := sign & [ SYNSEM noun ].
"""


def lex(grammar, name):
    return grammar.lexicon[name].fs


def item(grammar, surface, label):
    return next(i.fs for i in full_forms(grammar)[surface] if i.label == label)


def test_source_syntax_error_has_position():
    with pytest.raises(GrammarSyntaxError) as exc:
        parse_source("a := *top* & [ F b.\n")
    assert exc.value.line == 1


def test_suffix_and_weight_annotations():
    defs = parse_source("%suffix (mu n) (bu n)\n%weight 2\nr := *top*.")
    assert defs[0].suffixes == [("mu", "n"), ("bu", "n")]
    assert defs[0].weight == 2


def test_features_case_insensitive(grammar):
    h = grammar.hierarchy
    from deepja.grammar.loader import fs_from_text

    assert fs_from_text(h, "event & [ tense past ]").get("TENSE") == "past"


def test_minimal_grammar_one_entry():
    g = load_grammar({"types": MINI_TYPES, "lexicon": 'dog := dog & [ PHON "dog" ].',
                      "roots": "root := sign."})
    assert list(g.lexicon) == ["dog"]
    assert g.rules == {}
    assert g.entries("dog")[0].orth == "dog"


def test_undeclared_type_in_entry():
    with pytest.raises(UndefinedTypeError):
        load_grammar({"types": MINI_TYPES, "lexicon": "walk := vebr-head.",
                      "roots": "root := sign."})


def test_no_root_is_an_error():
    with pytest.raises(LoadError):
        load_grammar({"types": MINI_TYPES, "lexicon": "dog := dog."})


def test_fragment_inventory(grammar):
    binary = [r for r in grammar.rules.values() if r.arity == 2]
    assert len(grammar.rules) >= 12
    assert all(r.head in (0, 1) for r in binary)
    assert {r.kind for r in grammar.rules.values()} <= {k.replace("-rule", "") for k in KINDS}


def test_vn_light_is_a_head_marker(hierarchy):
    assert hierarchy.subsumes("head-marker-rule", "vn-light-rule")


def test_yomu_past_stem(grammar):
    r = apply_lexical_rule(grammar, grammar.lexrules["godan-nd-stem"], lex(grammar, "yomu"))
    assert r.get("PHON") == '"yon"'
    assert r.get("SYNSEM.LOCAL.RMORPH-BIND-TYPE") == "nd-morph"


def test_lexical_rule_orthography_mismatch(grammar):
    r = apply_lexical_rule(grammar, grammar.lexrules["ichidan-stem"], lex(grammar, "yomu"))
    assert not r
    assert r.reason == "orthography"


def test_lexical_rule_type_clash(grammar):
    # nominalization wants a verbal noun; a noun stem clashes
    r = apply_lexical_rule(grammar, grammar.lexrules["nominalization"], lex(grammar, "neko"))
    assert not r
    assert r.reason == "unification-clash"


def test_closure_surfaces_unique(grammar):
    for name, e in grammar.lexicon.items():
        labels = [i.label for i in closure(grammar, name, e.fs)]
        assert len(labels) == len(set(labels)), name


def test_head_complement_saturates_object(grammar):
    pp = apply_schema(grammar, grammar.rules["hc-obj"], [lex(grammar, "keeki"), lex(grammar, "wo")])
    verb = item(grammar, "taberu", "taberu+dict-form")
    assert verb.get(SAT + "OBJ") == "unsat-opt"
    m = apply_schema(grammar, grammar.rules["hc-obj"], [pp, verb])
    assert m.get(SAT + "OBJ") == "sat"
    assert m.get(VAL + "OBJ") == "none"
    assert m.get("PHON") == '"keeki wo taberu"'


def test_saturated_slot_cannot_be_realized_again(grammar):
    pp = apply_schema(grammar, grammar.rules["hc-obj"], [lex(grammar, "keeki"), lex(grammar, "wo")])
    verb = item(grammar, "taberu", "taberu+dict-form")
    m = apply_schema(grammar, grammar.rules["hc-obj"], [pp, verb])
    again = apply_schema(grammar, grammar.rules["hc-obj"], [pp, m])
    assert not again and again.reason == "unification-clash"


def test_word_internal_phon_is_solid(grammar):
    m = apply_schema(grammar, grammar.rules["head-spec"],
                     [item(grammar, "tabe", "taberu+ichidan-stem"), lex(grammar, "ta")])
    assert m.get("PHON") == '"tabeta"'


def test_head_adjunct_blocked_by_adjacent_spr(grammar):
    r = apply_schema(grammar, grammar.rules["adjunct-head"],
                     [lex(grammar, "sugu"), item(grammar, "age", "ageru+ichidan-stem")])
    assert not r and r.reason == "adjacency-violation"
    assert "(c)" in r.detail


def test_head_complement_nonhead_with_adjacent_argument(grammar):
    r = apply_schema(grammar, grammar.rules["hc-subj"],
                     [lex(grammar, "colon"), item(grammar, "chai", "chau+godan-i-stem")])
    assert not r and r.reason == "adjacency-violation"
    assert "(a)" in r.detail


def test_check_adjacency_clauses(grammar):
    h = grammar.hierarchy
    ta = lex(grammar, "ta")
    stem = item(grammar, "tabe", "taberu+ichidan-stem")
    # ta still wants its stem next to it (SPR is unsat-adj)
    assert not check_adjacency(h, "head-adjunct", ta, lex(grammar, "yoku"))
    assert check_adjacency(h, "head-adjunct", ta, lex(grammar, "yoku")).clause == "c"
    assert check_adjacency(h, "head-complement", ta, stem, realized="SPR")
    # the adjacent SPR must be the one the non-head realizes
    assert check_adjacency(h, "head-complement", ta, stem, realized="OBJ").clause == "b"
    bad = check_adjacency(h, "head-complement", stem, ta)
    assert not bad and bad.clause == "a"
    assert check_adjacency(h, "head-adjunct", lex(grammar, "neko"), lex(grammar, "yoku"))


def test_saturation_monotone_and_skeleton_subsumes(grammar):
    h = grammar.hierarchy
    pp = apply_schema(grammar, grammar.rules["hc-obj"], [lex(grammar, "keeki"), lex(grammar, "wo")])
    verb = item(grammar, "taberu", "taberu+dict-form")
    m = apply_schema(grammar, grammar.rules["hc-obj"], [pp, verb])
    for slot in ("SUBJ", "OBJ", "OBJ2", "SPR"):
        if verb.get(SAT + slot) == "sat":
            assert m.get(SAT + slot) == "sat"
    # every non-ARGS path of the rule skeleton holds in the mother
    skeleton = grammar.rules["hc-obj"].fs
    checked = 0
    for path, node in skeleton.paths():
        if path[:1] == ("ARGS",):
            continue
        assert m.get(path) is not None, path
        assert h.subsumes(skeleton.types[node], m.get(path)), path
        checked += 1
    assert checked > 20
