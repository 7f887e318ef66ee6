import logging

import pytest

from deepja.preproc import map_inflection, preprocess, restore, segment
from deepja.preproc.placeholders import normalize, original_offset
from deepja.preproc.segment import PLACEHOLDER


@pytest.mark.parametrize("text,token,kind,payload", [
    ("bangou: 1265", "bangou: ⟦NUM⟧", "number", "1265"),
    ("http://example.jp wo mite", "⟦URL⟧ wo mite", "url", "http://example.jp"),
    ("denwa 03-1234-5678", "denwa ⟦PHONE⟧", "phone", "03-1234-5678"),
    ("2002-08-24 ni kita", "⟦DATE⟧ ni kita", "date", "2002-08-24"),
    ("1,000 yen", "⟦CURR⟧", "currency", "JPY 1000"),
    ("¥1000", "⟦CURR⟧", "currency", "JPY 1000"),
    ("tanaka@example.jp", "⟦EMAIL⟧", "email", "tanaka@example.jp"),
    ("〒100-0001 toukyou", "⟦ADDR⟧ toukyou", "address", "100-0001"),
])
def test_placeholders(text, token, kind, payload):
    out, spans = preprocess(text)
    assert out == token
    (span,) = spans
    assert (span.kind, span.payload) == (kind, payload)
    assert text[span.start:span.end] == span.original
    assert out[span.out_start:span.out_end] == span.placeholder_token


def test_empty_input():
    assert preprocess("") == ("", [])


def test_number_with_commas_normalised():
    assert normalize("number", "12,345") == "12345"


@pytest.mark.parametrize("text", [
    "bangou: 1265 to 1,000 yen",
    "http://example.jp to tanaka@example.jp",
    "nothing to replace",
    "denwa 03-1234-5678 ni 2002-08-24",
])
def test_round_trip(text):
    out, spans = preprocess(text)
    assert restore(out, spans) == text


def test_original_offsets():
    text = "bangou: 1265 to"
    out, spans = preprocess(text)
    assert original_offset(out.index("to"), spans) == text.index("to")
    assert original_offset(0, spans) == 0


def test_whitespace_path(grammar):
    lat = segment("keeki wo tabete iru", grammar)
    paths = lat.paths(10)
    assert len(paths) == 1
    assert [t.surface for t in paths[0]] == ["keeki", "wo", "tabe", "te", "iru"]


def test_unsegmented_input_has_expected_path(grammar):
    lat = segment("benkyoushita", grammar)
    assert ["benkyou", "shi", "ta"] in [[t.surface for t in p] for p in lat.paths(20)]


def test_placeholder_token(grammar):
    lat = segment("⟦NUM⟧", grammar)
    (tok,) = lat.tokens
    assert tok.pos == "placeholder" and PLACEHOLDER.fullmatch(tok.surface)


def test_lattice_soundness_and_reachability(grammar, suite):
    for it in suite:
        text, _ = preprocess(it.input)
        lat = segment(text, grammar)
        for t in lat.tokens:
            assert text[t.span[0]:t.span[1]] == t.surface
        assert lat.paths(1), it.input
        for p in lat.paths(50):
            ends = [t.span for t in p]
            assert ends == sorted(ends)
            assert all(a[1] <= b[0] for a, b in zip(ends, ends[1:]))


def test_segmentation_is_deterministic(grammar):
    a = segment("Suzuki ga kenkyuu shita", grammar)
    b = segment("Suzuki ga kenkyuu shita", grammar)
    assert a.tokens == b.tokens


def test_unknown_words_get_heuristic_tags(grammar):
    toks = segment("Suzuki ga kenkyuu shita", grammar).tokens
    tags = {(t.surface, t.pos) for t in toks if not t.known}
    assert ("Suzuki", "proper-noun") in tags
    assert ("kenkyuu", "verbal-noun") in tags


def test_inflection_labels(grammar):
    (verb,) = [t for t in segment("yonda", grammar).tokens if t.pos == "verb"]
    assert verb.inflection_type == "godan-nd"
    assert map_inflection(verb) == "nd-morph"
    assert map_inflection("godan-nd") == "nd-morph"
    assert map_inflection(None) is None


def test_unknown_inflection_label_warns(caplog):
    with caplog.at_level(logging.WARNING):
        assert map_inflection("x-form") is None
    assert "x-form" in caplog.text
