from dataclasses import replace

from binder.model import (ArgStructure, Discourse, NPInfo, Node, all_markers,
                          validate_discourse)
from binder.synthetic import random_discourses

from conftest import clause, make_doc, np, verb


def tiny(*nodes, ctx=()):
    table = {n.id: n for n in nodes}
    table["ctx"] = Node("ctx", "ctx", markers=ctx)
    tops = [n.id for n in nodes if n.category == "sentence"]
    table["discourse"] = Node("discourse", "discourse", daughters=("ctx", *tops))
    return Discourse(table)


def codes(d):
    return {v.code for v in validate_discourse(d).violations}


def test_appendix_is_valid(appendix):
    assert validate_discourse(appendix).ok


def test_no_sentences_is_empty_text():
    assert "empty Text" in codes(tiny())


def test_var_without_quantification():
    s = Node("s", "sentence", daughters=("a",))
    a = Node("a", "phrase", np=NPInfo("pronoun", "a", var="av", quantificational=False))
    assert "var" in codes(tiny(s, a))


def test_duplicate_marker():
    s = Node("s", "sentence", daughters=("a", "b"))
    a = Node("a", "phrase", np=NPInfo("pronoun", "m"))
    b = Node("b", "phrase", np=NPInfo("pronoun", "m"))
    assert "duplicate marker" in codes(tiny(s, a, b))


def test_dangling_slot():
    s = Node("s", "sentence", daughters=("v",), head="v")
    v = Node("v", "word", predicator=ArgStructure((("ghost", "subj"),)))
    assert "dangling" in codes(tiny(s, v))


def test_missing_ctx():
    s = Node("s", "sentence")
    d = Discourse({"s": s, "discourse": Node("discourse", "discourse", daughters=("s",))})
    assert "ctx" in codes(d)


def test_slot_dominating_its_predicator():
    s = Node("s", "sentence", daughters=("v",), head="v")
    v = Node("v", "word", predicator=ArgStructure((("s", "subj"),)))
    assert "slot" in codes(tiny(s, v))


def test_universal_quantifier_needs_plural():
    s = Node("s", "sentence", daughters=("a",))
    a = Node("a", "phrase", np=NPInfo("non-pronoun", "a", var="av", quantificational=True, number="singular"))
    assert "number" in codes(tiny(s, a))


def test_all_markers_appendix(appendix):
    assert [m.id for m in all_markers(appendix)] == ["415", "54", "247", "24", "392"]


def test_all_markers_context_only():
    d = make_doc([{"id": "s", "children": [{"id": "w"}]}], context=["x"]).discourse
    assert [m.id for m in all_markers(d)] == ["x"]


def test_all_markers_two_sentences_tree_walk():
    doc = make_doc([clause("s1", "v1", np("a"), verb("v1", "a")),
                    clause("s2", "v2", np("b", var="bv", number="plural"), verb("v2", "b"))],
                   context=["x"])
    d = doc.discourse
    walked = []
    for nid in d.index.preorder:
        if d.nodes[nid].np is not None:
            walked.extend(d.nodes[nid].np.markers)
    assert [m.id for m in all_markers(d)] == ["x"] + walked == ["x", "a", "bv", "b"]


def test_marker_kinds_and_numbers(appendix):
    ms = {m.id: m for m in all_markers(appendix)}
    assert ms["415"].kind == "context" and ms["415"].source is None
    assert ms["54"].kind == "var" and ms["54"].number == "singular"
    assert ms["247"].kind == "r-mark" and ms["247"].number == "plural"


def test_random_discourses_validate():
    for d in random_discourses(200, seed=11):
        assert validate_discourse(d).ok


def test_index_resolves_traces():
    doc = make_doc([clause("s", "v", np("x", "short-reflexive"), np("p"),
                           verb("v", "p", "t"), {"id": "t", "filler": "x"})])
    ix = doc.discourse.index
    assert ix.resolve("t") == "x"
    assert ix.selector["x"] == ("v", 1)


def test_binding_base_must_name_same_slots():
    s = Node("s", "sentence", daughters=("v", "a", "b"), head="v")
    a = Node("a", "phrase", np=NPInfo("pronoun", "a"))
    b = Node("b", "phrase", np=NPInfo("pronoun", "b"))
    base = ArgStructure((("a", "x"),))
    v = Node("v", "word", predicator=ArgStructure((("a", "x"), ("b", "y")), binding_base=base))
    assert "binding base" in codes(tiny(s, v, a, b))
    v2 = replace(v, predicator=ArgStructure((("a", "x"), ("b", "y")),
                                           binding_base=ArgStructure((("b", "y"), ("a", "x")))))
    assert validate_discourse(tiny(s, v2, a, b)).ok
