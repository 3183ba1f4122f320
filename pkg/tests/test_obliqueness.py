import pytest
from hypothesis import given, settings, strategies as st

from binder.model import BUILTIN_LANGS, all_markers
from binder.obliqueness import (NO_DOMAIN, command_graph, commanders, is_o_bottom, local_domain,
                                o_command, obliqueness_order)
from binder.bdp import propagate
from binder.synthetic import RandomDiscourse

from conftest import brute_ocommand, clause, clause_chain, corpus_doc, make_doc, np, verb

discourses = st.integers(0, 2**32 - 1).map(lambda s: RandomDiscourse(s).generate())


def test_order_linear(appendix):
    likes = appendix.nodes["likes"].predicator
    assert obliqueness_order(likes, appendix) == {("24", "392")}


def test_order_subject_only():
    d = corpus_doc("norwegian-seg-selv").discourse
    order = obliqueness_order(d.nodes["fortalte"].predicator, d)
    assert order == {("lars", "jon"), ("lars", "seg-selv")}
    assert ("jon", "seg-selv") not in order and ("seg-selv", "jon") not in order


def test_order_single_argument():
    d = make_doc([clause("s", "v", np("a"), verb("v", "a"))]).discourse
    assert obliqueness_order(d.nodes["v"].predicator, d) == frozenset()


def test_order_var_before_r_mark(appendix):
    said = appendix.nodes["said"].predicator
    assert ("54", "247") in obliqueness_order(said, appendix)


def test_possessive_commands():
    d = corpus_doc("ocommand-johns-friend").discourse
    assert o_command("john-friend", "him", d)
    assert not o_command("john", "him", d)
    for x in ("john", "peter", "martin", "him"):
        assert not any(o_command(x, y.id, d) for y in all_markers(d))


def test_irreflexive(appendix):
    for m in all_markers(appendix):
        assert not o_command(m.id, m.id, appendix)


def test_unknown_marker(appendix):
    with pytest.raises(KeyError):
        o_command("nope", "24", appendix)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_chain_top_subject_reaches_bottom_object(k):
    d = make_doc(clause_chain(k)).discourse
    assert o_command("subj0", "obj", d)
    assert ("subj0", "obj") in brute_ocommand(d)
    assert not o_command("obj", "subj0", d)


@settings(max_examples=60, deadline=None)
@given(discourses)
def test_ocommand_matches_path_enumeration(d):
    pairs = brute_ocommand(d)
    ms = [m.id for m in all_markers(d)]
    assert {(x, y) for x in ms for y in ms if o_command(x, y, d)} == pairs


@settings(max_examples=60, deadline=None)
@given(discourses)
def test_ocommand_is_strict_partial_order(d):
    edges = command_graph(d).edges
    assert not any(x == y for x, y in edges)
    for x, y in edges:
        for y2, z in edges:
            if y == y2:
                assert (x, z) in edges


@settings(max_examples=40, deadline=None)
@given(discourses)
def test_local_edges_subset(d):
    g = command_graph(d)
    assert g.local_edges <= g.edges


def test_commanders_document_order(appendix):
    assert commanders("392", appendix) == ["54", "247", "24"]


def test_domain_described():
    d = corpus_doc("local-domain-him").discourse
    assert local_domain("him", d, BUILTIN_LANGS["english"]).nodes == {"peter", "him"}


def test_domain_subjunctive_reaches_up():
    d = corpus_doc("icelandic-subjunctive").discourse
    assert "jon" in local_domain("sig", d, BUILTIN_LANGS["icelandic"]).nodes
    d = corpus_doc("icelandic-indicative").discourse
    assert "jon" not in local_domain("sig", d, BUILTIN_LANGS["icelandic"]).nodes


def test_domain_root_subject():
    d = make_doc([clause("s", "v", np("a", "short-reflexive"), verb("v", "a", "b"), np("b"))]).discourse
    assert local_domain("a", d, "immediate").nodes == {"a", "b"}


def test_no_domain_is_explicit():
    d = make_doc([{"id": "s", "children": [np("oh", "pronoun")]}]).discourse
    dom = local_domain("oh", d, "immediate")
    assert dom is NO_DOMAIN and not dom.found


@settings(max_examples=60, deadline=None)
@given(discourses)
def test_domain_markers_match_list_a(d):
    lists = propagate(d, "immediate")
    for nid in d.index.np_nodes:
        dom = local_domain(nid, d, "immediate")
        if not dom.found:
            continue
        ms = {m for n in dom.nodes for m in d.index.slot_markers(n)}
        assert ms == set(lists[nid].list_a)


def test_o_bottom():
    assert is_o_bottom("sich", corpus_doc("german-bild-indefinite").discourse)
    assert not is_o_bottom("sich", corpus_doc("german-bild-possessor").discourse)


def test_o_bottom_appendix(appendix):
    assert not is_o_bottom("himself", appendix)
    assert is_o_bottom("he", appendix)


def test_o_bottom_sole_argument():
    d = make_doc([clause("s", "v", np("a", "short-reflexive"), verb("v", "a"))]).discourse
    assert is_o_bottom("a", d)
