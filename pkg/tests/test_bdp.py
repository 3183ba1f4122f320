from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from binder.bdp import BindLists, lexical_arg_lists, propagate
from binder.model import LOCALITY_MODES, ArgStructure, InvalidDiscourse, all_markers
from binder.obliqueness import o_command
from binder.synthetic import RandomDiscourse

from conftest import clause, corpus_doc, make_doc, np, verb

discourses = st.integers(0, 2**32 - 1).map(lambda s: RandomDiscourse(s).generate())
modes = st.sampled_from(LOCALITY_MODES)


def test_lexical_said(appendix):
    assert lexical_arg_lists("said", appendix) == ("54", "247")


def test_lexical_likes(appendix):
    assert lexical_arg_lists(appendix.nodes["likes"].predicator, appendix) == ("24", "392")


def test_lexical_zero_slots(appendix):
    assert lexical_arg_lists(ArgStructure(()), appendix) == ()


def test_appendix_lists(appendix):
    lists = propagate(appendix)
    assert lists["said"].list_a == lists["said"].list_z == ("54", "247")
    assert lists["likes"].list_a == ("24", "392")
    assert lists["s2"].list_z == ("54", "247", "24", "392")
    root = lists[appendix.root]
    assert root.list_u == root.list_lu == ("415", "54", "247", "24", "392")


def test_single_np_discourse():
    d = make_doc([{"id": "s", "children": [np("mary")]}], context=["x", "y"]).discourse
    lists = propagate(d)
    assert lists["mary"].list_u == ("x", "y", "mary")
    assert lists["mary"].list_a == ()


def test_two_sentences_root_u():
    d = make_doc([clause("s1", "v1", np("a"), verb("v1", "a", "b"), np("b")),
                  clause("s2", "v2", np("c", "pronoun"), verb("v2", "c"))]).discourse
    walked = [m for nid in d.index.preorder if d.nodes[nid].np is not None
              for m in d.nodes[nid].np.markers]
    assert propagate(d)[d.root].list_u == tuple(walked)


def test_topicalised_list_a_unchanged():
    plain = propagate(corpus_doc("talk-about-himself").discourse)["himself"]
    fronted = propagate(corpus_doc("talk-about-himself-topicalised").discourse)["himself"]
    assert plain.list_a == fronted.list_a == ("peter", "john", "himself")


def test_invalid_discourse_rejected():
    doc = make_doc([clause("s", "v", np("a"), verb("v", "a"))])
    d = doc.discourse
    broken = type(d)({**d.nodes, "s": d.nodes["s"].__class__("s", "sentence", daughters=("a", "zz"))})
    with pytest.raises(InvalidDiscourse):
        propagate(broken)


def test_as_dict_keys(appendix):
    assert set(propagate(appendix)["he"].as_dict()) == {"list-a", "list-z", "list-u", "list-lu"}


@settings(max_examples=60, deadline=None)
@given(discourses, modes)
def test_root_fixpoint(d, mode):
    root = propagate(d, mode)[d.root]
    assert set(root.list_u) == {m.id for m in all_markers(d)}
    assert root.list_u == root.list_lu


@settings(max_examples=60, deadline=None)
@given(discourses, modes)
def test_lu_grows_upwards(d, mode):
    lists = propagate(d, mode)
    for nid in d.index.preorder:
        mine = Counter(lists[nid].list_lu)
        for c in d.nodes[nid].daughters:
            assert not Counter(lists[c].list_lu) - mine


@settings(max_examples=60, deadline=None)
@given(discourses, modes)
def test_no_i_within_i(d, mode):
    # the NP's own r-mark (the one its determiner contributes) is invisible below its head
    lists = propagate(d, mode)
    for nid in d.index.np_nodes:
        node = d.nodes[nid]
        if node.head is not None:
            assert node.np.r_mark not in lists[node.head].list_u


def test_possessor_keeps_its_own_marker():
    d = corpus_doc("german-bild-possessor").discourse
    lists = propagate(d)
    assert "maria" in lists["maria"].list_u
    assert "bild" not in lists["bild-n"].list_u
    assert "sich" not in lists["maria"].list_u


@settings(max_examples=80, deadline=None)
@given(discourses, modes)
def test_list_z_is_the_commanders(d, mode):
    lists = propagate(d, mode)
    ms = [m.id for m in all_markers(d)]
    for nid in d.index.np_nodes:
        w = d.nodes[nid].np.r_mark
        lz = lists[nid].list_z
        if w not in lz:
            continue
        k = lz.index(w)
        t, g, i = lists[nid].z_ranks[k]
        listed = [m for m, (t2, g2, i2) in zip(lz, lists[nid].z_ranks)
                  if t2 < t or (g2 == g and i2 < i)]
        brute = [x for x in ms if o_command(x, w, d)]
        assert set(listed) == set(brute)
        # relative order never contradicts o-command
        for a, x in enumerate(listed):
            assert not any(o_command(y, x, d) for y in listed[a + 1:])


def test_cached_per_mode(appendix):
    assert propagate(appendix, "immediate") is propagate(appendix, "immediate")
    assert isinstance(propagate(appendix, "upstairs")["he"], BindLists)
