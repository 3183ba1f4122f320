import json
import pytest

from binder.io import parse_document, parse_text
from binder.model import all_markers
from binder.pipeline import CORPUS_DIR

APPENDIX = CORPUS_DIR / "appendix.json"


@pytest.fixture(scope="session")
def appendix_doc():
    return parse_document(APPENDIX)


@pytest.fixture(scope="session")
def appendix(appendix_doc):
    return appendix_doc.discourse


def corpus_doc(name):
    return parse_document(CORPUS_DIR / f"{name}.json")


def make_doc(sentences, lang="english", context=(), **extra):
    """Document from bare sentence trees, in the on-disk schema."""
    o = {"binder-schema": 1, "id": extra.pop("id", "t"), "lang": lang,
         "context": list(context), "sentences": sentences}
    o.update(extra)
    return parse_text(json.dumps(o))


def np(id, type="non-pronoun", **kw):
    info = {"type": type, "r-mark": kw.pop("r", id)}
    for k in ("var", "number", "locality", "reshuffle"):
        if k in kw:
            info[k] = kw.pop(k)
    if "var" in info:
        info["quantificational"] = True
    out = {"id": id, "np": info}
    out.update(kw)
    return out


def verb(id, *slots, order=None):
    a = {"slots": [[s, "arg"] for s in slots]}
    if order:
        a["order"] = order
    return {"id": id, "arg-st": a}


def clause(id, head, *children, **feats):
    return {"id": id, "head": head, "children": list(children), **feats}


def clause_chain(k, innermost_obj="short-reflexive"):
    """Subject-only clauses s0 ... s{k-1}, each embedding the next; the last has an object."""
    node = None
    for i in range(k - 1, -1, -1):
        kids = [np(f"subj{i}"), verb(f"v{i}", f"subj{i}", *(["obj"] if i == k - 1 else [f"c{i + 1}"]))]
        kids.append(np("obj", innermost_obj) if i == k - 1 else node)
        node = clause(f"c{i}", f"v{i}", *kids, finiteness="finite")
    return [node]


# -- brute force ------------------------------------------------------------------


def brute_ocommand(d):
    """Every (x, y) with x o-commanding y, by enumerating slot paths.

    x o-commands y when x sits in a less oblique slot than some slot s of the
    same predicator and y is reached from s by descending through the
    predicators that s projects.  A bound variable also commands its own
    r-mark.
    """
    ix = d.index
    nodes = d.nodes

    def markers(s):
        n = nodes[ix.resolve(s)]
        return n.np.markers if n.np is not None else ()

    def below(s, seen=()):
        s = ix.resolve(s)
        out = set(markers(s))
        p = ix.pred_of(s)
        if p is not None and p not in seen:
            for t in nodes[p].predicator.effective.nodes:
                out |= below(t, seen + (p,))
        return out

    pairs = set()
    for p in ix.predicators:
        a = nodes[p].predicator
        slots = a.effective.nodes
        tiers = a.tiers()
        for i, si in enumerate(slots):
            mi = markers(si)
            if len(mi) == 2:
                pairs.add((mi[0], mi[1]))
                # the variable precedes the r-mark, so it commands what the r-mark does
            for j, sj in enumerate(slots):
                if tiers[i] < tiers[j]:
                    for x in mi:
                        for y in below(sj):
                            pairs.add((x, y))
    return pairs


def brute_commanders(d, y):
    pairs = brute_ocommand(d)
    return [m.id for m in all_markers(d) if (m.id, y) in pairs]


# -- acceptance verdicts ------------------------------------------------------------

VERDICTS: list[str] = []


def verdict(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    VERDICTS.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
