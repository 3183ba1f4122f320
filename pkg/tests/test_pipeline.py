import json
import shutil

import pytest

from binder.io import DocumentError, parse_document
from binder.model import BUILTIN_LANGS
from binder.pipeline import (EXIT_MISMATCH, EXIT_OK, CheckFlags, corpus_files, run_check,
                             run_corpus, text_report)

from conftest import APPENDIX, corpus_doc, make_doc, np


def anaphor(report, marker):
    return next(a for a in report["anaphors"] if a["anaphor"] == marker)


def test_appendix_report(appendix_doc):
    res = run_check(appendix_doc)
    assert res.exit_code == EXIT_OK and res.report["exit"] == 0
    assert anaphor(res.report, "392")["antec"] == ["24"]
    he = anaphor(res.report, "24")
    assert set(he["antec"]) == {"415", "54", "247", "392"}
    # the e-marker of every student o-commands he
    assert set(he["candidates"]) == {"415", "54", "392"}
    assert {"marker": "247", "principle": "E"} in he["removed"]


def test_accidental_b_exits_2():
    res = run_check(corpus_doc("transitivity-accidental-b"))
    assert res.exit_code == EXIT_MISMATCH
    assert ("transitivity", "B") in {(v["kind"], v["principle"]) for v in res.violations}
    assert res.passed


def test_no_anaphors():
    doc = make_doc([{"id": "s", "children": [np("it", "none")]}])
    res = run_check(doc)
    assert res.report["anaphors"] == [] and res.exit_code == EXIT_OK


def test_dump_lists(appendix_doc):
    rep = run_check(appendix_doc, CheckFlags(dump_lists=True)).report
    assert rep["lists"]["likes"]["list-a"] == ["24", "392"]
    assert list(rep["lists"]) == list(appendix_doc.discourse.index.preorder)


def test_no_reverse_keeps_e_marker(appendix_doc):
    he = anaphor(run_check(appendix_doc, CheckFlags(reverse=False)).report, "24")
    assert he["candidates"] == he["antec"] and he["removed"] == []


def test_lang_override():
    doc = corpus_doc("icelandic-subjunctive")
    sig = anaphor(run_check(doc, CheckFlags(lang=BUILTIN_LANGS["english"])).report, "sig")
    assert sig["antec"] == ["maria"]
    assert not run_check(doc, CheckFlags(lang=BUILTIN_LANGS["english"])).passed


def test_isums_for_plural_pronoun():
    rep = run_check(corpus_doc("split-pronoun-them")).report
    them = anaphor(rep, "them")
    assert "john+mary" in them["isums"]
    capped = anaphor(run_check(corpus_doc("split-pronoun-them"), CheckFlags(max_isum=1)).report, "them")
    assert "isum-error" in capped and "isums" not in capped


def test_text_report(appendix_doc):
    text = text_report(run_check(appendix_doc).report)
    assert "392 A: <24>" in text and "removed 247 by E" in text and "expected: ok" in text


def test_shipped_corpus_passes():
    s = run_corpus()
    assert not s.failed and not s.errors and s.exit_code == EXIT_OK
    assert len(s.files) == len(corpus_files())


def test_inverted_star_is_one_failure(tmp_path):
    for p in corpus_files()[:5]:
        shutil.copy(p, tmp_path)
    victim = sorted(tmp_path.glob("*.json"))[0]
    raw = json.loads(victim.read_text())
    flipped = False
    for j in raw["expected"].get("judgments", []):
        j["ok"] = not j["ok"]
        flipped = True
        break
    assert flipped
    victim.write_text(json.dumps(raw))
    s = run_corpus(str(tmp_path / "*.json"))
    assert s.failed == [str(victim)] and s.exit_code == EXIT_MISMATCH


def test_empty_glob(tmp_path):
    with pytest.raises(DocumentError) as e:
        run_corpus(str(tmp_path / "*.json"))
    assert e.value.code == "E-NOFILES"


def test_corpus_tallies():
    s = run_corpus()
    assert set(s.by_lang) == {"english", "german", "greek", "icelandic", "norwegian",
                              "portuguese", "toba-batak"}
    assert {"A", "Z", "B", "C"} <= set(s.by_principle)
