"""Checking documents end to end, and running a corpus of them."""
from __future__ import annotations

import glob as globlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .bdp import propagate
from .io import Document, DocumentError, judgment_links, parse_document
from .model import LangParams
from .obliqueness import o_command
from .principles import AntecReport, apply_binding
from .reverse import filter_reports
from .transitivity import (DEFAULT_ISUM_CAP, PluralisationCap, check_resolution,
                           number_filter, pluralize_candidates)

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2
CORPUS_DIR = Path(__file__).parent / "corpus"


@dataclass(frozen=True)
class CheckFlags:
    lang: Optional[LangParams] = None
    dump_lists: bool = False
    reverse: bool = True
    transitivity: bool = True
    max_isum: int = DEFAULT_ISUM_CAP


@dataclass
class CheckResult:
    doc: Document
    # ANTEC as the binding principles leave it, and after the filters
    binding: list[AntecReport]
    reports: list[AntecReport]
    violations: list
    mismatches: list[str] = field(default_factory=list)
    # (principle, passed) per checked item, for corpus tallies
    tally: list[tuple[str, bool]] = field(default_factory=list)
    report: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_MISMATCH if self.mismatches or self.violations else EXIT_OK

    @property
    def passed(self) -> bool:
        """Agreement with the expected block (violations it predicts are fine)."""
        return not self.mismatches


def candidate_reports(doc: Document, flags: CheckFlags = CheckFlags(),
                      reports: Optional[list[AntecReport]] = None) -> list[AntecReport]:
    """Binding reports after the reverse principles and any agreement filter."""
    d = doc.discourse
    if reports is None:
        reports = apply_binding(d, flags.lang or doc.lang)
    if flags.reverse:
        reports = filter_reports(reports, d)
    if "number" in doc.filters:
        reports = number_filter(reports, d)
    return reports


def _report_dict(base: AntecReport, rep: AntecReport, doc: Document, flags: CheckFlags) -> dict:
    d = doc.discourse
    o = {
        "anaphor": rep.anaphor,
        "node": rep.node,
        "principle": rep.principle,
        "antec": list(base.antec),
        "candidates": list(rep.antec),
        "exempt": rep.exempt,
        "reshuffled": rep.reshuffled,
        "domain": list(rep.domain_nodes),
        "removed": [{"marker": m, "principle": p} for m, p in rep.removed],
    }
    if rep.exempt:
        o["exempt-pool"] = list(rep.exempt_pool)
    if d.nodes[rep.node].np.r_number() == "plural" and rep.principle in ("B", "C"):
        try:
            o["isums"] = [c.id for c in pluralize_candidates(rep.antec, flags.max_isum, d)]
        except PluralisationCap as e:
            o["isum-error"] = str(e)
    return o


def _vkey(v) -> tuple:
    return (v["kind"], v.get("principle"))


def _evaluate(doc: Document, binding: list[AntecReport], reports: list[AntecReport],
              violations: list, flags: CheckFlags) -> tuple[list[str], list[tuple[str, bool]]]:
    exp = doc.expected or {}
    d = doc.discourse
    base = {r.anaphor: r for r in binding}
    by = {r.anaphor: r for r in reports}
    bad: list[str] = []
    tally: list[tuple[str, bool]] = []

    def note(principle, ok, msg):
        tally.append((principle or "-", ok))
        if not ok:
            bad.append(msg)

    for key, table in (("antec", base), ("candidates", by)):
        for m, want in exp.get(key, {}).items():
            rep = table.get(m)
            got = list(rep.antec) if rep else None
            note(rep.principle if rep else None, got is not None and set(got) == set(want),
                 f"{key} of {m}: expected {sorted(want)}, got {got}")
    for key in ("exempt", "reshuffled"):
        for m, want in exp.get(key, {}).items():
            rep = by.get(m)
            got = getattr(rep, key) if rep else None
            note(rep.principle if rep else None, got == want, f"{key} of {m}: expected {want}, got {got}")
    for m, want in exp.get("domain", {}).items():
        rep = by.get(m)
        got = list(rep.domain_nodes) if rep else None
        note(rep.principle if rep else None, got is not None and set(got) == set(want),
             f"domain of {m}: expected {sorted(want)}, got {got}")
    for m, want in exp.get("principles", {}).items():
        rep = by.get(m)
        got = rep.principle if rep else None
        note(got, got == want, f"principle of {m}: expected {want}, got {got}")
    for x, y, want in exp.get("ocommand", []):
        got = o_command(x, y, d)
        note("o-command", got == want, f"o-command {x} -> {y}: expected {want}, got {got}")
    if "lists" in exp:
        mode = (flags.lang or doc.lang).locality_mode
        lists = propagate(d, mode)
        for nid, want in exp["lists"].items():
            got = lists[nid].as_dict()
            for k, v in want.items():
                note("lists", got.get(k) == v, f"{k} at {nid}: expected {v}, got {got.get(k)}")
    for k, j in enumerate(exp.get("judgments", [])):
        links = judgment_links(j)
        vs = [v.as_dict() for v in check_resolution(links, reports, d, transitivity=flags.transitivity)]
        ok = not vs
        rep = by.get(links[0].anaphor)
        label = " ; ".join(f"{l.anaphor}->{'+'.join(l.antecedents)}" for l in links)
        note(rep.principle if rep else None, ok == j["ok"],
             f"judgment {label}: expected {'ok' if j['ok'] else 'starred'}, got "
             f"{'ok' if ok else 'starred ' + str([_vkey(v) for v in vs])}")
        if "violations" in j:
            want = {(w["kind"], w.get("principle")) for w in j["violations"]}
            got = {_vkey(v) for v in vs}
            note(rep.principle if rep else None, want <= got,
                 f"judgment {label}: expected violations {sorted(want, key=str)}, got {sorted(got, key=str)}")
    if "violations" in exp:
        want = sorted({(w["kind"], w.get("principle")) for w in exp["violations"]}, key=str)
        got = sorted({_vkey(v) for v in violations}, key=str)
        note("links", want == got, f"violations: expected {want}, got {got}")
    return bad, tally


def run_check(doc: Document, flags: CheckFlags = CheckFlags()) -> CheckResult:
    """Candidate lists, filters and resolution checks for one document."""
    d = doc.discourse
    binding = apply_binding(d, flags.lang or doc.lang)
    reports = candidate_reports(doc, flags, binding)
    violations = [v.as_dict() for v in
                  check_resolution(doc.links, reports, d, transitivity=flags.transitivity)]
    if doc.expected:
        mismatches, tally = _evaluate(doc, binding, reports, violations, flags)
    else:
        mismatches, tally = [], []
    res = CheckResult(doc, binding, reports, violations, mismatches, tally)
    lang = flags.lang or doc.lang
    out = {
        "id": doc.id,
        "lang": {"name": lang.name, "locality": lang.locality_mode, "reshuffle": lang.reshuffle},
        "anaphors": [_report_dict(b, r, doc, flags) for b, r in zip(binding, reports)],
        "violations": violations,
    }
    if doc.cite:
        out["cite"] = doc.cite
    if flags.dump_lists:
        lists = propagate(d, lang.locality_mode)
        out["lists"] = {nid: lists[nid].as_dict() for nid in d.index.preorder}
    if doc.expected is not None:
        out["expected"] = {"ok": not mismatches, "mismatches": mismatches}
    out["exit"] = res.exit_code
    res.report = out
    return res


def text_report(report: dict) -> str:
    lines = [f"{report['id']} ({report['lang']['name']})"]
    for a in report["anaphors"]:
        flags = "".join(f" [{f}]" for f in ("exempt", "reshuffled") if a[f])
        lines.append(f"  {a['anaphor']} {a['principle']}: <{', '.join(a['antec'])}>{flags}")
        if a["candidates"] != a["antec"]:
            lines.append(f"    candidates <{', '.join(a['candidates'])}>")
        for r in a["removed"]:
            lines.append(f"    removed {r['marker']} by {r['principle']}")
    for v in report["violations"]:
        p = f" {v['principle']}" if v["principle"] else ""
        lines.append(f"  violation {v['kind']}{p}: {v['message']}")
    if "lists" in report:
        for nid, l in report["lists"].items():
            lines.append(f"  {nid}: " + " ".join(f"{k}=<{','.join(v)}>" for k, v in l.items()))
    if "expected" in report:
        lines.append("  expected: " + ("ok" if report["expected"]["ok"] else "MISMATCH"))
        lines.extend(f"    {m}" for m in report["expected"]["mismatches"])
    return "\n".join(lines)


@dataclass
class CorpusSummary:
    files: list[str]
    failed: list[str]
    errors: dict[str, str]
    by_principle: dict[str, dict[str, int]]
    by_lang: dict[str, dict[str, int]]
    details: dict[str, list[str]]

    @property
    def exit_code(self) -> int:
        if self.errors:
            return EXIT_INPUT
        return EXIT_MISMATCH if self.failed else EXIT_OK

    def as_dict(self) -> dict:
        return {"files": len(self.files), "passed": len(self.files) - len(self.failed) - len(self.errors),
                "failed": self.failed, "errors": self.errors, "by_principle": self.by_principle,
                "by_lang": self.by_lang, "details": self.details}


def corpus_files(pattern: Optional[str] = None) -> list[str]:
    pattern = pattern or str(CORPUS_DIR / "*.json")
    files = sorted(globlib.glob(pattern, recursive=True))
    if not files:
        raise DocumentError("E-NOFILES", f"no documents match {pattern!r}")
    return files


def run_corpus(pattern: Optional[str] = None, flags: CheckFlags = CheckFlags()) -> CorpusSummary:
    """Check every matching document against its expected block."""
    files = corpus_files(pattern)
    failed, errors, details = [], {}, {}
    by_p: dict[str, dict[str, int]] = {}
    by_l: dict[str, dict[str, int]] = {}

    def bump(table, key, ok):
        row = table.setdefault(key, {"pass": 0, "fail": 0})
        row["pass" if ok else "fail"] += 1

    for path in files:
        try:
            doc = parse_document(path)
        except DocumentError as e:
            errors[path] = str(e)
            continue
        res = run_check(doc, flags)
        for principle, ok in res.tally:
            bump(by_p, principle, ok)
        bump(by_l, doc.lang.name, res.passed)
        if not res.passed:
            failed.append(path)
            details[path] = res.mismatches
    return CorpusSummary(files, failed, errors, by_p, by_l, details)
