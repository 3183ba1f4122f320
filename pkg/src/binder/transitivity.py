"""Coreference transitivity over proposed resolutions, and i-sum candidates.

Resolutions come in as typed links.  Only coreference links are transitive:
two anaphors resolved to the same antecedent by coreference must also be
admissible antecedents of each other, which is how "accidental" B and C
violations get caught.  Bound, bridging, e-type and split links never merge
classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .model import BinderError, Discourse
from .principles import AntecReport
from .reverse import marker_kind_view

LINK_TYPES = ("coreference", "bound", "e-type", "bridging", "split")
DEFAULT_ISUM_CAP = 16


class UnknownMarker(BinderError, KeyError):
    pass


class PluralisationCap(BinderError, ValueError):
    pass


@dataclass(frozen=True)
class AnaphoricLink:
    anaphor: str
    antecedents: tuple[str, ...]
    type: str = "coreference"

    def __post_init__(self):
        if self.type not in LINK_TYPES:
            raise ValueError(f"unknown link type {self.type!r}")
        n = len(self.antecedents)
        if self.type == "split" and n < 2:
            raise ValueError("a split link needs at least two antecedents")
        if self.type != "split" and n != 1:
            raise ValueError(f"a {self.type} link takes exactly one antecedent")

    @property
    def antecedent(self) -> str:
        return self.antecedents[0]


@dataclass(frozen=True)
class ResolutionViolation:
    kind: str  # link, link-type, split, transitivity, loop
    principle: Optional[str]
    anaphor: str
    antecedent: Optional[str]
    message: str

    def as_dict(self) -> dict:
        return {"kind": self.kind, "principle": self.principle, "anaphor": self.anaphor,
                "antecedent": self.antecedent, "message": self.message}


def coref_closure(links: Iterable[AnaphoricLink], markers: Iterable[str] = ()) -> list[frozenset[str]]:
    """Equivalence classes induced by the coreference links.

    Every marker mentioned in ``markers`` or in any link gets a class, so
    unlinked markers come back as singletons.  Classes are sorted by their
    first member in insertion order.
    """
    links = list(links)
    ds = DisjointSet()
    for m in markers:
        ds.add(m)
    for link in links:
        ds.add(link.anaphor)
        for a in link.antecedents:
            ds.add(a)
    for link in links:
        if link.type == "coreference":
            ds.merge(link.anaphor, link.antecedent)
    order = {m: i for i, m in enumerate(ds)}
    classes = [frozenset(s) for s in ds.subsets()]
    return sorted(classes, key=lambda c: min(order[m] for m in c))


def _check_known(links: Sequence[AnaphoricLink], d: Discourse):
    for link in links:
        for m in (link.anaphor, *link.antecedents):
            if m not in d.markers:
                raise UnknownMarker(f"link references unknown marker {m!r}")


def _why_missing(rep: AntecReport, m: str) -> str:
    for marker, principle in rep.removed:
        if marker == m:
            return principle
    return rep.principle


def _admits(rep: AntecReport, m: str, split: bool = False) -> bool:
    if rep.exempt:
        return m in rep.exempt_pool
    if split and (m, "number") in rep.removed:
        return True
    return m in rep.antec


def _loops(links: Sequence[AnaphoricLink]) -> list[list[str]]:
    """Strongly connected groups of the non-coreference dependency graph."""
    edges = [(l.anaphor, a) for l in links if l.type != "coreference" for a in l.antecedents]
    if not edges:
        return []
    ids = sorted({m for e in edges for m in e})
    pos = {m: i for i, m in enumerate(ids)}
    rows = [pos[a] for a, _ in edges]
    cols = [pos[b] for _, b in edges]
    g = csr_matrix((np.ones(len(edges)), (rows, cols)), shape=(len(ids), len(ids)))
    _, labels = connected_components(g, directed=True, connection="strong")
    groups: dict[int, list[str]] = {}
    for m, lab in zip(ids, labels):
        groups.setdefault(lab, []).append(m)
    selfloops = {a for a, b in edges if a == b}
    return [g_ for g_ in groups.values() if len(g_) > 1 or g_[0] in selfloops]


def check_resolution(links: Sequence[AnaphoricLink], reports: Sequence[AntecReport],
                     d: Discourse, *, transitivity: bool = True) -> list[ResolutionViolation]:
    """Violations a proposed set of links incurs against the candidate reports."""
    links = list(links)
    _check_known(links, d)
    by_marker = {r.anaphor: r for r in reports}
    out: list[ResolutionViolation] = []

    def add(v: ResolutionViolation):
        if v not in out:
            out.append(v)

    for link in links:
        rep = by_marker.get(link.anaphor)
        for a in link.antecedents:
            view = marker_kind_view(a, d)
            if link.type == "bound" and view.is_e_marker:
                add(ResolutionViolation("link-type", None, link.anaphor, a,
                                        "bound anaphora cannot take an e-marker"))
            if link.type == "e-type" and not view.is_e_marker:
                add(ResolutionViolation("link-type", None, link.anaphor, a,
                                        "e-type anaphora needs an e-marker"))
            if rep is not None and not _admits(rep, a, link.type == "split"):
                why = _why_missing(rep, a)
                add(ResolutionViolation("link", why, link.anaphor, a,
                                        f"{a} is not an admissible antecedent of {link.anaphor}"))
        if rep is not None and link.type == "split" and rep.principle in ("A", "Z") and not rep.exempt:
            add(ResolutionViolation("split", rep.principle, link.anaphor, None,
                                    "a bound reflexive cannot take split antecedents"))

    if transitivity:
        # only markers resolved by a coreference link answer for their class;
        # a plain antecedent owes nothing to the anaphors it anchors
        resolved = {l.anaphor for l in links if l.type == "coreference"}
        for cls in coref_closure(links):
            if len(cls) < 2:
                continue
            members = sorted(cls, key=lambda m: d.index.position.get(d.markers[m].source or "", -1))
            for w in members:
                rep = by_marker.get(w)
                if rep is None or rep.exempt or w not in resolved:
                    continue
                for x in members:
                    if x != w and x not in rep.antec:
                        add(ResolutionViolation("transitivity", _why_missing(rep, x), w, x,
                                                f"{x} corefers with {w} but is not admissible for it"))

    for group in _loops(links):
        add(ResolutionViolation("loop", None, group[0], None,
                                "anaphors are each other's antecedents: " + ", ".join(group)))
    return out


def augment_reports(reports: Sequence[AntecReport], links: Sequence[AnaphoricLink]) -> list[AntecReport]:
    """Close each candidate list under its anaphor's coreference class.

    Markers brought in this way are listed in ``added``; any that the
    principles had not admitted mark an accidental violation.
    """
    cls_of = {}
    for cls in coref_closure(links):
        for m in cls:
            cls_of[m] = cls
    out = []
    for rep in reports:
        mates = [m for m in sorted(cls_of.get(rep.anaphor, ())) if m != rep.anaphor and m not in rep.antec]
        out.append(rep.with_antec(rep.antec + tuple(mates), added=mates) if mates else rep)
    return out


@dataclass(frozen=True)
class Candidate:
    id: str
    members: tuple[str, ...]
    number: str


def pluralize_candidates(antec: Sequence[str], cap: int = DEFAULT_ISUM_CAP,
                         d: Optional[Discourse] = None) -> list[Candidate]:
    """Atoms of ``antec`` followed by every i-sum of two or more of them."""
    antec = list(dict.fromkeys(antec))
    if len(antec) > cap:
        raise PluralisationCap(f"{len(antec)} candidates exceed the i-sum cap of {cap}")
    out = []
    for m in antec:
        number = d.markers[m].number if d is not None else "unspecified"
        out.append(Candidate(m, (m,), number))
    for k in range(2, len(antec) + 1):
        for combo in combinations(antec, k):
            out.append(Candidate("+".join(combo), combo, "plural"))
    return out


def number_filter(reports: Sequence[AntecReport], d: Discourse) -> list[AntecReport]:
    """Agreement post-filter: drop candidates whose number clashes with the anaphor's.

    Unspecified numbers never clash.  Split links still accept atoms dropped
    here, since their i-sum is what the anaphor agrees with.
    """
    out = []
    for rep in reports:
        want = d.nodes[rep.node].np.r_number()
        if want == "unspecified":
            out.append(rep)
            continue
        drop = [m for m in rep.antec if d.markers[m].number not in ("unspecified", want)]
        keep = [m for m in rep.antec if m not in drop]
        out.append(rep.with_antec(keep, [(m, "number") for m in drop]) if drop else rep)
    return out
