"""Antecedent-side constraints for quantificational NPs.

A quantificational NP contributes two markers: its r-mark (the e-marker,
standing for the plurality obtained by abstraction) and its var (the
v-marker, the bound variable).  An e-marker may not o-command the anaphor it
anchors; a v-marker must.  Weak crossover is the v-marker case.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import Discourse
from .obliqueness import o_command
from .principles import AntecReport


@dataclass(frozen=True)
class MarkerKindView:
    marker: str
    is_e_marker: bool
    is_v_marker: bool


def marker_kind_view(marker: str, d: Discourse) -> MarkerKindView:
    m = d.markers[marker]
    if m.kind == "var":
        return MarkerKindView(marker, False, True)
    if m.kind == "r-mark" and d.nodes[m.source].np.quantificational:
        return MarkerKindView(marker, True, False)
    return MarkerKindView(marker, False, False)


def reverse_verdict(antecedent: str, anaphor: str, d: Discourse, *, use_v: bool = True):
    """None when admissible, otherwise the principle ("E" or "V") that rejects it."""
    if antecedent not in d.markers:
        raise KeyError(f"unknown antecedent marker {antecedent!r}")
    view = marker_kind_view(antecedent, d)
    if view.is_e_marker and o_command(antecedent, anaphor, d):
        return "E"
    if use_v and view.is_v_marker and not o_command(antecedent, anaphor, d):
        return "V"
    return None


def reverse_admissible(antecedent: str, anaphor: str, d: Discourse, *, use_v: bool = True) -> bool:
    return reverse_verdict(antecedent, anaphor, d, use_v=use_v) is None


def filter_reports(reports: list[AntecReport], d: Discourse, *, use_v: bool = True) -> list[AntecReport]:
    """Drop candidates rejected by the reverse principles, recording why."""
    out = []
    for rep in reports:
        keep, removed = [], []
        for m in rep.antec:
            why = reverse_verdict(m, rep.anaphor, d, use_v=use_v)
            if why is None:
                keep.append(m)
            else:
                removed.append((m, why))
        out.append(rep.with_antec(keep, removed) if removed else rep)
    return out
