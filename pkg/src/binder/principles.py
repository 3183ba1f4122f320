"""Principles A, Z, B and C over the propagated lists, with reshuffling and exemption."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .bdp import BindLists, lexical_ranked, propagate
from .model import BinderError, Discourse, LangParams, require_valid
from .obliqueness import commanded_markers, is_o_bottom, local_domain


class ContractError(BinderError, ValueError):
    """A principle was called with an anaphor missing from its input list."""


@dataclass(frozen=True)
class AntecReport:
    anaphor: str
    node: str
    principle: str
    antec: tuple[str, ...]
    exempt: bool = False
    reshuffled: bool = False
    domain_nodes: tuple[str, ...] = ()
    # markers dropped by later filters, as (marker, principle) pairs
    removed: tuple[tuple[str, str], ...] = ()
    # for exempt reflexives: markers a resolver may still consider
    exempt_pool: tuple[str, ...] = ()
    added: tuple[str, ...] = ()

    def complies(self, marker: str) -> bool:
        return marker in self.antec

    def with_antec(self, antec, removed=(), added=()) -> "AntecReport":
        return replace(self, antec=tuple(antec), removed=self.removed + tuple(removed),
                       added=self.added + tuple(added))


def _commanders(lst: Sequence[str], w: str, ranks: Optional[Sequence]) -> tuple[str, ...]:
    try:
        k = list(lst).index(w)
    except ValueError:
        raise ContractError(f"marker {w!r} is not in the list {list(lst)!r}") from None
    if ranks is None:
        return tuple(lst[:k])
    t_w, g_w, i_w = ranks[k]
    return tuple(m for m, (t, g, i) in zip(lst, ranks)
                 if t < t_w or (g == g_w and i < i_w))


def principle_a(list_a: Sequence[str], w: str, ranks: Optional[Sequence] = None) -> tuple[str, ...]:
    """Local o-commanders of ``w`` in LIST-A, in list order.

    Without ``ranks`` the list is read as a linear order.
    """
    return _commanders(list_a, w, ranks)


def principle_z(list_z: Sequence[str], w: str, ranks: Optional[Sequence] = None) -> tuple[str, ...]:
    return _commanders(list_z, w, ranks)


def _complement(list_u: Sequence[str], drop: Sequence[str], w: str) -> tuple[str, ...]:
    if w not in list_u:
        raise ContractError(f"marker {w!r} is not in LIST-U")
    gone = set(drop)
    gone.add(w)
    return tuple(m for m in list_u if m not in gone)


def principle_b(list_u: Sequence[str], list_a: Sequence[str], w: str,
                ranks: Optional[Sequence] = None) -> tuple[str, ...]:
    """LIST-U minus the local o-commanders of ``w`` and ``w`` itself."""
    a_prime = principle_a(list_a, w, ranks) if w in list_a else ()
    return _complement(list_u, a_prime, w)


def principle_c(list_u: Sequence[str], list_z: Sequence[str], w: str,
                ranks: Optional[Sequence] = None) -> tuple[str, ...]:
    """LIST-U minus the o-commanders of ``w`` and ``w`` itself."""
    z_prime = principle_z(list_z, w, ranks) if w in list_z else ()
    return _complement(list_u, z_prime, w)


def reshuffle(w: str, d: Discourse) -> tuple[str, ...]:
    """Reset the domain of the o-bottom reflexive at NP node ``w`` one predicator up.

    Returns the commanders of ``w``'s host in the upstairs predicator's
    LIST-A followed by ``w``'s own markers, ready for :func:`principle_a`.
    Without an upstairs predicator only ``w``'s markers come back.
    """
    ix = d.index
    own = d.nodes[w].np.markers
    sel = ix.selector.get(w)
    if sel is None:
        return own
    up = ix.upstairs(sel[0])
    if up is None:
        return own
    q, i = up
    upper = lexical_ranked(q, d)
    slot = next(e for e in upper if e.marker is None and e.group == (q, i))
    return tuple(e.marker for e in upper if e.marker is not None and e.below(slot)) + own


def _exempt_pool(w: str, lists: BindLists, d: Discourse) -> tuple[str, ...]:
    np = d.nodes[w].np
    below = commanded_markers(w, d)
    return tuple(m for m in lists.list_u if m not in np.markers and m not in below)


def binding_report(w: str, d: Discourse, p: LangParams) -> AntecReport:
    """Report for the anaphoric NP at node ``w``."""
    np = d.nodes[w].np
    mode = np.locality or p.locality_mode
    lists = propagate(d, mode)[w]
    ix = d.index
    r = np.r_mark
    selected = w in ix.selector
    dom = local_domain(w, d, mode)
    domain_nodes = tuple(n for n in ix.preorder if n in dom.nodes) if dom.found else ()
    principle = np.principle

    if principle in ("B", "C"):
        if principle == "B":
            antec = principle_b(lists.list_u, lists.list_a if selected else (), r, lists.a_ranks)
        else:
            antec = principle_c(lists.list_u, lists.list_z if selected else (), r, lists.z_ranks)
        return AntecReport(r, w, principle, antec, domain_nodes=domain_nodes)

    if principle == "A":
        antec = principle_a(lists.list_a, r, lists.a_ranks) if selected else ()
    else:
        antec = principle_z(lists.list_z, r, lists.z_ranks) if selected else ()
    reshuffled = False
    allow = np.reshuffle if np.reshuffle is not None else p.reshuffle
    if not antec and allow and selected and is_o_bottom(w, d):
        shuffled = principle_a(reshuffle(w, d), r)
        if shuffled:
            antec, reshuffled = shuffled, True
    exempt = not antec
    pool = _exempt_pool(w, lists, d) if exempt else ()
    return AntecReport(r, w, principle, antec, exempt, reshuffled, domain_nodes, exempt_pool=pool)


def apply_binding(d: Discourse, p: Optional[LangParams] = None) -> list[AntecReport]:
    """One report per anaphoric NP, in document order."""
    require_valid(d)
    p = p or LangParams()
    ix = d.index
    return [binding_report(nid, d, p) for nid in ix.np_nodes
            if d.nodes[nid].np.principle is not None]
