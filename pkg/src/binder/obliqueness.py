"""Obliqueness orders, o-command and local domains.

O-command is computed here straight from its recursive definition, by
walking argument structures.  The list machinery in :mod:`binder.bdp`
reaches the same relation by a different route, which is what the oracle
tests compare.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .model import ArgStructure, Discourse, LangParams


def _slot_markers(d: Discourse, a: ArgStructure) -> list[tuple[str, ...]]:
    ix = d.index
    return [ix.slot_markers(n) for n in a.effective.nodes]


def obliqueness_order(a: ArgStructure, d: Discourse) -> frozenset[tuple[str, str]]:
    """Strict partial order over the markers of ``a``'s slots, as (less, more) pairs.

    The base voice is used when ``a`` has a binding base.  A quantificational
    slot contributes its var immediately below its r-mark.
    """
    tiers = a.tiers()
    per_slot = _slot_markers(d, a)
    pairs = set()
    for i, ms_i in enumerate(per_slot):
        for k in range(1, len(ms_i)):
            for j in range(k):
                pairs.add((ms_i[j], ms_i[k]))
        for j, ms_j in enumerate(per_slot):
            if tiers[i] < tiers[j]:
                pairs.update((x, y) for x in ms_i for y in ms_j)
    return frozenset(pairs)


@dataclass(frozen=True)
class OCommandGraph:
    edges: frozenset[tuple[str, str]]
    local_edges: frozenset[tuple[str, str]]
    domains: dict[str, frozenset[str]] = field(default_factory=dict)

    def commands(self, x: str, y: str) -> bool:
        return (x, y) in self.edges


def _node_reach(d: Discourse, start: str) -> set[str]:
    """Slot nodes o-commanded by whatever occupies slot ``start``.

    Y commands Z if Y is less oblique than Z, or Y commands some X that
    subcategorises for Z (or is a projection of something that does).
    """
    ix = d.index
    sel = ix.selector.get(start)
    if sel is None:
        return set()
    owner, i = sel
    a = d.nodes[owner].predicator
    tiers = a.tiers()
    slots = ix.slot_nodes(owner)
    frontier = deque(slots[j] for j in range(len(slots)) if tiers[i] < tiers[j])
    reached = set()
    while frontier:
        x = frontier.popleft()
        if x in reached:
            continue
        reached.add(x)
        p = ix.pred_of(x)
        if p is not None:
            frontier.extend(ix.slot_nodes(p))
    return reached


def _commanded_by(d: Discourse) -> dict[str, frozenset[str]]:
    cache = d.__dict__.get("_ocommand")
    if cache is not None:
        return cache
    ix = d.index
    out: dict[str, frozenset[str]] = {}
    for slot in ix.selector:
        ms = ix.slot_markers(slot)
        if not ms:
            continue
        below = set()
        for x in _node_reach(d, slot):
            below.update(ix.slot_markers(x))
        for k, m in enumerate(ms):
            out[m] = frozenset(below | set(ms[k + 1:]))
    d.__dict__["_ocommand"] = out
    return out


def commanded_markers(w: str, d: Discourse) -> set[str]:
    """Markers o-commanded by the NP at node ``w`` (its own r-mark excluded)."""
    ix = d.index
    out = set()
    for x in _node_reach(d, w):
        out.update(ix.slot_markers(x))
    return out


def o_command(x: str, y: str, d: Discourse) -> bool:
    """True iff marker ``x`` o-commands marker ``y`` (irreflexive)."""
    if x not in d.markers or y not in d.markers:
        raise KeyError(f"unknown marker {x if x not in d.markers else y!r}")
    return y in _commanded_by(d).get(x, ())


def commanders(y: str, d: Discourse) -> list[str]:
    """All o-commanders of ``y``, in document order."""
    table = _commanded_by(d)
    return [m.id for m in _doc_markers(d) if y in table.get(m.id, ())]


def _doc_markers(d: Discourse):
    from .model import all_markers
    return all_markers(d)


def command_graph(d: Discourse, params: Optional[LangParams] = None) -> OCommandGraph:
    params = params or LangParams()
    ix = d.index
    table = _commanded_by(d)
    edges = frozenset((x, y) for x, ys in table.items() for y in ys)
    local = set()
    for owner in ix.predicators:
        local.update(obliqueness_order(d.nodes[owner].predicator, d))
    domains = {}
    for nid in ix.np_nodes:
        np = d.nodes[nid].np
        if np.principle is None:
            continue
        dom = local_domain(nid, d, params)
        if dom.found:
            domains[np.r_mark] = dom.nodes
    return OCommandGraph(edges, frozenset(local), domains)


@dataclass(frozen=True)
class LocalDomain:
    nodes: frozenset[str]
    predicators: tuple[str, ...] = ()
    found: bool = True


NO_DOMAIN = LocalDomain(frozenset(), (), found=False)


def satisfies(d: Discourse, owner: str, mode: str) -> bool:
    """Whether the clause of predicator ``owner`` closes a domain under ``mode``.

    Nominal predicators always close their domain; a clause missing the
    relevant feature counts as closing it.
    """
    fin, mood, nominal = d.index.chain_features(owner)
    if nominal or mode == "immediate":
        return True
    if mode == "first-finite":
        return fin != "nonfinite"
    if mode == "first-indicative":
        return mood in (None, "indicative")
    return True


def _commanders_of_slot(d: Discourse, owner: str, i: int) -> list[str]:
    """Slot nodes of ``owner`` less oblique than its slot ``i``."""
    tiers = d.nodes[owner].predicator.tiers()
    slots = d.index.slot_nodes(owner)
    return [slots[j] for j in range(len(slots)) if tiers[j] < tiers[i]]


def local_domain(w: str, d: Discourse, p: LangParams | str) -> LocalDomain:
    """Nodes making up the local domain of the anaphoric NP node ``w``."""
    mode = p if isinstance(p, str) else p.locality_mode
    ix = d.index
    sel = ix.selector.get(w)
    if sel is None:
        return NO_DOMAIN
    owner, _ = sel
    if mode == "upstairs":
        up = ix.upstairs(owner)
        if up is None:
            return LocalDomain(frozenset([w]), (owner,))
        q, i = up
        return LocalDomain(frozenset(_commanders_of_slot(d, q, i)) | {w}, (q,))
    nodes = set(ix.slot_nodes(owner))
    preds = [owner]
    cur = owner
    while not satisfies(d, cur, mode):
        up = ix.upstairs(cur)
        if up is None:
            break
        q, i = up
        nodes.update(_commanders_of_slot(d, q, i))
        preds.append(q)
        cur = q
    return LocalDomain(frozenset(nodes), tuple(preds))


def is_o_bottom(w: str, d: Discourse) -> bool:
    """No marker in the local obliqueness order of NP node ``w`` commands it."""
    ix = d.index
    sel = ix.selector.get(w)
    np = d.nodes[w].np
    if sel is None:
        return True
    order = obliqueness_order(d.nodes[sel[0]].predicator, d)
    own = set(np.markers)
    return not any(y == np.r_mark and x not in own for x, y in order)
