"""Binding Domains Principle: LIST-A, LIST-Z, LIST-U and LIST-LU at every node.

Lists are built in two passes.  Bottom-up, LIST-LU gathers the markers each
NP (and the ctx node) contributes.  Top-down, LIST-U percolates from the
root while LIST-A and LIST-Z are read off the predicators' argument
structures, LIST-Z growing by concatenation at each embedded domain.

LIST-A and LIST-Z carry a rank per member so partial (non-linear) orders
survive the flattening: ``(tier, group, within)``.  An entry commands
another iff its tier is lower, or both sit in the same slot (group) and it
comes first there, which is how a var commands its own r-mark.  Clause
slots leave a marker-less placeholder entry so embedded lists can find the
commanders of the clause they hang from.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .model import ArgStructure, Discourse, require_valid
from .obliqueness import satisfies


class Entry(NamedTuple):
    marker: Optional[str]
    tier: int
    group: tuple
    within: int

    def below(self, other: "Entry") -> bool:
        return self.tier < other.tier or (self.group == other.group and self.within < other.within)

    @property
    def key(self):
        return self.marker if self.marker is not None else ("slot", self.group)


Ranked = tuple[Entry, ...]


def concat(a: Ranked, b: Ranked) -> Ranked:
    """``a`` followed by ``b`` with every tier of ``b`` above ``a``; first copy wins."""
    if not a:
        return b
    shift = max(e.tier for e in a) + 1
    seen = {e.key for e in a}
    out = list(a)
    for e in b:
        if e.key not in seen:
            seen.add(e.key)
            out.append(Entry(e.marker, e.tier + shift, e.group, e.within))
    return tuple(out)


def commanders_in(rl: Ranked, target: Entry) -> Ranked:
    return tuple(e for e in rl if e.below(target))


def find(rl: Ranked, key) -> Optional[Entry]:
    for e in rl:
        if e.key == key:
            return e
    return None


def flat(rl: Ranked) -> tuple[str, ...]:
    return tuple(e.marker for e in rl if e.marker is not None)


def ranks(rl: Ranked) -> tuple[tuple, ...]:
    return tuple((e.tier, e.group, e.within) for e in rl if e.marker is not None)


def lexical_ranked(owner: str, d: Discourse) -> Ranked:
    a = d.nodes[owner].predicator
    ix = d.index
    out = []
    for i, (nid, tier) in enumerate(zip(a.effective.nodes, a.tiers())):
        group = (owner, i)
        out.append(Entry(None, tier, group, -1))
        for k, m in enumerate(ix.slot_markers(nid)):
            out.append(Entry(m, tier, group, k))
    return tuple(out)


def lexical_arg_lists(a: ArgStructure | str, d: Discourse) -> tuple[str, ...]:
    """LIST-A contributed by a predicator's lexical entry, in obliqueness order.

    ``a`` may be the owning node id or the argument structure itself.
    """
    if isinstance(a, str):
        return flat(lexical_ranked(a, d))
    ix = d.index
    out: list[str] = []
    for nid in a.effective.nodes:
        out.extend(ix.slot_markers(nid))
    return tuple(out)


@dataclass(frozen=True)
class BindLists:
    list_a: tuple[str, ...] = ()
    list_z: tuple[str, ...] = ()
    list_u: tuple[str, ...] = ()
    list_lu: tuple[str, ...] = ()
    # ranks aligned with list_a / list_z
    a_ranks: tuple = ()
    z_ranks: tuple = ()
    # owner of the predicator whose list this node shares
    a_source: Optional[str] = None
    z_source: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "list-a": list(self.list_a),
            "list-z": list(self.list_z),
            "list-u": list(self.list_u),
            "list-lu": list(self.list_lu),
        }


class _Builder:
    def __init__(self, d: Discourse, mode: str):
        self.d = d
        self.ix = d.index
        self.mode = mode
        self.lex: dict[str, Ranked] = {}
        self.dom: dict[str, Ranked] = {}
        self.z: dict[str, Ranked] = {}

    def lexical(self, owner: str) -> Ranked:
        if owner not in self.lex:
            self.lex[owner] = lexical_ranked(owner, self.d)
        return self.lex[owner]

    def _chain(self, owner: str, done: dict) -> list[str]:
        """``owner`` and its uncomputed upstairs predicators, top first."""
        chain = []
        cur: Optional[str] = owner
        while cur is not None and cur not in done:
            chain.append(cur)
            up = self.ix.upstairs(cur)
            cur = up[0] if up else None
        return chain[::-1]

    def domain(self, owner: str) -> Ranked:
        """Predicator-level LIST-A under the locality mode."""
        for p in self._chain(owner, self.dom):
            local = self.lexical(p)
            up = self.ix.upstairs(p)
            if up is None or self.mode in ("immediate", "upstairs") or satisfies(self.d, p, self.mode):
                self.dom[p] = local
                continue
            q, i = up
            upper = self.dom[q]
            slot = find(upper, ("slot", (q, i)))
            self.dom[p] = concat(commanders_in(upper, slot), local)
        return self.dom[owner]

    def zlist(self, owner: str) -> Ranked:
        for p in self._chain(owner, self.z):
            own = self.domain(p)
            up = self.ix.upstairs(p)
            if up is None:
                self.z[p] = own
                continue
            q, i = up
            outer = self.z[q]
            slot = find(outer, ("slot", (q, i)))
            self.z[p] = concat(commanders_in(outer, slot), own)
        return self.z[owner]

    def argument(self, slot_node: str) -> tuple[Ranked, str]:
        """LIST-A seen by an argument NP, with its source predicator."""
        owner, i = self.ix.selector[slot_node]
        if self.mode != "upstairs":
            return self.domain(owner), owner
        own = tuple(e for e in self.lexical(owner) if e.group == (owner, i))
        up = self.ix.upstairs(owner)
        if up is None:
            return own, owner
        q, k = up
        upper = self.lexical(q)
        return concat(commanders_in(upper, find(upper, ("slot", (q, k)))), own), q


def propagate(d: Discourse, mode: str = "immediate") -> dict[str, BindLists]:
    """BindLists for every node of ``d`` under locality ``mode``."""
    require_valid(d)
    cache = d.__dict__.setdefault("_bdp", {})
    if mode in cache:
        return cache[mode]
    ix = d.index
    nodes = d.nodes
    b = _Builder(d, mode)

    # bottom-up: LIST-LU
    lu: dict[str, tuple[str, ...]] = {}
    for nid in reversed(ix.preorder):
        node = nodes[nid]
        own = node.markers + (node.np.markers if node.np is not None else ())
        parts = [own] + [lu[c] for c in node.daughters]
        lu[nid] = tuple(m for part in parts for m in part)

    # top-down: LIST-U, LIST-A, LIST-Z
    out: dict[str, BindLists] = {}
    u: dict[str, tuple[str, ...]] = {d.root: lu[d.root]}
    a: dict[str, tuple[Ranked, Optional[str]]] = {}
    z: dict[str, tuple[Ranked, Optional[str]]] = {}
    empty: tuple[Ranked, Optional[str]] = ((), None)
    for nid in ix.preorder:
        node = nodes[nid]
        mother = ix.parent.get(nid)
        p = ix.pred_of(nid)
        if node.np is not None:
            if nid in ix.selector:
                a[nid] = b.argument(nid)
                z[nid] = (b.zlist(ix.selector[nid][0]), ix.selector[nid][0])
            else:
                a[nid] = empty
                z[nid] = z[mother] if mother is not None else empty
        elif p is not None:
            a[nid] = (b.domain(p), p)
            z[nid] = (b.zlist(p), p)
        elif mother is None or mother == d.root:
            a[nid] = z[nid] = empty
        else:
            a[nid] = a[mother]
            z[nid] = z[mother]

        if node.np is not None and node.daughters:
            # inside an NP: the specifier loses the head's LIST-A (bar its own
            # markers), the rest lose the NP's own r-mark (no i-within-i loops)
            spec = node.spec_daughter
            head_a = set()
            if node.head is not None:
                hp = ix.pred_of(node.head)
                if hp is not None:
                    head_a = set(flat(b.domain(hp)))
            if spec is not None:
                head_a -= set(lu[spec])
            for c in node.daughters:
                if c == spec:
                    u[c] = tuple(m for m in u[nid] if m not in head_a)
                else:
                    u[c] = tuple(m for m in u[nid] if m != node.np.r_mark)
        else:
            for c in node.daughters:
                u[c] = u[nid]

        ra, sa = a[nid]
        rz, sz = z[nid]
        out[nid] = BindLists(flat(ra), flat(rz), u[nid], lu[nid], ranks(ra), ranks(rz), sa, sz)
    cache[mode] = out
    return out
