"""Annotated discourse representation shared by every other module.

A discourse is a tree: one ``discourse`` root whose first daughter is the
phonologically null ``ctx`` node (holding the non-linguistic context markers)
followed by one or more sentence trees.  NPs carry an :class:`NPInfo`, and
predicators carry an :class:`ArgStructure` whose slots point at the NP or
clause nodes they select.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Optional

MARKER_KINDS = ("r-mark", "var", "context")
NUMBERS = ("singular", "plural", "unspecified")
ANAPHOR_TYPES = ("short-reflexive", "long-reflexive", "pronoun", "non-pronoun", "none")
CATEGORIES = ("discourse", "ctx", "sentence", "phrase", "word")
ORDER_KINDS = ("linear", "subject-only")
FINITENESS = ("finite", "nonfinite")
MOODS = ("indicative", "subjunctive", "other")
LOCALITY_MODES = ("immediate", "first-finite", "first-indicative", "upstairs")
DETERMINERS = ("universal", "other")

PRINCIPLE_OF = {
    "short-reflexive": "A",
    "long-reflexive": "Z",
    "pronoun": "B",
    "non-pronoun": "C",
}


class BinderError(Exception):
    """Base class for errors raised by the package."""


class InvalidDiscourse(BinderError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


@dataclass(frozen=True)
class Marker:
    id: str
    kind: str
    number: str = "unspecified"
    source: Optional[str] = None


@dataclass(frozen=True)
class NPInfo:
    anaphor_type: str
    r_mark: str
    var: Optional[str] = None
    quantificational: bool = False
    number: Optional[str] = None
    determiner: str = "universal"
    # item-level overrides of the language parameters
    locality: Optional[str] = None
    reshuffle: Optional[bool] = None

    @property
    def principle(self) -> Optional[str]:
        return PRINCIPLE_OF.get(self.anaphor_type)

    @property
    def markers(self) -> tuple[str, ...]:
        """Markers contributed to the context, var before r-mark."""
        if self.var is not None:
            return (self.var, self.r_mark)
        return (self.r_mark,)

    def r_number(self) -> str:
        if self.number is not None:
            return self.number
        if self.quantificational and self.determiner == "universal":
            return "plural"
        return "unspecified"


@dataclass(frozen=True)
class ArgStructure:
    slots: tuple[tuple[str, str], ...]
    order_kind: str = "linear"
    binding_base: Optional["ArgStructure"] = None

    @property
    def effective(self) -> "ArgStructure":
        """The structure binding is computed over (the base voice when given)."""
        return self.binding_base if self.binding_base is not None else self

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.slots)

    def tiers(self) -> tuple[int, ...]:
        """Obliqueness rank of each slot of the effective order."""
        eff = self.effective
        if eff.order_kind == "subject-only":
            return tuple(0 if i == 0 else 1 for i in range(len(eff.slots)))
        return tuple(range(len(eff.slots)))


@dataclass(frozen=True)
class LangParams:
    name: str = "english"
    locality_mode: str = "immediate"
    reshuffle: bool = False


BUILTIN_LANGS = {
    "english": LangParams("english", "immediate", False),
    "german": LangParams("german", "immediate", True),
    "portuguese": LangParams("portuguese", "immediate", True),
    "icelandic": LangParams("icelandic", "first-indicative", False),
    "greek": LangParams("greek", "immediate", False),
    "norwegian": LangParams("norwegian", "immediate", False),
    "toba-batak": LangParams("toba-batak", "immediate", False),
}


@dataclass(frozen=True)
class Node:
    id: str
    category: str
    daughters: tuple[str, ...] = ()
    head: Optional[str] = None
    np: Optional[NPInfo] = None
    predicator: Optional[ArgStructure] = None
    finiteness: Optional[str] = None
    mood: Optional[str] = None
    spec_daughter: Optional[str] = None
    # trace nodes point at the displaced filler NP
    filler: Optional[str] = None
    # context markers, only on the ctx node
    markers: tuple[str, ...] = ()
    label: Optional[str] = None


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    ids: tuple[str, ...] = ()

    def __str__(self):
        where = f" [{', '.join(self.ids)}]" if self.ids else ""
        return f"{self.code}: {self.message}{where}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Discourse:
    nodes: Mapping[str, Node]
    root: str = "discourse"
    context_numbers: Mapping[str, str] = field(default_factory=dict)

    def __getitem__(self, node_id: str) -> Node:
        return self.nodes[node_id]

    @cached_property
    def validation(self) -> ValidationReport:
        return _validate(self)

    @cached_property
    def index(self) -> "Index":
        require_valid(self)
        return Index(self)

    @cached_property
    def markers(self) -> dict[str, Marker]:
        table: dict[str, Marker] = {}
        for node in self.nodes.values():
            if node.category == "ctx":
                for m in node.markers:
                    table.setdefault(m, Marker(m, "context", self.context_numbers.get(m, "unspecified")))
            if node.np is not None:
                np = node.np
                table.setdefault(np.r_mark, Marker(np.r_mark, "r-mark", np.r_number(), node.id))
                if np.var is not None:
                    var_number = "singular" if np.determiner == "universal" else "unspecified"
                    table.setdefault(np.var, Marker(np.var, "var", var_number, node.id))
        return table


class Index:
    """Structural lookups over a validated discourse, computed once."""

    def __init__(self, d: Discourse):
        self.d = d
        nodes = d.nodes
        self.parent: dict[str, str] = {}
        for node in nodes.values():
            for dtr in node.daughters:
                self.parent[dtr] = node.id
        self.preorder: list[str] = list(_walk(d, d.root))
        self.position = {nid: i for i, nid in enumerate(self.preorder)}
        root = nodes[d.root]
        self.ctx = root.daughters[0]
        self.text = root.daughters[1:]
        self.np_nodes = [nid for nid in self.preorder if nodes[nid].np is not None]
        self.np_of_marker: dict[str, str] = {}
        for nid in self.np_nodes:
            for m in nodes[nid].np.markers:
                self.np_of_marker[m] = nid
        self.predicators = [nid for nid in self.preorder if nodes[nid].predicator is not None]
        # slot node -> (predicator owner, slot index)
        self.selector: dict[str, tuple[str, int]] = {}
        for owner in self.predicators:
            for i, nid in enumerate(nodes[owner].predicator.effective.nodes):
                self.selector[self.resolve(nid)] = (owner, i)
        # predicator owner -> the slot node it projects to
        self.projection: dict[str, str] = {}
        for slot in self.selector:
            p = self.pred_of(slot)
            if p is not None:
                self.projection[p] = slot

    def resolve(self, node_id: str) -> str:
        """Slots naming a trace stand for the trace's filler."""
        node = self.d.nodes[node_id]
        return node.filler if node.filler is not None else node_id

    def pred_of(self, node_id: str) -> Optional[str]:
        """Owner of the predicator reached by chasing head daughters."""
        seen = set()
        cur: Optional[str] = node_id
        while cur is not None and cur not in seen:
            seen.add(cur)
            node = self.d.nodes[cur]
            if node.predicator is not None:
                return cur
            cur = node.head
        return None

    def slot_nodes(self, owner: str) -> tuple[str, ...]:
        return tuple(self.resolve(n) for n in self.d.nodes[owner].predicator.effective.nodes)

    def slot_markers(self, node_id: str) -> tuple[str, ...]:
        node = self.d.nodes[self.resolve(node_id)]
        return node.np.markers if node.np is not None else ()

    def upstairs(self, owner: str) -> Optional[tuple[str, int]]:
        """(predicator, slot index) selecting the projection of ``owner``."""
        slot = self.projection.get(owner)
        if slot is None:
            return None
        return self.selector[slot]

    def chain_features(self, owner: str) -> tuple[Optional[str], Optional[str], bool]:
        """Finiteness, mood and nominal flag read off a predicator's projection chain."""
        chain = [owner]
        cur = owner
        while cur in self.parent and self.d.nodes[self.parent[cur]].head == cur:
            cur = self.parent[cur]
            chain.append(cur)
        slot = self.projection.get(owner)
        if slot is not None and slot not in chain:
            chain.append(slot)
        fin = mood = None
        nominal = False
        for nid in reversed(chain):
            node = self.d.nodes[nid]
            fin = fin or node.finiteness
            mood = mood or node.mood
            nominal = nominal or node.np is not None
        return fin, mood, nominal

    def sentence_of(self, node_id: str) -> str:
        cur = node_id
        while self.parent.get(cur) != self.d.root:
            cur = self.parent[cur]
        return cur


def _walk(d: Discourse, start: str) -> Iterator[str]:
    stack = [start]
    while stack:
        nid = stack.pop()
        yield nid
        stack.extend(reversed(d.nodes[nid].daughters))


def require_valid(d: Discourse) -> Discourse:
    if not d.validation.ok:
        raise InvalidDiscourse(d.validation)
    return d


def validate_discourse(d: Discourse) -> ValidationReport:
    """Check the structural invariants; the result is cached on ``d``."""
    return d.validation


def all_markers(d: Discourse) -> list[Marker]:
    """Context markers first, then NP markers in document order."""
    ix = d.index
    table = d.markers
    out = [table[m] for m in d.nodes[ix.ctx].markers]
    for nid in ix.np_nodes:
        out.extend(table[m] for m in d.nodes[nid].np.markers)
    return out


def _validate(d: Discourse) -> ValidationReport:
    out: list[Violation] = []
    nodes = d.nodes

    def bad(code, msg, *ids):
        out.append(Violation(code, msg, tuple(ids)))

    roots = [n.id for n in nodes.values() if n.category == "discourse"]
    if roots != [d.root] or d.root not in nodes:
        bad("root", "exactly one discourse node is required and it must be the root", *roots)
        return ValidationReport(tuple(out))

    parent: dict[str, str] = {}
    for node in nodes.values():
        for dtr in node.daughters:
            if dtr not in nodes:
                bad("dangling", f"daughter {dtr!r} of {node.id!r} does not exist", node.id, dtr)
            elif dtr in parent:
                bad("tree", f"node {dtr!r} has two mothers", dtr, parent[dtr], node.id)
            else:
                parent[dtr] = node.id
        for attr in ("head", "spec_daughter"):
            val = getattr(node, attr)
            if val is not None and val not in node.daughters:
                bad("dangling", f"{attr} {val!r} of {node.id!r} is not a daughter", node.id)
    if out:
        return ValidationReport(tuple(out))

    reachable = set(_walk_checked(d, d.root, bad))
    for nid in nodes:
        if nid not in reachable:
            bad("tree", f"node {nid!r} is not reachable from the root", nid)
    if out:
        return ValidationReport(tuple(out))

    root = nodes[d.root]
    ctxs = [n for n in root.daughters if nodes[n].category == "ctx"]
    if len(ctxs) != 1 or root.daughters[0] != ctxs[0]:
        bad("ctx", "the discourse root needs exactly one ctx daughter, in first position", d.root)
    texts = [n for n in root.daughters if nodes[n].category != "ctx"]
    if not texts:
        bad("empty Text", "the discourse has no sentences", d.root)
    for n in texts:
        if nodes[n].category != "sentence":
            bad("text", f"Text daughter {n!r} is not a sentence", n)
    for node in nodes.values():
        if node.category in ("discourse", "ctx") and node.id != d.root and node.id not in ctxs:
            bad("category", f"{node.category} node {node.id!r} out of place", node.id)
        if node.markers and node.category != "ctx":
            bad("markers", f"only the ctx node lists context markers", node.id)

    seen: dict[str, str] = {}
    for nid in _walk(d, d.root):
        node = nodes[nid]
        ids = list(node.markers)
        if node.np is not None:
            np = node.np
            ids.extend(np.markers)
            if (np.var is not None) != np.quantificational:
                bad("var", f"var present iff quantificational on NP {nid!r}", nid)
            if np.anaphor_type not in ANAPHOR_TYPES:
                bad("enum", f"unknown anaphor type {np.anaphor_type!r}", nid)
            if np.locality is not None and np.locality not in LOCALITY_MODES:
                bad("enum", f"unknown locality mode {np.locality!r}", nid)
            if np.quantificational and np.determiner == "universal" and np.r_number() != "plural":
                bad("number", f"universal NP {nid!r} needs a plural r-mark", nid)
        for m in ids:
            if m in seen:
                bad("duplicate marker", f"marker {m!r} introduced twice", m, seen[m], nid)
            else:
                seen[m] = nid
        if node.filler is not None:
            if node.filler not in nodes or nodes[node.filler].np is None:
                bad("dangling", f"trace {nid!r} has no NP filler {node.filler!r}", nid)
            elif node.daughters:
                bad("trace", f"trace {nid!r} has daughters", nid)

    if out:
        return ValidationReport(tuple(out))

    sentence = {}
    for t in texts:
        for nid in _walk(d, t):
            sentence[nid] = t
    selected: dict[str, str] = {}
    for node in nodes.values():
        a = node.predicator
        if a is None:
            continue
        if node.id not in sentence:
            bad("predicator", f"predicator {node.id!r} outside the Text", node.id)
            continue
        if a.order_kind not in ORDER_KINDS:
            bad("enum", f"unknown order kind {a.order_kind!r}", node.id)
        if a.binding_base is not None:
            if sorted(a.binding_base.nodes) != sorted(a.nodes):
                bad("binding base", f"binding base of {node.id!r} names other slots", node.id)
            if a.binding_base.order_kind not in ORDER_KINDS:
                bad("enum", f"unknown order kind {a.binding_base.order_kind!r}", node.id)
        ancestors = set()
        cur = node.id
        while cur in parent:
            cur = parent[cur]
            ancestors.add(cur)
        for slot, _label in a.slots:
            if slot not in nodes:
                bad("dangling", f"slot {slot!r} of {node.id!r} does not exist", node.id, slot)
                continue
            target = nodes[slot].filler or slot
            if slot in ancestors or target in ancestors or slot == node.id:
                bad("slot", f"slot {slot!r} dominates its predicator {node.id!r}", node.id, slot)
            elif sentence.get(slot) != sentence[node.id]:
                bad("slot", f"slot {slot!r} is outside the sentence of {node.id!r}", node.id, slot)
            elif target in selected:
                bad("slot", f"node {target!r} selected twice", target, selected[target], node.id)
            else:
                selected[target] = node.id
    if out:
        return ValidationReport(tuple(out))

    # a predicator may not (transitively) select its own projection
    ix = Index.__new__(Index)
    ix.d = d
    proj = {}
    for slot in selected:
        p = Index.pred_of(ix, slot)
        if p is not None:
            proj[p] = slot
    state: dict[str, int] = {}
    for start in proj:
        path = []
        cur = start
        while cur in proj and cur not in state:
            state[cur] = 1
            path.append(cur)
            cur = selected[proj[cur]]
        if state.get(cur) == 1:
            bad("cycle", f"predicator {cur!r} selects its own projection", cur)
        for p in path:
            state[p] = 2
    return ValidationReport(tuple(out))


def _walk_checked(d: Discourse, start: str, bad) -> Iterator[str]:
    stack, seen = [start], set()
    while stack:
        nid = stack.pop()
        if nid in seen:
            bad("cycle", f"cyclic daughter graph at {nid!r}", nid)
            continue
        seen.add(nid)
        yield nid
        stack.extend(reversed(d.nodes[nid].daughters))
