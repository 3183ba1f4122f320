"""Generated discourses for property checks and scaling runs.

Everything here builds :class:`Discourse` objects directly rather than going
through JSON, so arbitrarily deep embeddings are cheap.
"""
from __future__ import annotations

from dataclasses import replace
from typing import Optional

import numpy as np

from .model import ANAPHOR_TYPES, ArgStructure, Discourse, NPInfo, Node

BINDING_TYPES = ANAPHOR_TYPES[:4]


class _Builder:
    def __init__(self):
        self.nodes: dict[str, Node] = {}
        self.n = 0

    def fresh(self, prefix: str) -> str:
        self.n += 1
        return f"{prefix}{self.n}"

    def add(self, node: Node) -> str:
        self.nodes[node.id] = node
        return node.id

    def finish(self, sentences: list[str], context: tuple[str, ...] = ()) -> Discourse:
        self.add(Node("ctx", "ctx", markers=context))
        self.add(Node("discourse", "discourse", daughters=("ctx", *sentences)))
        return Discourse(dict(self.nodes))


def chain(n: int, types: tuple[str, ...] = BINDING_TYPES) -> Discourse:
    """A right-branching chain of clauses holding ``n`` anaphoric NPs.

    Each clause has a subject, an object and (except the last) a clausal
    complement; anaphor types cycle through ``types``.
    """
    if n < 1:
        raise ValueError("a chain needs at least one NP")
    b = _Builder()
    nps = [b.add(Node(f"np{i}", "phrase", np=NPInfo(types[i % len(types)], f"m{i}")))
           for i in range(n)]
    # build innermost first so each clause can point at its complement
    groups = [nps[i:i + 2] for i in range(0, n, 2)]
    below: Optional[str] = None
    for k in range(len(groups) - 1, -1, -1):
        args = list(groups[k])
        verb = b.fresh("v")
        slots = [(a, "arg") for a in args] + ([(below, "comp")] if below else [])
        b.add(Node(verb, "word", predicator=ArgStructure(tuple(slots))))
        cat = "sentence" if k == 0 else "phrase"
        daughters = (args[0], verb, *args[1:], *((below,) if below else ()))
        below = b.add(Node(f"c{k}", cat, daughters=daughters, head=verb, finiteness="finite"))
    return b.finish([below])


class RandomDiscourse:
    """Seeded generator of small, valid, structurally varied discourses."""

    def __init__(self, seed: int = 0, max_clauses: int = 4, max_nps: int = 10):
        self.rng = np.random.default_rng(seed)
        self.max_clauses = max_clauses
        self.max_nps = max_nps

    def _chance(self, p: float) -> bool:
        return bool(self.rng.random() < p)

    def _pick(self, seq):
        return seq[int(self.rng.integers(len(seq)))]

    def __iter__(self):
        while True:
            yield self.generate()

    def generate(self) -> Discourse:
        self.b = _Builder()
        self.clauses_left = int(self.rng.integers(1, self.max_clauses + 1))
        self.nps_left = self.max_nps
        sentences = []
        while self.clauses_left > 0 and self.nps_left > 1 and (not sentences or len(sentences) < 2):
            self.clauses_left -= 1
            sentences.append(self._clause(top=True))
        context = tuple(f"x{i}" for i in range(int(self.rng.integers(0, 3))))
        return self.b.finish(sentences, context)

    def _np(self, selectable: bool = True) -> str:
        """An NP, possibly possessive, quantificational or relativised."""
        b = self.b
        self.nps_left -= 1
        nid = b.fresh("n")
        t = self._pick(ANAPHOR_TYPES) if self._chance(0.1) else self._pick(BINDING_TYPES)
        quant = t in ("non-pronoun", "none") and self._chance(0.2)
        number = self._pick(("singular", "plural", None))
        if quant:
            number = "plural"
        info = NPInfo(t, nid, var=nid + "v" if quant else None, quantificational=quant, number=number)
        daughters: list[str] = []
        head = spec = None
        if self.nps_left >= 2 and self._chance(0.2):
            # [possessor's noun (of complement)]
            poss = self._np()
            noun = b.fresh("w")
            slots = [(poss, "poss")]
            daughters = [poss, noun]
            if self.nps_left >= 1 and self._chance(0.5):
                comp = self._np()
                slots.append((comp, "obl"))
                daughters.append(comp)
            b.add(Node(noun, "word", predicator=ArgStructure(tuple(slots))))
            head, spec = noun, poss
        elif self.nps_left >= 1 and self.clauses_left > 0 and self._chance(0.15):
            # noun with a relative clause whose subject is a gap
            self.clauses_left -= 1
            noun = b.add(Node(b.fresh("w"), "word"))
            daughters = [noun, self._clause(gap=True)]
            head = noun
        return b.add(Node(nid, "phrase", daughters=tuple(daughters), head=head, np=info, spec_daughter=spec))

    def _clause(self, top: bool = False, gap: bool = False) -> str:
        b = self.b
        cid = b.fresh("c")
        verb = b.fresh("v")
        if gap:
            subj = b.add(Node(b.fresh("g"), "word"))
        else:
            subj = self._np()
        args = [subj]
        for _ in range(int(self.rng.integers(0, 3))):
            if self.nps_left > 0:
                args.append(self._np())
        if self.clauses_left > 0 and self.nps_left > 0 and self._chance(0.6):
            self.clauses_left -= 1
            comp = self._clause()
            args.insert(int(self.rng.integers(1, len(args) + 1)), comp)
        slots = tuple((a, "arg") for a in args)
        order = "subject-only" if self._chance(0.2) else "linear"
        base = None
        if len(slots) > 1 and self._chance(0.15):
            perm = self.rng.permutation(len(slots))
            base = ArgStructure(tuple(slots[i] for i in perm))
        b.add(Node(verb, "word", predicator=ArgStructure(slots, order, base)))
        daughters = [subj, verb, *args[1:]]
        nps = [a for a in args[1:] if b.nodes[a].np is not None]
        if nps and self._chance(0.15):
            # front one NP, leaving a trace in its slot
            moved = self._pick(nps)
            trace = b.add(Node(b.fresh("t"), "word", filler=moved))
            daughters = [moved] + [trace if x == moved else x for x in daughters]
            slots = tuple((trace if s == moved else s, lab) for s, lab in slots)
            if base is not None:
                base = ArgStructure(tuple((trace if s == moved else s, lab) for s, lab in base.slots))
            b.add(Node(verb, "word", predicator=ArgStructure(slots, order, base)))
        fin = self._pick(("finite", "nonfinite", None))
        mood = self._pick(("indicative", "subjunctive", None)) if fin == "finite" else None
        return b.add(Node(cid, "sentence" if top else "phrase", daughters=tuple(daughters),
                          head=verb, finiteness=fin, mood=mood))


def random_discourses(count: int, seed: int = 0, **kw) -> list[Discourse]:
    gen = RandomDiscourse(seed, **kw)
    return [gen.generate() for _ in range(count)]


def with_anaphor_type(d: Discourse, node_id: str, anaphor_type: str) -> Discourse:
    """Copy of ``d`` with the NP at ``node_id`` recast as ``anaphor_type``."""
    node = d.nodes[node_id]
    if node.np is None:
        raise ValueError(f"{node_id!r} is not an NP")
    nodes = dict(d.nodes)
    nodes[node_id] = replace(node, np=replace(node.np, anaphor_type=anaphor_type))
    return replace(d, nodes=nodes)
