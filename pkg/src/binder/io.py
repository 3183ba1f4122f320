"""JSON document schema: parsing with positioned errors, and serialization.

A document looks like::

    {"binder-schema": 1,
     "id": "appendix",
     "lang": "english",
     "context": ["415"],
     "sentences": [{"id": "s1", "children": [...]}],
     "links": [{"anaphor": "24", "antecedents": ["415"], "type": "coreference"}],
     "expected": {...}}

Tree nodes use the keys ``id``, ``cat``, ``children``, ``head``, ``spec``,
``np``, ``arg-st``, ``filler``, ``finiteness``, ``mood`` and ``word``.
"""
from __future__ import annotations

import json
import json.decoder
import json.scanner
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .model import (ANAPHOR_TYPES, BUILTIN_LANGS, CATEGORIES, DETERMINERS, FINITENESS,
                    LOCALITY_MODES, MOODS, NUMBERS, ORDER_KINDS, ArgStructure, BinderError,
                    Discourse, LangParams, Node, NPInfo)
from .transitivity import LINK_TYPES, AnaphoricLink

SCHEMA_VERSION = 1
FILTERS = ("number",)


class DocumentError(BinderError):
    def __init__(self, code: str, message: str, line: Optional[int] = None,
                 col: Optional[int] = None, key: Optional[str] = None, path: str = ""):
        self.code, self.line, self.col, self.key, self.path = code, line, col, key, path
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{code}: {where}{message}")

    def as_dict(self) -> dict:
        return {"code": self.code, "message": str(self), "line": self.line,
                "col": self.col, "key": self.key, "path": self.path}


@dataclass(frozen=True)
class Document:
    id: str
    lang: LangParams
    discourse: Discourse
    cite: Optional[str] = None
    links: tuple[AnaphoricLink, ...] = ()
    expected: Optional[dict] = None
    filters: tuple[str, ...] = ()
    source: Optional[str] = field(default=None, compare=False)


# -- positioned JSON ---------------------------------------------------------

class _Obj(dict):
    pos = 0


class _List(list):
    pos = 0


def _decoder(text: str) -> json.JSONDecoder:
    dec = json.JSONDecoder(object_pairs_hook=_pairs)

    def parse_object(s_and_end, *args):
        obj, end = json.decoder.JSONObject(s_and_end, *args)
        obj.pos = s_and_end[1] - 1
        return obj, end

    def parse_array(s_and_end, scan_once):
        arr, end = json.decoder.JSONArray(s_and_end, scan_once)
        arr = _List(arr)
        arr.pos = s_and_end[1] - 1
        return arr, end

    dec.parse_object = parse_object
    dec.parse_array = parse_array
    dec.scan_once = json.scanner.py_make_scanner(dec)
    return dec


def _pairs(pairs):
    obj = _Obj()
    for k, v in pairs:
        if k in obj:
            raise _DupKey(k)
        obj[k] = v
    return obj


class _DupKey(Exception):
    pass


def _linecol(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Reader:
    """Schema checks over the decoded tree, with positions for every error."""

    def __init__(self, text: str):
        self.text = text

    def fail(self, code, msg, where=None, key=None, path=""):
        line = col = None
        if where is not None and hasattr(where, "pos"):
            line, col = _linecol(self.text, where.pos)
        raise DocumentError(code, msg, line, col, key, path)

    def obj(self, v, path, where=None):
        if not isinstance(v, dict):
            self.fail("E-TYPE", f"{path or 'document'} must be an object", where or v, path=path)
        return v

    def get(self, o, key, typ, path, required=False, default=None):
        if key not in o:
            if required:
                self.fail("E-MISSING", f"missing key {key!r} at {path or 'top level'}", o, key, path)
            return default
        v = o[key]
        if typ is not None and not isinstance(v, typ) or (typ is int and isinstance(v, bool)):
            self.fail("E-TYPE", f"key {key!r} at {path or 'top level'} has the wrong type", o, key, path)
        return v

    def enum(self, o, key, choices, path, default=None, required=False):
        v = self.get(o, key, str, path, required, default)
        if v is not None and v not in choices:
            self.fail("E-ENUM", f"{v!r} is not one of {', '.join(choices)}", o, v, path)
        return v

    def known(self, o, allowed, path):
        for k in o:
            if k not in allowed:
                self.fail("E-SCHEMA", f"unknown key {k!r} at {path or 'top level'}", o, k, path)


_NODE_KEYS = {"id", "cat", "children", "head", "spec", "np", "arg-st", "filler",
              "finiteness", "mood", "word"}
_NP_KEYS = {"type", "r-mark", "var", "quantificational", "number", "determiner",
            "locality", "reshuffle"}
_ARG_KEYS = {"slots", "order", "binding-base"}
_TOP_KEYS = {"binder-schema", "id", "cite", "lang", "context", "sentences", "links",
             "expected", "filters", "note"}


def _arg_st(r: _Reader, o, path) -> ArgStructure:
    r.obj(o, path)
    r.known(o, _ARG_KEYS, path)
    slots = r.get(o, "slots", list, path, required=True)
    out = []
    for k, s in enumerate(slots):
        if (not isinstance(s, list) or len(s) != 2 or not all(isinstance(x, str) for x in s)):
            r.fail("E-TYPE", f"slot {k} at {path} must be [node-id, label]", slots, path=path)
        out.append((s[0], s[1]))
    order = r.enum(o, "order", ORDER_KINDS, path, "linear")
    base = None
    if "binding-base" in o:
        base = _arg_st(r, o["binding-base"], path + ".binding-base")
    return ArgStructure(tuple(out), order, base)


def _np(r: _Reader, o, path) -> NPInfo:
    r.obj(o, path)
    r.known(o, _NP_KEYS, path)
    typ = r.enum(o, "type", ANAPHOR_TYPES, path, required=True)
    rm = r.get(o, "r-mark", str, path, required=True)
    var = r.get(o, "var", str, path)
    quant = r.get(o, "quantificational", bool, path, default=var is not None)
    num = r.enum(o, "number", NUMBERS, path)
    det = r.enum(o, "determiner", DETERMINERS, path, "universal")
    loc = r.enum(o, "locality", LOCALITY_MODES, path)
    resh = r.get(o, "reshuffle", bool, path)
    return NPInfo(typ, rm, var, quant, num, det, loc, resh)


def _lang(r: _Reader, v, path="lang", where=None) -> LangParams:
    if isinstance(v, str):
        if v not in BUILTIN_LANGS:
            r.fail("E-ENUM", f"{v!r} is not a known language ({', '.join(BUILTIN_LANGS)})", where, v, path)
        return BUILTIN_LANGS[v]
    r.obj(v, path)
    r.known(v, {"name", "locality", "reshuffle"}, path)
    name = r.get(v, "name", str, path, default="custom")
    base = BUILTIN_LANGS.get(name, LangParams(name))
    loc = r.enum(v, "locality", LOCALITY_MODES, path, base.locality_mode)
    resh = r.get(v, "reshuffle", bool, path, default=base.reshuffle)
    return LangParams(name, loc, resh)


def _tree(r: _Reader, sentences, ctx_id: str) -> dict[str, Node]:
    """Node table from the nested sentence trees (iterative)."""
    raw: dict[str, tuple] = {}
    counter = 0
    stack = [(s, f"sentences[{k}]", True) for k, s in reversed(list(enumerate(sentences)))]
    top_ids = []
    kids_of: dict[int, list[str]] = {}
    order = []
    while stack:
        o, path, top = stack.pop()
        r.obj(o, path)
        r.known(o, _NODE_KEYS, path)
        nid = r.get(o, "id", str, path)
        if nid is None:
            counter += 1
            nid = f"_n{counter}"
        if nid in raw or nid == ctx_id or nid == "discourse":
            r.fail("E-DUP", f"node id {nid!r} used twice", o, nid, path)
        children = r.get(o, "children", list, path, default=[])
        default_cat = "sentence" if top else ("phrase" if children else "word")
        cat = r.enum(o, "cat", CATEGORIES, path, default_cat)
        raw[nid] = (o, path, cat)
        order.append(nid)
        if top:
            top_ids.append(nid)
        child_ids = []
        for k, c in enumerate(children):
            r.obj(c, f"{path}.children[{k}]", children)
            cid = c.get("id")
            if cid is None:
                counter += 1
                cid = f"_n{counter}"
                c["id"] = cid
            child_ids.append(cid)
        kids_of[id(o)] = child_ids
        for k, c in reversed(list(enumerate(children))):
            stack.append((c, f"{path}.children[{k}]", False))

    nodes = {}
    for nid in order:
        o, path, cat = raw[nid]
        kids = tuple(kids_of[id(o)])
        head = r.get(o, "head", str, path)
        spec = r.get(o, "spec", str, path)
        for what, val in (("head", head), ("spec", spec)):
            if val is not None and val not in kids:
                r.fail("E-REF", f"{what} {val!r} of {nid!r} is not one of its children", o, val, path)
        np = _np(r, o["np"], path + ".np") if "np" in o else None
        pred = _arg_st(r, o["arg-st"], path + ".arg-st") if "arg-st" in o else None
        nodes[nid] = Node(
            id=nid, category=cat, daughters=kids, head=head, np=np, predicator=pred,
            finiteness=r.enum(o, "finiteness", FINITENESS, path),
            mood=r.enum(o, "mood", MOODS, path),
            spec_daughter=spec, filler=r.get(o, "filler", str, path),
            label=r.get(o, "word", str, path),
        )
    for nid, node in nodes.items():
        o, path, _ = raw[nid]
        refs = [s for s, _ in node.predicator.slots] if node.predicator else []
        if node.filler is not None:
            refs.append(node.filler)
        for ref in refs:
            if ref not in nodes:
                r.fail("E-REF", f"{ref!r} named by {nid!r} is not a node", o, ref, path)
    return nodes, top_ids


def _links(r: _Reader, v, path="links") -> tuple[AnaphoricLink, ...]:
    if not isinstance(v, list):
        r.fail("E-TYPE", "links must be a list", None, path=path)
    out = []
    for k, o in enumerate(v):
        p = f"{path}[{k}]"
        r.obj(o, p, v)
        r.known(o, {"anaphor", "antecedents", "antecedent", "type"}, p)
        an = r.get(o, "anaphor", str, p, required=True)
        typ = r.enum(o, "type", LINK_TYPES, p, "coreference")
        if "antecedent" in o:
            ants = [r.get(o, "antecedent", str, p)]
        else:
            ants = r.get(o, "antecedents", list, p, required=True)
        if not all(isinstance(a, str) for a in ants):
            r.fail("E-TYPE", "antecedents must be marker ids", o, path=p)
        try:
            out.append(AnaphoricLink(an, tuple(ants), typ))
        except ValueError as e:
            r.fail("E-SCHEMA", str(e), o, path=p)
    return tuple(out)


def _expected_refs(r: _Reader, exp, markers: set, nodes: set):
    """Every marker named in an expected block must be declared."""
    def check(m, where, path):
        if not isinstance(m, str) or m not in markers:
            r.fail("E-REF", f"expected block names undeclared marker {m!r}", where, str(m), path)

    r.obj(exp, "expected")
    r.known(exp, {"antec", "candidates", "domain", "exempt", "reshuffled", "ocommand", "lists", "judgments",
                  "violations", "principles"}, "expected")
    for key in ("antec", "candidates"):
        for m, ants in exp.get(key, {}).items():
            check(m, exp[key], f"expected.{key}")
            for a in ants:
                check(a, exp[key], f"expected.{key}")
    for key in ("exempt", "reshuffled", "domain"):
        for m in exp.get(key, {}):
            check(m, exp[key], f"expected.{key}")
    for k, f in enumerate(exp.get("ocommand", [])):
        if not isinstance(f, list) or len(f) != 3:
            r.fail("E-TYPE", "ocommand facts are [x, y, bool]", exp["ocommand"], path="expected.ocommand")
        check(f[0], f, "expected.ocommand")
        check(f[1], f, "expected.ocommand")
    for nid in exp.get("lists", {}):
        if nid not in nodes:
            r.fail("E-REF", f"expected lists name unknown node {nid!r}", exp["lists"], nid, "expected.lists")
    for k, j in enumerate(exp.get("judgments", [])):
        p = f"expected.judgments[{k}]"
        r.obj(j, p, exp["judgments"])
        r.known(j, {"links", "anaphor", "antecedent", "antecedents", "type", "ok",
                    "violations", "note"}, p)
        r.get(j, "ok", bool, p, required=True)
        links = _judgment_links(r, j, p)
        for link in links:
            for m in (link.anaphor, *link.antecedents):
                check(m, j, p)


def _judgment_links(r: _Reader, j, path) -> tuple[AnaphoricLink, ...]:
    if "links" in j:
        return _links(r, j["links"], path + ".links")
    single = {k: j[k] for k in ("anaphor", "antecedent", "antecedents", "type") if k in j}
    return _links(r, _List([_Obj(single)]), path)


def judgment_links(j: dict) -> tuple[AnaphoricLink, ...]:
    return _judgment_links(_Reader(""), j, "judgment")


def parse_text(text: str, source: Optional[str] = None) -> Document:
    if not text.strip():
        raise DocumentError("E-EMPTY", "the document is empty")
    try:
        raw = _decoder(text).decode(text)
    except _DupKey as e:
        raise DocumentError("E-DUP", f"duplicate key {e.args[0]!r}", key=e.args[0]) from None
    except json.JSONDecodeError as e:
        raise DocumentError("E-JSON", e.msg, e.lineno, e.colno) from None
    except RecursionError:
        raise DocumentError("E-JSON", "nesting too deep") from None
    r = _Reader(text)
    r.obj(raw, "")
    r.known(raw, _TOP_KEYS, "")
    version = r.get(raw, "binder-schema", int, "", required=True)
    if version != SCHEMA_VERSION:
        r.fail("E-SCHEMA", f"unsupported binder-schema {version}", raw, "binder-schema")
    doc_id = r.get(raw, "id", str, "", default=Path(source).stem if source else "document")
    lang = _lang(r, raw.get("lang", "english"), where=raw)
    ctx_markers, numbers = [], {}
    for k, c in enumerate(r.get(raw, "context", list, "", default=[])):
        if isinstance(c, str):
            ctx_markers.append(c)
        else:
            r.obj(c, f"context[{k}]", raw["context"])
            r.known(c, {"id", "number"}, f"context[{k}]")
            ctx_markers.append(r.get(c, "id", str, f"context[{k}]", required=True))
            num = r.enum(c, "number", NUMBERS, f"context[{k}]")
            if num is not None:
                numbers[ctx_markers[-1]] = num
    sentences = r.get(raw, "sentences", list, "", required=True)
    nodes, tops = _tree(r, sentences, "ctx")
    nodes["ctx"] = Node("ctx", "ctx", markers=tuple(ctx_markers))
    nodes["discourse"] = Node("discourse", "discourse", daughters=("ctx", *tops))
    d = Discourse(nodes, "discourse", numbers)
    if not d.validation.ok:
        v = d.validation.violations[0]
        code = "E-DUP" if v.code == "duplicate marker" else "E-SCHEMA"
        where = None
        for nid in v.ids:
            if nid in nodes and nid not in ("ctx", "discourse"):
                where = _find_raw(sentences, nid)
                break
        r.fail(code, str(v), where, v.ids[0] if v.ids else None)
    links = _links(r, raw["links"]) if "links" in raw else ()
    for link in links:
        for m in (link.anaphor, *link.antecedents):
            if m not in d.markers:
                r.fail("E-REF", f"link names undeclared marker {m!r}", raw["links"], m, "links")
    expected = raw.get("expected")
    if expected is not None:
        _expected_refs(r, expected, set(d.markers), set(nodes))
    filters = r.get(raw, "filters", list, "", default=[])
    for f in filters:
        if f not in FILTERS:
            r.fail("E-ENUM", f"{f!r} is not a known filter", raw["filters"], str(f), "filters")
    return Document(doc_id, lang, d, r.get(raw, "cite", str, ""), links,
                    _plain(expected) if expected is not None else None, tuple(filters), source)


def _find_raw(sentences, nid):
    stack = list(sentences)
    while stack:
        o = stack.pop()
        if isinstance(o, dict):
            if o.get("id") == nid:
                return o
            stack.extend(o.get("children", []))
    return None


def _plain(v):
    """Strip the position-carrying containers (iteratively)."""
    if not isinstance(v, (dict, list)):
        return v
    root = {} if isinstance(v, dict) else []
    stack = [(v, root)]
    while stack:
        src, dst = stack.pop()
        items = src.items() if isinstance(src, dict) else enumerate(src)
        for k, x in items:
            if isinstance(x, (dict, list)):
                y = {} if isinstance(x, dict) else []
                stack.append((x, y))
            else:
                y = x
            if isinstance(dst, dict):
                dst[k] = y
            else:
                dst.append(y)
    return root


def parse_document(path) -> Document:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as e:
        raise DocumentError("E-IO", f"cannot read {p}: {e.strerror}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise DocumentError("E-UTF8", f"invalid UTF-8 at byte {e.start}") from None
    return parse_text(text, str(p))


# -- serialization -----------------------------------------------------------

def _np_dict(np: NPInfo) -> dict:
    o: dict[str, Any] = {"type": np.anaphor_type, "r-mark": np.r_mark}
    if np.var is not None:
        o["var"] = np.var
    o["quantificational"] = np.quantificational
    if np.number is not None:
        o["number"] = np.number
    o["determiner"] = np.determiner
    if np.locality is not None:
        o["locality"] = np.locality
    if np.reshuffle is not None:
        o["reshuffle"] = np.reshuffle
    return o


def _arg_dict(a: ArgStructure) -> dict:
    o: dict[str, Any] = {"slots": [[n, lab] for n, lab in a.slots], "order": a.order_kind}
    if a.binding_base is not None:
        o["binding-base"] = _arg_dict(a.binding_base)
    return o


def _node_dict(node: Node) -> dict:
    o: dict[str, Any] = {"id": node.id, "cat": node.category}
    if node.label is not None:
        o["word"] = node.label
    for key, val in (("head", node.head), ("spec", node.spec_daughter), ("filler", node.filler),
                     ("finiteness", node.finiteness), ("mood", node.mood)):
        if val is not None:
            o[key] = val
    if node.np is not None:
        o["np"] = _np_dict(node.np)
    if node.predicator is not None:
        o["arg-st"] = _arg_dict(node.predicator)
    return o


def lang_dict(p: LangParams):
    if BUILTIN_LANGS.get(p.name) == p:
        return p.name
    return {"name": p.name, "locality": p.locality_mode, "reshuffle": p.reshuffle}


def to_dict(doc: Document) -> dict:
    d = doc.discourse
    nodes = d.nodes
    root = nodes[d.root]
    ctx = nodes[root.daughters[0]]
    sentences = []
    for top in root.daughters[1:]:
        first = _node_dict(nodes[top])
        sentences.append(first)
        stack = [(top, first)]
        while stack:
            nid, o = stack.pop()
            kids = nodes[nid].daughters
            if kids:
                o["children"] = [_node_dict(nodes[c]) for c in kids]
                stack.extend(zip(kids, o["children"]))
    out: dict[str, Any] = {"binder-schema": SCHEMA_VERSION, "id": doc.id}
    if doc.cite is not None:
        out["cite"] = doc.cite
    out["lang"] = lang_dict(doc.lang)
    out["context"] = [{"id": m, "number": d.context_numbers[m]} if m in d.context_numbers else m
                      for m in ctx.markers]
    out["sentences"] = sentences
    if doc.links:
        out["links"] = [{"anaphor": l.anaphor, "antecedents": list(l.antecedents), "type": l.type}
                        for l in doc.links]
    if doc.filters:
        out["filters"] = list(doc.filters)
    if doc.expected is not None:
        out["expected"] = doc.expected
    return out


def serialize(doc: Document, indent: Optional[int] = 1) -> str:
    try:
        return json.dumps(to_dict(doc), indent=indent, ensure_ascii=False)
    except RecursionError:
        # the stdlib encoder recurses; the reader has the same limit
        raise DocumentError("E-JSON", "nesting too deep to encode") from None
