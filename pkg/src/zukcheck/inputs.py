"""Input documents: a JSON object describing either a group or a graph.

Group mode::

    {"name": "Z, S = {1,-1,2,-2}",
     "group": {"kind": "free_abelian", "rank": 1},
     "generators": [[1], [-1], [2], [-2]]}

``kind`` is ``free_abelian`` (``rank``), ``integer_matrix`` (``dim``,
optional ``det`` of 1 or -1) or ``cyclic`` (``modulus``). Optional keys:
``symmetrize`` (bool), ``vertices`` (``"set"`` or ``"listed"``), ``names``
(one per generator, used for listed vertices) and ``notes``.

Graph mode::

    {"graph": {"labels": ["a", "b"], "edges": [["a", "b"]]}}

A DOT file written by ``--emit-dot`` is also accepted as a graph document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import InputError
from .graph import LinkGraph, build_link_graph, build_listed_graph, from_dot, from_edge_list
from .groups import (
    CYCLIC,
    FREE_ABELIAN,
    INTEGER_MATRIX,
    STRICT,
    SYMMETRIZE,
    GroupDescriptor,
    GroupElement,
    make_generating_set,
)

GROUP = "group"
GRAPH = "graph"

_SIZE_KEY = {FREE_ABELIAN: "rank", INTEGER_MATRIX: "dim", CYCLIC: "modulus"}
_TOP_KEYS = {"name", "notes", "group", "generators", "names", "symmetrize", "vertices", "graph"}


@dataclass(frozen=True)
class InputSpec:
    mode: str
    name: str = ""
    notes: tuple[str, ...] = ()
    group: Optional[GroupDescriptor] = None
    generators: tuple[GroupElement, ...] = ()
    names: Optional[tuple[str, ...]] = None
    symmetrize: bool = False
    vertices: str = "set"
    labels: tuple[str, ...] = ()
    edges: tuple[tuple[str, str], ...] = field(default=())


def _fail(where: str, msg: str):
    raise InputError(f"{where}: {msg}")


def _int_field(obj: dict, key: str, where: str) -> int:
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        _fail(f"{where}.{key}", f"expected an integer, got {v!r}")
    return v


def _parse_group(obj) -> GroupDescriptor:
    if not isinstance(obj, dict):
        _fail("group", "expected an object")
    kind = obj.get("kind")
    if kind not in _SIZE_KEY:
        _fail("group.kind", f"unknown group kind {kind!r}; expected one of {sorted(_SIZE_KEY)}")
    extra = set(obj) - {"kind", _SIZE_KEY[kind], "det"}
    if extra:
        _fail("group", f"unexpected keys {sorted(extra)}")
    size = _int_field(obj, _SIZE_KEY[kind], "group")
    det = obj.get("det")
    if det is not None:
        det = _int_field(obj, "det", "group")
    try:
        return GroupDescriptor(kind, size, det)
    except InputError as exc:
        _fail("group", str(exc))


def _parse_notes(doc: dict) -> tuple[str, ...]:
    notes = doc.get("notes", [])
    if isinstance(notes, str):
        return (notes,)
    if not isinstance(notes, list) or not all(isinstance(s, str) for s in notes):
        _fail("notes", "expected a string or a list of strings")
    return tuple(notes)


def parse_input(text: Union[str, bytes]) -> InputSpec:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not UTF-8: {exc}") from None
    if text.lstrip().startswith("graph "):
        g = from_dot(text)
        edges = tuple((g.labels[i], g.labels[j]) for i, j in g.edges())
        return InputSpec(GRAPH, labels=g.labels, edges=edges)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: malformed document: {exc.msg}") from None
    if not isinstance(doc, dict):
        _fail("document", "expected a JSON object at top level")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        _fail("document", f"unknown keys {sorted(unknown)}")
    name = doc.get("name", "")
    if not isinstance(name, str):
        _fail("name", "expected a string")
    notes = _parse_notes(doc)
    has_group, has_graph = "group" in doc, "graph" in doc
    if has_group == has_graph:
        _fail("document", "exactly one of 'group' or 'graph' must be present")
    if has_graph:
        return _parse_graph(doc["graph"], name, notes)

    group = _parse_group(doc["group"])
    gens = doc.get("generators")
    if not isinstance(gens, list) or not gens:
        _fail("generators", "expected a non-empty array")
    elems = []
    for i, raw in enumerate(gens):
        try:
            elems.append(group.element(raw))
        except InputError as exc:
            _fail(f"generators[{i}]", str(exc))
    names = doc.get("names")
    if names is not None:
        if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
            _fail("names", "expected a list of strings")
        if len(names) != len(gens):
            _fail("names", f"{len(names)} names for {len(gens)} generators")
        if len(set(names)) != len(names):
            _fail("names", "names must be distinct")
        names = tuple(names)
    symmetrize = doc.get("symmetrize", False)
    if not isinstance(symmetrize, bool):
        _fail("symmetrize", "expected true or false")
    vertices = doc.get("vertices", "set")
    if vertices not in ("set", "listed"):
        _fail("vertices", f"expected 'set' or 'listed', got {vertices!r}")
    return InputSpec(
        GROUP,
        name=name,
        notes=notes,
        group=group,
        generators=tuple(elems),
        names=names,
        symmetrize=symmetrize,
        vertices=vertices,
    )


def _parse_graph(obj, name: str, notes: tuple[str, ...]) -> InputSpec:
    if not isinstance(obj, dict) or set(obj) != {"labels", "edges"}:
        _fail("graph", "expected an object with exactly 'labels' and 'edges'")
    labels = obj["labels"]
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        _fail("graph.labels", "expected a list of strings")
    seen = set()
    for i, lab in enumerate(labels):
        if lab in seen:
            _fail(f"graph.labels[{i}]", f"duplicate label {lab!r}")
        seen.add(lab)
    edges = obj["edges"]
    if not isinstance(edges, list):
        _fail("graph.edges", "expected a list of label pairs")
    out = []
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(s, str) for s in e):
            _fail(f"graph.edges[{i}]", f"expected a pair of labels, got {e!r}")
        out.append((e[0], e[1]))
    return InputSpec(GRAPH, name=name, notes=notes, labels=tuple(labels), edges=tuple(out))


def build_graph(spec: InputSpec, symmetrize: bool = False) -> LinkGraph:
    """Turn a parsed document into the graph to analyse."""
    if spec.mode == GRAPH:
        return from_edge_list(spec.labels, spec.edges)
    policy = SYMMETRIZE if (symmetrize or spec.symmetrize) else STRICT
    S = make_generating_set(spec.group, spec.generators, policy)
    if spec.vertices == "listed":
        if policy == SYMMETRIZE and len(S) != len({e for e in spec.generators}):
            raise InputError("listed vertices cannot be combined with symmetrize when inverses are missing")
        return build_listed_graph(S, spec.generators, spec.names)
    return build_link_graph(S)
