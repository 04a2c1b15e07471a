"""The link graph G(S) and the simple random walk on it."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputError, KernelUndefinedError
from .groups import GeneratingSet, GroupElement, canonical_key, inverse, multiply, render


@dataclass(frozen=True)
class LinkGraph:
    """Finite simple undirected graph with labelled vertices."""

    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.labels) != len(self.adjacency):
            raise InputError("labels and adjacency have different lengths")
        for i, nbrs in enumerate(self.adjacency):
            if i in nbrs:
                raise InputError(f"self-loop at {self.labels[i]!r}")
            for j in nbrs:
                if i not in self.adjacency[j]:
                    raise InputError(f"adjacency not symmetric between {self.labels[i]!r} and {self.labels[j]!r}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` with ``i < j``, in vertex order."""
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  v{i} [label="{_escape(lab)}"];')
        for i, j in self.edges():
            lines.append(f"  v{i} -- v{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _graph_from_sets(labels: Sequence[str], nbrs: Sequence[set[int]]) -> LinkGraph:
    return LinkGraph(tuple(labels), tuple(tuple(sorted(s)) for s in nbrs))


def build_link_graph(S: GeneratingSet) -> LinkGraph:
    """Vertices are S in canonical order; s -- t iff s^-1 t is in S."""
    elems = S.elements
    nbrs: list[set[int]] = [set() for _ in elems]
    invs = [inverse(s) for s in elems]
    for i, s_inv in enumerate(invs):
        for j, t in enumerate(elems):
            if i != j and canonical_key(multiply(s_inv, t)) in S.key_index:
                nbrs[i].add(j)
    return _graph_from_sets([render(s) for s in elems], nbrs)


def build_listed_graph(
    S: GeneratingSet, listed: Sequence[GroupElement], names: Optional[Sequence[str]] = None
) -> LinkGraph:
    """G(S) with one vertex per *listed* element, repeats kept apart.

    A generator list may name the same element twice (in SL_2(Z),
    B^-1 = -B). Equal entries never become adjacent since s^-1 s = e is not
    in S; the edge rule is otherwise the one of :func:`build_link_graph`.
    """
    for a in listed:
        if a not in S:
            raise InputError(f"listed element {render(a)} is not in S")
    if names is None:
        rendered = [render(a) for a in listed]
        seen: dict[str, int] = {}
        names = []
        for r in rendered:
            seen[r] = seen.get(r, 0) + 1
            names.append(r if rendered.count(r) == 1 else f"{r}#{seen[r]}")
    elif len(names) != len(listed):
        raise InputError(f"{len(names)} names for {len(listed)} listed elements")
    nbrs: list[set[int]] = [set() for _ in listed]
    invs = [inverse(s) for s in listed]
    for i, s_inv in enumerate(invs):
        for j, t in enumerate(listed):
            if i != j and canonical_key(multiply(s_inv, t)) in S.key_index:
                nbrs[i].add(j)
    labels = [str(x) for x in names]
    if len(set(labels)) != len(labels):
        raise InputError("vertex names must be distinct")
    return _graph_from_sets(labels, nbrs)


def from_edge_list(labels: Sequence[str], edges: Iterable[Sequence[str]]) -> LinkGraph:
    labels = [str(lab) for lab in labels]
    index: dict[str, int] = {}
    for lab in labels:
        if lab in index:
            raise InputError(f"duplicate label {lab!r}")
        index[lab] = len(index)
    nbrs: list[set[int]] = [set() for _ in labels]
    for edge in edges:
        if len(edge) != 2:
            raise InputError(f"edge {edge!r} does not have two endpoints")
        a, b = edge
        for end in (a, b):
            if end not in index:
                raise InputError(f"edge {a!r} -- {b!r} uses unknown label {end!r}")
        i, j = index[a], index[b]
        if i == j:
            raise InputError(f"self-loop at {a!r}")
        if j in nbrs[i]:
            raise InputError(f"duplicate edge {a!r} -- {b!r}")
        nbrs[i].add(j)
        nbrs[j].add(i)
    return _graph_from_sets(labels, nbrs)


_DOT_NODE = re.compile(r'^\s*(\w+)\s*\[label="((?:[^"\\]|\\.)*)"\];\s*$')
_DOT_EDGE = re.compile(r"^\s*(\w+)\s*--\s*(\w+);\s*$")


def from_dot(text: str) -> LinkGraph:
    """Read back the DOT subset written by :meth:`LinkGraph.to_dot`."""
    ids: dict[str, str] = {}
    labels: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("graph ") or s == "}":
            continue
        if m := _DOT_NODE.match(line):
            lab = re.sub(r"\\(.)", r"\1", m.group(2))
            ids[m.group(1)] = lab
            labels.append(lab)
        elif m := _DOT_EDGE.match(line):
            try:
                edges.append((ids[m.group(1)], ids[m.group(2)]))
            except KeyError as exc:
                raise InputError(f"line {lineno}: undeclared node {exc.args[0]}") from None
        else:
            raise InputError(f"line {lineno}: unsupported DOT statement {s!r}")
    return from_edge_list(labels, edges)


def connected_components(g: LinkGraph) -> list[list[int]]:
    """Breadth-first partition, blocks ordered by smallest vertex."""
    seen = [False] * g.n
    blocks = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        block = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    block.append(w)
                    queue.append(w)
        blocks.append(sorted(block))
    return blocks


def is_connected(g: LinkGraph) -> bool:
    return len(connected_components(g)) == 1


@dataclass(frozen=True)
class WalkData:
    """Simple random walk mu(x, y) = 1/deg(x) on edges, with nu(x) = deg(x)."""

    graph: LinkGraph

    def mu(self, x: int, y: int) -> Fraction:
        if self.graph.has_edge(x, y):
            return Fraction(1, len(self.graph.adjacency[x]))
        return Fraction(0)

    def nu(self, x: int) -> int:
        return len(self.graph.adjacency[x])

    def kernel(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.graph.n
        return tuple(tuple(self.mu(x, y) for y in range(n)) for x in range(n))

    def stationary(self) -> tuple[int, ...]:
        return self.graph.degrees


def walk_data(g: LinkGraph) -> WalkData:
    isolated = [g.labels[i] for i, d in enumerate(g.degrees) if d == 0]
    if isolated:
        raise KernelUndefinedError(isolated)
    return WalkData(g)
