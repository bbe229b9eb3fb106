"""Finite directed graphs with a designated vertex subset S.

The pair (E, S) — a graph together with a set S of regular vertices — is the
basic object of the package: it determines a Cohn-Leavitt algebra in which
the full Cuntz-Krieger relation is imposed exactly at the vertices of S.

Everything here is immutable and id-based: vertices and edges are nonempty
strings without whitespace or any of ``| . ~``.  Multigraphs (parallel edges,
several loops at one vertex) are fully supported, which is why cycles are
stored as edge sequences, not vertex sequences.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import GraphFormatError, NonFiniteEnumeration, NotASubgraph

_ID_RE = re.compile(r"[^\s|.~]+")


def _check_id(kind: str, name) -> str:
    if not isinstance(name, str) or not _ID_RE.fullmatch(name):
        raise GraphFormatError(
            f"bad {kind} id {name!r}: ids are nonempty strings without "
            "whitespace or any of '|', '.', '~'"
        )
    return name


@dataclass(frozen=True)
class Graph:
    """A finite directed graph.  Edges are (id, source, range) triples."""

    vertices: frozenset
    edges: tuple

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple]):
        vs = frozenset(_check_id("vertex", v) for v in vertices)
        es = []
        seen = set()
        for eid, src, rng in edges:
            _check_id("edge", eid)
            if eid in seen:
                raise GraphFormatError(f"duplicate edge id {eid!r}")
            seen.add(eid)
            if src not in vs or rng not in vs:
                raise GraphFormatError(f"edge {eid!r} has undeclared endpoint")
            es.append((eid, src, rng))
        if vs & seen:
            raise GraphFormatError(f"ids used for both a vertex and an edge: {sorted(vs & seen)}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", tuple(sorted(es)))
        out: dict = {v: [] for v in vs}
        inn: dict = {v: [] for v in vs}
        by_id: dict = {}
        for e in self.edges:
            out[e[1]].append(e[0])
            inn[e[2]].append(e[0])
            by_id[e[0]] = e
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})
        object.__setattr__(self, "_in", {v: tuple(es) for v, es in inn.items()})
        object.__setattr__(self, "_by_id", by_id)

    # -- basic accessors ---------------------------------------------------

    def src(self, eid: str) -> str:
        return self._by_id[eid][1]

    def rng(self, eid: str) -> str:
        return self._by_id[eid][2]

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    def out_edges(self, v: str) -> tuple:
        """Edge ids emitted by v, sorted."""
        return self._out[v]

    def in_edges(self, v: str) -> tuple:
        return self._in[v]

    def edge_ids(self) -> tuple:
        return tuple(e[0] for e in self.edges)

    def sinks(self) -> tuple:
        return tuple(sorted(v for v in self.vertices if not self._out[v]))

    def regular_vertices(self) -> tuple:
        """Vertices emitting at least one edge (finiteness is automatic here)."""
        return tuple(sorted(v for v in self.vertices if self._out[v]))

    def bifurcations(self) -> tuple:
        return tuple(sorted(v for v in self.vertices if len(self._out[v]) >= 2))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.vertices <= other.vertices and set(self.edges) <= set(other.edges)

    # -- paths -------------------------------------------------------------

    def path_range(self, p: "Path") -> str:
        return self.rng(p.edges[-1]) if p.edges else p.source

    def path_vertices(self, p: "Path") -> tuple:
        """The vertex sequence s(e1), ..., s(ek), r(p) (just the source if trivial)."""
        return (p.source,) + tuple(self.rng(e) for e in p.edges)

    def compose(self, p: "Path", q: "Path") -> "Path":
        if self.path_range(p) != q.source:
            raise ValueError(f"paths do not compose: {p} then {q}")
        return Path(p.source, p.edges + q.edges)

    def make_path(self, edge_ids: Iterable[str]) -> "Path":
        ids = tuple(edge_ids)
        if not ids:
            raise ValueError("make_path needs at least one edge; use Path(v) for trivial paths")
        for a, b in zip(ids, ids[1:]):
            if self.rng(a) != self.src(b):
                raise ValueError(f"edges {a!r},{b!r} do not compose")
        return Path(self.src(ids[0]), ids)


@dataclass(frozen=True)
class Path:
    """A finite path: a source vertex plus a (possibly empty) edge sequence."""

    source: str
    edges: tuple = ()

    def __len__(self):
        return len(self.edges)

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    def sort_key(self):
        return (len(self.edges), self.edges, self.source)

    def __str__(self):
        return ".".join(self.edges) if self.edges else self.source


@dataclass(frozen=True)
class Cycle:
    """A cycle in canonical rotation: starts at its smallest vertex id."""

    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    def base(self, graph: Graph) -> str:
        """The canonical base vertex (the smallest vertex id on the cycle)."""
        return graph.src(self.edges[0])

    def vertex_set(self, graph: Graph) -> frozenset:
        return frozenset(graph.src(e) for e in self.edges)

    def as_path(self, graph: Graph) -> Path:
        return graph.make_path(self.edges)

    def __str__(self):
        return ".".join(self.edges)


def _canonical_rotation(graph: Graph, edges: tuple) -> Cycle:
    sources = [graph.src(e) for e in edges]
    k = sources.index(min(sources))
    return Cycle(edges[k:] + edges[:k])


def find_cycles(graph: Graph) -> tuple:
    """All cycles (closed paths with pairwise distinct sources), canonical order.

    Each cycle is anchored at its minimal vertex so every cycle is produced
    exactly once; parallel edges give distinct cycles.
    """
    cycles = []

    def walk(anchor: str, current: str, edges: tuple, visited: frozenset):
        for eid in graph.out_edges(current):
            nxt = graph.rng(eid)
            if nxt == anchor:
                cycles.append(Cycle(edges + (eid,)))
            elif nxt > anchor and nxt not in visited:
                walk(anchor, nxt, edges + (eid,), visited | {nxt})

    for v in sorted(graph.vertices):
        walk(v, v, (), frozenset({v}))
    return tuple(sorted(cycles, key=lambda c: (c.length, c.edges)))


@dataclass(frozen=True)
class GraphFacts:
    """Exhaustive structural record for a graph."""

    is_acyclic: bool
    is_no_exit: bool
    sinks: tuple
    bifurcations: tuple
    regular_vertices: tuple
    cycles: tuple


def predicates(graph: Graph) -> GraphFacts:
    cycles = find_cycles(graph)
    cycle_vertices = set()
    for c in cycles:
        cycle_vertices |= c.vertex_set(graph)
    bifs = graph.bifurcations()
    return GraphFacts(
        is_acyclic=not cycles,
        is_no_exit=not (cycle_vertices & set(bifs)),
        sinks=graph.sinks(),
        bifurcations=bifs,
        regular_vertices=graph.regular_vertices(),
        cycles=cycles,
    )


@dataclass(frozen=True)
class CLObject:
    """A graph together with a subset S of its regular vertices."""

    graph: Graph
    s_set: frozenset

    def __init__(self, graph: Graph, s_set: Iterable[str] = ()):
        ss = frozenset(s_set)
        regular = set(graph.regular_vertices())
        bad = ss - regular
        if bad:
            raise GraphFormatError(
                f"S contains vertices that are not regular (or not declared): {sorted(bad)}"
            )
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "s_set", ss)


def paths_into(
    graph: Graph, target: str, avoid_interior: Optional[frozenset] = None
) -> list:
    """All paths ending at ``target``, avoiding ``avoid_interior`` before the end.

    A vertex in ``avoid_interior`` may not be the source of any edge of the
    path; with ``avoid_interior = {target}`` (the default) this is exactly
    "the target occurs only as the final vertex".  The trivial path at the
    target is always included and the result is sorted by (length, edge ids).

    Raises :class:`NonFiniteEnumeration` if a cycle can reach the target
    without being cut by the avoid rule (the family would be infinite).
    """
    if target not in graph.vertices:
        raise GraphFormatError(f"unknown vertex {target!r}")
    avoid = frozenset({target}) if avoid_interior is None else frozenset(avoid_interior)
    out = [Path(target)]

    def back(front: str, edges: tuple, seen: frozenset):
        for eid in graph.in_edges(front):
            u = graph.src(eid)
            if u in avoid:
                continue
            if u in seen:
                raise NonFiniteEnumeration(
                    f"infinitely many paths into {target!r}: cycle through {u!r} "
                    "is not cut by the avoid rule"
                )
            p = Path(u, (eid,) + edges)
            out.append(p)
            back(u, p.edges, seen | {u})

    back(target, (), frozenset({target}))
    out.sort(key=Path.sort_key)
    return out


def is_complete_subobject(sub: CLObject, ambient: CLObject):
    """Check the all-or-nothing condition for (sub) inside (ambient).

    Returns ``(ok, violations)`` where violations name offending vertices.
    The condition: T is contained in S, and whenever a vertex v of S appears
    in the subgraph with at least one of its ambient out-edges, then *all*
    its ambient out-edges are present and v lies in T.
    """
    F, T = sub.graph, sub.s_set
    E, S = ambient.graph, ambient.s_set
    if not F.is_subgraph_of(E):
        raise NotASubgraph("candidate is not a subgraph of the ambient graph")
    violations = []
    if not T <= S:
        violations.extend(f"{v}: in T but not in S" for v in sorted(T - S))
    for v in sorted(S & F.vertices):
        ambient_out = set(E.out_edges(v))
        present = ambient_out & set(F.edge_ids())
        if present:
            if present != ambient_out:
                violations.append(
                    f"{v}: emits {sorted(ambient_out - present)} in the ambient "
                    "graph but not in the subgraph"
                )
            if v not in T:
                violations.append(f"{v}: emits edges in the subgraph but is not in T")
        elif v in T:
            violations.append(f"{v}: in T but emits no edge in the subgraph")
    return (not violations), violations


def complete(sub_graph: Graph, ambient: CLObject) -> CLObject:
    """Close a subgraph to the minimal complete subobject of the ambient object."""
    E, S = ambient.graph, ambient.s_set
    if not sub_graph.is_subgraph_of(E):
        raise NotASubgraph("candidate is not a subgraph of the ambient graph")
    vertices = set(sub_graph.vertices)
    edge_ids = set(sub_graph.edge_ids())
    changed = True
    while changed:
        changed = False
        for v in S & vertices:
            out = set(E.out_edges(v))
            if edge_ids & out and not out <= edge_ids:
                edge_ids |= out
                vertices |= {E.rng(e) for e in out}
                changed = True
    edges = [(e, E.src(e), E.rng(e)) for e in sorted(edge_ids)]
    F = Graph(vertices, edges)
    T = frozenset(v for v in S if set(E.out_edges(v)) & edge_ids)
    result = CLObject(F, T)
    ok, violations = is_complete_subobject(result, ambient)
    if not ok:  # pragma: no cover - closure is constructed to satisfy the check
        raise AssertionError(f"closure failed its own check: {violations}")
    return result


@dataclass(frozen=True)
class RelativeGraph:
    """The relative graph of (E, S) plus the bookkeeping of its new ids.

    For every regular vertex v outside S a fresh sink v' is added, and every
    edge e ranging at such a v acquires a parallel copy e' ranging at v'.
    ``primed_vertex`` / ``primed_edge`` map the original ids to the new ones.
    """

    graph: Graph
    primed_vertex: dict
    primed_edge: dict

    def leavitt_object(self) -> CLObject:
        """The relative graph with S = all regular vertices (full relations)."""
        return CLObject(self.graph, self.graph.regular_vertices())


def _fresh(name: str, taken: set) -> str:
    candidate = name + "'"
    while candidate in taken:
        candidate += "'"
    return candidate


def relative_graph(obj: CLObject) -> RelativeGraph:
    E, S = obj.graph, obj.s_set
    unprimed = set(E.regular_vertices()) - set(S)
    taken = set(E.vertices) | set(E.edge_ids())
    primed_vertex = {}
    for v in sorted(unprimed):
        primed_vertex[v] = _fresh(v, taken)
        taken.add(primed_vertex[v])
    primed_edge = {}
    edges = list(E.edges)
    for eid in sorted(E.edge_ids()):
        if E.rng(eid) in unprimed:
            primed_edge[eid] = _fresh(eid, taken)
            taken.add(primed_edge[eid])
            edges.append((primed_edge[eid], E.src(eid), primed_vertex[E.rng(eid)]))
    graph = Graph(set(E.vertices) | set(primed_vertex.values()), edges)
    return RelativeGraph(graph, primed_vertex, primed_edge)


@dataclass(frozen=True)
class SubobjectSystem:
    """All complete subobjects of a finite object, ordered by inclusion."""

    ambient: CLObject
    nodes: tuple          # CLObject, sorted deterministically
    top_index: int

    def leq(self, i: int, j: int) -> bool:
        a, b = self.nodes[i], self.nodes[j]
        return (
            a.graph.vertices <= b.graph.vertices
            and set(a.graph.edges) <= set(b.graph.edges)
            and a.s_set <= b.s_set
        )

    def covers(self) -> list:
        """Covering pairs (i, j) of the inclusion order (for DOT export)."""
        n = len(self.nodes)
        pairs = []
        for i in range(n):
            for j in range(n):
                if i != j and self.leq(i, j):
                    if not any(
                        k != i and k != j and self.leq(i, k) and self.leq(k, j)
                        for k in range(n)
                    ):
                        pairs.append((i, j))
        return pairs


def _closed_edge_sets(E: Graph, S: frozenset):
    """Edge subsets satisfying the all-or-nothing rule at S-vertices."""
    bundles = [tuple(E.out_edges(v)) for v in sorted(S)]
    bundled = {e for b in bundles for e in b}
    free = [e for e in E.edge_ids() if e not in bundled]
    for bundle_mask in range(1 << len(bundles)):
        chosen_bundles = [
            e for i, b in enumerate(bundles) if bundle_mask >> i & 1 for e in b
        ]
        for free_mask in range(1 << len(free)):
            chosen_free = [e for i, e in enumerate(free) if free_mask >> i & 1]
            yield frozenset(chosen_bundles) | frozenset(chosen_free)


def subobject_system(obj: CLObject) -> SubobjectSystem:
    """Enumerate every complete subobject (exponential; intended for small graphs)."""
    E, S = obj.graph, obj.s_set
    nodes = []
    all_vertices = sorted(E.vertices)
    for edge_ids in _closed_edge_sets(E, S):
        endpoints = set()
        for e in edge_ids:
            endpoints |= {E.src(e), E.rng(e)}
        optional = [v for v in all_vertices if v not in endpoints]
        for mask in range(1 << len(optional)):
            vs = endpoints | {v for i, v in enumerate(optional) if mask >> i & 1}
            F = Graph(vs, [(e, E.src(e), E.rng(e)) for e in sorted(edge_ids)])
            T = frozenset(v for v in S if set(E.out_edges(v)) & edge_ids)
            nodes.append(CLObject(F, T))
    nodes.sort(
        key=lambda o: (
            len(o.graph.vertices),
            len(o.graph.edges),
            tuple(sorted(o.graph.vertices)),
            o.graph.edges,
        )
    )
    top = next(
        i
        for i, o in enumerate(nodes)
        if o.graph.vertices == E.vertices and set(o.graph.edges) == set(E.edges)
    )
    return SubobjectSystem(obj, tuple(nodes), top)


# -- JSON interchange -------------------------------------------------------


def object_to_json(obj: CLObject) -> dict:
    return {
        "vertices": sorted(obj.graph.vertices),
        "edges": [
            {"id": e, "src": obj.graph.src(e), "rng": obj.graph.rng(e)}
            for e in sorted(obj.graph.edge_ids())
        ],
        "S": sorted(obj.s_set),
    }


def object_from_json(data) -> CLObject:
    if not isinstance(data, dict):
        raise GraphFormatError("graph JSON must be an object")
    try:
        vertices = data["vertices"]
        raw_edges = data.get("edges", [])
        s_set = data.get("S", [])
    except (TypeError, KeyError) as exc:
        raise GraphFormatError(f"graph JSON missing field: {exc}") from exc
    edges = []
    for e in raw_edges:
        try:
            edges.append((e["id"], e["src"], e["rng"]))
        except (TypeError, KeyError) as exc:
            raise GraphFormatError(f"edge record {e!r} missing field") from exc
    return CLObject(Graph(vertices, edges), s_set)


def load_object(path: str) -> CLObject:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: {exc}") from exc
    return object_from_json(data)


def system_to_dot(system: SubobjectSystem) -> str:
    """Write-only DOT rendering of the inclusion order of complete subobjects."""
    lines = ["digraph subobjects {", "  rankdir=BT;"]
    for i, node in enumerate(system.nodes):
        label = (
            "{" + ",".join(sorted(node.graph.vertices)) + "};"
            "{" + ",".join(node.graph.edge_ids()) + "};"
            "T={" + ",".join(sorted(node.s_set)) + "}"
        )
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in system.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
