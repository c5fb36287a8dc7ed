"""Covers, multicovers, ticks, impressions and h-cables, with verifiers that name the failed clause.

A verifier never raises on a malformed structure; it returns a ``Verdict`` listing each
violated clause together with witness vertices.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional

from holebound.graph import Graph, VertexSet, iter_bits, mask_is_clique

CABLE_AXIOMS = ("C1", "C2", "C3", "C4", "C5")


class StructureError(ValueError):
    """Raised when a structure is unusable for the requested operation or cannot be decoded."""


class CableClassificationError(StructureError):
    """Raised when a pair of a verified cable satisfies neither alternative of the pair dichotomy."""


@contextlib.contextmanager
def _decoding(kind: str) -> Iterator[None]:
    try:
        yield
    except StructureError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise StructureError(f"invalid {kind} JSON: {e!r}") from e


# --- Verdicts --------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str
    witness: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"clause": self.clause, "message": self.message, "witness": list(self.witness)}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structure check; ``report`` maps axiom names to pass/fail where the check has axioms."""

    violations: tuple[Violation, ...] = ()
    report: tuple[tuple[str, bool], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def clauses(self) -> list[str]:
        return [v.clause for v in self.violations]

    def failed(self, clause: str) -> bool:
        return clause in self.clauses

    def to_json(self) -> dict:
        data: dict = {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}
        if self.report:
            data["report"] = {name: passed for name, passed in self.report}
        return data


class _Audit:
    def __init__(self) -> None:
        self.violations: list[Violation] = []

    def fail(self, clause: str, message: str, *witness: int) -> None:
        self.violations.append(Violation(clause, message, tuple(witness)))

    def count(self, clause: str) -> int:
        return sum(1 for v in self.violations if v.clause == clause)

    def verdict(self, axioms: Iterable[str] = ()) -> Verdict:
        report = tuple((name, self.count(name) == 0) for name in axioms)
        return Verdict(tuple(self.violations), report)


def _edge_between(adj: tuple[int, ...], a: int, b: int) -> Optional[tuple[int, int]]:
    for u in iter_bits(a):
        hit = adj[u] & b
        if hit:
            return u, (hit & -hit).bit_length() - 1
    return None


def _nonedge_between(adj: tuple[int, ...], a: int, b: int) -> Optional[tuple[int, int]]:
    for u in iter_bits(a):
        miss = b & ~adj[u]
        if miss:
            return u, (miss & -miss).bit_length() - 1
    return None


def _uncovered(adj: tuple[int, ...], by: int, target: int) -> Optional[int]:
    for v in iter_bits(target):
        if not adj[v] & by:
            return v
    return None


def _out_of_range(graph: Graph, vertices: Iterable[int]) -> Optional[int]:
    for v in vertices:
        if not 0 <= v < graph.n:
            return v
    return None


def _vertex_set_json(data: Iterable[int]) -> VertexSet:
    return VertexSet.of(int(v) for v in data)


# --- Covers and multicovers ------------------------------------------------------


@dataclass(frozen=True)
class Cover:
    x: int
    N: VertexSet
    C: VertexSet

    def to_json(self) -> dict:
        return {"x": self.x, "N": self.N.to_json(), "C": self.C.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> Cover:
        with _decoding("cover"):
            return cls(x=int(data["x"]), N=_vertex_set_json(data["N"]), C=_vertex_set_json(data["C"]))


def _check_cover(audit: _Audit, adj: tuple[int, ...], x: int, n_mask: int, c_mask: int) -> None:
    if n_mask >> x & 1:
        audit.fail("N-neighbours", f"x={x} lies in its own N", x)
    missing = n_mask & ~adj[x] & ~(1 << x)
    if missing:
        v = (missing & -missing).bit_length() - 1
        audit.fail("N-neighbours", f"{v} in N is not a neighbour of x={x}", x, v)
    clash = c_mask & (n_mask | 1 << x)
    if clash:
        v = (clash & -clash).bit_length() - 1
        audit.fail("C-disjoint", f"{v} lies in C and in N or is x", v)
    seen = adj[x] & c_mask
    if seen:
        c = (seen & -seen).bit_length() - 1
        audit.fail("x-anticomplete-C", f"x={x} not anticomplete to C: adjacent to {c}", x, c)
    lonely = _uncovered(adj, n_mask, c_mask & ~n_mask & ~(1 << x))
    if lonely is not None:
        audit.fail("N-covers-C", f"{lonely} in C has no neighbour in N of x={x}", x, lonely)


def verify_cover(graph: Graph, cover: Cover) -> Verdict:
    audit = _Audit()
    bad = _out_of_range(graph, [cover.x, *cover.N, *cover.C])
    if bad is not None:
        audit.fail("vertex-ids", f"vertex {bad} is not in the graph", bad)
        return audit.verdict()
    _check_cover(audit, graph.adjacency_masks, cover.x, cover.N.mask, cover.C.mask)
    return audit.verdict()


@dataclass(frozen=True)
class Multicover:
    """A family (N_x : x in X) covering a common set C."""

    X: VertexSet
    N: Mapping[int, VertexSet]
    C: VertexSet

    def cover(self, x: int) -> Cover:
        return Cover(x, self.N[x], self.C)

    def union_of_n(self) -> VertexSet:
        return union_of_n(self)

    def restrict(
        self,
        X: Iterable[int],
        N: Optional[Mapping[int, VertexSet]] = None,
        C: Optional[VertexSet] = None,
    ) -> Multicover:
        """A multicover contained in this one: the members ``X`` with ``N`` shrunk where given."""
        keep = VertexSet.of(X)
        if not keep.issubset(self.X):
            raise StructureError(f"{keep!r} is not a subset of {self.X!r}")
        shrunk = {}
        for x in keep:
            nx = self.N[x] if N is None or x not in N else N[x]
            if not nx.issubset(self.N[x]):
                raise StructureError(f"N for x={x} is not contained in the original")
            shrunk[x] = nx
        return Multicover(keep, shrunk, self.C if C is None else C)

    def to_json(self) -> dict:
        return {
            "X": self.X.to_json(),
            "N": {str(x): self.N[x].to_json() for x in sorted(self.N)},
            "C": self.C.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> Multicover:
        with _decoding("multicover"):
            return cls(
                X=_vertex_set_json(data["X"]),
                N={int(x): _vertex_set_json(vs) for x, vs in data["N"].items()},
                C=_vertex_set_json(data["C"]),
            )


def union_of_n(mc: Multicover) -> VertexSet:
    mask = 0
    for nx in mc.N.values():
        mask |= nx.mask
    return VertexSet(mask)


def verify_multicover(graph: Graph, mc: Multicover, require_stable_N: bool = False) -> Verdict:
    audit = _Audit()
    bad = _out_of_range(graph, [*mc.X, *mc.C, *mc.N.keys(), *(v for nx in mc.N.values() for v in nx)])
    if bad is not None:
        audit.fail("vertex-ids", f"vertex {bad} is not in the graph", bad)
        return audit.verdict()
    if set(mc.N) != set(mc.X):
        extra = sorted(set(mc.N) ^ set(mc.X))
        audit.fail("N-keys", f"N is indexed by {sorted(mc.N)} but X is {mc.X.to_json()}", *extra)
        return audit.verdict()

    adj = graph.adjacency_masks
    x_mask = mc.X.mask
    edge = _edge_between(adj, x_mask, x_mask)
    if edge is not None:
        audit.fail("X-stable", f"X is not stable: {edge[0]}-{edge[1]}", *edge)

    for x in mc.X:
        _check_cover(audit, adj, x, mc.N[x].mask, mc.C.mask)

    for x, y in combinations(sorted(mc.X), 2):
        closed_x = mc.N[x].mask | 1 << x
        closed_y = mc.N[y].mask | 1 << y
        common = closed_x & closed_y
        if common:
            v = (common & -common).bit_length() - 1
            audit.fail("disjoint", f"{{x}} with N_x meet for x={x}, x'={y} at {v}", x, y, v)
        for a, b in ((x, y), (y, x)):
            hit = adj[b] & mc.N[a].mask
            if hit:
                v = (hit & -hit).bit_length() - 1
                audit.fail("cross-anticomplete", f"x'={b} is adjacent to {v} in N_{a}", a, b, v)

    if require_stable_N:
        for x in mc.X:
            edge = _edge_between(adj, mc.N[x].mask, mc.N[x].mask)
            if edge is not None:
                audit.fail("N-stable", f"N_{x} is not stable: {edge[0]}-{edge[1]}", x, *edge)
    return audit.verdict()


def is_multicover_stable(graph: Graph, mc: Multicover) -> bool:
    adj = graph.adjacency_masks
    return all(_edge_between(adj, nx.mask, nx.mask) is None for nx in mc.N.values())


def verify_containment(outer: Multicover, inner: Multicover) -> Verdict:
    audit = _Audit()
    extra = inner.X - outer.X
    if extra:
        audit.fail("X-subset", f"inner X has {extra.to_json()} outside the outer X", *extra)
    for x in inner.X:
        if x not in outer.X or x not in outer.N or x not in inner.N:
            continue
        spill = inner.N[x] - outer.N[x]
        if spill:
            audit.fail("N-subset", f"inner N_{x} has {spill.to_json()} outside the outer N_{x}", x, *spill)
    return audit.verdict()


# --- Ticks -----------------------------------------------------------------------


@dataclass(frozen=True)
class Tick:
    """Apex ``a`` with knees ``a_x`` over a stable set X (edges x-a_x and a_x-a)."""

    X: VertexSet
    apex: int
    knees: Mapping[int, int]

    def vertices_outside_x(self) -> VertexSet:
        return VertexSet.of([self.apex, *self.knees.values()])

    def to_json(self) -> dict:
        return {
            "X": self.X.to_json(),
            "apex": self.apex,
            "knees": {str(x): self.knees[x] for x in sorted(self.knees)},
        }

    @classmethod
    def from_json(cls, data: dict) -> Tick:
        with _decoding("tick"):
            return cls(
                X=_vertex_set_json(data["X"]),
                apex=int(data["apex"]),
                knees={int(x): int(v) for x, v in data["knees"].items()},
            )


def verify_tick(graph: Graph, tick: Tick) -> Verdict:
    """The tick clauses alone, without tangency."""
    audit = _Audit()
    _check_tick(audit, graph, tick)
    return audit.verdict()


def _check_tick(audit: _Audit, graph: Graph, tick: Tick) -> bool:
    bad = _out_of_range(graph, [tick.apex, *tick.X, *tick.knees, *tick.knees.values()])
    if bad is not None:
        audit.fail("vertex-ids", f"vertex {bad} is not in the graph", bad)
        return False
    if set(tick.knees) != set(tick.X):
        extra = sorted(set(tick.knees) ^ set(tick.X))
        audit.fail("X-match", f"knees are indexed by {sorted(tick.knees)} but X is {tick.X.to_json()}", *extra)
        return False
    adj = graph.adjacency_masks
    x_mask = tick.X.mask
    listed = [tick.apex, *(tick.knees[x] for x in sorted(tick.knees))]
    seen: set[int] = set()
    for v in listed:
        if v in seen or x_mask >> v & 1:
            audit.fail("distinct", f"vertex {v} repeats or lies in X", v)
        seen.add(v)
    hit = adj[tick.apex] & x_mask
    if hit:
        x = (hit & -hit).bit_length() - 1
        audit.fail("apex-anticomplete-X", f"apex {tick.apex} is adjacent to {x} in X", tick.apex, x)
    for x in sorted(tick.knees):
        knee = tick.knees[x]
        if not adj[knee] >> x & 1:
            audit.fail("knee-adjacency", f"knee {knee} is not adjacent to x={x}", knee, x)
        if not adj[knee] >> tick.apex & 1:
            audit.fail("knee-adjacency", f"knee {knee} is not adjacent to the apex {tick.apex}", knee, tick.apex)
        others = adj[knee] & x_mask & ~(1 << x)
        if others:
            y = (others & -others).bit_length() - 1
            audit.fail("knee-anticomplete-X", f"knee {knee} of x={x} is adjacent to {y} in X", knee, y)
    return True


def verify_tick_tangent(graph: Graph, tick: Tick, mc: Multicover) -> Verdict:
    """Tick clauses plus tangency: C and every N_x avoid, and see nothing of, the tick outside X."""
    audit = _Audit()
    if tick.X != mc.X:
        audit.fail("X-match", f"tick is on {tick.X.to_json()} but the multicover is on {mc.X.to_json()}")
        return audit.verdict()
    if not _check_tick(audit, graph, tick):
        return audit.verdict()
    bad = _out_of_range(graph, [*mc.C, *(v for nx in mc.N.values() for v in nx)])
    if bad is not None:
        audit.fail("vertex-ids", f"vertex {bad} is not in the graph", bad)
        return audit.verdict()
    adj = graph.adjacency_masks
    outside = tick.vertices_outside_x().mask
    protected = mc.C.mask | union_of_n(mc).mask
    for f in iter_bits(outside):
        if protected >> f & 1:
            audit.fail("tangent", f"tick vertex {f} lies in C or some N_x", f)
        touch = adj[f] & protected
        if touch:
            v = (touch & -touch).bit_length() - 1
            audit.fail("tangent", f"{v} in C or some N_x is adjacent to tick vertex {f}", v, f)
    return audit.verdict()


# --- Impressions -----------------------------------------------------------------


def complete_bipartite_pattern(n: int) -> Graph:
    """K_{n,n} with sides 0..n-1 and n..2n-1."""
    return Graph(2 * n, [(i, n + j) for i in range(n) for j in range(n)])


def complete_bipartite_side(pattern: Graph) -> Optional[int]:
    """``n`` when ``pattern`` is exactly ``complete_bipartite_pattern(n)``, else None."""
    if pattern.n % 2:
        return None
    n = pattern.n // 2
    return n if pattern == complete_bipartite_pattern(n) else None


def _graph_json(graph: Graph) -> dict:
    return {"n": graph.n, "edges": [list(e) for e in graph.edges()]}


@dataclass(frozen=True)
class Impression:
    """A map of a pattern graph into G: branch vertices to vertices, pattern edges to paths."""

    pattern: Graph
    vertex_map: tuple[int, ...]
    paths: Mapping[tuple[int, int], tuple[int, ...]]
    order: int

    def vertices(self) -> VertexSet:
        mask = 0
        for v in self.vertex_map:
            mask |= 1 << v
        for path in self.paths.values():
            for v in path:
                mask |= 1 << v
        return VertexSet(mask)

    def to_json(self) -> dict:
        return {
            "pattern": _graph_json(self.pattern),
            "vertex_map": list(self.vertex_map),
            "paths": [{"edge": list(e), "path": list(self.paths[e])} for e in sorted(self.paths)],
            "order": self.order,
        }

    @classmethod
    def from_json(cls, data: dict) -> Impression:
        with _decoding("impression"):
            pattern = Graph(int(data["pattern"]["n"]), [tuple(e) for e in data["pattern"]["edges"]])
            paths = {}
            for item in data["paths"]:
                u, v = (int(a) for a in item["edge"])
                paths[(min(u, v), max(u, v))] = tuple(int(a) for a in item["path"])
            return cls(pattern, tuple(int(v) for v in data["vertex_map"]), paths, int(data["order"]))


def verify_impression(graph: Graph, imp: Impression) -> Verdict:
    audit = _Audit()
    bad = _out_of_range(graph, [*imp.vertex_map, *(v for p in imp.paths.values() for v in p)])
    if bad is not None:
        audit.fail("vertex-ids", f"vertex {bad} is not in the graph", bad)
        return audit.verdict()
    if len(imp.vertex_map) != imp.pattern.n:
        audit.fail("injective", f"vertex map has {len(imp.vertex_map)} entries for {imp.pattern.n} pattern vertices")
        return audit.verdict()
    adj = graph.adjacency_masks

    images: dict[int, int] = {}
    for hv, gv in enumerate(imp.vertex_map):
        if gv in images:
            audit.fail("injective", f"pattern vertices {images[gv]} and {hv} both map to {gv}", gv)
        images[gv] = hv
    branch = 0
    for gv in imp.vertex_map:
        branch |= 1 << gv
    edge = _edge_between(adj, branch, branch)
    if edge is not None:
        audit.fail("branch-stable", f"branch vertices {edge[0]}-{edge[1]} are adjacent", *edge)

    pattern_edges = set(imp.pattern.edges())
    if set(imp.paths) != pattern_edges:
        extra = sorted(set(imp.paths) ^ pattern_edges)
        audit.fail("path-endpoints", f"paths are given for {sorted(imp.paths)} but the pattern has edges {extra}")
        return audit.verdict()

    longest = 0
    masks: dict[tuple[int, int], int] = {}
    for e in sorted(imp.paths):
        path = imp.paths[e]
        u, v = e
        ends = {imp.vertex_map[u], imp.vertex_map[v]}
        if len(path) < 2 or {path[0], path[-1]} != ends:
            audit.fail("path-endpoints", f"path of pattern edge {e} does not join {sorted(ends)}", *path[:1])
        if len(path) - 1 < 2:
            audit.fail("path-length", f"path of pattern edge {e} has length {len(path) - 1} < 2", *path)
        if len(set(path)) != len(path):
            audit.fail("path-edges", f"path of pattern edge {e} repeats a vertex", *path)
        for a, b in zip(path, path[1:]):
            if not adj[a] >> b & 1:
                audit.fail("path-edges", f"path of pattern edge {e} uses the non-edge {a}-{b}", a, b)
        longest = max(longest, len(path) - 1)
        mask = 0
        for w in path:
            mask |= 1 << w
        masks[e] = mask

    for e, f in combinations(sorted(masks), 2):
        if set(e) & set(f):
            continue
        common = masks[e] & masks[f]
        if common:
            w = (common & -common).bit_length() - 1
            audit.fail("nonincident-disjoint", f"paths of {e} and {f} share {w}", w)
            continue
        touch = _edge_between(adj, masks[e], masks[f])
        if touch is not None:
            audit.fail("nonincident-anticomplete", f"paths of {e} and {f} are joined by {touch[0]}-{touch[1]}", *touch)

    if imp.paths and imp.order != longest:
        audit.fail("order", f"order is recorded as {imp.order} but the longest path has length {longest}")
    return audit.verdict()


# --- Cables ----------------------------------------------------------------------


class PairType(Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"


@dataclass(frozen=True)
class Cable:
    """An h-cable of length t = len(X); positions are 0-based and Z is keyed by (i, j) with i < j."""

    h: int
    X: tuple[VertexSet, ...]
    N: tuple[VertexSet, ...]
    Y: tuple[VertexSet, ...]
    Z: Mapping[tuple[int, int], VertexSet]
    C: VertexSet

    @classmethod
    def base_only(cls, h: int, C: VertexSet) -> Cable:
        return cls(h, (), (), (), {}, C)

    @property
    def length(self) -> int:
        return len(self.X)

    def z(self, i: int, j: int) -> VertexSet:
        return self.Z.get((i, j), VertexSet())

    def with_base(self, C: VertexSet) -> Cable:
        return Cable(self.h, self.X, self.N, self.Y, self.Z, C)

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "X": [x.to_json() for x in self.X],
            "N": [n.to_json() for n in self.N],
            "Y": [y.to_json() for y in self.Y],
            "Z": [{"i": i, "j": j, "vertices": self.Z[(i, j)].to_json()} for i, j in sorted(self.Z)],
            "C": self.C.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> Cable:
        with _decoding("cable"):
            return cls(
                h=int(data["h"]),
                X=tuple(_vertex_set_json(x) for x in data["X"]),
                N=tuple(_vertex_set_json(n) for n in data["N"]),
                Y=tuple(_vertex_set_json(y) for y in data["Y"]),
                Z={(int(z["i"]), int(z["j"])): _vertex_set_json(z["vertices"]) for z in data.get("Z", [])},
                C=_vertex_set_json(data["C"]),
            )


def _check_cable_fields(audit: _Audit, graph: Graph, cable: Cable) -> bool:
    t = cable.length
    if len(cable.N) != t or len(cable.Y) != t:
        audit.fail("lengths", f"X, N and Y have lengths {t}, {len(cable.N)}, {len(cable.Y)}")
        return False
    for i, j in cable.Z:
        if not 0 <= i < j < t:
            audit.fail("lengths", f"Z key ({i}, {j}) is not a pair i < j < {t}")
            return False
    everything = [*cable.C, *(v for group in (cable.X, cable.N, cable.Y) for s in group for v in s)]
    everything.extend(v for s in cable.Z.values() for v in s)
    bad = _out_of_range(graph, everything)
    if bad is not None:
        audit.fail("vertex-ids", f"vertex {bad} is not in the graph", bad)
        return False
    return True


def verify_cable(graph: Graph, cable: Cable) -> Verdict:
    """Field invariants and axioms C1..C5; the verdict report lists each axiom's status."""
    audit = _Audit()
    if cable.h < 1:
        audit.fail("X-cliques", f"clique size h={cable.h} must be at least 1")
    if not _check_cable_fields(audit, graph, cable):
        return audit.verdict(CABLE_AXIOMS)
    adj = graph.adjacency_masks
    t = cable.length
    X = [x.mask for x in cable.X]
    N = [n.mask for n in cable.N]
    Y = [y.mask for y in cable.Y]
    C = cable.C.mask

    def Z(i: int, j: int) -> int:
        return cable.z(i, j).mask

    for i in range(t):
        if X[i].bit_count() != cable.h or not mask_is_clique(adj, X[i]):
            audit.fail("X-cliques", f"X[{i}] is not an {cable.h}-clique", *iter_bits(X[i]))
    for i, j in combinations(range(t), 2):
        common = X[i] & X[j]
        if common:
            audit.fail("X-disjoint-anticomplete", f"X[{i}] and X[{j}] meet", *iter_bits(common))
            continue
        edge = _edge_between(adj, X[i], X[j])
        if edge is not None:
            audit.fail("X-disjoint-anticomplete", f"X[{i}] and X[{j}] are joined by {edge[0]}-{edge[1]}", *edge)
    for i in range(t):
        inside = N[i] & X[i]
        if inside:
            audit.fail("N-in-N1", f"N[{i}] meets X[{i}]", *iter_bits(inside))
        pair = _nonedge_between(adj, N[i] & ~X[i], X[i])
        if pair is not None:
            audit.fail("N-in-N1", f"{pair[0]} in N[{i}] is not adjacent to {pair[1]} in X[{i}]", *pair)
    for i, j in combinations(range(t), 2):
        if N[i] & N[j]:
            audit.fail("N-disjoint", f"N[{i}] and N[{j}] meet", *iter_bits(N[i] & N[j]))
    for i in range(t):
        parts = [("Y", i, Y[i])] + [("Z", j, Z(i, j)) for j in range(i + 1, t)]
        for name, j, part in parts:
            spill = part & ~N[i]
            if spill:
                label = f"Y[{i}]" if name == "Y" else f"Z[{i},{j}]"
                audit.fail("YZ-in-N", f"{label} is not inside N[{i}]", *iter_bits(spill))
        for (_, a, pa), (_, b, pb) in combinations(parts, 2):
            if pa & pb:
                audit.fail("YZ-disjoint", f"parts of N[{i}] overlap", *iter_bits(pa & pb))
    body = 0
    for i in range(t):
        body |= X[i] | N[i]
    if C & body:
        audit.fail("C-disjoint", "the base meets some X or N", *iter_bits(C & body))

    # C1
    for i in range(t):
        lonely = _uncovered(adj, Y[i], C)
        if lonely is not None:
            audit.fail("C1", f"Y[{i}] does not cover the base: {lonely} has no neighbour", i, lonely)
        for j in range(i + 1, t):
            edge = _edge_between(adj, C, Z(i, j))
            if edge is not None:
                audit.fail("C1", f"base vertex {edge[0]} is adjacent to {edge[1]} in Z[{i},{j}]", *edge)
        edge = _edge_between(adj, C, X[i])
        if edge is not None:
            audit.fail("C1", f"base vertex {edge[0]} is adjacent to {edge[1]} in X[{i}]", *edge)
    # C2
    for i, j in combinations(range(t), 2):
        edge = _edge_between(adj, X[i], N[j])
        if edge is not None:
            audit.fail("C2", f"X[{i}] is not anticomplete to N[{j}]: {edge[0]}-{edge[1]}", *edge)
    # C3
    for i, j in combinations(range(t), 2):
        for z in iter_bits(Z(i, j)):
            if adj[z] & X[j] == X[j]:
                audit.fail("C3", f"{z} in Z[{i},{j}] has no non-neighbour in X[{j}]", z)
    # C4
    for i, j, k in combinations(range(t), 3):
        edge = _edge_between(adj, Z(i, j), X[k] | N[k])
        if edge is not None:
            audit.fail("C4", f"Z[{i},{j}] is not anticomplete to X[{k}] and N[{k}]: {edge[0]}-{edge[1]}", *edge)
    # C5
    for i, j in combinations(range(t), 2):
        if _pair_type_masks(adj, X[j], Y[i], Z(i, j), N[j]) is None:
            audit.fail("C5", f"pair ({i}, {j}) satisfies neither alternative", i, j)
    return audit.verdict(CABLE_AXIOMS)


def _pair_type_masks(adj: tuple[int, ...], xj: int, yi: int, zij: int, nj: int) -> Optional[PairType]:
    if not zij and any(not adj[x] & yi for x in iter_bits(xj)):
        return PairType.TYPE1
    if _nonedge_between(adj, xj, yi) is None and _uncovered(adj, zij, nj) is None:
        return PairType.TYPE2
    return None


def _require_verified(graph: Graph, cable: Cable) -> None:
    verdict = verify_cable(graph, cable)
    if not verdict.ok:
        first = verdict.violations[0]
        raise StructureError(f"cable does not verify: {first.clause}: {first.message}")


def cable_pair_type(graph: Graph, cable: Cable, i: int, j: int, *, verified: bool = False) -> PairType:
    """Which alternative of the pair dichotomy holds for positions i < j; TYPE1 wins when both do."""
    if not 0 <= i < j < cable.length:
        raise StructureError(f"pair ({i}, {j}) is not i < j < {cable.length}")
    if not verified:
        _require_verified(graph, cable)
    kind = _pair_type_masks(
        graph.adjacency_masks, cable.X[j].mask, cable.Y[i].mask, cable.z(i, j).mask, cable.N[j].mask
    )
    if kind is None:
        raise CableClassificationError(f"pair ({i}, {j}) of a verified cable is neither type")
    return kind


def subcable(graph: Graph, cable: Cable, indices: Iterable[int], *, verified: bool = False) -> Cable:
    """The cable restricted to ``indices``, renumbered in increasing order; Y keeps its final-stage sets."""
    picked = sorted(set(indices))
    if any(not 0 <= i < cable.length for i in picked):
        raise StructureError(f"indices {picked} are not all in range({cable.length})")
    if not verified:
        _require_verified(graph, cable)
    z = {}
    for a, b in combinations(range(len(picked)), 2):
        part = cable.z(picked[a], picked[b])
        if part:
            z[(a, b)] = part
    return Cable(
        cable.h,
        tuple(cable.X[i] for i in picked),
        tuple(cable.N[i] for i in picked),
        tuple(cable.Y[i] for i in picked),
        z,
        cable.C,
    )


STRUCTURE_KINDS = {
    "cover": Cover,
    "multicover": Multicover,
    "tick": Tick,
    "impression": Impression,
    "cable": Cable,
}


def verify_structure(graph: Graph, kind: str, data: dict, **options: object) -> Verdict:
    """Decodes a structure of ``kind`` and runs its verifier."""
    if kind not in STRUCTURE_KINDS:
        raise StructureError(f"unknown structure kind {kind!r}")
    if kind == "tick":
        with _decoding("tick"):
            tick = Tick.from_json(data["tick"])
            mc = Multicover.from_json(data["multicover"])
        return verify_tick_tangent(graph, tick, mc)
    structure = STRUCTURE_KINDS[kind].from_json(data)
    if kind == "cover":
        return verify_cover(graph, structure)
    if kind == "multicover":
        return verify_multicover(graph, structure, bool(options.get("require_stable_N", False)))
    if kind == "impression":
        return verify_impression(graph, structure)
    return verify_cable(graph, structure)
