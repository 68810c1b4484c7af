"""The l1 path metric between barycentric points of a finite complex.

A path is a sequence of points in which consecutive entries share a simplex;
its length is the sum of per-simplex l1 distances.  The distance is the
minimum length over all paths.  The solver works in three tiers:

  1. points in a common simplex: the l1 distance itself is optimal;
  2. two vertices: the word metric with an edge-path witness;
  3. general case: depth-first enumeration of simple chains of maximal
     simplices inside a routing ball, with branch-and-bound pruning, where
     each chain's optimum is an exact rational minimum-cost flow over the
     chain's interface faces.

The flow formulation: half the l1 distance between two distributions equals
the least mass that must move between them (any move inside one simplex
costs 1 per unit), so the best path through a fixed chain is a layered
transportation problem with 0/1 unit costs.  Solving it in exact rational
arithmetic makes values and witnesses reproducible bit-for-bit and invariant
under vertex relabelings.

Every solved distance is checked against the registered lower bounds; a
result below any bound is recorded and raised as an internal inconsistency,
never returned.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .complexes import (
    BarycentricPoint,
    SimplicialComplex,
    Simplex,
    common_simplex,
    make_point,
    simplex_l1,
    vertex_point,
)
from .errors import (
    ChainBudgetExceeded,
    EmptyIntersection,
    EndpointNotInCarrier,
    InternalConsistencyError,
    InvalidCarrier,
)
from .vertexmetrics import bfs_distances, word_metric

VALUE_TOL = 1e-9
TIE_TOL = 1e-12


# --------------------------------------------------------------------------
# tripwire registry: lower-bound checks performed by the solver

@dataclass
class TripwireLog:
    checks: int = 0
    violations: list[str] = field(default_factory=list)


_TRIPWIRE = TripwireLog()


def tripwire_log() -> TripwireLog:
    return _TRIPWIRE


def reset_tripwire_log() -> None:
    _TRIPWIRE.checks = 0
    _TRIPWIRE.violations.clear()


def _assert_above_bounds(value: float, bounds: Iterable[tuple[str, float]], context: str) -> None:
    for name, bound in bounds:
        _TRIPWIRE.checks += 1
        if value < bound - VALUE_TOL:
            msg = f"{context}: result {value!r} below {name} bound {bound!r}"
            _TRIPWIRE.violations.append(msg)
            raise InternalConsistencyError(msg)


# --------------------------------------------------------------------------
# chains, witnesses, options

@dataclass(frozen=True)
class Chain:
    """Sequence of maximal simplices with nonempty consecutive overlaps."""

    simplices: tuple[Simplex, ...]

    def __post_init__(self):
        if not self.simplices:
            raise EmptyIntersection("a chain needs at least one simplex")
        for a, b in zip(self.simplices, self.simplices[1:]):
            if not set(a) & set(b):
                raise EmptyIntersection(f"consecutive simplices {a} and {b} are disjoint")

    def faces(self) -> list[Simplex]:
        return [
            tuple(sorted(set(a) & set(b)))
            for a, b in zip(self.simplices, self.simplices[1:])
        ]


@dataclass(frozen=True)
class PathWitness:
    """Certificate for an upper bound on the path distance."""

    points: tuple[BarycentricPoint, ...]
    carriers: tuple[Simplex, ...]
    length: float

    def validate(self, K: SimplicialComplex) -> None:
        if len(self.points) != len(self.carriers) + 1:
            raise InvalidCarrier("need one carrier per consecutive point pair")
        total = path_length(K, self.points, self.carriers)
        if abs(total - self.length) > VALUE_TOL:
            raise InvalidCarrier(f"stored length {self.length} != recomputed {total}")


@dataclass(frozen=True)
class PathOptions:
    """Search limits; defaults are derived from the routing upper bound."""

    max_chain_length: int | None = None
    enumerate_simple_chains_only: bool = True
    max_nodes: int = 100_000

    def __post_init__(self):
        if self.max_chain_length is not None and self.max_chain_length < 1:
            raise ValueError("max_chain_length must be >= 1")


class PathResult(NamedTuple):
    value: float
    witness: PathWitness


def path_length(
    K: SimplicialComplex,
    points: Sequence[BarycentricPoint],
    carriers: Sequence[Simplex],
) -> float:
    """Sum of per-simplex l1 lengths; carriers must hold both endpoints.

    The value never depends on which admissible carriers are supplied, since
    the simplex l1 metric restricts to faces.
    """
    if len(points) != len(carriers) + 1:
        raise InvalidCarrier("need exactly one carrier per consecutive point pair")
    total = 0.0
    for i, carrier in enumerate(carriers):
        carrier = tuple(sorted(carrier))
        if carrier not in K.faces:
            raise InvalidCarrier(f"carrier {carrier} is not a simplex of the complex")
        a, b = points[i], points[i + 1]
        if not (set(a.support) <= set(carrier) and set(b.support) <= set(carrier)):
            raise InvalidCarrier(
                f"segment {i}: supports {a.support}, {b.support} not inside {carrier}"
            )
        total += simplex_l1(a, b)
    return total


# --------------------------------------------------------------------------
# layered min-cost flow (the per-chain optimum)

class _LayeredFlow:
    """Min-cost flow through layers of vertex sets with 0/1 move costs.

    Layer 0 carries the start distribution as supply, the final layer the
    end distribution as demand; between consecutive layers every move costs
    1 per unit of mass except staying on the same vertex.  With ``exact``
    all mass arithmetic is Fraction-exact (weights converted from their
    binary float values); costs are integers either way.
    """

    def __init__(
        self,
        layers: Sequence[Sequence[str]],
        supply: dict[str, float],
        demand: dict[str, float],
        exact: bool,
    ):
        self.exact = exact
        conv = Fraction if exact else float
        self.nodes: list[tuple] = [("s",), ("t",)]
        index: dict[tuple, int] = {("s",): 0, ("t",): 1}
        for li, layer in enumerate(layers):
            for v in sorted(layer):
                index[(li, v)] = len(self.nodes)
                self.nodes.append((li, v))
        self.index = index
        n = len(self.nodes)
        self.tail: list[int] = []
        self.head: list[int] = []
        self.cap: list = []
        self.cost: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

        total_supply = sum(conv(supply[v]) for v in sorted(supply))
        total_demand = sum(conv(demand[v]) for v in sorted(demand))
        # Rebalance the demand so flow conservation is exact even though the
        # two float weight vectors need not sum to the same binary value.
        scale = total_supply / total_demand
        inf_cap = conv(4)

        def add_arc(u: int, v: int, cap, cost: int) -> None:
            for t_, h_, c_, w_ in ((u, v, cap, cost), (v, u, conv(0), -cost)):
                self.adj[t_].append(len(self.tail))
                self.tail.append(t_)
                self.head.append(h_)
                self.cap.append(c_)
                self.cost.append(w_)

        for v in sorted(supply):
            add_arc(0, index[(0, v)], conv(supply[v]), 0)
        last = len(layers) - 1
        for v in sorted(demand):
            add_arc(index[(last, v)], 1, conv(demand[v]) * scale, 0)
        for li in range(len(layers) - 1):
            for u in sorted(layers[li]):
                for w in sorted(layers[li + 1]):
                    add_arc(index[(li, u)], index[(li + 1, w)], inf_cap, 0 if u == w else 1)
        self.total = total_supply

    def solve(self):
        """Successive shortest paths (SPFA); returns (cost, arc flows)."""
        conv = Fraction if self.exact else float
        zero = conv(0)
        eps = zero if self.exact else 1e-15
        n = len(self.nodes)
        flow = [zero] * len(self.tail)
        remaining = self.total
        total_cost = zero
        while remaining > eps:
            dist = [None] * n
            parent = [-1] * n
            dist[0] = 0
            queue = deque([0])
            inq = [False] * n
            inq[0] = True
            while queue:
                u = queue.popleft()
                inq[u] = False
                du = dist[u]
                for a in self.adj[u]:
                    if self.cap[a] - flow[a] <= eps:
                        continue
                    v = self.head[a]
                    nd = du + self.cost[a]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        parent[v] = a
                        if not inq[v]:
                            queue.append(v)
                            inq[v] = True
            if dist[1] is None:
                raise EmptyIntersection("flow network is disconnected")
            bottleneck = remaining
            v = 1
            while v != 0:
                a = parent[v]
                avail = self.cap[a] - flow[a]
                if avail < bottleneck:
                    bottleneck = avail
                v = self.tail[a]
            v = 1
            while v != 0:
                a = parent[v]
                flow[a] += bottleneck
                flow[a ^ 1] -= bottleneck
                total_cost += bottleneck * self.cost[a]
                v = self.tail[a]
            remaining -= bottleneck
        return total_cost, flow

    def layer_distributions(self, flow, num_layers: int) -> list[dict]:
        """Mass arriving at each layer's vertices, reconstructed from flows."""
        conv = Fraction if self.exact else float
        eps = conv(0) if self.exact else 1e-15
        dists: list[dict] = [dict() for _ in range(num_layers)]
        for a in range(0, len(self.tail), 2):  # forward arcs only
            node = self.nodes[self.head[a]]
            if len(node) == 2 and flow[a] > eps:
                li, v = node
                dists[li][v] = dists[li].get(v, conv(0)) + flow[a]
        return dists


def _chain_flow_value(
    layers: Sequence[Sequence[str]],
    supply: dict[str, float],
    demand: dict[str, float],
    exact: bool,
):
    lf = _LayeredFlow(layers, supply, demand, exact)
    cost, flow = lf.solve()
    return lf, cost, flow


def chain_lp(
    K: SimplicialComplex,
    chain: Chain,
    x: BarycentricPoint,
    y: BarycentricPoint,
) -> tuple[float, list[BarycentricPoint]]:
    """Exact optimum over paths with the given carrier sequence.

    Interior breakpoints are constrained to the interface faces of the
    chain; the minimum of the summed l1 lengths is solved as a layered
    transportation problem in exact rational arithmetic.  Returns the value
    and one optimal interior breakpoint assignment.
    """
    sigma = chain.simplices
    if not set(x.support) <= set(sigma[0]):
        raise EndpointNotInCarrier(f"supp {x.support} not inside first simplex {sigma[0]}")
    if not set(y.support) <= set(sigma[-1]):
        raise EndpointNotInCarrier(f"supp {y.support} not inside last simplex {sigma[-1]}")
    faces = chain.faces()  # raises EmptyIntersection on invalid chains
    layers: list[Sequence[str]] = [x.support, *faces, y.support]
    lf, cost, flow = _chain_flow_value(layers, x.weights, y.weights, exact=True)
    dists = lf.layer_distributions(flow, len(layers))
    breakpoints = [
        make_point(K, {v: float(w) for v, w in d.items()})
        for d in dists[1:-1]
    ]
    return float(cost), breakpoints


# --------------------------------------------------------------------------
# admissible lower bounds

def lower_bounds(
    K: SimplicialComplex, x: BarycentricPoint, y: BarycentricPoint
) -> list[tuple[str, float]]:
    """Admissible lower bounds on the path distance, each individually valid.

    coordinate: half the total variation of the coordinate vectors; any path
      moves each coordinate at least that much.
    disjoint_support: 1 when the supports are disjoint (each endpoint's mass
      must fully drain and refill).
    sphere: sphere-crossing count around the heaviest support vertex of x.
      For a radius k larger than every support radius of x but smaller than
      the largest support radius of y, some path point must carry its full
      weight on the sphere of radius k, so that sphere's weight function
      varies by at least |w_k(x) - 1| + |1 - w_k(y)| along the path.
    """
    xw, yw = x.weights, y.weights
    coords = sorted(set(xw) | set(yw))
    coordinate = 0.5 * sum(abs(xw.get(v, 0.0) - yw.get(v, 0.0)) for v in coords)
    disjoint = 1.0 if not set(x.support) & set(y.support) else 0.0
    out = [("coordinate", coordinate), ("disjoint_support", disjoint)]

    max_w = max(w for _, w in x.items)
    center = min(v for v, w in x.items if w == max_w)
    dist = bfs_distances(K, center)
    if all(v in dist for v in y.support):
        wx: dict[int, float] = {}
        wy: dict[int, float] = {}
        for v, w in x.items:
            wx[dist[v]] = wx.get(dist[v], 0.0) + w
        for v, w in y.items:
            wy[dist[v]] = wy.get(dist[v], 0.0) + w
        top_x = max(wx)
        top_y = max(wy)
        total = 0.0
        for k in range(0, max(top_x, top_y) + 1):
            a = wx.get(k, 0.0)
            b = wy.get(k, 0.0)
            if top_x < k < top_y:
                total += abs(a - 1.0) + abs(1.0 - b)
            else:
                total += abs(a - b)
        out.append(("sphere", 0.5 * total))
    return out


def _transit_bound(
    xw: dict[str, float], yw: dict[str, float], face: Simplex
) -> float:
    """min over b supported in face of (l1(x,b) + l1(b,y)) / 2, closed form.

    Any path forced through the face pays at least this much: coordinates
    outside the face must drain on the way in and refill on the way out,
    and the face must be able to carry total mass 1.
    """
    fs = set(face)
    keys = sorted(set(xw) | set(yw))
    base = 0.5 * sum(abs(xw.get(v, 0.0) - yw.get(v, 0.0)) for v in keys)
    outside = sum(min(xw.get(v, 0.0), yw.get(v, 0.0)) for v in keys if v not in fs)
    lo = sum(min(xw.get(v, 0.0), yw.get(v, 0.0)) for v in face)
    hi = sum(max(xw.get(v, 0.0), yw.get(v, 0.0)) for v in face)
    return base + outside + max(0.0, lo - 1.0, 1.0 - hi)


# --------------------------------------------------------------------------
# the main solver

def _shortest_vertex_path(K: SimplicialComplex, u: str, v: str) -> list[str]:
    """Deterministic shortest edge path: greedy descent on BFS distances."""
    dist = bfs_distances(K, v)
    path = [u]
    cur = u
    while cur != v:
        cur = min(w for w in K.adjacency[cur] if dist[w] == dist[cur] - 1)
        path.append(cur)
    return path


def _vertex_route_witness(
    K: SimplicialComplex,
    x: BarycentricPoint,
    y: BarycentricPoint,
    table,
) -> PathWitness:
    """Upper-bound witness: huddle to a support vertex, walk edges, spread."""
    best = None
    for u in x.support:
        for v in y.support:
            cost = (1.0 - x.get(u)) + table.distance(u, v) + (1.0 - y.get(v))
            key = (cost, u, v)
            if best is None or key < best:
                best = key
    _, u, v = best
    points: list[BarycentricPoint] = [x]
    carriers: list[Simplex] = []
    if not (x.is_vertex and x.support[0] == u):
        points.append(vertex_point(K, u))
        carriers.append(x.support)
    for w in _shortest_vertex_path(K, u, v)[1:]:
        prev = points[-1].support[0]
        points.append(vertex_point(K, w))
        carriers.append(tuple(sorted((prev, w))))
    if not (y.is_vertex and y.support[0] == v):
        points.append(y)
        carriers.append(y.support)
    length = path_length(K, points, carriers)
    return PathWitness(points=tuple(points), carriers=tuple(carriers), length=length)


def _trivial_witness(
    K: SimplicialComplex, x: BarycentricPoint, y: BarycentricPoint, carrier: Simplex
) -> PathWitness:
    return PathWitness(points=(x, y), carriers=(carrier,), length=simplex_l1(x, y))


def l1_path_distance(
    K: SimplicialComplex,
    x: BarycentricPoint,
    y: BarycentricPoint,
    opts: PathOptions | None = None,
) -> PathResult:
    """Exact path distance with an attaining witness.

    Tier 1 and 2 shortcuts (common simplex, vertex pair) return closed
    forms; the general case enumerates chains.  The result is checked
    against every registered lower bound before being returned.
    """
    opts = opts or PathOptions()
    word_metric(K)  # raises DisconnectedComplex early

    if x.key() == y.key():
        return PathResult(0.0, PathWitness(points=(x,), carriers=(), length=0.0))

    carrier = common_simplex(K, x, y)
    if carrier is not None:
        value = simplex_l1(x, y)
        result = PathResult(value, _trivial_witness(K, x, y, carrier))
    elif x.is_vertex and y.is_vertex:
        table = word_metric(K)
        witness = _vertex_route_witness(K, x, y, table)
        result = PathResult(float(table.distance(x.support[0], y.support[0])), witness)
    else:
        result = _solve_by_chains(K, x, y, opts)

    _assert_above_bounds(result.value, lower_bounds(K, x, y), "l1_path_distance")
    return result


def chain_solver_distance(
    K: SimplicialComplex,
    x: BarycentricPoint,
    y: BarycentricPoint,
    opts: PathOptions | None = None,
) -> PathResult:
    """Diagnostic entry point that skips the closed-form shortcuts.

    Exercises the chain enumeration even on vertex pairs and common-simplex
    pairs, so the chain solver can be validated against the closed forms.
    """
    opts = opts or PathOptions()
    word_metric(K)
    if x.key() == y.key():
        return PathResult(0.0, PathWitness(points=(x,), carriers=(), length=0.0))
    result = _solve_by_chains(K, x, y, opts)
    _assert_above_bounds(result.value, lower_bounds(K, x, y), "chain_solver_distance")
    return result


def _solve_by_chains(
    K: SimplicialComplex,
    x: BarycentricPoint,
    y: BarycentricPoint,
    opts: PathOptions,
) -> PathResult:
    table = word_metric(K)
    xw, yw = x.weights, y.weights

    min_cross = min(table.distance(u, v) for u in x.support for v in y.support)
    routing_upper = 2.0 + min_cross
    radius = math.ceil(routing_upper) + 1
    max_len = opts.max_chain_length or (2 * math.ceil(routing_upper) + 3)

    ball = {
        z
        for z in K.vertices
        if min(table.distance(u, z) for u in x.support) <= radius
    }
    candidates = [m for m in K.maximal_simplices if set(m) <= ball]
    starts = [i for i, m in enumerate(candidates) if set(x.support) <= set(m)]
    target = set(y.support)

    incumbent_witness = _vertex_route_witness(K, x, y, table)
    best_value = incumbent_witness.length
    best_chain: tuple[int, ...] | None = None
    best_lp: tuple[float, list[BarycentricPoint]] | None = None

    global_lb = max(v for _, v in lower_bounds(K, x, y))
    global_lb = max(global_lb, max(v for _, v in lower_bounds(K, y, x)))
    if best_value <= global_lb + TIE_TOL:
        return PathResult(best_value, incumbent_witness)

    nodes_visited = 0
    truncated_bounds: list[float] = []
    simple_only = opts.enumerate_simple_chains_only
    candidate_sets = [set(m) for m in candidates]

    def bound_for(faces: list[Simplex], kept: set[str], transit_max: float) -> float:
        # forced-zero coordinate bound: a coordinate missing from any
        # interface face crossed so far must fully drain and refill
        total = 0.0
        for v in sorted(set(xw) | set(yw)):
            a, b = xw.get(v, 0.0), yw.get(v, 0.0)
            total += (a + b) if v not in kept else abs(a - b)
        bound = max(0.5 * total, transit_max, global_lb)
        if len(faces) >= 3:
            layers = [x.support, *faces, y.support]
            _, cost, _ = _chain_flow_value(layers, xw, yw, exact=False)
            bound = max(bound, float(cost) - 1e-9)
        return bound

    # Depth-first in canonical order; the first strict improvement wins, so
    # equal-value witnesses resolve to the smallest non-dominated chain.
    stack: list[tuple[tuple[int, ...], list[Simplex], set[str], float, float]] = []
    for s in sorted(starts, reverse=True):
        stack.append(((s,), [], set(K.vertices), 0.0, 0.0))

    while stack:
        chain, faces, kept, transit_max, bound = stack.pop()
        nodes_visited += 1
        if bound > best_value + VALUE_TOL:
            continue  # best improved since this node was pushed
        if nodes_visited > opts.max_nodes:
            truncated_bounds.append(bound)
            continue

        last_set = candidate_sets[chain[-1]]
        if target <= last_set:
            chain_obj = Chain(simplices=tuple(candidates[i] for i in chain))
            value, breakpoints = chain_lp(K, chain_obj, x, y)
            if value < best_value - TIE_TOL:
                best_value = value
                best_chain = chain
                best_lp = (value, breakpoints)
                if best_value <= global_lb + TIE_TOL:
                    break
            continue  # extending a completed chain can never improve it

        if len(chain) >= max_len:
            truncated_bounds.append(bound)
            continue

        # interface the incoming breakpoint is confined to; an extension whose
        # simplex already contains it is dominated (the last simplex could be
        # skipped without increasing the value), so that chain is redundant
        prev_interface = set(faces[-1]) if faces else set(x.support)
        for nxt in range(len(candidates) - 1, -1, -1):
            if nxt == chain[-1] or (simple_only and nxt in chain):
                continue
            nxt_set = candidate_sets[nxt]
            if prev_interface <= nxt_set:
                continue
            overlap = last_set & nxt_set
            if not overlap:
                continue
            face = tuple(sorted(overlap))
            new_faces = faces + [face]
            new_kept = kept & overlap
            new_transit = max(transit_max, _transit_bound(xw, yw, face))
            new_bound = bound_for(new_faces, new_kept, new_transit)
            if new_bound > best_value + VALUE_TOL:
                continue
            stack.append((chain + (nxt,), new_faces, new_kept, new_transit, new_bound))

    if truncated_bounds and min(truncated_bounds) < best_value - VALUE_TOL:
        raise ChainBudgetExceeded(
            f"search truncated at {nodes_visited} nodes (chain length cap {max_len}) "
            f"with unproven branches below the best value {best_value}"
        )

    if best_chain is None:
        return PathResult(best_value, incumbent_witness)

    value, breakpoints = best_lp
    points = (x, *breakpoints, y)
    carriers = tuple(candidates[i] for i in best_chain)
    length = path_length(K, points, carriers)
    if abs(length - value) > VALUE_TOL:
        raise InternalConsistencyError(
            f"witness length {length} disagrees with flow value {value}"
        )
    witness = PathWitness(points=points, carriers=carriers, length=length)
    return PathResult(value, witness)
