"""Balanced transportation problem solved with the u-v (MODI) tableau method.

Degeneracy is removed with the classical perturbation: each supply gets
+eps and the last demand gets +m*eps. Flows are carried as exact integer
pairs ``(value, eps_coefficient)`` compared lexicographically, so every
basis is non-degenerate and each pivot strictly improves the objective.
The eps parts are dropped at the end, leaving an integral optimum.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

Cell = Tuple[int, int]
Pair = Tuple[int, int]

BLAND_AFTER = 1000


class InfeasibleTransport(ValueError):
    """Some supply has no reachable destination able to absorb it."""

    def __init__(self, origin, count: int):
        self.origin = origin
        self.count = count
        super().__init__(f"{count} cars at {origin} cannot reach any open demand")


@dataclass(frozen=True)
class TransportInstance:
    origins: Sequence[Tuple[str, int]]
    destinations: Sequence[Tuple[str, int]]
    # costs[i][j] is None when j is unreachable from i
    costs: Sequence[Sequence[Optional[int]]]

    @property
    def supplies(self) -> List[int]:
        return [a for _, a in self.origins]

    @property
    def demands(self) -> List[int]:
        return [b for _, b in self.destinations]


@dataclass
class TransportSolution:
    flows: List[List[int]]
    objective: int
    # (row, col, count) sent over unreachable cells; only filled when strict=False
    unrouted: List[Tuple[int, int, int]] = field(default_factory=list)
    pivots: int = 0


def _add(a: Pair, b: Pair) -> Pair:
    return (a[0] + b[0], a[1] + b[1])


def _sub(a: Pair, b: Pair) -> Pair:
    return (a[0] - b[0], a[1] - b[1])


def _northwest_corner(supply: List[Pair], demand: List[Pair]) -> Dict[Cell, Pair]:
    rows, cols = list(supply), list(demand)
    m, n = len(rows), len(cols)
    x: Dict[Cell, Pair] = {}
    i = j = 0
    while True:
        amount = min(rows[i], cols[j])
        x[(i, j)] = amount
        rows[i] = _sub(rows[i], amount)
        cols[j] = _sub(cols[j], amount)
        if i == m - 1 and j == n - 1:
            return x
        if rows[i] == (0, 0) and i < m - 1:
            i += 1
        else:
            j += 1


def _duals(m: int, n: int, basis, cost) -> Tuple[List[int], List[int]]:
    by_row: Dict[int, List[int]] = {}
    by_col: Dict[int, List[int]] = {}
    for i, j in basis:
        by_row.setdefault(i, []).append(j)
        by_col.setdefault(j, []).append(i)
    u: List[Optional[int]] = [None] * m
    v: List[Optional[int]] = [None] * n
    u[0] = 0
    queue = deque([("r", 0)])
    while queue:
        kind, k = queue.popleft()
        if kind == "r":
            for j in by_row.get(k, ()):
                if v[j] is None:
                    v[j] = cost[k][j] - u[k]
                    queue.append(("c", j))
        else:
            for i in by_col.get(k, ()):
                if u[i] is None:
                    u[i] = cost[i][k] - v[k]
                    queue.append(("r", i))
    return u, v


def _tree_path(basis, start_row: int, end_col: int) -> List[Cell]:
    """Basic cells on the tree path from row ``start_row`` to column ``end_col``."""
    adj: Dict[Tuple[str, int], List[Tuple[str, int]]] = {}
    for i, j in basis:
        adj.setdefault(("r", i), []).append(("c", j))
        adj.setdefault(("c", j), []).append(("r", i))
    start, goal = ("r", start_row), ("c", end_col)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        for nxt in adj.get(node, ()):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    cells: List[Cell] = []
    node = goal
    while parent[node] is not None:
        prev = parent[node]
        a, b = (prev, node) if prev[0] == "r" else (node, prev)
        cells.append((a[1], b[1]))
        node = prev
    return cells[::-1]


def _modi(supplies: List[int], demands: List[int], cost: List[List[int]]):
    m, n = len(supplies), len(demands)
    supply = [(a, 1) for a in supplies]
    demand = [(b, 0) for b in demands]
    demand[-1] = (demands[-1], m)
    x = _northwest_corner(supply, demand)
    pivots = 0
    while True:
        u, v = _duals(m, n, x, cost)
        entering: Optional[Cell] = None
        best = 0
        for i in range(m):
            for j in range(n):
                if (i, j) in x:
                    continue
                d = cost[i][j] - u[i] - v[j]
                if d < best:
                    entering, best = (i, j), d
                    if pivots >= BLAND_AFTER:
                        break
            if entering is not None and pivots >= BLAND_AFTER:
                break
        if entering is None:
            return x, pivots

        # cycle: entering cell (+), then the tree path walked back from its column
        path = _tree_path(x, entering[0], entering[1])
        minus = path[-1::-2]
        plus = path[-2::-2]
        theta = min(x[c] for c in minus)
        leaving = min(c for c in minus if x[c] == theta)
        for c in plus:
            x[c] = _add(x[c], theta)
        for c in minus:
            x[c] = _sub(x[c], theta)
        del x[leaving]
        x[entering] = theta
        pivots += 1


def big_m_cost(inst: TransportInstance) -> int:
    finite = [c for row in inst.costs for c in row if c is not None]
    return (1 + max(finite, default=0)) * max(sum(inst.supplies), 1)


def solve_transportation(inst: TransportInstance, strict: bool = True) -> TransportSolution:
    """Minimum-cost integral flow meeting every supply and demand exactly.

    Unreachable cells get a big-M cost larger than any all-reachable plan.
    If the optimum still uses one, the instance is infeasible: with
    ``strict`` this raises :class:`InfeasibleTransport` naming the first
    blocked origin, otherwise the offending flow is moved to ``unrouted``.
    """
    supplies, demands = inst.supplies, inst.demands
    m, n = len(supplies), len(demands)
    if sum(supplies) != sum(demands):
        raise ValueError(f"unbalanced instance: supply {sum(supplies)} != demand {sum(demands)}")
    if min(supplies + demands, default=0) < 0:
        raise ValueError("supplies and demands must be non-negative")
    flows = [[0] * n for _ in range(m)]
    if m == 0 or n == 0:
        return TransportSolution(flows, 0)

    big = big_m_cost(inst)
    cost = [[big if c is None else c for c in row] for row in inst.costs]
    basis, pivots = _modi(supplies, demands, cost)
    for (i, j), (value, _) in basis.items():
        flows[i][j] = value

    unrouted = [
        (i, j, flows[i][j])
        for i in range(m)
        for j in range(n)
        if inst.costs[i][j] is None and flows[i][j] > 0
    ]
    if unrouted and strict:
        i, _, _ = unrouted[0]
        raise InfeasibleTransport(inst.origins[i][0], sum(c for r, _, c in unrouted if r == i))
    for i, j, _ in unrouted:
        flows[i][j] = 0
    objective = sum(
        inst.costs[i][j] * flows[i][j] for i in range(m) for j in range(n) if flows[i][j]
    )
    return TransportSolution(flows, objective, unrouted, pivots)


def dual_certificate(
    inst: TransportInstance, sol: TransportSolution
) -> Optional[Tuple[List[int], List[int]]]:
    """Potentials ``(u, v)`` proving ``sol`` optimal, or ``None`` if none exist.

    Requires ``u[i] + v[j] <= C[i][j]`` on every reachable cell, with
    equality where flow is positive. These are difference constraints on
    ``(u, -v)``, so Bellman-Ford either finds them or hits a negative cycle.
    """
    supplies, demands = inst.supplies, inst.demands
    m, n = len(supplies), len(demands)
    flows = sol.flows
    if len(flows) != m or any(len(row) != n for row in flows):
        return None
    if any(f < 0 for row in flows for f in row):
        return None
    if [sum(row) for row in flows] != supplies:
        return None
    if [sum(flows[i][j] for i in range(m)) for j in range(n)] != demands:
        return None

    # nodes 0..m-1 are u_i, m..m+n-1 are w_j = -v_j; edge (a, b, w) means x_b <= x_a + w
    edges = []
    for i in range(m):
        for j in range(n):
            c = inst.costs[i][j]
            if c is None:
                if flows[i][j] > 0:
                    return None
                continue
            edges.append((m + j, i, c))
            if flows[i][j] > 0:
                edges.append((i, m + j, -c))
    dist = [0] * (m + n)
    for _ in range(m + n + 1):
        changed = False
        for a, b, w in edges:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            return dist[:m], [-w for w in dist[m:]]
    return None


def verify_optimality(inst: TransportInstance, sol: TransportSolution) -> bool:
    return dual_certificate(inst, sol) is not None
