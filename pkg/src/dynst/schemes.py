"""Brute-force online Steiner schemes over an explicit near-metric view.

Each scheme keeps a tree over the view and recomputes every choice by
scanning all vertex pairs. They serve as small-instance solvers and as the
baseline the oracle-based engines are compared against.

Ties are broken by the view's pair key (rounded distance, raw distance,
ids). Every tree edge carries an age; the heaviest friend of a replacement
is the path edge with the largest (rounded distance, age).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from dynst.changes import Change
from dynst.errors import (
    AlreadyTerminal,
    DisconnectedError,
    DomainError,
    EngineError,
    NotATerminal,
    NotInTree,
)
from dynst.oracle.generic import NearMetricView
from dynst.steiner.levels import LevelIndex

REL_TOL = 1e-9


def eta_for(eps: float) -> int:
    if not eps > 0:
        raise DomainError(f"eps {eps!r} must be positive")
    return 1 + math.ceil(1.0 / eps)


class SchemeTree:
    def __init__(self, view: NearMetricView):
        self.view = view
        self.adj: dict[int, dict[int, int]] = {}
        self.terminals: set[int] = set()
        self.weight = 0.0
        self._age = 0

    # -- structure --------------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return v in self.adj

    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def edges(self) -> list[tuple[int, int, float]]:
        return [(u, v, self.view.d(u, v)) for u in sorted(self.adj) for v in sorted(self.adj[u]) if u < v]

    def cost(self) -> float:
        return math.fsum(w for _, _, w in self.edges())

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.adj and v in self.adj[u]

    def age(self, u: int, v: int) -> int:
        return self.adj[u][v]

    def add_vertex(self, v: int) -> None:
        self.adj.setdefault(v, {})

    def add_edge(self, u: int, v: int) -> None:
        self._age += 1
        self.add_vertex(u)
        self.add_vertex(v)
        self.adj[u][v] = self.adj[v][u] = self._age
        self.weight += self.view.d(u, v)

    def remove_edge(self, u: int, v: int) -> None:
        del self.adj[u][v]
        del self.adj[v][u]
        self.weight -= self.view.d(u, v)

    def remove_vertex(self, v: int) -> list[int]:
        nbrs = sorted(self.adj[v])
        for u in nbrs:
            self.remove_edge(u, v)
        del self.adj[v]
        if not self.adj:
            self.weight = 0.0
        return nbrs

    def path(self, u: int, v: int) -> list[tuple[int, int]]:
        if u not in self.adj or v not in self.adj:
            raise NotInTree(f"{u} or {v} is not in the tree")
        parent = {u: u}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y in self.adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        if v not in parent:
            raise NotInTree(f"{u} and {v} are not connected")
        out = []
        while v != u:
            out.append((parent[v], v))
            v = parent[v]
        return out[::-1]

    def heaviest_on_path(self, u: int, v: int) -> tuple[int, int]:
        return max(self.path(u, v), key=lambda e: (self.view.d(*e), self.age(*e)))

    def component(self, v: int, keep=None) -> set[int]:
        """Vertices reachable from v over edges accepted by keep(a, b)."""
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen and (keep is None or keep(x, y)):
                    seen.add(y)
                    stack.append(y)
        return seen


@dataclass(frozen=True)
class Classification:
    is_friend: bool
    is_heavy: bool
    is_efficient: bool
    is_good: bool


def is_efficient(d_e: float, d_et: float, theta: float) -> bool:
    return (1.0 + theta) * d_e < d_et * (1.0 - REL_TOL)


def is_heavy(d_et: float, tree_weight: float, n: int, theta: float) -> bool:
    return d_et > theta * tree_weight / n


def classify_replacement(st: SchemeTree, e: tuple[int, int], et: tuple[int, int],
                         theta: float, c: float = 1.0) -> Classification:
    a, b = e
    if a not in st or b not in st:
        raise NotInTree(f"pair {e} has an endpoint outside the tree")
    if not st.has_edge(*et):
        raise NotInTree(f"{et} is not a tree edge")
    path = st.path(a, b)
    friend = any({x, y} == set(et) for x, y in path)
    d_e, d_et = st.view.d(a, b), st.view.d(*et)
    eff = is_efficient(d_e, d_et, theta)
    heavy = is_heavy(d_et, st.weight, st.view.n, theta)
    good = eff and is_heavy(d_et, st.weight, st.view.n, theta / c)
    return Classification(friend, heavy, eff, good)


def replacement_violations(st: SchemeTree, theta: float, c: float | None = None) -> list[tuple]:
    """Every replacement pair that is theta-efficient, or (theta, c)-good
    when c is given. An empty list means the tree survives the check."""
    view = st.view
    out = []
    verts = st.vertices()
    weight = st.cost()
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if st.has_edge(a, b):
                continue
            d_e = view.d(a, b)
            for x, y in st.path(a, b):
                d_et = view.d(x, y)
                if not is_efficient(d_e, d_et, theta):
                    continue
                if c is not None and not is_heavy(d_et, weight, view.n, theta / c):
                    continue
                out.append(((a, b), (x, y)))
    return out


class _Scheme:
    def __init__(self, view: NearMetricView):
        self.view = view
        self.tree = SchemeTree(view)
        self.replacements = 0

    @property
    def terminals(self) -> set[int]:
        return self.tree.terminals

    def cost(self) -> float:
        return self.tree.cost()

    def tree_edges(self) -> list[tuple[int, int, float]]:
        return self.tree.edges()

    def _level(self, u: int, v: int) -> int:
        return self.levels.level(self.view.d(u, v))

    def _nearest_outside(self, v: int, inside: set[int]) -> int | None:
        best = None
        for x in self.tree.adj:
            if x not in inside and (best is None or self.view.key(v, x) < self.view.key(v, best)):
                best = x
        return best

    def _find_replacements(self, v: int, j: int, log: list[Change], collect: set[int] | None) -> None:
        tree = self.tree
        cap = 10 * self.view.n * (1 + len(self.levels.levels()))
        for _ in range(cap):
            comp = tree.component(v, lambda a, b: self._level(a, b) <= j)
            t = self._nearest_outside(v, comp)
            if t is None or self._level(v, t) > j:
                return
            x, y = tree.heaviest_on_path(v, t)
            old = (min(x, y), max(x, y), self.view.d(x, y))
            tree.remove_edge(x, y)
            tree.add_edge(v, t)
            self.replacements += 1
            log.append(Change("replace", v, t, self.view.d(v, t), j, old))
            if collect is not None:
                collect.update((x, y))
        raise EngineError(f"replacement search at level {j} did not settle")

    # -- vertex removal shared by the decremental and fully dynamic schemes

    def _remove_eta(self, x: int, log: list[Change]) -> None:
        tree = self.tree
        if x in tree.terminals or x not in tree or tree.degree(x) > self.eta:
            return
        nbrs = tree.remove_vertex(x)
        log.append(Change("drop", x))
        self._reconnect(nbrs, log)
        for y in nbrs:
            self._remove_eta(y, log)

    def _reconnect(self, roots: list[int], log: list[Change]) -> None:
        if len(roots) < 2:
            return
        tree = self.tree
        comp_of = {}
        for i, r in enumerate(roots):
            for u in tree.component(r):
                comp_of[u] = i
        verts = sorted(comp_of)
        cand = []
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                if comp_of[a] != comp_of[b]:
                    cand.append((self.view.key(a, b), a, b))
        cand.sort()
        parent = list(range(len(roots)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        joined = 0
        for _, a, b in cand:
            ra, rb = find(comp_of[a]), find(comp_of[b])
            if ra != rb:
                parent[ra] = rb
                tree.add_edge(a, b)
                log.append(Change("reconnect", a, b, self.view.d(a, b)))
                joined += 1
                if joined == len(roots) - 1:
                    break

    def _unmark(self, v: int, log: list[Change]) -> None:
        if v not in self.tree.terminals:
            raise NotATerminal(f"{v} is not a terminal")
        self.tree.terminals.discard(v)
        log.append(Change("unmark", v))
        self._remove_eta(v, log)

    def _connect_nearest(self, v: int, log: list[Change]) -> None:
        tree = self.tree
        if not tree.adj:
            tree.add_vertex(v)
            log.append(Change("connect", v))
            return
        u = self._nearest_outside(v, set())
        if not math.isfinite(self.view.d(v, u)):
            raise EngineError(f"{v} cannot reach the tree")
        tree.add_edge(v, u)
        log.append(Change("connect", v, u, self.view.d(v, u), self._level(v, u)))


def _mst_by_key(view: NearMetricView, points) -> list[tuple[int, int]]:
    pts = sorted(set(points))
    cand = sorted((view.key(a, b), a, b) for i, a in enumerate(pts) for b in pts[i + 1:])
    parent = {p: p for p in pts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = []
    for k, a, b in cand:
        ra, rb = find(a), find(b)
        if ra != rb:
            if not math.isfinite(k[1]):
                break
            parent[ra] = rb
            out.append((a, b))
    return out


class ReferenceDecremental(_Scheme):
    """Starts from the MST of the terminals and only removes terminals."""

    def __init__(self, view: NearMetricView, terminals, eps: float):
        super().__init__(view)
        self.eps = eps
        self.eta = eta_for(eps)
        self.levels = LevelIndex(1.0 + (view.tau or 1.0))
        s = sorted(set(terminals))
        for v in s:
            self.tree.add_vertex(v)
        for a, b in _mst_by_key(view, s):
            self.tree.add_edge(a, b)
        if len(s) > 1 and len(self.tree.edges()) != len(s) - 1:
            raise DisconnectedError("terminals are not connected")
        self.tree.terminals.update(s)

    def remove(self, v: int) -> list[Change]:
        log: list[Change] = []
        self._unmark(v, log)
        return log


class ReferenceIncremental(_Scheme):
    """Terminal additions only; replacements restricted to a level window."""

    def __init__(self, view: NearMetricView, tau: float, levels: LevelIndex | None = None):
        super().__init__(view)
        if view.tau is None or abs(view.tau - tau / 2.0) > 1e-12:
            raise DomainError("incremental scheme needs a view rounded to powers of 1 + tau/2")
        self.tau = tau
        self.sigma = tau / 2.0
        self.levels = levels or LevelIndex(1.0 + self.sigma)
        self._floor = None if levels is None else levels.lo
        self.history = [0.0]

    def window(self) -> range:
        """Levels lvl_bottom(T_M)..lvl(T_M) for the heaviest earlier tree T_M."""
        tm = max(self.history)
        if tm <= 0:
            return range(0)
        lv = self.levels
        lo = lv.bottom_level(tm, self.tau, self.view.mu, self.view.n)
        if self._floor is not None:
            lo = max(lo, self._floor)
        return range(lo, lv.tree_level(tm) + 1)

    def add(self, v: int) -> list[Change]:
        tree = self.tree
        if v in tree.terminals:
            raise AlreadyTerminal(f"{v} is already a terminal")
        log: list[Change] = []
        self._connect_nearest(v, log)
        tree.terminals.add(v)
        window = self.window()
        if window:
            # below the lightest pair at v no replacement can fire
            floor = min(self._level(v, x) for x in tree.adj if x != v)
            for j in window:
                if j >= floor:
                    self._find_replacements(v, j, log, None)
        self.history.append(self.cost())
        return log


class ReferenceFullyDynamic(_Scheme):
    """Additions sweep every level for replacements, removals cascade."""

    def __init__(self, view: NearMetricView, tau: float, eps: float, levels: LevelIndex | None = None):
        super().__init__(view)
        if view.tau is None or abs(view.tau - tau) > 1e-12:
            raise DomainError("fully dynamic scheme needs a view rounded to powers of 1 + tau")
        self.tau = tau
        self.eps = eps
        self.eta = eta_for(eps)
        self.levels = levels or LevelIndex(1.0 + tau)

    def _sweep(self, v: int) -> range:
        tree = self.tree
        lo = min(self._level(v, x) for x in tree.adj if x != v)
        hi = max(self._level(a, b) for a, b, _ in tree.edges())
        return range(lo, hi + 1)

    def add(self, v: int) -> list[Change]:
        tree = self.tree
        if v in tree.terminals:
            raise AlreadyTerminal(f"{v} is already a terminal")
        log: list[Change] = []
        tree.terminals.add(v)
        if v in tree:
            log.append(Change("mark", v))
            return log
        self._connect_nearest(v, log)
        if len(tree.adj) > 1:
            dropped: set[int] = set()
            for j in self._sweep(v):
                self._find_replacements(v, j, log, dropped)
            for x in sorted(dropped):
                self._remove_eta(x, log)
        return log

    def remove(self, v: int) -> list[Change]:
        log: list[Change] = []
        self._unmark(v, log)
        return log
