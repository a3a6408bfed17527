"""Labeled graphs, primary expansion and the vertex preorders.

A labeled graph carries one cyclic group per vertex (infinite cyclic or
Z/n).  After expansion every finite label is primary (prime power order)
and the transvection preorders <=, <=_s, <=_tau are available, together
with their equivalence classes, lower cones and the structural predicates
used by the decision procedures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Malformed graph input or a violated graph precondition."""


_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _prime_factors(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as (p, k) pairs."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class VertexGroupSpec:
    """A cyclic vertex group: Z, Z/n, or the primary form Z/p^k."""

    order: Optional[int]  # None for infinite cyclic
    prime: Optional[int] = None
    power: Optional[int] = None

    def __post_init__(self):
        if self.order is not None and self.order < 2:
            raise GraphError("finite vertex group needs order >= 2")
        if self.prime is not None:
            if self.order != self.prime ** self.power:
                raise GraphError("primary label inconsistent with order")

    @property
    def is_infinite(self) -> bool:
        return self.order is None

    @property
    def is_primary(self) -> bool:
        return self.prime is not None

    def __str__(self) -> str:
        return "Z" if self.order is None else f"Z/{self.order}"


Z = VertexGroupSpec(None)


def cyclic(n: int) -> VertexGroupSpec:
    return VertexGroupSpec(n)


def primary(p: int, k: int) -> VertexGroupSpec:
    return VertexGroupSpec(p ** k, p, k)


class LabeledGraph:
    """Finite simple graph with cyclic-group vertex labels.

    The vertex order (file order) is the fixed total order used by every
    canonical form downstream.  Instances are immutable.
    """

    def __init__(self, vertices: Sequence[tuple[str, VertexGroupSpec]],
                 edges: Iterable[tuple[str, str]]):
        names = [v for v, _ in vertices]
        if len(set(names)) != len(names):
            raise GraphError("duplicate vertex id")
        self.names: tuple[str, ...] = tuple(names)
        self.labels: tuple[VertexGroupSpec, ...] = tuple(s for _, s in vertices)
        self.index = {v: i for i, v in enumerate(names)}
        n = len(names)
        adj = [0] * n
        eset = set()
        for a, b in edges:
            if a not in self.index or b not in self.index:
                raise GraphError(f"undefined endpoint in edge {a} {b}")
            if a == b:
                raise GraphError(f"self-loop at {a}")
            i, j = self.index[a], self.index[b]
            eset.add((min(i, j), max(i, j)))
        for i, j in eset:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self.adj: tuple[int, ...] = tuple(adj)
        self.edges: frozenset[tuple[int, int]] = frozenset(eset)
        self.n = n
        self.full_mask = (1 << n) - 1

    # -- basic structure ---------------------------------------------------

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def vertex_set(self, ids: Iterable[str]) -> frozenset[int]:
        out = set()
        for v in ids:
            if v not in self.index:
                raise GraphError(f"unknown vertex {v}")
            out.add(self.index[v])
        return frozenset(out)

    def names_of(self, idxs: Iterable[int]) -> list[str]:
        return [self.names[i] for i in sorted(idxs)]

    def link(self, i: int) -> frozenset[int]:
        self._check(i)
        return frozenset(j for j in range(self.n) if self.adj[i] >> j & 1)

    def star(self, i: int) -> frozenset[int]:
        return self.link(i) | {i}

    def _check(self, i: int):
        if not 0 <= i < self.n:
            raise GraphError(f"unknown vertex index {i}")

    def is_complete(self) -> bool:
        return all(self.adj[i] | (1 << i) == self.full_mask for i in range(self.n))

    def is_expanded(self) -> bool:
        return all(s.is_infinite or s.is_primary for s in self.labels)

    def induced(self, X: Iterable[int]) -> "LabeledGraph":
        idxs = sorted(set(X))
        verts = [(self.names[i], self.labels[i]) for i in idxs]
        edges = [(self.names[i], self.names[j]) for i in idxs for j in idxs
                 if i < j and self.adjacent(i, j)]
        return LabeledGraph(verts, edges)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LabeledGraph)
                and self.names == other.names
                and self.labels == other.labels
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.names, self.labels, self.edges))

    def __repr__(self):
        return f"LabeledGraph({self.n} vertices, {len(self.edges)} edges)"

    # -- preorders ---------------------------------------------------------

    def leq(self, v: int, w: int) -> bool:
        """lk(v) contained in st(w)."""
        self._check(v)
        self._check(w)
        return self.adj[v] & ~(self.adj[w] | 1 << w) == 0

    def leq_s(self, v: int, w: int) -> bool:
        """st(v) contained in st(w)."""
        self._check(v)
        self._check(w)
        return (self.adj[v] | 1 << v) & ~(self.adj[w] | 1 << w) == 0

    def leq_tau(self, v: int, w: int) -> bool:
        """The dominated-transvection preorder (reflexive by convention)."""
        if not self.is_expanded():
            raise GraphError("leq_tau requires an expanded graph")
        self._check(v)
        self._check(w)
        if v == w:
            return True
        gv, gw = self.labels[v], self.labels[w]
        if gv.is_infinite:
            return self.leq(v, w)
        if gw.is_infinite or gv.prime != gw.prime:
            return False
        return self.leq_s(v, w)


# -- parsing ---------------------------------------------------------------

def parse_graph(text: str) -> LabeledGraph:
    """Parse the line-based graph file format."""
    vertices: list[tuple[str, VertexGroupSpec]] = []
    seen = set()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 3:
            name, label = parts[1], parts[2]
            if not _ID_RE.match(name):
                raise GraphError(f"line {lineno}: bad vertex id {name!r}")
            if name in seen:
                raise GraphError(f"line {lineno}: duplicate vertex {name}")
            seen.add(name)
            if label == "Z":
                spec = Z
            elif label.startswith("Z/"):
                try:
                    n = int(label[2:])
                except ValueError:
                    raise GraphError(f"line {lineno}: bad label {label!r}") from None
                if n < 2:
                    raise GraphError(f"line {lineno}: Z/{n} needs n >= 2")
                spec = cyclic(n)
            else:
                raise GraphError(f"line {lineno}: bad label {label!r}")
            vertices.append((name, spec))
        elif parts[0] == "edge" and len(parts) == 3:
            a, b = parts[1], parts[2]
            for x in (a, b):
                if x not in seen:
                    raise GraphError(f"line {lineno}: undefined endpoint {x}")
            if a == b:
                raise GraphError(f"line {lineno}: self-loop at {a}")
            edges.append((a, b))
        else:
            raise GraphError(f"line {lineno}: syntax error: {raw!r}")
    if not vertices:
        raise GraphError("graph has no vertices")
    return LabeledGraph(vertices, edges)


def expand(g: LabeledGraph) -> LabeledGraph:
    """Replace each Z/n vertex by the complete graph on its primary factors.

    New vertex ids are `<old>_p<p>k<k>` when n has several primary factors;
    a vertex whose order is already a prime power keeps its id.  All new
    vertices inherit the old vertex's edges and are mutually adjacent.
    """
    vertices: list[tuple[str, VertexGroupSpec]] = []
    groups: list[list[str]] = []  # replacement ids per old vertex
    for name, spec in zip(g.names, g.labels):
        if spec.is_infinite:
            vertices.append((name, Z))
            groups.append([name])
            continue
        factors = _prime_factors(spec.order)
        if len(factors) == 1:
            p, k = factors[0]
            vertices.append((name, primary(p, k)))
            groups.append([name])
        else:
            ids = []
            for p, k in factors:
                nid = f"{name}_p{p}k{k}"
                vertices.append((nid, primary(p, k)))
                ids.append(nid)
            groups.append(ids)
    edges = []
    for ids in groups:
        edges.extend((a, b) for i, a in enumerate(ids) for b in ids[i + 1:])
    for i, j in g.edges:
        edges.extend((a, b) for a in groups[i] for b in groups[j])
    return LabeledGraph(vertices, edges)


# -- tau classes and lower cones -------------------------------------------

FINITE_ABELIAN = "FiniteAbelian"
FREE_ABELIAN = "FreeAbelian"
FREE = "Free"


@dataclass(frozen=True)
class TauClassification:
    """Partition of V into ~_tau classes with the induced partial order."""

    classes: tuple[frozenset[int], ...]
    # leq[(i, j)] True iff class i <=_tau class j
    leq: dict[tuple[int, int], bool]
    class_type: tuple[tuple[str, int], ...]  # (kind, rank/size) per class

    def class_of(self, v: int) -> int:
        for i, c in enumerate(self.classes):
            if v in c:
                return i
        raise GraphError(f"vertex {v} not classified")

    def minimal_classes(self) -> list[int]:
        out = []
        for i in range(len(self.classes)):
            if all(i == j or not self.leq[(j, i)] for j in range(len(self.classes))):
                out.append(i)
        return out


def tau_classes(g: LabeledGraph) -> TauClassification:
    """~_tau classes, the induced order, and each class's group type."""
    if not g.is_expanded():
        raise GraphError("tau_classes requires an expanded graph")
    n = g.n
    rel = [[g.leq_tau(v, w) for w in range(n)] for v in range(n)]
    assigned = [-1] * n
    classes: list[frozenset[int]] = []
    for v in range(n):
        if assigned[v] >= 0:
            continue
        cls = {w for w in range(n) if rel[v][w] and rel[w][v]}
        for w in cls:
            assigned[w] = len(classes)
        classes.append(frozenset(cls))
    k = len(classes)
    # Class-level domination uses star containment uniformly: between
    # finite-order vertices that is leq_tau itself, and between classes
    # containing infinite-order vertices it is the star-preserving part of
    # the transvection preorder (the part labelled graph automorphisms and
    # the peeling machinery act through).
    def strong(v: int, w: int) -> bool:
        if g.labels[v].is_infinite:
            return g.leq_s(v, w)
        return rel[v][w]

    leq = {(i, j): i == j for i in range(k) for j in range(k)}
    for i in range(k):
        for j in range(k):
            if i != j and any(strong(v, w) for v in classes[i] for w in classes[j]):
                leq[(i, j)] = True
    for m in range(k):  # transitive closure
        for i in range(k):
            for j in range(k):
                if leq[(i, m)] and leq[(m, j)]:
                    leq[(i, j)] = True
    types = []
    for c in classes:
        members = sorted(c)
        finite = not g.labels[members[0]].is_infinite
        complete = all(g.adjacent(a, b) for a in members for b in members if a < b)
        edgeless = not any(g.adjacent(a, b) for a in members for b in members if a < b)
        if finite:
            types.append((FINITE_ABELIAN, len(members)))
        elif complete:
            types.append((FREE_ABELIAN, len(members)))
        elif edgeless:
            types.append((FREE, len(members)))
        else:
            raise GraphError("tau class neither complete nor edgeless")
    return TauClassification(tuple(classes), leq, tuple(types))


def is_lower_cone(g: LabeledGraph, X: frozenset[int]) -> bool:
    """True iff X is downward closed under <=_tau."""
    if any(v >= g.n or v < 0 for v in X):
        raise GraphError("vertex set not contained in V")
    for t in X:
        for s in range(g.n):
            if s not in X and g.leq_tau(s, t):
                return False
    return True


def lower_cone_L(g: LabeledGraph, M: frozenset[int]) -> frozenset[int]:
    """L_M: vertices whose star avoids M entirely."""
    mmask = 0
    for v in M:
        if v >= g.n:
            raise GraphError("vertex set not contained in V")
        mmask |= 1 << v
    return frozenset(v for v in range(g.n)
                     if (g.adj[v] | 1 << v) & mmask == 0)


def center_support(g: LabeledGraph) -> frozenset[int]:
    """Vertices whose star is all of V; nonempty iff the center is nontrivial."""
    return frozenset(v for v in range(g.n)
                     if g.adj[v] | 1 << v == g.full_mask)


def connected_components(g: LabeledGraph, X: Iterable[int]) -> list[frozenset[int]]:
    """Components of the induced subgraph on X, ordered by least vertex."""
    remaining = set(X)
    comps = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            v = frontier.pop()
            for w in remaining - comp:
                if g.adjacent(v, w):
                    comp.add(w)
                    frontier.append(w)
        comps.append(frozenset(comp))
        remaining -= comp
    return sorted(comps, key=min)


def direct_factor_decomposition(g: LabeledGraph) -> list[frozenset[int]]:
    """Finest splitting of V with complete adjacency between parts.

    These are the connected components of the complement graph; each part
    spans a cartesian direct factor of the graph product.
    """
    remaining = set(range(g.n))
    parts = []
    while remaining:
        seed = min(remaining)
        part = {seed}
        frontier = [seed]
        while frontier:
            v = frontier.pop()
            for w in remaining - part:
                if not g.adjacent(v, w):
                    part.add(w)
                    frontier.append(w)
        parts.append(frozenset(part))
        remaining -= part
    return sorted(parts, key=min)
