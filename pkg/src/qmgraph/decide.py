"""Existence decisions for Aut-invariant quasimorphisms on graph products.

decide() classifies a labeled graph into one of six statuses and, when the
answer is constructive, produces a witness specification (lower cone, free
partition, evaluator kind) that the evaluator module accepts as-is.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import evaluators as ev
from .graphs import (GraphError, LabeledGraph, connected_components, expand,
                     is_lower_cone, tau_classes, FREE, FREE_ABELIAN)
from .words import NormalWord, parse_word

FINITE = "Finite"
ABELIAN = "Abelian"
PROVABLY_NONE = "ProvablyNone"
EXISTS_CONSTRUCTIVE = "ExistsConstructive"
EXISTS_NONCONSTRUCTIVE = "ExistsNonConstructive"
UNKNOWN = "Unknown"

DEFAULT_Z = (1, 2, 3)


@dataclass(frozen=True)
class WitnessSpec:
    cone: frozenset[int]
    partition: tuple[frozenset[int], frozenset[int]]
    kind: ev.Kind


@dataclass
class Verdict:
    status: str
    witness: Optional[WitnessSpec] = None
    trace: list[str] = field(default_factory=list)
    graph: Optional[LabeledGraph] = None  # the expanded graph the
    # witness indices refer to


def _names(g: LabeledGraph, X) -> str:
    return "{" + ",".join(g.names_of(X)) + "}"


def _single_z(g: LabeledGraph, S: frozenset[int]) -> bool:
    return len(S) == 1 and g.labels[next(iter(S))].is_infinite


def _single_z2(g: LabeledGraph, S: frozenset[int]) -> bool:
    return len(S) == 1 and g.labels[next(iter(S))].order == 2


def _sorted_sets(sets) -> list[frozenset[int]]:
    return sorted(sets, key=lambda s: sorted(s))


def _kind_for_pair(g: LabeledGraph, A: frozenset[int], B: frozenset[int],
                   z=DEFAULT_Z) -> Optional[tuple]:
    """Pick an evaluator kind for the free pair (A, B), or None if only the
    non-constructive Z * Z base would remain.  Returns (A, B, kind) with A
    swapped to the infinite-cyclic side when WeightedZ applies."""
    az, bz = _single_z(g, A), _single_z(g, B)
    if az and bz:
        return None
    if az or bz:
        if bz:
            A, B = B, A
        return (A, B, ev.WeightedZ(z))
    if ev.labeled_isomorphic(g, A, B):
        if _single_z2(g, A):
            return None
        return (A, B, ev.SumBothSides(z))
    side = "A" if not _single_z2(g, A) else "B"
    return (A, B, ev.Code(side, z))


def _try_pairs(g: LabeledGraph, factors, trace: list[str],
               rule: str) -> Optional[WitnessSpec]:
    """Search ordered factor pairs for a constructive, lower-cone spec."""
    factors = _sorted_sets(factors)
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            picked = _kind_for_pair(g, factors[i], factors[j])
            if picked is None:
                continue
            A, B, kind = picked
            cone = A | B
            if not is_lower_cone(g, cone):
                continue
            try:
                ev.build(g, cone, (A, B), kind)
            except ev.BuildError:
                continue
            trace.append(f"{rule}: cone {_names(g, cone)} splits as "
                         f"{_names(g, A)} * {_names(g, B)} "
                         f"({type(kind).__name__})")
            return WitnessSpec(cone, (A, B), kind)
    return None


def _minimal_class_in(g: LabeledGraph, X: frozenset[int]) -> frozenset[int]:
    """Lexicographically least minimal ~_tau class of the induced graph on X,
    mapped back to original vertex indices."""
    idxs = sorted(X)
    h = g.induced(X)
    tc = tau_classes(h)
    mins = [frozenset(idxs[v] for v in tc.classes[i])
            for i in tc.minimal_classes()]
    return _sorted_sets(mins)[0]


def _pair_from_claim(g: LabeledGraph, factors, trace: list[str],
                     rule: str) -> Optional[WitnessSpec]:
    """Turn a claim-style factor list (all finite labels) into a witness.

    Picks two factors that are not both Z/2, refines each to a minimal
    class, and falls back to the single-vertex-versus-whole-factor split
    when both refined classes are Z/2."""
    factors = _sorted_sets(factors)
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            Fa, Fb = factors[i], factors[j]
            if _single_z2(g, Fa) and _single_z2(g, Fb):
                continue
            A = Fa if len(Fa) == 1 else _minimal_class_in(g, Fa)
            B = Fb if len(Fb) == 1 else _minimal_class_in(g, Fb)
            if _single_z2(g, A) and _single_z2(g, B):
                # one factor has a second vertex; use it whole as side B
                if len(Fb) > 1:
                    cand = [(A, Fb, ev.Code("B", DEFAULT_Z))]
                else:
                    cand = [(B, Fa, ev.Code("B", DEFAULT_Z))]
            else:
                picked = _kind_for_pair(g, A, B)
                cand = [picked] if picked else []
            for A2, B2, kind in cand:
                cone = A2 | B2
                if not is_lower_cone(g, cone):
                    continue
                try:
                    ev.build(g, cone, (A2, B2), kind)
                except ev.BuildError:
                    continue
                trace.append(f"{rule}: cone {_names(g, cone)} splits as "
                             f"{_names(g, A2)} * {_names(g, B2)} "
                             f"({type(kind).__name__})")
                return WitnessSpec(cone, (A2, B2), kind)
    return None


# -- free products (disconnected expanded graph) ----------------------------

def _decide_free_product(g: LabeledGraph, trace: list[str]) -> Verdict:
    comps = connected_components(g, range(g.n))
    k = len(comps)
    trace.append(f"free product of {k} freely indecomposable factors: "
                 + ", ".join(_names(g, c) for c in comps))
    zc = [c for c in comps if _single_z(g, c)]
    if all(_single_z2(g, c) for c in comps):
        if k == 2:
            trace.append("two Z/2 factors: the group is D-infinity, which "
                         "admits no unbounded quasimorphism")
            return Verdict(PROVABLY_NONE, None, trace, g)
        trace.append(f"free product of {k} >= 3 copies of Z/2: open case")
        return Verdict(UNKNOWN, None, trace, g)
    if len(zc) > 2:
        trace.append(f"{len(zc)} > 2 infinite cyclic factors: "
                     "existence hypothesis fails; open case")
        return Verdict(UNKNOWN, None, trace, g)
    spec = _try_pairs(g, comps, trace, "factor pair")
    if spec is not None:
        return Verdict(EXISTS_CONSTRUCTIVE, spec, trace, g)
    trace.append("no constructive factor pair (only Z * Z available); "
                 "existence holds non-constructively")
    return Verdict(EXISTS_NONCONSTRUCTIVE, None, trace, g)


# -- graph products of finite abelian groups (connected) --------------------

def _decide_finite_connected(g: LabeledGraph, trace: list[str]) -> Verdict:
    X = frozenset(range(g.n))
    peeled: list[str] = []
    zk_sizes: list[int] = []
    while X:
        idxs = sorted(X)
        h = g.induced(X)
        back = {hv: idxs[hv] for hv in range(h.n)}
        if h.is_complete():
            peeled.append("finite")
            trace.append(f"{_names(g, X)} is complete: finite abelian factor")
            X = frozenset()
            break
        full = [v for v in range(h.n)
                if h.adj[v] | 1 << v == h.full_mask]
        if full:
            tc = tau_classes(h)
            cls = tc.class_of(full[0])
            M = frozenset(back[v] for v in tc.classes[cls])
            peeled.append("finite")
            trace.append(f"full-star class {_names(g, M)} peeled as a "
                         "finite abelian direct factor")
            X = X - M
            continue
        tc = tau_classes(h)
        mins = _sorted_sets(frozenset(back[v] for v in tc.classes[i])
                            for i in tc.minimal_classes())
        M = mins[0]
        mstar = set(M)
        for v in M:
            mstar |= {back[w] for w in
                      range(h.n) if h.adjacent(idxs.index(v), w)}
        LM = frozenset(v for v in X if v not in mstar)
        comps = connected_components(g, LM)
        factors = [M] + comps
        trace.append(f"minimal class {_names(g, M)} with "
                     f"L_M = {_names(g, LM)}")
        if not (_single_z2(g, M) and all(_single_z2(g, c) for c in comps)):
            spec = _pair_from_claim(g, factors, trace, "claim cone")
            if spec is not None:
                return Verdict(EXISTS_CONSTRUCTIVE, spec, trace, g)
            trace.append("no claim pair verified as a lower cone")
            return Verdict(UNKNOWN, None, trace, g)
        # M = {x} and every component of L_M is a single Z/2 vertex
        rest = X - (M | LM)
        pivot = None
        for y in sorted(LM):
            bad = [z for z in sorted(rest)
                   if not g.adjacent(z, y)]
            if bad:
                pivot = (y, bad[0])
                break
        if pivot is not None:
            y, z = pivot
            Ly = frozenset(v for v in X if v != y and not g.adjacent(v, y))
            trace.append(f"pivot vertex {g.names[y]}: "
                         f"L_y = {_names(g, Ly)} contains an edge")
            spec = _pair_from_claim(g, [frozenset({y})]
                                    + connected_components(g, Ly),
                                    trace, "pivot cone")
            if spec is not None:
                return Verdict(EXISTS_CONSTRUCTIVE, spec, trace, g)
            trace.append("no pivot pair verified as a lower cone")
            return Verdict(UNKNOWN, None, trace, g)
        size = 1 + len(LM)
        zk_sizes.append(size)
        trace.append(f"{_names(g, M | LM)} spans a direct Z_{size} factor "
                     "(free product of Z/2's commuting with the rest)")
        X = X - (M | LM)
    if any(k >= 3 for k in zk_sizes):
        trace.append("decomposition contains a Z_k factor with k >= 3: "
                     "open case")
        return Verdict(UNKNOWN, None, trace, g)
    if zk_sizes:
        trace.append("group is (D-infinity)^k x finite abelian: "
                     "no unbounded quasimorphism exists")
        return Verdict(PROVABLY_NONE, None, trace, g)
    trace.append("group is finite abelian")
    return Verdict(FINITE, None, trace, g)


# -- right-angled Artin groups ----------------------------------------------

def decide_raag(graph: LabeledGraph) -> Verdict:
    """Decision procedure specialised to all-Z labels."""
    g = expand(graph)
    if any(not s.is_infinite for s in g.labels):
        raise GraphError("decide_raag requires all labels infinite cyclic")
    trace: list[str] = []
    if g.n == 0 or g.is_complete():
        trace.append("complete graph: free abelian group")
        return Verdict(ABELIAN, None, trace, g)
    tc = tau_classes(g)
    free_classes = [i for i, (kind, size) in enumerate(tc.class_type)
                    if kind == FREE and size >= 2]
    if not free_classes:
        verdict = _raag_abelian_classes(g, trace)
        if verdict is not None:
            return verdict
    else:
        for cone, comps in find_invariant_cones(g):
            spec = _try_pairs(g, comps, trace, "invariant cone pair")
            if spec is not None:
                return Verdict(EXISTS_CONSTRUCTIVE, spec, trace, g)
        minimal_f2 = [i for i in tc.minimal_classes()
                      if tc.class_type[i] == (FREE, 2)
                      and is_lower_cone(g, tc.classes[i])]
        if minimal_f2:
            M = tc.classes[minimal_f2[0]]
            trace.append(f"minimal class {_names(g, M)} spans F_2; "
                         "existence holds but the F_2 base is "
                         "non-constructive here")
            return Verdict(EXISTS_NONCONSTRUCTIVE, None, trace, g)
        if find_invariant_cones(g):
            trace.append("an invariant lower cone with a valid free split "
                         "exists; non-constructive")
            return Verdict(EXISTS_NONCONSTRUCTIVE, None, trace, g)
    trace.append("no applicable construction; open case")
    return Verdict(UNKNOWN, None, trace, g)


def _raag_abelian_classes(g: LabeledGraph,
                          trace: list[str]) -> Optional[Verdict]:
    """All ~_tau classes free abelian: the iterated minimal-pair search."""
    trace.append("every ~_tau class is free abelian")
    X = frozenset(range(g.n))
    f2_seen = False
    while X:
        idxs = sorted(X)
        h = g.induced(X)
        if h.is_complete():
            break
        back = {hv: idxs[hv] for hv in range(h.n)}
        tc = tau_classes(h)
        mins = _sorted_sets(frozenset(back[v] for v in tc.classes[i])
                            for i in tc.minimal_classes())
        progressed = False
        for M in mins:
            mstar = set(M)
            for v in M:
                mstar |= {back[w] for w in range(h.n)
                          if h.adjacent(idxs.index(v), w)}
            LM = frozenset(v for v in X if v not in mstar)
            if not LM:
                continue
            l_classes = _sorted_sets(
                frozenset(back[v] for v in tc.classes[i])
                for i in range(len(tc.classes))
                if all(back[v] in LM for v in tc.classes[i])
                and not any(tc.leq[(j, i)] for j in range(len(tc.classes))
                            if j != i and all(back[v] in LM
                                              for v in tc.classes[j])))
            for N in l_classes:
                if len(M) == 1 and len(N) == 1:
                    if is_lower_cone(g, M | N):
                        f2_seen = True
                    continue
                picked = _kind_for_pair(g, M, N)
                if picked is None:
                    continue
                A, B, kind = picked
                cone = A | B
                if not is_lower_cone(g, cone):
                    continue
                try:
                    ev.build(g, cone, (A, B), kind)
                except ev.BuildError:
                    continue
                trace.append(f"minimal pair cone {_names(g, cone)}: "
                             f"Z^{len(A)} * Z^{len(B)} "
                             f"({type(kind).__name__})")
                return Verdict(EXISTS_CONSTRUCTIVE,
                               WitnessSpec(cone, (A, B), kind), trace, g)
            progressed = True
        if not progressed:
            # every minimal class commutes with the rest; peel it
            X = X - mins[0]
            continue
        break
    if f2_seen:
        trace.append("only Z * Z minimal pairs available; existence holds "
                     "non-constructively")
        return Verdict(EXISTS_NONCONSTRUCTIVE, None, trace, g)
    return None


# -- invariant lower cones (sufficient condition) ----------------------------

def find_invariant_cones(g: LabeledGraph,
                         max_candidates: int = 1 << 20):
    """Lower cones invariant under every labelled graph automorphism whose
    induced graph splits as a free product meeting the existence
    hypotheses (>= 2 factors, at most two infinite cyclic, not all Z/2).

    Returns (cone, components) pairs ordered by cone size."""
    if not g.is_expanded():
        raise GraphError("find_invariant_cones requires an expanded graph")
    tc = tau_classes(g)
    m = len(tc.classes)
    if 1 << m > max_candidates:
        raise GraphError("too many ~_tau classes to enumerate cones")
    lgas = None
    out = []
    for bits in range(1, 1 << m):
        chosen = [i for i in range(m) if bits >> i & 1]
        if not all(bits >> j & 1 for i in chosen for j in range(m)
                   if j != i and tc.leq[(j, i)]):
            continue
        cone = frozenset(v for i in chosen for v in tc.classes[i])
        if not is_lower_cone(g, cone):
            continue
        comps = connected_components(g, cone)
        if len(comps) < 2:
            continue
        if sum(1 for c in comps if _single_z(g, c)) > 2:
            continue
        if all(_single_z2(g, c) for c in comps):
            continue
        if lgas is None:
            from .autos import enum_labelled_graph_autos
            lgas = enum_labelled_graph_autos(g)
        if any(frozenset(s.perm[v] for v in cone) != cone for s in lgas):
            continue
        out.append((cone, comps))
    out.sort(key=lambda p: (len(p[0]), sorted(p[0])))
    return out


# -- top-level dispatch ------------------------------------------------------

def decide(graph: LabeledGraph) -> Verdict:
    """Classify the graph product and produce a witness when constructive."""
    g = expand(graph)
    trace: list[str] = []
    if g is not graph and (g.n != graph.n or g.names != graph.names):
        trace.append("expanded vertex groups into primary factors")
    if g.n == 0 or g.is_complete():
        if all(not s.is_infinite for s in g.labels):
            trace.append("complete graph, all labels finite: finite group")
            return Verdict(FINITE, None, trace, g)
        trace.append("complete graph: infinite abelian group")
        return Verdict(ABELIAN, None, trace, g)
    if all(s.is_infinite for s in g.labels):
        trace.append("all labels infinite cyclic: right-angled Artin case")
        v = decide_raag(g)
        v.trace = trace + v.trace
        return v
    if len(connected_components(g, range(g.n))) > 1:
        return _decide_free_product(g, trace)
    if all(not s.is_infinite for s in g.labels):
        trace.append("connected graph of finite (primary) groups")
        return _decide_finite_connected(g, trace)
    trace.append("connected graph with mixed labels: invariant-cone search")
    cones = find_invariant_cones(g)
    for cone, comps in cones:
        spec = _try_pairs(g, comps, trace, "invariant cone pair")
        if spec is not None:
            return Verdict(EXISTS_CONSTRUCTIVE, spec, trace, g)
    if cones:
        trace.append("an invariant lower cone exists but only with a "
                     "non-constructive split")
        return Verdict(EXISTS_NONCONSTRUCTIVE, None, trace, g)
    trace.append("no invariant lower cone found (sufficient condition "
                 "only); open case")
    return Verdict(UNKNOWN, None, trace, g)


# -- witness words ------------------------------------------------------------

def _run_values(g: LabeledGraph, S: frozenset[int]) -> tuple[NormalWord,
                                                             NormalWord]:
    """Two distinct nontrivial one-letter blocks supported in S."""
    a = min(S)
    if g.labels[a].order is None or g.labels[a].order > 2:
        return (NormalWord.letter(g, a, 1), NormalWord.letter(g, a, 2))
    others = sorted(S - {a})
    if not others:
        raise GraphError("side cannot produce two distinct blocks")
    return (NormalWord.letter(g, a, 1), NormalWord.letter(g, others[0], 1))


def witness(graph: LabeledGraph, verdict: Verdict) -> NormalWord:
    """A word on which the verdict's evaluator is provably unbounded.

    The word realises the generic pattern z exactly once per period in the
    relevant code while its inverse's code avoids z entirely, so the
    homogenised value is exactly 1.
    """
    if verdict.status != EXISTS_CONSTRUCTIVE or verdict.witness is None:
        raise GraphError("witness requires an ExistsConstructive verdict")
    g = verdict.graph if verdict.graph is not None else expand(graph)
    spec = verdict.witness
    A, B = spec.partition
    kind = spec.kind
    z = list(kind.z)
    if len(z) % 2 == 1:
        z = z + [max(z) + 1]
    if isinstance(kind, ev.WeightedZ):
        a = min(A)
        t = NormalWord.letter(g, min(B), 1)
        w = NormalWord.identity(g)
        sign = 1
        for run in z:
            w = w * NormalWord.letter(g, a, sign * run) * t
            sign = -sign
        return w
    S = A if (isinstance(kind, ev.SumBothSides) or kind.side == "A") else B
    T = B if S is A else A
    X, Y = _run_values(g, S)
    t = NormalWord.letter(g, min(T), 1)
    w = NormalWord.identity(g)
    block = X
    for run in z:
        for _ in range(run):
            w = w * block * t
        block = Y if block is X else X
    return w
