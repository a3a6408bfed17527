"""Generators of Aut(W_Gamma) and their action on normal words.

Four families: labelled graph automorphisms, factor automorphisms,
dominated transvections and partial conjugations.  The latter three
generate the finite-index subgroup whose coset representatives are the
labelled graph automorphisms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .graphs import GraphError, LabeledGraph, connected_components
from .words import NormalWord


class AutError(ValueError):
    """An invalid automorphism generator."""


@dataclass(frozen=True)
class LabelledGraphAut:
    perm: tuple[int, ...]  # perm[v] = image of vertex v


@dataclass(frozen=True)
class FactorAut:
    vertex: int
    m: int


@dataclass(frozen=True)
class Transvection:
    v: int
    w: int


@dataclass(frozen=True)
class PartialConj:
    v: int
    K: frozenset[int]


AutGen = Union[LabelledGraphAut, FactorAut, Transvection, PartialConj]


def validate_gen(g: LabeledGraph, gen: AutGen) -> tuple[bool, str]:
    """Check a generator's defining conditions; returns (ok, reason)."""
    if not g.is_expanded():
        raise GraphError("generators are defined on expanded graphs")
    if isinstance(gen, LabelledGraphAut):
        p = gen.perm
        if sorted(p) != list(range(g.n)):
            return False, "not a permutation of V"
        if any(g.labels[v] != g.labels[p[v]] for v in range(g.n)):
            return False, "labels not preserved"
        for i, j in g.edges:
            if not g.adjacent(p[i], p[j]):
                return False, "edges not preserved"
        return True, ""
    if isinstance(gen, FactorAut):
        v, m = gen.vertex, gen.m
        order = g.labels[v].order
        if order is None:
            if m not in (1, -1):
                return False, "m = +-1 required for an infinite cyclic factor"
        elif math.gcd(m, order) != 1:
            return False, f"gcd(m, {order}) != 1"
        return True, ""
    if isinstance(gen, Transvection):
        v, w = gen.v, gen.w
        if v == w:
            return False, "transvection needs distinct vertices"
        if not g.leq_tau(v, w):
            return False, "dominated transvection condition fails"
        return True, ""
    if isinstance(gen, PartialConj):
        v, K = gen.v, gen.K
        rest = set(range(g.n)) - g.star(v)
        comps = connected_components(g, rest)
        if K not in comps:
            return False, "K is not a component of the star complement"
        return True, ""
    raise AutError(f"unknown generator type {type(gen)!r}")


def _letter_image(g: LabeledGraph, gen: AutGen, v: int, e: int) -> NormalWord:
    if isinstance(gen, LabelledGraphAut):
        return NormalWord.letter(g, gen.perm[v], e)
    if isinstance(gen, FactorAut):
        if v == gen.vertex:
            return NormalWord.letter(g, v, gen.m * e)
        return NormalWord.letter(g, v, e)
    if isinstance(gen, Transvection):
        if v != gen.v:
            return NormalWord.letter(g, v, e)
        gv, gw = g.labels[gen.v], g.labels[gen.w]
        if gv.is_infinite:
            img = NormalWord.letter(g, gen.v) * NormalWord.letter(g, gen.w)
        else:
            q = gv.prime ** (gw.power - gv.power) if gw.power > gv.power else 1
            img = NormalWord.letter(g, gen.v) * NormalWord.letter(g, gen.w, q)
        return img ** e
    if isinstance(gen, PartialConj):
        if v in gen.K:
            c = NormalWord.letter(g, gen.v)
            return c * NormalWord.letter(g, v, e) * c.inverse()
        return NormalWord.letter(g, v, e)
    raise AutError(f"unknown generator type {type(gen)!r}")


def apply_gen(gen: AutGen, x: NormalWord) -> NormalWord:
    """Apply one generator letterwise and renormalize."""
    g = x.graph
    ok, reason = validate_gen(g, gen)
    if not ok:
        raise AutError(reason)
    out = NormalWord.identity(g)
    for v, e in x.letters:
        out = out * _letter_image(g, gen, v, e)
    return out


@dataclass(frozen=True)
class AutWord:
    """A composition of generators, applied right-to-left."""

    gens: tuple[AutGen, ...] = field(default_factory=tuple)

    def __call__(self, x: NormalWord) -> NormalWord:
        for gen in reversed(self.gens):
            x = apply_gen(gen, x)
        return x


def apply(gen_or_word: Union[AutGen, AutWord], x: NormalWord) -> NormalWord:
    if isinstance(gen_or_word, AutWord):
        return gen_or_word(x)
    return apply_gen(gen_or_word, x)


def enum_labelled_graph_autos(g: LabeledGraph,
                              max_vertices: int = 16) -> list[LabelledGraphAut]:
    """All label-preserving graph automorphisms, by backtracking.

    Deterministic order: lexicographic in the image tuple.
    """
    if not g.is_expanded():
        raise GraphError("enumeration is defined on expanded graphs")
    if g.n > max_vertices:
        raise GraphError(f"vertex bound exceeded ({g.n} > {max_vertices})")
    n = g.n
    degrees = [bin(g.adj[v]).count("1") for v in range(n)]
    out: list[LabelledGraphAut] = []
    image = [-1] * n
    used = [False] * n

    def backtrack(v: int):
        if v == n:
            out.append(LabelledGraphAut(tuple(image)))
            return
        for t in range(n):
            if used[t] or g.labels[v] != g.labels[t] or degrees[v] != degrees[t]:
                continue
            if any(g.adjacent(v, u) != g.adjacent(t, image[u])
                   for u in range(v)):
                continue
            image[v] = t
            used[t] = True
            backtrack(v + 1)
            used[t] = False
        image[v] = -1

    backtrack(0)
    return out


def valid_aut0_gens(g: LabeledGraph) -> list[AutGen]:
    """The enumerable parameter space of type 2-4 generators."""
    gens: list[AutGen] = []
    for v in range(g.n):
        order = g.labels[v].order
        if order is None:
            gens.append(FactorAut(v, -1))
        else:
            gens.extend(FactorAut(v, m) for m in range(2, order)
                        if math.gcd(m, order) == 1)
    for v in range(g.n):
        for w in range(g.n):
            if v != w and g.leq_tau(v, w):
                gens.append(Transvection(v, w))
    for v in range(g.n):
        rest = set(range(g.n)) - g.star(v)
        for K in connected_components(g, rest):
            gens.append(PartialConj(v, K))
    return gens


def random_aut0(g: LabeledGraph, length: int, seed: int) -> AutWord:
    """Seeded composition of `length` valid type 2-4 generators."""
    pool = valid_aut0_gens(g)
    if not pool:
        return AutWord()
    rng = random.Random(seed)
    return AutWord(tuple(rng.choice(pool) for _ in range(length)))
