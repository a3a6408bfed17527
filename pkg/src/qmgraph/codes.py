"""Run-length codes of free-product words and the counting quasimorphisms.

For g in W_A * W_B the A-tuple is the sequence of A-blocks of its reduced
form, the A-code its run-length sequence, and theta_z counts maximal
disjoint occurrences of a pattern z inside the code.  The quasimorphism is
f_z(g) = theta_z(g) - theta_z(g^-1); weighted Z-codes handle an infinite
cyclic side by summing maximal same-sign exponent runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .graphs import LabeledGraph
from .words import NormalWord, WordError, syllables

Partition = tuple[frozenset[int], frozenset[int]]


def side_tuple(x: NormalWord, partition: Partition, side: str) -> list[NormalWord]:
    """The blocks of the requested side, in order."""
    if side not in ("A", "B"):
        raise WordError(f"side must be A or B, got {side!r}")
    return [blk for s, blk in syllables(x, partition) if s == side]


def code(x: NormalWord, partition: Partition, side: str) -> tuple[int, ...]:
    """Run-length sequence of the side tuple under block equality."""
    blocks = side_tuple(x, partition, side)
    runs: list[int] = []
    prev = None
    for blk in blocks:
        if blk == prev:
            runs[-1] += 1
        else:
            runs.append(1)
            prev = blk
    return tuple(runs)


def weighted_z_code(x: NormalWord, partition: Partition) -> tuple[int, ...]:
    """Weighted Z-code: |sum| of each maximal same-sign run of Z-exponents."""
    A, B = partition
    g = x.graph
    if len(A) != 1 or not g.labels[next(iter(A))].is_infinite:
        raise WordError("weighted Z-code needs side A = one Z-labeled vertex")
    blocks = side_tuple(x, partition, "A")
    exps = [blk.letters[0][1] for blk in blocks]
    out: list[int] = []
    cur = 0
    for e in exps:
        if cur and (e > 0) == (cur > 0):
            cur += e
        else:
            if cur:
                out.append(abs(cur))
            cur = e
    if cur:
        out.append(abs(cur))
    return tuple(out)


def is_generic(z: Sequence[int]) -> bool:
    """True iff reverse(z) does not occur among |z| adjacent entries of z^2."""
    z = tuple(z)
    k = len(z)
    rev = z[::-1]
    doubled = z + z
    return all(doubled[i:i + k] != rev for i in range(k + 1))


def count_disjoint(seq: Sequence[int], z: Sequence[int]) -> int:
    """Greedy left-to-right count of disjoint consecutive occurrences of z.

    Earliest-end greedy is optimal for disjoint interval selection.
    """
    z = tuple(z)
    k = len(z)
    if k == 0:
        raise ValueError("empty pattern")
    count = 0
    i = 0
    while i + k <= len(seq):
        if tuple(seq[i:i + k]) == z:
            count += 1
            i += k
        else:
            i += 1
    return count


def theta(x: NormalWord, partition: Partition, side: str,
          z: Sequence[int]) -> int:
    return count_disjoint(code(x, partition, side), z)


def code_qm(x: NormalWord, partition: Partition, side: str,
            z: Sequence[int]) -> int:
    return theta(x, partition, side, z) - theta(x.inverse(), partition, side, z)


def weighted_theta(x: NormalWord, partition: Partition, z: Sequence[int]) -> int:
    return count_disjoint(weighted_z_code(x, partition), z)


def weighted_code_qm(x: NormalWord, partition: Partition,
                     z: Sequence[int]) -> int:
    return weighted_theta(x, partition, z) - weighted_theta(
        x.inverse(), partition, z)


# -- homogenisation -----------------------------------------------------------

@dataclass(frozen=True)
class HomogValue:
    """A homogenised value; exact when a stable period was detected."""

    value: Fraction
    exact: bool
    error_bound: Fraction = Fraction(0)

    def __post_init__(self):
        if self.exact and self.error_bound != 0:
            raise ValueError("exact values carry no error bound")


def homogenise(f: Callable[[NormalWord], int], x: NormalWord,
               max_n: int = 64, max_period: int = 8,
               defect_estimate: Fraction = Fraction(0)) -> HomogValue:
    """Limit of f(x^n)/n, detected through eventually periodic increments.

    Scans s_n = f(x^n) for n = 1..max_n.  If for some period p <= max_period
    the differences s_{n+p} - s_n are constant c from some offset n0 <=
    max_n/2 onward, the limit is exactly c/p.  Otherwise returns the
    approximation s_max/max_n with error bound defect_estimate/max_n.
    """
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    if max_period < 1:
        raise ValueError("max_period must be >= 1")

    def detect(s, n):
        for p in range(1, max_period + 1):
            if n - p < 1:
                break
            diffs = [s[m + p] - s[m] for m in range(1, n - p + 1)]
            c = diffs[-1]
            n0 = len(diffs)
            while n0 > 0 and diffs[n0 - 1] == c:
                n0 -= 1
            # diffs[n0:] constant; corresponds to offset n0 + 1 in s
            if n0 + 1 <= n / 2:
                return HomogValue(Fraction(c, p), True)
        return None

    # a period only counts once its constant run fills half a window of
    # at least this many powers; scanning more cannot change the limit
    floor = min(max_n, max(8, 2 * (max_period + 1)))
    s = [0]  # s[0] for the identity power
    xn = NormalWord.identity(x.graph)
    for n in range(1, max_n + 1):
        xn = xn * x
        s.append(f(xn))
        if n >= floor:
            got = detect(s, n)
            if got is not None:
                return got
    return HomogValue(Fraction(s[max_n], max_n), False,
                      Fraction(defect_estimate) / max_n)
