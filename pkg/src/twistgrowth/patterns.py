"""Patterned words over the extended generating set and their affine descriptions.

A pattern is a word y_{i1}..y_{ik} over the extended generators outside
Z^n.  A patterned word interleaves blocks x_1^{v_1}..x_r^{v_r} of the
Z^n-generators with the letters of its pattern, and is encoded by its
exponent vector in N^{blocks * r}.

The literal construction uses every Y-word of length at most D and one
block per gap.  The reduced working set (default) applies three rewrites
that keep a geodesic word for every group element:

* the identity and any Z^n-generator that is a cheaper-or-equal
  nonnegative combination of the others are dropped from X;
* when conjugation by every y permutes X preserving weights, all X-letters
  can be pushed to the front, so one leading block suffices;
* in that case a pattern p is dropped when p = x0 . q for a kept pattern q
  with x0 a nonnegative X-combination and  w_X(x0) + w(q) <= w(p).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Sequence

from .intset import PolyhedralSet
from .lattice import matmul, matvec
from .vagroup import GroupDescription, GroupElement

DEFAULT_PATTERN_CAP = 10 ** 5


class PatternCapError(RuntimeError):
    """The literal pattern set would exceed the configured cap."""


@dataclass(frozen=True)
class Pattern:
    letters: tuple[int, ...]
    element: GroupElement
    weight: int

    @property
    def t(self) -> int:
        return self.element.t

    @property
    def x(self) -> tuple[int, ...]:
        return self.element.x

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class PatternRep:
    """Affine data for tau_t(eval(w)) = (A v + B) s and weight(w) = wA . v + wB."""

    A: tuple[tuple[int, ...], ...]
    B: tuple[int, ...]
    s: int
    wA: tuple[int, ...]
    wB: int

    def rows(self) -> list[tuple[int, ...]]:
        """Coset rows followed by the weight row."""
        return list(self.A) + [self.wA]


def _x_combination_weights(xs: Sequence[tuple[GroupElement, int]], budget: int) -> dict[tuple[int, ...], int]:
    """Least weight of a nonnegative combination of ``xs`` for every reachable vector within budget."""
    if not xs:
        return {}
    n = len(xs[0][0].x)
    start = (0,) * n
    dist = {start: 0}
    heap = [(0, start)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for g, w in xs:
            nd = d + w
            if nd > budget:
                continue
            u = tuple(a + b for a, b in zip(v, g.x))
            if nd < dist.get(u, nd + 1):
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


class PatternSpace:
    """X, Y, the pattern list and the per-pattern exponent spaces."""

    def __init__(self, group: GroupDescription, *, reduce: bool = True, order: str = "forward",
                 cap: int = DEFAULT_PATTERN_CAP):
        if order not in ("forward", "reverse"):
            raise ValueError("order must be 'forward' or 'reverse'")
        self.group = group
        self.n = group.n
        self.D = group.D
        S = group.extended_generators
        self.S = S
        self.X_all = [(g, w) for g, w in S if g.t == 0 and w > 0]
        self.Y = [(g, w) for g, w in S if g.t != 0]
        total = sum(len(self.Y) ** k for k in range(self.D + 1))
        self.literal_size = total
        self.reduced = reduce
        if reduce:
            self.X = self._prune_x(self.X_all)
            self.first_block = self._conjugation_closed()
        else:
            if total > cap:
                raise PatternCapError(f"{total} patterns exceed the cap {cap}")
            self.X = list(self.X_all)
            self.first_block = False
        self.r = len(self.X)
        self._cap = cap
        working = self._dominance_pruned() if reduce and self.first_block else self.all_patterns()
        if order == "reverse":
            working = working[::-1]
        self.order = order
        self.patterns: list[Pattern] = working

    # ------------------------------------------------------------ construction

    def _pattern(self, letters: tuple[int, ...]) -> Pattern:
        g = self.group.product(self.Y[i][0] for i in letters)
        return Pattern(letters, g, sum(self.Y[i][1] for i in letters))

    def all_patterns(self) -> list[Pattern]:
        """Every Y-word of length <= D, by length then lexicographically."""
        out = []
        for k in range(self.D + 1):
            for letters in itertools.product(range(len(self.Y)), repeat=k):
                out.append(self._pattern(letters))
        return out

    def _prune_x(self, xs):
        keep = list(xs)
        for g, w in sorted(xs, key=lambda p: (-p[1], p[0])):
            others = [p for p in keep if p[0] != g]
            reach = _x_combination_weights(others, w)
            if reach.get(g.x, w + 1) <= w:
                keep = others
        return sorted(keep, key=lambda p: (p[1], p[0]))

    def _conjugation_closed(self) -> bool:
        xw = {g.x: w for g, w in self.X}
        for y, _ in self.Y:
            T = self.group.conjugate_matrix(y)
            for g, w in self.X:
                if xw.get(tuple(matvec(T, g.x))) != w:
                    return False
        return True

    def _dominance_pruned(self) -> list[Pattern]:
        if self.literal_size > self._cap:
            raise PatternCapError(f"{self.literal_size} patterns exceed the cap {self._cap}")
        pats = sorted(self.all_patterns(), key=lambda p: (p.weight, len(p), p.letters))
        budget = max((p.weight for p in pats), default=0)
        reach = _x_combination_weights(self.X, budget)
        kept: list[Pattern] = []
        for p in pats:
            dominated = False
            for q in kept:
                if q.t != p.t or q.weight > p.weight:
                    continue
                x0 = tuple(a - b for a, b in zip(p.x, q.x))
                wx = reach.get(x0)
                if wx is not None and wx + q.weight <= p.weight:
                    dominated = True
                    break
            if not dominated:
                kept.append(p)
        return sorted(kept, key=lambda p: (len(p), p.letters))

    # ------------------------------------------------------------ exponent spaces

    def blocks(self, p: Pattern) -> int:
        return 1 if self.first_block else len(p) + 1

    def m(self, p: Pattern) -> int:
        return self.blocks(p) * self.r

    def domain(self, p: Pattern) -> PolyhedralSet:
        return PolyhedralSet.orthant(self.m(p))

    def index(self, p: Pattern) -> int:
        return self.patterns.index(p)

    def delta(self) -> list[list[int]]:
        """n x r matrix whose columns are the X-generators."""
        return [[g.x[i] for g, _ in self.X] for i in range(self.n)]

    def affine_rep(self, p: Pattern, t: int = 0) -> PatternRep:
        grp = self.group
        Tt = grp.conj_t[t]
        delta = self.delta()
        blocks = [matmul(Tt, delta)]
        acc = Tt
        for i in p.letters[: self.blocks(p) - 1]:
            acc = matmul(acc, grp.conjugate_matrix(self.Y[i][0]))
            blocks.append(matmul(acc, delta))
        A = tuple(tuple(v for blk in blocks for v in blk[i]) for i in range(self.n))
        tt = GroupElement((0,) * self.n, t)
        conj = grp.multiply(grp.multiply(tt, p.element), grp.invert(tt))
        wA = tuple(w for _ in range(self.blocks(p)) for _, w in self.X)
        return PatternRep(A, conj.x, conj.t, wA, p.weight)

    def eval_patterned_word(self, p: Pattern, v: Sequence[int]) -> GroupElement:
        if len(v) != self.m(p):
            raise ValueError(f"exponent vector of length {len(v)}, expected {self.m(p)}")
        if any(e < 0 for e in v):
            raise ValueError("exponents must be nonnegative")
        grp = self.group
        r = self.r

        def block(b: int) -> GroupElement:
            out = grp.one
            for j, (g, _) in enumerate(self.X):
                for _ in range(v[b * r + j]):
                    out = grp.multiply(out, g)
            return out

        if self.first_block:
            return grp.product([block(0)] + [self.Y[i][0] for i in p.letters])
        parts = []
        for b in range(len(p) + 1):
            parts.append(block(b))
            if b < len(p):
                parts.append(self.Y[p.letters[b]][0])
        return grp.product(parts)

    def word_weight(self, p: Pattern, v: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.affine_rep_weight(p), v)) + p.weight

    def affine_rep_weight(self, p: Pattern) -> tuple[int, ...]:
        return tuple(w for _ in range(self.blocks(p)) for _, w in self.X)

    def summary(self) -> dict:
        return {
            "X": [[list(g.x), w] for g, w in self.X],
            "Y": [[list(g.x), self.group.transversal[g.t], w] for g, w in self.Y],
            "literal_patterns": self.literal_size,
            "patterns": len(self.patterns),
            "one_block": self.first_block,
        }


def build_pattern_space(group: GroupDescription, *, reduce: bool = True, order: str = "forward",
                        cap: int = DEFAULT_PATTERN_CAP) -> PatternSpace:
    return PatternSpace(group, reduce=reduce, order=order, cap=cap)
