"""Unique geodesic representatives of the cosets of a subgroup H <= Z^n, per pattern.

For one pattern the exponent vectors are ordered by (coset rows modulo H,
weight, coordinates); the minimal ones form V.  Across patterns with the
same transversal part, representatives of one coset are compared by weight,
and equal weights are resolved by pattern order, leaving U.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .intset import (AffineMap, Constraint, EQ, GT, PolyhedralSet, affine_image, affine_preimage, product,
                     project)
from .lattice import lattice_basis, rank
from .patterns import Pattern, PatternSpace


@dataclass(frozen=True)
class SubgroupH:
    """Subgroup of Z^n given by linearly independent basis vectors."""

    n: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for b in self.basis:
            if len(b) != self.n:
                raise ValueError("basis vector of wrong length")
        if self.basis and rank([list(b) for b in self.basis]) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def spanned_by(cls, n: int, vectors: Iterable[Sequence[int]]) -> "SubgroupH":
        vecs = [list(v) for v in vectors if any(v)]
        return cls(n, tuple(tuple(b) for b in lattice_basis(vecs, n)))

    @classmethod
    def trivial(cls, n: int) -> "SubgroupH":
        return cls(n, ())

    @property
    def d(self) -> int:
        return len(self.basis)


def _block_vec(dim: int, parts: Sequence[tuple[int, Sequence[int]]]) -> tuple[int, ...]:
    out = [0] * dim
    for off, vec in parts:
        for i, v in enumerate(vec):
            out[off + i] += v
    return tuple(out)


def theta_sets(n: int, H: SubgroupH) -> tuple[PolyhedralSet, PolyhedralSet, PolyhedralSet]:
    """Pairs (a, b) in Z^{n+1} x Z^{n+1} with a, b in one H-coset (first n coordinates);
    equal resp. larger weight (last coordinate) for the second and third sets."""
    d = H.d
    dim = 2 * n + 2 + d
    cons = []
    for i in range(n):
        u = [0] * dim
        u[i] += 1
        u[i + n + 1] -= 1
        for j, h in enumerate(H.basis):
            u[2 * n + 2 + j] -= h[i]
        cons.append(Constraint(EQ, tuple(u), 0))
    theta0 = project(PolyhedralSet.from_constraints(dim, cons), list(range(2 * n + 2)))
    w = [0] * (2 * n + 2)
    w[n] = 1
    w[2 * n + 1] = -1
    theta_eq = theta0.intersect_constraints([Constraint(EQ, tuple(w), 0)])
    theta_gt = theta0.intersect_constraints([Constraint(GT, tuple(w), 0)])
    return theta0, theta_eq, theta_gt


class CosetReps:
    """V and U sets for one subgroup H, computed lazily per pattern."""

    def __init__(self, space: PatternSpace, H: SubgroupH):
        if H.n != space.n:
            raise ValueError("subgroup lives in the wrong rank")
        self.space = space
        self.H = H
        self._V: dict[Pattern, PolyhedralSet] = {}
        self._U: dict[Pattern, PolyhedralSet] = {}
        self._img: dict[Pattern, PolyhedralSet] = {}

    def order_rows(self, p: Pattern) -> list[tuple[int, ...]]:
        """Comparison rows after the coset rows: weight, then each coordinate."""
        m = self.space.m(p)
        rep = self.space.affine_rep(p)
        return [rep.wA] + [tuple(int(i == j) for j in range(m)) for i in range(m)]

    def order_relation(self, p: Pattern) -> PolyhedralSet:
        """Pairs (v1, v2) of exponent vectors with v1 strictly below v2."""
        sp = self.space
        m, n, d = sp.m(p), sp.n, self.H.d
        dim = 2 * m + d
        rep = sp.affine_rep(p)
        base = []
        for k in range(n):
            hk = [-h[k] for h in self.H.basis]
            base.append(Constraint(EQ, _block_vec(dim, [(0, rep.A[k]), (m, [-a for a in rep.A[k]]), (2 * m, hk)]), 0))
        for i in range(2 * m):
            base.append(Constraint(GT, _block_vec(dim, [(i, [1])]), -1))
        rows = self.order_rows(p)
        disjuncts = []
        for i, row in enumerate(rows):
            cons = list(base)
            for prev in rows[:i]:
                cons.append(Constraint(EQ, _block_vec(dim, [(0, prev), (m, [-a for a in prev])]), 0))
            cons.append(Constraint(GT, _block_vec(dim, [(0, [-a for a in row]), (m, row)]), 0))
            disjuncts.append(PolyhedralSet.from_constraints(dim, cons))
        rel = PolyhedralSet(dim, [b for x in disjuncts for b in x.disjuncts])
        return project(rel, list(range(2 * m)))

    def minimal_reps(self, p: Pattern) -> PolyhedralSet:
        if p not in self._V:
            m = self.space.m(p)
            beaten = project(self.order_relation(p), list(range(m, 2 * m)))
            self._V[p] = (self.space.domain(p) - beaten).pruned()
        return self._V[p]

    def evaluation_map(self, p: Pattern) -> AffineMap:
        rep = self.space.affine_rep(p)
        return AffineMap(list(rep.A) + [rep.wA], list(rep.B) + [rep.wB], self.space.m(p))

    def image(self, p: Pattern) -> PolyhedralSet:
        if p not in self._img:
            self._img[p] = affine_image(self.minimal_reps(p), self.evaluation_map(p)).pruned()
        return self._img[p]

    @cached_property
    def thetas(self) -> tuple[PolyhedralSet, PolyhedralSet, PolyhedralSet]:
        return theta_sets(self.space.n, self.H)

    def duplicates(self, p: Pattern, mu: Pattern, kind: str) -> PolyhedralSet:
        """Members of V^p sharing an H-coset with a member of V^mu of equal ('eq') or smaller ('gt') weight."""
        theta = self.thetas[1] if kind == "eq" else self.thetas[2]
        n = self.space.n
        pairs = product(self.image(p), self.image(mu)) & theta
        first = project(pairs, list(range(n + 1)))
        return affine_preimage(first, self.evaluation_map(p))

    def unique_reps(self, p: Pattern) -> PolyhedralSet:
        if p in self._U:
            return self._U[p]
        pats = self.space.patterns
        pos = pats.index(p)
        out = self.minimal_reps(p)
        for j, mu in enumerate(pats):
            if mu == p or mu.t != p.t or out.is_empty():
                continue
            out = out - self.duplicates(p, mu, "gt")
            if j < pos:
                out = out - self.duplicates(p, mu, "eq")
        self._U[p] = out.pruned()
        return self._U[p]

    def remove_duplicates(self, p: Pattern) -> PolyhedralSet:
        return self.unique_reps(p)

    def debug_dump(self) -> dict:
        return {str(p.letters): self._U[p].to_json() for p in self.space.patterns if p in self._U}


def order_relation(space: PatternSpace, p: Pattern, H: SubgroupH) -> PolyhedralSet:
    return CosetReps(space, H).order_relation(p)


def minimal_reps(space: PatternSpace, p: Pattern, H: SubgroupH) -> PolyhedralSet:
    return CosetReps(space, H).minimal_reps(p)


def remove_duplicates(space: PatternSpace, p: Pattern, H: SubgroupH) -> PolyhedralSet:
    return CosetReps(space, H).unique_reps(p)
