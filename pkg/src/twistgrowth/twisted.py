"""Twisted conjugacy growth series.

Inside the coset Z^n s, the class of g meets a union of cosets of
H_s = Im(I - T_s Phi), one for each transversal element t whose twist
t g phi(t)^-1 lands in Z^n s.  Every H_s-coset has a unique geodesic
representative among the patterned words (``cosetreps``).  A class is then
counted once through the representative that is least under the key
(weight, pattern position, exponent vector), taken over every coset the
class meets.

The ``"tuples"`` method keeps permissible tuples of patterns and a
within-tuple tie-break instead.  It is exact when the index is 1; for larger
index it may count one class through several tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .cosetreps import CosetReps, SubgroupH
from .genfunc import WeightForm, cumulative, series_of_language
from .intset import Constraint, EQ, GT, PolyhedralSet, embed, product, project
from .lattice import matmul, matvec
from .patterns import DEFAULT_PATTERN_CAP, Pattern, PatternSpace
from .ratfun import RationalSeries
from .vagroup import EndoData, GroupDescription, GroupElement

METHODS = ("canonical", "tuples")
INJECTIVITY_BOX = 2


class InvariantBreach(RuntimeError):
    """A computed series violates a property every growth series has."""


def check_cumulative(series: RationalSeries, terms: int) -> list[int]:
    """Expand and insist on nonnegative, nondecreasing coefficients."""
    coeffs = series.expand(terms)
    for k, c in enumerate(coeffs):
        if c < 0 or (k and c < coeffs[k - 1]):
            raise InvariantBreach(f"coefficient {k} is {c} after {coeffs[:k]}")
    return coeffs


def twist(group: GroupDescription, endo: EndoData, t: int, g: GroupElement) -> GroupElement:
    """t g phi(t)^-1 for the transversal element of index t."""
    tt = GroupElement((0,) * group.n, t)
    return group.multiply(group.multiply(tt, g), group.invert(group.apply_endo(endo, tt)))


def twist_subgroups(group: GroupDescription, endo: EndoData) -> list[SubgroupH]:
    """H_t = Im(I - T_t Phi) for every transversal index t."""
    n = group.n
    out = []
    for T in group.conj_t:
        M = matmul(T, [list(r) for r in endo.Phi])
        cols = [[int(i == j) - M[i][j] for i in range(n)] for j in range(n)]
        out.append(SubgroupH.spanned_by(n, cols))
    return out


def _link_constraints(space: PatternSpace, p1: Pattern, pj: Pattern, tj: int, shift: Sequence[int],
                      H: SubgroupH, dim: int, off1: int, offj: int, lam: int) -> list[Constraint]:
    """A^pj vj + B^pj - T_tj (A^p1 v1 + B^p1) - shift in H, with the lambda block at ``lam``."""
    grp = space.group
    r1, rj = space.affine_rep(p1), space.affine_rep(pj)
    T = grp.conj_t[tj]
    TA = matmul(T, [list(row) for row in r1.A])
    TB = matvec(T, r1.B)
    cons = []
    for i in range(space.n):
        u = [0] * dim
        for k, a in enumerate(rj.A[i]):
            u[offj + k] += a
        for k, a in enumerate(TA[i]):
            u[off1 + k] -= a
        for k, h in enumerate(H.basis):
            u[lam + k] -= h[i]
        cons.append(Constraint(EQ, tuple(u), TB[i] + shift[i] - rj.B[i]))
    return cons


def _lex_leq(dim: int, off1: int, offj: int, m: int) -> PolyhedralSet:
    """v1 <= vj lexicographically, both of length m."""
    def diff(k: int) -> tuple[int, ...]:
        u = [0] * dim
        u[offj + k] += 1
        u[off1 + k] -= 1
        return tuple(u)

    parts = [PolyhedralSet.from_constraints(dim, [Constraint(EQ, diff(k), 0) for k in range(m)])]
    for i in range(m):
        cons = [Constraint(EQ, diff(k), 0) for k in range(i)] + [Constraint(GT, diff(i), 0)]
        parts.append(PolyhedralSet.from_constraints(dim, cons))
    return PolyhedralSet(dim, [b for p in parts for b in p.disjuncts])


@dataclass(frozen=True)
class TwistedResult:
    series: RationalSeries
    method: str
    tuples: int
    patterns: int
    languages: tuple[tuple[str, PolyhedralSet], ...] = ()

    def to_json(self, terms: int) -> dict:
        return {
            "series": self.series.to_json(),
            "coefficients": self.series.expand(terms),
            "method": self.method,
            "tuples": self.tuples,
            "patterns": self.patterns,
        }


class TwistedPipeline:
    """Shared pattern space, twist subgroups and coset representatives for one (group, endo)."""

    def __init__(self, group: GroupDescription, endo: EndoData | str, *, reduce: bool = True,
                 order: str = "forward", cap: int = DEFAULT_PATTERN_CAP, seed: int = 0):
        self.group = group
        self.endo = group.endo(endo) if isinstance(endo, str) else endo
        self.space = PatternSpace(group, reduce=reduce, order=order, cap=cap)
        self.H = twist_subgroups(group, self.endo)
        self.seed = seed
        self._reps: dict[SubgroupH, CosetReps] = {}

    def reps_for(self, H: SubgroupH) -> CosetReps:
        if H not in self._reps:
            self._reps[H] = CosetReps(self.space, H)
        return self._reps[H]

    def U(self, p: Pattern) -> PolyhedralSet:
        return self.reps_for(self.H[p.t]).unique_reps(p)

    def weight_form(self, p: Pattern) -> WeightForm:
        rep = self.space.affine_rep(p)
        return WeightForm(rep.wA, rep.wB)

    def twisted_target(self, tj: int, p: Pattern) -> GroupElement:
        """t_j t_p phi(t_j)^-1; its transversal part is where the class of p's coset lands."""
        return twist(self.group, self.endo, tj, GroupElement((0,) * self.group.n, p.t))

    # ------------------------------------------------------------ canonical representatives

    def _partner_set(self, p1: Pattern, tj: int) -> PolyhedralSet:
        """v1 in N^{m1} whose class piece through t_j has a representative not below v1."""
        sp = self.space
        target = self.twisted_target(tj, p1)
        H = self.H[target.t]
        m1 = sp.m(p1)
        pos1 = sp.index(p1)
        out = PolyhedralSet.empty(m1)
        for pj in sp.patterns:
            if pj.t != target.t:
                continue
            Uj = self.U(pj)
            if Uj.is_empty():
                continue
            mj = sp.m(pj)
            dim = m1 + mj + H.d
            posj = sp.index(pj)
            link = _link_constraints(sp, p1, pj, tj, target.x, H, dim, 0, m1, m1 + mj)
            w1, wj = self.weight_form(p1), self.weight_form(pj)
            wrow = [0] * dim
            for k, a in enumerate(w1.A):
                wrow[k] -= a
            for k, a in enumerate(wj.A):
                wrow[m1 + k] += a
            gap = w1.B - wj.B
            # wj - w1 = wrow . z - gap
            base = embed(Uj, dim, list(range(m1, m1 + mj))).intersect_constraints(link)
            if pos1 < posj:
                rel = base.intersect_constraints([Constraint(GT, tuple(wrow), gap - 1)])
            elif pos1 > posj:
                rel = base.intersect_constraints([Constraint(GT, tuple(wrow), gap)])
            else:
                strict = base.intersect_constraints([Constraint(GT, tuple(wrow), gap)])
                tie = base.intersect_constraints([Constraint(EQ, tuple(wrow), gap)]) & _lex_leq(dim, 0, m1, m1)
                rel = strict | tie
            out = out | project(rel, list(range(m1)))
        return out

    def canonical_language(self, p1: Pattern) -> PolyhedralSet:
        L = self.U(p1)
        for tj in range(1, self.group.D):
            if L.is_empty():
                break
            L = (L & self._partner_set(p1, tj)).pruned()
        return L

    def canonical(self) -> TwistedResult:
        parts = []
        for p in self.space.patterns:
            L = self.canonical_language(p)
            if not L.is_empty():
                parts.append((str(p.letters), L, self.weight_form(p)))
        sphere = series_of_language([(L, w) for _, L, w in parts], seed=self.seed)
        return TwistedResult(cumulative(sphere), "canonical", len(parts), len(self.space.patterns),
                             tuple((k, L) for k, L, _ in parts))

    # ------------------------------------------------------------ permissible tuples

    def permissible_tuples(self) -> list[tuple[Pattern, ...]]:
        sp = self.space
        D = self.group.D
        choices = []
        for p1 in sp.patterns:
            per = [[p1]]
            for tj in range(1, D):
                target = self.twisted_target(tj, p1).t
                per.append([q for q in sp.patterns if q.t == target])
            choices.extend(itertools.product(*per))
        return [tuple(c) for c in choices]

    def reduce_permutations(self, R: Sequence[tuple[Pattern, ...]]) -> list[tuple[Pattern, ...]]:
        pos = {p: i for i, p in enumerate(self.space.patterns)}
        best: dict[tuple[int, ...], tuple[Pattern, ...]] = {}
        for tup in R:
            key = tuple(sorted(pos[p] for p in tup))
            if key not in best or [pos[p] for p in tup] < [pos[p] for p in best[key]]:
                best[key] = tup
        return sorted(best.values(), key=lambda tup: [pos[p] for p in tup])

    def class_tuple_set(self, tup: tuple[Pattern, ...]) -> tuple[PolyhedralSet, list[int]]:
        """Tuples of coset representatives linked by twisted conjugation; returns the set and block offsets."""
        sp = self.space
        ms = [sp.m(p) for p in tup]
        offs = [sum(ms[:j]) for j in range(len(tup))]
        total = sum(ms)
        Hs = [self.H[self.twisted_target(j, tup[0]).t] for j in range(len(tup))]
        lam_offs = [total + sum(h.d for h in Hs[1:j]) for j in range(len(tup))]
        dim = total + sum(h.d for h in Hs[1:])
        cur = PolyhedralSet.universe(0)
        for p in tup:
            cur = product(cur, self.U(p))
        cur = product(cur, PolyhedralSet.universe(dim - total))
        link = []
        for j in range(1, len(tup)):
            target = self.twisted_target(j, tup[0])
            link += _link_constraints(sp, tup[0], tup[j], j, target.x, Hs[j], dim, 0, offs[j], lam_offs[j])
        return project(cur.intersect_constraints(link), list(range(total))).pruned(), offs

    def minimal_weight_language(self, tup: tuple[Pattern, ...], C: PolyhedralSet,
                                offs: Sequence[int]) -> list[tuple[PolyhedralSet, WeightForm]]:
        total = C.dim
        forms = [self.weight_form(p) for p in tup]

        def diff(i: int, j: int) -> tuple[tuple[int, ...], int]:
            # weight_j - weight_i = u . z + c
            u = [0] * total
            for k, a in enumerate(forms[j].A):
                u[offs[j] + k] += a
            for k, a in enumerate(forms[i].A):
                u[offs[i] + k] -= a
            return tuple(u), forms[j].B - forms[i].B

        out = []
        for i, p in enumerate(tup):
            cons = []
            for j in range(len(tup)):
                if j == i:
                    continue
                u, c = diff(i, j)
                cons.append(Constraint(GT, u, -c if j < i else -c - 1))
            sel = project(C.intersect_constraints(cons), list(range(offs[i], offs[i] + self.space.m(p))))
            if not sel.is_empty():
                out.append((sel, forms[i]))
        return out

    def shared_components(self, tup: tuple[Pattern, ...], C: PolyhedralSet, offs: Sequence[int],
                          box: int = INJECTIVITY_BOX) -> list[tuple[Pattern, tuple[int, ...]]]:
        """Component words carried by two distinct members of C with entries <= box."""
        seen: dict[tuple[Pattern, tuple[int, ...]], tuple[int, ...]] = {}
        clashes = []
        for z in itertools.product(range(box + 1), repeat=C.dim):
            if not C.contains(z):
                continue
            for j, p in enumerate(tup):
                key = (p, z[offs[j]:offs[j] + self.space.m(p)])
                if seen.setdefault(key, z) != z:
                    clashes.append(key)
        return clashes

    def tuples(self, strict: bool = True) -> TwistedResult:
        R0 = self.reduce_permutations(self.permissible_tuples())
        parts = []
        for tup in R0:
            C, offs = self.class_tuple_set(tup)
            if C.is_empty():
                continue
            if strict:
                clashes = self.shared_components(tup, C, offs)
                if clashes:
                    p, v = clashes[0]
                    raise InvariantBreach(f"projection not injective: word {p.letters}{list(v)} "
                                          f"occurs in two tuples of C{[p.letters for p in tup]}")
            parts.extend(self.minimal_weight_language(tup, C, offs))
        sphere = series_of_language(parts, seed=self.seed)
        return TwistedResult(cumulative(sphere), "tuples", len(R0), len(self.space.patterns))


def twisted_growth(group: GroupDescription, endo: EndoData | str, *, method: str = "canonical",
                   reduce: bool = True, order: str = "forward", cap: int = DEFAULT_PATTERN_CAP,
                   seed: int = 0) -> TwistedResult:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    pipe = TwistedPipeline(group, endo, reduce=reduce, order=order, cap=cap, seed=seed)
    return pipe.canonical() if method == "canonical" else pipe.tuples()


def twisted_growth_series(group: GroupDescription, endo: EndoData | str, **kwargs) -> RationalSeries:
    """Cumulative twisted conjugacy growth series: coefficient r counts classes of weight <= r."""
    return twisted_growth(group, endo, **kwargs).series
