"""Rational generating functions of polyhedral sets under affine weights.

For each disjoint basic piece the equalities and congruences are absorbed
into a lattice coset x = x0 + L u, the remaining inequalities cut out a
rational polyhedron Q in u-space, and Q is homogenized to the cone
K = {(u, s) : G u >= h s, s >= 0}.  Integer points of Q are the points of K
at height s = 1.  K is split into half-open simplicial cones (pulling
triangulation plus a generic interior direction), and each simplicial cone
is counted through the integer points of its fundamental parallelepiped.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .intset import CONG, EQ, GT, BasicSet, Constraint, PolyhedralSet, _basic_empty, set_boolean
from .lattice import det, dot, hermite_normal_form, inverse_fraction, primitive, rank, solution_lattice
from .ratfun import Polynomial, RationalSeries

__all__ = ["ImproperWeightError", "WeightForm", "growth_series", "cumulative", "series_of_language"]


class ImproperWeightError(ValueError):
    """Some weight sphere of the set is infinite, or a point has negative weight."""

    def __init__(self, detail: str = ""):
        super().__init__("improper weight" + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class WeightForm:
    """x -> A . x + B."""

    A: tuple[int, ...]
    B: int = 0

    def __init__(self, A: Sequence[int], B: int = 0):
        object.__setattr__(self, "A", tuple(int(a) for a in A))
        object.__setattr__(self, "B", int(B))

    def __call__(self, x: Sequence[int]) -> int:
        return dot(self.A, x) + self.B


Term = tuple[Polynomial, tuple[int, ...]]


def disjoint_pieces(x: PolyhedralSet) -> list[BasicSet]:
    """Basic sets with pairwise disjoint point sets whose union is X."""
    pieces: list[BasicSet] = []
    seen = PolyhedralSet.empty(x.dim)
    for b in x.disjuncts:
        part = set_boolean(PolyhedralSet(x.dim, [b]), seen, "difference")
        pieces.extend(part.disjuncts)
        seen = PolyhedralSet(x.dim, seen.disjuncts + (b,))
    return pieces


def _parametrize(dim: int, eqs: Sequence[Constraint], congs: Sequence[Constraint]):
    """x0, L with {x : eqs, congs} = x0 + L Z^d (L of full column rank), or None."""
    return solution_lattice(dim, [c.u for c in eqs], [c.a for c in eqs],
                            [c.u for c in congs], [c.a for c in congs], [c.b for c in congs])


def _independent_rows(m: Sequence[Sequence[int]], n: int) -> list[int]:
    chosen: list[int] = []
    for i, row in enumerate(m):
        if rank([m[j] for j in chosen] + [row]) > len(chosen):
            chosen.append(i)
            if len(chosen) == n:
                break
    return chosen


def _extreme_rays(m: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {y : m y >= 0} (rank m = n), by double description."""
    base = _independent_rows(m, n)
    inv = inverse_fraction([m[i] for i in base])
    rays = []
    for j in range(n):
        col = [inv[i][j] for i in range(n)]
        den = 1
        for f in col:
            den = den * f.denominator // _gcd(den, f.denominator)
        rays.append(tuple(primitive([int(f * den) for f in col])))
    done = list(base)
    for i in range(len(m)):
        if i in base:
            continue
        row = m[i]
        vals = [dot(row, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new = [r for r, v in zip(rays, vals) if v >= 0]
        if neg:
            tight = [frozenset(j for j in done if dot(m[j], r) == 0) for r in rays]
            for p in pos:
                for q in neg:
                    common = tight[p] & tight[q]
                    if len(common) < n - 2:
                        continue
                    if n - 2 > 0 and rank([m[j] for j in common]) != n - 2:
                        continue
                    vp, vq = vals[p], vals[q]
                    ray = tuple(primitive([vp * b - vq * a for a, b in zip(rays[p], rays[q])]))
                    new.append(ray)
        rays = list(dict.fromkeys(new))
        done.append(i)
    return rays


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _triangulate(rays: Sequence[tuple[int, ...]], rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Pulling triangulation of the full-dimensional cone spanned by ``rays``."""
    tight = [frozenset(j for j, mr in enumerate(rows) if dot(mr, r) == 0) for r in rays]

    @lru_cache(maxsize=None)
    def rk(face: frozenset) -> int:
        return rank([rays[i] for i in sorted(face)])

    @lru_cache(maxsize=None)
    def pull(face: frozenset, dim: int) -> tuple[tuple[int, ...], ...]:
        if len(face) == dim:
            return (tuple(sorted(face)),)
        apex = min(face)
        facets: dict[frozenset, None] = {}
        for j, mr in enumerate(rows):
            if dot(mr, rays[apex]) <= 0:
                continue
            sub = frozenset(i for i in face if j in tight[i])
            if len(sub) >= dim - 1 and rk(sub) == dim - 1:
                facets.setdefault(sub, None)
        out = []
        for sub in sorted(facets, key=sorted):
            for simp in pull(sub, dim - 1):
                out.append(tuple(sorted(simp + (apex,))))
        return tuple(out)

    return list(pull(frozenset(range(len(rays))), n))


def _interior_direction(rays, rows, adjugates, seed: int) -> list[int]:
    n = len(rays[0])
    total = [sum(r[i] for r in rays) for i in range(n)]
    for attempt in range(64):
        rng = random.Random(seed * 1_000_003 + attempt)
        scale = 1_000 * (attempt + 1)
        y = [scale * t + rng.randint(-97, 97) for t in total]
        if any(dot(mr, y) <= 0 for mr in rows):
            continue
        if all(dot(b, y) != 0 for adj in adjugates for b in adj):
            return y
    raise RuntimeError("no generic interior direction found")


def _adjugate(gens: Sequence[tuple[int, ...]]) -> tuple[list[list[int]], int]:
    """(adj, D) with adj = D * G^-1 integral, D = |det G| > 0, G having ``gens`` as columns."""
    n = len(gens)
    inv = inverse_fraction([[gens[j][i] for j in range(n)] for i in range(n)])
    d = abs(det([[gens[j][i] for j in range(n)] for i in range(n)]))
    return [[int(v * d) for v in row] for row in inv], d


def _simplex_terms(gens: Sequence[tuple[int, ...]], adj: list[list[int]], d: int, y: Sequence[int],
                   weight: Sequence[int]) -> Term | None:
    n = len(gens)
    gmat = [[gens[j][i] for j in range(n)] for i in range(n)]
    open_face = [dot(row, y) < 0 for row in adj]
    h, _ = hermite_normal_form(gmat)
    diag = [h[i][i] for i in range(n)]
    gw = [dot(weight, g) for g in gens]
    gh = [g[-1] for g in gens]
    unit_gens = [j for j in range(n) if gh[j] == 1]
    num: dict[int, int] = {}

    def emit(wq: int) -> None:
        if wq < 0:
            raise ImproperWeightError(f"point of weight {wq}")
        num[wq] = num.get(wq, 0) + 1

    cols = [[adj[j][i] for j in range(n)] for i in range(n)]
    for c in itertools.product(*(range(t) for t in diag)):
        # D * lambda = adj . c; fractional parts scaled by D
        m = [0] * n
        for i, ci in enumerate(c):
            if ci:
                col = cols[i]
                for j in range(n):
                    m[j] += ci * col[j]
        for j in range(n):
            r = m[j] % d
            if r == 0 and open_face[j]:
                r = d
            m[j] = r
        height = sum(mj * hj for mj, hj in zip(m, gh)) // d
        if height > 1:
            continue
        wp = sum(mj * wj for mj, wj in zip(m, gw)) // d
        if height == 1:
            emit(wp)
        else:
            for j in unit_gens:
                emit(wp + gw[j])
    if not num:
        return None
    poly = Polynomial([num.get(i, 0) for i in range(max(num) + 1)])
    exps = tuple(sorted(gw[j] for j in range(n) if gh[j] == 0))
    return poly, exps


def _piece_terms(piece: BasicSet, w: WeightForm, seed: int) -> list[Term]:
    k = piece.dim
    cons = piece.constraints
    while True:
        eqs = [c for c in cons if c.kind == EQ]
        congs = [c for c in cons if c.kind == CONG]
        gts = [c for c in cons if c.kind == GT]
        par = _parametrize(k, eqs, congs)
        if par is None:
            return []
        x0, basis = par
        d = len(basis)
        rows, src = [], []
        for c in gts:
            g = [sum(c.u[i] * basis[j][i] for i in range(k)) for j in range(d)]
            hval = c.a - dot(c.u, x0) + 1
            if not any(g):
                if hval > 0:
                    return []
                continue
            rows.append(g + [-hval])
            src.append(c)
        n = d + 1
        rows.append([0] * d + [1])
        src.append(None)
        wvec = [sum(w.A[i] * basis[j][i] for i in range(k)) for j in range(d)] + [dot(w.A, x0) + w.B]
        if rank(rows) < n:
            # a line lies in the cone
            if _basic_empty(piece):
                return []
            raise ImproperWeightError("set contains a line")
        rays = _extreme_rays(rows, n)
        if not rays:
            return []
        implicit = [i for i, r in enumerate(rows) if all(dot(r, ray) == 0 for ray in rays)]
        if implicit:
            if src[-1] is None and (len(rows) - 1) in implicit:
                return []
            c = src[implicit[0]]
            nb = BasicSet.make(k, [x for x in cons if x != c] + [Constraint(EQ, c.u, c.a + 1)])
            if nb is None:
                return []
            cons = nb.constraints
            continue
        break
    for ray in rays:
        if ray[-1] == 0 and dot(wvec, ray) <= 0:
            if _basic_empty(piece):
                return []
            raise ImproperWeightError("recession direction of nonpositive weight")
    simplices = _triangulate(rays, rows, n)
    adjs = [_adjugate([rays[j] for j in s]) for s in simplices]
    y = _interior_direction(rays, rows, [a for a, _ in adjs], seed)
    terms = []
    for s, (adj, d) in zip(simplices, adjs):
        t = _simplex_terms([rays[j] for j in s], adj, d, y, wvec)
        if t is not None:
            terms.append(t)
    return terms


def growth_terms(x: PolyhedralSet, w: WeightForm, seed: int = 0) -> list[Term]:
    if len(w.A) != x.dim:
        raise ValueError(f"weight form of length {len(w.A)} on a set of dimension {x.dim}")
    terms: list[Term] = []
    for piece in disjoint_pieces(x):
        terms.extend(_piece_terms(piece, w, seed))
    return terms


def growth_series(x: PolyhedralSet, w: WeightForm, seed: int = 0) -> RationalSeries:
    """Sphere series: coefficient of z^r counts points of X of weight exactly r."""
    return RationalSeries.from_terms(growth_terms(x, w, seed))


def cumulative(f: RationalSeries) -> RationalSeries:
    """Ball series f / (1 - z)."""
    return RationalSeries(f.num, f.den * Polynomial.one_minus_zpow(1))


def series_of_language(parts: Iterable[tuple[PolyhedralSet, WeightForm]], seed: int = 0) -> RationalSeries:
    terms: list[Term] = []
    for x, w in parts:
        terms.extend(growth_terms(x, w, seed))
    return RationalSeries.from_terms(terms)
