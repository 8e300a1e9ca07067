"""Polyhedral subsets of Z^k as finite unions of conjunctions of elementary constraints.

An elementary constraint is one of

* ``Eq``:   u . z == a
* ``Cong``: u . z == a (mod b), b >= 2
* ``Gt``:   u . z >  a

Projection eliminates integer variables exactly: equalities are used first,
then Fourier-Motzkin when the integer shadow is exact (unit coefficients on
one side), and Cooper's method otherwise.  Coordinates are 0-based.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .lattice import dot, solution_lattice

EQ, CONG, GT = "eq", "cong", "gt"

__all__ = [
    "Constraint", "BasicSet", "PolyhedralSet", "AffineMap",
    "eq", "cong", "gt", "ge", "le", "lt",
    "set_boolean", "product", "affine_image", "affine_preimage", "project",
    "is_empty", "contains", "enumerate_box",
]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


@dataclass(frozen=True, order=True)
class Constraint:
    kind: str
    u: tuple[int, ...]
    a: int
    b: int = 0

    @property
    def dim(self) -> int:
        return len(self.u)

    def holds(self, z: Sequence[int]) -> bool:
        v = dot(self.u, z)
        if self.kind == EQ:
            return v == self.a
        if self.kind == GT:
            return v > self.a
        return (v - self.a) % self.b == 0

    def canonical(self):
        """Canonical form, or True/False when the constraint is trivial."""
        u, a = self.u, self.a
        if self.kind == EQ:
            g = _gcd_all(u)
            if g == 0:
                return a == 0
            if a % g:
                return False
            u, a = tuple(x // g for x in u), a // g
            first = next(x for x in u if x)
            if first < 0:
                u, a = tuple(-x for x in u), -a
            return Constraint(EQ, u, a)
        if self.kind == GT:
            g = _gcd_all(u)
            if g == 0:
                return 0 > a
            return Constraint(GT, tuple(x // g for x in u), a // g)
        b = self.b
        if b <= 0:
            raise ValueError("modulus must be positive")
        u = tuple(x % b for x in u)
        a %= b
        g = gcd(_gcd_all(u), b)
        if a % g:
            return False
        if g > 1:
            u, a, b = tuple(x // g for x in u), a // g, b // g
        if b == 1:
            return True
        neg = (tuple((-x) % b for x in u), (-a) % b)
        if neg < (u, a):
            u, a = neg
        return Constraint(CONG, u, a, b)

    def negation(self) -> list["Constraint"]:
        """Disjoint constraints whose union is the complement."""
        if self.kind == EQ:
            return [Constraint(GT, self.u, self.a), Constraint(GT, tuple(-x for x in self.u), -self.a)]
        if self.kind == GT:
            return [Constraint(GT, tuple(-x for x in self.u), -self.a - 1)]
        return [Constraint(CONG, self.u, r, self.b) for r in range(self.b) if r != self.a % self.b]

    def substitute(self, mat: Sequence[Sequence[int]], off: Sequence[int]) -> "Constraint":
        """Constraint on y obtained by z := mat . y + off."""
        ncols = len(mat[0]) if mat else 0
        nu = tuple(sum(self.u[i] * mat[i][j] for i in range(len(self.u))) for j in range(ncols))
        return Constraint(self.kind, nu, self.a - dot(self.u, off), self.b)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "u": list(self.u), "a": self.a}
        if self.kind == CONG:
            d["b"] = self.b
        return d


def eq(u, a) -> Constraint:
    return Constraint(EQ, tuple(u), a)


def cong(u, a, b) -> Constraint:
    return Constraint(CONG, tuple(u), a, b)


def gt(u, a) -> Constraint:
    return Constraint(GT, tuple(u), a)


def ge(u, a) -> Constraint:
    return Constraint(GT, tuple(u), a - 1)


def lt(u, a) -> Constraint:
    return Constraint(GT, tuple(-x for x in u), -a)


def le(u, a) -> Constraint:
    return Constraint(GT, tuple(-x for x in u), -a - 1)


@lru_cache(maxsize=500_000)
def _canonical(c: Constraint):
    return c.canonical()


def _simplify(cons: Iterable[Constraint]) -> tuple[Constraint, ...] | None:
    """Canonicalize a conjunction; None when it is detectably empty."""
    bounds: dict[tuple[int, ...], list] = {}  # direction -> [lo, hi]
    congs: dict[tuple[tuple[int, ...], int], int] = {}
    for c in cons:
        c = _canonical(c)
        if c is True:
            continue
        if c is False:
            return None
        if c.kind == CONG:
            key = (c.u, c.b)
            if key in congs:
                if congs[key] != c.a:
                    return None
            else:
                congs[key] = c.a
            continue
        u = c.u
        first = next(x for x in u if x)
        if first > 0:
            d, lo, hi = u, None, None
            if c.kind == EQ:
                lo = hi = c.a
            else:
                lo = c.a + 1
        else:
            d = tuple(-x for x in u)
            lo, hi = None, -c.a - 1  # -d.z > a  <=>  d.z <= -a-1
        cur = bounds.setdefault(d, [None, None])
        if lo is not None and (cur[0] is None or lo > cur[0]):
            cur[0] = lo
        if hi is not None and (cur[1] is None or hi < cur[1]):
            cur[1] = hi
    out: list[Constraint] = []
    for d, (lo, hi) in bounds.items():
        if lo is not None and hi is not None:
            if lo > hi:
                return None
            if lo == hi:
                out.append(Constraint(EQ, d, lo))
                continue
        if lo is not None:
            out.append(Constraint(GT, d, lo - 1))
        if hi is not None:
            out.append(Constraint(GT, tuple(-x for x in d), -hi - 1))
    # equalities fix the residue of congruences along the same direction
    eqs = {c.u: c.a for c in out if c.kind == EQ}
    for (u, b), a in congs.items():
        if u in eqs:
            if (eqs[u] - a) % b:
                return None
            continue
        out.append(Constraint(CONG, u, a, b))
    return tuple(sorted(out))


class BasicSet:
    """Conjunction of elementary constraints over Z^dim."""

    __slots__ = ("dim", "constraints", "_hash")

    def __init__(self, dim: int, constraints: Iterable[Constraint] = (), *, _simplified: bool = False):
        cons = tuple(constraints)
        for c in cons:
            if c.dim != dim:
                raise ValueError(f"constraint of dimension {c.dim} in a set of dimension {dim}")
        if not _simplified:
            s = _simplify(cons)
            cons = (Constraint(EQ, (0,) * dim, 1),) if s is None else s
        self.dim = dim
        self.constraints = cons
        self._hash = hash((dim, cons))

    @classmethod
    def make(cls, dim: int, constraints: Iterable[Constraint]) -> "BasicSet | None":
        s = _simplify(constraints)
        if s is None:
            return None
        return cls(dim, s, _simplified=True)

    @property
    def trivially_empty(self) -> bool:
        return any(c.kind == EQ and not any(c.u) and c.a != 0 for c in self.constraints)

    def __eq__(self, other) -> bool:
        return isinstance(other, BasicSet) and self.dim == other.dim and self.constraints == other.constraints

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"BasicSet({self.dim}, {list(self.constraints)})"

    def contains(self, z: Sequence[int]) -> bool:
        return all(c.holds(z) for c in self.constraints)

    def to_json(self) -> list:
        return [c.to_json() for c in self.constraints]


class PolyhedralSet:
    """Finite union of basic sets over Z^dim; no disjuncts means the empty set."""

    __slots__ = ("dim", "disjuncts")

    def __init__(self, dim: int, disjuncts: Iterable[BasicSet] = ()):
        seen: dict[BasicSet, None] = {}
        for b in disjuncts:
            if b.dim != dim:
                raise ValueError(f"disjunct of dimension {b.dim} in a set of dimension {dim}")
            if not b.trivially_empty:
                seen.setdefault(b, None)
        self.dim = dim
        self.disjuncts = tuple(sorted(seen, key=lambda b: b.constraints))

    @classmethod
    def empty(cls, dim: int) -> "PolyhedralSet":
        return cls(dim, ())

    @classmethod
    def universe(cls, dim: int) -> "PolyhedralSet":
        return cls(dim, [BasicSet(dim, ())])

    @classmethod
    def from_constraints(cls, dim: int, constraints: Iterable[Constraint]) -> "PolyhedralSet":
        b = BasicSet.make(dim, constraints)
        return cls(dim, [] if b is None else [b])

    @classmethod
    def orthant(cls, dim: int) -> "PolyhedralSet":
        return cls.from_constraints(dim, [ge(_unit(dim, i), 0) for i in range(dim)])

    def __repr__(self) -> str:
        return f"PolyhedralSet(dim={self.dim}, disjuncts={len(self.disjuncts)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyhedralSet) and self.dim == other.dim and self.disjuncts == other.disjuncts

    def __hash__(self) -> int:
        return hash((self.dim, self.disjuncts))

    def contains(self, z: Sequence[int]) -> bool:
        if len(z) != self.dim:
            raise ValueError("point dimension mismatch")
        return any(b.contains(z) for b in self.disjuncts)

    __contains__ = contains

    def __and__(self, other: "PolyhedralSet") -> "PolyhedralSet":
        return set_boolean(self, other, "intersect")

    def __or__(self, other: "PolyhedralSet") -> "PolyhedralSet":
        return set_boolean(self, other, "union")

    def __sub__(self, other: "PolyhedralSet") -> "PolyhedralSet":
        return set_boolean(self, other, "difference")

    def intersect_constraints(self, constraints: Iterable[Constraint]) -> "PolyhedralSet":
        cons = list(constraints)
        out = []
        for b in self.disjuncts:
            nb = BasicSet.make(self.dim, b.constraints + tuple(cons))
            if nb is not None:
                out.append(nb)
        return PolyhedralSet(self.dim, out)

    def pruned(self) -> "PolyhedralSet":
        """Drop disjuncts without integer points and syntactically subsumed ones."""
        keep = [b for b in self.disjuncts if not _basic_empty(b)]
        return PolyhedralSet(self.dim, _drop_subsumed(keep))

    def is_empty(self) -> bool:
        return all(_basic_empty(b) for b in self.disjuncts)

    def to_json(self) -> dict:
        return {"dim": self.dim, "disjuncts": [b.to_json() for b in self.disjuncts]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _unit(dim: int, i: int, v: int = 1) -> tuple[int, ...]:
    return tuple(v if j == i else 0 for j in range(dim))


def _drop_subsumed(blocks: Sequence[BasicSet]) -> list[BasicSet]:
    sets = [frozenset(b.constraints) for b in blocks]
    out = []
    for i, b in enumerate(blocks):
        # a disjunct whose constraints contain another's is a subset of it
        if any(j != i and sets[j] < sets[i] for j in range(len(blocks))):
            continue
        out.append(b)
    return out


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix . x + offset, matrix of shape out_dim x in_dim."""

    matrix: tuple[tuple[int, ...], ...]
    offset: tuple[int, ...]
    in_dim: int

    def __init__(self, matrix, offset=None, in_dim: int | None = None):
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        if in_dim is None:
            if not m:
                raise ValueError("in_dim required for a map with no output rows")
            in_dim = len(m[0])
        if any(len(row) != in_dim for row in m):
            raise ValueError("inconsistent matrix dimensions")
        off = tuple(offset) if offset is not None else (0,) * len(m)
        if len(off) != len(m):
            raise ValueError("offset length must match output dimension")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "offset", off)
        object.__setattr__(self, "in_dim", in_dim)

    @property
    def out_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(dot(row, x) + b for row, b in zip(self.matrix, self.offset))

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls([_unit(n, i) for i in range(n)], in_dim=n)

    @classmethod
    def select(cls, in_dim: int, coords: Sequence[int]) -> "AffineMap":
        """Coordinate selection x -> (x[c] for c in coords)."""
        return cls([_unit(in_dim, c) for c in coords], in_dim=in_dim)


# ---------------------------------------------------------------- elimination


def _split_bounds(cons, j):
    """Partition constraints by the role of variable j (inequalities as u.z >= k)."""
    lowers, uppers, congs, eqs, rest = [], [], [], [], []
    for c in cons:
        cj = c.u[j]
        if cj == 0:
            rest.append(c)
        elif c.kind == EQ:
            eqs.append(c)
        elif c.kind == CONG:
            congs.append(c)
        elif cj > 0:
            lowers.append(c)
        else:
            uppers.append(c)
    return lowers, uppers, congs, eqs, rest


def _zero_at(u, j):
    return u[:j] + (0,) + u[j + 1:]


def _elim_equality(cons, e: Constraint, j: int) -> list[Constraint]:
    a = e.u[j]
    s, aa = (1 if a > 0 else -1), abs(a)
    up = _zero_at(e.u, j)  # a x + up.z = e.a
    out: list[Constraint] = []
    if aa > 1:
        out.append(Constraint(CONG, up, e.a, aa))
    for c in cons:
        if c is e:
            continue
        cj = c.u[j]
        if cj == 0:
            out.append(c)
            continue
        # aa*cj*x = s*cj*(a x) = s*cj*(e.a - up.z)
        nu = tuple(aa * ci - s * cj * ui for ci, ui in zip(_zero_at(c.u, j), up))
        na = aa * c.a - s * cj * e.a
        if c.kind == GT:
            # aa*(rest + cj x) > aa*c.a; strictness preserved since aa > 0
            out.append(Constraint(GT, nu, na))
        elif c.kind == EQ:
            out.append(Constraint(EQ, nu, na))
        else:
            out.append(Constraint(CONG, nu, na, aa * c.b))
    return out


def _fm_exact(lowers, uppers, j) -> bool:
    return all(c.u[j] == 1 for c in lowers) or all(c.u[j] == -1 for c in uppers)


def _fourier_motzkin(lowers, uppers, rest, j, dark: bool = False) -> list[Constraint]:
    """Real shadow, or with ``dark`` the Omega-test dark shadow (nonempty implies an integer point)."""
    out = list(rest)
    for lo in lowers:
        c1 = lo.u[j]  # c1 x + r1.z > a1
        for up in uppers:
            c2 = -up.u[j]  # -c2 x + r2.z > a2
            # c1 x >= a1 + 1 - r1.z ; c2 x <= r2.z - a2 - 1
            # c2 (a1 + 1 - r1.z) <= c1 (r2.z - a2 - 1)
            nu = tuple(c2 * x + c1 * y for x, y in zip(_zero_at(lo.u, j), _zero_at(up.u, j)))
            bound = c2 * (lo.a + 1) + c1 * (up.a + 1)
            if dark:
                bound += (c1 - 1) * (c2 - 1)
            out.append(Constraint(GT, nu, bound - 1))
    return out


def _constant_range(lowers, uppers, j) -> tuple[int, int] | None:
    """Bounds lo <= x_j <= hi implied by constraints involving x_j alone."""
    lo = hi = None
    for c in lowers:
        if not any(c.u[:j]) and not any(c.u[j + 1:]):
            v = c.a // c.u[j] + 1
            lo = v if lo is None else max(lo, v)
    for c in uppers:
        if not any(c.u[:j]) and not any(c.u[j + 1:]):
            v = (-c.a - 1) // -c.u[j]
            hi = v if hi is None else min(hi, v)
    if lo is None or hi is None:
        return None
    return lo, hi


def _cooper_size(lowers, uppers, congs, j) -> int:
    l = 1
    for c in itertools.chain(lowers, uppers, congs):
        l = _lcm(l, abs(c.u[j]))
    delta = l
    for c in congs:
        delta = _lcm(delta, (l // abs(c.u[j])) * c.b)
    side = min(len(lowers), len(uppers)) if lowers and uppers else 1
    return side * delta


def _enumerate_var(cons, j, lo: int, hi: int) -> list[list[Constraint]]:
    out = []
    for v in range(lo, hi + 1):
        out.append([Constraint(c.kind, _zero_at(c.u, j), c.a - c.u[j] * v, c.b) if c.u[j] else c for c in cons])
    return out


def _cooper(lowers, uppers, congs, rest, j) -> list[list[Constraint]]:
    l = 1
    for c in itertools.chain(lowers, uppers, congs):
        l = _lcm(l, abs(c.u[j]))
    # rescale so the coefficient of y = l*x is +-1
    scaled = []
    for c in itertools.chain(lowers, uppers, congs):
        f = l // abs(c.u[j])
        nu = tuple(f * x for x in c.u)
        if c.kind == GT:
            scaled.append(Constraint(GT, nu, f * c.a))
        else:
            scaled.append(Constraint(CONG, nu, f * c.a, f * c.b))
    dim = len(scaled[0].u)
    if l > 1:
        scaled.append(Constraint(CONG, _unit(dim, j), 0, l))
    delta = 1
    for c in scaled:
        if c.kind == CONG:
            delta = _lcm(delta, c.b)
    lo_s = [c for c in scaled if c.kind == GT and c.u[j] > 0]
    up_s = [c for c in scaled if c.kind == GT and c.u[j] < 0]
    cg_s = [c for c in scaled if c.kind == CONG]

    def subst(cons, sign_y, base_u, base_a):
        """Substitute y := base_a + base_u . z into cons (y has coefficient +-1)."""
        res = []
        for c in cons:
            sy = 1 if c.u[j] > 0 else -1  # coefficient of y after rescaling
            rz = _zero_at(c.u, j)
            nu = tuple(r + sy * b for r, b in zip(rz, base_u))
            res.append(Constraint(c.kind, nu, c.a - sy * base_a, c.b))
        return res

    out: list[list[Constraint]] = []
    zero = (0,) * dim
    use_lower = bool(lo_s) and (not up_s or len(lo_s) <= len(up_s))
    if not lo_s or not up_s:
        # unbounded on one side: only the residues of y matter
        for t in range(delta):
            out.append(list(rest) + subst(cg_s, 1, zero, t))
        return out
    if use_lower:
        for b in lo_s:
            # y + r.z > a  => smallest y = a + 1 - r.z
            r = _zero_at(b.u, j)
            for t in range(delta):
                base_u = tuple(-x for x in r)
                out.append(list(rest) + subst(lo_s + up_s + cg_s, 1, base_u, b.a + 1 + t))
    else:
        for b in up_s:
            # -y + r.z > a  => largest y = r.z - a - 1
            r = _zero_at(b.u, j)
            for t in range(delta):
                out.append(list(rest) + subst(lo_s + up_s + cg_s, 1, r, -b.a - 1 - t))
    return out


def _eliminate(cons: Sequence[Constraint], j: int) -> list[tuple[Constraint, ...]]:
    """Exact DNF for 'exists x_j . cons'; variable j no longer occurs in the result."""
    lowers, uppers, congs, eqs, rest = _split_bounds(cons, j)
    if eqs:
        e = min(eqs, key=lambda c: (abs(c.u[j]), c))
        branches = [_elim_equality(cons, e, j)]
    elif not congs and (not lowers or not uppers):
        branches = [rest]
    elif not congs and _fm_exact(lowers, uppers, j):
        branches = [_fourier_motzkin(lowers, uppers, rest, j)]
    else:
        rng = _constant_range(lowers, uppers, j)
        if rng is not None and rng[1] - rng[0] + 1 <= _cooper_size(lowers, uppers, congs, j):
            branches = _enumerate_var(cons, j, *rng)
        else:
            branches = _cooper(lowers, uppers, congs, rest, j)
    out = []
    for br in branches:
        s = _simplify(br)
        if s is not None:
            out.append(s)
    return out


def _elim_cost(cons, j) -> tuple:
    lowers, uppers, congs, eqs, _ = _split_bounds(cons, j)
    if eqs:
        return (0, min(abs(c.u[j]) for c in eqs))
    if not congs and (not lowers or not uppers):
        return (1, 0)
    if not congs and _fm_exact(lowers, uppers, j):
        return (2, len(lowers) * len(uppers))
    size = _cooper_size(lowers, uppers, congs, j)
    rng = _constant_range(lowers, uppers, j)
    if rng is not None:
        size = min(size, max(rng[1] - rng[0] + 1, 0))
    return (3, size)


def _occurs(cons, j) -> bool:
    return any(c.u[j] for c in cons)


def _project_basic(cons: tuple[Constraint, ...], elim: Sequence[int]) -> list[tuple[Constraint, ...]]:
    todo = [v for v in elim]
    frontier = [cons]
    while todo:
        nxt: dict[tuple, None] = {}
        # choose the cheapest variable using the first conjunct as a guide
        live = [v for v in todo if any(_occurs(c, v) for c in frontier)]
        if not live:
            break
        guide = max(frontier, key=len)
        v = min(live, key=lambda x: (_elim_cost(guide, x), x))
        todo.remove(v)
        for c in frontier:
            if not _occurs(c, v):
                nxt.setdefault(c, None)
                continue
            for r in _eliminate(c, v):
                nxt.setdefault(r, None)
        frontier = list(nxt)
        if not frontier:
            return []
    return frontier


def _drop_coords(c: Constraint, keep: Sequence[int]) -> Constraint:
    return Constraint(c.kind, tuple(c.u[i] for i in keep), c.a, c.b)


def _shadow_infeasible(cons: Sequence[Constraint], limit: int = 400) -> bool:
    """Sound emptiness test on the rational relaxation, with integer rounding of each derived bound.

    False means 'not refuted', never 'nonempty'.
    """
    ineqs: set[tuple[tuple[int, ...], int]] = set()  # u.z >= a
    for c in cons:
        if c.kind == GT:
            ineqs.add((c.u, c.a + 1))
        elif c.kind == EQ:
            ineqs.add((c.u, c.a))
            ineqs.add((tuple(-x for x in c.u), -c.a))
    if not ineqs:
        return False
    dim = len(next(iter(ineqs))[0])

    def norm(u, a):
        g = _gcd_all(u)
        if g == 0:
            return None if a <= 0 else False
        return tuple(x // g for x in u), -((-a) // g)

    todo = set(range(dim))
    while todo:
        def cost(j):
            p = sum(1 for u, _ in ineqs if u[j] > 0)
            return p * (sum(1 for u, _ in ineqs if u[j] < 0)) - p
        j = min(todo, key=lambda v: (cost(v), v))
        todo.discard(j)
        pos = [(u, a) for u, a in ineqs if u[j] > 0]
        neg = [(u, a) for u, a in ineqs if u[j] < 0]
        nxt = {(u, a) for u, a in ineqs if u[j] == 0}
        for u1, a1 in pos:
            for u2, a2 in neg:
                f1, f2 = -u2[j], u1[j]
                r = norm(tuple(f1 * x + f2 * y for x, y in zip(u1, u2)), f1 * a1 + f2 * a2)
                if r is False:
                    return True
                if r is not None:
                    nxt.add(r)
        if len(nxt) > limit:
            return False
        ineqs = nxt
    return False


def _witness_radius(dim: int) -> int:
    return 1 if dim <= 3 else 0


def _has_small_point(cons: Sequence[Constraint], dim: int) -> bool:
    r = _witness_radius(dim)
    rng = range(-r, r + 1)
    return any(all(c.holds(z) for c in cons) for z in itertools.product(rng, repeat=dim))


@lru_cache(maxsize=200_000)
def _nonempty_cons(cons: tuple[Constraint, ...]) -> bool:
    if not cons:
        return True
    dim = len(cons[0].u)
    live = [v for v in range(dim) if _occurs(cons, v)]
    if not live:
        return _simplify(cons) is not None
    if any(c.kind != GT for c in cons):
        return _nonempty_on_lattice(cons, dim)
    if _shadow_infeasible(cons):
        return False
    v = min(live, key=lambda x: (_elim_cost(cons, x), x))
    lowers, uppers, _, _, rest = _split_bounds(cons, v)
    if lowers and uppers and not _fm_exact(lowers, uppers, v):
        dark = _simplify(_fourier_motzkin(lowers, uppers, rest, v, dark=True))
        if dark is not None and _nonempty_cons(dark):
            return True
    for r in _eliminate(cons, v):
        if _nonempty_cons(r):
            return True
    return False


def _nonempty_on_lattice(cons: tuple[Constraint, ...], dim: int) -> bool:
    """Solve the equalities and congruences exactly, then decide the inequalities on the solution lattice."""
    eqs = [c for c in cons if c.kind == EQ]
    congs = [c for c in cons if c.kind == CONG]
    sol = solution_lattice(dim, [c.u for c in eqs], [c.a for c in eqs],
                           [c.u for c in congs], [c.a for c in congs], [c.b for c in congs])
    if sol is None:
        return False
    x0, basis = sol
    gts = [c for c in cons if c.kind == GT]
    if not basis:
        return all(c.holds(x0) for c in gts)
    moved = [Constraint(GT, tuple(dot(c.u, b) for b in basis), c.a - dot(c.u, x0)) for c in gts]
    s = _simplify(moved)
    return s is not None and _nonempty_cons(s)


def _basic_empty(b: BasicSet) -> bool:
    if b.trivially_empty:
        return True
    if all(c.kind == GT for c in b.constraints) and _shadow_infeasible(b.constraints):
        return True
    if _has_small_point(b.constraints, b.dim):
        return False
    return not _nonempty_cons(b.constraints)


# ---------------------------------------------------------------- operations


def _check_dims(x: PolyhedralSet, y: PolyhedralSet) -> None:
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")


def _subtract_basic(pieces: list[BasicSet], y: BasicSet, dim: int) -> list[BasicSet]:
    out = []
    for p in pieces:
        if not y.constraints:
            continue  # y is the universe
        prefix: list[Constraint] = []
        pset = set(p.constraints)
        for c in y.constraints:
            if c in pset:
                prefix.append(c)
                continue
            for nc in c.negation():
                nb = BasicSet.make(dim, p.constraints + tuple(prefix) + (nc,))
                if nb is not None and not _basic_empty(nb):
                    out.append(nb)
            prefix.append(c)
    return out


def set_boolean(x: PolyhedralSet, y: PolyhedralSet, op: str) -> PolyhedralSet:
    _check_dims(x, y)
    if op == "union":
        return PolyhedralSet(x.dim, x.disjuncts + y.disjuncts)
    if op == "intersect":
        out = []
        for a in x.disjuncts:
            for b in y.disjuncts:
                nb = BasicSet.make(x.dim, a.constraints + b.constraints)
                if nb is not None:
                    out.append(nb)
        return PolyhedralSet(x.dim, out)
    if op == "difference":
        pieces = [b for b in x.disjuncts if not _basic_empty(b)]
        for yb in y.disjuncts:
            if not pieces:
                break
            pieces = _subtract_basic(pieces, yb, x.dim)
        return PolyhedralSet(x.dim, pieces)
    raise ValueError(f"unknown boolean op {op!r}")


def complement(x: PolyhedralSet) -> PolyhedralSet:
    return PolyhedralSet.universe(x.dim) - x


def product(x: PolyhedralSet, z: PolyhedralSet) -> PolyhedralSet:
    k, l = x.dim, z.dim
    out = []
    for a in x.disjuncts:
        for b in z.disjuncts:
            cons = [Constraint(c.kind, c.u + (0,) * l, c.a, c.b) for c in a.constraints]
            cons += [Constraint(c.kind, (0,) * k + c.u, c.a, c.b) for c in b.constraints]
            nb = BasicSet.make(k + l, cons)
            if nb is not None:
                out.append(nb)
    return PolyhedralSet(k + l, out)


def project(x: PolyhedralSet, keep: Sequence[int]) -> PolyhedralSet:
    """Coordinate projection onto ``keep`` (0-based, output in that order)."""
    keep = list(keep)
    if any(not 0 <= i < x.dim for i in keep) or len(set(keep)) != len(keep):
        raise ValueError(f"invalid coordinate selection {keep} for dimension {x.dim}")
    elim = [i for i in range(x.dim) if i not in keep]
    out = []
    for b in x.disjuncts:
        for cons in _project_basic(b.constraints, elim):
            nb = BasicSet.make(len(keep), [_drop_coords(c, keep) for c in cons])
            if nb is not None:
                out.append(nb)
    return PolyhedralSet(len(keep), _drop_subsumed(list(dict.fromkeys(out))))


def affine_preimage(x: PolyhedralSet, f: AffineMap) -> PolyhedralSet:
    """{y : f(y) in X}."""
    if f.out_dim != x.dim:
        raise ValueError(f"map lands in dimension {f.out_dim}, set has dimension {x.dim}")
    out = []
    for b in x.disjuncts:
        nb = BasicSet.make(f.in_dim, [c.substitute(f.matrix, f.offset) if f.matrix else
                                      Constraint(c.kind, (0,) * f.in_dim, c.a, c.b) for c in b.constraints])
        if nb is not None:
            out.append(nb)
    return PolyhedralSet(f.in_dim, out)


def affine_image(x: PolyhedralSet, f: AffineMap) -> PolyhedralSet:
    """{f(x) : x in X}, by projecting the graph of f restricted to X."""
    if f.in_dim != x.dim:
        raise ValueError(f"map expects dimension {f.in_dim}, set has dimension {x.dim}")
    k, l = x.dim, f.out_dim
    graph_eqs = []
    for i, (row, b) in enumerate(zip(f.matrix, f.offset)):
        # y_i - row.x = b
        graph_eqs.append(Constraint(EQ, tuple(-v for v in row) + _unit(l, i), b))
    lifted = product(x, PolyhedralSet.universe(l)).intersect_constraints(graph_eqs)
    return project(lifted, list(range(k, k + l)))


def embed(x: PolyhedralSet, dim: int, coords: Sequence[int]) -> PolyhedralSet:
    """Cylinder over X in Z^dim, where X's coordinates sit at positions ``coords``."""
    return affine_preimage(x, AffineMap.select(dim, coords))


def is_empty(x: PolyhedralSet) -> bool:
    return x.is_empty()


def contains(x: PolyhedralSet, point: Sequence[int]) -> bool:
    return x.contains(point)


def enumerate_box(x: PolyhedralSet, bound: int) -> list[tuple[int, ...]]:
    """All points of X in [-bound, bound]^dim, in lexicographic order."""
    rng = range(-bound, bound + 1)
    return [p for p in itertools.product(rng, repeat=x.dim) if x.contains(p)]


def from_json(obj: dict) -> PolyhedralSet:
    dim = obj["dim"]
    blocks = []
    for d in obj["disjuncts"]:
        cons = [Constraint(c["kind"], tuple(c["u"]), c["a"], c.get("b", 0)) for c in d]
        b = BasicSet.make(dim, cons)
        if b is not None:
            blocks.append(b)
    return PolyhedralSet(dim, blocks)
