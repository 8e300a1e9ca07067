"""Exact univariate polynomials and rational functions over the integers."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

__all__ = ["Polynomial", "RationalSeries", "poly_arith", "ratfun_arith", "reduce_series", "expand"]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    """Polynomial in z with integer coefficients, ascending degree.

    The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c}")
                c = c.numerator
            cs.append(int(c))
        object.__setattr__(self, "coeffs", _trim(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Polynomial":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def one_minus_zpow(cls, a: int) -> "Polynomial":
        """The factor 1 - z^a."""
        if a <= 0:
            raise ValueError("exponent must be positive")
        return cls([1] + [0] * (a - 1) + [-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            terms.append(("-" if c < 0 else "+", body))
        s = "".join(f" {sg} {b}" for sg, b in terms).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "Polynomial":
        c = self.content()
        if c == 0:
            return self
        if self.coeffs[-1] < 0:
            c = -c
        return Polynomial(x // c for x in self.coeffs)

    def scale_div(self, k: int) -> "Polynomial":
        if any(c % k for c in self.coeffs):
            raise ValueError(f"{self} not divisible by {k}")
        return Polynomial(c // k for c in self.coeffs)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient in Z[z]; raises if the division leaves a remainder."""
        q = _div_z(self, other)
        if q is not None:
            return q
        raise ValueError(f"{other} does not divide {self} in Z[z]")

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial([x])
    raise TypeError(f"cannot treat {type(x).__name__} as Polynomial")


def _div_z(a: Polynomial, b: Polynomial) -> Polynomial | None:
    """a / b when the quotient lies in Z[z] and the remainder is zero, else None."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db, lb = b.degree, b.coeffs[-1]
    if len(rem) - 1 < db:
        return None if rem else Polynomial()
    q = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c, m = divmod(rem[k + db], lb)
        if m:
            return None
        q[k] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[k + j] -= c * bc
    return Polynomial(q) if not any(rem[:db]) else None


_CYCLO: dict[int, Polynomial] = {}


def _phi(d: int) -> Polynomial:
    if d not in _CYCLO:
        p = Polynomial.monomial(d) - 1
        for e in range(1, d):
            if d % e == 0:
                p = p.exact_div(_phi(e))
        _CYCLO[d] = p
    return _CYCLO[d]


def cyclotomic(d: int) -> Polynomial:
    """Phi_d up to sign, normalised to constant term 1."""
    p = _phi(d)
    return -p if p[0] < 0 else p


def _cyclotomic_split(den: Polynomial) -> tuple[dict[int, int], Polynomial]:
    """Multiplicities of Phi_d, d <= deg den, in den and the cofactor left over."""
    mult: dict[int, int] = {}
    rest = den
    for d in range(1, den.degree + 1):
        if rest.degree == 0:
            break
        f = cyclotomic(d)
        while f.degree <= rest.degree:
            q = _div_z(rest, f)
            if q is None:
                break
            rest = q
            mult[d] = mult.get(d, 0) + 1
    return mult, rest


def _prem(a: Polynomial, b: Polynomial) -> Polynomial:
    """Pseudo-remainder of a by b."""
    r = list(a.coeffs)
    db, lb = b.degree, b.coeffs[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [x * lb for x in r]
        for j, bc in enumerate(b.coeffs):
            r[shift + j] -= lr * bc
        r = list(_trim(r))
    return Polynomial(r)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive gcd in Z[z] with positive leading coefficient (content dropped)."""
    if a.is_zero():
        return b.primitive() if b else Polynomial()
    if b.is_zero():
        return a.primitive()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b)
        a, b = b, (r.primitive() if r else r)
    return a.primitive()


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


StructTerm = tuple[Polynomial, tuple[int, ...]]


class RationalSeries:
    """p(z)/q(z) with integer coefficients, stored in reduced form.

    ``structured`` optionally records a sum of terms num/prod(1 - z^a) that
    evaluates to the same function; it is informational only.
    """

    __slots__ = ("num", "den", "structured")

    def __init__(self, num, den=None, structured: Sequence[StructTerm] | None = None, *, reduce: bool = True):
        num = num if isinstance(num, Polynomial) else Polynomial(num) if not isinstance(num, int) else Polynomial([num])
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial([den]) if isinstance(den, int) else Polynomial(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = _reduce_pair(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "structured", tuple(structured) if structured is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("RationalSeries is immutable")

    @classmethod
    def zero(cls) -> "RationalSeries":
        return cls(Polynomial(), Polynomial([1]), structured=())

    @classmethod
    def from_terms(cls, terms: Sequence[StructTerm]) -> "RationalSeries":
        """Sum of num / prod(1 - z^a) terms, with terms sharing a denominator merged first."""
        grouped: dict[tuple[int, ...], Polynomial] = {}
        for num, exps in terms:
            key = tuple(sorted(exps))
            grouped[key] = grouped.get(key, Polynomial()) + num
        grouped = {k: v for k, v in grouped.items() if v}
        # common denominator: each factor 1 - z^a at its largest multiplicity
        mult: dict[int, int] = {}
        for key in grouped:
            for a in set(key):
                mult[a] = max(mult.get(a, 0), key.count(a))
        den = Polynomial([1])
        for a in sorted(mult):
            den = den * Polynomial.one_minus_zpow(a) ** mult[a]
        num = Polynomial()
        for key in sorted(grouped):
            cof = Polynomial([1])
            for a in sorted(mult):
                cof = cof * Polynomial.one_minus_zpow(a) ** (mult[a] - key.count(a))
            num = num + grouped[key] * cof
        return cls(num, den, structured=[(n, e) for e, n in sorted(grouped.items())])

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RationalSeries(other)
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalSeries(num={list(self.num.coeffs)}, den={list(self.den.coeffs)})"

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _combine_struct(self, other, op):
        if self.structured is None or other.structured is None:
            return None
        if op == "add":
            return self.structured + other.structured
        if op == "sub":
            return self.structured + tuple((-n, e) for n, e in other.structured)
        return tuple((n1 * n2, e1 + e2) for n1, e1 in self.structured for n2, e2 in other.structured)

    def __add__(self, other) -> "RationalSeries":
        other = _as_series(other)
        if self.den == other.den:
            num, den = self.num + other.num, self.den
        else:
            g = poly_gcd(self.den, other.den)
            a, b = self.den.exact_div(g), other.den.exact_div(g)
            num, den = self.num * b + other.num * a, a * other.den
        return RationalSeries(num, den, self._combine_struct(other, "add"))

    __radd__ = __add__

    def __neg__(self) -> "RationalSeries":
        st = None if self.structured is None else tuple((-n, e) for n, e in self.structured)
        return RationalSeries(-self.num, self.den, st, reduce=False)

    def __sub__(self, other) -> "RationalSeries":
        other = _as_series(other)
        out = self + (-other)
        return RationalSeries(out.num, out.den, self._combine_struct(other, "sub"), reduce=False)

    def __mul__(self, other) -> "RationalSeries":
        other = _as_series(other)
        return RationalSeries(self.num * other.num, self.den * other.den, self._combine_struct(other, "mul"))

    __rmul__ = __mul__

    def expand(self, n_terms: int) -> list:
        return expand(self, n_terms)

    def to_json(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalSeries":
        return cls(Polynomial(obj["num"]), Polynomial(obj["den"]))


def _as_series(x) -> RationalSeries:
    if isinstance(x, RationalSeries):
        return x
    if isinstance(x, (int, Polynomial)):
        return RationalSeries(x)
    raise TypeError(f"cannot treat {type(x).__name__} as RationalSeries")


def _reduce_pair(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if num.is_zero():
        return Polynomial(), Polynomial([1])
    mult, rest = _cyclotomic_split(den)
    if rest.degree == 0:
        # den is a product of irreducible cyclotomic factors: cancel them one at a time
        for d, e in mult.items():
            f = cyclotomic(d)
            for _ in range(e):
                q = _div_z(num, f)
                if q is None:
                    break
                num, den = q, den.exact_div(f)
    else:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
    c = gcd(num.content(), den.content())
    if c > 1:
        num, den = num.scale_div(c), den.scale_div(c)
    lead = den[0] if den[0] != 0 else den.coeffs[-1]
    if lead < 0:
        num, den = -num, -den
    return num, den


def ratfun_arith(a: RationalSeries, b: RationalSeries, op: str) -> RationalSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def reduce_series(f: RationalSeries) -> RationalSeries:
    return RationalSeries(f.num, f.den, f.structured)


def expand(f: RationalSeries, n_terms: int) -> list:
    """First ``n_terms`` Maclaurin coefficients of f."""
    d0 = f.den[0]
    if d0 == 0:
        raise ValueError("series not expandable at z = 0 (denominator constant term is zero)")
    out: list = []
    den = f.den.coeffs
    for k in range(n_terms):
        acc = f.num[k]
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        if d0 in (1, -1):
            out.append(acc * d0)
        else:
            q = Fraction(acc, d0)
            out.append(q.numerator if q.denominator == 1 else q)
    return out
