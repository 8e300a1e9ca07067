"""Virtually abelian groups in normal form x.t, with x in Z^n and t in a finite transversal.

A description lists the transversal, a multiplication table on basis letters
(e1.., E1..) and transversal labels, named endomorphisms, and a weighted
monoid generating set.  Arithmetic uses only two derived pieces of data:
the conjugation matrix T_t (t e_i t^-1 = T_t e_i) and the coset cocycle
t.s = c(t, s) m(t, s).
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .lattice import det, identity, lattice_basis, matvec

IDENTITY_LABEL = "1"


class GroupFormatError(ValueError):
    """Malformed group description."""


class InvalidGroupError(ValueError):
    """A description that parses but fails validation."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(f"{i.check}: {i.message}" for i in report.issues))


@dataclass(frozen=True, order=True)
class GroupElement:
    x: tuple[int, ...]
    t: int

    def __str__(self) -> str:
        return f"{list(self.x)}.t{self.t}"


@dataclass(frozen=True)
class EndoData:
    name: str
    Phi: tuple[tuple[int, ...], ...]
    images_T: tuple[GroupElement, ...]
    basis_images: tuple[GroupElement, ...]


@dataclass
class Issue:
    check: str
    message: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, check: str, message: str, *witness) -> None:
        self.issues.append(Issue(check, message, tuple(witness)))

    def to_json(self) -> dict:
        return {"valid": self.ok,
                "issues": [{"check": i.check, "message": i.message, "witness": [str(w) for w in i.witness]}
                           for i in self.issues]}


@dataclass(frozen=True)
class Generator:
    name: str
    word: tuple[str, ...]
    weight: int


class GroupDescription:
    """Parsed (not yet validated) group description."""

    def __init__(self, n: int, transversal: Sequence[str], mult: dict, endos: dict,
                 generators: Sequence[Generator], name: str = ""):
        self.n = n
        self.transversal = list(transversal)
        self.index = {lab: i for i, lab in enumerate(self.transversal)}
        self.mult = mult
        self.endo_specs = endos
        self.generators = list(generators)
        self.name = name
        self.basis_letters = [f"e{i + 1}" for i in range(n)]
        self.inverse_letters = [f"E{i + 1}" for i in range(n)]
        self.letters = self.basis_letters + self.inverse_letters + self.transversal
        self._check_structure()

    # ------------------------------------------------------------ parsing

    @classmethod
    def from_json(cls, obj: dict, name: str = "") -> "GroupDescription":
        try:
            n = int(obj["n"])
            transversal = [str(t) for t in obj["transversal"]]
            mult = {}
            for entry in obj.get("mult", []):
                key = (str(entry["left"]), str(entry["right"]))
                if key in mult:
                    raise GroupFormatError(f"duplicate table entry {key}")
                mult[key] = (tuple(int(v) for v in entry["x"]), str(entry["t"]))
            endos = {}
            for ename, e in obj.get("endos", {}).items():
                basis = [(tuple(int(v) for v in b["x"]), str(b["t"])) for b in e["basis_images"]]
                timg = {str(k): (tuple(int(v) for v in v_["x"]), str(v_["t"]))
                        for k, v_ in e["transversal_images"].items()}
                endos[str(ename)] = (basis, timg)
            gens = []
            for i, g in enumerate(obj["generators"]):
                gens.append(Generator(str(g.get("name", f"s{i + 1}")), tuple(str(w) for w in g["word"]),
                                      int(g["weight"])))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GroupFormatError):
                raise
            raise GroupFormatError(f"malformed group description: {exc!r}") from exc
        return cls(n, transversal, mult, endos, gens, name=name or str(obj.get("name", "")))

    @classmethod
    def load(cls, path: str | Path) -> "GroupDescription":
        p = Path(path)
        try:
            obj = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise GroupFormatError(f"{p}: invalid JSON: {exc}") from exc
        return cls.from_json(obj, name=p.stem)

    def _check_structure(self) -> None:
        n = self.n
        if n < 0:
            raise GroupFormatError("n must be nonnegative")
        if not self.transversal or self.transversal[0] != IDENTITY_LABEL:
            raise GroupFormatError('transversal must start with the identity label "1"')
        if len(set(self.transversal)) != len(self.transversal):
            raise GroupFormatError("duplicate transversal labels")
        if set(self.transversal) & set(self.basis_letters + self.inverse_letters):
            raise GroupFormatError("transversal labels clash with basis letters")
        for key, (x, t) in self.mult.items():
            for lab in key:
                if lab not in self.letters:
                    raise GroupFormatError(f"unknown letter {lab!r} in table entry {key}")
            self._check_nf(x, t, f"table entry {key}")
        for ename, (basis, timg) in self.endo_specs.items():
            if len(basis) != n:
                raise GroupFormatError(f"endo {ename!r}: expected {n} basis images")
            for x, t in basis:
                self._check_nf(x, t, f"endo {ename!r}")
            if set(timg) != set(self.transversal):
                raise GroupFormatError(f"endo {ename!r}: transversal images must cover every label")
            for x, t in timg.values():
                self._check_nf(x, t, f"endo {ename!r}")
        if not self.generators:
            raise GroupFormatError("no generators")
        for g in self.generators:
            if g.weight <= 0:
                raise GroupFormatError(f"generator {g.name}: weight must be a positive integer")
            for lab in g.word:
                if lab not in self.letters:
                    raise GroupFormatError(f"generator {g.name}: unknown letter {lab!r}")
        for t in self.transversal[1:]:
            for s in self.transversal:
                if (t, s) not in self.mult:
                    raise GroupFormatError(f"missing table entry ({t}, {s})")
            for b in self.basis_letters:
                if (t, b) not in self.mult:
                    raise GroupFormatError(f"missing table entry ({t}, {b})")

    def _check_nf(self, x, t, where: str) -> None:
        if len(x) != self.n:
            raise GroupFormatError(f"{where}: vector of length {len(x)}, expected {self.n}")
        if t not in self.index:
            raise GroupFormatError(f"{where}: unknown transversal label {t!r}")

    # ------------------------------------------------------------ structure

    @property
    def D(self) -> int:
        return len(self.transversal)

    @cached_property
    def conj_t(self) -> list[list[list[int]]]:
        """T_t for each transversal index: column i is the x-part of t.e_i."""
        mats = [identity(self.n)]
        for t in self.transversal[1:]:
            cols = [list(self.mult[(t, b)][0]) for b in self.basis_letters]
            mats.append([[cols[j][i] for j in range(self.n)] for i in range(self.n)])
        return mats

    @cached_property
    def cocycle(self) -> dict[tuple[int, int], GroupElement]:
        out = {}
        for i, t in enumerate(self.transversal):
            for j, s in enumerate(self.transversal):
                if i == 0:
                    out[(i, j)] = GroupElement((0,) * self.n, j)
                elif j == 0:
                    out[(i, j)] = GroupElement((0,) * self.n, i)
                else:
                    x, lab = self.mult[(t, s)]
                    out[(i, j)] = GroupElement(x, self.index[lab])
        return out

    def element(self, x: Iterable[int], t: int | str = 0) -> GroupElement:
        ti = self.index[t] if isinstance(t, str) else t
        return GroupElement(tuple(x), ti)

    @property
    def one(self) -> GroupElement:
        return GroupElement((0,) * self.n, 0)

    def letter(self, lab: str) -> GroupElement:
        if lab in self.index:
            return GroupElement((0,) * self.n, self.index[lab])
        if lab in self.basis_letters:
            i = self.basis_letters.index(lab)
            return GroupElement(tuple(int(j == i) for j in range(self.n)), 0)
        if lab in self.inverse_letters:
            i = self.inverse_letters.index(lab)
            return GroupElement(tuple(-int(j == i) for j in range(self.n)), 0)
        raise GroupFormatError(f"unknown letter {lab!r}")

    # ------------------------------------------------------------ arithmetic

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        c = self.cocycle[(g.t, h.t)]
        ty = matvec(self.conj_t[g.t], h.x) if g.t else h.x
        return GroupElement(tuple(a + b + d for a, b, d in zip(g.x, ty, c.x)), c.t)

    def product(self, elems: Iterable[GroupElement]) -> GroupElement:
        out = self.one
        for e in elems:
            out = self.multiply(out, e)
        return out

    @cached_property
    def _t_inverse(self) -> list[GroupElement]:
        inv = []
        for i in range(self.D):
            j = next((j for j in range(self.D) if self.cocycle[(i, j)].t == 0), None)
            if j is None:
                raise InvalidGroupError(ValidationReport([Issue("quotient", "transversal element without inverse coset",
                                                                (self.transversal[i],))]))
            c = self.cocycle[(i, j)].x
            # t^-1 = s . (t s)^-1 = s . (-c)
            inv.append(self.multiply(GroupElement((0,) * self.n, j), GroupElement(tuple(-v for v in c), 0)))
        return inv

    def invert(self, g: GroupElement) -> GroupElement:
        return self.multiply(self._t_inverse[g.t], GroupElement(tuple(-v for v in g.x), 0))

    def normalize(self, word: Iterable[str]) -> GroupElement:
        return self.product(self.letter(a) for a in word)

    def conjugate_matrix(self, g: GroupElement) -> list[list[int]]:
        """Matrix of x -> g x g^-1 on Z^n (depends only on the transversal part)."""
        return self.conj_t[g.t]

    # ------------------------------------------------------------ endomorphisms

    @cached_property
    def endos(self) -> dict[str, EndoData]:
        out = {}
        for name, (basis, timg) in self.endo_specs.items():
            bimgs = tuple(GroupElement(x, self.index[t]) for x, t in basis)
            phi = tuple(tuple(bimgs[j].x[i] for j in range(self.n)) for i in range(self.n))
            imgs = tuple(GroupElement(timg[t][0], self.index[timg[t][1]]) for t in self.transversal)
            out[name] = EndoData(name, phi, imgs, bimgs)
        return out

    def endo(self, name: str) -> EndoData:
        if name not in self.endos:
            raise GroupFormatError(f"unknown endomorphism {name!r}; available: {sorted(self.endos)}")
        return self.endos[name]

    def apply_endo(self, e: EndoData, g: GroupElement) -> GroupElement:
        return self.multiply(GroupElement(tuple(matvec(e.Phi, g.x)), 0), e.images_T[g.t])

    # ------------------------------------------------------------ generators and weights

    @cached_property
    def sigma(self) -> list[tuple[GroupElement, int]]:
        return [(self.normalize(g.word), g.weight) for g in self.generators]

    @cached_property
    def max_weight(self) -> int:
        return max(w for _, w in self.sigma)

    def weighted_ball(self, radius: int) -> dict[GroupElement, int]:
        """Weight of every element of weight <= radius (Dijkstra over the generators)."""
        cache = self.__dict__.setdefault("_balls", {})
        best = max((r for r in cache if r >= radius), default=None)
        if best is not None:
            full = cache[best]
            return full if best == radius else {g: w for g, w in full.items() if w <= radius}
        dist = {self.one: 0}
        heap = [(0, self.one)]
        gens = self.sigma
        while heap:
            d, g = heapq.heappop(heap)
            if d > dist.get(g, d):
                continue
            for s, w in gens:
                nd = d + w
                if nd > radius:
                    continue
                h = self.multiply(g, s)
                if nd < dist.get(h, nd + 1):
                    dist[h] = nd
                    heapq.heappush(heap, (nd, h))
        cache[radius] = dist
        return dist

    def element_weight(self, g: GroupElement, bound: int) -> int | None:
        """Exact weight of g, or None if it exceeds ``bound``."""
        return self.weighted_ball(bound).get(g)

    @cached_property
    def extended_generators(self) -> list[tuple[GroupElement, int]]:
        """Products of 1..D generators, deduplicated, with their weights; sorted by (weight, element)."""
        bound = self.D * self.max_weight
        ball = self.weighted_ball(bound)
        seen: set[GroupElement] = set()
        level = {s for s, _ in self.sigma}
        for _ in range(self.D):
            seen |= level
            level = {self.multiply(p, s) for p in level for s, _ in self.sigma}
        return sorted(((g, ball[g]) for g in seen), key=lambda p: (p[1], p[0]))

    def in_subgroup(self, g: GroupElement) -> bool:
        return g.t == 0

    # ------------------------------------------------------------ validation

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        D, n = self.D, self.n
        tr = self.transversal
        # quotient multiplication must be a group table on the cosets
        for i in range(D):
            row = [self.cocycle[(i, j)].t for j in range(D)]
            col = [self.cocycle[(j, i)].t for j in range(D)]
            if len(set(row)) != D:
                j, k = next((j, k) for j, k in itertools.combinations(range(D), 2) if row[j] == row[k])
                rep.add("cosets", "transversal elements are not in distinct cosets", tr[i], tr[j], tr[k])
            if len(set(col)) != D:
                j, k = next((j, k) for j, k in itertools.combinations(range(D), 2) if col[j] == col[k])
                rep.add("cosets", "transversal elements are not in distinct cosets", tr[j], tr[k], tr[i])
        # normality
        for i, t in enumerate(tr[1:], start=1):
            for b in self.basis_letters:
                x, lab = self.mult[(t, b)]
                if lab != t:
                    rep.add("normality", f"{t}.{b}.{t}^-1 is not in Z^n", t, b)
            if n and abs(det(self.conj_t[i])) != 1:
                rep.add("normality", f"conjugation by {t} is not an automorphism of Z^n", t)
        if not rep.ok:
            return rep
        letters = self.letters
        # table entries agree with the arithmetic they induce
        for (a, b), (x, lab) in sorted(self.mult.items()):
            got = self.multiply(self.letter(a), self.letter(b))
            if got != GroupElement(x, self.index[lab]):
                rep.add("table", f"entry ({a}, {b}) disagrees with the induced product {got}", a, b)
        for a, b, c in itertools.product(letters, repeat=3):
            la, lb, lc = self.letter(a), self.letter(b), self.letter(c)
            if self.multiply(self.multiply(la, lb), lc) != self.multiply(la, self.multiply(lb, lc)):
                rep.add("associativity", "(ab)c != a(bc)", a, b, c)
                break
        if not rep.ok:
            return rep
        for name, e in self.endos.items():
            for i, b in enumerate(e.basis_images):
                if b.t != 0:
                    rep.add("endo", f"Z^n not φ-invariant under {name!r}", self.basis_letters[i], b)
            if any(b.t != 0 for b in e.basis_images):
                continue
            for a, b in itertools.product(letters, repeat=2):
                la, lb = self.letter(a), self.letter(b)
                lhs = self.apply_endo(e, self.multiply(la, lb))
                rhs = self.multiply(self.apply_endo(e, la), self.apply_endo(e, lb))
                if lhs != rhs:
                    rep.add("endo", f"{name!r} is not a homomorphism", a, b)
                    break
        self._validate_generators(rep)
        return rep

    def _validate_generators(self, rep: ValidationReport) -> None:
        D, n = self.D, self.n
        sig = [s for s, _ in self.sigma]
        # cosets reached, with representatives, then Schreier generators of the Z^n part
        reps = {0: self.one}
        queue = [0]
        while queue:
            i = queue.pop(0)
            for s in sig:
                h = self.multiply(reps[i], s)
                if h.t not in reps:
                    reps[h.t] = h
                    queue.append(h.t)
        if len(reps) != D:
            missing = [self.transversal[i] for i in range(D) if i not in reps]
            rep.add("generators", "generators do not reach every coset", *missing)
            return
        schreier = []
        for i, r in reps.items():
            for s in sig:
                h = self.multiply(r, s)
                q = self.multiply(h, self.invert(reps[h.t]))
                schreier.append(list(q.x))
        if n:
            basis = lattice_basis(schreier, n)
            index = 1
            for j, b in enumerate(basis):
                index *= b[j] if j < len(b) else 0
            if len(basis) != n or abs(index) != 1:
                rep.add("generators", "generators do not generate Z^n", *basis)
                return
        # monoid generation: each generator inverse must be a positive word
        bound = max(8, 2 * D) * self.max_weight * max(1, n)
        ball = self.weighted_ball(bound)
        for g, (s, _) in zip(self.generators, self.sigma):
            if self.invert(s) not in ball:
                rep.add("generators", "generators do not generate the group as a monoid "
                        f"(no positive word for the inverse of {g.name} up to weight {bound})", g.name)

    def require_valid(self) -> "GroupDescription":
        rep = self.validate()
        if not rep.ok:
            raise InvalidGroupError(rep)
        return self

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "transversal": self.transversal,
            "mult": [{"left": a, "right": b, "x": list(x), "t": t} for (a, b), (x, t) in sorted(self.mult.items())],
            "endos": {k: {"basis_images": [{"x": list(x), "t": t} for x, t in basis],
                          "transversal_images": {lab: {"x": list(x), "t": t} for lab, (x, t) in timg.items()}}
                      for k, (basis, timg) in self.endo_specs.items()},
            "generators": [{"name": g.name, "word": list(g.word), "weight": g.weight} for g in self.generators],
        }


BUNDLED = ("zn", "z_phi_neg", "dihedral", "klein")


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("twistgrowth") / "data" / f"{name}.json"))


def load_group(spec: str | Path, validate: bool = True) -> GroupDescription:
    """Load a description from a path or by bundled name."""
    p = Path(spec)
    if not p.exists() and str(spec) in BUNDLED:
        p = bundled_path(str(spec))
    if not p.exists():
        raise GroupFormatError(f"no such group description: {spec}")
    g = GroupDescription.load(p)
    if validate:
        g.require_valid()
    return g
