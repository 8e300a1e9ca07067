"""Twisted classes as finite unions of lattice cosets, and their relative growth.

For g = x_g t_g and each transversal element t, conjugating g by Z^n t
sweeps out the coset (H_s + T_t x_g + c_t) s, where c_t s is the normal
form of t t_g phi(t)^-1 and H_s = Im(I - T_s Phi).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosetreps import CosetReps, SubgroupH
from .genfunc import WeightForm, cumulative, series_of_language
from .intset import Constraint, EQ, PolyhedralSet, project
from .lattice import in_lattice_coset
from .patterns import DEFAULT_PATTERN_CAP, Pattern, PatternSpace
from .ratfun import RationalSeries
from .twisted import twist, twist_subgroups
from .vagroup import EndoData, GroupDescription, GroupElement


@dataclass(frozen=True)
class ClassPiece:
    t: int
    target: int
    shift: tuple[int, ...]
    H: SubgroupH

    def contains(self, h: GroupElement) -> bool:
        return h.t == self.target and in_lattice_coset(h.x, self.H.basis, self.shift)


@dataclass(frozen=True)
class ClassDescriptor:
    g: GroupElement
    pieces: tuple[ClassPiece, ...]

    def contains(self, h: GroupElement) -> bool:
        return any(p.contains(h) for p in self.pieces)

    def to_json(self) -> list[dict]:
        return [{"t": p.t, "target": p.target, "shift": list(p.shift), "H": [list(b) for b in p.H.basis]}
                for p in self.pieces]


def class_descriptor(group: GroupDescription, endo: EndoData, g: GroupElement) -> ClassDescriptor:
    H = twist_subgroups(group, endo)
    pieces = []
    for t in range(group.D):
        tw = twist(group, endo, t, g)
        pieces.append(ClassPiece(t, tw.t, tw.x, H[tw.t]))
    return ClassDescriptor(g, tuple(pieces))


def is_twisted_conjugate(group: GroupDescription, endo: EndoData, a: GroupElement, b: GroupElement) -> bool:
    """True iff a = c b phi(c)^-1 for some c."""
    return class_descriptor(group, endo, b).contains(a)


class RelativePipeline:
    """Geodesic element representatives (trivial H) reused across classes."""

    def __init__(self, group: GroupDescription, endo: EndoData | str, *, reduce: bool = True,
                 order: str = "forward", cap: int = DEFAULT_PATTERN_CAP, seed: int = 0):
        self.group = group
        self.endo = group.endo(endo) if isinstance(endo, str) else endo
        self.space = PatternSpace(group, reduce=reduce, order=order, cap=cap)
        self.reps = CosetReps(self.space, SubgroupH.trivial(group.n))
        self.seed = seed

    def class_part(self, p: Pattern, desc: ClassDescriptor) -> PolyhedralSet:
        """Exponent vectors of p whose evaluation lies in the class."""
        sp = self.space
        m = sp.m(p)
        rep = sp.affine_rep(p)
        out = PolyhedralSet.empty(m)
        for piece in desc.pieces:
            if piece.target != p.t:
                continue
            d = piece.H.d
            dim = m + d
            cons = []
            for i in range(sp.n):
                u = list(rep.A[i]) + [-h[i] for h in piece.H.basis]
                cons.append(Constraint(EQ, tuple(u), piece.shift[i] - rep.B[i]))
            out = out | project(PolyhedralSet.from_constraints(dim, cons), list(range(m)))
        return out

    def series(self, g: GroupElement) -> RationalSeries:
        desc = class_descriptor(self.group, self.endo, g)
        parts = []
        for p in self.space.patterns:
            U = self.reps.unique_reps(p)
            sel = (U & self.class_part(p, desc)).pruned()
            if not sel.is_empty():
                rep = self.space.affine_rep(p)
                parts.append((sel, WeightForm(rep.wA, rep.wB)))
        return cumulative(series_of_language(parts, seed=self.seed))


def relative_series(group: GroupDescription, endo: EndoData | str, g: GroupElement, **kwargs) -> RationalSeries:
    """Coefficient r counts elements of the twisted class of g with weight <= r."""
    return RelativePipeline(group, endo, **kwargs).series(g)


def standard_growth_series(group: GroupDescription, *, reduce: bool = True, order: str = "forward",
                           cap: int = DEFAULT_PATTERN_CAP, seed: int = 0) -> RationalSeries:
    """Cumulative growth series: coefficient r counts elements of weight <= r."""
    space = PatternSpace(group, reduce=reduce, order=order, cap=cap)
    reps = CosetReps(space, SubgroupH.trivial(group.n))
    parts = []
    for p in space.patterns:
        rep = space.affine_rep(p)
        parts.append((reps.unique_reps(p), WeightForm(rep.wA, rep.wB)))
    return cumulative(series_of_language(parts, seed=seed))
