"""Brute-force ground truth from weighted balls in the Cayley graph.

Nothing here touches polyhedral sets or generating functions; class
membership uses the lattice-coset description of twisted classes, and
``conjugator_search`` offers a check that does not even use that.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .relative import class_descriptor
from .vagroup import EndoData, GroupDescription, GroupElement


@dataclass(frozen=True)
class BallTable:
    radius: int
    weights: dict[GroupElement, int]

    def __len__(self) -> int:
        return len(self.weights)

    def sizes(self) -> list[int]:
        """beta(k) for k = 0..radius."""
        out = [0] * (self.radius + 1)
        for w in self.weights.values():
            out[w] += 1
        for k in range(1, len(out)):
            out[k] += out[k - 1]
        return out

    def by_weight(self) -> list[tuple[GroupElement, int]]:
        return sorted(self.weights.items(), key=lambda kv: (kv[1], kv[0]))


def ball(group: GroupDescription, r: int) -> BallTable:
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return BallTable(r, dict(group.weighted_ball(r)))


def _resolve(group: GroupDescription, endo: EndoData | str) -> EndoData:
    return group.endo(endo) if isinstance(endo, str) else endo


def class_representatives(group: GroupDescription, endo: EndoData | str, r: int) -> list[tuple[GroupElement, int]]:
    """One lightest element per twisted class meeting the ball, with its weight."""
    e = _resolve(group, endo)
    reps: list[tuple[GroupElement, int]] = []
    descs = []
    for g, w in ball(group, r).by_weight():
        if not any(d.contains(g) for d in descs):
            reps.append((g, w))
            descs.append(class_descriptor(group, e, g))
    return reps


def class_counts(group: GroupDescription, endo: EndoData | str, r: int) -> list[int]:
    """c(k) = number of twisted classes with an element of weight <= k, for k = 0..r."""
    reps = class_representatives(group, endo, r)
    return [sum(1 for _, w in reps if w <= k) for k in range(r + 1)]


def relative_counts(group: GroupDescription, endo: EndoData | str, g: GroupElement, r: int) -> list[int]:
    d = class_descriptor(group, _resolve(group, endo), g)
    out = [0] * (r + 1)
    for h, w in ball(group, r).weights.items():
        if d.contains(h):
            out[w] += 1
    for k in range(1, r + 1):
        out[k] += out[k - 1]
    return out


def conjugator_search(group: GroupDescription, endo: EndoData | str, a: GroupElement, b: GroupElement,
                      radius: int) -> bool:
    """True if some c of weight <= radius has c b phi(c)^-1 = a.  A False is only evidence."""
    e = _resolve(group, endo)
    for c in group.weighted_ball(radius):
        if group.multiply(group.multiply(c, b), group.invert(group.apply_endo(e, c))) == a:
            return True
    return False


def growth_table(group: GroupDescription, endo: EndoData | str, r: int) -> list[tuple[int, int, int]]:
    beta = ball(group, r).sizes()
    c = class_counts(group, endo, r)
    return [(k, beta[k], c[k]) for k in range(r + 1)]


def table_csv(rows: list[tuple[int, int, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "beta", "c_phi"])
    w.writerows(rows)
    return buf.getvalue()
