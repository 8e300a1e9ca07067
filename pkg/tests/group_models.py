"""Faithful affine models of the bundled groups.

Each group acts on Z^m by affine maps; the multiplication tables in
``twistgrowth/data`` are generated from these models, and the tests compare
table arithmetic against direct composition of maps.

Run as a script to regenerate the bundled JSON files.
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

Map = tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]


def compose(g: Map, h: Map) -> Map:
    """g after h."""
    mg, vg = g
    mh, vh = h
    m = len(vg)
    mat = tuple(tuple(sum(mg[i][k] * mh[k][j] for k in range(m)) for j in range(m)) for i in range(m))
    vec = tuple(sum(mg[i][k] * vh[k] for k in range(m)) + vg[i] for i in range(m))
    return mat, vec


def inverse(g: Map) -> Map:
    mat, vec = g
    # all models use signed permutation matrices
    inv = tuple(tuple(mat[j][i] for j in range(len(vec))) for i in range(len(vec)))
    return inv, tuple(-sum(inv[i][k] * vec[k] for k in range(len(vec))) for i in range(len(vec)))


def ident(m: int) -> Map:
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m)), (0,) * m


def translation(v) -> Map:
    return ident(len(v))[0], tuple(v)


class Model:
    name: str
    m: int
    basis: list[Map]
    transversal: dict[str, Map]
    generators: list[tuple[str, list[str], int]]
    endos: dict[str, tuple[list[Map], dict[str, Map]]]

    def nf(self, g: Map) -> tuple[tuple[int, ...], str]:
        raise NotImplementedError

    def letter(self, lab: str) -> Map:
        n = len(self.basis)
        for i in range(n):
            if lab == f"e{i + 1}":
                return self.basis[i]
            if lab == f"E{i + 1}":
                return inverse(self.basis[i])
        return self.transversal[lab]

    def element(self, x, lab: str) -> Map:
        g = self.transversal[lab]
        for i, xi in enumerate(x):
            b = self.basis[i] if xi >= 0 else inverse(self.basis[i])
            for _ in range(abs(xi)):
                g = compose(b, g)
        return g

    def letters(self) -> list[str]:
        n = len(self.basis)
        return [f"e{i + 1}" for i in range(n)] + [f"E{i + 1}" for i in range(n)] + list(self.transversal)

    def description(self) -> dict:
        letters = self.letters()
        mult = []
        for a, b in itertools.product(letters, repeat=2):
            x, t = self.nf(compose(self.letter(a), self.letter(b)))
            mult.append({"left": a, "right": b, "x": list(x), "t": t})
        endos = {}
        for name, (bimg, timg) in self.endos.items():
            endos[name] = {
                "basis_images": [dict(zip(("x", "t"), (list(self.nf(g)[0]), self.nf(g)[1]))) for g in bimg],
                "transversal_images": {lab: {"x": list(self.nf(g)[0]), "t": self.nf(g)[1]} for lab, g in timg.items()},
            }
        return {
            "name": self.name,
            "n": len(self.basis),
            "transversal": list(self.transversal),
            "mult": mult,
            "endos": endos,
            "generators": [{"name": nm, "word": w, "weight": wt} for nm, w, wt in self.generators],
        }


class ZnModel(Model):
    def __init__(self, n: int, name: str, endos: dict[str, list[list[int]]]):
        self.name, self.m = name, n
        self.basis = [translation([int(i == j) for j in range(n)]) for i in range(n)]
        self.transversal = {"1": ident(n)}
        self.generators = []
        for i in range(n):
            self.generators += [(f"x{i + 1}", [f"e{i + 1}"], 1), (f"X{i + 1}", [f"E{i + 1}"], 1)]
        self.endos = {}
        for nm, mat in endos.items():
            # mat[i] is the image of e_i
            self.endos[nm] = ([translation(col) for col in mat], {"1": ident(n)})

    def nf(self, g):
        return tuple(g[1]), "1"


class DihedralModel(Model):
    """Infinite dihedral group on Z: a(u) = u + 1, b(u) = -u; subgroup <a^2>."""

    name, m = "dihedral", 1

    def __init__(self):
        a = (((1,),), (1,))
        b = (((-1,),), (0,))
        self.a, self.b = a, b
        self.basis = [compose(a, a)]
        self.transversal = {"1": ident(1), "a": a, "b": b, "ab": compose(a, b)}
        self.generators = [("a", ["a"], 1), ("A", ["E1", "a"], 1), ("b", ["b"], 1)]
        self.endos = {
            "id": ([self.basis[0]], dict(self.transversal)),
            # a -> a, b -> ab
            "flip": ([self.basis[0]], {"1": ident(1), "a": a, "b": compose(a, b), "ab": compose(a, compose(a, b))}),
        }

    def nf(self, g):
        eps, c = g[0][0][0], g[1][0]
        ct = c % 2
        lab = {(1, 0): "1", (1, 1): "a", (-1, 0): "b", (-1, 1): "ab"}[(eps, ct)]
        return ((c - ct) // 2,), lab


class KleinModel(Model):
    """Klein bottle group on Z^2: a(u,v) = (u+1, v), b(u,v) = (-u, v+1); subgroup <a, b^2>."""

    name, m = "klein", 2

    def __init__(self):
        a = (((1, 0), (0, 1)), (1, 0))
        b = (((-1, 0), (0, 1)), (0, 1))
        self.basis = [a, compose(b, b)]
        self.transversal = {"1": ident(2), "b": b}
        self.generators = [("a", ["e1"], 1), ("A", ["E1"], 1), ("b", ["b"], 1), ("B", ["E2", "b"], 1)]
        self.endos = {
            "id": (list(self.basis), dict(self.transversal)),
            # a -> a^-1, b -> b
            "inv_a": ([inverse(a), compose(b, b)], {"1": ident(2), "b": b}),
        }

    def nf(self, g):
        c, d = g[1]
        if d % 2 == 0:
            return (c, d // 2), "1"
        return (c, (d - 1) // 2), "b"


def all_models() -> dict[str, Model]:
    return {
        "zn": ZnModel(2, "zn", {"id": [[1, 0], [0, 1]], "swap": [[0, 1], [1, 0]], "neg": [[-1, 0], [0, -1]]}),
        "z_phi_neg": ZnModel(1, "z_phi_neg", {"neg": [[-1]], "double": [[2]], "id": [[1]]}),
        "dihedral": DihedralModel(),
        "klein": KleinModel(),
    }


def main(out_dir: str) -> None:
    out = Path(out_dir)
    for key, model in all_models().items():
        (out / f"{key}.json").write_text(json.dumps(model.description(), indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).resolve().parents[1] / "src" / "twistgrowth" / "data"))
