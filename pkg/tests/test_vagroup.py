from __future__ import annotations

import heapq
import json
import random

import pytest

import group_models as M
from twistgrowth.vagroup import (
    BUNDLED,
    GroupDescription,
    GroupElement,
    GroupFormatError,
    InvalidGroupError,
    bundled_path,
    load_group,
)


def raw(name):
    return json.loads(bundled_path(name).read_text(encoding="utf-8"))


def set_entry(obj, left, right, x, t):
    for e in obj["mult"]:
        if e["left"] == left and e["right"] == right:
            e["x"], e["t"] = x, t
            return
    raise KeyError((left, right))


def random_element(rng, g, spread=4):
    return GroupElement(tuple(rng.randint(-spread, spread) for _ in range(g.n)), rng.randrange(g.D))


# ---------------------------------------------------------------- validation


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_descriptions_valid(name):
    rep = load_group(name, validate=False).validate()
    assert rep.ok, rep.to_json()


def test_z2_description_shape(groups):
    g = groups["zn"]
    assert (g.n, g.D) == (2, 1)
    assert sorted(s for s, _ in g.sigma) == sorted(g.letter(a) for a in ("e1", "E1", "e2", "E2"))
    assert all(w == 1 for _, w in g.sigma)


def test_dihedral_relations(groups):
    g = groups["dihedral"]
    assert g.transversal == ["1", "a", "b", "ab"]
    a, b = g.letter("a"), g.letter("b")
    assert g.multiply(g.multiply(b, a), g.invert(b)) == g.invert(a)
    assert g.multiply(b, b) == g.one


def test_endo_breaking_invariance():
    obj = raw("dihedral")
    obj["endos"]["flip"]["basis_images"][0] = {"x": [0], "t": "b"}
    rep = GroupDescription.from_json(obj).validate()
    assert not rep.ok
    assert any("not φ-invariant" in i.message for i in rep.issues)


def test_broken_associativity_names_triple():
    obj = raw("dihedral")
    set_entry(obj, "b", "b", [1], "1")  # b^2 = a^2 contradicts the rest of the table
    rep = GroupDescription.from_json(obj).validate()
    assert not rep.ok
    issue = next(i for i in rep.issues if i.check == "associativity")
    assert len(issue.witness) == 3


def test_table_entry_disagreement():
    obj = raw("dihedral")
    set_entry(obj, "a", "E1", [3], "a")
    rep = GroupDescription.from_json(obj).validate()
    assert any(i.check == "table" for i in rep.issues)


def test_non_generating_set_rejected():
    obj = raw("z_phi_neg")
    obj["generators"] = [{"name": "x", "word": ["e1"], "weight": 1}]
    rep = GroupDescription.from_json(obj).validate()
    assert any(i.check == "generators" for i in rep.issues)


def test_missing_coset_generators_rejected():
    obj = raw("klein")
    obj["generators"] = [g for g in obj["generators"] if "b" not in g["word"]]
    rep = GroupDescription.from_json(obj).validate()
    assert any(i.check == "generators" for i in rep.issues)


def test_require_valid_raises():
    obj = raw("z_phi_neg")
    obj["generators"] = [{"name": "x", "word": ["e1"], "weight": 1}]
    with pytest.raises(InvalidGroupError):
        GroupDescription.from_json(obj).require_valid()


@pytest.mark.parametrize("mutate,msg", [
    (lambda o: o.__setitem__("transversal", ["a"] + o["transversal"][1:]), "identity"),
    (lambda o: o["generators"][0].__setitem__("weight", 0), "weight"),
    (lambda o: o["generators"][0].__setitem__("word", ["zz"]), "unknown letter"),
    (lambda o: o.pop("n"), "malformed"),
    (lambda o: o["mult"][0].__setitem__("x", [1, 2, 3]), "length"),
])
def test_format_errors(mutate, msg):
    obj = raw("dihedral")
    mutate(obj)
    with pytest.raises(GroupFormatError, match=msg):
        GroupDescription.from_json(obj)


def test_unknown_group_path():
    with pytest.raises(GroupFormatError):
        load_group("/nonexistent/group.json")


def test_json_round_trip(groups):
    for g in groups.values():
        again = GroupDescription.from_json(g.to_json())
        assert again.validate().ok
        assert again.mult == g.mult


# ---------------------------------------------------------------- arithmetic


def test_normalize_examples(groups):
    g = groups["dihedral"]
    assert g.normalize(["a", "a"]) == GroupElement((1,), 0)
    assert g.normalize([]) == g.one
    x, t = g.mult[("a", "b")]
    assert g.normalize(["a", "b"]) == GroupElement(x, g.index[t])


def test_normalize_unknown_letter(groups):
    with pytest.raises(GroupFormatError):
        groups["zn"].normalize(["e3"])


@pytest.mark.parametrize("name", BUNDLED)
def test_normalize_is_a_monoid_morphism(groups, name):
    g = groups[name]
    rng = random.Random(1)
    for _ in range(100):
        u = [rng.choice(g.letters) for _ in range(rng.randint(0, 6))]
        v = [rng.choice(g.letters) for _ in range(rng.randint(0, 6))]
        assert g.normalize(u + v) == g.multiply(g.normalize(u), g.normalize(v))


@pytest.mark.parametrize("name", BUNDLED)
def test_group_axioms(groups, name):
    g = groups[name]
    rng = random.Random(2)
    for _ in range(100):
        a, b, c = (random_element(rng, g) for _ in range(3))
        assert g.multiply(a, g.invert(a)) == g.one == g.multiply(g.invert(a), a)
        assert g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c))
        assert g.multiply(a, g.one) == a


@pytest.mark.parametrize("name", BUNDLED)
def test_arithmetic_matches_affine_model(groups, name):
    g = groups[name]
    model = M.all_models()[name]
    rng = random.Random(3)
    for _ in range(60):
        word = [rng.choice(g.letters) for _ in range(rng.randint(0, 7))]
        f = M.ident(model.m)
        for lab in word:
            f = M.compose(f, model.letter(lab))
        x, lab = model.nf(f)
        assert g.normalize(word) == g.element(x, lab)


@pytest.mark.parametrize("name", BUNDLED)
def test_endos_match_affine_model(groups, name):
    g = groups[name]
    model = M.all_models()[name]
    rng = random.Random(4)
    for ename, (bimg, timg) in model.endos.items():
        e = g.endo(ename)
        for _ in range(40):
            h = random_element(rng, g, 3)
            f = M.ident(model.m)
            for i, xi in enumerate(h.x):
                step = bimg[i] if xi >= 0 else M.inverse(bimg[i])
                for _ in range(abs(xi)):
                    f = M.compose(f, step)
            f = M.compose(f, timg[g.transversal[h.t]])
            x, lab = model.nf(f)
            assert g.apply_endo(e, h) == g.element(x, lab)


def test_apply_endo_examples(groups):
    z = groups["z_phi_neg"]
    assert z.apply_endo(z.endo("neg"), GroupElement((3,), 0)) == GroupElement((-3,), 0)
    rng = random.Random(5)
    for name in BUNDLED:
        g = groups[name]
        e = g.endo("id")
        for _ in range(20):
            h = random_element(rng, g)
            assert g.apply_endo(e, h) == h


@pytest.mark.parametrize("name", BUNDLED)
def test_endos_are_homomorphisms(groups, name):
    g = groups[name]
    rng = random.Random(6)
    for e in g.endos.values():
        for _ in range(50):
            a, b = random_element(rng, g), random_element(rng, g)
            assert g.apply_endo(e, g.multiply(a, b)) == g.multiply(g.apply_endo(e, a), g.apply_endo(e, b))


def test_unknown_endo(groups):
    with pytest.raises(GroupFormatError):
        groups["zn"].endo("nope")


# ---------------------------------------------------------------- conjugation and generators


def test_conjugation_matrices(groups):
    assert groups["zn"].conj_t == [[[1, 0], [0, 1]]]
    d = groups["dihedral"]
    assert d.conj_t[0] == [[1]]
    assert d.conj_t[d.index["b"]] == [[-1]]
    assert d.conj_t[d.index["a"]] == [[1]]


@pytest.mark.parametrize("name", BUNDLED)
def test_conjugation_matrix_columns(groups, name):
    g = groups[name]
    for t in range(g.D):
        tt = GroupElement((0,) * g.n, t)
        for i in range(g.n):
            ei = g.letter(f"e{i + 1}")
            c = g.multiply(g.multiply(tt, ei), g.invert(tt))
            assert c.t == 0
            assert list(c.x) == [row[i] for row in g.conj_t[t]]


def test_extended_generators_z2(groups):
    g = groups["zn"]
    S = g.extended_generators
    assert sorted(S) == sorted((g.letter(a), 1) for a in ("e1", "E1", "e2", "E2"))


def test_extended_generators_dihedral(groups):
    g = groups["dihedral"]
    S = dict(g.extended_generators)
    assert S[GroupElement((1,), 0)] == 2
    assert len(S) == len(g.extended_generators)


def test_element_weights(groups):
    z = groups["zn"]
    assert z.element_weight(z.one, 5) == 0
    assert z.element_weight(GroupElement((1, 1), 0), 5) == 2
    assert z.element_weight(GroupElement((9, 0), 0), 5) is None
    d = groups["dihedral"]
    a, b = d.letter("a"), d.letter("b")
    assert d.element_weight(a, 5) == 1
    assert d.element_weight(d.multiply(a, a), 5) == 2
    assert d.element_weight(d.multiply(a, b), 5) == 2


@pytest.mark.parametrize("name", BUNDLED)
def test_pigeonhole_subproduct(groups, name):
    g = groups[name]
    S = [s for s, _ in g.extended_generators]
    rng = random.Random(7)
    for _ in range(100):
        seq = [rng.choice(S) for _ in range(g.D)]
        prefixes = [g.product(seq[:k]) for k in range(g.D + 1)]
        assert any(g.product(seq[i:j]).t == 0 for i in range(g.D) for j in range(i + 1, g.D + 1))
        assert len({p.t for p in prefixes}) <= g.D


@pytest.mark.parametrize("name", BUNDLED)
def test_extended_weights_preserve_metric(groups, name):
    g = groups[name]
    r = 6
    dist = {g.one: 0}
    heap = [(0, g.one)]
    while heap:
        d, h = heapq.heappop(heap)
        if d > dist[h]:
            continue
        for s, w in g.extended_generators:
            nd = d + w
            if nd <= r:
                k = g.multiply(h, s)
                if nd < dist.get(k, nd + 1):
                    dist[k] = nd
                    heapq.heappush(heap, (nd, k))
    assert dist == g.weighted_ball(r)
