import json

import pytest
from hypothesis import given, strategies as st

from dinfty import corpus
from dinfty.errors import IncompleteTable, LevelOutOfRange, NotComposable, TowerMismatch
from dinfty.groupoid import (
    CellGroupoid, CellSequence, GlobularSet, SymbolicPiCell, apply_cells, axioms_pass,
    build_cell_sequences, build_D_groupoid, check_globular, check_iso_F, check_strict_axioms,
    discrete_groupoid, groupoid_dot, groupoid_report_json, is_diagonal, pullback_set,
)
from dinfty.tower import apply


def one_object(elements, op, unit):
    """A monoid as a globular set with one object and N = 1."""
    G = GlobularSet([["*"], list(elements)], [None, {g: "*" for g in elements}],
                    [None, {g: "*" for g in elements}])
    comps = {(1, 0): {(a, b): op(a, b) for a in elements for b in elements}}
    return CellGroupoid(G, comps, [{"*": unit}])


def pair_groupoid(objects):
    """Exactly one arrow between any two objects."""
    arrows = [(x, y) for x in objects for y in objects]
    G = GlobularSet([list(objects), arrows], [None, {a: a[0] for a in arrows}],
                    [None, {a: a[1] for a in arrows}])
    # (d2, d) ↦ d2 ∘ d with t(d) = s(d2)
    comps = {(1, 0): {((y, z), (x, y)): (x, z) for x in objects for y in objects for z in objects}}
    return CellGroupoid(G, comps, [{x: (x, x) for x in objects}])


def failing(report):
    return sorted(c for c in "abcdefg" if not report[c]["passed"])


def test_cyclic_group_passes():
    r = check_strict_axioms(one_object(range(3), lambda a, b: (a + b) % 3, 0))
    assert axioms_pass(r) and r["c"]["checked"] == 27


def test_subtraction_is_not_associative():
    r = check_strict_axioms(one_object(range(3), lambda a, b: (a - b) % 3, 0))
    assert "c" in failing(r)
    assert r["c"]["witnesses"]


def test_monoid_without_inverses_fails_inverse_axiom():
    r = check_strict_axioms(one_object(range(3), lambda a, b: (a * b) % 3, 1))
    assert failing(r) == ["g"]
    assert r["g"]["failed"] == 1  # only 0 lacks an inverse


@given(st.integers(1, 4))
def test_pair_groupoids_pass(n):
    g = pair_groupoid([f"o{i}" for i in range(n)])
    assert axioms_pass(check_strict_axioms(g))


def test_globular_violation_is_reported():
    G = GlobularSet([["x", "y"], ["f"], ["α"]],
                    [None, {"f": "x"}, {"α": "f"}], [None, {"f": "y"}, {"α": "f"}])
    assert check_globular(G)[0]
    G.target[1]["g"] = "x"
    G.source[1]["g"] = "y"
    G.carriers[1].append("g")
    G.target[2]["α"] = "g"
    ok, bad = check_globular(G)
    assert not ok and {b["identity"] for b in bad} == {"s∘s = s∘t", "t∘s = t∘t"}


def test_level_zero_is_vacuous():
    G = GlobularSet([["x"]], [None], [None])
    assert check_globular(G) == (True, [])
    r = check_strict_axioms(CellGroupoid(G, {}, []))
    assert axioms_pass(r) and all(r[c]["checked"] == 0 for c in "abcdefg")


def test_pullback_levels_are_checked():
    G = build_D_groupoid(corpus.load_space("point"), N=2).globular
    with pytest.raises(LevelOutOfRange):
        pullback_set(G, 3, 0)
    with pytest.raises(LevelOutOfRange):
        pullback_set(G, 1, 1)


def test_missing_table_entry():
    g = pair_groupoid(["a", "b"])
    del g.compositions[(1, 0)][(("b", "a"), ("a", "b"))]
    with pytest.raises(IncompleteTable):
        check_strict_axioms(g)
    with pytest.raises(NotComposable):
        g.compose(1, 0, ("b", "a"), ("a", "b"))


def test_discrete_groupoid():
    g = discrete_groupoid(["u", "v"], N=2)
    assert axioms_pass(check_strict_axioms(g))
    assert pullback_set(g.globular, 2, 0) == {(("u", 2), ("u", 2)), (("v", 2), ("v", 2))}


# ---------------------------------------------------------------- the space groupoid

@pytest.mark.parametrize("name, size", [("lattice_L", 5), ("nplus2", 3), ("point", 1), ("pseudo_circle", 4)])
def test_space_groupoid_satisfies_axioms(name, size):
    g = build_D_groupoid(corpus.load_space(name), N=3)
    assert [len(c) for c in g.globular.carriers] == [size] * 4
    r = check_strict_axioms(g)
    assert axioms_pass(r), failing(r)
    assert all(r["diagonal"].values())


def test_space_groupoid_cells(lattice):
    g = build_D_groupoid(lattice, N=2)
    cell = SymbolicPiCell("0", 2)
    assert str(cell) == "π2(0)" and str(SymbolicPiCell("0", 0)) == "0"
    assert g.globular.s(cell, 2, 2) == SymbolicPiCell("0", 0)
    assert g.compose(2, 0, cell, cell) == cell
    with pytest.raises(NotComposable):
        g.compose(1, 0, SymbolicPiCell("0", 1), SymbolicPiCell("1", 1))
    assert g.globular.carriers[1][0].certificate.startswith("trivial (cone with apex")
    circle = build_D_groupoid(corpus.load_space("pseudo_circle"), N=1)
    assert circle.globular.carriers[1][0].certificate == "unverified group content"


def test_report_json_and_dot(lattice):
    g = build_D_groupoid(lattice, N=2)
    data = json.loads(groupoid_report_json(check_strict_axioms(g)))
    assert data["c"]["name"] == "associativity" and data["globular"]["passed"]
    dot = groupoid_dot(g)
    assert dot.startswith("digraph") and 'label="s=t"' in dot


def test_diagonal_predicate():
    assert is_diagonal({(1, 1), (2, 2)}) and not is_diagonal({(1, 2)})


# ---------------------------------------------------------------- cell sequences

def test_cell_sequences_over_lattice(lattice):
    seqs = build_cell_sequences(lattice, N=3)
    assert len(seqs) == 5 and len(set(seqs)) == 5
    assert CellSequence.over("0", 3).render() == "⟨0, c_0, c_{c_0}, c_{c_{c_0}}⟩"
    assert CellSequence.over("0", 3) == CellSequence.over("0", 1)
    with pytest.raises(ValueError):
        CellSequence([SymbolicPiCell("0", 0), SymbolicPiCell("1", 1)])


def test_application_on_cell_sequences(tower12, tower21):
    elems = tower12.elements()
    a, b = elems[4], elems[7]
    fa, fb = CellSequence.over(a, 2), CellSequence.over(b, 2)
    assert apply_cells(fa, fb, tower12) == CellSequence.over(apply(a, b), 2)
    bot = CellSequence.over(tower12.bottom(), 2)
    assert all(apply_cells(bot, CellSequence.over(e, 2), tower12).base == tower12.bottom() for e in elems)
    with pytest.raises(TowerMismatch):
        apply_cells(CellSequence.over(tower21.bottom(), 2), fb, tower12)
    with pytest.raises(ValueError):
        apply_cells(fa, CellSequence.over(b, 1), tower12)


def test_iso_on_truncated_tower(tower12):
    r = check_iso_F(tower12, N=3)
    assert r["passed"] and r["bijective"] and r["cpo"]
    assert r["elements"] == 10 and r["pairs_checked"] == 100
    assert r["homomorphism_failures"] == [] and r["order_failures"] == []
