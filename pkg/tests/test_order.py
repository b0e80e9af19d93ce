import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from dinfty import corpus
from dinfty.errors import AntisymmetryViolation, NotACpo, TransitivityViolation, UnknownElement
from dinfty.order import (
    MonotoneFn, Poset, certify_cpo, chain, flat_cpo, function_space, glb, hasse_dot, is_directed,
    is_monotone, is_scott_continuous, lub, monotone_tables, poset_from_json, poset_to_json, scott_opens,
)
from strategies import orders


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        yield from (frozenset(c) for c in itertools.combinations(xs, r))


def oracle_opens(cpo):
    """Scott opens straight from the definition, over label sets."""
    P = cpo.poset
    le = P.le
    directed = [D for D in subsets(P.elements) if D and
                all(any(le(a, c) and le(b, c) for c in D) for a in D for b in D)]

    def sup(D):
        ub = [u for u in P.elements if all(le(d, u) for d in D)]
        least = [u for u in ub if all(le(u, v) for v in ub)]
        return least[0] if least else None

    opens = set()
    for A in subsets(P.elements):
        final = all(y in A for x in A for y in P.elements if le(x, y))
        inaccessible = all(D & A for D in directed if sup(D) in A)
        if final and inaccessible:
            opens.add(A)
    return opens


def test_flat_and_chain_shapes():
    d = flat_cpo(2)
    assert d.elements == ("bot", "0", "1")
    assert not d.poset.le("0", "1")
    c = chain(3)
    assert c.poset.le("c0", "c2") and c.bottom == "c0"


def test_reflexive_closure_and_covers():
    P = Poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert P.le("b", "b")
    assert sorted(P.covers()) == [("a", "b"), ("b", "c")]


def test_antisymmetry_witness():
    with pytest.raises(AntisymmetryViolation) as exc:
        Poset(["a", "b"], [("a", "b"), ("b", "a")])
    assert {exc.value.x, exc.value.y} == {"a", "b"}


def test_transitivity_witness():
    with pytest.raises(TransitivityViolation) as exc:
        Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert (exc.value.x, exc.value.y, exc.value.z) == ("a", "b", "c")


def test_unknown_element():
    with pytest.raises(UnknownElement):
        Poset(["a"], [("a", "zz")])


def test_not_a_cpo_without_bottom():
    with pytest.raises(NotACpo):
        certify_cpo(corpus.load_poset(corpus.data_path("pseudo_circle")))


def test_lub_of_empty_set_is_bottom(lattice):
    P = lattice.poset
    assert lub(P, []) == "bot"
    assert lub(P, ["0", "1"]) == "top"
    assert glb(P, ["0", "1"]) == "bot"
    assert is_directed(P, ["0", "top"]) and not is_directed(P, ["0", "1"])


def test_lattice_has_ten_opens(lattice):
    assert len(lattice.opens) == 10
    assert frozenset({"top"}) in lattice.opens


@pytest.mark.parametrize("name", ["nplus2", "lattice_L", "chain2", "point", "pseudo_circle_bot"])
def test_shipped_opens_match_definition(name):
    cpo = corpus.load_poset(corpus.data_path(name))
    assert set(scott_opens(cpo).opens) == oracle_opens(cpo)


@given(orders(max_size=5, with_bottom=True))
def test_literal_opens_equal_upsets_and_definition(cpo):
    literal = set(scott_opens(cpo, "literal").opens)
    assert literal == set(scott_opens(cpo, "upsets").opens)
    assert literal == oracle_opens(cpo)


@given(orders(max_size=6, with_bottom=True))
def test_bottom_lies_in_no_proper_open(cpo):
    carrier = frozenset(cpo.elements)
    assert all("bot" not in A for A in scott_opens(cpo).opens if A != carrier)


@given(orders(max_size=4, with_bottom=True), orders(max_size=3, with_bottom=True), st.data())
def test_continuity_is_monotonicity_on_finite_posets(src, dst, data):
    table = data.draw(st.lists(st.sampled_from(dst.elements), min_size=len(src), max_size=len(src)))
    f = dict(zip(src.elements, table))
    assert is_scott_continuous(f, src, dst) == is_monotone(f, src, dst)


def brute_monotone(src, dst):
    S, D = src.poset, dst.poset
    return [t for t in itertools.product(D.elements, repeat=len(S))
            if all(D.le(t[S.index(x)], t[S.index(y)]) for x, y in S.leq)]


@given(orders(max_size=4, with_bottom=True), orders(max_size=3, with_bottom=True))
def test_function_space_matches_brute_force(src, dst):
    fs = function_space(src, dst)
    assert sorted(fs.tables) == sorted(brute_monotone(src, dst))
    assert fs.tables[fs.elements.index(fs.bottom)] == (dst.bottom,) * len(src)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_flat_self_maps_count(k):
    # strict maps send numerals anywhere; non-strict ones are constant
    assert len(function_space(flat_cpo(k), flat_cpo(k)).tables) == (k + 1) ** k + k


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_chain_self_maps_count(n):
    le = lambda i, j: i <= j  # noqa: E731
    assert len(monotone_tables(n, le, n, le)) == comb(2 * n - 1, n)


def test_monotone_fn_rejects_non_monotone():
    c = chain(2).poset
    assert MonotoneFn(c, c, ("c0", "c1"))("c1") == "c1"
    with pytest.raises(ValueError):
        MonotoneFn(c, c, ("c1", "c0"))


def test_json_roundtrip_and_dot(lattice):
    data = poset_to_json(lattice.cpo)
    back = poset_from_json(data)
    assert back == lattice.cpo
    assert '"bot" -> "0"' in hasse_dot(back)
