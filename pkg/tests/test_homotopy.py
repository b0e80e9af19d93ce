from fractions import Fraction

import pytest
from hypothesis import assume, given

from dinfty import corpus
from dinfty.errors import EndpointMismatch, NotACpo, NotConnected
from dinfty.homotopy import (
    contraction_preimages, cyclic_reduce, free_reduce, higher_homotopy_certificate, invert, is_cone,
    order_complex, pi0, pi1, tietze_simplify, verify_contraction_preimage, zigzag_homotopic,
)
from dinfty.order import Poset, alexandrov_space, scott_opens
from strategies import orders


def components_oracle(P):
    parent = {x: x for x in P.elements}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for x, y in P.leq:
        parent[find(x)] = find(y)
    return len({find(x) for x in P.elements})


def rank(rows):
    rows = [[Fraction(v) for v in r] for r in rows if any(r)]
    r = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def first_betti(P):
    """dim H1 of the order complex over ℚ."""
    K = order_complex(P)
    verts = K.simplices(0)
    edges = K.simplices(1)
    tris = K.simplices(2)
    idx = P.index
    d1 = [[0] * len(verts) for _ in edges]
    for i, e in enumerate(edges):
        a, b = sorted(e, key=idx)
        d1[i][verts.index(frozenset([a]))] = -1
        d1[i][verts.index(frozenset([b]))] = 1
    d2 = [[0] * len(edges) for _ in tris]
    for i, t in enumerate(tris):
        a, b, c = sorted(t, key=idx)
        for sign, face in ((1, (b, c)), (-1, (a, c)), (1, (a, b))):
            d2[i][edges.index(frozenset(face))] = sign
    return len(edges) - rank(d1) - rank(d2)


@pytest.fixture(scope="module")
def pseudo_circle():
    return corpus.load_space("pseudo_circle")


def test_order_complex_facets(lattice, pseudo_circle):
    assert len(order_complex(lattice).facets) == 3
    assert len(order_complex(pseudo_circle).facets) == 4


@given(orders(max_size=7))
def test_components_match_union_find(P):
    assert pi0(P) == components_oracle(P)


def test_pseudo_circle_is_a_circle(pseudo_circle):
    p = pi1(pseudo_circle)
    assert p.describe() == "free rank 1"
    assert first_betti(pseudo_circle.poset) == 1


def test_wedge_of_two_circles():
    P = Poset(["a", "b", "c", "d", "e"], [(x, y) for x in "abc" for y in "de"])
    assert pi1(P).describe() == "free rank 2"


def test_lattice_and_corpus_cpos_have_trivial_pi1():
    for name in corpus.CPOS:
        assert pi1(corpus.load_space(name)).describe() == "trivial"


@given(orders(max_size=7))
def test_pi1_agrees_with_first_betti_number(P):
    assume(pi0(P) == 1)
    p = pi1(P)
    b1 = first_betti(P)
    if p.classification == "free":
        assert p.rank == b1
    elif p.classification == "trivial":
        assert b1 == 0


@given(orders(max_size=6, with_bottom=True))
def test_cpos_are_cones_with_trivial_pi1(cpo):
    assert is_cone(cpo)[0]
    assert pi1(cpo).describe() == "trivial"
    assert verify_contraction_preimage(scott_opens(cpo))


def test_words():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 1)) == (2,)
    assert invert((1, -2)) == (2, -1)


def test_tietze_eliminates_a_generator():
    gens, rels, subst = tietze_simplify((1, 2), [(1, 2)])
    assert gens == (2,) and rels == ()
    assert subst[1] == (-2,)


def test_zigzags(lattice, pseudo_circle):
    assert zigzag_homotopic(["0", "top", "1"], ["0", "bot", "1"], lattice) is True
    assert zigzag_homotopic(["a", "c", "b", "d", "a"], ["a"], pseudo_circle) is False
    assert zigzag_homotopic(["a", "c", "b", "c", "a"], ["a"], pseudo_circle) is True
    with pytest.raises(EndpointMismatch):
        zigzag_homotopic(["0", "top"], ["0", "bot"], lattice)
    with pytest.raises(ValueError):
        zigzag_homotopic(["0", "1"], ["0", "top", "1"], lattice)


def test_disconnected_pi1():
    with pytest.raises(NotConnected):
        pi1(Poset(["a", "b"]))


def test_contraction_rows_on_lattice(lattice):
    rows = contraction_preimages(lattice)
    assert len(rows) == 10
    proper = [r for r in rows if r["proper"]]
    assert all(r["bottom_not_in_open"] and r["over_0"] == [] for r in proper)
    assert verify_contraction_preimage(lattice)


def test_contraction_needs_bottom(pseudo_circle):
    with pytest.raises(NotACpo):
        contraction_preimages(pseudo_circle)


def test_higher_homotopy_certificates(lattice, pseudo_circle):
    assert higher_homotopy_certificate(lattice, 3)["group"] == "trivial"
    assert higher_homotopy_certificate(pseudo_circle, 1)["group"] == "free rank 1"
    assert higher_homotopy_certificate(pseudo_circle, 2)["group"] == "unverified"


def test_alexandrov_space_of_pseudo_circle(pseudo_circle):
    assert pseudo_circle.cpo is None
    assert len(alexandrov_space(pseudo_circle.poset).opens) == len(pseudo_circle.opens)
