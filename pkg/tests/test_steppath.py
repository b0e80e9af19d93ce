from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dinfty.errors import FaceMismatch, MalformedPartition
from dinfty.steppath import (
    StepPath1, StepPath2, check_continuity, concat1, concat_many, constant_path, constant_path2,
    homotopic, parallel, path2_from_function, path_from_json, path_svg, product_r, restrict, reverse,
    to_zigzag,
)

L_ELEMENTS = ["bot", "0", "1", "2", "top"]
half = Fraction(1, 2)


def lattice_le(x, y):
    return x == y or x == "bot" or y == "top"


def face_monotone(values):
    """Oracle: on an up-set space a step path is continuous iff each point's
    value is below the values on its neighbouring open intervals."""
    return all(lattice_le(values[s], values[s2])
               for s in range(0, len(values), 2) for s2 in (s - 1, s + 1) if 0 <= s2 < len(values))


@st.composite
def partitions(draw, max_inner=3):
    inner = draw(st.lists(st.fractions(0, 1, max_denominator=12), max_size=max_inner, unique=True))
    inner = sorted(q for q in inner if 0 < q < 1)
    return (Fraction(0), *inner, Fraction(1))


@st.composite
def raw_paths(draw):
    pts = draw(partitions())
    vals = draw(st.lists(st.sampled_from(L_ELEMENTS), min_size=2 * len(pts) - 1, max_size=2 * len(pts) - 1))
    return pts, tuple(vals)


@st.composite
def continuous_paths(draw, start=None):
    pts = draw(partitions())
    intervals = draw(st.lists(st.sampled_from(L_ELEMENTS), min_size=len(pts) - 1, max_size=len(pts) - 1))
    vals = []
    for i in range(len(pts)):
        nbrs = [intervals[j] for j in (i - 1, i) if 0 <= j < len(intervals)]
        below = [x for x in L_ELEMENTS if all(lattice_le(x, n) for n in nbrs)]
        vals.append(start if i == 0 and start in below else draw(st.sampled_from(below)))
        if i < len(intervals):
            vals.append(intervals[i])
    return pts, tuple(vals)


def test_constant_path(lattice):
    for d in L_ELEMENTS:
        c = constant_path(lattice, d)
        assert check_continuity(c) and to_zigzag(c).points == (d,)


def test_up_to_top_and_its_reversal(lattice):
    p = StepPath1(lattice, (0, 1), ("0", "top", "top"))
    assert check_continuity(p)
    bad = StepPath1(lattice, (0, 1), ("top", "0", "0"))
    verdict = check_continuity(bad)
    assert not verdict
    assert verdict.open == frozenset({"top"}) and verdict.point == (Fraction(0),)


@given(raw_paths())
def test_continuity_matches_face_oracle(lattice, raw):
    pts, vals = raw
    p = StepPath1(lattice, pts, vals)
    assert bool(check_continuity(p)) == face_monotone(vals)


def test_canonical_form_drops_redundant_breakpoints(lattice):
    p = StepPath1(lattice, (0, half, 1), ("0", "top", "top", "top", "top"))
    assert p.breakpoints == (0, 1) and p == StepPath1(lattice, (0, 1), ("0", "top", "top"))


def test_malformed_partitions(lattice):
    with pytest.raises(MalformedPartition):
        StepPath1(lattice, (0, half), ("0", "0", "0"))
    with pytest.raises(MalformedPartition):
        StepPath1(lattice, (0, half, half, 1), ("0",) * 7)
    with pytest.raises(MalformedPartition):
        StepPath1(lattice, (0, 1), ("0", "0"))


@given(continuous_paths())
def test_reverse_is_an_involution(lattice, raw):
    p = StepPath1(lattice, *raw)
    assert reverse(reverse(p)) == p
    assert check_continuity(reverse(p))
    assert p(Fraction(1, 3)) == reverse(p)(Fraction(2, 3))


@given(st.data())
def test_concatenation_is_continuous_with_right_endpoints(lattice, data):
    p = StepPath1(lattice, *data.draw(continuous_paths()))
    q = StepPath1(lattice, *data.draw(continuous_paths(start=p.end)))
    if q.start != p.end:
        with pytest.raises(FaceMismatch):
            concat1(p, q)
        return
    pq = concat1(p, q)
    assert check_continuity(pq)
    assert (pq.start, pq.end) == (p.start, q.end)
    assert pq(Fraction(1, 4)) == p(half) and pq(Fraction(3, 4)) == q(half)


def test_zigzag_of_concatenation(lattice_paths):
    p = concat1(lattice_paths["p[0->top]"], reverse(lattice_paths["p[1->top]"]))
    assert to_zigzag(lattice_paths["p[0->top]"]).points == ("0", "top")
    assert to_zigzag(p).points == ("0", "top", "1")


def test_loop_through_top_is_closed(lattice_paths):
    p = lattice_paths["p[0->top]"]
    loop = concat1(p, reverse(p))
    assert loop.start == loop.end == "0"
    assert homotopic(loop, constant_path(p.space, "0"))


def test_unit_law_up_to_homotopy(lattice_paths):
    p = lattice_paths["p[0->top]"]
    cp = concat1(constant_path(p.space, "0"), p)
    assert cp != p and cp.breakpoints == (0, half, 1)
    assert homotopic(cp, p)


def test_concat_many_breakpoints(lattice):
    seg = StepPath1(lattice, (0, half, 1), ("top", "top", "bot", "top", "top"))
    three = concat_many([seg] * 3)
    assert three.breakpoints == (0, Fraction(1, 6), Fraction(1, 2), Fraction(5, 6), 1)


# ---------------------------------------------------------------- lattice 2-paths

@pytest.mark.parametrize("a, b", [("0", "1"), ("1", "2"), ("0", "2")])
def test_square_faces(lattice_paths, a, b):
    P = lattice_paths
    sq = P[f"p[{a}=>{b}]"]
    assert check_continuity(sq)
    assert restrict(sq, 1, 0) == concat1(P[f"p[{a}->top]"], reverse(P[f"p[{b}->top]"]))
    assert restrict(sq, 1, 1) == concat1(P[f"p[{a}->bot]"], reverse(P[f"p[{b}->bot]"]))
    assert restrict(sq, 2, 0) == constant_path(sq.space, a)
    assert restrict(sq, 2, 1) == constant_path(sq.space, b)
    # the interior value and the single ⊥ point
    assert sq(half, half) == "top" and sq(1, half) == "bot"


@pytest.mark.parametrize("a, b", [("0", "1"), ("1", "2")])
def test_q_square_faces(lattice_paths, a, b):
    P = lattice_paths
    sq = P[f"q[{a}=>{b}]"]
    q_a = restrict(sq, 1, 0)
    assert q_a == concat1(reverse(P[f"p[{a}->top]"]), P[f"p[{a}->bot]"])
    assert [q_a(t) for t in (0, Fraction(1, 4), half, Fraction(3, 4), 1)] == ["top", "top", a, a, "bot"]


def test_products_on_lattice(lattice_paths):
    P = lattice_paths
    s0 = product_r(P["p[0=>1]"], P["p[1=>2]"], 0)
    s1 = product_r(P["q[0=>1]"], P["q[1=>2]"], 1)
    assert check_continuity(s0) and check_continuity(s1)
    assert homotopic(s0, P["p[0=>2]"]) is True
    assert homotopic(s1, P["q[0=>2]"]) is True
    assert parallel(s1, P["q[0=>2]"])
    assert not parallel(s0, P["q[0=>2]"])


def test_product_face_laws(lattice_paths):
    P = lattice_paths
    p, q = P["q[0=>1]"], P["q[1=>2]"]
    s1 = product_r(p, q, 1)
    assert restrict(s1, 1, 0) == restrict(p, 1, 0)
    assert restrict(s1, 1, 1) == restrict(q, 1, 1)
    p, q = P["p[0=>1]"], P["p[1=>2]"]
    s0 = product_r(p, q, 0)
    for a in (0, Fraction(1, 3), half, 1):
        assert restrict(s0, 1, a) == concat1(restrict(p, 1, a), restrict(q, 1, a))


def test_product_face_mismatch(lattice_paths):
    with pytest.raises(FaceMismatch):
        product_r(lattice_paths["p[0=>1]"], lattice_paths["p[0=>2]"], 0)
    with pytest.raises(FaceMismatch):
        product_r(lattice_paths["q[0=>1]"], lattice_paths["q[0=>2]"], 1)


def test_constant_square_restricts_to_constant(lattice):
    c = constant_path2(lattice, "1")
    for coord in (1, 2):
        for t in (0, Fraction(2, 7), 1):
            assert restrict(c, coord, t) == constant_path(lattice, "1")


def test_sampled_square_matches_stored_square(lattice_paths):
    sq = lattice_paths["p[0=>1]"]
    again = path2_from_function(sq.space, (0, 1), (0, half, 1), sq)
    assert again == sq


def test_discontinuous_square_is_caught(lattice):
    # ⊥ at a corner sits below every face around it
    vals = [["bot", "top", "top"], ["top"] * 3, ["top"] * 3]
    assert check_continuity(StepPath2(lattice, (0, 1), (0, 1), vals))
    # ⊥ on an edge is not below the ⊤ corners of that edge
    vals = [["top"] * 3, ["bot", "top", "top"], ["top"] * 3]
    assert not check_continuity(StepPath2(lattice, (0, 1), (0, 1), vals))
    vals = [["top"] * 3, ["top", "0", "top"], ["top"] * 3]
    verdict = check_continuity(StepPath2(lattice, (0, 1), (0, 1), vals))
    assert not verdict and "top" in verdict.open and "0" not in verdict.open


def test_json_and_svg(lattice_paths):
    sq = lattice_paths["q[0=>1]"]
    assert path_from_json(sq.to_json(), sq.space) == sq
    p = lattice_paths["e"]
    assert path_from_json(p.to_json(), p.space) == p
    svg = path_svg(sq)
    assert svg.startswith("<svg") and ">bot</text>" in svg
