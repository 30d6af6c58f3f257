import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_cover_check, naive_intersection_closure

from weaktensor import (
    ClosureSpace,
    LatticeFormatError,
    mo_space,
    parse_lattice_text,
    powerset_space,
    render_lattice_text,
    two_space,
)
from weaktensor.spaces import CoverWitness


def space_pool():
    pool = [two_space(), mo_space(3), mo_space(4), powerset_space(2), powerset_space(3),
            ClosureSpace.from_closed_sets("abc", [0b011])]
    return pool


POOL = space_pool()


# -- construction -----------------------------------------------------------

def test_two_point_empty_generators_is_powerset():
    s = ClosureSpace.from_closed_sets("ab", [])
    assert set(s.masks) == {0b00, 0b01, 0b10, 0b11}


def test_three_point_empty_generators_is_mo3():
    s = ClosureSpace.from_closed_sets("abc", [])
    assert set(s.masks) == set(mo_space(3).masks)


def test_single_generator_gives_six_sets():
    s = ClosureSpace.from_closed_sets("abc", [0b011])
    assert set(s.masks) == naive_intersection_closure(3, [0b011])
    assert len(s) == 6
    assert 0b011 in s


def test_from_closed_sets_idempotent():
    for s in POOL:
        again = ClosureSpace.from_closed_sets(s.points, s.masks)
        assert again.masks == s.masks


def test_empty_point_list_rejected():
    with pytest.raises(ValueError):
        ClosureSpace.from_closed_sets([], [])


def test_universe_cap():
    with pytest.raises(ValueError):
        powerset_space(25)


def test_one_point_universe_is_fine():
    s = two_space()
    assert s.masks == (0, 1)
    assert s.atoms() == [1]
    assert s.coatoms() == [0]


# -- closure -----------------------------------------------------------------

def test_closure_examples():
    mo3 = mo_space(3)
    assert mo3.closure(0b011) == 0b111
    assert mo3.closure(0) == 0
    six = ClosureSpace.from_closed_sets("abc", [0b011])
    assert six.closure(0b011) == 0b011


@given(data=st.data())
@settings(max_examples=120)
def test_closure_operator_laws(data):
    s = data.draw(st.sampled_from(POOL))
    a = data.draw(st.integers(min_value=0, max_value=s.full_mask))
    b = data.draw(st.integers(min_value=0, max_value=s.full_mask))
    ca = s.closure(a)
    assert a & ~ca == 0                       # extensive
    assert s.closure(ca) == ca                # idempotent
    assert s.closure(a & b) & ~s.closure(a) == 0  # monotone


@given(data=st.data())
@settings(max_examples=80)
def test_intersection_closed_pairs_and_triples(data):
    s = data.draw(st.sampled_from(POOL))
    picks = data.draw(st.lists(st.sampled_from(s.masks), min_size=2, max_size=3))
    inter = s.full_mask
    for m in picks:
        inter &= m
    assert inter in s


# -- meet / join ---------------------------------------------------------------

def test_meet_join_examples():
    mo3 = mo_space(3)
    assert mo3.join(0b001, 0b010) == 0b111
    assert mo3.meet(0b001, mo3.full_mask) == 0b001
    six = ClosureSpace.from_closed_sets("abc", [0b011])
    assert six.join(0b001, 0b010) == 0b011


def test_foreign_element_rejected():
    mo3 = mo_space(3)
    with pytest.raises(ValueError):
        mo3.join(0b011, 0b001)  # 0b011 is not closed in MO3


@given(data=st.data())
@settings(max_examples=100)
def test_lattice_algebra_laws(data):
    s = data.draw(st.sampled_from(POOL))
    a = data.draw(st.sampled_from(s.masks))
    b = data.draw(st.sampled_from(s.masks))
    c = data.draw(st.sampled_from(s.masks))
    assert s.meet(a, b) == s.meet(b, a)
    assert s.join(a, b) == s.join(b, a)
    assert s.meet(a, s.meet(b, c)) == s.meet(s.meet(a, b), c)
    assert s.join(a, s.join(b, c)) == s.join(s.join(a, b), c)
    assert s.join(a, s.meet(a, b)) == a
    assert s.meet(a, s.join(a, b)) == a


def test_atomisticity():
    for s in POOL:
        for m in s.masks:
            acc = 0
            for i in range(s.n_points):
                if m >> i & 1:
                    acc = s.join(acc, 1 << i) if acc else (1 << i)
            assert s.closure(acc) == m if m else acc == 0


# -- atoms / coatoms / covers ----------------------------------------------------

def test_atoms_and_coatoms():
    mo3 = mo_space(3)
    assert mo3.atoms() == [1, 2, 4]
    assert sorted(mo3.coatoms()) == [1, 2, 4]
    p3 = powerset_space(3)
    assert sorted(p3.coatoms()) == [0b011, 0b101, 0b110]


def test_covers_examples():
    mo3 = mo_space(3)
    assert mo3.covers(0b001, 0b111) is True
    p3 = powerset_space(3)
    w = p3.covers(0, p3.full_mask)
    assert isinstance(w, CoverWitness) and w.intermediate == 0b001


def test_covers_requires_comparable():
    mo3 = mo_space(3)
    with pytest.raises(ValueError):
        mo3.covers(0b010, 0b001)


def test_covers_against_subset_scan():
    for s in POOL:
        for a in s.masks:
            for b in s.masks:
                if a & ~b:
                    continue
                got = s.covers(a, b)
                assert (got is True) == brute_cover_check(s, a, b)


def test_degenerate_cover_is_refused_with_witness():
    mo3 = mo_space(3)
    w = mo3.covers(0b001, 0b001)
    assert isinstance(w, CoverWitness) and w.intermediate is None


# -- duality ----------------------------------------------------------------------

def test_dual_order_check_examples():
    assert powerset_space(3).dual_order_check()[:2] == (True, True)
    assert mo_space(3).dual_order_check()[:2] == (True, True)


def _cover_pairs_under(masks, leq):
    pairs = []
    for a in masks:
        for b in masks:
            if a == b or not leq(a, b):
                continue
            if not any(c != a and c != b and leq(a, c) and leq(c, b) for c in masks):
                pairs.append((a, b))
    return sorted(pairs)


def test_double_dual_has_same_cover_relation():
    for s in POOL:
        leq = lambda x, y: x & ~y == 0
        geq = lambda x, y: y & ~x == 0
        direct = _cover_pairs_under(s.masks, leq)
        dual = _cover_pairs_under(s.masks, geq)
        double_dual = _cover_pairs_under(s.masks, lambda x, y: geq(y, x))
        assert double_dual == direct
        assert sorted((b, a) for a, b in dual) == direct
        assert sorted(s.cover_pairs()) == direct


# -- center ------------------------------------------------------------------------

def test_center_of_mo3_is_trivial():
    mo3 = mo_space(3)
    assert mo3.center() == [0, mo3.full_mask]
    for p in mo3.atoms():
        assert mo3.central_cover(p) == mo3.full_mask
    assert mo3.irreducible_components() == [(0, 1, 2)]


def test_center_of_powerset_is_everything():
    p3 = powerset_space(3)
    assert p3.center() == list(p3.masks)
    for p in p3.atoms():
        assert p3.central_cover(p) == p
    assert p3.irreducible_components() == [(0,), (1,), (2,)]


def _blockwise_union_space():
    # two three-atom MO blocks glued as a direct product: closed sets are
    # exactly the blockwise unions, 25 in total
    block = [0, 1, 2, 4, 7]
    family = [y | (z << 3) for y in block for z in block]
    return ClosureSpace.from_closed_sets("abcdef", family)


def test_center_of_two_mo3_blocks():
    s = _blockwise_union_space()
    assert len(s) == 25
    assert s.center() == [0, 0b000111, 0b111000, s.full_mask]
    assert s.central_cover(0b000001) == 0b000111
    assert s.irreducible_components() == [(0, 1, 2), (3, 4, 5)]
    # oracle: the blockwise-union family is the direct product by construction,
    # and the center must split it back into the two intervals
    for a in (0b000111, 0b111000):
        below_a = [m for m in s.masks if m & ~a == 0]
        below_c = [m for m in s.masks if m & a == 0]
        assert len(below_a) * len(below_c) == len(s)


def test_zero_one_glued_sum_is_irreducible():
    # gluing only at 0 and 1 does not split: the blocks are not central
    s = ClosureSpace.from_closed_sets("abcdef", [0b000111, 0b111000])
    assert len(s) == 10
    assert s.center() == [0, s.full_mask]
    assert s.irreducible_components() == [(0, 1, 2, 3, 4, 5)]


# -- text format ---------------------------------------------------------------------

def test_round_trip():
    for s in POOL:
        text = render_lattice_text(s)
        again = parse_lattice_text(text)
        assert again.points == s.points
        assert again.masks == s.masks


def test_generators_only_file_is_closed_up():
    s = parse_lattice_text("points: a b c\na b\n")
    assert len(s) == 6


def test_parse_errors_carry_line_numbers():
    with pytest.raises(LatticeFormatError) as exc:
        parse_lattice_text("points: a b\na z\n")
    assert exc.value.line == 2
    with pytest.raises(LatticeFormatError) as exc:
        parse_lattice_text("a b\n")
    assert exc.value.line == 1


def test_empty_set_renders_as_dash():
    mo3 = mo_space(3)
    assert mo3.render_set(0) == "-"
    assert "points: a b c\n-\n" in render_lattice_text(mo3)
