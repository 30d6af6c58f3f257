import pytest

from weaktensor import (
    ExhaustionCertificate,
    OrthoMap,
    SearchBudgetExceeded,
    UNKNOWN,
    automorphisms,
    check_factorization,
    contains_mo_n,
    find_orthocomplementation,
    has_covering_property,
    is_orthomodular,
    is_transitive,
    is_weakly_connected,
    mo_space,
    powerset_space,
    two_space,
    validate_orthomap,
)
from weaktensor.props import (
    Automorphism,
    ConnectedCovering,
    NotWeaklyConnected,
    center_via_orthocomplementation,
    orthomap_violation,
    validate_connected_covering,
)


def complement_map(space):
    full = space.full_mask
    images = tuple(space.element_index(full & ~m) for m in space.masks)
    return OrthoMap(space, images)


# -- orthomap validation -------------------------------------------------------

def test_powerset_complement_is_valid_and_orthomodular():
    p3 = powerset_space(3)
    om = complement_map(p3)
    assert validate_orthomap(p3, om)
    assert is_orthomodular(p3, om) is True


def test_mo4_pairing_found_and_orthomodular(mo4, mo4_pairing):
    assert isinstance(mo4_pairing, OrthoMap)
    assert validate_orthomap(mo4, mo4_pairing)
    # canonical branching pairs the atoms in order: a<->b, c<->d
    assert mo4_pairing.atom_table() == [(1, 2), (2, 1), (4, 8), (8, 4)]
    assert is_orthomodular(mo4, mo4_pairing) is True


def test_violations_are_named():
    p2 = powerset_space(2)
    n = len(p2.masks)
    identity = OrthoMap(p2, tuple(range(n)))
    assert "order reversal" in orthomap_violation(p2, identity)
    bad_len = OrthoMap(p2, tuple(range(n - 1)))
    assert orthomap_violation(p2, bad_len) is not None
    # swapping only 0 <-> 1 fixes the atoms: involutive, order-reversing,
    # but an atom no longer joins with its image to the top
    swap_tops = list(range(n))
    i0, i1 = p2.element_index(0), p2.element_index(p2.full_mask)
    swap_tops[i0], swap_tops[i1] = swap_tops[i1], swap_tops[i0]
    assert "complement law" in orthomap_violation(p2, OrthoMap(p2, tuple(swap_tops)))


def test_invalid_map_rejected_by_orthomodularity_check():
    p2 = powerset_space(2)
    identity = OrthoMap(p2, tuple(range(len(p2.masks))))
    with pytest.raises(ValueError, match="order reversal"):
        is_orthomodular(p2, identity)


def test_meet_with_image_is_zero_for_valid_maps(mo4, mo4_pairing):
    # a ^ a' = 0 is a derived law; pinned here for every valid map
    p3 = powerset_space(3)
    for space, om in ((p3, complement_map(p3)), (mo4, mo4_pairing)):
        for m in space.masks:
            assert m & om.image_mask(m) == 0


def test_center_notions_agree_under_an_orthocomplementation(mo4, mo4_pairing):
    p3 = powerset_space(3)
    om = complement_map(p3)
    assert center_via_orthocomplementation(p3, om) == list(p3.masks)
    assert center_via_orthocomplementation(mo4, mo4_pairing) == [0, mo4.full_mask]


# -- orthocomplementation search ------------------------------------------------

def test_powerset_search_finds_set_complement():
    p3 = powerset_space(3)
    found = find_orthocomplementation(p3)
    assert isinstance(found, OrthoMap)
    assert found.images == complement_map(p3).images


def test_two_element_lattice_is_orthocomplemented():
    found = find_orthocomplementation(two_space())
    assert isinstance(found, OrthoMap)


def test_mo3_has_no_orthocomplementation(mo3):
    found = find_orthocomplementation(mo3)
    assert isinstance(found, ExhaustionCertificate)
    assert found.nodes > 0


def test_box_of_unpairable_factors_has_no_orthocomplementation(box33):
    # both factors have an odd atom count, so neither admits an
    # orthocomplementation, and the box product inherits the failure
    found = find_orthocomplementation(box33)
    assert isinstance(found, ExhaustionCertificate)


def test_search_decision_is_branching_order_independent(fraser33, box44):
    for space in (fraser33, box44):
        forward = find_orthocomplementation(space)
        backward = find_orthocomplementation(space, reverse_branching=True)
        assert isinstance(forward, OrthoMap) == isinstance(backward, OrthoMap)


def test_found_maps_always_validate(box44):
    found = find_orthocomplementation(box44)
    assert isinstance(found, OrthoMap)
    assert validate_orthomap(box44, found)


def test_node_budget_is_enforced(fraser33):
    with pytest.raises(SearchBudgetExceeded):
        find_orthocomplementation(fraser33, node_cap=3)


def test_search_cap_on_universe_size():
    with pytest.raises(ValueError):
        find_orthocomplementation(powerset_space(21))


# -- covering ----------------------------------------------------------------------

def test_mo_lattices_have_covering():
    assert has_covering_property(mo_space(3)) is True
    assert has_covering_property(mo_space(4)) is True


def test_box_covering_fails_with_canonical_witness(box33):
    res = has_covering_property(box33)
    assert res is not True
    assert box33.render_set(res.atom) == "a,a"
    assert box33.render_set(res.element) == "b,c c,b"
    assert box33.render_set(res.witness.intermediate) == "a,b b,a b,b b,c c,b"


def test_fraser_of_mo4_fails_covering(fraser44):
    res = has_covering_property(fraser44)
    assert res is not True
    # the break happens above a three-point all-distinct configuration
    assert res.element.bit_count() == 3


# -- MO_n containment -----------------------------------------------------------------

def test_contains_mo_examples(mo3, box33):
    assert contains_mo_n(mo3, 3) is not None
    assert contains_mo_n(powerset_space(3), 3) is None
    witness = contains_mo_n(box33, 3)
    assert witness is not None
    p1, *_, pn = witness
    j = box33.closure(p1 | pn)
    assert all(box33.covers(p, j) is True for p in witness)


def test_contains_mo_requires_three():
    with pytest.raises(ValueError):
        contains_mo_n(mo_space(3), 2)


# -- automorphisms ----------------------------------------------------------------------

def test_mo3_automorphisms_all_six(mo3):
    autos = automorphisms(mo3)
    assert len(autos) == 6
    assert is_transitive(mo3)


def test_powerset_automorphisms_all_permutations():
    p3 = powerset_space(3)
    assert len(automorphisms(p3)) == 6
    assert is_transitive(p3)


def test_automorphism_group_closure(box33):
    autos = automorphisms(box33)
    table = {u.point_perm for u in autos}
    for u in autos:
        assert u.inverse().point_perm in table
    for u in autos[:12]:
        for v in autos[:12]:
            assert u.compose(v).point_perm in table


def test_transitive_spaces_have_matching_upper_intervals(box33):
    assert is_transitive(box33)
    shapes = set()
    for p in box33.atoms():
        interval = [m for m in box33.masks if p & ~m == 0]
        sizes = tuple(sorted(m.bit_count() for m in interval))
        shapes.add((len(interval), sizes))
    assert len(shapes) == 1


def test_automorphism_cap():
    with pytest.raises(ValueError):
        automorphisms(powerset_space(13))


def test_factorization_identity_and_swap(box33):
    universe = box33.product
    identity = Automorphism(tuple(range(9)))
    form = check_factorization(box33, universe, identity)
    assert form is not None
    assert form.factor_bijection == (0, 1)
    assert all(v == tuple(range(3)) for v in form.factor_isos)
    flip = Automorphism(tuple(universe.encode(tuple(reversed(universe.decode(i))))
                              for i in range(9)))
    form = check_factorization(box33, universe, flip)
    assert form is not None
    assert form.factor_bijection == (1, 0)


def test_factorization_needs_product_structure(mo3):
    with pytest.raises(ValueError):
        check_factorization(mo3, None, Automorphism((0, 1, 2)))


# -- weak connectivity ----------------------------------------------------------------------

def test_mo_is_weakly_connected(mo3, mo4):
    for s in (mo3, mo4):
        cov = is_weakly_connected(s)
        assert isinstance(cov, ConnectedCovering)
        assert cov.blocks == (s.full_mask,)
        assert validate_connected_covering(s, cov)


def test_powerset_is_not_weakly_connected():
    res = is_weakly_connected(powerset_space(3))
    assert isinstance(res, NotWeaklyConnected)
    assert res.isolated_atom is not None


def test_two_is_not_weakly_connected():
    res = is_weakly_connected(two_space())
    assert isinstance(res, NotWeaklyConnected)


def test_box_product_connectivity_stays_sound(box33):
    # blocks can only live inside single lines here and distinct lines
    # overlap in at most one point, so no connected covering exists; the
    # incomplete checker must not fabricate one, nor certify the failure
    assert is_weakly_connected(box33) is UNKNOWN
