import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from app.core.exceptions import CapExceeded, EmptyFamily, InvalidParam, NotAnIdeal, ParentMismatch
from app.models.schemas import Ideal
from app.services.ideal_service import IdealService, closure_mask
from app.services.search_service import CORPUS_BUILTINS
from app.services.semiring_service import SemiringService

BUILTINS = [SemiringService.builtin(family, *params) for family, *params in CORPUS_BUILTINS]


def ideal(semiring, *labels):
    return IdealService.from_labels(semiring, labels)


def test_generate_ideal_examples(boolean, s3):
    assert IdealService.generate_ideal(boolean, []).render() == "{0}"
    assert IdealService.generate_ideal(s3, [2]).render() == "{0,T}"
    assert IdealService.generate_ideal(s3, [1]).members == s3.full_mask


def test_s3_has_three_ideals(s3):
    lattice = IdealService.enumerate_ideals(s3)
    assert [i.render() for i in lattice.all_ideals] == ["{0}", "{0,T}", "{0,1,T}"]
    assert lattice.subtractive_mask == (True, False, True)
    assert lattice.closure_index == (0, 2, 2)


def test_s4_ideals(s4):
    lattice = IdealService.enumerate_ideals(s4)
    assert [i.render() for i in lattice.all_ideals] == ["{0}", "{0,T}", "{0,2,T}", "{0,1,2,T}"]
    assert lattice.subtractive_indices() == [0, 3]


@pytest.mark.parametrize("semiring", BUILTINS, ids=lambda s: s.name)
def test_enumeration_matches_power_set_filter(semiring):
    lattice = IdealService.enumerate_ideals(semiring)
    assert list(lattice.masks) == IdealService.brute_force_ideals(semiring)
    assert lattice.masks[0] == 1 << semiring.zero
    assert lattice.masks[-1] == semiring.full_mask


def test_closure_examples(s3):
    assert IdealService.subtractive_closure(ideal(s3, "0")).render() == "{0}"
    assert IdealService.subtractive_closure(ideal(s3, "0", "T")).render() == "{0,1,T}"


def test_subtractivity_and_witness(s3):
    assert IdealService.is_subtractive(ideal(s3, "0"))
    top = ideal(s3, "0", "T")
    assert not IdealService.is_subtractive(top)
    x, y = IdealService.subtractive_witness(top)
    assert (s3.label(x), s3.label(y)) == ("T", "1")
    assert not IdealService.is_k_ideal(top)


@pytest.mark.parametrize("semiring", BUILTINS, ids=lambda s: s.name)
def test_closure_is_a_subtractive_cover(semiring):
    for member in IdealService.enumerate_ideals(semiring).all_ideals:
        closed = IdealService.subtractive_closure(member)
        assert member.issubset(closed)
        assert IdealService.is_subtractive(closed)
        assert IdealService.is_k_ideal(closed)
        assert closure_mask(semiring, closed.members) == closed.members


def test_rings_have_only_subtractive_ideals(z4):
    lattice = IdealService.enumerate_ideals(z4)
    assert [i.render() for i in lattice.all_ideals] == ["{0}", "{0,2}", "{0,1,2,3}"]
    assert all(lattice.subtractive_mask)


def test_sum_product_intersection(s3, s4):
    zero, top = ideal(s3, "0"), ideal(s3, "0", "T")
    assert IdealService.ideal_sum(zero, top) == top
    assert IdealService.ideal_product(top, top).render() == "{0,T}"
    assert IdealService.ideal_intersection([top, ideal(s3, "0", "1", "T")]) == top
    with pytest.raises(EmptyFamily):
        IdealService.ideal_intersection([])
    with pytest.raises(ParentMismatch):
        IdealService.ideal_sum(zero, ideal(s4, "0"))


def test_radical(s3, z4):
    assert IdealService.radical(ideal(s3, "0")).render() == "{0}"
    assert IdealService.radical(ideal(s3, "0", "T")).render() == "{0,T}"
    assert IdealService.radical(ideal(z4, "0")).render() == "{0,2}"


def test_from_labels_rejects_non_ideals(s3):
    with pytest.raises(NotAnIdeal):
        ideal(s3, "0", "1")
    with pytest.raises(InvalidParam):
        ideal(s3, "0", "7")


def test_preimage_and_image(s4, s3):
    phi = SemiringService.enumerate_homomorphisms(s4, s3)[0]
    assert IdealService.preimage_ideal(phi, ideal(s3, "0")).render() == "{0}"
    assert IdealService.preimage_ideal(phi, ideal(s3, "0", "T")).render() == "{0,2,T}"
    assert IdealService.image_ideal(phi, ideal(s4, "0", "2", "T")).render() == "{0,T}"


@pytest.mark.parametrize("semiring", BUILTINS, ids=lambda s: s.name)
def test_galois_and_modularity(semiring):
    lattice = IdealService.enumerate_ideals(semiring)
    assert IdealService.check_galois(lattice).holds
    assert IdealService.is_modular(lattice, restrict_to_subtractive=True).holds


def test_inclusion_graph_of_s3_is_a_chain(s3):
    graph = IdealService.inclusion_graph(IdealService.enumerate_ideals(s3))
    assert sorted(graph.edges()) == [(0, 1), (1, 2)]


def test_order_cap(s4):
    with pytest.raises(CapExceeded) as exc:
        IdealService.enumerate_ideals(s4, max_order=3)
    assert exc.value.exit_code == 3


@given(st.integers(min_value=1, max_value=8), st.data())
@hyp_settings(max_examples=40, deadline=None)
def test_closure_laws_on_zmod(n, data):
    semiring = SemiringService.builtin("zmod", n)
    masks = IdealService.enumerate_ideals(semiring).masks
    a = data.draw(st.sampled_from(masks))
    b = data.draw(st.sampled_from(masks))
    first = Ideal(parent=semiring, members=a)
    closed = IdealService.subtractive_closure(first)
    assert IdealService.subtractive_closure(closed) == closed
    if a & b == a:
        assert closed.issubset(IdealService.subtractive_closure(Ideal(parent=semiring, members=b)))
