import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from app.core.exceptions import InvalidParam
from app.services.nat_service import NatIdealService, combination_oracle, nat_family


def test_membership_of_two_three_up_to_100():
    ideal = NatIdealService.nat_ideal([2, 3])
    assert [m for m in range(101) if not ideal.contains(m)] == [1]
    assert ideal.period == 1
    assert ideal.bound == 12


def test_membership_of_four_six():
    ideal = NatIdealService.nat_ideal([4, 6])
    reach = combination_oracle([4, 6], 101)
    assert all(ideal.contains(m) == reach[m] for m in range(101))
    assert not ideal.contains(2)
    assert ideal.contains(10)


def test_redundant_generators_are_dropped():
    assert NatIdealService.nat_ideal([6, 2, 4, 3, 0]).generators == (2, 3)


def test_zero_ideal():
    zero = NatIdealService.nat_ideal([])
    assert zero.contains(0)
    assert not zero.contains(5)
    assert NatIdealService.render_nat(zero) == "<> = {0}"
    assert NatIdealService.nat_is_subtractive(zero).holds


def test_negative_generator_rejected():
    with pytest.raises(InvalidParam):
        NatIdealService.nat_ideal([2, -3])
    with pytest.raises(InvalidParam):
        NatIdealService.parse_generators("2,x")


@pytest.mark.parametrize("generators, rendered", [
    ("2,3", "<2,3> = {0,2,3,4,...} (cofinite, missing {1})"),
    ("2", "<2> = {0,2,4,...} (multiples of 2)"),
    ("4,6", "<4,6> = {0,4,6,8,...} (eventually multiples of 2, missing {2})"),
    ("1", "<1> = {0,1,2,...} (all of N)"),
])
def test_render(generators, rendered):
    assert NatIdealService.render_nat(NatIdealService.parse_generators(generators)) == rendered


def test_closure_is_gcd_multiples():
    closed = NatIdealService.nat_subtractive_closure(NatIdealService.nat_ideal([4, 6]))
    assert closed == NatIdealService.nat_ideal([2])
    assert NatIdealService.nat_subtractive_closure(NatIdealService.nat_ideal([2, 3])).generators == (1,)


def test_sum_of_subtractive_ideals_is_not_subtractive():
    two, three = NatIdealService.nat_ideal([2]), NatIdealService.nat_ideal([3])
    assert NatIdealService.nat_is_subtractive(two).holds
    assert NatIdealService.nat_is_subtractive(three).holds
    verdict = NatIdealService.nat_is_subtractive(NatIdealService.nat_sum(two, three))
    assert not verdict.holds
    assert verdict.witness == (2, 1)


def test_four_six_witness():
    verdict = NatIdealService.nat_is_subtractive(NatIdealService.nat_ideal([4, 6]))
    assert verdict.witness == (4, 2)


def test_radical():
    build = NatIdealService.nat_ideal
    assert NatIdealService.nat_radical(build([4, 6])) == build([2])
    assert NatIdealService.nat_radical(build([12])) == build([6])
    assert NatIdealService.nat_radical(build([2, 3])) == build([2, 3])
    assert NatIdealService.nat_radical(build([1])) == build([1])


def test_subset():
    build = NatIdealService.nat_ideal
    assert NatIdealService.nat_is_subset(build([4, 6]), build([2]))
    assert not NatIdealService.nat_is_subset(build([2, 3]), build([2]))
    assert NatIdealService.nat_is_subset(build([]), build([3]))


def test_family_members_agree_with_oracle():
    for label, ideal in nat_family():
        assert NatIdealService.oracle_mismatch(ideal) is None, label


@given(st.lists(st.integers(min_value=0, max_value=12), min_size=1, max_size=3))
@hyp_settings(max_examples=60, deadline=None)
def test_representation_matches_oracle(generators):
    ideal = NatIdealService.nat_ideal(generators)
    assert NatIdealService.oracle_mismatch(ideal) is None
    closed = NatIdealService.nat_subtractive_closure(ideal)
    assert all(closed.contains(m) for m in range(60) if ideal.contains(m))
    assert NatIdealService.nat_subtractive_closure(closed) == closed


def test_oversized_generator_is_rejected(monkeypatch):
    from app.config.settings import settings

    with pytest.raises(InvalidParam):
        NatIdealService.nat_ideal([100000, 99999])
    monkeypatch.setattr(settings, "NAT_MAX_GENERATOR", 5)
    with pytest.raises(InvalidParam):
        NatIdealService.nat_ideal([2, 7])
    assert NatIdealService.nat_ideal([2, 5]).period == 1
