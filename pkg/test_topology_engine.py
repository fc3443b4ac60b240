import pytest
from app.core.exceptions import CapExceeded, NotSurjective, SpaceMismatch
from app.models.schemas import Semantics
from app.services.ideal_service import IdealService
from app.services.semiring_service import SemiringService
from app.services.topology_service import TopologyService, closure_from_family

DOWN, FIXED = Semantics.DOWN_SET, Semantics.FIXED_POINT


def space(semiring, semantics):
    built = TopologyService.build_space(IdealService.enumerate_ideals(semiring), semantics)
    return TopologyService.materialize(built)


def sets(space_, masks):
    return sorted(space_.render_points(m) for m in masks)


@pytest.fixture
def chain3():
    """0 < a < 1 with max and min; B embeds into it without being onto"""
    add = [[max(i, j) for j in range(3)] for i in range(3)]
    mul = [[min(i, j) for j in range(3)] for i in range(3)]
    return SemiringService.validate_semiring("C3", ["0", "a", "1"], add, mul, 0, 2)


def test_s3_subbasis(s3):
    assert sets(space(s3, DOWN), space(s3, DOWN).subbasis) == ["{P0,P1,P2}", "{P0}"]
    assert sets(space(s3, FIXED), space(s3, FIXED).subbasis) == ["{P0}", "{P2}"]


def test_s3_closed_families(s3):
    down, fixed = space(s3, DOWN), space(s3, FIXED)
    assert down.closed_family == (0b000, 0b001, 0b111)
    assert set(fixed.closed_family) == {0b000, 0b001, 0b100, 0b101, 0b111}


def test_boolean_closed_family(boolean):
    assert space(boolean, DOWN).closed_family == (0b00, 0b01, 0b11)
    # both ideals of B are subtractive, so each names its own singleton
    assert space(boolean, FIXED).closed_family == (0b00, 0b01, 0b10, 0b11)


def test_s3_point_closures(s3):
    down, fixed = space(s3, DOWN), space(s3, FIXED)
    assert TopologyService.point_closure(down, 0) == 0b001
    assert TopologyService.point_closure(down, 1) == 0b111
    assert TopologyService.point_closure(fixed, 1) == 0b111
    for p in range(3):
        assert closure_from_family(fixed.closed_family, p) == TopologyService.point_closure(fixed, p)


def test_s3_t0(s3):
    verdict = TopologyService.is_T0(space(s3, DOWN))
    assert not verdict.holds
    assert verdict.witness == "P1={0,T} P2={0,1,T} closure={P0,P1,P2}"
    assert TopologyService.is_T0(space(s3, FIXED)).holds


def test_s3_t1_on_subtractive_points(s3):
    fixed = TopologyService.is_T1_subspace(space(s3, FIXED))
    assert fixed.holds
    assert fixed.extensions == {1: False}
    down = TopologyService.is_T1_subspace(space(s3, DOWN), 0b101)
    assert not down.holds
    assert down.witness.startswith("P2=")


def test_s3_irreducibility(s3):
    fixed = {c.members: c for c in TopologyService.irreducible_closed_sets(space(s3, FIXED))}
    assert not fixed[0b101].irreducible
    assert fixed[0b111].irreducible
    assert fixed[0b111].generic_points == (1,)
    down = {c.members: c for c in TopologyService.irreducible_closed_sets(space(s3, DOWN))}
    assert down[0b111].irreducible
    assert down[0b111].generic_points == (1, 2)
    assert 0 not in down


def test_generic_points(s3):
    assert TopologyService.generic_points(space(s3, DOWN), 0b111) == [1, 2]
    assert TopologyService.generic_points(space(s3, FIXED), 0b111) == [1]


def test_closed_family_cap(s4):
    built = TopologyService.build_space(IdealService.enumerate_ideals(s4), FIXED, cap=3)
    with pytest.raises(CapExceeded):
        TopologyService.closed_family(built)


@pytest.mark.parametrize("semantics", [DOWN, FIXED])
def test_truncation_induces_continuous_map(s4, s3, semantics):
    phi = SemiringService.enumerate_homomorphisms(s4, s3)[0]
    induced = TopologyService.induced_map(phi, semantics)
    # {0} -> {0}, {0,T} -> {0,2,T}, S3 -> S4
    assert induced.mapping == (0, 2, 3)
    assert induced.continuous
    assert induced.subbasic_continuous


@pytest.mark.parametrize("semantics", [DOWN, FIXED])
def test_truncation_is_homeomorphism_on_subtractive_points(s4, s3, semantics):
    phi = SemiringService.enumerate_homomorphisms(s4, s3)[0]
    verdict = TopologyService.is_homeomorphism_on_subtractive(phi, semantics)
    assert verdict.holds
    assert verdict.witnesses == {}


def test_identity_on_boolean(boolean):
    phi = SemiringService.enumerate_homomorphisms(boolean, boolean)[0]
    assert TopologyService.is_homeomorphism_on_subtractive(phi, DOWN).holds


def test_non_surjective_homomorphism_rejected(boolean, chain3):
    phi = SemiringService.enumerate_homomorphisms(boolean, chain3)[0]
    assert phi.map == (0, 2)
    assert not phi.surjective
    with pytest.raises(NotSurjective):
        TopologyService.is_homeomorphism_on_subtractive(phi, DOWN)


def test_space_semantics_must_match(s4, s3):
    phi = SemiringService.enumerate_homomorphisms(s4, s3)[0]
    with pytest.raises(SpaceMismatch):
        TopologyService.induced_map(phi, DOWN, source_space=space(s4, FIXED))
