import itertools
from typing import Iterable, List, Optional, Sequence, Tuple, Union
from app.config.settings import settings
from app.core.bitset import is_subset, iter_bits, sort_key
from app.core.exceptions import CapExceeded, InternalConsistencyError, InvalidParam, NotSurjective, SpaceMismatch
from app.core.logger import get_logger, log_execution_time, log_method_calls
from app.models.schemas import (
    ClosedSet,
    HomeomorphismVerdict,
    Homomorphism,
    IdealLattice,
    InducedMap,
    Semantics,
    SubtractiveSpace,
    T1Verdict,
    Verdict,
)
from app.services.ideal_service import IdealService, closure_mask

logger = get_logger(__name__)

PointSet = Union[int, ClosedSet]


def _members(points: PointSet) -> int:
    return points.members if isinstance(points, ClosedSet) else points


def describe_point(space: SubtractiveSpace, p: int, prefix: str = "P") -> str:
    return f"{prefix}{p}={space.points.all_ideals[p].render()}"


def closure_from_family(family: Iterable[int], p: int) -> int:
    """Brute-force closure: the smallest closed set containing p"""
    containing = [f for f in family if f >> p & 1]
    best = min(containing, key=sort_key)
    if any(not is_subset(best, f) for f in containing):
        raise InternalConsistencyError(f"closed family has no least member containing point {p}")
    return best


def _pullback(mapping: Sequence[int], closed: int) -> int:
    mask = 0
    for j, i in enumerate(mapping):
        if closed >> i & 1:
            mask |= 1 << j
    return mask


def _pushforward(mapping: Sequence[int], points: int) -> int:
    mask = 0
    for j in iter_bits(points):
        mask |= 1 << mapping[j]
    return mask


class TopologyService:
    """Subtractive topology on Idl(S) under the DOWN_SET and FIXED_POINT readings"""

    @staticmethod
    @log_method_calls()
    def build_space(lattice: IdealLattice,
                    semantics: Semantics,
                    cap: Optional[int] = None,
                    point_cap: Optional[int] = None) -> SubtractiveSpace:
        """Points are the ideals; one subbasic closed set per distinct C_sub(I), read by semantics"""
        cap = settings.CLOSED_CAP if cap is None else cap
        point_cap = settings.POINT_CAP if point_cap is None else point_cap
        if len(lattice) > point_cap:
            raise CapExceeded(f"point count of '{lattice.semiring.name}'", point_cap, len(lattice))

        subbasis: List[int] = []
        for i in range(len(lattice)):
            c = lattice.closure_index[i]
            if semantics == Semantics.DOWN_SET:
                closed = lattice.masks[c]
                members = 0
                for j, mask in enumerate(lattice.masks):
                    if is_subset(mask, closed):
                        members |= 1 << j
            else:
                members = 1 << c
            if members not in subbasis:
                subbasis.append(members)

        return SubtractiveSpace(points=lattice, semantics=semantics, subbasis=tuple(subbasis), cap=cap)

    @staticmethod
    @log_execution_time()
    def closed_family(space: SubtractiveSpace) -> Tuple[int, ...]:
        """Least family containing the subbasis, the empty set and X, closed under binary union and intersection"""
        family = set(space.subbasis) | {0, space.full_mask}
        queue = list(family)
        while queue:
            a = queue.pop()
            for b in list(family):
                for combined in (a | b, a & b):
                    if combined not in family:
                        family.add(combined)
                        queue.append(combined)
                        if len(family) > space.cap:
                            raise CapExceeded("closed family", space.cap, len(family))
        logger.info(f"Closed family of '{space.points.semiring.name}' ({space.semantics.value}): {len(family)} sets")
        return tuple(sorted(family, key=sort_key))

    @staticmethod
    def materialize(space: SubtractiveSpace) -> SubtractiveSpace:
        """Copy of the space with its closed family computed"""
        if space.closed_family is not None:
            return space
        return space.model_copy(update={"closed_family": TopologyService.closed_family(space)})

    @staticmethod
    def point_closure(space: SubtractiveSpace, p: int) -> int:
        """Intersection of the subbasic sets containing p (X when none does)"""
        result = space.full_mask
        for members in space.subbasis:
            if members >> p & 1:
                result &= members
        if space.closed_family is not None:
            oracle = closure_from_family(space.closed_family, p)
            if oracle != result:
                raise InternalConsistencyError(
                    f"closure of P{p}: subbasis gives {space.render_points(result)}, "
                    f"closed family gives {space.render_points(oracle)}"
                )
        return result

    @staticmethod
    def is_T0(space: SubtractiveSpace) -> Verdict:
        """Distinct points have distinct closures; the witness names the first clash"""
        closures = {}
        for p in range(space.n_points):
            closure = TopologyService.point_closure(space, p)
            if closure in closures:
                q = closures[closure]
                return Verdict(
                    holds=False,
                    witness=f"{describe_point(space, q)} {describe_point(space, p)} "
                            f"closure={space.render_points(closure)}",
                )
            closures[closure] = p
        return Verdict(holds=True)

    @staticmethod
    def is_T1_subspace(space: SubtractiveSpace, points: Optional[int] = None) -> T1Verdict:
        """Every singleton of the subspace is closed; also reports one-point extensions.

        T1 is hereditary, so a failing one-point extension rules out every larger
        superset through that point.
        """
        if points is None:
            points = space.points.subtractive_points()
        closures = [TopologyService.point_closure(space, p) for p in range(space.n_points)]

        def first_failure(subset: int) -> Optional[int]:
            for p in iter_bits(subset):
                if closures[p] & subset != 1 << p:
                    return p
            return None

        failing = first_failure(points)
        extensions = {}
        for q in range(space.n_points):
            if not points >> q & 1:
                extensions[q] = first_failure(points | 1 << q) is None

        if failing is None:
            return T1Verdict(holds=True, extensions=extensions)
        return T1Verdict(
            holds=False,
            witness=f"{describe_point(space, failing)} closure in subspace="
                    f"{space.render_points(closures[failing] & points)}",
            extensions=extensions,
        )

    @staticmethod
    @log_execution_time()
    def irreducible_closed_sets(space: SubtractiveSpace) -> List[ClosedSet]:
        """Flag every nonempty closed set as irreducible or not, with its generic points"""
        space = TopologyService.materialize(space)
        family = space.closed_family
        results = []
        for closed in family:
            if closed == 0:
                continue
            proper = [e for e in family if e != closed and is_subset(e, closed)]
            maximal = [e for e in proper if not any(e != f and is_subset(e, f) for f in proper)]
            reducible = any(a | b == closed for a, b in itertools.combinations(maximal, 2))
            results.append(ClosedSet(
                members=closed,
                irreducible=not reducible,
                generic_points=tuple(TopologyService.generic_points(space, closed)),
            ))
        return results

    @staticmethod
    def generic_points(space: SubtractiveSpace, closed: PointSet) -> List[int]:
        """Points p of D with cl{p} = D"""
        members = _members(closed)
        if space.closed_family is not None and members not in space.closed_family:
            raise InvalidParam(f"{space.render_points(members)} is not closed")
        return [p for p in iter_bits(members) if TopologyService.point_closure(space, p) == members]

    @staticmethod
    def _spaces_for(phi: Homomorphism,
                    semantics: Semantics,
                    source_space: Optional[SubtractiveSpace],
                    target_space: Optional[SubtractiveSpace]) -> Tuple[SubtractiveSpace, SubtractiveSpace]:
        for space in (source_space, target_space):
            if space is not None and space.semantics != semantics:
                raise SpaceMismatch(
                    f"space of '{space.points.semiring.name}' uses {space.semantics.value}, expected {semantics.value}"
                )
        if source_space is None:
            source_space = TopologyService.build_space(IdealService.enumerate_ideals(phi.source), semantics)
        if target_space is None:
            target_space = TopologyService.build_space(IdealService.enumerate_ideals(phi.target), semantics)
        return TopologyService.materialize(source_space), TopologyService.materialize(target_space)

    @staticmethod
    @log_method_calls()
    def induced_map(phi: Homomorphism,
                    semantics: Semantics,
                    source_space: Optional[SubtractiveSpace] = None,
                    target_space: Optional[SubtractiveSpace] = None) -> InducedMap:
        """phi_!: Idl(S') -> Idl(S), J -> phi^-1(J), with a definitional continuity check"""
        source_space, target_space = TopologyService._spaces_for(phi, semantics, source_space, target_space)
        source_lattice, target_lattice = source_space.points, target_space.points

        mapping = []
        for j, target_ideal in enumerate(target_lattice.all_ideals):
            preimage = IdealService.preimage_ideal(phi, target_ideal)
            if target_lattice.subtractive_mask[j] and closure_mask(phi.source, preimage.members) != preimage.members:
                raise InternalConsistencyError(
                    f"preimage of subtractive {target_ideal.render()} under {phi.render()} is not subtractive"
                )
            mapping.append(source_lattice.index_of(preimage.members))

        target_family = set(target_space.closed_family)

        def first_discontinuity(closed_sets: Iterable[int]) -> Optional[int]:
            for closed in closed_sets:
                if _pullback(mapping, closed) not in target_family:
                    return closed
            return None

        bad = first_discontinuity(source_space.closed_family)
        bad_subbasic = first_discontinuity(source_space.subbasis)
        witness = None
        if bad is not None:
            witness = (f"closed {source_space.render_points(bad)} pulls back to "
                       f"{target_space.render_points(_pullback(mapping, bad))}")
        return InducedMap(
            homomorphism=phi,
            semantics=semantics,
            mapping=tuple(mapping),
            continuous=bad is None,
            subbasic_continuous=bad_subbasic is None,
            witness=witness,
        )

    @staticmethod
    @log_method_calls()
    def is_homeomorphism_on_subtractive(phi: Homomorphism,
                                        semantics: Semantics,
                                        source_space: Optional[SubtractiveSpace] = None,
                                        target_space: Optional[SubtractiveSpace] = None) -> HomeomorphismVerdict:
        """Check phi_! restricted to Idl_sub(S') -> Idl_sub(S) property by property.

        Target-side points are rendered Q<j>, source-side points P<i>.
        """
        if not phi.surjective:
            raise NotSurjective(f"{phi.render()} is not surjective")
        source_space, target_space = TopologyService._spaces_for(phi, semantics, source_space, target_space)
        mapping = TopologyService.induced_map(phi, semantics, source_space, target_space).mapping

        sub_source = source_space.points.subtractive_points()
        sub_target = target_space.points.subtractive_points()
        source_closed = {f & sub_source for f in source_space.closed_family}
        target_closed = {f & sub_target for f in target_space.closed_family}
        witnesses = {}

        injective = True
        seen = {}
        for j in iter_bits(sub_target):
            i = mapping[j]
            if i in seen:
                injective = False
                witnesses["injective"] = f"Q{seen[i]},Q{j} -> {describe_point(source_space, i)}"
                break
            seen[i] = j

        image = _pushforward(mapping, sub_target)
        missing = sub_source & ~image
        surjective = missing == 0
        if not surjective:
            first = next(iter_bits(missing))
            witnesses["surjective"] = f"{describe_point(source_space, first)} has no subtractive preimage"

        continuous = True
        for closed in sorted(source_closed, key=sort_key):
            pulled = _pullback(mapping, closed) & sub_target
            if pulled not in target_closed:
                continuous = False
                witnesses["continuous"] = (f"closed {source_space.render_points(closed)} pulls back to "
                                           f"non-closed {target_space.render_points(pulled).replace('P', 'Q')}")
                break

        closed_map = True
        for closed in sorted(target_closed, key=sort_key):
            pushed = _pushforward(mapping, closed)
            if pushed not in source_closed:
                closed_map = False
                witnesses["closed"] = (f"closed {target_space.render_points(closed).replace('P', 'Q')} maps to "
                                       f"non-closed {source_space.render_points(pushed)}")
                break

        return HomeomorphismVerdict(
            injective=injective,
            surjective=surjective,
            continuous=continuous,
            closed=closed_map,
            witnesses=witnesses,
        )
