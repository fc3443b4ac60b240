import itertools
import time
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union
from joblib import Parallel, delayed
from app.config.settings import settings
from app.core.bitset import bits_to_mask, is_subset, iter_bits
from app.core.exceptions import CapExceeded, InternalConsistencyError, InvalidParam
from app.core.logger import get_logger, log_execution_time
from app.models.schemas import (
    Backend,
    Claim,
    ClaimReport,
    ClaimResult,
    ClaimScope,
    Corpus,
    FiniteSemiring,
    Homomorphism,
    HomomorphismPair,
    IdealLattice,
    NatBackend,
    Report,
    Semantics,
    SubtractiveSpace,
    Verdict,
)
from app.services.claim_registry import ALL_CLAIMS, claim_rank
from app.services.ideal_service import (
    IdealService,
    closure_mask,
    is_ideal_mask,
    k_ideal_witness_mask,
    product_mask,
    radical_mask,
    subtractive_witness_mask,
    sum_mask,
)
from app.services.nat_service import NatIdealService, nat_family
from app.services.report_service import ReportService
from app.services.semiring_service import SemiringService
from app.services.topology_service import TopologyService, describe_point

logger = get_logger(__name__)

Subject = Union[FiniteSemiring, HomomorphismPair, NatBackend]
Check = Callable[..., Verdict]

BOTH_SEMANTICS = (Semantics.DOWN_SET, Semantics.FIXED_POINT)
_FAMILY_SIZE = 3


# ---------------------------------------------------------------------------
# per-process caches keyed by the (hashable, frozen) semiring models
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def lattice_of(semiring: FiniteSemiring) -> IdealLattice:
    return IdealService.enumerate_ideals(semiring)


@lru_cache(maxsize=512)
def space_of(semiring: FiniteSemiring, semantics: Semantics) -> SubtractiveSpace:
    space = TopologyService.build_space(lattice_of(semiring), semantics)
    return TopologyService.materialize(space)


@lru_cache(maxsize=2048)
def homomorphisms_of(source: FiniteSemiring, target: FiniteSemiring) -> Tuple[Homomorphism, ...]:
    return tuple(SemiringService.enumerate_homomorphisms(source, target))


def _holds(witness: Optional[str] = None) -> Verdict:
    return Verdict(holds=True, witness=witness)


def _fails(witness: str) -> Verdict:
    return Verdict(holds=False, witness=witness)


def _families(masks: Sequence[int]) -> Iterable[Tuple[int, ...]]:
    """Every subfamily of up to three members, then the whole family"""
    for size in range(1, min(_FAMILY_SIZE, len(masks)) + 1):
        yield from itertools.combinations(masks, size)
    if len(masks) > _FAMILY_SIZE:
        yield tuple(masks)


def _meet(family: Iterable[int], start: int) -> int:
    result = start
    for mask in family:
        result &= mask
    return result


# ---------------------------------------------------------------------------
# closure-operator laws on finite semirings
# ---------------------------------------------------------------------------

def _extensive(s: FiniteSemiring) -> Verdict:
    for mask in lattice_of(s).masks:
        closed = closure_mask(s, mask)
        if not is_subset(mask, closed):
            return _fails(f"I={s.render_set(mask)} C(I)={s.render_set(closed)}")
    return _holds()


def _zero_fixed(s: FiniteSemiring) -> Verdict:
    zero = 1 << s.zero
    closed = closure_mask(s, zero)
    if closed != zero:
        return _fails(f"C({s.render_set(zero)})={s.render_set(closed)}")
    return _holds()


def _whole_fixed(s: FiniteSemiring) -> Verdict:
    closed = closure_mask(s, s.full_mask)
    if closed != s.full_mask:
        return _fails(f"C(S)={s.render_set(closed)}")
    return _holds()


def _idempotent(s: FiniteSemiring) -> Verdict:
    for mask in lattice_of(s).masks:
        once = closure_mask(s, mask)
        twice = closure_mask(s, once)
        if once != twice:
            return _fails(f"I={s.render_set(mask)} C(I)={s.render_set(once)} C(C(I))={s.render_set(twice)}")
    return _holds()


def _monotone(s: FiniteSemiring) -> Verdict:
    masks = lattice_of(s).masks
    for a, b in itertools.product(masks, repeat=2):
        if is_subset(a, b) and not is_subset(closure_mask(s, a), closure_mask(s, b)):
            return _fails(f"I={s.render_set(a)} J={s.render_set(b)}")
    return _holds()


def _join_bound(s: FiniteSemiring) -> Verdict:
    masks = lattice_of(s).masks
    for a, b in itertools.product(masks, repeat=2):
        joined = closure_mask(s, sum_mask(s, a, b))
        union = closure_mask(s, a) | closure_mask(s, b)
        if not is_subset(union, joined):
            return _fails(f"I={s.render_set(a)} J={s.render_set(b)} C(I+J)={s.render_set(joined)} "
                          f"C(I)uC(J)={s.render_set(union)}")
    return _holds()


def _meet_commutes(s: FiniteSemiring) -> Verdict:
    for family in _families(lattice_of(s).masks):
        left = closure_mask(s, _meet(family, s.full_mask))
        right = _meet((closure_mask(s, m) for m in family), s.full_mask)
        if left != right:
            rendered = ",".join(s.render_set(m) for m in family)
            return _fails(f"family=[{rendered}] C(meet)={s.render_set(left)} meet(C)={s.render_set(right)}")
    return _holds()


def _smallest_subtractive(s: FiniteSemiring) -> Verdict:
    lattice = lattice_of(s)
    subtractive = [lattice.masks[k] for k in lattice.subtractive_indices()]
    for mask in lattice.masks:
        closed = closure_mask(s, mask)
        if not is_ideal_mask(s, closed):
            return _fails(f"C({s.render_set(mask)})={s.render_set(closed)} is not an ideal")
        if subtractive_witness_mask(s, closed) is not None or not is_subset(mask, closed):
            return _fails(f"C({s.render_set(mask)})={s.render_set(closed)} is not a subtractive cover")
        for k in subtractive:
            if is_subset(mask, k) and not is_subset(closed, k):
                return _fails(f"I={s.render_set(mask)} K={s.render_set(k)} C(I)={s.render_set(closed)}")
    return _holds()


def _fixpoint_characterization(s: FiniteSemiring) -> Verdict:
    for mask in lattice_of(s).masks:
        by_fixpoint = closure_mask(s, mask) == mask
        witness = subtractive_witness_mask(s, mask)
        if by_fixpoint != (witness is None):
            return _fails(f"I={s.render_set(mask)} fixpoint={by_fixpoint} witness={witness}")
    return _holds()


def _galois(s: FiniteSemiring) -> Verdict:
    return IdealService.check_galois(lattice_of(s))


def _product_subtractive(s: FiniteSemiring) -> Verdict:
    lattice = lattice_of(s)
    subtractive = [lattice.masks[k] for k in lattice.subtractive_indices()]
    for a, b in itertools.combinations_with_replacement(subtractive, 2):
        product = product_mask(s, a, b)
        pair = f"I={s.render_set(a)} J={s.render_set(b)} IJ={s.render_set(product)}"
        witness = subtractive_witness_mask(s, product)
        if witness is not None:
            x, y = witness
            return _fails(f"{pair} x={s.label(x)} y={s.label(y)}")
        if not is_subset(product, a & b):
            return _fails(f"{pair} not inside I^J")
    return _holds()


def _intersection_subtractive(s: FiniteSemiring) -> Verdict:
    lattice = lattice_of(s)
    subtractive = [lattice.masks[k] for k in lattice.subtractive_indices()]
    for family in _families(subtractive):
        meet = _meet(family, s.full_mask)
        if subtractive_witness_mask(s, meet) is not None:
            rendered = ",".join(s.render_set(m) for m in family)
            return _fails(f"family=[{rendered}] meet={s.render_set(meet)}")
    return _holds()


def _modular(s: FiniteSemiring) -> Verdict:
    return IdealService.is_modular(lattice_of(s), restrict_to_subtractive=True)


def _radical_bound(s: FiniteSemiring) -> Verdict:
    for ideal in lattice_of(s).all_ideals:
        radical = IdealService.radical(ideal)
        closed = closure_mask(s, ideal.members)
        closed_radical = closure_mask(s, radical.members)
        if not is_subset(closed, closed_radical):
            return _fails(f"I={ideal.render()} rad(I)={radical.render()} C(I)={s.render_set(closed)} "
                          f"C(rad I)={s.render_set(closed_radical)}")
    return _holds()


# ---------------------------------------------------------------------------
# topology claims
# ---------------------------------------------------------------------------

def _subbasis_named(s: FiniteSemiring, semantics: Semantics) -> Verdict:
    space = space_of(s, semantics)
    lattice = space.points
    names = sorted(set(lattice.closure_index))
    subtractive = lattice.subtractive_indices()
    if names != subtractive:
        return _fails(f"names={space.render_points(bits_to_mask(names))} "
                      f"subtractive={space.render_points(bits_to_mask(subtractive))}")
    if len(space.subbasis) != len(subtractive):
        return _fails(f"{len(space.subbasis)} distinct subbasic sets for {len(subtractive)} subtractive ideals")
    return _holds()


def _t0(s: FiniteSemiring, semantics: Semantics) -> Verdict:
    return TopologyService.is_T0(space_of(s, semantics))


def _subbasic_irreducible(s: FiniteSemiring, semantics: Semantics) -> Verdict:
    space = space_of(s, semantics)
    flags = {c.members: c.irreducible for c in TopologyService.irreducible_closed_sets(space)}
    for members in space.subbasis:
        if members and not flags[members]:
            return _fails(f"D={space.render_points(members)} is reducible")
    return _holds()


def _largest_t1(s: FiniteSemiring, semantics: Semantics) -> Verdict:
    space = space_of(s, semantics)
    verdict = TopologyService.is_T1_subspace(space)
    if not verdict.holds:
        return _fails(verdict.witness)
    for q, still_t1 in sorted(verdict.extensions.items()):
        if still_t1:
            return _fails(f"subtractive points plus {describe_point(space, q)} is still T1")
    return _holds()


def _unique_generic(s: FiniteSemiring, semantics: Semantics) -> Verdict:
    space = space_of(s, semantics)
    for closed in TopologyService.irreducible_closed_sets(space):
        if closed.irreducible and len(closed.generic_points) != 1:
            return _fails(f"D={space.render_points(closed.members)} "
                          f"generic={space.render_points(bits_to_mask(closed.generic_points))}")
    return _holds()


# ---------------------------------------------------------------------------
# homomorphism claims
# ---------------------------------------------------------------------------

def _preimages_subtractive(pair: HomomorphismPair) -> Verdict:
    source, target = pair.source, pair.target
    target_lattice = lattice_of(target)
    for phi in homomorphisms_of(source, target):
        kernel = SemiringService.kernel(phi)
        witness = subtractive_witness_mask(source, kernel)
        if witness is not None:
            return _fails(f"{phi.render()} ker={source.render_set(kernel)}")
        for k in target_lattice.subtractive_indices():
            target_mask = target_lattice.masks[k]
            preimage = phi.preimage_mask(target_mask)
            if not is_ideal_mask(source, preimage):
                return _fails(f"{phi.render()} J={target.render_set(target_mask)} preimage is not an ideal")
            if closure_mask(source, preimage) != preimage:
                return _fails(f"{phi.render()} J={target.render_set(target_mask)} "
                              f"preimage={source.render_set(preimage)} is not subtractive")
    return _holds()


def _induced_maps(pair: HomomorphismPair, semantics: Semantics):
    source_space = space_of(pair.source, semantics)
    target_space = space_of(pair.target, semantics)
    for phi in homomorphisms_of(pair.source, pair.target):
        yield phi, TopologyService.induced_map(phi, semantics, source_space, target_space)


def _continuous(pair: HomomorphismPair, semantics: Semantics) -> Verdict:
    for phi, induced in _induced_maps(pair, semantics):
        if not induced.continuous:
            return _fails(f"{phi.render()} {induced.witness}")
    return _holds()


def _homeomorphic(pair: HomomorphismPair, semantics: Semantics) -> Verdict:
    source_space = space_of(pair.source, semantics)
    target_space = space_of(pair.target, semantics)
    for phi in homomorphisms_of(pair.source, pair.target):
        if not phi.surjective:
            continue
        verdict = TopologyService.is_homeomorphism_on_subtractive(phi, semantics, source_space, target_space)
        if not verdict.holds:
            failed = "; ".join(f"{name}: {text}" for name, text in verdict.witnesses.items())
            return _fails(f"{phi.render()} {failed}")
    return _holds()


# ---------------------------------------------------------------------------
# cross-checks
# ---------------------------------------------------------------------------

def _enumeration_oracle(s: FiniteSemiring) -> Verdict:
    found = lattice_of(s).masks
    expected = tuple(IdealService.brute_force_ideals(s))
    if found != expected:
        extra = [m for m in found if m not in expected]
        missing = [m for m in expected if m not in found]
        return _fails(f"extra={[s.render_set(m) for m in extra]} missing={[s.render_set(m) for m in missing]}")
    return _holds()


def _subtractivity_agrees(s: FiniteSemiring) -> Verdict:
    for mask in lattice_of(s).masks:
        votes = (
            closure_mask(s, mask) == mask,
            subtractive_witness_mask(s, mask) is None,
            k_ideal_witness_mask(s, mask) is None,
        )
        if len(set(votes)) != 1:
            return _fails(f"I={s.render_set(mask)} fixpoint={votes[0]} definition={votes[1]} k-ideal={votes[2]}")
    return _holds()


def _closure_agrees(s: FiniteSemiring, semantics: Semantics) -> Verdict:
    space = space_of(s, semantics)
    lattice = space.points
    for p in range(space.n_points):
        try:
            closure = TopologyService.point_closure(space, p)
        except InternalConsistencyError as e:
            return _fails(e.message)
        if semantics == Semantics.DOWN_SET:
            cover = lattice.masks[lattice.closure_index[p]]
            expected = bits_to_mask(j for j, m in enumerate(lattice.masks) if is_subset(m, cover))
            if closure != expected:
                return _fails(f"{describe_point(space, p)} closure={space.render_points(closure)} "
                              f"down-set={space.render_points(expected)}")
    return _holds()


def _subbasic_criterion_agrees(pair: HomomorphismPair, semantics: Semantics) -> Verdict:
    for phi, induced in _induced_maps(pair, semantics):
        if induced.continuous != induced.subbasic_continuous:
            return _fails(f"{phi.render()} full={induced.continuous} subbasic={induced.subbasic_continuous}")
    return _holds()


def _shared_closure_breaks_t0(s: FiniteSemiring, semantics: Semantics) -> Verdict:
    space = space_of(s, semantics)
    lattice = space.points
    t0 = TopologyService.is_T0(space).holds
    for p in range(space.n_points):
        if lattice.subtractive_mask[p]:
            continue
        c = lattice.closure_index[p]
        if TopologyService.point_closure(space, p) == TopologyService.point_closure(space, c) and t0:
            return _fails(f"{describe_point(space, p)} and {describe_point(space, c)} share a closure "
                          f"but is_T0 holds")
    return _holds()


# ---------------------------------------------------------------------------
# natural numbers
# ---------------------------------------------------------------------------

def _nat_representation(label: str, ideal) -> Optional[str]:
    mismatch = NatIdealService.oracle_mismatch(ideal)
    if mismatch is not None:
        return f"{label} disagrees with the combination oracle at {mismatch}"
    return None


def _nat_extensive(_: NatBackend) -> Verdict:
    for label, ideal in nat_family():
        closed = NatIdealService.nat_subtractive_closure(ideal)
        for name, candidate in ((label, ideal), (f"C({label})", closed)):
            problem = _nat_representation(name, candidate)
            if problem:
                return _fails(problem)
        limit = settings.NAT_ORACLE_FACTOR * max(ideal.bound, closed.bound)
        missing = next((m for m in range(limit + 1) if ideal.contains(m) and not closed.contains(m)), None)
        if missing is not None:
            return _fails(f"{label} holds {missing} but C({label})={NatIdealService.render_nat(closed)}")
    return _holds()


def _nat_idempotent(_: NatBackend) -> Verdict:
    for label, ideal in nat_family():
        once = NatIdealService.nat_subtractive_closure(ideal)
        twice = NatIdealService.nat_subtractive_closure(once)
        if once != twice:
            return _fails(f"I={label} C(I)={NatIdealService.render_nat(once)} "
                          f"C(C(I))={NatIdealService.render_nat(twice)}")
    return _holds()


def _nat_monotone(_: NatBackend) -> Verdict:
    family = nat_family()
    for (left_label, left), (right_label, right) in itertools.product(family, repeat=2):
        if not NatIdealService.nat_is_subset(left, right):
            continue
        left_closed = NatIdealService.nat_subtractive_closure(left)
        right_closed = NatIdealService.nat_subtractive_closure(right)
        if not NatIdealService.nat_is_subset(left_closed, right_closed):
            return _fails(f"I={left_label} J={right_label}")
    return _holds()


def _nat_sum_counterexample(_: NatBackend) -> Verdict:
    two = NatIdealService.nat_ideal([2])
    three = NatIdealService.nat_ideal([3])
    for label, ideal in (("<2>", two), ("<3>", three)):
        if not NatIdealService.nat_is_subtractive(ideal).holds:
            return _fails(f"{label} is not subtractive")
    total = NatIdealService.nat_sum(two, three)
    stray = next((m for m in range(101) if total.contains(m) != (m != 1)), None)
    if stray is not None:
        return _fails(f"<2>+<3> disagrees with N\\{{1}} at {stray}")
    verdict = NatIdealService.nat_is_subtractive(total)
    if verdict.holds:
        return _fails("<2>+<3> is subtractive")
    x, y = verdict.witness
    return _holds(f"I=<2> J=<3> I+J={NatIdealService.render_nat(total)} x={x} y={y}")


def _nat_radical_bound(_: NatBackend) -> Verdict:
    for label, ideal in nat_family():
        radical = NatIdealService.nat_radical(ideal)
        closed = NatIdealService.nat_subtractive_closure(ideal)
        closed_radical = NatIdealService.nat_subtractive_closure(radical)
        if not NatIdealService.nat_is_subset(closed, closed_radical):
            return _fails(f"I={label} rad(I)={NatIdealService.render_nat(radical)}")
    return _holds()


_FINITE_CHECKS: Dict[str, Check] = {
    "C1.1": _extensive,
    "C1.2": _zero_fixed,
    "C1.3": _whole_fixed,
    "C1.4": _idempotent,
    "C1.5": _monotone,
    "C1.6": _join_bound,
    "C1.7": _meet_commutes,
    "C1.8": _smallest_subtractive,
    "C1.9": _fixpoint_characterization,
    "C2": _galois,
    "C3": _product_subtractive,
    "C4": _intersection_subtractive,
    "C6": _modular,
    "C7": _radical_bound,
    "C8": _subbasis_named,
    "C9": _t0,
    "C10": _subbasic_irreducible,
    "C11": _largest_t1,
    "C12": _unique_generic,
    "X1": _enumeration_oracle,
    "X2": _subtractivity_agrees,
    "X3": _closure_agrees,
    "X5": _shared_closure_breaks_t0,
}

_HOMOMORPHISM_CHECKS: Dict[str, Check] = {
    "C13": _preimages_subtractive,
    "C14": _continuous,
    "C15": _homeomorphic,
    "X4": _subbasic_criterion_agrees,
}

_NAT_CHECKS: Dict[str, Check] = {
    "C1.1": _nat_extensive,
    "C1.4": _nat_idempotent,
    "C1.5": _nat_monotone,
    "C5": _nat_sum_counterexample,
    "C7": _nat_radical_bound,
}


def parse_semantics(choice: str) -> Tuple[Semantics, ...]:
    """'both', 'downset' or 'fixedpoint'"""
    choice = choice.strip().lower()
    if choice == "both":
        return BOTH_SEMANTICS
    try:
        return (Semantics(choice),)
    except ValueError:
        raise InvalidParam(f"semantics must be downset, fixedpoint or both, got '{choice}'")


def _check_for(claim: Claim, subject: Subject) -> Check:
    if isinstance(subject, NatBackend):
        table = _NAT_CHECKS
    elif isinstance(subject, HomomorphismPair):
        table = _HOMOMORPHISM_CHECKS
    else:
        table = _FINITE_CHECKS
    if claim.id not in table:
        raise InvalidParam(f"claim {claim.id} does not apply to '{subject.name}'")
    return table[claim.id]


class VerificationService:
    """Evaluates registered claims against corpus structures"""

    @staticmethod
    def run_claim(claim: Claim,
                  subject: Subject,
                  semantics: Optional[Semantics] = None,
                  corpus_index: int = 0,
                  sub_index: int = 0) -> ClaimReport:
        """Evaluate one claim; caps become a cap result instead of an error"""
        check = _check_for(claim, subject)
        if claim.semantics_dependent and semantics is None:
            raise InvalidParam(f"claim {claim.id} needs a topology semantics")
        if not claim.semantics_dependent:
            semantics = None

        start = time.perf_counter()
        try:
            verdict = check(subject, semantics) if claim.semantics_dependent else check(subject)
            result = ClaimResult.HOLDS if verdict.holds else ClaimResult.FAILS
            witness = verdict.witness
        except CapExceeded as e:
            result, witness = ClaimResult.CAP_EXCEEDED, e.message
        except InternalConsistencyError as e:
            logger.error(f"Claim {claim.id} on '{subject.name}': {e.message}")
            result, witness = ClaimResult.FAILS, e.message
        elapsed = time.perf_counter() - start

        if elapsed > settings.SOFT_BUDGET_SECONDS:
            logger.warning(f"Claim {claim.id} on '{subject.name}' took {elapsed:.1f}s "
                           f"(soft budget {settings.SOFT_BUDGET_SECONDS}s)")
        if result == ClaimResult.FAILS and claim.must_hold:
            logger.error(f"Must-hold claim {claim.id} fails on '{subject.name}': {witness}")

        return ClaimReport(
            claim_id=claim.id,
            structure=subject.name,
            semantics=semantics,
            result=result,
            witness=witness,
            elapsed=elapsed,
            corpus_index=corpus_index,
            sub_index=sub_index,
        )

    @staticmethod
    def plan(corpus: Corpus,
             claims: Sequence[Claim],
             semantics: Sequence[Semantics] = BOTH_SEMANTICS,
             include_nat: bool = False) -> List[Tuple[Claim, Subject, Optional[Semantics], int, int]]:
        """Every applicable (claim, subject, semantics) task with its ordering indices.

        Pairs without homomorphisms and C15 on pairs without a surjection are
        skipped; so is the enumeration oracle above ORACLE_MAX_ORDER.
        """
        structures = corpus.structures
        tasks = []

        def expand(claim: Claim) -> Sequence[Optional[Semantics]]:
            return semantics if claim.semantics_dependent else (None,)

        for index, semiring in enumerate(structures):
            for claim in claims:
                if Backend.FINITE not in claim.backends:
                    continue
                if claim.scope == ClaimScope.PER_HOMOMORPHISM:
                    for target_index, target in enumerate(structures):
                        homs = homomorphisms_of(semiring, target)
                        if not homs or (claim.id == "C15" and not any(h.surjective for h in homs)):
                            continue
                        pair = HomomorphismPair(source=semiring, target=target)
                        for sem in expand(claim):
                            tasks.append((claim, pair, sem, index, target_index + 1))
                    continue
                if claim.id == "X1" and semiring.order > settings.ORACLE_MAX_ORDER:
                    continue
                for sem in expand(claim):
                    tasks.append((claim, semiring, sem, index, 0))

        if include_nat:
            nat = NatBackend()
            for claim in claims:
                if Backend.NAT in claim.backends:
                    tasks.append((claim, nat, None, len(structures), 0))
        return tasks

    @staticmethod
    @log_execution_time()
    def run_suite(corpus: Corpus,
                  claims: Optional[Sequence[Claim]] = None,
                  semantics: Sequence[Semantics] = BOTH_SEMANTICS,
                  include_nat: bool = False,
                  n_jobs: Optional[int] = None,
                  strict: bool = False) -> Report:
        claims = list(ALL_CLAIMS) if claims is None else list(claims)
        n_jobs = settings.N_JOBS if n_jobs is None else n_jobs
        tasks = VerificationService.plan(corpus, claims, semantics, include_nat)
        logger.info(f"Running {len(tasks)} claim checks over {len(corpus.structures)} structures (n_jobs={n_jobs})")

        if n_jobs == 1:
            reports = [VerificationService.run_claim(*task) for task in tasks]
        else:
            reports = Parallel(n_jobs=n_jobs)(delayed(VerificationService.run_claim)(*task) for task in tasks)

        semantics_rank = {None: 0, Semantics.DOWN_SET: 1, Semantics.FIXED_POINT: 2}
        reports.sort(key=lambda r: (r.corpus_index, claim_rank(r.claim_id), semantics_rank[r.semantics], r.sub_index))
        if corpus.limit_reached:
            logger.warning("Search limit was reached; the report covers a partial corpus")
        return ReportService.build_report(reports, strict=strict)
