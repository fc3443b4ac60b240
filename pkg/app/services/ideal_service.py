import itertools
from typing import Iterable, List, Optional, Sequence, Tuple, Union
import networkx as nx
from app.config.settings import settings
from app.core.bitset import bits_to_mask, is_subset, iter_bits, sort_key
from app.core.exceptions import (
    CapExceeded,
    EmptyFamily,
    InternalConsistencyError,
    InvalidParam,
    NotAnIdeal,
    ParentMismatch,
)
from app.core.logger import get_logger, log_execution_time, log_method_calls
from app.models.schemas import FiniteSemiring, Homomorphism, Ideal, IdealLattice, Verdict

logger = get_logger(__name__)

Seed = Union[int, Iterable[int]]


# ---------------------------------------------------------------------------
# mask-level kernels (no logging: these run inside exhaustive loops)
# ---------------------------------------------------------------------------

def generate_mask(semiring: FiniteSemiring, seed: int) -> int:
    """Smallest ideal containing seed: add zero, close under + and r*(-)"""
    members = seed | (1 << semiring.zero)
    add, mul, n = semiring.add, semiring.mul, semiring.order
    while True:
        grown = members
        elements = list(iter_bits(members))
        for x in elements:
            row_add, row_mul = add[x], mul[x]
            for y in elements:
                grown |= 1 << row_add[y]
            for r in range(n):
                grown |= 1 << row_mul[r]
        if grown == members:
            return members
        members = grown


def is_ideal_mask(semiring: FiniteSemiring, mask: int) -> bool:
    if not mask >> semiring.zero & 1:
        return False
    elements = list(iter_bits(mask))
    for x in elements:
        for y in elements:
            if not mask >> semiring.add[x][y] & 1:
                return False
        for r in range(semiring.order):
            if not mask >> semiring.mul[r][x] & 1:
                return False
    return True


def closure_mask(semiring: FiniteSemiring, mask: int) -> int:
    """{r | r + x in I for some x in I}"""
    elements = list(iter_bits(mask))
    result = 0
    for r in range(semiring.order):
        row = semiring.add[r]
        if any(mask >> row[x] & 1 for x in elements):
            result |= 1 << r
    return result


def subtractive_witness_mask(semiring: FiniteSemiring, mask: int) -> Optional[Tuple[int, int]]:
    """First (x, y) with x in I, x + y in I and y not in I"""
    for x in iter_bits(mask):
        row = semiring.add[x]
        for y in range(semiring.order):
            if not mask >> y & 1 and mask >> row[y] & 1:
                return x, y
    return None


def k_ideal_witness_mask(semiring: FiniteSemiring, mask: int) -> Optional[Tuple[int, int]]:
    """First (x, y) with x + y in I but exactly one of x, y in I"""
    for x in range(semiring.order):
        for y in range(semiring.order):
            if mask >> semiring.add[x][y] & 1 and (mask >> x & 1) != (mask >> y & 1):
                return x, y
    return None


def sum_mask(semiring: FiniteSemiring, a: int, b: int) -> int:
    seed = 0
    for x in iter_bits(a):
        for y in iter_bits(b):
            seed |= 1 << semiring.add[x][y]
    return generate_mask(semiring, seed)


def product_mask(semiring: FiniteSemiring, a: int, b: int) -> int:
    seed = 0
    for x in iter_bits(a):
        for y in iter_bits(b):
            seed |= 1 << semiring.mul[x][y]
    return generate_mask(semiring, seed)


def radical_mask(semiring: FiniteSemiring, mask: int) -> int:
    """{r | r^k in I for some k >= 1}; powers are followed until they cycle"""
    result = 0
    for r in range(semiring.order):
        seen = set()
        power = r
        while power not in seen:
            if mask >> power & 1:
                result |= 1 << r
                break
            seen.add(power)
            power = semiring.mul[power][r]
    return result


def _as_mask(seed: Seed) -> int:
    return seed if isinstance(seed, int) else bits_to_mask(seed)


def _common_parent(ideals: Sequence[Ideal]) -> FiniteSemiring:
    parent = ideals[0].parent
    for ideal in ideals[1:]:
        if ideal.parent is not parent and ideal.parent != parent:
            raise ParentMismatch(f"ideals of '{parent.name}' and '{ideal.parent.name}' cannot be combined")
    return parent


class IdealService:
    """Ideals of a finite semiring and the subtractive closure operator"""

    @staticmethod
    def generate_ideal(semiring: FiniteSemiring, seed: Seed) -> Ideal:
        """Smallest ideal containing the seed elements"""
        return Ideal(parent=semiring, members=generate_mask(semiring, _as_mask(seed)))

    @staticmethod
    def from_labels(semiring: FiniteSemiring, labels: Iterable[str]) -> Ideal:
        """The ideal with exactly these element labels; the set must already be an ideal"""
        unknown = [label for label in labels if label not in semiring.elements]
        if unknown:
            raise InvalidParam(f"unknown element label(s) {unknown} in '{semiring.name}'")
        mask = bits_to_mask(semiring.index(label) for label in labels)
        if not is_ideal_mask(semiring, mask):
            raise NotAnIdeal(f"{semiring.render_set(mask)} is not an ideal of '{semiring.name}'")
        return Ideal(parent=semiring, members=mask)

    @staticmethod
    @log_execution_time()
    @log_method_calls()
    def enumerate_ideals(semiring: FiniteSemiring,
                         max_order: Optional[int] = None,
                         point_cap: Optional[int] = None) -> IdealLattice:
        """Materialize Idl(S) by breadth-first generation from singleton seeds.

        New ideals are joined pairwise (union, then generate) until no new ideal
        appears; every ideal is a finite join of principal ideals so this is complete.
        """
        max_order = settings.MAX_ORDER if max_order is None else max_order
        point_cap = settings.POINT_CAP if point_cap is None else point_cap
        if semiring.order > max_order:
            raise CapExceeded(f"order of '{semiring.name}'", max_order, semiring.order)

        found = {generate_mask(semiring, 0)}
        for x in range(semiring.order):
            found.add(generate_mask(semiring, 1 << x))
        frontier = list(found)

        while frontier:
            if len(found) > point_cap:
                raise CapExceeded(f"ideal count of '{semiring.name}'", point_cap, len(found))
            known = list(found)
            fresh = []
            for a in frontier:
                for b in known:
                    joined = generate_mask(semiring, a | b)
                    if joined not in found:
                        found.add(joined)
                        fresh.append(joined)
            frontier = fresh

        if len(found) > point_cap:
            raise CapExceeded(f"ideal count of '{semiring.name}'", point_cap, len(found))

        masks = tuple(sorted(found, key=sort_key))
        closure_index = []
        subtractive = []
        for i, mask in enumerate(masks):
            closed = closure_mask(semiring, mask)
            closure_index.append(masks.index(closed))
            subtractive.append(closed == mask)

        logger.info(f"'{semiring.name}' has {len(masks)} ideals, {sum(subtractive)} subtractive")
        return IdealLattice(
            semiring=semiring,
            all_ideals=tuple(Ideal(parent=semiring, members=m) for m in masks),
            masks=masks,
            subtractive_mask=tuple(subtractive),
            closure_index=tuple(closure_index),
        )

    @staticmethod
    def brute_force_ideals(semiring: FiniteSemiring) -> List[int]:
        """Power-set filter oracle; sorted like IdealLattice.masks"""
        masks = [m for m in range(1 << semiring.order) if is_ideal_mask(semiring, m)]
        return sorted(masks, key=sort_key)

    @staticmethod
    def subtractive_closure(ideal: Ideal) -> Ideal:
        """C_sub(I) = {r | r + x in I for some x in I}"""
        return Ideal(parent=ideal.parent, members=closure_mask(ideal.parent, ideal.members))

    @staticmethod
    def is_subtractive(ideal: Ideal) -> bool:
        """I = C_sub(I), cross-asserted against the definitional x, x+y in I => y in I check"""
        by_fixpoint = closure_mask(ideal.parent, ideal.members) == ideal.members
        by_definition = subtractive_witness_mask(ideal.parent, ideal.members) is None
        if by_fixpoint != by_definition:
            raise InternalConsistencyError(
                f"subtractivity of {ideal.render()} in '{ideal.parent.name}': "
                f"fixpoint says {by_fixpoint}, definition says {by_definition}"
            )
        return by_fixpoint

    @staticmethod
    def subtractive_witness(ideal: Ideal) -> Optional[Tuple[int, int]]:
        """First (x, y) with x, x + y in I and y not in I, or None"""
        return subtractive_witness_mask(ideal.parent, ideal.members)

    @staticmethod
    def is_k_ideal(ideal: Ideal) -> bool:
        """x + y in I implies either x, y in I or x, y not in I"""
        return k_ideal_witness_mask(ideal.parent, ideal.members) is None

    @staticmethod
    def ideal_sum(left: Ideal, right: Ideal) -> Ideal:
        """I + J, the ideal generated by the union"""
        parent = _common_parent([left, right])
        return Ideal(parent=parent, members=sum_mask(parent, left.members, right.members))

    @staticmethod
    def ideal_product(left: Ideal, right: Ideal) -> Ideal:
        """IJ, the ideal generated by every product ij"""
        parent = _common_parent([left, right])
        return Ideal(parent=parent, members=product_mask(parent, left.members, right.members))

    @staticmethod
    def ideal_intersection(ideals: Sequence[Ideal]) -> Ideal:
        """Intersection of a nonempty family over one semiring"""
        if not ideals:
            raise EmptyFamily("intersection of an empty family of ideals")
        parent = _common_parent(list(ideals))
        members = parent.full_mask
        for ideal in ideals:
            members &= ideal.members
        return Ideal(parent=parent, members=members)

    @staticmethod
    def radical(ideal: Ideal) -> Ideal:
        """{r | r^k in I for some k >= 1}, checked to be an ideal"""
        parent = ideal.parent
        members = radical_mask(parent, ideal.members)
        if not is_ideal_mask(parent, members):
            raise InternalConsistencyError(
                f"radical of {ideal.render()} in '{parent.name}' is not an ideal: {parent.render_set(members)}"
            )
        return Ideal(parent=parent, members=members)

    @staticmethod
    def preimage_ideal(phi: Homomorphism, target_ideal: Ideal) -> Ideal:
        """phi^-1(J) as an ideal of the source"""
        members = phi.preimage_mask(target_ideal.members)
        if not is_ideal_mask(phi.source, members):
            raise InternalConsistencyError(
                f"preimage of {target_ideal.render()} under {phi.render()} is not an ideal"
            )
        return Ideal(parent=phi.source, members=members)

    @staticmethod
    def image_ideal(phi: Homomorphism, source_ideal: Ideal) -> Ideal:
        """<phi(I)>, the ideal generated by the image"""
        return IdealService.generate_ideal(phi.target, phi.image_mask(source_ideal.members))

    @staticmethod
    @log_method_calls()
    def check_galois(lattice: IdealLattice) -> Verdict:
        """C_sub(I) <= K  <=>  I <= K for every ideal I and subtractive K"""
        semiring = lattice.semiring
        for i, mask in enumerate(lattice.masks):
            closed = lattice.masks[lattice.closure_index[i]]
            for k in lattice.subtractive_indices():
                target = lattice.masks[k]
                if is_subset(closed, target) != is_subset(mask, target):
                    return Verdict(
                        holds=False,
                        witness=f"I={semiring.render_set(mask)} K={semiring.render_set(target)}",
                    )
        return Verdict(holds=True)

    @staticmethod
    @log_method_calls()
    def is_modular(lattice: IdealLattice, restrict_to_subtractive: bool) -> Verdict:
        """Modular law a <= c => a v (b ^ c) = (a v b) ^ c over all triples.

        Meet is intersection. Join is the ideal sum on Idl(S) and C_sub of the sum
        on Idl_sub(S).
        """
        semiring = lattice.semiring
        if restrict_to_subtractive:
            family = [lattice.masks[i] for i in lattice.subtractive_indices()]

            def join(a: int, b: int) -> int:
                return closure_mask(semiring, sum_mask(semiring, a, b))
        else:
            family = list(lattice.masks)

            def join(a: int, b: int) -> int:
                return sum_mask(semiring, a, b)

        for a, b, c in itertools.product(family, repeat=3):
            if not is_subset(a, c):
                continue
            left = join(a, b & c)
            right = join(a, b) & c
            if left != right:
                render = semiring.render_set
                return Verdict(
                    holds=False,
                    witness=f"a={render(a)} b={render(b)} c={render(c)} "
                            f"a+(b^c)={render(left)} (a+b)^c={render(right)}",
                )
        return Verdict(holds=True)

    @staticmethod
    def inclusion_graph(lattice: IdealLattice) -> nx.DiGraph:
        """Hasse diagram of Idl(S) under inclusion (edges point upward)"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(lattice)))
        for i, a in enumerate(lattice.masks):
            for j, b in enumerate(lattice.masks):
                if i != j and is_subset(a, b):
                    graph.add_edge(i, j)
        return nx.transitive_reduction(graph)
