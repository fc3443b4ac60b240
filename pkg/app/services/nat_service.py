from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Tuple
from sympy import primefactors
from app.config.settings import settings
from app.core.exceptions import InternalConsistencyError, InvalidParam
from app.core.logger import get_logger, log_method_calls
from app.models.schemas import NatIdeal, NatVerdict

logger = get_logger(__name__)

_ZERO_IDEAL = NatIdeal(generators=(), bound=1, window=1, period=0)


def combination_oracle(generators: Iterable[int], limit: int) -> List[bool]:
    """reach[m] is True iff m < limit is an N-linear combination of the generators"""
    gens = sorted(set(generators))
    reach = [False] * max(limit, 1)
    reach[0] = True
    for m in range(1, limit):
        reach[m] = any(g <= m and reach[m - g] for g in gens)
    return reach


def _minimal_generators(generators: Iterable[int]) -> Tuple[int, ...]:
    kept: List[int] = []
    for g in sorted(set(generators)):
        if not combination_oracle(kept, g + 1)[g]:
            kept.append(g)
    return tuple(kept)


def _conductor(ideal: NatIdeal) -> int:
    """Smallest c from which every multiple of the period is a member"""
    d = ideal.period
    c = ideal.bound - ideal.bound % d if ideal.bound % d else ideal.bound
    while c - d >= 0 and ideal.contains(c - d):
        c -= d
    return c


class NatIdealService:
    """Finitely generated ideals of the semiring (N, +, *, 0, 1)"""

    @staticmethod
    @log_method_calls()
    def nat_ideal(generators: Iterable[int]) -> NatIdeal:
        """Eventually periodic representation of <g1, ..., gk>"""
        raw = list(generators)
        if any(not isinstance(g, int) or g < 0 for g in raw):
            raise InvalidParam(f"generators must be natural numbers, got {raw}")
        gens = _minimal_generators(g for g in raw if g > 0)
        if not gens:
            return _ZERO_IDEAL
        if max(gens) > settings.NAT_MAX_GENERATOR:
            raise InvalidParam(
                f"generator {max(gens)} exceeds NAT_MAX_GENERATOR={settings.NAT_MAX_GENERATOR}"
            )

        d = reduce(gcd, gens)
        reduced_max = max(gens) // d
        bound = d * (reduced_max * reduced_max + reduced_max)
        reach = combination_oracle(gens, bound + max(gens))

        # every multiple of d in [bound, bound + max) must be reachable for the tail rule
        for m in range(bound, bound + max(gens)):
            if reach[m] != (m % d == 0):
                raise InternalConsistencyError(
                    f"tail rule fails for <{','.join(map(str, gens))}> at {m} (bound {bound})"
                )

        window = 0
        for m in range(bound):
            if reach[m]:
                window |= 1 << m
        return NatIdeal(generators=gens, bound=bound, window=window, period=d)

    @staticmethod
    def nat_sum(left: NatIdeal, right: NatIdeal) -> NatIdeal:
        """I + J, generated by both generator lists"""
        return NatIdealService.nat_ideal(left.generators + right.generators)

    @staticmethod
    def nat_is_subset(left: NatIdeal, right: NatIdeal) -> bool:
        """I <= J iff every generator of I lies in J"""
        return all(right.contains(g) for g in left.generators)

    @staticmethod
    def nat_subtractive_closure(ideal: NatIdeal) -> NatIdeal:
        """C_sub(I) = dN where d = gcd of the generators.

        Adding any large multiple x of d to r lands beyond the bound, where
        membership is divisibility by d, so r + x is in I exactly when d | r.
        """
        if ideal.period == 0:
            return _ZERO_IDEAL
        return NatIdealService.nat_ideal([ideal.period])

    @staticmethod
    def nat_is_subtractive(ideal: NatIdeal) -> NatVerdict:
        """Subtractive iff I = dN; otherwise a witness (x, y) with x, x + y in I and y not in I"""
        if NatIdealService.nat_subtractive_closure(ideal) == ideal:
            return NatVerdict(holds=True)
        d = ideal.period
        y = next(m for m in range(0, ideal.bound, d) if not ideal.contains(m))
        x = next(m for m in range(ideal.bound + d + 1) if ideal.contains(m) and ideal.contains(m + y))
        return NatVerdict(holds=False, witness=(x, y))

    @staticmethod
    def nat_radical(ideal: NatIdeal) -> NatIdeal:
        """{r | r^k in I for some k >= 1}"""
        if ideal.period == 0:
            return _ZERO_IDEAL
        radical_base = 1
        for p in primefactors(ideal.period):
            radical_base *= p
        if radical_base > 1:
            return NatIdealService.nat_ideal([radical_base])
        if ideal.contains(1):
            return NatIdealService.nat_ideal([1])
        return NatIdealService.nat_ideal([2, 3])

    @staticmethod
    def oracle_mismatch(ideal: NatIdeal, limit: Optional[int] = None) -> Optional[int]:
        """First m <= limit where the representation disagrees with the DP oracle"""
        if limit is None:
            limit = settings.NAT_ORACLE_FACTOR * ideal.bound
        reach = combination_oracle(ideal.generators, limit + 1)
        for m in range(limit + 1):
            if ideal.contains(m) != reach[m]:
                return m
        return None

    @staticmethod
    def render_nat(ideal: NatIdeal) -> str:
        gens = ",".join(str(g) for g in ideal.generators)
        if ideal.period == 0:
            return f"<{gens}> = {{0}}"
        d = ideal.period
        c = _conductor(ideal)
        shown = [m for m in range(c + 2 * d + 1) if ideal.contains(m)]
        gaps = [m for m in range(0, c, d) if not ideal.contains(m)]
        members = ",".join(str(m) for m in shown)
        missing = "{" + ",".join(str(m) for m in gaps) + "}"
        if d == 1:
            suffix = "all of N" if not gaps else f"cofinite, missing {missing}"
        elif not gaps:
            suffix = f"multiples of {d}"
        else:
            suffix = f"eventually multiples of {d}, missing {missing}"
        return f"<{gens}> = {{{members},...}} ({suffix})"

    @staticmethod
    def parse_generators(text: str) -> NatIdeal:
        """'2,3' -> <2,3>; empty text is the zero ideal"""
        text = text.strip()
        if not text:
            return _ZERO_IDEAL
        try:
            values = [int(part) for part in text.split(",") if part.strip()]
        except ValueError:
            raise InvalidParam(f"generator list must be comma-separated naturals, got '{text}'")
        return NatIdealService.nat_ideal(values)


def nat_family() -> List[Tuple[str, NatIdeal]]:
    """Fixed family used by the closure-law checks on N"""
    build = NatIdealService.nat_ideal
    return [
        ("<2>", build([2])),
        ("<3>", build([3])),
        ("<2,3>", build([2, 3])),
        ("<4,6>", build([4, 6])),
        ("{0}", _ZERO_IDEAL),
    ]
