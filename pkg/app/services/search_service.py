import itertools
from typing import Iterator, List, Optional, Sequence, Tuple
from app.config.settings import settings
from app.core.exceptions import AxiomViolation, InvalidParam
from app.core.logger import get_logger, log_execution_time, log_method_calls
from app.models.schemas import Corpus, FiniteSemiring
from app.services.semiring_service import SemiringService

logger = get_logger(__name__)

Table = List[List[int]]
TableForm = Tuple[Tuple[int, ...], ...]
CanonicalForm = Tuple[TableForm, TableForm]

UNSET = -1
_LABELS = "01abcdefghijklmnopqrstuvwxyz"

CORPUS_BUILTINS = (
    ("boolean",),
    ("zmod", 2),
    ("zmod", 4),
    ("truncated_nat", 2),
    ("truncated_nat", 3),
    ("chain_minplus", 4),
)


def _associative_so_far(table: Table, n: int) -> bool:
    for x in range(n):
        row = table[x]
        for y in range(n):
            xy = row[y]
            if xy == UNSET:
                continue
            for z in range(n):
                yz = table[y][z]
                if yz == UNSET:
                    continue
                left, right = table[xy][z], row[yz]
                if left != UNSET and right != UNSET and left != right:
                    return False
    return True


def _distributive_so_far(add: Table, mul: Table, n: int) -> bool:
    for x in range(n):
        row = mul[x]
        for y in range(n):
            xy = row[y]
            if xy == UNSET:
                continue
            for z in range(n):
                xz, lhs = row[z], row[add[y][z]]
                if xz != UNSET and lhs != UNSET and lhs != add[xy][xz]:
                    return False
    return True


def _fill(table: Table, cells: Sequence[Tuple[int, int]], n: int, check) -> Iterator[Table]:
    """Backtrack over symmetric cells, pruning with a partial axiom check"""
    if not cells:
        yield [row[:] for row in table]
        return
    (i, j), rest = cells[0], cells[1:]
    for value in range(n):
        table[i][j] = table[j][i] = value
        if check(table):
            yield from _fill(table, rest, n, check)
    table[i][j] = table[j][i] = UNSET


def _additive_monoids(n: int) -> Iterator[Table]:
    table = [[UNSET] * n for _ in range(n)]
    for x in range(n):
        table[0][x] = table[x][0] = x
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    if _associative_so_far(table, n):
        yield from _fill(table, cells, n, lambda t: _associative_so_far(t, n))


def _multiplications(add: Table, n: int) -> Iterator[Table]:
    table = [[UNSET] * n for _ in range(n)]
    for x in range(n):
        table[0][x] = table[x][0] = 0
        table[1][x] = table[x][1] = x
    cells = [(i, j) for i in range(2, n) for j in range(i, n)]

    def check(t: Table) -> bool:
        return _associative_so_far(t, n) and _distributive_so_far(add, t, n)

    if check(table):
        yield from _fill(table, cells, n, check)


def _freeze(table: Sequence[Sequence[int]]) -> TableForm:
    return tuple(tuple(row) for row in table)


def _relabel(table: Sequence[Sequence[int]], perm: Sequence[int]) -> TableForm:
    n = len(perm)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = perm[table[i][j]]
    return _freeze(out)


class SearchService:
    """Exhaustive small-semiring search with isomorphism rejection"""

    @staticmethod
    def canonical_form(semiring: FiniteSemiring) -> CanonicalForm:
        """Lexicographically least (add, mul) pair over relabelings sending 0 -> 0 and 1 -> 1"""
        n = semiring.order
        if n == 1:
            return _freeze(semiring.add), _freeze(semiring.mul)
        others = [x for x in range(n) if x not in (semiring.zero, semiring.one)]
        best = None
        for arrangement in itertools.permutations(range(2, n)):
            perm = [0] * n
            perm[semiring.zero], perm[semiring.one] = 0, 1
            for x, image in zip(others, arrangement):
                perm[x] = image
            form = (_relabel(semiring.add, perm), _relabel(semiring.mul, perm))
            if best is None or form < best:
                best = form
        return best

    @staticmethod
    def are_isomorphic(left: FiniteSemiring, right: FiniteSemiring) -> bool:
        return left.order == right.order and SearchService.canonical_form(left) == SearchService.canonical_form(right)

    @staticmethod
    def from_form(name: str, form: CanonicalForm) -> FiniteSemiring:
        n = len(form[0])
        one = 0 if n == 1 else 1
        return SemiringService.validate_semiring(name, list(_LABELS[:n]), form[0], form[1], 0, one)

    @staticmethod
    @log_execution_time()
    @log_method_calls()
    def search_semirings(order: int,
                         canonical: bool = True,
                         limit: Optional[int] = None,
                         max_order: Optional[int] = None) -> Corpus:
        """Every commutative semiring on `order` labeled elements with zero = 0 and one = 1"""
        max_order = settings.SEARCH_MAX_ORDER if max_order is None else max_order
        if order < 1 or order > max_order:
            raise InvalidParam(f"exhaustive search supports orders 1..{max_order}, got {order}")

        if order == 1:
            forms = [(((0,),), ((0,),))]
        else:
            forms = []
            for add in _additive_monoids(order):
                for mul in _multiplications(add, order):
                    forms.append((_freeze(add), _freeze(mul)))

        if canonical:
            seen = set()
            unique = []
            for form in forms:
                probe = SearchService.from_form("probe", form)
                key = SearchService.canonical_form(probe)
                if key not in seen:
                    seen.add(key)
                    unique.append(key)
            forms = sorted(unique)

        structures = []
        limit_reached = False
        for k, form in enumerate(forms, 1):
            if limit is not None and len(structures) >= limit:
                limit_reached = True
                break
            # every emitted structure is re-validated in full
            structures.append(SearchService.from_form(f"G{order}-{k:02d}", form))

        if limit_reached:
            logger.warning(f"Search at order {order} stopped at limit {limit}; corpus is partial")
        logger.info(f"Search at order {order} (canonical={canonical}) produced {len(structures)} semirings")
        return Corpus(
            structures=structures,
            max_order=order,
            canonical=canonical,
            limit=limit,
            limit_reached=limit_reached,
        )

    @staticmethod
    @log_method_calls()
    def build_corpus(max_order: int,
                     canonical: bool = True,
                     include_builtins: bool = True,
                     limit: Optional[int] = None) -> Corpus:
        """Built-in seeds followed by exhaustive search at orders 1..max_order.

        Generated structures isomorphic to an earlier entry are dropped.
        """
        structures: List[FiniteSemiring] = []
        seen = set()
        if include_builtins:
            for family, *params in CORPUS_BUILTINS:
                semiring = SemiringService.builtin(family, *params)
                seen.add(SearchService.canonical_form(semiring))
                structures.append(semiring)

        limit_reached = False
        for order in range(1, max_order + 1):
            found = SearchService.search_semirings(order, canonical=canonical, limit=limit)
            limit_reached = limit_reached or found.limit_reached
            for semiring in found.structures:
                key = SearchService.canonical_form(semiring)
                if canonical and key in seen:
                    continue
                seen.add(key)
                structures.append(semiring)

        return Corpus(
            structures=structures,
            max_order=max_order,
            canonical=canonical,
            limit=limit,
            limit_reached=limit_reached,
        )


def brute_force_forms(order: int) -> List[CanonicalForm]:
    """Oracle: filter every table pair with zero = 0 and one = 1, deduplicated up to isomorphism"""
    n = order
    one = 0 if n == 1 else 1
    cells = n * n
    found = set()
    for add_flat in itertools.product(range(n), repeat=cells):
        add = [list(add_flat[i * n:(i + 1) * n]) for i in range(n)]
        for mul_flat in itertools.product(range(n), repeat=cells):
            mul = [list(mul_flat[i * n:(i + 1) * n]) for i in range(n)]
            try:
                semiring = SemiringService.validate_semiring("probe", list(_LABELS[:n]), add, mul, 0, one)
            except AxiomViolation:
                continue
            found.add(SearchService.canonical_form(semiring))
    return sorted(found)
