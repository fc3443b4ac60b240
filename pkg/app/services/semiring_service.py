import itertools
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from app.core.exceptions import AxiomViolation, InvalidParam, ParseError, ShapeError, UnknownFamily
from app.core.logger import get_logger, log_execution_time, log_method_calls
from app.models.schemas import FiniteSemiring, Homomorphism, Violation

logger = get_logger(__name__)

AXIOMS = (
    "add-commutativity",
    "add-associativity",
    "add-identity",
    "mul-commutativity",
    "mul-associativity",
    "mul-identity",
    "absorption",
    "distributivity",
)

_DIRECTIVES = ("semiring", "elements", "zero", "one", "add", "mul")


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def find_violations(add: np.ndarray, mul: np.ndarray, zero: int, one: int) -> List[Violation]:
    """Check every axiom family over all pairs/triples; one witness per violated family."""
    n = add.shape[0]
    arange = np.arange(n)
    checks = {
        "add-commutativity": add != add.T,
        "add-associativity": add[add] != add[:, add],
        "add-identity": (add[zero, :] != arange) | (add[:, zero] != arange),
        "mul-commutativity": mul != mul.T,
        "mul-associativity": mul[mul] != mul[:, mul],
        "mul-identity": (mul[one, :] != arange) | (mul[:, one] != arange),
        "absorption": (mul[zero, :] != zero) | (mul[:, zero] != zero),
        # x*(y+z) against x*y + x*z, indexed [x, y, z]
        "distributivity": mul[:, add] != add[mul[:, :, None], mul[:, None, :]],
    }
    violations = []
    for axiom in AXIOMS:
        witness = _first(checks[axiom])
        if witness is not None:
            violations.append(Violation(axiom=axiom, witness=witness))
    return violations


def _check_shape(name: str, elements: Sequence[str], add, mul, zero: int, one: int) -> int:
    n = len(elements)
    if n < 1:
        raise ShapeError("a semiring needs at least one element")
    if not name or any(ch.isspace() for ch in name):
        raise ShapeError(f"invalid semiring name {name!r}")
    if len(set(elements)) != n:
        raise ShapeError("element labels must be distinct")
    for label in elements:
        if not label or any(ch.isspace() for ch in label) or "#" in label:
            raise ShapeError(f"invalid element label {label!r}")
    for table_name, table in (("add", add), ("mul", mul)):
        if len(table) != n:
            raise ShapeError(f"{table_name} table has {len(table)} rows, expected {n}")
        for i, row in enumerate(table):
            if len(row) != n:
                raise ShapeError(f"{table_name} row {i} has {len(row)} entries, expected {n}")
            for value in row:
                if not isinstance(value, (int, np.integer)) or not 0 <= value < n:
                    raise ShapeError(f"{table_name} row {i} holds out-of-range entry {value!r}")
    for role, index in (("zero", zero), ("one", one)):
        if not 0 <= index < n:
            raise ShapeError(f"{role} index {index} out of range")
    return n


def _tokenize(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((lineno, content.split()))
    return lines


class SemiringService:
    """Validation, parsing, rendering, built-in families and homomorphisms"""

    @staticmethod
    @log_method_calls()
    def validate_semiring(name: str,
                          elements: Sequence[str],
                          add: Sequence[Sequence[int]],
                          mul: Sequence[Sequence[int]],
                          zero: int,
                          one: int) -> FiniteSemiring:
        """Validate raw tables and return the immutable semiring.

        Raises ShapeError for malformed input and AxiomViolation listing every
        violated axiom family.
        """
        _check_shape(name, elements, add, mul, zero, one)
        add_array = np.asarray(add, dtype=np.intp)
        mul_array = np.asarray(mul, dtype=np.intp)
        violations = find_violations(add_array, mul_array, zero, one)
        if violations:
            logger.info(f"Semiring '{name}' rejected: {[v.axiom for v in violations]}")
            raise AxiomViolation(violations)

        return FiniteSemiring(
            name=name,
            elements=tuple(elements),
            add=tuple(tuple(int(v) for v in row) for row in add),
            mul=tuple(tuple(int(v) for v in row) for row in mul),
            zero=int(zero),
            one=int(one),
        )

    @staticmethod
    @log_method_calls()
    def parse_semiring(text: str) -> FiniteSemiring:
        """Parse the line-oriented semiring file format"""
        lines = _tokenize(text)
        found: Dict[str, Tuple[int, object]] = {}
        labels: Optional[List[str]] = None
        pos = 0

        while pos < len(lines):
            lineno, tokens = lines[pos]
            key = tokens[0]
            if key not in _DIRECTIVES:
                raise ParseError(f"unknown directive '{key}'", lineno)
            if key in found:
                raise ParseError(f"duplicate '{key}' directive", lineno)

            if key == "semiring":
                if len(tokens) != 2:
                    raise ParseError("expected 'semiring <name>'", lineno)
                found[key] = (lineno, tokens[1])
            elif key == "elements":
                if len(tokens) < 2:
                    raise ParseError("expected at least one element label", lineno)
                if len(set(tokens[1:])) != len(tokens) - 1:
                    raise ParseError("duplicate element label", lineno)
                labels = tokens[1:]
                found[key] = (lineno, labels)
            elif key in ("zero", "one"):
                if len(tokens) != 2:
                    raise ParseError(f"expected '{key} <label>'", lineno)
                found[key] = (lineno, tokens[1])
            else:
                if labels is None:
                    raise ParseError(f"'{key}' table before 'elements'", lineno)
                if len(tokens) != 1:
                    raise ParseError(f"'{key}' must stand alone on its line", lineno)
                rows = []
                for offset in range(1, len(labels) + 1):
                    if pos + offset >= len(lines):
                        last = lines[-1][0] + 1
                        raise ParseError(f"'{key}' table has {offset - 1} rows, expected {len(labels)}", last)
                    row_lineno, row = lines[pos + offset]
                    if len(row) != len(labels):
                        raise ParseError(f"row has {len(row)} entries, expected {len(labels)}", row_lineno)
                    try:
                        rows.append([labels.index(label) for label in row])
                    except ValueError:
                        unknown = next(label for label in row if label not in labels)
                        raise ParseError(f"unknown element label '{unknown}'", row_lineno)
                found[key] = (lineno, rows)
                pos += len(labels)
            pos += 1

        end = (lines[-1][0] + 1) if lines else 1
        for key in _DIRECTIVES:
            if key not in found:
                raise ParseError(f"missing '{key}' directive", end)

        indices = {}
        for role in ("zero", "one"):
            role_line, label = found[role]
            if label not in labels:
                raise ParseError(f"unknown element label '{label}'", role_line)
            indices[role] = labels.index(label)

        return SemiringService.validate_semiring(
            found["semiring"][1], labels, found["add"][1], found["mul"][1],
            indices["zero"], indices["one"],
        )

    @staticmethod
    def render_semiring(semiring: FiniteSemiring) -> str:
        """Render in the documented file format (inverse of parse_semiring)"""
        lines = [
            f"semiring {semiring.name}",
            "elements " + " ".join(semiring.elements),
            f"zero {semiring.label(semiring.zero)}",
            f"one {semiring.label(semiring.one)}",
            "add",
        ]
        lines += [" ".join(semiring.label(v) for v in row) for row in semiring.add]
        lines.append("mul")
        lines += [" ".join(semiring.label(v) for v in row) for row in semiring.mul]
        return "\n".join(lines) + "\n"

    @staticmethod
    @log_method_calls()
    def builtin(family: str, *params: int) -> FiniteSemiring:
        """Named test-corpus seeds: boolean, truncated_nat(k), zmod(n), chain_minplus(k)"""
        family = family.strip().lower()
        builders = {
            "boolean": (0, _boolean),
            "truncated_nat": (1, _truncated_nat),
            "zmod": (1, _zmod),
            "chain_minplus": (1, _chain_minplus),
        }
        if family not in builders:
            raise UnknownFamily(f"unknown semiring family '{family}'")
        arity, build = builders[family]
        if len(params) != arity:
            raise InvalidParam(f"{family} takes {arity} parameter(s), got {len(params)}")
        for value in params:
            if not isinstance(value, int) or value < 1:
                raise InvalidParam(f"{family} parameter must be a positive integer, got {value!r}")
        return build(*params)

    @staticmethod
    @log_execution_time()
    def enumerate_homomorphisms(source: FiniteSemiring, target: FiniteSemiring) -> List[Homomorphism]:
        """All maps preserving +, *, 0 and 1, in lexicographic order of the map array"""
        fixed = {source.zero: target.zero}
        if source.one in fixed and fixed[source.one] != target.one:
            logger.debug(f"No homomorphism {source.name}=>{target.name}: 0 = 1 in source only")
            return []
        fixed[source.one] = target.one

        free = [x for x in range(source.order) if x not in fixed]
        found = []
        candidate = [0] * source.order
        for x, y in fixed.items():
            candidate[x] = y

        for values in itertools.product(range(target.order), repeat=len(free)):
            for x, y in zip(free, values):
                candidate[x] = y
            if homomorphism_violation(source, target, candidate) is None:
                image = set(candidate)
                found.append(Homomorphism(
                    source=source,
                    target=target,
                    map=tuple(candidate),
                    surjective=len(image) == target.order,
                ))

        logger.info(f"Found {len(found)} homomorphisms {source.name}=>{target.name}")
        return found

    @staticmethod
    def kernel(phi: Homomorphism) -> int:
        """Preimage of the target zero, as a source element mask"""
        return phi.preimage_mask(1 << phi.target.zero)


def homomorphism_violation(source: FiniteSemiring,
                           target: FiniteSemiring,
                           candidate: Sequence[int]) -> Optional[str]:
    """Name the first violated homomorphism equation, or None"""
    if candidate[source.one] != target.one:
        return "one"
    if candidate[source.zero] != target.zero:
        return "zero"
    for x in range(source.order):
        fx = candidate[x]
        for y in range(x, source.order):
            fy = candidate[y]
            if candidate[source.add[x][y]] != target.add[fx][fy]:
                return f"add({source.label(x)},{source.label(y)})"
            if candidate[source.mul[x][y]] != target.mul[fx][fy]:
                return f"mul({source.label(x)},{source.label(y)})"
    return None


def _boolean() -> FiniteSemiring:
    return SemiringService.validate_semiring(
        "B", ["0", "1"], [[0, 1], [1, 1]], [[0, 0], [0, 1]], 0, 1,
    )


def _truncated_nat(k: int) -> FiniteSemiring:
    # values 0..k-1 keep their index, every value >= k collapses to T = k
    labels = [str(v) for v in range(k)] + ["T"]
    size = k + 1
    add = [[min(i + j, k) for j in range(size)] for i in range(size)]
    mul = [[min(i * j, k) for j in range(size)] for i in range(size)]
    return SemiringService.validate_semiring(f"S{size}", labels, add, mul, 0, 1)


def _zmod(n: int) -> FiniteSemiring:
    labels = [str(v) for v in range(n)]
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    mul = [[(i * j) % n for j in range(n)] for i in range(n)]
    return SemiringService.validate_semiring(f"Z{n}", labels, add, mul, 0, 1 % n)


def _chain_minplus(k: int) -> FiniteSemiring:
    # tropical (min, +) on {0..k-2} with every value >= k-1 collapsed into inf;
    # index 0 is inf (the zero), index v+1 holds value v
    top = k - 1
    labels = ["inf"] + [str(v) for v in range(top)]

    def value(i: int) -> int:
        return top if i == 0 else i - 1

    def index(v: int) -> int:
        return 0 if v >= top else v + 1

    add = [[index(min(value(i), value(j))) for j in range(k)] for i in range(k)]
    mul = [[index(value(i) + value(j)) for j in range(k)] for i in range(k)]
    return SemiringService.validate_semiring(f"MinPlus{k}", labels, add, mul, 0, index(0))
