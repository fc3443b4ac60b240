from enum import Enum
from typing import Dict, List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field
from app.core.bitset import full_mask, is_subset, iter_bits


class Violation(BaseModel):
    """One violated semiring axiom with its first witness (element indices)"""
    model_config = ConfigDict(frozen=True)

    axiom: str
    witness: Tuple[int, ...]


class FiniteSemiring(BaseModel):
    """Finite commutative semiring given by Cayley tables over dense indices 0..n-1"""
    model_config = ConfigDict(frozen=True)

    name: str
    elements: Tuple[str, ...]
    add: Tuple[Tuple[int, ...], ...]
    mul: Tuple[Tuple[int, ...], ...]
    zero: int
    one: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return full_mask(self.order)

    def times(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def label(self, x: int) -> str:
        return self.elements[x]

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def render_set(self, mask: int) -> str:
        return "{" + ",".join(self.elements[i] for i in iter_bits(mask)) + "}"


class Homomorphism(BaseModel):
    """Semiring homomorphism source -> target; map[x] is the image of x"""
    model_config = ConfigDict(frozen=True)

    source: FiniteSemiring
    target: FiniteSemiring
    map: Tuple[int, ...]
    surjective: bool

    def preimage_mask(self, target_mask: int) -> int:
        mask = 0
        for x, y in enumerate(self.map):
            if target_mask >> y & 1:
                mask |= 1 << x
        return mask

    def image_mask(self, source_mask: int) -> int:
        mask = 0
        for x in iter_bits(source_mask):
            mask |= 1 << self.map[x]
        return mask

    def render(self) -> str:
        pairs = ",".join(
            f"{self.source.label(x)}->{self.target.label(y)}" for x, y in enumerate(self.map)
        )
        return f"{self.source.name}=>{self.target.name}[{pairs}]"


class Ideal(BaseModel):
    """Ideal of a finite semiring stored as a bitmask of element indices"""
    model_config = ConfigDict(frozen=True)

    parent: FiniteSemiring
    members: int

    def contains(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def elements(self) -> List[int]:
        return list(iter_bits(self.members))

    @property
    def is_proper(self) -> bool:
        return self.members != self.parent.full_mask

    def issubset(self, other: "Ideal") -> bool:
        return is_subset(self.members, other.members)

    def render(self) -> str:
        return self.parent.render_set(self.members)


class IdealLattice(BaseModel):
    """All ideals of a semiring, ordered by (popcount, bitmask)"""
    model_config = ConfigDict(frozen=True)

    semiring: FiniteSemiring
    all_ideals: Tuple[Ideal, ...]
    masks: Tuple[int, ...]
    subtractive_mask: Tuple[bool, ...]
    closure_index: Tuple[int, ...] = Field(
        ..., description="closure_index[i] is the index of C_sub(all_ideals[i])"
    )

    def __len__(self) -> int:
        return len(self.masks)

    def index_of(self, mask: int) -> int:
        return self.masks.index(mask)

    def subtractive_indices(self) -> List[int]:
        return [i for i, flag in enumerate(self.subtractive_mask) if flag]

    def subtractive_points(self) -> int:
        mask = 0
        for i in self.subtractive_indices():
            mask |= 1 << i
        return mask


class Semantics(str, Enum):
    DOWN_SET = "downset"
    FIXED_POINT = "fixedpoint"


class SubtractiveSpace(BaseModel):
    """Idl(S) with the topology generated by the subbasic closed sets of a semantics.

    Point sets are bitmasks over lattice indices.
    """
    model_config = ConfigDict(frozen=True)

    points: IdealLattice
    semantics: Semantics
    subbasis: Tuple[int, ...]
    cap: int
    closed_family: Optional[Tuple[int, ...]] = None

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return full_mask(self.n_points)

    def render_points(self, mask: int) -> str:
        return "{" + ",".join(f"P{p}" for p in iter_bits(mask)) + "}"


class ClosedSet(BaseModel):
    members: int
    irreducible: Optional[bool] = None
    generic_points: Optional[Tuple[int, ...]] = None


class Verdict(BaseModel):
    """Outcome of one decidable property with a rendered witness on failure"""
    holds: bool
    witness: Optional[str] = None


class T1Verdict(Verdict):
    extensions: Dict[int, bool] = Field(default_factory=dict)


class InducedMap(BaseModel):
    """phi_!: Idl(S') -> Idl(S), J -> phi^-1(J), as point indices"""
    homomorphism: Homomorphism
    semantics: Semantics
    mapping: Tuple[int, ...]
    continuous: bool
    subbasic_continuous: bool
    witness: Optional[str] = None


class HomeomorphismVerdict(BaseModel):
    injective: bool
    surjective: bool
    continuous: bool
    closed: bool
    witnesses: Dict[str, str] = Field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.injective and self.surjective and self.continuous and self.closed


class NatIdeal(BaseModel):
    """Finitely generated ideal of (N, +, *) in eventually-periodic form.

    Membership below ``bound`` is read from ``window``; from ``bound`` on,
    m is a member iff ``period`` divides m (period 0 means the zero ideal).
    """
    model_config = ConfigDict(frozen=True)

    generators: Tuple[int, ...]
    bound: int
    window: int
    period: int

    def contains(self, m: int) -> bool:
        if m < 0:
            return False
        if m < self.bound:
            return bool(self.window >> m & 1)
        return self.period > 0 and m % self.period == 0


class NatVerdict(BaseModel):
    holds: bool
    witness: Optional[Tuple[int, int]] = None


class ClaimScope(str, Enum):
    PER_IDEAL = "per-ideal"
    PER_PAIR = "per-pair"
    PER_SPACE = "per-space"
    PER_HOMOMORPHISM = "per-homomorphism"


class Backend(str, Enum):
    FINITE = "finite"
    NAT = "nat"


class ClaimResult(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    CAP_EXCEEDED = "cap-exceeded"


class Claim(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    description: str
    section: str
    quote: str
    scope: ClaimScope
    semantics_dependent: bool = False
    must_hold: bool = True
    backends: Tuple[Backend, ...] = (Backend.FINITE,)
    cross_check: bool = False


class HomomorphismPair(BaseModel):
    """Subject of per-homomorphism claims: every homomorphism source -> target"""
    model_config = ConfigDict(frozen=True)

    source: FiniteSemiring
    target: FiniteSemiring

    @property
    def name(self) -> str:
        return f"{self.source.name}=>{self.target.name}"


class NatBackend(BaseModel):
    """Subject of the claims evaluated on the semiring of natural numbers"""
    model_config = ConfigDict(frozen=True)

    name: str = "N"


class ClaimReport(BaseModel):
    claim_id: str
    structure: str
    semantics: Optional[Semantics] = None
    result: ClaimResult
    witness: Optional[str] = None
    elapsed: float = 0.0
    corpus_index: int = 0
    sub_index: int = 0


class Corpus(BaseModel):
    structures: List[FiniteSemiring] = Field(default_factory=list)
    max_order: int = 0
    canonical: bool = True
    limit: Optional[int] = None
    limit_reached: bool = False


class ReportSummary(BaseModel):
    total: int = 0
    holds: int = 0
    fails: int = 0
    cap_exceeded: int = 0
    must_hold_failures: int = 0


class Report(BaseModel):
    reports: List[ClaimReport] = Field(default_factory=list)
    summary: ReportSummary = Field(default_factory=ReportSummary)
    exit_code: int = 0


class SemiringRequest(BaseModel):
    """Request carrying a semiring in the line-oriented file format"""
    text: str = Field(..., description="Semiring file contents")


class IdealsRequest(SemiringRequest):
    subtractive_only: bool = False


class ClosureRequest(SemiringRequest):
    ideal: List[str] = Field(..., description="Element labels of the ideal")


class TopologyRequest(SemiringRequest):
    semantics: Semantics = Semantics.DOWN_SET
    max_closed: Optional[int] = None


class CheckRequest(BaseModel):
    texts: List[str] = Field(default_factory=list)
    claims: Optional[List[str]] = None
    semantics: str = "both"
    include_nat: bool = False


class ErrorResponse(BaseModel):
    """Error response model"""
    error: str
    message: str
    status_code: int = 400
