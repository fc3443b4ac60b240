"""Registry of every checked statement.

``STATED_CLAIMS`` covers the statements about subtractive ideals and subtractive
spaces; ``CROSS_CHECKS`` are internal agreements between independent
implementations. Registry order is report order.
"""

from typing import Dict, Iterable, List, Optional
from app.core.exceptions import InvalidParam
from app.models.schemas import Backend, Claim, ClaimScope

FINITE = (Backend.FINITE,)
BOTH_BACKENDS = (Backend.FINITE, Backend.NAT)

STATED_CLAIMS: List[Claim] = [
    Claim(id="C1.1", description="I is contained in C_sub(I)",
          section="closure operator, property (1)", quote="I ⊆ C(I)",
          scope=ClaimScope.PER_IDEAL, backends=BOTH_BACKENDS),
    Claim(id="C1.2", description="C_sub of the zero ideal is the zero ideal",
          section="closure operator, property (2)", quote="C(0)=0",
          scope=ClaimScope.PER_IDEAL),
    Claim(id="C1.3", description="C_sub(S) = S",
          section="closure operator, property (3)", quote="C(S)=S",
          scope=ClaimScope.PER_IDEAL),
    Claim(id="C1.4", description="C_sub is idempotent",
          section="closure operator, property (4)", quote="C(C(I))=C(I)",
          scope=ClaimScope.PER_IDEAL, backends=BOTH_BACKENDS),
    Claim(id="C1.5", description="C_sub is monotone",
          section="closure operator, property (5)", quote="I⊆J implies C(I)⊆C(J)",
          scope=ClaimScope.PER_PAIR, backends=BOTH_BACKENDS),
    Claim(id="C1.6", description="C_sub of the join contains the union of the closures",
          section="closure operator, property (6)", quote="C(I∪J)⊇C(I)∪C(J)",
          scope=ClaimScope.PER_PAIR),
    Claim(id="C1.7", description="C_sub commutes with intersections of families",
          section="closure operator, property (7)", quote="C(⋂ I_λ) = ⋂ C(I_λ)",
          scope=ClaimScope.PER_PAIR),
    Claim(id="C1.8", description="C_sub(I) is the smallest subtractive ideal containing I",
          section="closure operator, property (8)", quote="the smallest subtractive ideal containing I",
          scope=ClaimScope.PER_IDEAL),
    Claim(id="C1.9", description="I is subtractive iff I = C_sub(I)",
          section="closure operator, property (9)", quote="subtractive if and only if I=C(I)",
          scope=ClaimScope.PER_IDEAL),
    Claim(id="C2", description="(C_sub, inclusion) is a Galois connection",
          section="preliminaries, Galois connection", quote="forms a Galois connection",
          scope=ClaimScope.PER_PAIR),
    Claim(id="C3", description="product of subtractive ideals is subtractive and inside the intersection",
          section="preliminaries, product of subtractive ideals", quote="their product IJ is also a subtractive ideal",
          scope=ClaimScope.PER_PAIR, must_hold=False),
    Claim(id="C4", description="intersections of subtractive ideals are subtractive",
          section="preliminaries, intersections", quote="is also a subtractive ideal",
          scope=ClaimScope.PER_PAIR),
    Claim(id="C5", description="sum of subtractive ideals of N need not be subtractive",
          section="preliminaries, natural numbers", quote="2N+3N=N∖{1} is not a subtractive ideal of N",
          scope=ClaimScope.PER_PAIR, must_hold=False, backends=(Backend.NAT,)),
    Claim(id="C6", description="Idl_sub(S) is a modular lattice",
          section="preliminaries, modularity", quote="is a modular lattice",
          scope=ClaimScope.PER_SPACE, must_hold=False),
    Claim(id="C7", description="C_sub(I) is contained in C_sub of the radical of I",
          section="preliminaries, radical remark", quote="C(I) ⊆ C(√I) for all I",
          scope=ClaimScope.PER_IDEAL, must_hold=False, backends=BOTH_BACKENDS),
    Claim(id="C8", description="subbasic closed sets are named exactly by the subtractive ideals",
          section="subtractive spaces, subbasic sets", quote="are the subtractive ideals of S",
          scope=ClaimScope.PER_SPACE, semantics_dependent=True, must_hold=False),
    Claim(id="C9", description="every subtractive space is T0",
          section="subtractive spaces, separation", quote="Every subtractive space is T0",
          scope=ClaimScope.PER_SPACE, semantics_dependent=True, must_hold=False),
    Claim(id="C10", description="every nonempty subbasic closed set is irreducible",
          section="subtractive spaces, irreducibility", quote="subbasic closed set of a subtractive space is irreducible",
          scope=ClaimScope.PER_SPACE, semantics_dependent=True, must_hold=False),
    Claim(id="C11", description="Idl_sub(S) is the largest T1-subspace",
          section="subtractive spaces, T1 subspace", quote="largest T1-subspace",
          scope=ClaimScope.PER_SPACE, semantics_dependent=True, must_hold=False),
    Claim(id="C12", description="every nonempty irreducible closed set has a unique generic point",
          section="subtractive spaces, generic points", quote="has a unique generic point",
          scope=ClaimScope.PER_SPACE, semantics_dependent=True, must_hold=False),
    Claim(id="C13", description="preimages of subtractive ideals and kernels are subtractive",
          section="subtractive spaces, preimages", quote="φ⁻¹(J) is a subtractive ideal",
          scope=ClaimScope.PER_HOMOMORPHISM),
    Claim(id="C14", description="phi_! is continuous",
          section="subtractive spaces, induced map", quote="induces a continuous map",
          # refuted on order 3: a non-subtractive target ideal can pull back to a subtractive one
          scope=ClaimScope.PER_HOMOMORPHISM, semantics_dependent=True, must_hold=False),
    Claim(id="C15", description="surjective phi makes Idl_sub(S') and Idl_sub(S) homeomorphic via phi_!",
          section="subtractive spaces, homeomorphism", quote="are homeomorphic",
          scope=ClaimScope.PER_HOMOMORPHISM, semantics_dependent=True, must_hold=False),
]

CROSS_CHECKS: List[Claim] = [
    Claim(id="X1", description="enumerate_ideals equals the power-set filter",
          section="cross-check", quote="", scope=ClaimScope.PER_SPACE, cross_check=True),
    Claim(id="X2", description="fixpoint, definitional and k-ideal subtractivity agree",
          section="cross-check", quote="", scope=ClaimScope.PER_IDEAL, cross_check=True),
    Claim(id="X3", description="subbasis closure equals the least enclosing closed set",
          section="cross-check", quote="", scope=ClaimScope.PER_SPACE,
          semantics_dependent=True, cross_check=True),
    Claim(id="X4", description="subbasic continuity criterion agrees with the full check",
          section="cross-check", quote="", scope=ClaimScope.PER_HOMOMORPHISM,
          semantics_dependent=True, cross_check=True),
    Claim(id="X5", description="a non-subtractive ideal sharing its closure with C_sub(I) forces is_T0 false",
          section="cross-check", quote="", scope=ClaimScope.PER_SPACE,
          semantics_dependent=True, cross_check=True),
]

ALL_CLAIMS: List[Claim] = STATED_CLAIMS + CROSS_CHECKS

_BY_ID: Dict[str, Claim] = {claim.id: claim for claim in ALL_CLAIMS}
_RANK: Dict[str, int] = {claim.id: rank for rank, claim in enumerate(ALL_CLAIMS)}


def get_claim(claim_id: str) -> Claim:
    try:
        return _BY_ID[claim_id]
    except KeyError:
        raise InvalidParam(f"unknown claim id '{claim_id}'")


def claim_rank(claim_id: str) -> int:
    return _RANK[claim_id]


def select_claims(selection: Optional[Iterable[str]]) -> List[Claim]:
    """None or 'all' selects everything; otherwise ids in registry order"""
    if selection is None:
        return list(ALL_CLAIMS)
    ids = [part.strip() for item in selection for part in item.split(",") if part.strip()]
    if not ids or ids == ["all"]:
        return list(ALL_CLAIMS)
    chosen = {get_claim(claim_id).id for claim_id in ids}
    return [claim for claim in ALL_CLAIMS if claim.id in chosen]
