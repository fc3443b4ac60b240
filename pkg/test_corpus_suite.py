"""Full claim suite over the order-3 corpus (six built-ins plus every canonical semiring up to order 3)"""

from collections import defaultdict
import pytest
from app.models.schemas import ClaimResult, HomomorphismPair, NatBackend, Semantics
from app.services.claim_registry import get_claim
from app.services.report_service import ReportService
from app.services.search_service import SearchService
from app.services.semiring_service import SemiringService
from app.services.verification_service import VerificationService

ALWAYS_HOLD = {f"C1.{k}" for k in range(1, 10)} | {"C2", "C4", "C13", "X1", "X2", "X3", "X4", "X5"}


@pytest.fixture(scope="module")
def corpus():
    return SearchService.build_corpus(3)


@pytest.fixture(scope="module")
def suite(corpus):
    return VerificationService.run_suite(corpus, include_nat=True)


def by_claim(report, claim_id):
    return [r for r in report.reports if r.claim_id == claim_id]


def subject_of(corpus, report):
    structures = corpus.structures
    if report.corpus_index == len(structures):
        return NatBackend()
    source = structures[report.corpus_index]
    if report.sub_index:
        return HomomorphismPair(source=source, target=structures[report.sub_index - 1])
    return source


def test_corpus_has_no_must_hold_failures(suite):
    assert suite.summary.must_hold_failures == 0
    assert suite.summary.cap_exceeded == 0
    assert suite.exit_code == 0


def test_closure_and_lattice_laws_hold_everywhere(suite):
    for report in suite.reports:
        if report.claim_id in ALWAYS_HOLD:
            assert report.result == ClaimResult.HOLDS, ReportService.format_line(report)


def test_subbasis_closure_agrees_on_every_space(corpus, suite):
    checked = {(r.structure, r.semantics) for r in by_claim(suite, "X3")}
    expected = {(s.name, sem) for s in corpus.structures for sem in Semantics}
    assert checked == expected
    assert all(r.result == ClaimResult.HOLDS for r in by_claim(suite, "X3"))


def test_preimages_subtractive_for_every_homomorphism_pair(corpus, suite):
    pairs = {
        f"{s.name}=>{t.name}"
        for s in corpus.structures for t in corpus.structures
        if SemiringService.enumerate_homomorphisms(s, t)
    }
    assert {r.structure for r in by_claim(suite, "C13")} == pairs
    assert {r.structure for r in by_claim(suite, "C14")} == pairs


def test_continuity_of_induced_map_refuted_only_into_g3_03(suite):
    failures = [r for r in by_claim(suite, "C14") if r.result == ClaimResult.FAILS]
    assert len(failures) == 16
    assert {r.structure.split("=>")[1] for r in failures} == {"G3-03"}
    per_semantics = defaultdict(set)
    for r in failures:
        per_semantics[r.semantics].add(r.structure)
    assert per_semantics[Semantics.DOWN_SET] == per_semantics[Semantics.FIXED_POINT]
    assert "B=>G3-03" in per_semantics[Semantics.DOWN_SET]


def test_every_failure_reproduces_on_its_own(corpus, suite):
    failures = [r for r in suite.reports if r.result == ClaimResult.FAILS]
    assert failures
    for report in failures:
        again = VerificationService.run_claim(get_claim(report.claim_id), subject_of(corpus, report), report.semantics)
        assert (again.result, again.witness) == (report.result, report.witness)
