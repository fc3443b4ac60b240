from typing import Iterable, List, Sequence
from app.core.logger import get_logger
from app.models.schemas import ClaimReport, ClaimResult, Report, ReportSummary
from app.services.claim_registry import get_claim

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_MUST_HOLD_FAILURE = 1
EXIT_CAP_STRICT = 3

_RESULT_TOKENS = {
    ClaimResult.HOLDS: "holds",
    ClaimResult.FAILS: "fails",
    ClaimResult.CAP_EXCEEDED: "cap",
}


class ReportService:
    """Line rendering, summary counts and the exit-code policy for claim reports"""

    @staticmethod
    def format_line(report: ClaimReport) -> str:
        semantics = report.semantics.value if report.semantics is not None else "na"
        line = (f"CLAIM {report.claim_id} STRUCT {report.structure} SEM {semantics} "
                f"RESULT {_RESULT_TOKENS[report.result]}")
        if report.witness:
            line += f" WITNESS {' '.join(report.witness.split())}"
        return line

    @staticmethod
    def summarize(reports: Sequence[ClaimReport]) -> ReportSummary:
        summary = ReportSummary(total=len(reports))
        for report in reports:
            if report.result == ClaimResult.HOLDS:
                summary.holds += 1
            elif report.result == ClaimResult.FAILS:
                summary.fails += 1
                if get_claim(report.claim_id).must_hold:
                    summary.must_hold_failures += 1
            else:
                summary.cap_exceeded += 1
        return summary

    @staticmethod
    def exit_code(summary: ReportSummary, strict: bool = False) -> int:
        """Must-hold failures outrank caps; caps only count under strict"""
        if summary.must_hold_failures:
            return EXIT_MUST_HOLD_FAILURE
        if strict and summary.cap_exceeded:
            return EXIT_CAP_STRICT
        return EXIT_OK

    @staticmethod
    def build_report(reports: Iterable[ClaimReport], strict: bool = False) -> Report:
        reports = list(reports)
        summary = ReportService.summarize(reports)
        code = ReportService.exit_code(summary, strict)
        if summary.must_hold_failures:
            logger.error(f"{summary.must_hold_failures} must-hold claim report(s) failed")
        return Report(reports=reports, summary=summary, exit_code=code)

    @staticmethod
    def render_summary(summary: ReportSummary) -> str:
        return (f"SUMMARY total={summary.total} holds={summary.holds} fails={summary.fails} "
                f"cap={summary.cap_exceeded} must-hold-failures={summary.must_hold_failures}")

    @staticmethod
    def render(report: Report) -> List[str]:
        lines = [ReportService.format_line(r) for r in report.reports]
        lines.append(ReportService.render_summary(report.summary))
        return lines
