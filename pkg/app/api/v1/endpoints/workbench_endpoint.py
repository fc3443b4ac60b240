from typing import List
from flask import Blueprint, jsonify, request
from pydantic import ValidationError
from app.core.exceptions import CapExceeded, WorkbenchError
from app.core.file_utils import SemiringFileManager
from app.core.logger import get_logger, log_api_request
from app.models.schemas import (
    CheckRequest,
    ClosureRequest,
    Corpus,
    ErrorResponse,
    FiniteSemiring,
    IdealsRequest,
    SemiringRequest,
    TopologyRequest,
)
from app.services.claim_registry import select_claims
from app.services.ideal_service import IdealService
from app.services.report_service import ReportService
from app.services.semiring_service import SemiringService
from app.services.topology_service import TopologyService, describe_point
from app.services.verification_service import VerificationService, parse_semantics

workbench_bp = Blueprint('workbench', __name__)
logger = get_logger(__name__)


def _error(error: str, message: str, status_code: int):
    return jsonify(ErrorResponse(error=error, message=message, status_code=status_code).model_dump()), status_code


def _handle(func):
    """Map workbench and validation errors onto JSON error responses"""
    try:
        return func()
    except ValidationError as e:
        logger.warning(f"Request rejected: {e.error_count()} validation error(s)")
        return _error("invalid-request", str(e), 400)
    except CapExceeded as e:
        logger.warning(f"Request hit a cap: {e.message}")
        return _error(e.code, e.message, 422)
    except WorkbenchError as e:
        logger.warning(f"Request rejected ({e.code}): {e.message}")
        return _error(e.code, e.message, 400)
    except Exception as e:
        logger.error(f"API request failed with error: {str(e)}")
        return _error("internal-error", str(e), 500)


def _semiring_summary(semiring: FiniteSemiring) -> dict:
    return {
        "name": semiring.name,
        "order": semiring.order,
        "elements": list(semiring.elements),
        "zero": semiring.label(semiring.zero),
        "one": semiring.label(semiring.one),
    }


@workbench_bp.route('/health', methods=['GET'])
@log_api_request()
def health_check():
    """Health check endpoint"""
    return jsonify({"status": "healthy", "service": "subtractive-workbench-api"}), 200


@workbench_bp.route('/api/validate', methods=['POST'])
@log_api_request()
def validate():
    """Validate one semiring (JSON body) or several uploaded semiring files"""
    def run():
        if request.files:
            uploads = SemiringFileManager.read_uploaded_files(request.files.getlist('semirings'))
            results = []
            for filename, text in uploads:
                summary = _semiring_summary(SemiringService.parse_semiring(text))
                summary["file"] = filename
                results.append(summary)
            return jsonify({"valid": True, "semirings": results}), 200
        body = SemiringRequest.model_validate(request.get_json(silent=True) or {})
        semiring = SemiringService.parse_semiring(body.text)
        return jsonify({"valid": True, **_semiring_summary(semiring)}), 200
    return _handle(run)


@workbench_bp.route('/api/ideals', methods=['POST'])
@log_api_request()
def ideals():
    def run():
        body = IdealsRequest.model_validate(request.get_json(silent=True) or {})
        semiring = SemiringService.parse_semiring(body.text)
        lattice = IdealService.enumerate_ideals(semiring)
        rows = []
        for i, ideal in enumerate(lattice.all_ideals):
            if body.subtractive_only and not lattice.subtractive_mask[i]:
                continue
            rows.append({
                "point": f"P{i}",
                "members": [semiring.label(x) for x in ideal.elements()],
                "subtractive": lattice.subtractive_mask[i],
                "proper": ideal.is_proper,
                "closure": f"P{lattice.closure_index[i]}",
            })
        return jsonify({"semiring": semiring.name, "count": len(lattice), "ideals": rows}), 200
    return _handle(run)


@workbench_bp.route('/api/closure', methods=['POST'])
@log_api_request()
def closure():
    def run():
        body = ClosureRequest.model_validate(request.get_json(silent=True) or {})
        semiring = SemiringService.parse_semiring(body.text)
        ideal = IdealService.from_labels(semiring, body.ideal)
        closed = IdealService.subtractive_closure(ideal)
        witness = IdealService.subtractive_witness(ideal)
        return jsonify({
            "ideal": ideal.render(),
            "closure": closed.render(),
            "subtractive": IdealService.is_subtractive(ideal),
            "witness": None if witness is None else [semiring.label(v) for v in witness],
        }), 200
    return _handle(run)


@workbench_bp.route('/api/topology', methods=['POST'])
@log_api_request()
def topology():
    def run():
        body = TopologyRequest.model_validate(request.get_json(silent=True) or {})
        semiring = SemiringService.parse_semiring(body.text)
        lattice = IdealService.enumerate_ideals(semiring)
        space = TopologyService.build_space(lattice, body.semantics, cap=body.max_closed)
        space = TopologyService.materialize(space)
        t0 = TopologyService.is_T0(space)
        t1 = TopologyService.is_T1_subspace(space)
        irreducible = TopologyService.irreducible_closed_sets(space)
        return jsonify({
            "semiring": semiring.name,
            "semantics": body.semantics.value,
            "points": [describe_point(space, p) for p in range(space.n_points)],
            "subbasis": [space.render_points(s) for s in space.subbasis],
            "closed_sets": len(space.closed_family),
            "t0": t0.model_dump(),
            "t1_subtractive": t1.model_dump(),
            "irreducible": [
                {"set": space.render_points(c.members), "generic": [f"P{p}" for p in c.generic_points]}
                for c in irreducible if c.irreducible
            ],
        }), 200
    return _handle(run)


@workbench_bp.route('/api/check', methods=['POST'])
@log_api_request()
def check():
    """Run the claim suite over the posted semirings"""
    def run():
        body = CheckRequest.model_validate(request.get_json(silent=True) or {})
        structures: List[FiniteSemiring] = [SemiringService.parse_semiring(text) for text in body.texts]
        report = VerificationService.run_suite(
            Corpus(structures=structures),
            claims=select_claims(body.claims),
            semantics=parse_semantics(body.semantics),
            include_nat=body.include_nat,
        )
        return jsonify({
            "lines": [ReportService.format_line(r) for r in report.reports],
            "summary": report.summary.model_dump(),
            "exit_code": report.exit_code,
        }), 200
    return _handle(run)


@workbench_bp.errorhandler(413)
def too_large(e):
    """Handle request too large error"""
    logger.warning(f"Request too large: {str(e)}")
    return _error("too-large", "The request body is too large", 413)
