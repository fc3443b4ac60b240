"""Command-line surface of the workbench.

Report lines go to stdout; diagnostics and errors go to stderr. Input errors
exit 2, must-hold claim failures exit 1, caps under ``--strict`` exit 3.
"""

import sys
from functools import wraps
from typing import Optional, Tuple
import click
from app.config.settings import settings
from app.core.exceptions import AxiomViolation, WorkbenchError
from app.core.file_utils import SemiringFileManager
from app.core.logger import LoggerConfig, get_logger
from app.models.schemas import Corpus, Semantics
from app.services.claim_registry import select_claims
from app.services.ideal_service import IdealService
from app.services.nat_service import NatIdealService
from app.services.report_service import ReportService
from app.services.search_service import SearchService
from app.services.semiring_service import SemiringService
from app.services.topology_service import TopologyService, describe_point
from app.services.verification_service import VerificationService, parse_semantics

logger = get_logger(__name__)


def handle_errors(func):
    """Report workbench errors on stderr and exit with their exit code"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except AxiomViolation as e:
            click.echo(f"error: {e.code}", err=True)
            for violation in e.violations:
                click.echo(f"  {violation.axiom} witness={tuple(violation.witness)}", err=True)
            sys.exit(e.exit_code)
        except WorkbenchError as e:
            click.echo(f"error: {e.code}: {e.message}", err=True)
            sys.exit(e.exit_code)
    return wrapper


def _split_labels(text: str) -> Tuple[str, ...]:
    return tuple(part for part in text.replace(",", " ").split() if part)


@click.group()
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Overrides LOG_LEVEL for this run")
def cli(log_level: Optional[str]):
    """Subtractive closure and subtractive topology of finite semirings"""
    if log_level:
        LoggerConfig.set_level(log_level)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def validate(path: str):
    """Parse and validate one semiring file"""
    semiring = SemiringFileManager.read_semiring(path)
    click.echo(f"OK {semiring.name} order={semiring.order} "
               f"zero={semiring.label(semiring.zero)} one={semiring.label(semiring.one)}")


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--subtractive-only", is_flag=True, help="List only the subtractive ideals")
@handle_errors
def ideals(path: str, subtractive_only: bool):
    """List Idl(S) with subtractivity, closures and inclusion covers"""
    semiring = SemiringFileManager.read_semiring(path)
    lattice = IdealService.enumerate_ideals(semiring)
    shown = set()
    for i, ideal in enumerate(lattice.all_ideals):
        if subtractive_only and not lattice.subtractive_mask[i]:
            continue
        shown.add(i)
        flag = "subtractive" if lattice.subtractive_mask[i] else f"C=P{lattice.closure_index[i]}"
        click.echo(f"P{i} {ideal.render()} {flag}")
    for low, high in sorted(IdealService.inclusion_graph(lattice).edges()):
        if low in shown and high in shown:
            click.echo(f"P{low} < P{high}")


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--ideal", "labels", required=True, help="Element labels of the ideal, e.g. '0,T'")
@handle_errors
def closure(path: str, labels: str):
    """Subtractive closure of one ideal"""
    semiring = SemiringFileManager.read_semiring(path)
    ideal = IdealService.from_labels(semiring, _split_labels(labels))
    closed = IdealService.subtractive_closure(ideal)
    click.echo(f"C({ideal.render()}) = {closed.render()}")
    witness = IdealService.subtractive_witness(ideal)
    if witness is None:
        click.echo("subtractive: yes")
    else:
        x, y = witness
        click.echo(f"subtractive: no (x={semiring.label(x)}, y={semiring.label(y)})")


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--semantics", type=click.Choice([s.value for s in Semantics]), default=Semantics.DOWN_SET.value)
@click.option("--max-closed", type=int, default=None, help="Cap on the closed-family size")
@handle_errors
def topology(path: str, semantics: str, max_closed: Optional[int]):
    """Describe the subtractive space of a semiring"""
    semiring = SemiringFileManager.read_semiring(path)
    lattice = IdealService.enumerate_ideals(semiring)
    space = TopologyService.build_space(lattice, Semantics(semantics), cap=max_closed)
    space = TopologyService.materialize(space)

    click.echo(f"space {semiring.name} semantics={space.semantics.value}")
    for p in range(space.n_points):
        marker = " subtractive" if lattice.subtractive_mask[p] else ""
        click.echo(f"  {describe_point(space, p)}{marker}")
    click.echo("subbasis: " + " ".join(space.render_points(s) for s in space.subbasis))
    click.echo(f"closed sets: {len(space.closed_family)}")
    for p in range(space.n_points):
        click.echo(f"  cl(P{p}) = {space.render_points(TopologyService.point_closure(space, p))}")

    t0 = TopologyService.is_T0(space)
    click.echo("T0: yes" if t0.holds else f"T0: no ({t0.witness})")
    t1 = TopologyService.is_T1_subspace(space)
    click.echo("T1 on subtractive points: yes" if t1.holds else f"T1 on subtractive points: no ({t1.witness})")
    for closed in TopologyService.irreducible_closed_sets(space):
        if closed.irreducible:
            generic = ",".join(f"P{p}" for p in closed.generic_points) or "none"
            click.echo(f"irreducible {space.render_points(closed.members)} generic={generic}")


@cli.command()
@click.argument("paths", nargs=-1, type=click.Path(exists=True))
@click.option("--search-order", type=int, default=None, help="Add exhaustively searched semirings up to this order")
@click.option("--canonical/--no-canonical", default=True, help="Reject isomorphic duplicates")
@click.option("--builtins/--no-builtins", default=True, help="Seed the corpus with the built-in families")
@click.option("--claims", default="all", help="'all' or a comma-separated list such as C9,C12")
@click.option("--semantics", default="both", help="downset, fixedpoint or both")
@click.option("--nat/--no-nat", "include_nat", default=True, help="Also run the natural-number claims")
@click.option("--strict", is_flag=True, help="Exit 3 when any check hits a cap")
@click.option("--jobs", type=int, default=None, help="joblib worker count")
@handle_errors
def check(paths: Tuple[str, ...],
          search_order: Optional[int],
          canonical: bool,
          builtins: bool,
          claims: str,
          semantics: str,
          include_nat: bool,
          strict: bool,
          jobs: Optional[int]):
    """Evaluate the claim registry over files or a searched corpus"""
    if paths:
        corpus = Corpus(structures=SemiringFileManager.read_semirings(list(paths)))
    else:
        corpus = SearchService.build_corpus(search_order or 0, canonical=canonical, include_builtins=builtins)

    report = VerificationService.run_suite(
        corpus,
        claims=select_claims([claims]),
        semantics=parse_semantics(semantics),
        include_nat=include_nat,
        n_jobs=jobs,
        strict=strict,
    )
    for line in ReportService.render(report):
        click.echo(line)
    sys.exit(report.exit_code)


@cli.command()
@click.option("--order", type=int, required=True)
@click.option("--canonical/--no-canonical", default=True)
@click.option("--limit", type=int, default=None, help="Stop after this many structures")
@handle_errors
def search(order: int, canonical: bool, limit: Optional[int]):
    """Print every semiring of the given order in the file format"""
    corpus = SearchService.search_semirings(order, canonical=canonical, limit=limit)
    for semiring in corpus.structures:
        click.echo(SemiringService.render_semiring(semiring))
    suffix = " (limit reached)" if corpus.limit_reached else ""
    click.echo(f"# {len(corpus.structures)} semirings of order {order}{suffix}")


@cli.command()
@click.option("--nat-ideal", "generators", required=True, help="Generators such as '2,3'")
@handle_errors
def nat(generators: str):
    """Ideal of the natural numbers: membership, closure, subtractivity, radical"""
    ideal = NatIdealService.parse_generators(generators)
    click.echo(NatIdealService.render_nat(ideal))
    click.echo(f"C_sub = {NatIdealService.render_nat(NatIdealService.nat_subtractive_closure(ideal))}")
    verdict = NatIdealService.nat_is_subtractive(ideal)
    if verdict.holds:
        click.echo("subtractive: yes")
    else:
        x, y = verdict.witness
        click.echo(f"subtractive: no (x={x}, y={y})")
    click.echo(f"radical = {NatIdealService.render_nat(NatIdealService.nat_radical(ideal))}")


@cli.command()
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
def serve(host: Optional[str], port: Optional[int]):
    """Run the HTTP API"""
    from app import create_app

    host = host or settings.API_HOST
    port = port or settings.API_PORT
    logger.info(f"Starting development server on http://{host}:{port}")
    create_app().run(debug=settings.DEBUG, host=host, port=port)
