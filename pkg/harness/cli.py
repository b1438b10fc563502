import json
import sys
from pathlib import Path
from typing import List, Optional

import click

sys.path.append(str(Path(__file__).parent.parent))

from app.config import configure_logging
from app.constructive import solve_constructive
from app.digraph import degree_summary
from app.exact import OracleBudget, find_cover_exact, is_k_coverable
from app.extremal import Family, generate
from app.schemas import CoverKind, CoverSpec, CoverTag, VerdictStatus
from app.verification import verify_cover
from harness.campaigns import run_all_sharpness, run_sharpness_check, run_theorem_check
from harness.io import emit_cover, emit_digraph, emit_dot, emit_report, emit_spec, load_cover, load_digraph, load_spec, write_report
from harness.models import CampaignConfig, CampaignMode, TheoremId

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2

KINDS = [tag.value for tag in CoverTag]


def _vertex_list(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(part) for part in text.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter(f"expected a comma separated vertex list, got {text!r}")


def _build_spec(kind: str, sources: List[int], sinks: List[int], k: Optional[int]) -> CoverSpec:
    tag = CoverTag(kind)
    if tag == CoverTag.ONE_TO_ONE:
        if k is None:
            raise click.UsageError("one-to-one covers need --k")
        count = k
    elif tag == CoverTag.ONE_TO_MANY:
        count = len(sinks)
    else:
        count = len(sources)
    try:
        return CoverSpec(CoverKind(tag, count), tuple(sources), tuple(sinks))
    except ValueError as e:
        raise click.UsageError(str(e))


def _finish(ctx: click.Context, ok: bool) -> None:
    ctx.exit(EXIT_OK if ok else EXIT_REJECTED)


@click.group()
@click.option("--log-level", default=None, help="Overrides LOG_LEVEL")
def cli(log_level: Optional[str]):
    """Disjoint directed path cover lab."""
    if log_level:
        configure_logging(log_level)
    else:
        configure_logging()


@cli.command()
@click.option("--kind", type=click.Choice(KINDS), required=True)
@click.option("--method", type=click.Choice(["exact", "constructive"]), default="constructive", show_default=True)
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--S", "sources", help="Sources, e.g. 0,1")
@click.option("--T", "sinks", help="Sinks, e.g. 4,5")
@click.option("--k", type=int, default=None, help="Path count (one-to-one only)")
@click.option("--dot", is_flag=True, help="Print DOT with the cover highlighted instead of JSON")
@click.pass_context
def solve(ctx, kind, method, graph_path, sources, sinks, k, dot):
    """Find a cover of the given kind."""
    try:
        digraph = load_digraph(graph_path)
        spec = _build_spec(kind, _vertex_list(sources), _vertex_list(sinks), k)
        cover = find_cover_exact(digraph, spec) if method == "exact" else solve_constructive(digraph, spec)
    except ValueError as e:
        raise click.UsageError(str(e))

    if cover is None:
        click.echo(f"no {kind} cover for S={list(spec.sources)} T={list(spec.sinks)}")
        _finish(ctx, False)

    click.echo(emit_dot(digraph, spec, cover) if dot else emit_cover(cover), nl=False)
    _finish(ctx, True)


@cli.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--cover", "cover_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.pass_context
def verify(ctx, graph_path, spec_path, cover_path):
    """Check a cover against a digraph and spec."""
    try:
        check = verify_cover(load_digraph(graph_path), load_spec(spec_path), load_cover(cover_path))
    except ValueError as e:
        raise click.UsageError(str(e))

    click.echo(json.dumps(check.to_dict(), sort_keys=True))
    _finish(ctx, check.accepted)


@cli.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
def degrees(graph_path):
    """Print degrees, min semi-degree and the Ore minimum."""
    try:
        summary = degree_summary(load_digraph(graph_path))
    except ValueError as e:
        raise click.UsageError(str(e))
    click.echo(json.dumps(summary.to_dict(), sort_keys=True))


@cli.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--kind", type=click.Choice(KINDS), required=True)
@click.option("--k", type=int, required=True)
@click.option("--cap", type=int, default=None, help="Exhaustive below this many (S,T) choices")
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.pass_context
def coverable(ctx, graph_path, kind, k, cap, samples, seed):
    """Decide k-coverability over every admissible (S,T)."""
    defaults = OracleBudget()
    budget = OracleBudget(
        cap=defaults.cap if cap is None else cap,
        samples=defaults.samples if samples is None else samples,
        seed=defaults.seed if seed is None else seed
    )
    try:
        verdict = is_k_coverable(load_digraph(graph_path), CoverKind(kind, k), budget)
    except ValueError as e:
        raise click.UsageError(str(e))

    click.echo(json.dumps(verdict.to_dict(), sort_keys=True))
    _finish(ctx, verdict.status != VerdictStatus.PROVEN_FALSE)


@cli.command("gen-extremal")
@click.option("--family", type=click.Choice([family.value for family in Family]), required=True)
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--m", type=int, default=None, help="|A| for the paired 2-cover family")
@click.option("--out", "prefix", type=click.Path(dir_okay=False), default=None,
              help="Write PREFIX.graph.json, PREFIX.spec.json and PREFIX.dot")
def gen_extremal(family, n, k, m, prefix):
    """Emit an extremal witness: digraph JSON, spec JSON and DOT."""
    try:
        witness = generate(Family(family), n=n, k=k, m=m)
    except ValueError as e:
        raise click.UsageError(str(e))

    graph_text = emit_digraph(witness.digraph)
    spec_text = emit_spec(witness.spec)
    dot_text = emit_dot(witness.digraph, witness.spec)

    if prefix:
        Path(f"{prefix}.graph.json").write_text(graph_text, encoding="utf-8")
        Path(f"{prefix}.spec.json").write_text(spec_text, encoding="utf-8")
        Path(f"{prefix}.dot").write_text(dot_text, encoding="utf-8")
        click.echo(f"{family}: order {witness.digraph.n}, claimed delta0 {witness.claimed_delta0} -> {prefix}.*")
        return

    click.echo(graph_text, nl=False)
    click.echo(spec_text, nl=False)
    click.echo(dot_text, nl=False)
    for note in witness.notes:
        click.echo(f"note: {note}", err=True)


@cli.command("check-theorem")
@click.option("--id", "theorem", type=click.Choice([theorem.value for theorem in TheoremId]), required=True)
@click.option("--mode", type=click.Choice([mode.value for mode in CampaignMode]), default="random", show_default=True)
@click.option("--n-min", type=int, required=True)
@click.option("--n-max", type=int, required=True)
@click.option("--k-min", type=int, default=1, show_default=True)
@click.option("--k-max", type=int, default=1, show_default=True)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--offset", "threshold_offset", type=int, default=0, show_default=True)
@click.option("--max-instances", type=int, default=None)
@click.option("--jobs", "n_jobs", type=int, default=None)
@click.option("--timings", "record_timings", is_flag=True)
@click.option("--progress", is_flag=True)
@click.option("--out", "output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def check_theorem(ctx, progress, **options):
    """Run a verification campaign for one theorem."""
    options = {name: value for name, value in options.items() if value is not None}
    try:
        config = CampaignConfig(**options)
        report = run_theorem_check(config, progress=progress)
    except ValueError as e:
        raise click.UsageError(str(e))

    if config.output:
        write_report(report, config.output)
    else:
        click.echo(emit_report(report), nl=False)

    summary = report.summary
    click.echo(
        f"{config.theorem.value}: {summary.instances} instances, {summary.accepted} accepted, "
        f"{summary.refuted} refuted, {summary.skipped} skipped, {summary.failures} failures"
        + (" (truncated)" if summary.truncated else ""),
        err=True
    )
    _finish(ctx, report.passed)


@cli.command("check-sharpness")
@click.option("--family", type=click.Choice([family.value for family in Family]), default=None)
@click.option("--all", "run_all", is_flag=True, help="Every family at its default parameters")
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--m", type=int, default=None)
@click.option("--timings", "record_timings", is_flag=True)
@click.option("--out", "output", type=click.Path(file_okay=False), default=None, help="Directory for the reports")
@click.pass_context
def check_sharpness(ctx, family, run_all, n, k, m, record_timings, output):
    """Refute an extremal witness and solve it once raised to the bound."""
    if run_all == (family is not None):
        raise click.UsageError("give exactly one of --family or --all")

    try:
        if run_all:
            reports = run_all_sharpness(record_timings=record_timings)
        else:
            reports = [run_sharpness_check(Family(family), n=n, k=k, m=m, record_timings=record_timings)]
    except ValueError as e:
        raise click.UsageError(str(e))

    for report in reports:
        if output:
            Path(output).mkdir(parents=True, exist_ok=True)
            write_report(report, Path(output) / f"{report.campaign}.json")
        status = "ok" if report.passed else "FAILED"
        click.echo(f"{report.campaign} {report.params}: {status}")

    _finish(ctx, all(report.passed for report in reports))


if __name__ == "__main__":
    cli()
