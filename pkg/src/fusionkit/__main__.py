from __future__ import annotations
from collections.abc import Callable
from functools import wraps
import json
import logging
from pathlib import Path
import sys
from typing import Any, Optional
import click
from . import __version__
from .fusion import fusion_product
from .prv import verify_theorem
from .repcalc import (
    MAX_DIM_ENVVAR,
    VirtualModule,
    tensor_decompose,
    virtual_dimension,
    weyl_dimension,
)
from .rootsys import AlgebraData, build_algebra
from .sweep import SweepConfig, run_sweep
from .util import InvariantViolation, parse_algebra, parse_weight


def map_exc_to_click(func: Callable) -> Callable:
    @wraps(func)
    def wrapped(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ValueError as e:
            raise click.UsageError(str(e))
        except InvariantViolation as e:
            raise click.ClickException(f"Internal invariant violated: {e}")

    return wrapped


def get_algebra(name: str) -> AlgebraData:
    return build_algebra(*parse_algebra(name))


def module_json(alg: AlgebraData, x: VirtualModule) -> list[dict[str, Any]]:
    return [
        {"weight": list(w), "multiplicity": c, "dimension": weyl_dimension(alg, w)}
        for w, c in x.items()
    ]


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(
    __version__,
    "-V",
    "--version",
    message="%(prog)s %(version)s",
)
@click.option(
    "-l",
    "--log-level",
    type=click.Choice(
        ["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"], case_sensitive=False
    ),
    default="WARNING",
    show_default=True,
    help="Set logging level",
)
@click.option(
    "--max-dim",
    type=click.IntRange(min=1),
    envvar=MAX_DIM_ENVVAR,
    help=f"Refuse to expand modules of dimension above this  [env var: {MAX_DIM_ENVVAR}]",
)
@click.pass_context
def main(ctx: click.Context, log_level: str, max_dim: Optional[int]) -> None:
    """Tensor products, fusion products and PRV checks for simple Lie algebras"""
    logging.basicConfig(
        format="%(asctime)s [%(levelname)-8s] %(name)s: %(message)s",
        level=getattr(logging, log_level.upper()),
    )
    ctx.obj = max_dim


@main.command()
@click.option("-J", "--json", "do_json", is_flag=True, help="Output JSON")
@click.argument("algebra")
@map_exc_to_click
def info(algebra: str, do_json: bool) -> None:
    """Show the root-system data of a simple Lie algebra"""
    alg = get_algebra(algebra)
    if do_json:
        print(alg.to_json())
        return
    data: list[tuple[str, Any]] = [
        ("Algebra", alg.name),
        ("Rank", alg.rank),
        ("Dimension", alg.dimension),
        ("Positive-Roots", len(alg.positive_roots)),
        ("Highest-Root", alg.theta),
        ("Rho", alg.rho),
        ("Comarks", ",".join(map(str, alg.comarks))),
        ("Dual-Coxeter", alg.dual_coxeter),
        ("Weyl-Group-Order", alg.weyl_group_order),
    ]
    for label, val in data:
        print(f"{label}: {val}")


@main.command()
@click.option("-J", "--json", "do_json", is_flag=True, help="Output JSON")
@click.option("--lambda", "lam", required=True, metavar="WEIGHT", help="Highest weight λ")
@click.option("--mu", required=True, metavar="WEIGHT", help="Highest weight μ")
@click.argument("algebra")
@click.pass_obj
@map_exc_to_click
def tensor(
    max_dim: Optional[int], algebra: str, lam: str, mu: str, do_json: bool
) -> None:
    """
    Decompose V(λ) ⊗ V(μ) into irreducibles

    Weights are given as comma-separated coordinates against the fundamental
    weights, e.g. "1,0,2".  Components are printed in ascending
    lexicographic order of their highest weights.
    """
    alg = get_algebra(algebra)
    lam_w = parse_weight(lam, alg.rank)
    mu_w = parse_weight(mu, alg.rank)
    result = tensor_decompose(alg, lam_w, mu_w, max_dim=max_dim)
    if do_json:
        out = {
            "algebra": alg.name,
            "lambda": list(lam_w),
            "mu": list(mu_w),
            "decomposition": module_json(alg, result),
            "dimension": virtual_dimension(alg, result),
        }
        print(json.dumps(out, indent=4))
    else:
        print(result)


@main.command()
@click.option("-J", "--json", "do_json", is_flag=True, help="Output JSON")
@click.option("--lambda", "lam", required=True, metavar="WEIGHT", help="Highest weight λ")
@click.option("-k", "--level", type=click.IntRange(min=1), required=True, help="Level ℓ")
@click.option("--mu", required=True, metavar="WEIGHT", help="Highest weight μ")
@click.argument("algebra")
@click.pass_obj
@map_exc_to_click
def fusion(
    max_dim: Optional[int], algebra: str, level: int, lam: str, mu: str, do_json: bool
) -> None:
    """
    Decompose the level-ℓ fusion product of V(λ) and V(μ)

    Components are printed in ascending lexicographic order of their highest
    weights.
    """
    alg = get_algebra(algebra)
    lam_w = parse_weight(lam, alg.rank)
    mu_w = parse_weight(mu, alg.rank)
    result = fusion_product(alg, lam_w, mu_w, level, max_dim=max_dim)
    if do_json:
        out = {
            "algebra": alg.name,
            "level": level,
            "lambda": list(lam_w),
            "mu": list(mu_w),
            "decomposition": module_json(alg, result),
        }
        print(json.dumps(out, indent=4))
    else:
        print(result)


@main.command()
@click.option("--lambda", "lam", required=True, metavar="WEIGHT", help="Highest weight λ")
@click.option("-k", "--level", type=click.IntRange(min=1), required=True, help="Level ℓ")
@click.option("--mu", required=True, metavar="WEIGHT", help="Highest weight μ")
@click.argument("algebra")
@click.pass_obj
@map_exc_to_click
def verify(max_dim: Optional[int], algebra: str, level: int, lam: str, mu: str) -> None:
    """
    Check that every PRV component V(λ+wμ) inside P_ℓ has multiplicity one
    in the fusion product, for λ≫μ

    Prints the full report as JSON.  Exits 1 if any check fails.
    """
    alg = get_algebra(algebra)
    lam_w = parse_weight(lam, alg.rank)
    mu_w = parse_weight(mu, alg.rank)
    report = verify_theorem(alg, lam_w, mu_w, level, max_dim=max_dim)
    if not report.applicable:
        raise click.UsageError(
            f"Need λ, μ in P_{level} with λ≫μ; got λ={lam_w}, μ={mu_w}"
        )
    print(report.model_dump_json(by_alias=True, indent=4))
    if not report.ok:
        sys.exit(1)


@main.command("prv-sweep")
@click.option(
    "-f",
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
    help="Format of the report file",
)
@click.option(
    "--include-zero-mu", is_flag=True, help="Also check the trivial pairs with μ = 0"
)
@click.option(
    "-j",
    "--jobs",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="Number of worker processes",
)
@click.option("--lambda", "lam", metavar="WEIGHT", help="Only check this λ")
@click.option(
    "--max-level",
    type=click.IntRange(min=1),
    help="Highest level to sweep  [default: 6 for rank ≤ 2, 3 above]",
)
@click.option(
    "--min-level",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="Lowest level to sweep",
)
@click.option("--mu", metavar="WEIGHT", help="Only check this μ")
@click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    help="Write the full report to this file",
)
@click.option(
    "-s",
    "--series",
    "algebras",
    multiple=True,
    required=True,
    metavar="ALGEBRA",
    help="Algebra to sweep, e.g. A2; may be given more than once",
)
@click.pass_obj
@map_exc_to_click
def prv_sweep(
    max_dim: Optional[int],
    algebras: tuple[str, ...],
    min_level: int,
    max_level: Optional[int],
    lam: Optional[str],
    mu: Optional[str],
    include_zero_mu: bool,
    output: Optional[Path],
    fmt: str,
    jobs: int,
) -> None:
    """
    Verify the PRV multiplicity-one property on every λ≫μ pair of a grid

    Prints a one-line summary.  Any failing report is printed as JSON and
    makes the command exit 1.
    """
    cfg = SweepConfig.model_validate(
        {
            "algebras": list(algebras),
            "min_level": min_level,
            "max_level": max_level,
            "lam": None if lam is None else parse_weight(lam),
            "mu": None if mu is None else parse_weight(mu),
            "include_zero_mu": include_zero_mu,
            "output": output,
            "format": fmt,
            "jobs": jobs,
            "max_dim": max_dim,
        }
    )
    result = run_sweep(cfg)
    for r in result.failed_reports():
        print(r.model_dump_json(by_alias=True, indent=4))
    print(result.summary.line)
    if not result.ok:
        sys.exit(1)


if __name__ == "__main__":
    main()  # pragma: no cover
