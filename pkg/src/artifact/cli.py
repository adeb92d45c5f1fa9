"""Command-line front end.

Exit codes: 0 success (or Poisson under --quiet), 1 not Poisson / classification
mismatch, 2 usage or computation error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from functools import wraps

import click

from . import __version__
from .cache import ENV_VAR, ModuleCache
from .chars import d_table, rigidity_check, sym_ext_cube, sym_ext_square, tensor_decompose
from .lie_algebra import chevalley
from .parabolic import parabolic_data
from .poisson import closure_hilbert, is_poisson_decorated, poisson_module_verdict, r_minus
from .repr import DEFAULT_DIM_CEILING, DimensionCeilingError, highest_weight_module
from .root_data import RootSystemError, build_root_system, parse_weight
from .sweep import Options, classify, system_list

ERRORS = (RootSystemError, DimensionCeilingError, ValueError, ArithmeticError)


class Context:
    def __init__(self, dim_ceiling, cache_dir, no_cache, csv_out, quiet):
        self.dim_ceiling = None if dim_ceiling == 0 else dim_ceiling
        self.csv = csv_out
        self.quiet = quiet
        self.cache = None if no_cache else ModuleCache(cache_dir)

    def emit(self, payload, rows=None, header=None) -> None:
        if self.quiet:
            return
        if self.csv and rows is not None:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
            click.echo(buf.getvalue(), nl=False)
        else:
            click.echo(json.dumps(payload, indent=2, sort_keys=True))


def common(f):
    @click.option("--dim-ceiling", type=int, default=DEFAULT_DIM_CEILING, show_default=True,
                  help="Refuse modules above this dimension (0 disables).")
    @click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
                  help=f"Module cache directory (default ${ENV_VAR} or ~/.cache/artifact).")
    @click.option("--no-cache", is_flag=True, help="Do not read or write the module cache.")
    @click.option("--csv", "csv_out", is_flag=True, help="Emit tables as CSV.")
    @click.option("--quiet", "-q", is_flag=True, help="No output; report through the exit code.")
    @wraps(f)
    def wrapper(dim_ceiling, cache_dir, no_cache, csv_out, quiet, **kw):
        ctx = Context(dim_ceiling, cache_dir, no_cache, csv_out, quiet)
        try:
            code = f(ctx, **kw)
        except ERRORS as exc:
            if not quiet:
                click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        sys.exit(code or 0)

    return wrapper


def _module(ctx: Context, system: str, weight: str):
    rs = build_root_system(system)
    lam = parse_weight(rs, weight)
    return rs, lam, highest_weight_module(chevalley(rs), lam, ctx.dim_ceiling, ctx.cache)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__)
def main():
    """Poisson modules, rigidity and parabolic radicals for semisimple Lie algebras.

    SYSTEM is e.g. A2, C3 or A2xA1; WEIGHT lists fundamental-weight coefficients
    per factor, e.g. 1,0 or 1,0|1.
    """


def _check(ctx: Context, system, weight, method, decorated, vocabulary):
    rs, lam, m = _module(ctx, system, weight)
    v = poisson_module_verdict(m, method)
    out = {
        "system": rs.name,
        "weight": weight.strip(),
        "dim": m.dim,
        vocabulary: v.poisson,
        "method": method,
        "triples_checked": v.checked,
        "witness": v.witness,
    }
    if decorated:
        out["schouten_vanishes"] = is_poisson_decorated(r_minus(m.algebra, m))
    ctx.emit(out)
    return 0 if v.poisson else 1


_method = click.option("--method", type=click.Choice(["weight", "full", "literal"]), default="weight",
                       show_default=True, help="Which Lambda^3 basis triples to test.")
_decorated = click.option("--decorated", is_flag=True, help="Also run the Schouten-square criterion.")


@main.command()
@click.argument("system")
@click.argument("weight")
@_method
@_decorated
@common
def check(ctx, system, weight, method, decorated):
    """Decide whether V_WEIGHT is a Poisson module."""
    return _check(ctx, system, weight, method, decorated, "poisson")


@main.command()
@click.argument("system")
@click.argument("weight")
@_method
@_decorated
@common
def flatness(ctx, system, weight, method, decorated):
    """Decide whether the quantum module V_WEIGHT is flat (same test as check)."""
    return _check(ctx, system, weight, method, decorated, "flat")


@main.command(name="classify")
@click.option("--systems", default=None, help="Comma-separated simple systems, e.g. A2,B3.")
@click.option("--types", default=None, help="Restrict the default list to these letters, e.g. A,D.")
@click.option("--max-rank", type=int, default=None)
@click.option("--bound", type=int, default=3, show_default=True, help="Maximal coefficient sum.")
@click.option("--big", is_flag=True, help="Include E6 and F4.")
@click.option("--jobs", "-j", type=int, default=1, show_default=True)
@click.option("--audit", type=int, default=3, show_default=True, help="Filtered-out weights re-tested per system.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--rigid-cap", type=int, default=500, show_default=True, help="Largest dim for the rigidity test.")
@click.option("--oracle-dim", type=int, default=20, show_default=True, help="Largest dim for the oracle cross-checks.")
@click.option("--timing", is_flag=True, help="Include elapsed time in the report.")
@common
def classify_cmd(ctx, systems, types, max_rank, bound, big, jobs, audit, seed, rigid_cap, oracle_dim, timing):
    """Sweep dominant weights, filter, test, and compare with the known Poisson list."""
    names = system_list(types, max_rank, big, systems)
    opts = Options(ctx.dim_ceiling, rigid_cap, oracle_dim, audit, seed=seed,
                   cache_dir=str(ctx.cache.root) if ctx.cache else None)
    report = classify(names, bound, jobs, opts)
    elapsed = report.pop("elapsed_seconds")
    if timing:
        report["elapsed_seconds"] = elapsed
    elif not ctx.quiet:
        click.echo(f"elapsed {elapsed:.2f}s", err=True)
    header = ["system", "weight", "dim", "sl2", "double_weight", "poisson", "method", "rigid", "lambda2_simple"]
    rows = [
        [s["system"], r["weight"], r["dim"], r["filter_verdicts"]["sl2"], r["filter_verdicts"]["double_weight"],
         r["poisson"], r["method"], r["rigid"], r["lambda2_simple"]]
        for s in report["systems"] for r in s["records"]
    ]
    ctx.emit(report, rows, header)
    return 0 if report["all_match"] else 1


@main.command()
@click.argument("system")
@click.argument("weight")
@click.argument("power", type=click.Choice(["sym2", "ext2", "sym3", "ext3", "tensor", "d"]))
@click.option("--with", "other", default=None, help="Second weight for POWER=tensor.")
@common
def decompose(ctx, system, weight, power, other):
    """Decompose a power or tensor product of V_WEIGHT into simple modules."""
    rs = build_root_system(system)
    lam = parse_weight(rs, weight)
    if power == "tensor":
        if other is None:
            raise ValueError("tensor needs --with WEIGHT")
        table = tensor_decompose(rs, lam, parse_weight(rs, other), ctx.dim_ceiling)
    elif power in ("sym2", "ext2"):
        table = sym_ext_square(rs, lam, ctx.dim_ceiling)[power == "ext2"]
    elif power in ("sym3", "ext3"):
        table = sym_ext_cube(rs, lam, ctx.dim_ceiling)[power == "ext3"]
    else:
        table = d_table(rs, lam, ctx.dim_ceiling)
    rows = table.to_list()
    ctx.emit({"system": rs.name, "weight": weight.strip(), "power": power, "table": rows},
             [[r["weight"], r["multiplicity"]] for r in rows], ["weight", "multiplicity"])
    return 0


@main.command()
@click.argument("system")
@click.argument("weight")
@common
def rigidity(ctx, system, weight):
    """Compare S^3 V and Lambda^3 V with their lower bounds."""
    rs = build_root_system(system)
    if len(rs.factors) != 1:
        raise ValueError("rigidity is defined here for simple g")
    lam = parse_weight(rs, weight)
    s3, e3 = sym_ext_cube(rs, lam, ctx.dim_ceiling)
    rigid = rigidity_check(rs, lam, ctx.dim_ceiling)
    ctx.emit({"system": rs.name, "weight": weight.strip(), "rigid": rigid, "sym3": s3.to_list(),
              "ext3": e3.to_list(), "d": d_table(rs, lam, ctx.dim_ceiling).to_list()})
    return 0 if rigid else 1


def _parse_delta(text: str, rank: int) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        nodes = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse node list {text!r}") from None
    for i in nodes:
        if not 1 <= i <= rank:
            raise RootSystemError(f"node {i} outside 1..{rank}")
    return [i - 1 for i in nodes]


@main.command()
@click.argument("system")
@click.argument("delta", required=False, default=None)
@click.option("--drop", type=int, default=None, help="Use the maximal delta omitting this node.")
@common
def radical(ctx, system, delta, drop):
    """Radical of the parabolic with retained simple roots DELTA (1-based, comma-separated)."""
    rs = build_root_system(system)
    if (delta is None) == (drop is None):
        raise ValueError("give either DELTA or --drop")
    if drop is not None:
        if not 1 <= drop <= rs.rank:
            raise RootSystemError(f"node {drop} outside 1..{rs.rank}")
        nodes = [i for i in range(rs.rank) if i != drop - 1]
    else:
        nodes = _parse_delta(delta, rs.rank)
    rec = parabolic_data(rs, nodes).to_record()
    ctx.emit(rec)
    return 0


@main.command(name="closure-hilbert")
@click.argument("system")
@click.argument("weight")
@click.option("--max-degree", type=int, default=4, show_default=True)
@common
def closure_hilbert_cmd(ctx, system, weight, max_degree):
    """Hilbert function of S(V) modulo the Jacobian ideal of the r-matrix bracket."""
    rs, lam, m = _module(ctx, system, weight)
    series = closure_hilbert(r_minus(m.algebra, m), max_degree)
    ctx.emit({"system": rs.name, "weight": weight.strip(), "dim": m.dim, "hilbert": series},
             [[n, h] for n, h in enumerate(series)], ["degree", "dim"])
    return 0


if __name__ == "__main__":
    main()
