"""Classification sweeps over dominant weights of simple Lie algebras."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import product

from . import __version__
from .chars import rigidity_check, sym_ext_square
from .lie_algebra import chevalley
from .poisson import (
    double_weight_filter,
    is_poisson_decorated,
    jacobi_bruteforce,
    poisson_module_verdict,
    r_minus,
    sl2_filter,
)
from .repr import DEFAULT_DIM_CEILING, highest_weight_module
from .root_data import build_root_system, format_system, format_weight, parse_system

DEFAULT_SYSTEMS = ("A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2")
BIG_SYSTEMS = ("E6", "F4")


def expected_poisson(letter: str, n: int) -> set[tuple]:
    """Highest weights of the Poisson simple modules, by type."""

    def w(*nodes: int, c: int = 1) -> tuple:
        v = [0] * n
        for i in nodes:
            v[i - 1] += c
        return tuple(v)

    out: set[tuple] = set()
    if letter == "A":
        for i in {1, 2, n - 1, n}:
            if 1 <= i <= n:
                out.add(w(i))
        out.add(w(1, c=2))
        out.add(w(n, c=2))
    elif letter in "BC":
        out.add(w(1))
        if n == 2:
            out.add(w(2))
    elif letter == "D":
        out.add(w(1))
        if n == 4:
            out |= {w(3), w(4)}
        if n == 5:
            out |= {w(4), w(5)}
    elif (letter, n) == ("E", 6):
        out |= {w(1), w(6)}
    return out


def weights_up_to(rank: int, bound: int):
    """Nonzero dominant weights with coefficient sum <= bound, in canonical order."""
    out = [v for v in product(range(bound + 1), repeat=rank) if 0 < sum(v) <= bound]
    return sorted(out, key=lambda v: (sum(v), tuple(-x for x in v)))


@dataclass
class Options:
    dim_ceiling: int | None = DEFAULT_DIM_CEILING
    rigid_cap: int = 500
    oracle_dim: int = 20
    audit: int = 3
    audit_dim_cap: int = 300
    seed: int = 0
    cache_dir: str | None = None


@dataclass
class WeightRecord:
    weight: str
    dim: int
    filter_verdicts: dict
    poisson: bool | None
    method: str
    rigid: bool | None = None
    lambda2_simple: bool | None = None
    oracles: dict | None = None
    note: str | None = None


def _module_cache(opts: Options):
    if opts.cache_dir is None:
        return None
    from .cache import ModuleCache

    return ModuleCache(opts.cache_dir)


def evaluate_weight(system: str, lam: tuple, exact: str, opts: Options) -> WeightRecord:
    """exact is "survivor", "audit" or "none"."""
    rs = build_root_system(system)
    dim = rs.weyl_dimension(lam)
    sl2 = sl2_filter(rs, lam)
    dw = double_weight_filter(rs, lam)
    filters = {"sl2": sl2, "double_weight": dw}
    run_oracles = dim <= opts.oracle_dim
    rec = WeightRecord(format_weight(rs, lam), dim, filters, None, "filter")
    if exact == "none" and not run_oracles:
        rec.poisson = False
        return rec
    if opts.dim_ceiling is not None and dim > opts.dim_ceiling:
        rec.method = "skipped"
        rec.note = f"dimension {dim} exceeds ceiling {opts.dim_ceiling}"
        return rec
    g = chevalley(rs)
    m = highest_weight_module(g, lam, opts.dim_ceiling, _module_cache(opts))
    v = poisson_module_verdict(m)
    rec.poisson = v.poisson
    rec.method = {"survivor": "exact", "audit": "audit"}.get(exact, "exact")
    if dim <= opts.rigid_cap:
        rec.rigid = rigidity_check(rs, lam, None)
        rec.lambda2_simple = sym_ext_square(rs, lam, None)[1].is_simple()
    if run_oracles:
        d = r_minus(g, m)
        rec.oracles = {
            "jacobi": jacobi_bruteforce(d),
            "schouten": is_poisson_decorated(d),
            "c_kernel_full": poisson_module_verdict(m, "full").poisson,
        }
    return rec


def _audit_choice(system: str, rejected: list[tuple], opts: Options) -> set[tuple]:
    rs = build_root_system(system)
    pool = [w for w in rejected if rs.weyl_dimension(w) <= opts.audit_dim_cap]
    rng = random.Random(f"{opts.seed}:{system}")
    return set(rng.sample(pool, min(opts.audit, len(pool))))


def plan_system(system: str, bound: int, opts: Options) -> list[tuple[str, tuple, str]]:
    rs = build_root_system(system)
    tasks, rejected = [], []
    for lam in weights_up_to(rs.rank, bound):
        if sl2_filter(rs, lam) and double_weight_filter(rs, lam) is not False:
            tasks.append((system, lam, "survivor"))
        else:
            rejected.append(lam)
    audit = _audit_choice(system, rejected, opts)
    tasks += [(system, lam, "audit" if lam in audit else "none") for lam in rejected]
    return tasks


def _run(task_opts):
    (system, lam, exact), opts = task_opts
    return system, lam, evaluate_weight(system, lam, exact, opts)


def classify(systems=DEFAULT_SYSTEMS, bound: int = 3, jobs: int = 1, opts: Options | None = None) -> dict:
    opts = opts or Options()
    start = time.perf_counter()
    tasks = [t for s in systems for t in plan_system(s, bound, opts)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, [(t, opts) for t in tasks], chunksize=1))
    else:
        results = [_run((t, opts)) for t in tasks]
    by_system: dict[str, list[WeightRecord]] = {s: [] for s in systems}
    for system, _, rec in results:
        by_system[system].append(rec)
    report = {"version": __version__, "bound": bound, "systems": []}
    all_match = True
    for s in systems:
        rs = build_root_system(s)
        letter, n = rs.factors[0]
        recs = sorted(by_system[s], key=lambda r: r.weight)
        found = sorted(r.weight for r in recs if r.poisson)
        expected = sorted(
            format_weight(rs, w) for w in expected_poisson(letter, n) if sum(w) <= bound
        )
        audit_violations = sorted(r.weight for r in recs if r.method == "audit" and r.poisson)
        skipped = sorted(r.weight for r in recs if r.method == "skipped")
        match = found == expected and not audit_violations
        all_match &= match
        report["systems"].append(
            {
                "system": s,
                "records": [asdict(r) for r in recs],
                "poisson_set": found,
                "expected": expected,
                "missing": sorted(set(expected) - set(found)),
                "unexpected": sorted(set(found) - set(expected)),
                "audit_violations": audit_violations,
                "skipped": skipped,
                "match": match,
            }
        )
    report["all_match"] = all_match
    report["elapsed_seconds"] = round(time.perf_counter() - start, 3)
    return report


def system_list(types: str | None, max_rank: int | None, big: bool, explicit: str | None = None) -> list[str]:
    if explicit:
        out = []
        for part in explicit.split(","):
            factors = parse_system(part.strip())
            if len(factors) != 1:
                raise ValueError(f"classification runs over simple systems; got {part!r}")
            out.append(format_system(factors))
        return out
    base = list(DEFAULT_SYSTEMS) + (list(BIG_SYSTEMS) if big else [])
    if types:
        letters = {t.strip().upper() for t in types.split(",")}
        base = [s for s in base if s[0] in letters]
    if max_rank is not None:
        base = [s for s in base if int(s[1:]) <= max_rank]
    return base
