"""Command-line driver.

Every subcommand emits a report (json by default) and exits with 0 when all
checks pass, 1 on a mismatch and 2 on a usage error.  When RESONANTMV_OUTDIR
is set, the report is also written there as <subcommand>.<format>.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import g2eval, lusztig, padic, resonance, tokuyama
from .rootsys import RootSystemError, build_cartan, gelfand_tsetlin_word, long_word, parse_series

SCHEMA = "resonantmv/1"
OUTDIR_ENV = "RESONANTMV_OUTDIR"


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    series: str = "G2"
    word: tuple[int, ...] = ()
    lambdas: list[tuple[int, ...]] = field(default_factory=list)
    fmt: str = "json"
    jobs: int = 1
    options: dict = field(default_factory=dict)


@dataclass
class Report:
    ok: bool
    result: object
    rows: list[dict] | None = None


# -- argument parsing ------------------------------------------------------------

def parse_int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    try:
        if "," in text or text.startswith("-"):
            return tuple(int(x) for x in text.split(",") if x.strip())
        return tuple(int(c) for c in text)
    except ValueError:
        raise UsageError(f"cannot read {text!r} as a list of integers") from None


def parse_lambda(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot read lambda {text!r}; expected e.g. 1,2") from None


def _grid(rank: int, bound: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(rank):
        out = [p + (v,) for p in out for v in range(bound + 1)]
    return out


def _add_common(p: argparse.ArgumentParser, *, series=False, word=False, lam=False, grid=False):
    p.add_argument("--format", choices=("json", "csv", "text"), default="json", dest="fmt")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for grid runs")
    if series:
        p.add_argument("--series", default="G2", help="Cartan type, e.g. G2, A3, B2")
    if word:
        p.add_argument("--word", default=None, help="long word, e.g. 212121 or 2,1,2,1,2,1")
    if lam:
        p.add_argument("--lambda", dest="lam", action="append", default=[],
                       help="dominant coweight, e.g. 1,2 (repeatable)")
    if grid:
        p.add_argument("--grid", type=int, default=None, metavar="B",
                       help="run every lambda with coordinates in 0..B")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resonantmv",
                                     description="Exact MV-integral, crystal and Tokuyama checks.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    _add_common(sub.add_parser("minors", help="generalized minors along a long word"), series=True, word=True)
    _add_common(sub.add_parser("trails", help="trail counts per simple root"), series=True, word=True)
    _add_common(sub.add_parser("sfunctions", help="character polynomials, bounding forms, g_i"),
                series=True, word=True)
    p = sub.add_parser("crystal", help="enumerate B(lambda+rho) with weights and bounding data")
    _add_common(p, series=True, word=True, lam=True)

    p = sub.add_parser("mv-eval", help="evaluate a G2 MV integral")
    _add_common(p, lam=True)
    p.add_argument("--m", required=True, help="Lusztig datum, e.g. 0,0,2,2,2,0")
    p.add_argument("--augmented", action="store_true", help="use the augmented contribution")

    for name, helptext in (("families", "list resonance families"),
                           ("verify-vanishing", "family sums of disjoint families vanish"),
                           ("verify-crystal-axioms", "A1 x A1 crystal axioms on families")):
        p = sub.add_parser(name, help=helptext)
        _add_common(p, lam=True, grid=True)
        p.add_argument("--decoration-cap", type=int, default=6)

    p = sub.add_parser("verify-tokuyama-g2", help="G2 sum side against the product side")
    _add_common(p, lam=True, grid=True)
    p.add_argument("--variant", choices=("v1", "v2", "truncated"), default="v1")

    p = sub.add_parser("verify-tokuyama-typeA", help="type A standard-contribution sum")
    _add_common(p, lam=True, grid=True)
    p.add_argument("--rank", type=int, required=True)

    p = sub.add_parser("padic-geomalgo", help="w_k b_k = 1 on sampled twisted charts")
    _add_common(p, word=True)
    p.add_argument("--n", type=int, default=3, help="matrix size of SL(n)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=5)

    p = sub.add_parser("padic-appendix", help="subdiagonal of u against h_i(t, w) for the word 321232")
    _add_common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=5)
    return parser


def _default_word(series: str) -> tuple[int, ...]:
    datum = parse_series(series)
    if datum.series == "G":
        return g2eval.G2_WORD
    if datum.series == "A":
        return gelfand_tsetlin_word(datum.rank)
    return tuple(datum.longest_element.reduced_word())


def make_config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.subcommand, fmt=ns.fmt, jobs=max(1, ns.jobs))
    if ns.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if hasattr(ns, "series"):
        cfg.series = ns.series
        try:
            datum = parse_series(ns.series)
        except (RootSystemError, ValueError) as exc:
            raise UsageError(str(exc)) from None
    else:
        datum = build_cartan("G", 2)
    if getattr(ns, "word", None):
        cfg.word = parse_int_list(ns.word)
    elif hasattr(ns, "word") and ns.subcommand != "padic-geomalgo":
        cfg.word = _default_word(cfg.series)
    rank = datum.rank
    if ns.subcommand == "verify-tokuyama-typeA":
        if ns.rank < 1:
            raise UsageError("--rank must be positive")
        rank = ns.rank
    lams = [parse_lambda(x) for x in getattr(ns, "lam", [])]
    if getattr(ns, "grid", None) is not None:
        if ns.grid < 0:
            raise UsageError("--grid must be non-negative")
        lams += _grid(rank, ns.grid)
    for lam in lams:
        if len(lam) != rank or any(x < 0 for x in lam):
            raise UsageError(f"lambda {lam} is not a dominant coweight of rank {rank}")
    if ns.subcommand in ("crystal", "mv-eval", "families", "verify-vanishing", "verify-crystal-axioms",
                         "verify-tokuyama-g2", "verify-tokuyama-typeA") and not lams:
        raise UsageError("give --lambda (or --grid)")
    cfg.lambdas = lams
    cfg.options = {k: v for k, v in vars(ns).items()
                   if k not in ("subcommand", "fmt", "jobs", "series", "word", "lam", "grid")}
    if cfg.word and hasattr(ns, "series"):
        try:
            long_word(datum, cfg.word)
        except (RootSystemError, ValueError) as exc:
            raise UsageError(str(exc)) from None
    return cfg


# -- subcommands -------------------------------------------------------------------

def _wd(cfg: RunConfig):
    return lusztig.word_data(parse_series(cfg.series), cfg.word)


def cmd_minors(cfg: RunConfig) -> Report:
    wd = _wd(cfg)
    nodes = []
    for nd in wd.nodes:
        nodes.append({"node": nd.node,
                      "numerator": nd.numerator.to_str(),
                      "denominator": nd.denominator.to_str(),
                      "trails": len(nd.trails)})
    return Report(True, {"series": cfg.series, "word": list(cfg.word), "minors": nodes}, nodes)


def cmd_trails(cfg: RunConfig) -> Report:
    wd = _wd(cfg)
    counts = lusztig.trail_counts(wd)
    rows = [{"i": i, "minor_node": wd.datum.star(i), "trails": c} for i, c in sorted(counts.items())]
    return Report(True, {"series": cfg.series, "word": list(cfg.word),
                         "counts": {str(i): c for i, c in sorted(counts.items())}}, rows)


def cmd_sfunctions(cfg: RunConfig) -> Report:
    wd = _wd(cfg)
    r = wd.datum.rank
    forms = lusztig.s_forms(wd)
    mc = lusztig.choose_monomials(wd)
    rows = [{"k": k, "monomial": mc.monomial(k).to_str(), "node": a, "form": f.to_str()}
            for k, (a, f) in enumerate(forms, start=1)]
    result = {
        "series": cfg.series, "word": list(cfg.word),
        "s_functions": {str(i): lusztig.s_function(wd, i).to_str() for i in range(1, r + 1)},
        "bounding_forms": rows,
        "g_polynomials": {str(i): lusztig.g_polynomial(wd, i).to_str() for i in range(1, r + 1)},
    }
    return Report(True, result, rows)


def cmd_crystal(cfg: RunConfig) -> Report:
    wd = _wd(cfg)
    rows, summary = [], []
    for lam in cfg.lambdas:
        members = lusztig.enumerate_crystal(wd, tuple(x + 1 for x in lam))
        for m in members:
            rows.append({"lambda": ",".join(map(str, lam)), "m": ",".join(map(str, m)),
                         "weight": ",".join(map(str, lusztig.weight_of(wd, m))),
                         "s": ",".join(map(str, lusztig.bounding_data(wd, lam, m)))})
        summary.append({"lambda": list(lam), "size": len(members)})
    return Report(True, {"series": cfg.series, "word": list(cfg.word), "crystals": summary}, rows)


def cmd_mv_eval(cfg: RunConfig) -> Report:
    m = parse_int_list(cfg.options["m"])
    out = []
    for lam in cfg.lambdas:
        fn = g2eval.augmented if cfg.options.get("augmented") else g2eval.mv_integral
        try:
            c = fn(lam, m)
        except g2eval.G2InputError as exc:
            raise UsageError(str(exc)) from None
        out.append({"lambda": list(lam), **c.to_json()})
    return Report(True, out, out)


def _families_one(lam, cap):
    rel, dis = resonance.enumerate_families(lam, cap)
    return [dict(f.to_json(), crystal=resonance.crystal_check(f).to_json(),
                 family_sum=resonance.family_sum(lam, f).to_str()) for f in rel + dis]


def _vanishing_one(lam, cap):
    _, dis = resonance.enumerate_families(lam, cap)
    bad = []
    for f in dis:
        s = resonance.family_sum(lam, f)
        if s:
            bad.append({"head": list(f.head), "sum": s.to_str()})
    return {"lambda": list(lam), "disjoint_families": len(dis), "nonzero": bad, "ok": not bad}


def _axioms_one(lam, cap):
    rel, dis = resonance.enumerate_families(lam, cap)
    failures, untruncated = [], []
    for f in dis:
        rep = resonance.crystal_check(f)
        if not rep.passed:
            failures.append({"head": list(f.head), **rep.to_json()})
    for f in rel:
        if any(A.decoration > 0 for A in f.arrays.values()):
            rep = resonance.crystal_check(f)
            if rep.passed or not rep.truncated:
                untruncated.append({"head": list(f.head), **rep.to_json()})
    return {"lambda": list(lam), "disjoint_families": len(dis), "relevant_families": len(rel),
            "failures": failures, "relevant_not_truncated": untruncated,
            "ok": not failures and not untruncated}


def _tokuyama_g2_one(lam, variant):
    sums = {"v1": tokuyama.g2_sum_v1, "v2": tokuyama.g2_sum_v2, "truncated": tokuyama.g2_truncated_sum}
    rep = tokuyama.verify(sums[variant](lam), tokuyama.product_side(tokuyama.g2_datum(), lam))
    return {"lambda": list(lam), "variant": variant, **rep.to_json()}


def _tokuyama_a_one(lam, rank):
    rep = tokuyama.verify(tokuyama.typeA_sum(rank, lam), tokuyama.product_side(build_cartan("A", rank), lam))
    return {"lambda": list(lam), "rank": rank, **rep.to_json()}


def _map(cfg: RunConfig, fn: Callable, extra) -> list:
    args = [(lam, extra) for lam in cfg.lambdas]
    if cfg.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_call, [fn] * len(args), args))
    return [fn(*a) for a in args]


def _call(fn, a):
    return fn(*a)


def _g2_only(cfg: RunConfig) -> None:
    for lam in cfg.lambdas:
        if len(lam) != 2:
            raise UsageError("this subcommand is specific to G2; lambda must have two coordinates")


def cmd_families(cfg: RunConfig) -> Report:
    _g2_only(cfg)
    per = _map(cfg, _families_one, cfg.options["decoration_cap"])
    rows = [{"lambda": ",".join(map(str, f["lambda"])), "head": ",".join(map(str, f["head"])),
             "lambda_relevant": f["lambda_relevant"], "totally_resonant": f["totally_resonant"],
             "members": len(f["members"]), "crystal_passed": f["crystal"]["passed"],
             "family_sum": f["family_sum"]} for fams in per for f in fams]
    return Report(True, [f for fams in per for f in fams], rows)


def cmd_verify_vanishing(cfg: RunConfig) -> Report:
    _g2_only(cfg)
    per = _map(cfg, _vanishing_one, cfg.options["decoration_cap"])
    return Report(all(r["ok"] for r in per), per, per)


def cmd_verify_crystal_axioms(cfg: RunConfig) -> Report:
    _g2_only(cfg)
    per = _map(cfg, _axioms_one, cfg.options["decoration_cap"])
    return Report(all(r["ok"] for r in per), per, per)


def cmd_verify_tokuyama_g2(cfg: RunConfig) -> Report:
    _g2_only(cfg)
    per = _map(cfg, _tokuyama_g2_one, cfg.options["variant"])
    return Report(all(r["equal"] for r in per), per, per)


def cmd_verify_tokuyama_typea(cfg: RunConfig) -> Report:
    per = _map(cfg, _tokuyama_a_one, cfg.options["rank"])
    return Report(all(r["equal"] for r in per), per, per)


def cmd_padic_geomalgo(cfg: RunConfig) -> Report:
    o = cfg.options
    n = o["n"]
    if n < 2:
        raise UsageError("--n must be at least 2")
    word = cfg.word or gelfand_tsetlin_word(n - 1)
    try:
        long_word(build_cartan("A", n - 1), word)
    except (RootSystemError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    rep = padic.verify_geomalgo(word, n, o["samples"], o["prime"], o["seed"])
    return Report(rep.ok, rep.to_json(), [rep.to_json()])


def cmd_padic_appendix(cfg: RunConfig) -> Report:
    o = cfg.options
    rep = padic.verify_appendix(o["samples"], o["prime"], o["seed"])
    return Report(rep.ok, rep.to_json(), [rep.to_json()])


COMMANDS: dict[str, Callable[[RunConfig], Report]] = {
    "minors": cmd_minors,
    "trails": cmd_trails,
    "sfunctions": cmd_sfunctions,
    "crystal": cmd_crystal,
    "mv-eval": cmd_mv_eval,
    "families": cmd_families,
    "verify-vanishing": cmd_verify_vanishing,
    "verify-crystal-axioms": cmd_verify_crystal_axioms,
    "verify-tokuyama-g2": cmd_verify_tokuyama_g2,
    "verify-tokuyama-typeA": cmd_verify_tokuyama_typea,
    "padic-geomalgo": cmd_padic_geomalgo,
    "padic-appendix": cmd_padic_appendix,
}


# -- output ---------------------------------------------------------------------------

def _flat(v):
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v)) if all(not isinstance(x, (dict, list)) for x in v) else json.dumps(v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return v


def render(cfg: RunConfig, report: Report) -> str:
    if cfg.fmt == "json":
        doc = {"schema": SCHEMA, "command": cfg.subcommand, "ok": report.ok, "result": report.result}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = report.rows if report.rows is not None else [{"result": report.result}]
    if cfg.fmt == "csv":
        buf = io.StringIO()
        keys: list[str] = []
        for r in rows:
            keys.extend(k for k in r if k not in keys)
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _flat(v) for k, v in r.items()})
        return buf.getvalue()
    lines = [f"{cfg.subcommand}: {'ok' if report.ok else 'MISMATCH'}"]
    for r in rows:
        lines.append("  " + "  ".join(f"{k}={_flat(v)}" for k, v in r.items()))
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    report = COMMANDS[cfg.subcommand](cfg)
    text = render(cfg, report)
    out.write(text)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir:
        os.makedirs(outdir, exist_ok=True)
        with open(os.path.join(outdir, f"{cfg.subcommand}.{cfg.fmt}"), "w") as fh:
            fh.write(text)
    return 0 if report.ok else 1


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn "--lambda -1,0" into "--lambda=-1,0" so argparse does not read a flag."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in ("--lambda", "--m"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(a)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(ns)
        return run(cfg)
    except UsageError as exc:
        print(f"resonantmv: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
