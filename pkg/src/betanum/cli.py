"""Command-line front end: ``betanum <command> (--base SPEC | --corpus NAME) [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Any

import mpmath

from . import __version__
from .beta import (
    DEFAULT_FIN_CAP,
    DEFAULT_J,
    Finite,
    Periodic,
    Witness,
    classify,
    fin_membership,
    find_non_finite,
    pf_check,
    weak_finiteness_witness,
)
from .corpus import CORPUS, BaseSpecError, ResolvedBase, check_entry, load_corpus, parse_base_spec, parse_coords
from .field import FieldError
from .gnum import (
    Counterexample,
    GSequence,
    HypBBounds,
    carry_pattern,
    format_digits,
    greedy_g_digits,
    hyp_b_falsify,
    odometer_successor,
)
from .hypb import hyp_b_decide
from .poly import PolynomialError
from .rauzy import NotSupported, rauzy_cloud, tiling_overlap_estimate
from .substitution import QMInconsistency, qm_report, qm_report_json

SCHEMA_VERSION = 1
COMMANDS = (
    "classify", "expand1", "gseq", "gexp", "succ", "fin", "pf", "witness",
    "qm", "hypb", "carries", "rauzy", "corpus-check",
)  # fmt: skip

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(ValueError):
    pass


def _status_json(st) -> dict:
    if isinstance(st, Finite):
        return {"status": "Finite", "steps": st.steps, "digits": list(st.digits)}
    if isinstance(st, Periodic):
        return {"status": "Periodic", "preperiod": st.preperiod, "period": st.period, "digits": list(st.digits)}
    return {"status": "Unknown", "cap": st.cap}


def _pf_json(pf) -> dict:
    out: dict[str, Any] = {"verdict": pf.verdict, "holds": pf.holds, "certified": pf.certified}
    if pf.J is not None:
        out.update(J=pf.J, C=pf.C, count=pf.count, inconclusive=pf.inconclusive)
    if pf.counterexample is not None:
        out["counterexample"] = {
            "x": pf.counterexample.to_json(),
            "coeffs": list(pf.counterexample_coeffs),
            **_status_json(pf.counterexample_status),
        }
    return out


def _hypb_outcome_json(o) -> dict:
    if isinstance(o, Counterexample):
        return {
            "verdict": o.kind,
            "N": o.N,
            "m": o.m,
            "k": o.k,
            "before": format_digits(o.before),
            "after": format_digits(o.after),
        }
    return {"verdict": o.kind, "cells": o.cells}


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for this command")
    return v


# -- commands ---------------------------------------------------------------------------


def cmd_classify(base: ResolvedBase, args) -> dict:
    return classify(base.field).to_json()


def cmd_expand1(base: ResolvedBase, args) -> dict:
    return {
        "word": str(base.word),
        "preperiod": base.word.k,
        "period": list(base.word.period),
        "v": [v.to_json() for v in base.V],
        "v_size": len(base.V),
    }


def cmd_gseq(base: ResolvedBase, args) -> dict:
    count = args.count if args.count is not None else 10
    if count < 1:
        raise UsageError("--count must be >= 1")
    return {"G": GSequence(base.word).values(count - 1)}


def cmd_gexp(base: ResolvedBase, args) -> dict:
    n = _need(args, "n")
    if n < 0:
        raise UsageError("--n must be >= 0")
    return {"n": n, "digits": format_digits(greedy_g_digits(n, GSequence(base.word)))}


def cmd_succ(base: ResolvedBase, args) -> dict:
    n = _need(args, "n")
    if n < 0:
        raise UsageError("--n must be >= 0")
    G = GSequence(base.word)
    d = greedy_g_digits(n, G)
    s = odometer_successor(d, G)
    return {"n": n, "digits": format_digits(d), "successor": format_digits(s)}


def cmd_fin(base: ResolvedBase, args) -> dict:
    x = parse_coords(_need(args, "x"), base.field)
    cap = args.cap or DEFAULT_FIN_CAP
    return {"x": x.to_json(), **_status_json(fin_membership(x, cap))}


def cmd_pf(base: ResolvedBase, args) -> dict:
    out = _pf_json(
        pf_check(
            base.field,
            J=args.J or DEFAULT_J,
            C=args.C,
            cap=args.cap or DEFAULT_FIN_CAP,
            word=base.word,
            samples=args.samples,
            seed=args.seed,
        )
    )
    if args.find_non_finite:
        hit = find_non_finite(base.field, J=args.J or DEFAULT_J, C=args.C, cap=args.cap or DEFAULT_FIN_CAP)
        out["non_finite"] = None if hit is None else {"coeffs": list(hit[0]), "x": hit[1].to_json(), **_status_json(hit[2])}
    return out


def cmd_witness(base: ResolvedBase, args) -> dict:
    x = parse_coords(_need(args, "x"), base.field)
    try:
        res = weak_finiteness_witness(x, J=args.J or DEFAULT_J, C=args.C, cap=args.cap or DEFAULT_FIN_CAP)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if isinstance(res, Witness):
        return {"verdict": "Witness", "x": x.to_json(), "y": res.y.to_json(), "k": res.k, "y_coeffs": list(res.y_coeffs)}
    return {"verdict": "NoneFound", "x": x.to_json(), "J": res.J, "C": res.C, "searched": res.searched}


def cmd_qm(base: ResolvedBase, args) -> dict:
    return qm_report_json(qm_report(base.field, base.word, base.V))


def cmd_hypb(base: ResolvedBase, args) -> dict:
    bounds = HypBBounds.parse(args.bounds) if args.bounds else HypBBounds()
    dec = hyp_b_decide(base.field, base.word, base.V)
    out: dict[str, Any] = {
        "decision": {
            "verdict": dec.kind,
            "holds": dec.holds,
            "grade": dec.grade,
            "pf": _pf_json(dec.pf),
            "qm_holds": dec.qm.holds,
        },
        "bounds": bounds.to_json(),
    }
    if args.b is not None:
        if args.b < 0:
            raise UsageError("--b must be >= 0")
        out["b"] = args.b
        out["search"] = _hypb_outcome_json(hyp_b_falsify(GSequence(base.word), args.b, bounds))
    return out


def cmd_carries(base: ResolvedBase, args) -> dict:
    p = base.field.minpoly.coeffs
    d = len(p) - 1
    # c_k = G_{k+d} - sum_{i<d} (-p_i) G_{k+i}
    summands = [(i, -c) for i, c in enumerate(p[:-1]) if c]
    K = args.count if args.count is not None else 200
    ref = base.entry.carry_reference if base.entry else None
    cp = carry_pattern(GSequence(base.word), d, summands, K, ref)
    out = {
        "relation": {"target": d, "summands": [list(s) for s in summands]},
        "K": K,
        "value_set": cp.value_set,
        "period": cp.period,
        "preperiod": cp.preperiod,
        "classes": {str(k): v for k, v in cp.classes.items()},
        "head": cp.values[:24],
    }
    if ref:
        out["reference"] = {f"{m}:{r}": v for (m, r), v in ref.items()}
        out["reference_mismatches"] = [f"{m}:{r}" for m, r in cp.mismatches]
    return out


def cmd_rauzy(base: ResolvedBase, args) -> dict | str:
    L = args.depth if args.depth is not None else 12
    cloud = rauzy_cloud(base.field, L, args.max_points)
    if args.format == "csv":
        return cloud.to_csv()
    if args.format == "ppm":
        return cloud.to_ppm()
    out = cloud.to_json(include_points=args.points)
    if len(cloud.lattice):
        out["overlap"] = tiling_overlap_estimate(cloud, args.translates, args.cell).to_json()
    return out


def cmd_corpus_check(args) -> dict:
    names = [args.corpus] if args.corpus else list(CORPUS)
    rows = {}
    for name in names:
        if name not in CORPUS:
            raise BaseSpecError(f"unknown corpus entry {name!r}")
        ok, computed, stored = check_entry(CORPUS[name])
        rows[name] = {"matches": ok, "computed": computed} if not ok else {"matches": True}
    return {"entries": rows, "all_match": all(r["matches"] for r in rows.values())}


HANDLERS = {
    "classify": cmd_classify,
    "expand1": cmd_expand1,
    "gseq": cmd_gseq,
    "gexp": cmd_gexp,
    "succ": cmd_succ,
    "fin": cmd_fin,
    "pf": cmd_pf,
    "witness": cmd_witness,
    "qm": cmd_qm,
    "hypb": cmd_hypb,
    "carries": cmd_carries,
    "rauzy": cmd_rauzy,
}


# -- plumbing ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="betanum", description="Beta-expansions and linear recurrence odometers.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--base", help="polynomial such as 'x^3-x-1' (optionally '@[a/b,c/d]') or digit word '1100^w'")
    src.add_argument("--corpus", help=f"named base: {', '.join(CORPUS)}")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="table", action="store_false", help="JSON output (default)")
    fmt.add_argument("--table", dest="table", action="store_true", help="human-readable output")
    p.add_argument("--bounds", help="Hypothesis B search box k_max,w,m_max,n_max (m_max '+12' means k+b+12)")
    p.add_argument("--b", type=int, help="gap width for the Hypothesis B search")
    p.add_argument("--count", type=int, help="number of terms (gseq, carries)")
    p.add_argument("--n", type=int, help="nonnegative integer (gexp, succ)")
    p.add_argument("--x", help="field element as power-basis coordinates 'c0,c1,...'")
    p.add_argument("--cap", type=int, help="orbit length cap for finiteness checks")
    p.add_argument("--J", type=int, help="number of inverse powers in the enumeration domain")
    p.add_argument("--C", type=int, help="coefficient bound in the enumeration domain")
    p.add_argument("--samples", type=int, help="test a seeded random subset of the domain")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--find-non-finite", action="store_true", help="pf: also search signed coefficients")
    p.add_argument("--depth", type=int, help="word length L for rauzy")
    p.add_argument("--max-points", type=int, default=10**5)
    p.add_argument("--format", choices=("json", "csv", "ppm"), default="json")
    p.add_argument("--points", action="store_true", help="rauzy: include the points in JSON output")
    p.add_argument("--translates", type=int, default=2)
    p.add_argument("--cell", type=float, default=0.05)
    p.add_argument("--precision", type=int, default=20, help="decimal digits for printed beta")
    p.set_defaults(table=False)
    return p


def load_schema() -> dict:
    """The JSON schema every report validates against."""
    text = resources.files("betanum").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def render_table(report: dict) -> str:
    rows = list(_flatten(report))
    width = max(len(k) for k, _ in rows)
    fmt = lambda v: ", ".join(map(str, v)) if isinstance(v, list) else str(v)  # noqa: E731
    return "\n".join(f"{k.ljust(width)}  {fmt(v)}" for k, v in rows) + "\n"


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    report: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "command": args.command}
    code = EXIT_OK
    try:
        if args.command == "corpus-check":
            report["result"] = cmd_corpus_check(args)
        else:
            if args.base is None and args.corpus is None:
                raise UsageError("one of --base or --corpus is required")
            base = load_corpus(args.corpus) if args.corpus else parse_base_spec(args.base)
            desc = base.describe()
            desc["beta"] = mpmath.nstr(base.field.approx(max(1, args.precision) + 5), max(1, args.precision))
            report["base"] = desc
            if base.word is None and args.command != "classify":
                raise UsageError(f"{args.command} needs a Parry number; no quasi-greedy period found within bound")
            result = HANDLERS[args.command](base, args)
            if isinstance(result, str):
                out.write(result)
                return EXIT_OK
            report["result"] = result
    except NotSupported as e:
        report["error"] = {"kind": "not_supported", "message": str(e)}
        code = EXIT_UNSUPPORTED
    except (UsageError, BaseSpecError, PolynomialError, FieldError, ValueError) as e:
        report["error"] = {"kind": "input", "message": str(e)}
        code = EXIT_USAGE
    except (QMInconsistency, AssertionError) as e:
        report["error"] = {"kind": "internal", "message": str(e)}
        code = EXIT_INTERNAL
    if args.table:
        out.write(render_table(report))
    else:
        out.write(json.dumps(report, indent=2) + "\n")
    return code


def main() -> None:  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
