"""Command-line entry point: ``pareto-gauge <verb> ...``.

Results go to stdout as JSON (CSV for ``sweep``), diagnostics to stderr.
Exit status is 0 on success, 1 when a requested check fails and 2 on
malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import demos
from .indexes import IndexSpec, eval_index_many
from .inefficiency import inefficiency_report, sweep_family, sweep_to_csv
from .pareto import eps_approx_construct, pareto_filter, verify_eps_approx
from .policies import SMN_CLOSED_FORMS, PolicySpec, TieBreak, apply_policy, index_opt, max_min_fair, smn_closed_form
from .utility_model import DimensionError, DomainError, FiniteUtilitySet, SmnFamily
from .verify import run_suite

SEED_ENV = "PARETO_GAUGE_SEED"


class InputError(ValueError):
    """Malformed command-line input; reported with exit status 2."""


def _sig(obj):
    """Round every float to 10 significant digits for output."""
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
        return float(f"{x:.10g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _sig(obj.tolist())
    if isinstance(obj, dict):
        return {k: _sig(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sig(v) for v in obj]
    return obj


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(_sig(obj), allow_nan=False) + "\n")


def _load_json(text: str, what: str):
    source = text
    if not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        if not path.is_file():
            raise InputError(f"{what}: no such file {text!r}")
        source = path.read_text()
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc})") from None


def _load_set(text: str | None) -> FiniteUtilitySet:
    if text is None:
        raise InputError("--input is required for this verb")
    obj = _load_json(text, "--input")
    if not isinstance(obj, dict) or "points" not in obj:
        raise InputError('--input: missing field "points"')
    try:
        return FiniteUtilitySet.from_json(obj)
    except (ValueError, TypeError) as exc:
        raise InputError(f'--input: field "points": {exc}') from None


def _parse_index(text: str) -> IndexSpec:
    try:
        if text.lstrip().startswith("{"):
            obj = json.loads(text)
            if "kind" not in obj:
                raise InputError('--index: missing field "kind"')
            return IndexSpec.from_json(obj)
        return IndexSpec(text)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"--index: {exc}") from None


def _parse_policy(text: str, tiebreak: str) -> PolicySpec:
    if text.lstrip().startswith("{"):
        try:
            return PolicySpec.from_json(json.loads(text))
        except (ValueError, TypeError, KeyError) as exc:
            raise InputError(f"--policy: {exc}") from None
    if text in ("maxmin", "max-min", "leximin"):
        return max_min_fair(tiebreak)
    try:
        return index_opt(IndexSpec(text), tiebreak)
    except ValueError as exc:
        raise InputError(f"--policy: {exc}") from None


def _parse_kv(text: str, flag: str) -> dict:
    out = {}
    for part in filter(None, text.split(",")):
        if "=" not in part:
            raise InputError(f"{flag}: expected key=value pairs, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _parse_smn(text: str, need_m: bool = True) -> dict:
    kv = _parse_kv(text, "--smn")
    try:
        out = {"N": int(kv["N"])}
        if need_m:
            out["M"] = float(kv["M"])
    except KeyError as exc:
        raise InputError(f"--smn: missing field {exc.args[0]}") from None
    except ValueError as exc:
        raise InputError(f"--smn: {exc}") from None
    return out


def _floats(text: str, flag: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"{flag}: {exc}") from None


def cmd_index(args) -> int:
    f = _parse_index(args.index)
    U = _load_set(args.input)
    if f.kind == "owa" and len(f.weights) != U.dim:
        raise InputError(f'--index: field "weights" has {len(f.weights)} entries, points have {U.dim}')
    vals = eval_index_many(f, U.points)
    flags = []
    if f.kind == "jain":
        flags += [f"point {i}: all-zero, Jain defined as 1/n" for i in np.flatnonzero(~U.points.any(axis=1))]
    flags += [f"point {i}: outside the domain of {f.label}" for i in np.flatnonzero(np.isnan(vals))]
    _emit({"index": f.to_json(), "values": [None if np.isnan(v) else v for v in vals], "flags": flags})
    return 0


def cmd_allocate(args) -> int:
    if args.smn:
        if args.policy not in SMN_CLOSED_FORMS:
            raise InputError(f"--policy: with --smn use one of {', '.join(SMN_CLOSED_FORMS)}")
        kv = _parse_smn(args.smn)
        point = smn_closed_form(args.policy, SmnFamily(kv["M"], kv["N"]))
    else:
        U = _load_set(args.input)
        point = apply_policy(_parse_policy(args.policy, args.tiebreak), U)
    _emit({"point": point})
    return 0


def cmd_pareto(args) -> int:
    _emit(pareto_filter(_load_set(args.input)).to_json())
    return 0


def cmd_eps_approx(args) -> int:
    U = _load_set(args.input)
    S = eps_approx_construct(U, args.eps)
    ok, witness = verify_eps_approx(S, U, args.eps)
    _emit({"points": S.points, "eps": args.eps, "verified": ok})
    return 0 if ok else 1


def cmd_ineff(args) -> int:
    U = _load_set(args.input)
    if args.beta is not None:
        beta = _load_json(args.beta, "--beta")
        if not isinstance(beta, list):
            raise InputError("--beta: expected a JSON list of coordinates")
    elif args.policy is not None:
        beta = apply_policy(_parse_policy(args.policy, args.tiebreak), U)
    else:
        raise InputError("ineff needs --beta or --policy")
    f = _parse_index(args.index) if args.index else None
    _emit(inefficiency_report(beta, U, f).to_json())
    return 0


def cmd_sweep(args) -> int:
    kv = _parse_smn(args.smn, need_m=False)
    Ms = _floats(args.Ms, "--Ms")
    if not Ms:
        raise InputError("--Ms: at least one value required")
    policy = args.policy if args.policy in SMN_CLOSED_FORMS else _parse_policy(args.policy, args.tiebreak)
    measure = args.measure
    if measure.lstrip().startswith("{"):
        measure = _parse_index(measure)
    rows = sweep_family(policy, measure, Ms, kv["N"], args.resolution)
    sys.stdout.write(sweep_to_csv(rows))
    return 0


def cmd_demo(args) -> int:
    catalog = {**demos.GALLERY_DEMOS, **demos.CONTROL_DEMOS}
    names = list(catalog) if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in catalog:
        raise InputError(f"demo: unknown name {args.name!r}; choose from {', '.join(catalog)}")
    reports, status = [], 0
    for name in names:
        r = catalog[name]()
        expected = name in demos.GALLERY_DEMOS
        if r.passed != expected:
            status = 1
        out = r.to_json()
        out["expected"] = expected
        out["demo"] = name
        reports.append(out)
        if args.csv_dir:
            r.write_csvs(args.csv_dir)
    _emit(reports if len(reports) > 1 else reports[0])
    return status


def cmd_verify(args) -> int:
    results = run_suite(args.seed, args.only or None)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  [{r.claim}]  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"seed={args.seed} properties={len(results)} failed={failed}")
    return 1 if failed else 0


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}: expected an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pareto-gauge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    def tiebreak(p):
        p.add_argument("--tiebreak", choices=[t.value for t in TieBreak], default=TieBreak.LEX_MAX.value)

    p = sub.add_parser("index", help="evaluate an index on every point")
    p.add_argument("--index", required=True, help="index name or IndexSpec JSON")
    p.add_argument("--input", "-i")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("allocate", help="apply a policy or an S_MN closed form")
    p.add_argument("--policy", required=True)
    p.add_argument("--smn", help="M=..,N=..")
    p.add_argument("--input", "-i")
    tiebreak(p)
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("pareto", help="Pareto front of a set")
    p.add_argument("--input", "-i")
    p.set_defaults(func=cmd_pareto)

    p = sub.add_parser("eps-approx", help="eps-approximation of the Pareto front")
    p.add_argument("--input", "-i")
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=cmd_eps_approx)

    p = sub.add_parser("ineff", help="inefficiency report for a selected point")
    p.add_argument("--input", "-i")
    p.add_argument("--beta", help="JSON coordinate list")
    p.add_argument("--policy", help="select the point with this policy instead of --beta")
    p.add_argument("--index", help="index for the price-of-anarchy ratio")
    tiebreak(p)
    p.set_defaults(func=cmd_ineff)

    p = sub.add_parser("sweep", help="measure along S_MN for several M (CSV)")
    p.add_argument("--smn", required=True, help="N=..")
    p.add_argument("--Ms", required=True, help="comma-separated M values")
    p.add_argument("--policy", required=True, help="sum|min|product or a policy")
    p.add_argument("--measure", default="poa-sum")
    p.add_argument("--resolution", type=int)
    tiebreak(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("demo", help="run the counterexample gallery")
    p.add_argument("name", nargs="?", default="all")
    p.add_argument("--csv-dir")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--seed", type=int)
    p.add_argument("--only", nargs="*")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except (InputError, DimensionError, DomainError, KeyError, TypeError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"pareto-gauge {args.verb}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
