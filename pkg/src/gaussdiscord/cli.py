"""Command-line interface: ``gaussdiscord {compute,sweep,protocol,validate}``.

States are read from a JSON document holding exactly one of

    {"standard": {"a": 10, "b": 10, "c": 9.9498743710662, "d": -9.9498743710662}}
    {"cov": [[...4 rows of 4...]]}            (or a flat list of 16 numbers)
    {"family": {"name": "cc_ca", "c": 9, "q": -1}}

or built directly with ``--family NAME --param k=v ...``.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 validation
failure.  CSV output is UTF-8 with LF newlines and ``repr`` floats, so it is
locale-independent and identical across runs with the same seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .discord import ogd
from .families import (
    FAMILIES,
    FamilyDomainError,
    FamilyParams,
    closed_form_ogd,
    family_parameter_names,
    family_state,
    make_family,
)
from .measurement import SingularityError
from .optimize import EvaluationError
from .protocol import DEFAULT_VS_SCHEDULE, ogd_convergence
from .symplectic import TwoModeCov

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_VALIDATION = 4

MEASURES = ("ogd", "gqd", "renyi2", "closed_form")
SWEEP_COLUMNS = ("sweep_value", "ogd_numeric", "ogd_closed_form", "gqd", "renyi2", "det_local", "det_joint", "branch")
PROTOCOL_COLUMNS = ("vs", "i_local", "i_joint", "gap", "ogd", "abs_gap_minus_ogd")


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class StateSpec:
    state: TwoModeCov
    family: FamilyParams | None = None


def _number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{what} must be a number, got {value!r}")
    return float(value)


def parse_state_document(doc) -> StateSpec:
    if not isinstance(doc, dict):
        raise InputError("state document must be a JSON object")
    keys = [k for k in ("standard", "cov", "family") if k in doc]
    if len(keys) != 1 or len(doc) != 1:
        raise InputError("state document needs exactly one of 'standard', 'cov', 'family'")
    kind, body = keys[0], doc[keys[0]]
    family = None
    if kind == "standard":
        if not isinstance(body, dict) or set(body) != {"a", "b", "c", "d"}:
            raise InputError("'standard' needs keys a, b, c, d")
        state = TwoModeCov.from_standard_form(*(_number(body[k], k) for k in "abcd"))
    elif kind == "cov":
        arr = np.array(body, dtype=object)
        flat = [_number(v, "cov entry") for v in arr.ravel()]
        if len(flat) != 16 or arr.shape not in ((4, 4), (16,)):
            raise InputError("'cov' must be a 4x4 array or 16 numbers in row-major order")
        state = TwoModeCov(np.array(flat).reshape(4, 4))
    else:
        if not isinstance(body, dict) or "name" not in body:
            raise InputError("'family' needs a 'name' and its parameters")
        params = {k: _number(v, k) for k, v in body.items() if k != "name"}
        family = make_family(body["name"], **params)
        state = family_state(family)
    return StateSpec(state.require_physical(), family)


def _parse_params(items) -> dict[str, float]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise InputError(f"--param expects name=value, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise InputError(f"--param {name}: not a number: {value!r}") from None
    return out


def load_state(args) -> StateSpec:
    if args.state and args.family:
        raise InputError("give either --state or --family, not both")
    if args.state:
        try:
            with open(args.state, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read state file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"state file is not valid JSON: {exc}") from None
        return parse_state_document(doc)
    if args.family:
        family = make_family(args.family, **_parse_params(args.param))
        return StateSpec(family_state(family).require_physical(), family)
    raise InputError("no state given; use --state PATH or --family NAME --param k=v")


def parse_range(text: str) -> list[float]:
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise InputError(f"--range expects start:stop:step, got {text!r}") from None
    if not step > 0.0:
        raise InputError("--range step must be positive")
    if stop < start:
        raise InputError("--range stop must not be below start")
    n = int(math.floor((stop - start) / step + 1e-9))
    return [round(start + k * step, 12) for k in range(n + 1)]


def parse_vs(text: str | None) -> list[float]:
    if text is None:
        return list(DEFAULT_VS_SCHEDULE)
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"--vs expects a comma-separated list of numbers, got {text!r}") from None
    if not values or any(not v > 0.0 for v in values):
        raise InputError("--vs values must be positive")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InputError("--vs values must be strictly increasing")
    return values


def parse_measures(text: str | None) -> tuple[str, ...]:
    if text is None:
        return MEASURES
    chosen = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in chosen if m not in MEASURES]
    if bad or not chosen:
        raise InputError(f"--measures must be a subset of {','.join(MEASURES)}")
    return chosen


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    return repr(float(x))


def _write_csv(columns, rows, out_path: str | None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    _emit(buf.getvalue(), out_path)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def compute_record(spec: StateSpec, seed: int) -> dict:
    record = ogd(spec.state, seed).as_record()
    if spec.family is not None:
        cf = closed_form_ogd(spec.family)
        record["family"] = {"name": spec.family.name, **{k: getattr(spec.family, k) for k in family_parameter_names(spec.family.name)}}
        record["closed_form"] = {"ogd": cf.ogd, "det_local": cf.det_local, "det_joint": cf.det_joint, "branch": cf.branch}
    return record


def _render_text(record: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in record.items():
        if isinstance(value, dict):
            lines.extend(_render_text(value, f"{prefix}{key}."))
        else:
            lines.append(f"{prefix}{key}: {_fmt(value)}")
    return lines


def cmd_compute(args) -> int:
    spec = load_state(args)
    record = compute_record(spec, args.seed)
    sys.stdout.write("\n".join(_render_text(record)) + "\n")
    if args.out:
        _emit(json.dumps(record, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _sweep_row(job) -> tuple:
    family, value, measures, seed = job
    row = {c: None for c in SWEEP_COLUMNS}
    row["sweep_value"] = value
    if {"ogd", "gqd", "renyi2"} & set(measures):
        rep = ogd(family_state(family), seed)
        if "ogd" in measures:
            row.update(ogd_numeric=rep.ogd, det_local=rep.det_local, det_joint=rep.det_joint)
        if "gqd" in measures:
            row["gqd"] = rep.gqd
        if "renyi2" in measures:
            row["renyi2"] = rep.renyi2
    if "closed_form" in measures:
        cf = closed_form_ogd(family)
        row.update(ogd_closed_form=cf.ogd, branch=cf.branch)
    return tuple(row[c] for c in SWEEP_COLUMNS)


def sweep_jobs(family_name: str, params: dict[str, float], sweep: str | None, values, measures, seed):
    if family_name not in FAMILIES:
        raise InputError(f"unknown family {family_name!r}; choose from {', '.join(sorted(FAMILIES))}")
    names = family_parameter_names(family_name)
    if sweep is None:
        missing = [n for n in names if n not in params]
        if len(missing) != 1:
            raise InputError(f"fix all but one of {names} with --param (or name the swept one with --sweep)")
        sweep = missing[0]
    if sweep not in names:
        raise InputError(f"family {family_name!r} has no parameter {sweep!r}")
    fixed = {k: v for k, v in params.items() if k != sweep}
    jobs = []
    for value in values:
        family = make_family(family_name, **fixed, **{sweep: value})
        family_state(family).require_physical()
        jobs.append((family, value, measures, seed))
    return jobs


def cmd_sweep(args) -> int:
    if not args.family:
        raise InputError("sweep needs --family")
    if not args.range:
        raise InputError("sweep needs --range start:stop:step")
    jobs = sweep_jobs(
        args.family, _parse_params(args.param), args.sweep, parse_range(args.range), parse_measures(args.measures), args.seed
    )
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]
    _write_csv(SWEEP_COLUMNS, rows, args.out)
    return EXIT_OK


def cmd_protocol(args) -> int:
    spec = load_state(args)
    rows = ogd_convergence(spec.state, parse_vs(args.vs), args.seed)
    _write_csv(PROTOCOL_COLUMNS, [tuple(r) for r in rows], args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    from .validation import render, run_all

    only = None
    if args.criteria:
        try:
            only = [int(tok) for tok in args.criteria.split(",") if tok.strip()]
        except ValueError:
            raise InputError(f"--criteria takes a comma list of integers, got {args.criteria!r}") from None
    checks = run_all(args.seed, corrupt=args.inject_failure, only=only)
    text = render(checks)
    sys.stdout.write(text)
    if args.out:
        _emit(text, args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaussdiscord", description="Gaussian discord measures for two-mode states.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, state=True):
        p.add_argument("--seed", type=int, default=0, help="optimizer start seed (default 0)")
        p.add_argument("--out", help="output path (default stdout)")
        if state:
            p.add_argument("--state", help="JSON state document")
            p.add_argument("--family", help=f"state family: {'|'.join(sorted(FAMILIES))}")
            p.add_argument("--param", action="append", metavar="NAME=VALUE", help="family parameter, repeatable")

    p = sub.add_parser("compute", help="OGD, GQD and Renyi-2 discord of one state")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="sweep one family parameter, write CSV")
    common(p)
    p.add_argument("--range", help="start:stop:step, stop inclusive")
    p.add_argument("--sweep", help="parameter to sweep (default: the one not fixed by --param)")
    p.add_argument("--measures", help=f"comma list from {','.join(MEASURES)} (default all)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (rows stay in sweep order)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("protocol", help="signal-encoding gap versus signal variance, write CSV")
    common(p)
    p.add_argument("--vs", help="comma list of signal variances (default 1,1e2,1e4,1e6,1e8)")
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("validate", help="run the acceptance checks")
    common(p, state=False)
    p.add_argument("--criteria", help="comma list of criterion numbers to run (default all)")
    p.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)
    return parser


def _join_range(argv: list[str]) -> list[str]:
    # "--range -1:1:0.25" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--range":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--range={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_join_range(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (EvaluationError, SingularityError, ArithmeticError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, FamilyDomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
