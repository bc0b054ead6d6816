"""Command-line front end.  Every subcommand prints one JSON report on stdout.

Exit codes: 0 success, 1 domain rejection, 2 usage or input-format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import jsonschema

from .algebra.poly import ExactPoly, to_fraction
from .cech import (
    CocycleError,
    DualCocycle,
    MatLaurent,
    TangentCocycle,
    dual_basis,
    duality_pair,
    gram_matrix,
    hyper_dims,
    poisson_matrix,
    psi_matrix,
    tangent_basis,
)
from .cubic import CameralDataA1, cubic_eval, cubic_tensor
from .hitchin import (
    DivisorP1,
    DomainError,
    HiggsFieldP1,
    cameral_genus,
    dimension_report,
    genericity_check,
    hitchin_map,
    leaf_base,
    spectral_coefficient_a1,
)
from .jets import ParseError, jet_equations, parse_system
from .lie import lie_info
from .periods.calibration import dtau_fd
from .periods.riemann import DegenerateConfiguration, PeriodConfig, period_matrix
from .periods.roots import RootFindingError
from .serialize import dumps


class UsageError(Exception):
    pass


# schemas ---------------------------------------------------------------------------

RATIONAL = {"type": ["string", "integer"], "pattern": r"^\s*-?\d+(/\d+)?\s*$"}
POLY = {"type": "array", "items": RATIONAL}
DIVISOR = {
    "type": "array",
    "minItems": 1,
    "items": {"type": "array", "items": [RATIONAL, {"type": "integer", "minimum": 1}], "minItems": 2,
              "maxItems": 2},
}
MATRIX = {"type": "array", "items": {"type": "array", "items": RATIONAL}}
POLY_MATRIX = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": POLY}}
MAT_LAURENT = {"type": "object", "propertyNames": {"pattern": r"^-?\d+$"}, "additionalProperties": MATRIX}
FAMILY = {"type": "string", "enum": ["A", "B", "C", "D", "E", "F", "G"]}

_BASE = {"type": FAMILY, "rank": {"type": "integer", "minimum": 1}, "divisor": DIVISOR}

SCHEMAS = {
    "dims": {"type": "object", "required": ["type", "rank", "divisor"], "properties": dict(_BASE)},
    "hitchin": {
        "type": "object",
        "required": ["type", "rank", "divisor", "theta"],
        "properties": {**_BASE, "theta": POLY_MATRIX},
    },
    "generic": {
        "type": "object",
        "required": ["divisor"],
        "properties": {**_BASE, "theta": POLY_MATRIX, "b": POLY},
        "oneOf": [{"required": ["b"]}, {"required": ["theta"]}],
    },
    "cech": {
        "type": "object",
        "required": ["type", "rank", "divisor", "theta"],
        "properties": {
            **_BASE,
            "theta": POLY_MATRIX,
            "gram": {"type": "boolean"},
            "alpha": {"type": "object", "required": ["s", "t0", "t1"],
                      "properties": {"s": MAT_LAURENT, "t0": MAT_LAURENT, "t1": MAT_LAURENT}},
            "beta": {"type": "object", "required": ["sigma", "tau0", "tau1"],
                     "properties": {"sigma": MAT_LAURENT, "tau0": MAT_LAURENT, "tau1": MAT_LAURENT}},
        },
    },
    "cubic": {
        "type": "object",
        "required": ["divisor"],
        "properties": {**_BASE, "theta": POLY_MATRIX, "b": POLY, "bdot": POLY, "u": POLY, "v": POLY},
        "oneOf": [{"required": ["b"]}, {"required": ["theta"]}],
    },
    "periods": {
        "type": "object",
        "required": ["b"],
        "properties": {"b": POLY, "divisor": DIVISOR, "bdot": POLY,
                       "forms": {"type": "array", "items": POLY}},
        "dependencies": {"bdot": ["divisor"]},
    },
}


def _validate(job, command: str):
    validator = jsonschema.Draft7Validator(SCHEMAS[command])
    errors = sorted(validator.iter_errors(job), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "/" + "/".join(str(p) for p in err.absolute_path)
        raise UsageError(f"schema error at {path}: {err.message}")


def _load_job(path: str, command: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read job file: {exc}") from exc
    try:
        job = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    _validate(job, command)
    return job


def _poly(data) -> ExactPoly:
    try:
        return ExactPoly.from_json(data)
    except ZeroDivisionError as exc:
        raise UsageError("zero denominator in a rational literal") from exc


def _divisor(job: dict, min_degree: int = 2) -> DivisorP1:
    try:
        return DivisorP1.from_json(job["divisor"], min_degree=min_degree)
    except ZeroDivisionError as exc:
        raise UsageError("zero denominator in a rational literal") from exc


def _theta(job: dict, D: DivisorP1) -> HiggsFieldP1:
    n = job["rank"] + 1
    if job.get("type", "A") != "A":
        raise DomainError("Higgs fields are modelled for type A only")
    theta = HiggsFieldP1([[_poly(e) for e in row] for row in job["theta"]], D)
    if theta.n != n:
        raise DomainError(f"type A{job['rank']} needs {n}x{n} matrices")
    return theta


def _spectral(job: dict, D: DivisorP1) -> ExactPoly:
    if "b" in job:
        return _poly(job["b"])
    theta = _theta({"rank": 1, **job}, D)
    return spectral_coefficient_a1(theta)


def _mat_laurent(n: int, data: dict) -> MatLaurent:
    return MatLaurent.from_json(n, data)


# configuration ------------------------------------------------------------------------

def _period_config(args) -> PeriodConfig:
    cfg = PeriodConfig()
    kw = {}
    if args.nodes is not None:
        kw["nodes"] = args.nodes
        kw["trap_nodes"] = 16 * args.nodes
    if args.tol is not None:
        kw["symmetry_tol"] = args.tol
    return PeriodConfig(**{**cfg.__dict__, **kw})


def _fd_step(args) -> Fraction:
    try:
        h = to_fraction(args.fd_step)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid --fd-step {args.fd_step!r}") from exc
    if h <= 0:
        raise UsageError("--fd-step must be positive")
    return h


def _resolved(args) -> dict:
    return {
        "mode": args.mode,
        "tol": args.tol,
        "nodes": args.nodes,
        "fdStep": args.fd_step,
        "seedFree": args.seed_free,
        "periods": _period_config(args).to_json(),
    }


# subcommands ----------------------------------------------------------------------------

def cmd_info(args) -> tuple[dict, int]:
    return {"info": lie_info(args.family, args.rank)}, 0


def cmd_dims(args):
    job = _load_job(args.job, "dims")
    D = _divisor(job)
    d = D.degree
    out = {"divisor": D, "d": d, "dimensions": dimension_report(job["type"], job["rank"], d),
           "cameral": cameral_genus(job["type"], job["rank"], d)}
    return out, 0


def cmd_hitchin(args):
    job = _load_job(args.job, "hitchin")
    D = _divisor(job)
    theta = _theta(job, D)
    bs = hitchin_map(theta)
    out = {"divisor": D, "theta": theta, "hitchin": [{"degree": i, "b": b} for i, b in enumerate(bs, start=2)]}
    if theta.n == 2:
        b = spectral_coefficient_a1(theta)
        out["spectralCoefficient"] = b
        out["generic"] = genericity_check(b, D)
    lb = leaf_base(bs, D, "A", theta.n - 1)
    out["leafDirections"] = [{"slot": i, "direction": p} for i, p in lb.directions]
    return out, 0


def cmd_generic(args):
    job = _load_job(args.job, "generic")
    D = _divisor(job, min_degree=3)
    b = _spectral(job, D)
    rep = genericity_check(b, D)
    return {"divisor": D, "b": b, "generic": rep}, (0 if rep.ok else 1)


def cmd_jets(args):
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read system file: {exc}") from exc
    V = parse_system(text)
    J = jet_equations(V, args.order)
    return {"system": {"variables": list(V.variables), "generators": [g.to_str() for g in V.generators]},
            "jets": J}, 0


def cmd_cech(args):
    job = _load_job(args.job, "cech")
    D = _divisor(job)
    theta = _theta(job, D)
    out: dict = {"divisor": D, "theta": theta, "hypercohomology": hyper_dims(theta)}
    n = theta.n
    if "alpha" in job and "beta" in job:
        a, b = job["alpha"], job["beta"]
        alpha = TangentCocycle(_mat_laurent(n, a["s"]), _mat_laurent(n, a["t0"]), _mat_laurent(n, a["t1"]))
        beta = DualCocycle(_mat_laurent(n, b["sigma"]), _mat_laurent(n, b["tau0"]), _mat_laurent(n, b["tau1"]))
        out["pairing"] = duality_pair(theta, alpha, beta)
    elif "alpha" in job or "beta" in job:
        raise UsageError("explicit cocycles need both 'alpha' and 'beta'")
    if job.get("gram") or args.gram:
        if D.degree < 3:
            raise DomainError("Gram matrices need divisor degree at least 3")
        tb, db = tangent_basis(theta), dual_basis(theta)
        out["tangentBasis"] = [{"s": c.s, "t0": c.t0, "t1": c.t1} for c in tb.cocycles]
        out["dualBasis"] = [{"sigma": c.sigma, "tau0": c.tau0, "tau1": c.tau1} for c in db]
        out["gram"] = gram_matrix(theta, tb, db)
        out["poisson"] = poisson_matrix(theta, db)
        out["psi"] = psi_matrix(theta, tb, db)
    return out, 0


def cmd_cubic(args):
    job = _load_job(args.job, "cubic")
    D = _divisor(job, min_degree=3)
    b = _spectral(job, D)
    data = CameralDataA1(b, D)
    mode = args.mode
    out: dict = {"divisor": D, "b": b, "genus": data.genus, "mode": mode}
    if data.genus >= 1:
        out["tensor"] = cubic_tensor(data, mode)
    else:
        out["tensor"] = {"genus": 0, "entries": []}
    if "bdot" in job:
        one = ["1"]
        bdot, u, v = _poly(job["bdot"]), _poly(job.get("u", one)), _poly(job.get("v", one))
        out["cubic"] = {"bdot": bdot, "u": u, "v": v, "value": cubic_eval(data, bdot, u, v, mode)}
    return out, 0


def cmd_periods(args):
    job = _load_job(args.job, "periods")
    b = _poly(job["b"])
    cfg = _period_config(args)
    forms = [_poly(f) for f in job["forms"]] if "forms" in job else None
    R = period_matrix(b, cfg, forms=forms)
    out: dict = {"b": b, "riemann": R}
    if "divisor" in job:
        D = _divisor(job, min_degree=3)
        data = CameralDataA1(b, D)
        if "bdot" in job:
            bdot = _poly(job["bdot"])
            fd = dtau_fd(data, bdot, _fd_step(args), cfg)
            out["dtau"] = fd
            if data.genus == 1:
                one = ExactPoly.constant(1)
                A = complex(fd.base.a_periods[0, 0])
                c = complex(cubic_eval(data, bdot, one, one, "exact")) / A**2
                out["cubicNormalised"] = c
                if c != 0:
                    out["ratio"] = complex(fd.richardson[0, 0]) / c
    return out, 0


def cmd_verify(args):
    from .verify import SuiteOptions, run_criterion, CRITERIA

    if args.suite != "default":
        raise UsageError(f"unknown suite {args.suite!r}")
    opts = SuiteOptions(period=_period_config(args), fd_step=_fd_step(args))
    numbers = [args.criterion] if args.criterion else [c[0] for c in CRITERIA]
    results = []
    for num in numbers:
        try:
            r = run_criterion(num, opts)
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
        print(r.line(), file=sys.stderr)
        results.append(r)
    crit = []
    for r in results:
        j = r.to_json()
        j.pop("seconds")
        j["withinTimeLimit"] = r.seconds <= r.limit
        crit.append(j)
    passed = all(r.passed for r in results)
    return {"suite": args.suite, "options": opts.to_json(), "criteria": crit, "pass": passed}, (0 if passed else 1)


COMMANDS = {
    "info": cmd_info, "dims": cmd_dims, "hitchin": cmd_hitchin, "generic": cmd_generic, "jets": cmd_jets,
    "cech": cmd_cech, "cubic": cmd_cubic, "periods": cmd_periods, "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["exact", "float"], default="exact")
    common.add_argument("--tol", type=float, default=None, help="Riemann-matrix symmetry tolerance")
    common.add_argument("--nodes", type=int, default=None, help="Gauss-Legendre nodes per panel")
    common.add_argument("--fd-step", default="1/1000", help="finite-difference step (rational or decimal)")
    common.add_argument("--seed-free", action="store_true", help="reserved; all numerics are deterministic")

    p = _Parser(prog="merohitchin", description="Meromorphic Hitchin systems on P^1.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    s = sub.add_parser("info", parents=[common], help="Lie type data")
    s.add_argument("family")
    s.add_argument("rank", type=int)
    for name, helptext in (("dims", "dimension counts"), ("hitchin", "Hitchin map of a Higgs field"),
                           ("generic", "genericity of the spectral coefficient"),
                           ("cubic", "residue cubic on the leaf base"),
                           ("periods", "Riemann matrix and its derivative")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("job", help="JSON job file, or - for stdin")
    s = sub.add_parser("cech", parents=[common], help="hypercohomology and duality")
    s.add_argument("job")
    s.add_argument("--gram", action="store_true")
    s = sub.add_parser("jets", parents=[common], help="jet-scheme equations")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("file")
    s = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    s.add_argument("--suite", default="default")
    s.add_argument("--criterion", type=int, default=None)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.nodes is not None and args.nodes < 2:
            raise UsageError("--nodes must be at least 2")
        _fd_step(args)
        if args.command == "jets" and args.order < 0:
            raise UsageError("--order must be non-negative")
        report, code = COMMANDS[args.command](args)
        report = {"command": args.command, "config": _resolved(args), **report}
        stdout.write(dumps(report) + "\n")
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, CocycleError, DegenerateConfiguration, RootFindingError, ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
