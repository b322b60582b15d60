"""Command-line front end.

Every verb prints one JSON document (schema ``spr-forge/1``) except
``sweep``, which writes CSV with columns ``omega,re_f,im_f``.

Exit codes: 0 affirmative verdict or success, 1 negative verdict, 2 input
error, 3 internal fault or search exhaustion.

Coefficients are given in descending powers, either inline
(``1,3,3,1``) or as a path to a JSON file of the form
``{"descending": [1, 3, 3, 1]}``.  The explicit key guards against
accidentally passing ascending coefficients.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .config import SynthesisConfig, Tolerances, load_tolerances
from .discrete import schur_check, bilinear_to_continuous, synthesize_discrete
from .errors import (ConsistencyAlarm, PreconditionError, SearchExhausted, SegmentUnstable,
                     SprForgeError)
from .oracles import grid_min_real_part, lambda_grid_roots, schur_cohn, sweep, unit_circle_grid_min
from .polycore import Poly, ZeroPolynomialError, routh_hurwitz
from .segstab import MAX_MINOR_DEGREE, SegmentFamily, lambda_routh_positivity, segment_hurwitz
from .sprcheck import is_spr
from .synthesis import synthesize

SCHEMA = "spr-forge/1"
EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_FAULT = 0, 1, 2, 3

log = logging.getLogger("sprforge.cli")


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------
def parse_coeffs(text: str) -> Poly:
    """Parse ``"1,3,3,1"`` or a JSON file path into a :class:`Poly`."""
    text = text.strip()
    path = Path(text)
    if text.endswith(".json") or (path.suffix and path.exists()):
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read coefficient file {text}: {exc}") from None
        if not isinstance(data, dict) or "descending" not in data:
            raise InputError(f"{text}: expected an object with a 'descending' coefficient list")
        values = data["descending"]
    else:
        values = [v for v in re.split(r"[,\s]+", text) if v]
    try:
        arr = np.array([float(v) for v in values], dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"malformed coefficients: {text!r}") from None
    if arr.size == 0 or not np.all(np.isfinite(arr)):
        raise InputError(f"coefficients must be a nonempty list of finite numbers: {text!r}")
    p = Poly(arr)
    if p.is_zero:
        raise InputError("the zero polynomial is not a valid input")
    return p


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if np.isfinite(v):
            return v
        return "nan" if np.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(obj, complex):
        return [_jsonable(obj.real), _jsonable(obj.imag)]
    if isinstance(obj, Poly):
        return obj.tolist()
    return obj


def dumps(doc: dict) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True)


def _document(command: str, inputs: dict, verdict, result, tol: Tolerances, error=None) -> dict:
    doc = {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "input": inputs,
        "verdict": verdict,
        "result": result,
        "tolerances": tol.to_dict(),
    }
    if error is not None:
        doc["error"] = error
    return doc


# ---------------------------------------------------------------------------
# verbs; each returns (exit code, document)
# ---------------------------------------------------------------------------
def cmd_check_hurwitz(args, tol):
    p = parse_coeffs(args.poly)
    if p.degree < 1:
        raise InputError("Hurwitz test needs degree >= 1")
    r = routh_hurwitz(p)
    return (EXIT_OK if r.hurwitz else EXIT_NEGATIVE,
            _document("check-hurwitz", {"poly": p.tolist()}, r.hurwitz, r.to_dict(), tol))


def cmd_check_schur(args, tol):
    p = parse_coeffs(args.poly)
    ok = schur_check(p, tol)
    res = {"schur": ok, "continuous_image": bilinear_to_continuous(p, tol).tolist()}
    return (EXIT_OK if ok else EXIT_NEGATIVE,
            _document("check-schur", {"poly": p.tolist()}, ok, res, tol))


def cmd_check_segment(args, tol):
    fam = SegmentFamily.normalized(parse_coeffs(args.a), parse_coeffs(args.b))
    v = segment_hurwitz(fam, tol)
    res = v.to_dict()
    if fam.n <= MAX_MINOR_DEGREE:
        mc = lambda_routh_positivity(fam, tol)
        res["minor_check"] = {"stable": mc.stable, "failing_minor": mc.failing_minor}
    return (EXIT_OK if v.stable else EXIT_NEGATIVE,
            _document("check-segment", fam.to_dict(), v.stable, res, tol))


def cmd_check_spr(args, tol):
    num, den = parse_coeffs(args.num), parse_coeffs(args.den)
    cert = is_spr(num, den, tol)
    return (EXIT_OK if cert.verdict else EXIT_NEGATIVE,
            _document("check-spr", {"num": num.tolist(), "den": den.tolist()},
                      cert.verdict, cert.to_dict(), tol))


def _config(args, tol) -> SynthesisConfig:
    kw = {"tol": tol}
    if getattr(args, "h", None):
        h = parse_coeffs(args.h)
        kw["h"] = tuple(h.tolist())
    if getattr(args, "budget", None) is not None:
        kw["lp_max_rounds"] = args.budget
    if getattr(args, "grid_points", None) is not None:
        kw["lp_grid_points"] = args.grid_points
    if getattr(args, "grid_range", None) is not None:
        kw["lp_grid_range"] = tuple(args.grid_range)
    if getattr(args, "workers", None) is not None:
        kw["workers"] = args.workers
    return SynthesisConfig(**kw)


def _refusal(command, inputs, exc: SegmentUnstable, tol):
    return (EXIT_NEGATIVE,
            _document(command, inputs, False, {"segment": exc.verdict.to_dict()}, tol,
                      error={"type": "SegmentUnstable", "message": str(exc)}))


def cmd_synthesize(args, tol):
    fam = SegmentFamily.normalized(parse_coeffs(args.a), parse_coeffs(args.b))
    cfg = _config(args, tol)
    try:
        res = synthesize(fam, cfg)
    except SegmentUnstable as exc:
        return _refusal("synthesize", fam.to_dict(), exc, tol)
    return (EXIT_OK if res.certified else EXIT_FAULT,
            _document("synthesize", fam.to_dict(), res.certified, res.to_dict(), tol))


def cmd_synthesize_discrete(args, tol):
    az, bz = parse_coeffs(args.a), parse_coeffs(args.b)
    inputs = {"az": az.tolist(), "bz": bz.tolist()}
    try:
        res = synthesize_discrete(az, bz, _config(args, tol))
    except SegmentUnstable as exc:
        return _refusal("synthesize-discrete", inputs, exc, tol)
    return (EXIT_OK if res.certified else EXIT_FAULT,
            _document("synthesize-discrete", inputs, res.certified, res.to_dict(), tol))


def _certify_continuous(doc, args):
    fam_d = doc["result"]["family"]
    a, b = Poly(fam_d["a"]), Poly(fam_d["b"])
    c = Poly(doc["result"]["c_final"])
    checks = {}
    fam = SegmentFamily(a, b)
    lam = lambda_grid_roots(fam, args.lambda_samples)
    checks["segment_max_real_root"] = lam.max_real_part
    checks["degree_match"] = c.degree == a.degree
    ga = grid_min_real_part(c, a, args.omega_max, args.samples)
    gb = grid_min_real_part(c, b, args.omega_max, args.samples)
    checks["min_re_a"] = ga.min_value
    checks["min_re_b"] = gb.min_value
    sweep_min = np.inf
    for lv in np.linspace(0.0, 1.0, args.lambda_sweep):
        g = grid_min_real_part(c, fam.member(lv), args.omega_max, max(args.samples // 10, 2))
        sweep_min = min(sweep_min, g.min_value)
    checks["lambda_sweep_min_re"] = sweep_min
    ok = (lam.max_real_part < 0 and checks["degree_match"] and ga.min_value > 0
          and gb.min_value > 0 and sweep_min > 0)
    return ok, checks


def _certify_discrete(doc, args):
    res = doc["result"]
    az, bz, cz = Poly(res["az"]), Poly(res["bz"]), Poly(res["c_z"])
    checks = {"degree_bound": cz.degree <= az.degree}
    schur = all(schur_cohn(Poly((1 - lv) * az.coeffs + lv * bz.coeffs))
                for lv in np.linspace(0.0, 1.0, args.lambda_samples))
    checks["segment_schur_on_grid"] = schur
    ga = unit_circle_grid_min(cz, az, args.samples)
    gb = unit_circle_grid_min(cz, bz, args.samples)
    checks["min_re_a"] = ga.min_value
    checks["min_re_b"] = gb.min_value
    ok = checks["degree_bound"] and schur and ga.min_value > 0 and gb.min_value > 0
    return ok, checks


def cmd_certify(args, tol):
    src = sys.stdin.read() if args.result == "-" else Path(args.result).read_text()
    try:
        doc = json.loads(src)
    except json.JSONDecodeError as exc:
        raise InputError(f"not a JSON document: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise InputError(f"expected a {SCHEMA} document")
    command = doc.get("command")
    if not doc.get("verdict") or doc.get("result") is None:
        raise InputError("document does not hold a successful synthesis")
    if command == "synthesize":
        ok, checks = _certify_continuous(doc, args)
    elif command == "synthesize-discrete":
        ok, checks = _certify_discrete(doc, args)
    else:
        raise InputError(f"cannot certify a '{command}' document")
    opts = {"omega_max": args.omega_max, "samples": args.samples,
            "lambda_samples": args.lambda_samples, "lambda_sweep": args.lambda_sweep}
    return (EXIT_OK if ok else EXIT_NEGATIVE,
            _document("certify", {"of": command, "options": opts}, ok, checks, tol))


def cmd_sweep(args, tol):
    num, den = parse_coeffs(args.num), parse_coeffs(args.den)
    rows = sweep(num, den, args.omega_max, args.samples)
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", newline="")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["omega", "re_f", "im_f"])
        for r in rows:
            w.writerow([repr(float(v)) for v in r])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK, None


def cmd_batch(args, tol):
    jobs = json.loads(Path(args.jobs).read_text())
    if not isinstance(jobs, list):
        raise InputError("batch file must hold a JSON list of jobs")
    argvs = []
    for i, job in enumerate(jobs):
        if not isinstance(job, dict) or "command" not in job:
            raise InputError(f"job {i}: expected an object with a 'command'")
        if job["command"] in ("batch", "sweep"):
            raise InputError(f"job {i}: '{job['command']}' cannot be batched")
        argv = [job["command"]] + [str(a) for a in job.get("args", [])]
        for k, v in sorted(job.get("options", {}).items()):
            argv += [f"--{k}"] + ([str(x) for x in v] if isinstance(v, list) else [str(v)])
        argvs.append(argv)
    with ThreadPoolExecutor(max(1, args.workers or 1)) as pool:
        outcomes = list(pool.map(lambda av: _execute(av, tol), argvs))
    results = [{"exit_code": code, "document": doc} for code, doc in outcomes]
    worst = max((code for code, _ in outcomes), default=EXIT_OK)
    return worst, _document("batch", {"jobs": len(jobs)}, worst == EXIT_OK,
                            {"results": results}, tol)


# ---------------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------------
def _tol_override(text: str) -> tuple[str, float]:
    key, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected KEY=VALUE")
    return key.strip(), float(val)


def _common_options(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--tol-file", default=default,
                   help="JSON file of tolerance overrides (default: $SPR_FORGE_TOL_FILE)")
    p.add_argument("--tol", action="append", type=_tol_override, default=default,
                   metavar="KEY=VALUE", help="override one tolerance, e.g. pos=1e-10")
    p.add_argument("-o", "--output", default=default,
                   help="write output here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true",
                   default=default if default is not None else False)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spr-forge", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common_options(p, None)
    p.set_defaults(tol=[])
    # the same options are accepted after the verb; SUPPRESS keeps the
    # top-level values when they are not repeated there
    common = argparse.ArgumentParser(add_help=False)
    _common_options(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def verb(name: str, helptext: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=helptext, parents=[common])

    s = verb("check-hurwitz", "Routh-Hurwitz test")
    s.add_argument("poly")
    s.set_defaults(func=cmd_check_hurwitz)

    s = verb("check-schur", "unit-disc stability test")
    s.add_argument("poly")
    s.set_defaults(func=cmd_check_schur)

    s = verb("check-segment", "Hurwitz stability of the whole segment")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_check_segment)

    s = verb("check-spr", "strict positive realness of num/den")
    s.add_argument("num")
    s.add_argument("den")
    s.set_defaults(func=cmd_check_spr)

    for name, func, helptext in (("synthesize", cmd_synthesize, "common SPR numerator"),
                                 ("synthesize-discrete", cmd_synthesize_discrete,
                                  "common discrete SPR numerator")):
        s = verb(name, helptext)
        s.add_argument("a")
        s.add_argument("b")
        s.add_argument("--h", help="monic degree-n lift polynomial (default (s+1)^n)")
        s.add_argument("--budget", type=int, help="LP cutting-plane rounds")
        s.add_argument("--grid-points", type=int)
        s.add_argument("--grid-range", type=float, nargs=2, metavar=("LO", "HI"))
        s.add_argument("--workers", type=int, help="threads for seed evaluation")
        s.set_defaults(func=func)

    s = verb("certify", "re-check a synthesis result with oracles only")
    s.add_argument("result", help="result JSON file, or - for stdin")
    s.add_argument("--omega-max", type=float, default=1e6)
    s.add_argument("--samples", type=int, default=100_000)
    s.add_argument("--lambda-samples", type=int, default=2000)
    s.add_argument("--lambda-sweep", type=int, default=101)
    s.set_defaults(func=cmd_certify)

    s = verb("sweep", "CSV of omega, Re f(jw), Im f(jw)")
    s.add_argument("num")
    s.add_argument("den")
    s.add_argument("--omega-max", type=float, default=1e3)
    s.add_argument("--samples", type=int, default=2001)
    s.set_defaults(func=cmd_sweep)

    s = verb("batch", "run a JSON list of jobs")
    s.add_argument("jobs")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_batch)
    return p


_NEG_NUMBER = re.compile(r"^-(\d|\.\d)")


def _protect_negatives(argv: list[str]) -> list[str]:
    # "-1,2" would otherwise be taken for an option; a leading space keeps it positional
    return [" " + a if _NEG_NUMBER.match(a) else a for a in argv]


def _execute(argv: list[str], base_tol: Tolerances | None = None):
    """Parse and run one command; returns ``(exit code, document or None)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negatives(list(argv)))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return code, None
    try:
        tol = load_tolerances(args.tol_file) if base_tol is None or args.tol_file else base_tol
        if args.tol:
            tol = tol.replace(**dict(args.tol))
    except (OSError, ValueError, TypeError) as exc:
        return EXIT_INPUT, _document(args.command, {}, None, None, Tolerances(),
                                     error={"type": "InputError", "message": str(exc)})
    if args.command == "sweep" and args.output is None:
        args.output = "-"
    try:
        return args.func(args, tol)
    except (InputError, PreconditionError, ZeroPolynomialError, OSError) as exc:
        code, err = EXIT_INPUT, _error(exc)
    except SprForgeError as exc:
        code, err = EXIT_FAULT, _error(exc)
    except Exception as exc:  # noqa: BLE001 -- reported as an internal fault
        log.debug("internal fault", exc_info=True)
        code, err = EXIT_FAULT, _error(exc)
    return code, _document(args.command, {}, None, None, tol, error=err)


def _error(exc: Exception) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, SearchExhausted):
        err["diagnostics"] = exc.diagnostics
    return err


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("-o", "--output")
    pre.add_argument("-v", "--verbose", action="store_true")
    known, _ = pre.parse_known_args(_protect_negatives(argv))
    logging.basicConfig(level=logging.DEBUG if known.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    code, doc = _execute(argv)
    if doc is not None:
        text = dumps(doc) + "\n"
        if known.output and known.output != "-":
            Path(known.output).write_text(text)
        else:
            sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
