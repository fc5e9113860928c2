"""Command-line front end: single evaluations, sweeps, q-demo tables, self-test."""
from __future__ import annotations

import argparse
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import thermo
from .errors import CrossCheckFailed, DomainError, NoConvergence, ThermoError
from .qstat import Tail, classify_tail, q_rate

EXIT_OK, EXIT_NOCONV, EXIT_DOMAIN, EXIT_CROSSCHECK, EXIT_USAGE = 0, 2, 3, 4, 64

COLUMNS = ["family", "nu", "z", "d", "t", "mu", "b", "delta", "rho", "a", "q",
           "value", "abs_err", "method", "work", "converged"]
PARAMS = ["nu", "z", "d", "t", "mu", "b", "delta", "rho", "a", "q"]

# grid (and argument) order per family; Kratzel's x travels in the z column
FAMILIES = {
    "general": ("nu", "a", "z", "rho", "d"),
    "i1": ("z", "nu"),
    "i2": ("z", "d", "nu"),
    "i3": ("z", "t", "nu", "mu"),
    "i4": ("z", "b", "delta", "nu"),
    "kratzel": ("nu", "rho", "z"),
}
DEFAULTS = {"a": "1", "d": "inf", "mu": "0.5", "mode": "closed", "rtol": "1e-8", "format": "json"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return f'"{v}"' if not math.isfinite(v) else format(v, ".17g")
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    s = str(v).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def encode(record: dict, fmt: str, columns: list[str]) -> str:
    if fmt == "csv":
        return ",".join(_fmt(record.get(c)) for c in columns)
    return "{" + ", ".join(f'"{c}": {_json_value(record.get(c))}' for c in columns) + "}"


def parse_range(text: str) -> list[float]:
    """Scalar, comma list, ``lin:a:b:n`` or ``log:a:b:n``."""
    text = str(text).strip()
    try:
        if text.startswith(("lin:", "log:")):
            kind, a, b, n = text.split(":")
            a, b, n = float(a), float(b), int(n)
            if n < 1 or a > b:
                raise UsageError(f"bad range {text!r}: need count >= 1 and start <= stop")
            if kind == "log":
                if a <= 0:
                    raise UsageError(f"bad range {text!r}: log spacing needs start > 0")
                return [float(v) for v in np.geomspace(a, b, n)] if n > 1 else [a]
            return [float(v) for v in np.linspace(a, b, n)] if n > 1 else [a]
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _request(family: str, p: dict):
    try:
        if family == "general":
            return thermo.GeneralI(p["nu"], p["a"], p["z"], p["rho"], p["d"])
        if family == "i1":
            return thermo.I1(p["z"], p["nu"])
        if family == "i2":
            return thermo.I2(p["z"], p["d"], p["nu"])
        if family == "i3":
            return thermo.I3(p["z"], p["t"], p["nu"], p["mu"])
        if family == "i4":
            return thermo.I4(p["z"], p["delta"], p["b"], p["nu"])
        if family == "kratzel":
            return thermo.Kratzel(p["nu"], p["rho"], p["z"])
    except TypeError as exc:
        raise DomainError(str(exc)) from None
    raise UsageError(f"unknown family {family!r}")


def evaluate_row(family: str, params: dict, mode: str, rtol: float, timing: bool = False):
    """One output record plus its exit code.

    Failed closed-form rows fall back to the oracle value and are marked
    ``converged = false`` with the failure in the method column.
    """
    start = time.perf_counter()
    rec = {"family": family, **{k: params.get(k) for k in PARAMS}}
    code = EXIT_OK
    try:
        req = _request(family, params)
        res = thermo.evaluate(req, thermo.EvalMode(mode, rtol))
        rec.update(value=float(np.real(res.value)), abs_err=res.abs_error_estimate,
                   method=str(res.method), work=res.work, converged=res.converged)
        if not res.converged:
            code = EXIT_NOCONV
    except DomainError as exc:
        code = EXIT_DOMAIN
        rec.update(value=None, abs_err=None, method=f"DomainError: {exc}", work=0, converged=False)
    except CrossCheckFailed as exc:
        code = EXIT_CROSSCHECK
        rec.update(value=float(np.real(exc.closed.value)), abs_err=exc.closed.abs_error_estimate,
                   method=f"{exc.closed.method}(CrossCheckFailed)", work=exc.closed.work, converged=False)
    except ThermoError as exc:
        code = EXIT_NOCONV
        try:
            oracle = thermo.evaluate(req, thermo.ORACLE)
            rec.update(value=float(np.real(oracle.value)), abs_err=oracle.abs_error_estimate,
                       method=f"{oracle.method}({type(exc).__name__})", work=oracle.work, converged=False)
        except ThermoError:
            rec.update(value=None, abs_err=None, method=type(exc).__name__, work=0, converged=False)
    if timing:
        rec["wall_time_ms"] = (time.perf_counter() - start) * 1e3
    return rec, code


def _row_job(job):
    return evaluate_row(*job)


# ---------------------------------------------------------------- configuration


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment; keys are long flag names."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _settings(args) -> dict:
    """Merge flags > config file > defaults."""
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    merged = dict(DEFAULTS)
    merged.update(cfg)
    for k, v in vars(args).items():
        if v is not None and k not in ("cmd", "config", "func"):
            merged[k] = v
    if merged["mode"] not in ("closed", "oracle", "crosscheck"):
        raise UsageError(f"unknown mode {merged['mode']!r}")
    if merged["format"] not in ("json", "csv"):
        raise UsageError(f"unknown format {merged['format']!r}")
    timing = merged.get("timing", False)
    if isinstance(timing, str):
        timing = timing.strip().lower() in ("1", "true", "yes", "on")
    merged["timing"] = bool(timing)
    try:
        merged["rtol"] = float(merged["rtol"])
        merged["jobs"] = int(merged.get("jobs") or 1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return merged


def _add_param_flags(p: argparse.ArgumentParser):
    for name in PARAMS:
        p.add_argument(f"--{name}", default=None, help=f"{name} (scalar, list a,b,c, lin:a:b:n or log:a:b:n)")
    p.add_argument("--mode", choices=["closed", "oracle", "crosscheck"], default=None)
    p.add_argument("--rtol", type=float, default=None, help="cross-check relative tolerance")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--out", default=None, help="write records here instead of stdout")
    p.add_argument("--config", default=None, help="flat key = value settings file")
    p.add_argument("--timing", action="store_true", default=None, help="add wall_time_ms to records")


def _grid(family: str, s: dict) -> list[dict]:
    names = FAMILIES[family]
    axes = []
    for name in names:
        if s.get(name) is None:
            raise UsageError(f"{family} needs --{name}")
        axes.append(parse_range(s[name]))
    rows = []
    for idx in np.ndindex(*(len(a) for a in axes)):
        rows.append({n: axes[i][j] for i, (n, j) in enumerate(zip(names, idx))})
    return rows


def _open_out(path):
    return open(path, "w", encoding="utf-8", newline="") if path else sys.stdout


def _emit(records, s, out_path):
    fmt = s["format"]
    cols = COLUMNS + (["wall_time_ms"] if s.get("timing") else [])
    fh = _open_out(out_path)
    try:
        if fmt == "csv":
            fh.write(",".join(cols) + "\n")
        for rec in records:
            fh.write(encode(rec, fmt, cols) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_eval(args) -> int:
    s = _settings(args)
    family = args.family
    params = {}
    for name in FAMILIES[family]:
        if s.get(name) is None:
            raise UsageError(f"{family} needs --{name}")
        values = parse_range(s[name])
        if len(values) != 1:
            raise UsageError("eval takes scalar parameters; use sweep for grids")
        params[name] = values[0]
    rec, code = evaluate_row(family, params, s["mode"], float(s["rtol"]), bool(s.get("timing")))
    _emit([rec], s, s.get("out"))
    return code


def cmd_sweep(args) -> int:
    s = _settings(args)
    family = args.family
    rows = _grid(family, s)
    jobs = [(family, r, s["mode"], float(s["rtol"]), bool(s.get("timing"))) for r in rows]
    n_jobs = s["jobs"]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as ex:
            results = list(ex.map(_row_job, jobs))  # map keeps grid order
    else:
        results = [_row_job(j) for j in jobs]
    _emit([r for r, _ in results], s, s.get("out"))
    codes = [c for _, c in results]
    bad = sum(c != EXIT_OK for c in codes)
    label = "pass" if s["mode"] == "crosscheck" else "converged"
    print(f"sweep {family}: rows={len(codes)} {label}={len(codes) - bad} failed={bad}", file=sys.stderr)
    return next((c for c in codes if c != EXIT_OK), EXIT_OK)


def _classical(q: float, nu: float, z: float) -> float:
    """Oracle value of the nearest classical family: I2 with d = 1/(1-q) for a cut-off, else I1."""
    if classify_tail(q) is Tail.CUT_OFF:
        d = 1 / (1 - q)
        if z == 0:
            return float(np.real(thermo.lower_incomplete_gamma_series(nu, 1.0, d).value))
        return thermo._i2_oracle(z, d, nu).value
    if z == 0:
        return math.gamma(nu)
    return thermo._i1_oracle(z, nu).value


def cmd_qdemo(args) -> int:
    s = _settings(args)
    for name in ("q", "nu", "z"):
        if s.get(name) is None:
            raise UsageError(f"qdemo needs --{name}")
    qs, nus, zs = parse_range(s["q"]), parse_range(s["nu"]), parse_range(s["z"])
    cols = ["q", "tail", "nu", "z", "q_rate", "classical_family", "classical", "rel_diff"]
    fh = _open_out(s.get("out"))
    code = EXIT_OK
    try:
        if s["format"] == "csv":
            fh.write(",".join(cols) + "\n")
        for q in qs:
            for nu in nus:
                for z in zs:
                    rec = {"q": q, "tail": str(classify_tail(q)), "nu": nu, "z": z}
                    try:
                        rate = q_rate(nu, z, q).value
                        ref = _classical(q, nu, z)
                        fam = "I2" if classify_tail(q) is Tail.CUT_OFF else "I1"
                        rec.update(q_rate=float(rate), classical_family=fam, classical=float(ref),
                                   rel_diff=abs(rate - ref) / abs(ref))
                    except DomainError as exc:
                        code = EXIT_DOMAIN
                        rec.update(classical_family=f"DomainError: {exc}")
                    except NoConvergence:
                        code = code or EXIT_NOCONV
                        rec.update(classical_family="NoConvergence")
                    fh.write(encode(rec, s["format"], cols) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return code


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(stream=sys.stdout)
    return EXIT_OK if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thermonuclear", description="Thermonuclear functions via Mellin-Barnes integrals.")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate one point")
    p.add_argument("family", choices=sorted(FAMILIES))
    _add_param_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="evaluate a parameter grid")
    p.add_argument("family", choices=sorted(FAMILIES))
    _add_param_flags(p)
    p.add_argument("--jobs", type=int, default=None, help="worker processes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("qdemo", help="q-deformed rate next to the classical family")
    _add_param_flags(p)
    p.set_defaults(func=cmd_qdemo)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"thermonuclear: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"thermonuclear: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
