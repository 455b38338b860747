"""Command-line front end.

    lcdcu run --case explosion --scheme new --nx 200
    lcdcu compare --case stationary_contact --grids 200,4000
    lcdcu convergence --grids 100,200,400,800
    lcdcu cesaro --levels 5,8 --scheme both

Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 I/O error.
Errors are reported on stderr as a single ``error: <code>: <detail>`` line.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .benchmarks import CASES, BenchmarkCase, custom_case, make_case
from .experiments import cesaro, compare, run_case, self_convergence
from .grid import DomainError
from .postprocess import write_scalar, write_snapshot
from .stepper import SolverFailure

EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4

# option name -> default; manifest keys use the same names
DEFAULTS = {
    "case": None,
    "problem": None,
    "scheme": "new",
    "nx": None,
    "ny": None,
    "tfinal": None,
    "cfl": 0.4,
    "epsilon": 1e-10,
    "reconstruction": None,
    "out": "out",
    "format": "csv",
    "snapshots": None,
    "workers": 1,
    "strict": False,
    "progress": 0,
    "grids": None,
    "levels": "5,8",
}


class CliError(Exception):
    def __init__(self, code: int, detail: str):
        super().__init__(detail)
        self.code = code
        self.detail = detail


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_CONFIG, message)


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise CliError(EXIT_CONFIG, f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise CliError(EXIT_CONFIG, f"expected comma-separated integers, got {text!r}") from None


def _common(p: argparse.ArgumentParser, scheme_default: str) -> None:
    p.add_argument("--manifest", help="JSON file with option values; flags override it")
    p.add_argument("--case", choices=sorted(CASES), default=argparse.SUPPRESS)
    p.add_argument("--scheme", choices=["old", "new", "both"], default=argparse.SUPPRESS,
                   help=f"(default: {scheme_default})")
    p.add_argument("--tfinal", type=float, default=argparse.SUPPRESS, help="override the final time")
    p.add_argument("--cfl", type=float, default=argparse.SUPPRESS, help="CFL number (default 0.4)")
    p.add_argument("--epsilon", type=float, default=argparse.SUPPRESS, help="desingularization (default 1e-10)")
    p.add_argument("--reconstruction", choices=["conservative", "characteristic", "first_order"],
                   default=argparse.SUPPRESS, help="override the scheme's default reconstruction")
    p.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="threads for the flux loops")
    p.add_argument("--strict", action="store_true", default=argparse.SUPPRESS,
                   help="abort on inadmissible reconstructed values instead of falling back to cell averages")
    p.add_argument("--out", default=argparse.SUPPRESS, help="output directory (file for compare/convergence)")
    p.add_argument("--format", choices=["csv", "bin"], default=argparse.SUPPRESS)
    p.add_argument("--progress", type=int, default=argparse.SUPPRESS, help="log every N steps to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lcdcu", description="Central-upwind finite-volume solver for the Euler equations")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="run one case")
    _common(p, "new")
    p.add_argument("--nx", type=int, default=argparse.SUPPRESS)
    p.add_argument("--ny", type=int, default=argparse.SUPPRESS)
    p.add_argument("--snapshots", default=argparse.SUPPRESS, help="extra output times t1,t2,...")

    p = sub.add_parser("compare", help="L1 distance of both schemes to a fine Old-CU run")
    _common(p, "both")
    p.add_argument("--grids", default=argparse.SUPPRESS, help="cells per direction, e.g. 200,4000")

    p = sub.add_parser("convergence", help="self-convergence orders on the smooth density wave")
    _common(p, "both")
    p.add_argument("--grids", default=argparse.SUPPRESS, help="grid ladder (default 100,200,400,800)")

    p = sub.add_parser("cesaro", help="Cesaro-averaged densities over grids 2^n")
    _common(p, "both")
    p.add_argument("--levels", default=argparse.SUPPRESS, help="n_lo,n_hi with 5 <= n <= 10 (default 5,8)")
    return parser


def _settings(ns: argparse.Namespace, scheme_default: str) -> dict:
    opts = dict(DEFAULTS, scheme=scheme_default)
    if getattr(ns, "manifest", None):
        try:
            manifest = json.loads(Path(ns.manifest).read_text())
        except OSError as err:
            raise CliError(EXIT_IO, f"cannot read manifest: {err}") from None
        except json.JSONDecodeError as err:
            raise CliError(EXIT_CONFIG, f"manifest is not valid JSON: {err}") from None
        unknown = set(manifest) - set(DEFAULTS)
        if unknown:
            raise CliError(EXIT_CONFIG, f"unknown manifest keys: {', '.join(sorted(unknown))}")
        opts.update(manifest)
    for key, value in vars(ns).items():
        if key in DEFAULTS:
            opts[key] = value
    return opts


def _case(opts: dict, default: str | None = None) -> BenchmarkCase:
    if opts["problem"] is not None and opts["case"] is not None:
        raise CliError(EXIT_CONFIG, "give either a case or a custom problem, not both")
    if opts["problem"] is not None:
        return custom_case(opts["problem"])
    name = opts["case"] or default
    if name is None:
        raise CliError(EXIT_CONFIG, "no case given (use --case or a manifest)")
    return make_case(name)


def _schemes(opts: dict) -> list[str]:
    s = opts["scheme"]
    if s not in ("old", "new", "both"):
        raise CliError(EXIT_CONFIG, f"unknown scheme {s!r}")
    return ["old", "new"] if s == "both" else [s]


def _cfg(opts: dict) -> dict:
    return dict(
        cfl=opts["cfl"],
        epsilon=opts["epsilon"],
        reconstruction=opts["reconstruction"],
        workers=opts["workers"],
        positivity_fallback=not opts["strict"],
    )


def _progress(opts: dict, label: str):
    every = opts["progress"]
    if not every:
        return None

    def hook(step, t, dt, rmin, pmin):
        if step % every == 0:
            print(f"{label} step {step} t={t:.6g} dt={dt:.3e} min_rho={rmin:.4g} min_p={pmin:.4g}", file=sys.stderr)

    return hook


def _outdir(opts: dict) -> Path:
    out = Path(opts["out"])
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise CliError(EXIT_IO, f"cannot create output directory: {err}") from None
    return out


def cmd_run(opts: dict) -> int:
    case = _case(opts)
    if case.ndim == 1 and opts["ny"] is not None:
        raise CliError(EXIT_CONFIG, f"{case.name} is 1-D; --ny does not apply")
    grid = case.grid(opts["nx"], opts["ny"])
    t_final = case.t_final if opts["tfinal"] is None else opts["tfinal"]
    snaps = opts["snapshots"]
    if isinstance(snaps, str):
        snaps = _floats(snaps)
    snaps = sorted(set(snaps or []) | {t_final})
    out = _outdir(opts)
    ext = opts["format"]
    for scheme in _schemes(opts):
        stem = f"{case.name}_{scheme}"
        written = []

        def save(t, f, stem=stem, written=written):
            path = out / f"{stem}_t{t:.6g}.{ext}"
            try:
                write_snapshot(f, path, ext, case.gamma)
            except OSError as err:
                raise CliError(EXIT_IO, f"cannot write {path}: {err}") from None
            written.append(path)

        run = run_case(
            case, scheme, grid, t_final, snapshot_times=snaps, on_snapshot=save,
            on_step=_progress(opts, stem), **_cfg(opts),
        )
        log_path = out / f"{stem}_log.csv"
        try:
            with open(log_path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["step", "t", "dt", "min_rho", "min_p", "fallbacks"])
                for r in run.result.log:
                    w.writerow([r.step, repr(r.t), repr(r.dt), repr(r.min_rho), repr(r.min_p), r.fallbacks])
                fh.write(f"# wall_time_s,{run.wall_time:.3f}\n")
        except OSError as err:
            raise CliError(EXIT_IO, f"cannot write {log_path}: {err}") from None
        print(
            f"{stem}: cells={'x'.join(map(str, grid.shape))} steps={run.result.steps} "
            f"fallbacks={run.result.fallbacks} wall={run.wall_time:.3f}s files={len(written) + 1}"
        )
    return 0


def _table_out(opts: dict, header: list[str], rows: list[list]) -> None:
    target = opts["out"] if opts["out"] != DEFAULTS["out"] else None
    try:
        fh = open(target, "w", newline="") if target else sys.stdout
    except OSError as err:
        raise CliError(EXIT_IO, f"cannot write {target}: {err}") from None
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if target:
            fh.close()


def cmd_compare(opts: dict) -> int:
    case = _case(opts)
    grids = opts["grids"]
    grids = _ints(grids) if isinstance(grids, str) else list(grids or [])
    if not grids:
        ref = case.reference_grid or tuple(4 * n for n in case.desk_grid)
        grids = [case.desk_grid[0], ref[0]]
    rows = compare(case, grids, _schemes(opts), opts["tfinal"], **_cfg(opts))
    _table_out(
        opts,
        ["scheme", "cells", "l1_density", "wall_time_s"],
        [[r.scheme, "x".join(map(str, r.cells)), repr(r.l1), f"{r.wall_time:.3f}"] for r in rows],
    )
    return 0


def cmd_convergence(opts: dict) -> int:
    case = _case(opts, "density_wave")
    if case.name != "density_wave":
        raise CliError(EXIT_CONFIG, "convergence studies need the smooth density_wave case")
    grids = opts["grids"]
    grids = _ints(grids) if isinstance(grids, str) else list(grids or [100, 200, 400, 800])
    rows = []
    for scheme in _schemes(opts):
        for r in self_convergence(case, grids, scheme, opts["tfinal"], **_cfg(opts)):
            rows.append([scheme, r.cells, repr(r.difference), "" if r.order != r.order else f"{r.order:.4f}"])
    _table_out(opts, ["scheme", "cells", "l1_difference", "order"], rows)
    return 0


def cmd_cesaro(opts: dict) -> int:
    case = _case(opts, "kelvin_helmholtz")
    levels = opts["levels"]
    levels = _ints(levels) if isinstance(levels, str) else list(levels)
    if len(levels) != 2:
        raise CliError(EXIT_CONFIG, "--levels takes n_lo,n_hi")
    out = _outdir(opts)
    for scheme in _schemes(opts):
        res = cesaro(case, levels[0], levels[1], scheme, opts["tfinal"], **_cfg(opts))
        for m, avg in res.averages.items():
            path = out / f"{case.name}_{scheme}_cesaro_m{m}.{opts['format']}"
            try:
                write_scalar(avg, path, opts["format"])
            except OSError as err:
                raise CliError(EXIT_IO, f"cannot write {path}: {err}") from None
        print(f"{case.name}_{scheme}: levels {levels[0]}..{levels[1]} wall={res.wall_time:.3f}s")
    return 0


COMMANDS = {
    "run": (cmd_run, "new"),
    "compare": (cmd_compare, "both"),
    "convergence": (cmd_convergence, "both"),
    "cesaro": (cmd_cesaro, "both"),
}


def main(argv: list[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        func, scheme_default = COMMANDS[ns.command]
        return func(_settings(ns, scheme_default))
    except CliError as err:
        code, detail = err.code, err.detail
    except (SolverFailure, DomainError) as err:
        code, detail = EXIT_SOLVER, str(err)
    except OSError as err:
        code, detail = EXIT_IO, str(err)
    except (ValueError, KeyError) as err:
        code, detail = EXIT_CONFIG, str(err.args[0]) if err.args else repr(err)
    detail = " ".join(str(detail).split())
    print(f"error: {code}: {detail}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
