"""Command line: ``python -m kpdist {table,verify,crosscheck}``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage or configuration errors.
"""
import argparse
from concurrent.futures import ThreadPoolExecutor
import csv
from dataclasses import dataclass, field
import io
import json
import math
import sys

from . import checks
from .distributions import baik_rains_cdf, f_goe, f_gue
from .painleve import ABFamily, solve_hastings_mcleod

SUITES = ("kp-gue", "kp-goe", "kp-br", "symbolic", "identities")
ACCURATE_LEFT = -8.0


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    dist: str = "gue"
    tau: float = 0.0
    grid: tuple = (-6.0, 6.0, 0.5)
    quadrature: tuple = (120, 40.0, 60.0)
    tolerances: dict = field(default_factory=dict)
    output: str = "-"
    format: str = "csv"
    suite: str = None
    w_grid: tuple = checks.Y_G_W
    corrupt_b: bool = False

    def validate(self):
        lo, hi, step = self.grid
        if not (step > 0 and lo < hi):
            raise UsageError("grid needs min < max and step > 0, got %g:%g:%g" % self.grid)
        m, L, Z = self.quadrature
        if not (10 <= m <= 1024 and 0 < L <= 200 and 0 < Z <= 200):
            raise UsageError("quadrature outside supported envelope (10<=m<=1024, L<=200, Z<=200)")
        if any(not v > 0 for v in self.tolerances.values()):
            raise UsageError("tolerances must be positive")
        if self.command == "crosscheck" and any(w < 0.05 for w in self.w_grid):
            raise UsageError("crosscheck w values must be >= 0.05")

    def points(self):
        lo, hi, step = self.grid
        n = int(math.floor((hi - lo) / step + 1e-9))
        return [lo + k * step for k in range(n + 1)]


def _grid(text):
    try:
        parts = [float(p) for p in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError("grid must be min:max:step")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be min:max:step")
    return tuple(parts)


def _floats(text):
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated numbers")


def build_parser():
    p = argparse.ArgumentParser(prog="kpdist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--grid", type=_grid, default=None, help="min:max:step")
        sp.add_argument("--m", type=int, default=120)
        sp.add_argument("--L", type=float, default=40.0)
        sp.add_argument("--Z", type=float, default=60.0)
        sp.add_argument("--out", default="-")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--tol-kp", type=float, default=None)
        sp.add_argument("--tol-cross", type=float, default=None)

    t = sub.add_parser("table", help="tabulate a distribution")
    common(t)
    t.add_argument("--dist", choices=("gue", "goe", "br"), default="gue")
    t.add_argument("--tau", type=float, default=0.0)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    common(v)
    v.add_argument("--corrupt-b", action="store_true", help=argparse.SUPPRESS)

    c = sub.add_parser("crosscheck", help="compare the Painleve and Fredholm routes")
    common(c)
    c.add_argument("--w", type=_floats, default=checks.Y_G_W, help="comma-separated w values")
    return p


def config_from_args(ns):
    tol = {}
    if ns.tol_kp is not None:
        tol["kp"] = ns.tol_kp
    if ns.tol_cross is not None:
        tol["cross"] = ns.tol_cross
    default_grid = {"table": (-6.0, 6.0, 0.5), "verify": (-4.0, 4.0, 0.5),
                    "crosscheck": (-6.0, 6.0, 2.0)}[ns.command]
    cfg = RunConfig(command=ns.command, grid=ns.grid or default_grid,
                    quadrature=(ns.m, ns.L, ns.Z), tolerances=tol, output=ns.out,
                    format=ns.format or ("csv" if ns.command == "table" else "json"))
    if ns.command == "table":
        cfg.dist, cfg.tau = ns.dist, ns.tau
    if ns.command == "verify":
        cfg.suite, cfg.corrupt_b = ns.suite, ns.corrupt_b
    if ns.command == "crosscheck":
        cfg.w_grid = ns.w
    cfg.validate()
    return cfg


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _table_rows(cfg, ps):
    pts = cfg.points()
    if cfg.dist == "br":
        fam = ABFamily(ps)
        ab = fam(0.5 * cfg.tau)
        header = ["tau", "r", "F_tau", "antideriv", "y", "quality"]

        def row(r):
            x = r + cfg.tau ** 2
            if x < ps.x_min:
                return [cfg.tau, r, 0.0, 0.0, 0.0, "extrapolated"]
            if x > ab.x_max:
                y = x - cfg.tau ** 2
                return [cfg.tau, r, 1.0, y, y, "extrapolated"]
            bp = baik_rains_cdf(cfg.tau, r, ps, ab)
            q = "ok" if x >= ACCURATE_LEFT else "low-accuracy"
            return [cfg.tau, r, bp.f_tau, bp.antideriv, bp.y_val, q]
    else:
        fn = f_gue if cfg.dist == "gue" else f_goe
        header = ["s", "F", "quality"]

        def row(s):
            if s < ps.x_min:
                return [s, 0.0, "extrapolated"]
            return [s, fn(s, ps), "ok" if s >= ACCURATE_LEFT else "low-accuracy"]

    with ThreadPoolExecutor(max_workers=4) as pool:
        rows = list(pool.map(row, pts))
    return header, rows


def _render_table(header, rows, fmt):
    if fmt == "json":
        recs = [dict(zip(header, r)) for r in rows]
        return json.dumps(recs, indent=1, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _write(text, path):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_table(cfg, ps=None):
    ps = ps or solve_hastings_mcleod()
    header, rows = _table_rows(cfg, ps)
    _write(_render_table(header, rows, cfg.format), cfg.output)
    return 0


def _emit_report(rep, cfg):
    _write(json.dumps(rep, indent=1) + "\n", cfg.output)
    return 0 if rep["pass"] else 1


def cmd_verify(cfg, ps=None):
    ps = ps if ps is not None or cfg.suite == "symbolic" else solve_hastings_mcleod()
    kp_tol = cfg.tolerances.get("kp")
    if cfg.suite == "symbolic":
        res = checks.symbolic_suite()
    elif cfg.suite == "identities":
        res = checks.identity_suite(ps, corrupt=cfg.corrupt_b)
    elif cfg.suite == "kp-gue":
        res = checks.kp_gue_suite(ps, tol=kp_tol or checks.TOL_KP)
    elif cfg.suite == "kp-goe":
        res = checks.kp_goe_suite(ps, tol=kp_tol or checks.TOL_KP, grid=cfg.points())
    else:
        res = checks.kp_br_suite(ps, tol=kp_tol or checks.TOL_KP_BR)
    return _emit_report(checks.report(cfg.suite, res), cfg)


def cmd_crosscheck(cfg, ps=None):
    ps = ps or solve_hastings_mcleod()
    m, L, Z = cfg.quadrature
    s_grid = cfg.points()
    y_s = [s for s in s_grid if -4.0 <= s <= 4.0]
    tol = cfg.tolerances.get("cross")
    res = checks.crosscheck_suite(ps, s_grid=s_grid, y_s=y_s, y_w=cfg.w_grid, m=m, L=L, Z=Z,
                                  tol_f=tol or 1e-8, tol_y=tol or 1e-6)
    return _emit_report(checks.report("crosscheck", res), cfg)


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "crosscheck": cmd_crosscheck}


def _glue_negative_values(argv):
    """Turn ``--grid -6:6:1`` into ``--grid=-6:6:1`` so argparse accepts it."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--grid", "--tau", "--w") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(a + "=" + argv[i + 1])
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = config_from_args(ns)
        if cfg.command == "crosscheck" and not cfg.w_grid:
            raise UsageError("empty w grid")
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: cannot write output: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
