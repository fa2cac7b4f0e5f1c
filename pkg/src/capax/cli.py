"""Command-line front end: ``capax cap | sweep | verify | pin``."""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import lemmas
from .bounds import bounds_report
from .capacity import IntervalPair, capacity_exact
from .elliptic import SERIES_TOL
from .errors import DomainError
from .oracle import leja_capacity_estimate

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2

DEFAULT_ALPHAS = (-0.7, -0.4, -0.1, 0.1, 0.4, 0.7)
CSV_COLUMNS = (
    "beta", "cap", "lb_symmetric", "lb_pommerenke", "lb_elementary", "lb_solynin",
    "ub_reflection", "ub_gillis", "ub_main", "ub_elementary",
)
RECORD_KEYS = (
    "alpha", "beta", "k", "lambda", "cap", "lb_symmetric", "lb_pommerenke", "lb_elementary",
    "lb_solynin", "lb_solynin_delta", "ub_reflection", "ub_unit", "ub_gillis", "ub_main",
    "ub_elementary", "branch_reflected", "reflected",
)
MIN_PIN_POINTS = 100


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = SERIES_TOL
    output_format: str = "csv"
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if not 1e-16 <= self.tolerance <= 1e-8:
            raise DomainError("tolerance must lie in [1e-16, 1e-8]")
        if self.output_format not in ("csv", "json"):
            raise DomainError("format must be csv or json")
        if self.threads < 1:
            raise DomainError("threads must be >= 1")


@dataclass(frozen=True)
class SweepSpec:
    alphas: tuple = DEFAULT_ALPHAS
    beta_count: int = 200
    margin: float = 1e-6

    def __post_init__(self):
        if self.beta_count < 2:
            raise DomainError("points must be >= 2")
        if not 0.0 < self.margin < 0.5:
            raise DomainError("margin must lie in (0, 0.5)")
        for a in self.alphas:
            if not -1.0 < a < 1.0 - 2 * self.margin:
                raise DomainError(f"alpha={a!r} must lie in (-1, 1 - 2*margin)")

    def betas(self, alpha: float) -> np.ndarray:
        """beta grid from |alpha| (alpha + margin when alpha >= 0) up to 1 - margin."""
        lo = -alpha if alpha < 0.0 else alpha + self.margin
        return np.linspace(lo, 1.0 - self.margin, self.beta_count)


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    return "%.17g" % x


def cmd_cap(alpha: float, beta: float, config: RunConfig = RunConfig()) -> dict:
    """Capacity, chart parameters and every bound for one pair."""
    ip = IntervalPair(alpha, beta)
    res = capacity_exact(ip, config.tolerance)
    rep = bounds_report(ip)
    rec = {"alpha": alpha, "beta": beta, "k": res.param.k, "lambda": res.param.lam, "cap": res.cap}
    rec.update(rep.as_dict())
    rec["branch_reflected"] = res.reflected_branch
    return {key: rec[key] for key in RECORD_KEYS}


def render_record(rec: dict, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(rec, indent=2) + "\n"
    return ",".join(RECORD_KEYS) + "\n" + ",".join(fmt(rec[k]) for k in RECORD_KEYS) + "\n"


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sweep_row(alpha: float, beta: float, tol: float = SERIES_TOL) -> dict:
    ip = IntervalPair(alpha, float(beta))
    row = {"beta": float(beta), "cap": capacity_exact(ip, tol).cap}
    rep = bounds_report(ip).as_dict()
    row.update({c: rep[c] for c in CSV_COLUMNS[2:]})
    return row


def sweep_filename(alpha: float) -> str:
    return f"alpha_{alpha:+g}.csv"


PLOT_TEMPLATE = '''"""Plot capacity with the main and Gillis upper bounds from capax sweep CSVs."""
import csv
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
FILES = {files!r}

fig, axes = plt.subplots(2, 3, figsize=(12, 7), sharey=True)
for ax, (alpha, name) in zip(axes.flat, FILES):
    with open(os.path.join(HERE, name)) as fh:
        rows = list(csv.DictReader(fh))
    beta = [float(r["beta"]) for r in rows]
    ax.plot(beta, [float(r["cap"]) for r in rows], "k-", label="capacity")
    ax.plot(beta, [float(r["ub_main"]) for r in rows], "k--", label="main upper bound")
    ax.plot(beta, [float(r["ub_gillis"]) for r in rows], "k:", label="Gillis upper bound")
    ax.set_title("alpha = %g" % alpha)
    ax.set_xlabel("beta")
axes.flat[0].legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "sweep.png"), dpi=150)
'''


def cmd_sweep(spec: SweepSpec, out_dir, config: RunConfig = RunConfig()) -> list[Path]:
    """One CSV per alpha plus a plot script; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        for alpha in spec.alphas:
            betas = spec.betas(alpha)
            rows = list(pool.map(lambda b: sweep_row(alpha, b, config.tolerance), betas))
            buf = io.StringIO()
            buf.write(",".join(CSV_COLUMNS) + "\n")
            for row in rows:
                buf.write(",".join(fmt(row[c]) for c in CSV_COLUMNS) + "\n")
            path = out_dir / sweep_filename(alpha)
            atomic_write(path, buf.getvalue())
            written.append(path)
    script = out_dir / "plot_sweep.py"
    files = [(a, sweep_filename(a)) for a in spec.alphas]
    atomic_write(script, PLOT_TEMPLATE.format(files=files))
    written.append(script)
    return written


def cmd_verify(n_u: int = 200, n_k: int = 20, n_lemma4: int = 10_000, config: RunConfig = RunConfig(),
               n_random: int = 0, out=None) -> int:
    out = out or sys.stdout
    results = lemmas.run_all(n_u=n_u, n_k=n_k, n_lemma4=n_lemma4, seed=config.seed, n_random=n_random)
    for r in results:
        print(r.line(), file=out)
        for note in r.notes:
            print("    " + note, file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


def cmd_pin(alpha: float, beta: float, n: int) -> dict:
    """Golden record comparing the Leja estimate with the exact capacity."""
    if n < MIN_PIN_POINTS:
        raise DomainError(f"n must be ≥ {MIN_PIN_POINTS}")
    ip = IntervalPair(alpha, beta)
    exact = capacity_exact(ip).cap
    est = leja_capacity_estimate(ip, n)
    return {
        "alpha": alpha,
        "beta": beta,
        "n": n,
        "oracle_estimate": est,
        "capacity_exact": exact,
        "relative_gap": (est - exact) / exact,
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="capax", description="Logarithmic capacity of two intervals.")
    p.add_argument("--tolerance", type=float, default=SERIES_TOL, help="theta series truncation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cap", help="capacity and bounds for one pair")
    c.add_argument("alpha", type=float)
    c.add_argument("beta", type=float)
    c.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("sweep", help="capacity and bounds over beta grids, one CSV per alpha")
    s.add_argument("--alphas", type=float, nargs="+", default=list(DEFAULT_ALPHAS))
    s.add_argument("--points", type=int, default=200)
    s.add_argument("--margin", type=float, default=1e-6)
    s.add_argument("--out", default="sweep_out")

    v = sub.add_parser("verify", help="grid-check the elliptic and theta function inequalities")
    v.add_argument("--grid", type=int, default=200, help="points per modulus (>= 200 for full checks)")
    v.add_argument("--moduli", type=int, default=20)
    v.add_argument("--lemma4-moduli", type=int, default=10_000)
    v.add_argument("--random", type=int, default=0, help="extra random (u, k) samples, seeded")

    q = sub.add_parser("pin", help="golden record from the Leja oracle")
    q.add_argument("alpha", type=float)
    q.add_argument("beta", type=float)
    q.add_argument("n", type=int)
    q.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        fmt_choice = getattr(args, "format", "csv")
        config = RunConfig(args.tolerance, fmt_choice, args.seed, args.threads)
        if args.command == "cap":
            sys.stdout.write(render_record(cmd_cap(args.alpha, args.beta, config), config.output_format))
        elif args.command == "sweep":
            spec = SweepSpec(tuple(args.alphas), args.points, args.margin)
            for path in cmd_sweep(spec, args.out, config):
                print(path)
        elif args.command == "verify":
            return cmd_verify(args.grid, args.moduli, args.lemma4_moduli, config, args.random)
        elif args.command == "pin":
            text = json.dumps(cmd_pin(args.alpha, args.beta, args.n), indent=2) + "\n"
            if args.out:
                atomic_write(Path(args.out), text)
            sys.stdout.write(text)
    except DomainError as exc:
        print(f"capax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
