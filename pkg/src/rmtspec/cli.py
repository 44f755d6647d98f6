"""Command-line front end.

Subcommands:

    generate        synthesize a capture file (wgn | narrowband | ncofdm)
    analyze cov     covariance eigenvalues: histogram + KDE + MP overlay
    analyze lagged  complex eigenvalue cloud + axis-projection histograms
    theory mp       Marcenko-Pastur density curve
    theory lagged   lagged-spectrum density via the quartic resolvent
    compare         KS and L1 distances between two saved curves

Exit codes: 0 success, 1 validation/usage/IO error, 2 numerical failure.
``RMT_THREADS`` caps BLAS thread pools when threadpoolctl is installed.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import estimation, fileio, signals, theory
from .curves import DensityCurve
from .errors import NumericalError, RmtError
from .linalg import (
    DataMatrix,
    RealSpectrum,
    eigvals_general,
    eigvals_symmetric,
    lagged_correlation,
    sample_covariance,
    standardize_rows,
)

__all__ = ["run_cli", "main", "RunConfig"]

_DEFAULT_BINS = 40
_PROJ_BINS = 12


@dataclass
class RunConfig:
    """Validated options of one CLI invocation."""

    subcommand: str
    input_path: str | None = None
    output_path: str | None = None
    signal: str | None = None
    rows: int = 0
    cols: int = 0
    tau: int = 0
    q: float = 0.0
    epsilon: float = 1e-3
    c: float = 0.0
    bins: int = _DEFAULT_BINS
    bandwidth: float | None = None
    seed: int = 0
    snr_db: float = math.inf
    standardize: bool = True
    freq_domain: bool = False
    variance: float = 1.0
    carrier: float = 0.25
    band: float = 1.0 / 6.0
    symbol_rate: float = 1.0 / 16.0
    n_fft: int = 1024
    occupied: str = ""
    points: int = 1001
    empirical_col: str | None = None
    theory_col: str | None = None
    empirical_path: str | None = None
    theory_path: str | None = None


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rmtspec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="synthesize a capture file")
    g.add_argument("--signal", required=True, choices=["wgn", "narrowband", "ncofdm"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--rows", type=int, required=True, help="capture rows (complex rows for ncofdm)")
    g.add_argument("--cols", type=int, required=True)
    g.add_argument("--variance", type=float, default=1.0)
    g.add_argument("--carrier", type=float, default=0.25, help="cycles/sample")
    g.add_argument("--band", type=float, default=1.0 / 6.0)
    g.add_argument("--symbol-rate", type=float, default=1.0 / 16.0)
    g.add_argument("--n-fft", type=int, default=1024)
    g.add_argument("--occupied", default="", help='inclusive ranges, e.g. "10:50,80:100"')
    g.add_argument("--snr-db", type=float, default=math.inf)
    g.add_argument("--freq-domain", action="store_true",
                   help="ncofdm only: store the per-frame DFT, rows = subcarriers")
    g.add_argument("-o", "--output", required=True)

    an = sub.add_parser("analyze", help="analyze a capture file")
    ansub = an.add_subparsers(dest="analysis", required=True, parser_class=_Parser)
    ac = ansub.add_parser("cov", help="covariance spectrum vs Marcenko-Pastur")
    ac.add_argument("-i", "--input", required=True)
    ac.add_argument("--no-standardize", action="store_true")
    ac.add_argument("--bins", type=int, default=_DEFAULT_BINS)
    ac.add_argument("--bandwidth", type=float, default=None)
    ac.add_argument("-o", "--output", required=True)
    al = ansub.add_parser("lagged", help="complex spectrum of the lagged correlation")
    al.add_argument("-i", "--input", required=True)
    al.add_argument("--tau", type=int, required=True)
    al.add_argument("--no-standardize", action="store_true")
    al.add_argument("--bins", type=int, default=_PROJ_BINS)
    al.add_argument("-o", "--output", required=True)

    th = sub.add_parser("theory", help="theoretical benchmark curves")
    thsub = th.add_subparsers(dest="law", required=True, parser_class=_Parser)
    tm = thsub.add_parser("mp", help="Marcenko-Pastur density")
    tm.add_argument("--c", type=float, required=True, help="dimension ratio p/n")
    tm.add_argument("--points", type=int, default=1001)
    tm.add_argument("-o", "--output", required=True)
    tl = thsub.add_parser("lagged", help="lagged-spectrum density (quartic resolvent)")
    tl.add_argument("--q", type=float, required=True, help="information-to-noise ratio T/N")
    tl.add_argument("--epsilon", type=float, default=1e-3)
    tl.add_argument("-o", "--output", required=True)

    cp = sub.add_parser("compare", help="KS and L1 distances between saved curves")
    cp.add_argument("--empirical", required=True)
    cp.add_argument("--theory", required=True)
    cp.add_argument("--empirical-col", default=None)
    cp.add_argument("--theory-col", default=None)
    cp.add_argument("-o", "--output", required=True)
    return p


def _cap_threads() -> None:
    spec = os.environ.get("RMT_THREADS")
    if not spec:
        return
    try:
        limit = max(1, int(spec))
    except ValueError:
        raise RmtError(f"RMT_THREADS must be an integer, got {spec!r}")
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:
        return
    threadpool_limits(limits=limit)


def _parse_occupied(text: str) -> np.ndarray:
    if not text:
        return signals.occupied_from_ranges()
    ranges = []
    for part in text.split(","):
        lo, _, hi = part.partition(":")
        ranges.append((int(lo), int(hi or lo)))
    return signals.occupied_from_ranges(ranges)


def _cmd_generate(cfg: RunConfig) -> int:
    rows, cols = cfg.rows, cfg.cols
    if rows < 1 or cols < 1:
        raise RmtError("rows and cols must be >= 1")
    if cfg.freq_domain and cfg.signal != "ncofdm":
        raise RmtError("--freq-domain applies to the ncofdm signal only")

    if cfg.signal == "wgn":
        stream = signals.gen_wgn(signals.WgnSpec(cfg.seed, rows * cols, cfg.variance))
    elif cfg.signal == "narrowband":
        stream = signals.gen_narrowband(signals.NarrowbandSpec(
            cfg.seed, rows * cols, cfg.carrier, cfg.band, cfg.symbol_rate))
    else:
        spec = signals.NcofdmSpec(cfg.seed, cfg.n_fft, _parse_occupied(cfg.occupied))
        if cfg.freq_domain:
            if rows != cfg.n_fft:
                raise RmtError(f"--freq-domain needs --rows == n_fft ({cfg.n_fft})")
            stream = signals.gen_ncofdm_frames(spec, n_frames=cols)
        else:
            n_frames = -(-rows * cols // cfg.n_fft)
            stream = signals.gen_ncofdm_frames(spec, n_frames=n_frames)

    if not math.isinf(cfg.snr_db):
        stream = signals.add_awgn(stream, cfg.snr_db, seed=cfg.seed + 1)

    if cfg.signal == "ncofdm" and cfg.freq_domain:
        payload = signals.spectrogram_matrix(stream, cfg.n_fft)
    elif stream.is_complex:
        payload = stream.samples[: rows * cols].reshape(rows, cols)
    else:
        payload = stream.samples[: rows * cols].reshape(rows, cols)
    fileio.write_capture(cfg.output_path, payload)
    return 0


def _load_matrix(cfg: RunConfig) -> DataMatrix:
    X = fileio.read_capture(cfg.input_path)
    if cfg.standardize:
        X = standardize_rows(X)
    return X


def _cmd_analyze_cov(cfg: RunConfig) -> int:
    X = _load_matrix(cfg)
    spec = eigvals_symmetric(sample_covariance(X))
    vals = estimation.snap_zeros(spec.values)
    ratio = X.p / X.n
    prm = theory.mp_params(ratio)

    nonzero = vals[vals > 0]
    kcfg = estimation.KernelConfig(bandwidth=cfg.bandwidth)
    snapped = RealSpectrum(vals, matrix_trace=float(vals.sum()))
    kde = estimation.eigenvalue_density(snapped, kcfg)
    atom_share = kde.point_mass_at_zero
    hist = estimation.histogram_density(nonzero, bins=cfg.bins)
    hist = DensityCurve(hist.xs, hist.ys * (1.0 - atom_share), point_mass_at_zero=atom_share)

    lo = min(0.0, float(nonzero.min()) - 0.5)
    hi = max(prm.b, float(nonzero.max())) + 0.5
    grid = np.linspace(lo, hi, 1024)
    mp_curve = DensityCurve(grid, theory.mp_density(grid, ratio),
                            point_mass_at_zero=prm.point_mass_at_zero)
    fileio.write_density_csv(cfg.output_path, [hist, kde, mp_curve], ["hist", "kde", "mp"])
    return 0


def _cmd_analyze_lagged(cfg: RunConfig) -> int:
    X = _load_matrix(cfg)
    cspec = eigvals_general(lagged_correlation(X, cfg.tau))

    lines = ["re,im"]
    for v in cspec.values:
        lines.append(f"{v.real:.9g},{v.imag:.9g}")
    fileio._atomic_write(cfg.output_path, ("\n".join(lines) + "\n").encode())

    base, ext = os.path.splitext(cfg.output_path)
    for axis in ("x", "y"):
        curve = estimation.projection_density(cspec, axis=axis, bins=cfg.bins)
        fileio.write_density_csv(f"{base}.{axis}{ext or '.csv'}", [curve], [f"proj_{axis}"])
    return 0


def _cmd_theory_mp(cfg: RunConfig) -> int:
    prm = theory.mp_params(cfg.c)
    grid = np.linspace(prm.a, prm.b, cfg.points)
    curve = DensityCurve(grid, theory.mp_density(grid, cfg.c),
                         point_mass_at_zero=prm.point_mass_at_zero)
    fileio.write_density_csv(cfg.output_path, [curve], ["mp"])
    return 0


def _cmd_theory_lagged(cfg: RunConfig) -> int:
    curve = theory.lagged_density_symmetric(
        theory.GreenSolveConfig(Q=cfg.q, epsilon=cfg.epsilon))
    fileio.write_density_csv(cfg.output_path, [curve], ["rho_s"])
    return 0


def _curve_cdf(curve: DensityCurve, grid: np.ndarray) -> np.ndarray:
    ys = curve(grid)
    cdf = np.concatenate([[0.0], np.cumsum(np.diff(grid) * 0.5 * (ys[1:] + ys[:-1]))])
    return cdf + curve.point_mass_at_zero * (grid >= 0.0)


def _pick_column(curves: dict[str, DensityCurve], requested: str | None,
                 preferred: tuple[str, ...]) -> str:
    if requested is not None:
        if requested not in curves:
            raise RmtError(f"column {requested!r} not in file (has {sorted(curves)})")
        return requested
    for name in preferred:
        if name in curves:
            return name
    return next(iter(curves))


def _cmd_compare(cfg: RunConfig) -> int:
    emp = fileio.read_density_csv(cfg.empirical_path)
    th = fileio.read_density_csv(cfg.theory_path)
    emp_col = _pick_column(emp, cfg.empirical_col, ("kde", "hist"))
    th_col = _pick_column(th, cfg.theory_col, ("mp", "rho_s"))
    a, b = emp[emp_col], th[th_col]

    l1 = estimation.l1_distance(a, b)
    grid = np.linspace(min(a.xs[0], b.xs[0]), max(a.xs[-1], b.xs[-1]), 4096)
    ks = float(np.abs(_curve_cdf(a, grid) - _curve_cdf(b, grid)).max())

    report = (
        f"empirical: {cfg.empirical_path} [{emp_col}]\n"
        f"theory: {cfg.theory_path} [{th_col}]\n"
        f"L1 = {l1:.9g}\n"
        f"KS = {ks:.9g}\n"
    )
    fileio._atomic_write(cfg.output_path, report.encode())
    print(report, end="")
    return 0


def _to_config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=ns.subcommand)
    cfg.output_path = getattr(ns, "output", None)
    cfg.input_path = getattr(ns, "input", None)
    for src, dst in [
        ("signal", "signal"), ("rows", "rows"), ("cols", "cols"), ("tau", "tau"),
        ("q", "q"), ("epsilon", "epsilon"), ("c", "c"), ("bins", "bins"),
        ("bandwidth", "bandwidth"), ("seed", "seed"), ("snr_db", "snr_db"),
        ("freq_domain", "freq_domain"), ("variance", "variance"),
        ("carrier", "carrier"), ("band", "band"), ("symbol_rate", "symbol_rate"),
        ("n_fft", "n_fft"), ("occupied", "occupied"), ("points", "points"),
        ("empirical_col", "empirical_col"), ("theory_col", "theory_col"),
        ("empirical", "empirical_path"), ("theory", "theory_path"),
    ]:
        if hasattr(ns, src) and getattr(ns, src) is not None:
            setattr(cfg, dst, getattr(ns, src))
    if hasattr(ns, "no_standardize"):
        cfg.standardize = not ns.no_standardize
    if getattr(ns, "subcommand", None) == "analyze":
        cfg.subcommand = f"analyze-{ns.analysis}"
    elif getattr(ns, "subcommand", None) == "theory":
        cfg.subcommand = f"theory-{ns.law}"
    return cfg


_DISPATCH = {
    "generate": _cmd_generate,
    "analyze-cov": _cmd_analyze_cov,
    "analyze-lagged": _cmd_analyze_lagged,
    "theory-mp": _cmd_theory_mp,
    "theory-lagged": _cmd_theory_lagged,
    "compare": _cmd_compare,
}


def run_cli(argv) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _cap_threads()
        cfg = _to_config(ns)
        return _DISPATCH[cfg.subcommand](cfg)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RmtError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
