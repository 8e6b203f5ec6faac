"""Command-line harness: configure, verify, and emit spectra.

Two subcommands. `verify <suite>` runs a named batch of checks and
writes a JSON or CSV report; the process exits 0 when every check
passes, 1 when any fails, 2 on a configuration problem. `spectrum
<target>` tabulates eigenvalues or singular values of one of the model
operators with basis labels.

Configuration comes from defaults, then an optional key-value file,
then command-line flags; later sources win. Reports are deterministic
for a fixed configuration and seed.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from .checks import SUITE_NAMES, run_suite
from .errors import ConfigInvalid, IoError
from .nctorus import basis_dim, nct_dolbeault
from .oscillator import dirac_matrix, dirac_squared_spectrum

SUITE_CHOICES = SUITE_NAMES + ("all",)
TARGET_CHOICES = ("d_lambda", "d_dolbeault", "d_squared")

# suites whose data depends on a nonzero rescaling degree
_NEEDS_TWIST = {"bimodules", "duality", "all"}


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs: angle, twist degree, truncations, tolerances."""

    theta: float = 0.7071067811865476
    b: int = 2
    lam: float = 1.0
    level_cut: int = 64
    mode_cut: int = 8
    grid_nodes: int = 128
    radius: float = 10.0
    tol_exact: float = 1e-10
    tol_quad: float = 1e-6
    seed: int = 0

    def as_dict(self) -> dict:
        return {
            "theta": self.theta,
            "b": self.b,
            "lambda": self.lam,
            "L": self.level_cut,
            "K": self.mode_cut,
            "grid_nodes": self.grid_nodes,
            "R": self.radius,
            "tol_exact": self.tol_exact,
            "tol_quad": self.tol_quad,
            "seed": self.seed,
        }


def nearest_rational_denominator(theta: float, max_den: int = 64, gap: float = 1e-9):
    """Denominator of a close rational, or None when theta clears the scan."""
    for q in range(1, max_den + 1):
        p = round(theta * q)
        if abs(theta - p / q) < gap:
            return q
    return None


def validate_config(config: RunConfig, suite: str = None, for_spectrum: bool = False):
    """Raise ConfigInvalid on values the checks cannot run with."""
    if not math.isfinite(config.theta):
        raise ConfigInvalid("theta must be finite")
    q = nearest_rational_denominator(config.theta)
    if q is not None:
        raise ConfigInvalid(
            f"theta {config.theta} is within 1e-9 of a rational with denominator {q}; "
            "the sampled checks need a generic angle"
        )
    if suite in _NEEDS_TWIST and config.b == 0:
        raise ConfigInvalid(f"suite {suite!r} needs a nonzero twist degree b")
    if config.level_cut < 1 or config.mode_cut < 1:
        raise ConfigInvalid("truncation windows must be positive")
    if for_spectrum and config.level_cut < 2:
        raise ConfigInvalid("spectrum targets need at least two levels")
    if config.grid_nodes < 8:
        raise ConfigInvalid("the quadrature grid needs at least 8 nodes")
    if config.radius <= 0:
        raise ConfigInvalid("the grid radius must be positive")
    if config.tol_exact <= 0 or config.tol_quad <= 0:
        raise ConfigInvalid("tolerances must be positive")
    if config.lam == 0:
        raise ConfigInvalid("the oscillator slope must be nonzero")


# ---------------------------------------------------------------------------
# configuration sources
# ---------------------------------------------------------------------------

_FIELD_BY_KEY = {
    "theta": ("theta", float),
    "b": ("b", int),
    "lambda": ("lam", float),
    "L": ("level_cut", int),
    "K": ("mode_cut", int),
    "grid": ("grid_nodes", int),
    "R": ("radius", float),
    "tol-exact": ("tol_exact", float),
    "tol_exact": ("tol_exact", float),
    "tol-quad": ("tol_quad", float),
    "tol_quad": ("tol_quad", float),
    "seed": ("seed", int),
}


def read_config_file(path: str) -> dict:
    """Parse key = value lines into RunConfig field overrides."""
    overrides = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigInvalid(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigInvalid(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _FIELD_BY_KEY:
            raise ConfigInvalid(f"{path}:{lineno}: unknown config key {key!r}")
        field, cast = _FIELD_BY_KEY[key]
        try:
            overrides[field] = cast(value.strip())
        except ValueError as exc:
            raise ConfigInvalid(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return overrides


def build_config(args) -> RunConfig:
    config = RunConfig()
    if args.config:
        config = replace(config, **read_config_file(args.config))
    flag_map = {
        "theta": "theta",
        "b": "b",
        "lam": "lam",
        "level_cut": "L",
        "mode_cut": "K",
        "grid_nodes": "grid",
        "radius": "R",
        "tol_exact": "tol_exact",
        "tol_quad": "tol_quad",
        "seed": "seed",
    }
    overrides = {}
    for field, flag in flag_map.items():
        value = getattr(args, flag.replace("-", "_"))
        if value is not None:
            overrides[field] = value
    return replace(config, **overrides)


def _add_common_flags(parser):
    parser.add_argument("--theta", type=float, default=None, help="rotation angle")
    parser.add_argument("--b", type=int, default=None, help="twist degree")
    parser.add_argument(
        "--lambda", dest="lam", type=float, default=None, help="oscillator slope"
    )
    parser.add_argument("--L", type=int, default=None, help="oscillator level cut")
    parser.add_argument("--K", type=int, default=None, help="mode window half-width")
    parser.add_argument("--grid", type=int, default=None, help="quadrature node count")
    parser.add_argument("--R", type=float, default=None, help="quadrature radius")
    parser.add_argument("--tol-exact", type=float, default=None)
    parser.add_argument("--tol-quad", type=float, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--config", default=None, help="key = value config file")
    parser.add_argument("--output", default=None, help="write to this path, not stdout")
    parser.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format"
    )


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotalab",
        description="Run machine checks on the rotation-algebra constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITE_CHOICES)
    _add_common_flags(verify)
    spectrum = sub.add_parser("spectrum", help="tabulate a model spectrum")
    spectrum.add_argument("target", choices=TARGET_CHOICES)
    _add_common_flags(spectrum)
    return parser


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["check_id", "anchor", "max_error", "tolerance", "pass"])
    for check in report["checks"]:
        writer.writerow(
            [
                check["check_id"],
                check["anchor"],
                repr(check["max_error"]),
                repr(check["tolerance"]),
                check["pass"],
            ]
        )
    return buffer.getvalue()


def spectrum_rows(target: str, config: RunConfig):
    """Sorted (label, value) rows for one of the model operators."""
    if target == "d_lambda":
        level = config.level_cut
        mat = dirac_matrix(config.lam, 0.0, level)
        sv = np.sort(np.linalg.svd(mat.data, compute_uv=False))
        return [(f"sv[{i}]", float(value)) for i, value in enumerate(sv)]
    if target == "d_squared":
        top, bottom = dirac_squared_spectrum(config.lam, config.level_cut)
        rows = [(f"plus l={l}", float(v)) for l, v in enumerate(top)]
        rows += [(f"minus l={l}", float(v)) for l, v in enumerate(bottom)]
        rows.sort(key=lambda row: (row[1], row[0]))
        return rows
    size = config.mode_cut
    d = nct_dolbeault(size, size)
    n = basis_dim(size, size)
    magnitudes = np.abs(np.diag(d.data[:n, n:]))
    rows = []
    index = 0
    for l in range(-size, size + 1):
        for k in range(-size, size + 1):
            rows.append((f"l={l},k={k}", float(magnitudes[index])))
            index += 1
    rows.sort(key=lambda row: (row[1], row[0]))
    return rows


def render_spectrum(target: str, config: RunConfig, rows, fmt: str) -> str:
    if fmt == "json":
        payload = {
            "target": target,
            "config": config.as_dict(),
            "values": [{"label": label, "value": value} for label, value in rows],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["label", "value"])
    for label, value in rows:
        writer.writerow([label, repr(value)])
    return buffer.getvalue()


def _write_output(text: str, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
        if args.command == "verify":
            validate_config(config, suite=args.suite)
            report = run_suite(args.suite, config)
            _write_output(render_report(report, args.format), args.output)
            return 0 if report["all_pass"] else 1
        validate_config(config, for_spectrum=True)
        rows = spectrum_rows(args.target, config)
        _write_output(render_spectrum(args.target, config, rows, args.format), args.output)
        return 0
    except (ConfigInvalid, IoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
