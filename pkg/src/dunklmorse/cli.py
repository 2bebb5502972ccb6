"""Command-line front end: spectra, thermodynamics, angular profiles, verification
and table reproduction, all written as deterministic CSV.

Exit codes: 0 success, 2 configuration error, 3 numerical error,
4 reproduction gate failure under ``reproduce-tables --strict``.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .angular import DunklParams, ParityLabels, azimuthal_wavefunction, polar_wavefunction
from .errors import ConfigError, DunklMorseError
from .molecules import lookup
from .oracle import textbook_morse_pekeris_energy
from .spectrum import CM_PER_EV, Molecule, PekerisVariant, angular_coefficient, spectral_params, window_from_params
from .spectrum import energy as level
from .spectrum import pekeris_coefficients
from .thermo import Method, thermal_functions, thermo_params, vibrational_levels

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_STRICT = 0, 2, 3, 4

DEFAULTS = {
    "molecule": "H2",
    "P": None,
    "D": None,
    "alpha": None,
    "mu": 0.0,
    "mu1": None,
    "mu2": None,
    "mu3": None,
    "mu_total": None,
    "variant": "paper",
    "ell": 1.0,
    "m": 1.0,
    "n_min": 0,
    "n_max": 20,
    "s1": 1,
    "s2": 1,
    "s3": 1,
    "kind": "azimuthal",
    "grid": 256,
    "tmin": 100.0,
    "tmax": 5000.0,
    "tpoints": 64,
    "tscale": "log",
    "out": None,
    "annex": None,
    "strict": False,
}
_FLOATS = {"P", "D", "alpha", "mu", "mu1", "mu2", "mu3", "mu_total", "ell", "m", "tmin", "tmax"}
_INTS = {"n_min", "n_max", "s1", "s2", "s3", "grid", "tpoints"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- configuration

def read_config_file(path: str) -> dict:
    """Flat ``key = value`` text; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for number, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise ConfigError(f"{path}:{number}: unknown key {key!r}")
        out[key] = value
    return out


def _coerce(key, value):
    if value is None:
        return None
    try:
        if key in _FLOATS:
            return float(value)
        if key in _INTS:
            return int(value)
    except ValueError:
        raise ConfigError(f"{key} expects a number, got {value!r}") from None
    if key == "strict" and isinstance(value, str):
        if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
            raise ConfigError(f"strict expects a boolean, got {value!r}")
        return value.lower() in ("true", "1", "yes")
    return value


@dataclass(frozen=True)
class RunConfig:
    molecule: Molecule
    params: DunklParams
    variant: PekerisVariant
    settings: dict

    def __getattr__(self, key):
        try:
            return self.settings[key]
        except KeyError:
            raise AttributeError(key) from None

    def provenance(self, command: str) -> str:
        mol, p = self.molecule, self.params
        return (
            f"# dunklmorse {__version__} command={command} molecule={mol.name} P={mol.P!r} D={mol.D!r} "
            f"alpha={mol.alpha!r} mu1={p.mu1!r} mu2={p.mu2!r} mu3={p.mu3!r} variant={self.variant.value}"
        )


def resolve(ns: argparse.Namespace) -> RunConfig:
    """Merge defaults, the optional config file and explicit flags, in that order."""
    merged = dict(DEFAULTS)
    if getattr(ns, "config", None):
        merged.update(read_config_file(ns.config))
    for key in DEFAULTS:
        value = getattr(ns, key, None)
        if value is not None and value is not False:
            merged[key] = value
    merged = {k: _coerce(k, v) for k, v in merged.items()}

    try:
        base = lookup(str(merged["molecule"]))
    except DunklMorseError as exc:
        if all(merged[k] is not None for k in ("P", "D", "alpha")):
            base = None
        else:
            raise ConfigError(str(exc)) from exc
    fields = {k: merged[k] for k in ("P", "D", "alpha") if merged[k] is not None}
    try:
        mol = replace(base, **fields) if base else Molecule(str(merged["molecule"]), **fields)
        if merged["mu_total"] is not None:
            params = DunklParams.isotropic(merged["mu_total"] / 3.0)
        else:
            mus = [merged[k] if merged[k] is not None else merged["mu"] for k in ("mu1", "mu2", "mu3")]
            params = DunklParams(*mus)
        variant = PekerisVariant.parse(merged["variant"])
    except DunklMorseError as exc:
        raise ConfigError(str(exc)) from exc
    if merged["tscale"] not in ("log", "linear"):
        raise ConfigError("tscale must be 'log' or 'linear'")
    if not 0 < merged["tmin"] < merged["tmax"] or merged["tpoints"] < 2:
        raise ConfigError("temperature grid needs 0 < tmin < tmax and tpoints >= 2")
    if merged["n_min"] < 0 or merged["n_max"] < merged["n_min"]:
        raise ConfigError("need 0 <= n_min <= n_max")
    return RunConfig(mol, params, variant, merged)


# ---------------------------------------------------------------- CSV output

def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))  # shortest round-trip form
    if value is None:
        return ""
    return str(value)


def write_csv(out, provenance: str, header, rows, trailer=()):
    out.write(provenance + "\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) for v in row) + "\n")
    for line in trailer:
        out.write(f"# {line}\n")


@contextlib.contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from exc
    with fh:
        yield fh


# ---------------------------------------------------------------- commands

def cmd_spectrum(cfg: RunConfig, out) -> int:
    mol, p = cfg.molecule, cfg.params
    sp = spectral_params(mol, p, angular_coefficient(p, cfg.ell, cfg.m), cfg.variant)
    lo, hi = window_from_params(sp)
    reduced = p.mu1 == p.mu2 == p.mu3 == 0.0
    coeffs = pekeris_coefficients(mol.alpha, cfg.variant)
    header = ["n", "ell", "m", "E_cm", "E_eV", "in_window", "E_morse_cm", "morse_match"]
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        lev = level(mol, p, n, cfg.ell, cfg.m, cfg.variant)
        morse = match = None
        if reduced:
            morse = textbook_morse_pekeris_energy(mol.P, mol.D, mol.alpha, 2 * (cfg.ell + cfg.m), n, coeffs)
            match = abs(lev.E_cm - morse) <= 1e-10 * abs(morse)
        rows.append([n, cfg.ell, cfg.m, lev.E_cm, lev.E_cm / CM_PER_EV, lo <= n <= hi, morse, match])
    write_csv(out, cfg.provenance("spectrum"), header, rows, [f"window n_min={lo} n_max={hi}"])
    return EXIT_OK


def _interior_maxima(values) -> int:
    v = np.asarray(values)
    return int(np.count_nonzero((v[1:-1] > v[:-2]) & (v[1:-1] > v[2:])))


def cmd_thermo(cfg: RunConfig, out) -> int:
    mol, p = cfg.molecule, cfg.params
    if cfg.tscale == "log":
        T = np.geomspace(cfg.tmin, cfg.tmax, cfg.tpoints)
    else:
        T = np.linspace(cfg.tmin, cfg.tmax, cfg.tpoints)
    tp = thermo_params(mol, p, cfg.variant)
    levels = vibrational_levels(mol, p, cfg.variant)
    closed = thermal_functions(T, Method.CLOSED_FORM, tp=tp)
    direct = thermal_functions(T, Method.DIRECT_SUM, levels=levels)
    header = [
        "T", "Z_closed", "Z_direct", "lnZ_closed", "lnZ_direct",
        "F_closed", "U_closed", "S_closed", "Cv_closed",
        "F_direct", "U_direct", "S_direct", "Cv_direct",
    ]
    rows = [
        [c.T, c.Z, d.Z, c.ln_Z, d.ln_Z, c.F, c.U, c.S, c.Cv, d.F, d.U, d.S, d.Cv]
        for c, d in zip(closed, direct)
    ]
    # peak shape on a fixed probe range, independent of the user grid
    probe = thermal_functions(np.geomspace(10.0, 1e4, 200), Method.DIRECT_SUM, levels=levels)
    cv_probe = [pt.Cv for pt in probe]
    trailer = [
        f"mu_total={p.mu!r} levels={len(levels)}",
        f"cv_interior_maxima_on_grid={_interior_maxima([d.Cv for d in direct])}",
        f"cv_single_peak_10_1e4K={'true' if _interior_maxima(cv_probe) == 1 else 'false'}",
    ]
    write_csv(out, cfg.provenance("thermo"), header, rows, trailer)
    return EXIT_OK


def cmd_angular(cfg: RunConfig, out) -> int:
    p = cfg.params
    try:
        labels = ParityLabels(cfg.s1, cfg.s2, cfg.s3)
        labels.check_m(cfg.m)
        if cfg.kind == "polar":
            labels.check_ell(cfg.ell)
    except DunklMorseError as exc:
        raise ConfigError(str(exc)) from exc
    n = cfg.grid
    if n < 2:
        raise ConfigError("grid needs at least 2 points")
    if cfg.kind == "azimuthal":
        angles = (np.arange(n) + 0.5) * (2 * math.pi / n)
        values = azimuthal_wavefunction(labels, cfg.m, p, angles)
        coord = "phi"
    elif cfg.kind == "polar":
        angles = (np.arange(n) + 0.5) * (math.pi / n)
        values = polar_wavefunction(cfg.s3, cfg.ell, cfg.m, p, angles)
        coord = "theta"
    else:
        raise ConfigError("kind must be 'azimuthal' or 'polar'")
    header = ["index", "coordinate", "angle", "value", "s1", "s2", "s3", "ell", "m"]
    rows = [[i, coord, a, v, cfg.s1, cfg.s2, cfg.s3, cfg.ell, cfg.m] for i, (a, v) in enumerate(zip(angles, values))]
    write_csv(out, cfg.provenance("angular"), header, rows)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    from .verification import run_all

    checks = run_all()
    rows = [[c.name, c.value, c.tolerance, "pass" if c.passed else "fail"] for c in checks]
    failed = sum(not c.passed for c in checks)
    write_csv(out, cfg.provenance("verify"), ["check", "value", "tolerance", "status"], rows,
              [f"checks={len(checks)} failed={failed}"])
    return EXIT_OK if failed == 0 else EXIT_NUMERIC


def cmd_reproduce_tables(cfg: RunConfig, out) -> int:
    from .reproduce import annex, compute_entries, gate_passed, judge

    entries = compute_entries()
    verdicts = judge(entries)
    header = [
        "table", "molecule", "mu_i", "n", "expected_eV",
        "paper_eV", "paper_abs_dev_eV", "paper_rel_dev",
        "taylor_eV", "taylor_abs_dev_eV", "taylor_rel_dev",
    ]
    rows = []
    for e in entries:
        row = [e.table, e.molecule, e.mu_i, e.n, e.expected_eV]
        for v in (PekerisVariant.PAPER, PekerisVariant.TAYLOR_MATCHED):
            row += [e.computed_eV[v.value], e.abs_dev(v), e.rel_dev(v)]
        rows.append(row)
    trailer = [
        f"{v.table} variant={v.variant.value} status={v.status} outliers_beyond_1pct={len(v.outliers)}"
        for v in verdicts
    ]
    record = annex(verdicts)
    trailer.append("annex " + json.dumps(record, sort_keys=True))
    write_csv(out, cfg.provenance("reproduce-tables"), header, rows, trailer)
    if cfg.annex:
        try:
            with open(cfg.annex, "w", encoding="utf-8") as fh:
                json.dump(record, fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            raise ConfigError(f"cannot write annex {cfg.annex}: {exc}") from exc
    if cfg.strict and not gate_passed(verdicts):
        return EXIT_STRICT
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "thermo": cmd_thermo,
    "angular": cmd_angular,
    "verify": cmd_verify,
    "reproduce-tables": cmd_reproduce_tables,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file; flags override it")
    common.add_argument("--molecule", help="built-in name (H2, HCl, I2) or a label for inline constants")
    common.add_argument("--P", type=float, help="kinetic prefactor, cm^-1")
    common.add_argument("--D", type=float, help="well depth, cm^-1")
    common.add_argument("--alpha", type=float, help="dimensionless Morse width")
    common.add_argument("--mu", type=float, help="value applied to mu1, mu2 and mu3")
    common.add_argument("--mu1", type=float)
    common.add_argument("--mu2", type=float)
    common.add_argument("--mu3", type=float)
    common.add_argument("--mu-total", dest="mu_total", type=float, help="mu1 + mu2 + mu3, split evenly")
    common.add_argument("--variant", choices=["paper", "taylor"])
    common.add_argument("--out", help="output path (default stdout)")

    parser = _Parser(prog="dunklmorse", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"dunklmorse {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    spec = sub.add_parser("spectrum", parents=[common], help="energy levels E_{n,ell,m}")
    spec.add_argument("--ell", type=float)
    spec.add_argument("--m", type=float)
    spec.add_argument("--n-min", dest="n_min", type=int)
    spec.add_argument("--n-max", dest="n_max", type=int)

    th = sub.add_parser("thermo", parents=[common], help="partition function and thermal functions")
    th.add_argument("--tmin", type=float)
    th.add_argument("--tmax", type=float)
    th.add_argument("--tpoints", type=int)
    th.add_argument("--tscale", choices=["log", "linear"])

    ang = sub.add_parser("angular", parents=[common], help="angular eigenfunction samples")
    ang.add_argument("--kind", choices=["azimuthal", "polar"])
    ang.add_argument("--ell", type=float)
    ang.add_argument("--m", type=float)
    for name in ("s1", "s2", "s3"):
        ang.add_argument(f"--{name}", type=int, choices=[1, -1])
    ang.add_argument("--grid", type=int, help="number of grid points")

    sub.add_parser("verify", parents=[common], help="run every oracle comparison")

    rep = sub.add_parser("reproduce-tables", parents=[common], help="compare against the published tables")
    rep.add_argument("--strict", action="store_true", help="exit 4 when the tolerance gate fails")
    rep.add_argument("--annex", help="write the discrepancy annex as JSON")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve(ns)
        with _sink(cfg.out) as out:
            return COMMANDS[ns.command](cfg, out)
    except ConfigError as exc:
        print(f"dunklmorse: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DunklMorseError, ArithmeticError, ValueError) as exc:
        print(f"dunklmorse: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
