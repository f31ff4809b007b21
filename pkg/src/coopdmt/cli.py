"""Command-line front end: ``coopdmt {dmt,outage,exponent,verify-region}``.

Settings come from an optional YAML/JSON file (``--config``) with command-line
flags taking precedence. Output is CSV (default) or JSON; both start with a
metadata record holding the tool version, seed and a hash of the effective
configuration.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np
import yaml

from . import __version__
from .dmt import (dmt_closed_form, region_infimum_cma, region_infimum_ddf,
                  region_infimum_ddf_multi, region_infimum_naf)
from .fading import LinkSnrProfile
from .montecarlo import estimate_exponent, sweep
from .protocols import Protocol, ProtocolConfig

__all__ = ["ExperimentConfig", "ConfigError", "main", "run_dmt", "run_outage", "run_exponent",
           "run_verify_region", "load_config"]

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("dmt", "outage", "exponent", "verify-region")


class ConfigError(ValueError):
    pass


def parse_protocol(name) -> Protocol:
    key = str(name).replace("_", "").replace("-", "").lower()
    for p in Protocol:
        if p.value.replace("_", "") == key:
            return p
    raise ConfigError(f"unknown protocol {name!r}")


@dataclass
class ExperimentConfig:
    command: str
    protocols: list = field(default_factory=list)
    n_nodes: int = 2
    rate_bpcu: float = 1.0
    fair_power_split: bool = False
    relay_gain_scale: float = 1.0
    ddf_relay_mi_source_only: bool = False
    ddf_block_length: int | None = None
    cma_frames_per_superframe: int = 2
    cma_repetition_share: float = 0.5
    offsets_db: dict = field(default_factory=dict)
    noiseless_links: list = field(default_factory=list)
    snr_grid_db: list = field(default_factory=lambda: [10.0, 15.0, 20.0, 25.0, 30.0])
    r_grid: list = field(default_factory=lambda: [round(0.05 * k, 2) for k in range(21)])
    trials: int = 1_000_000
    seed: int = 0
    min_outages: int = 50
    resolution: float = 1e-3
    tolerance: float = 5e-3
    out: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if isinstance(self.protocols, str):
            self.protocols = [self.protocols]
        if not self.protocols:
            raise ConfigError("at least one protocol is required")
        self.protocols = [parse_protocol(p) for p in self.protocols]
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        for name in ("n_nodes", "trials", "seed", "min_outages", "cma_frames_per_superframe"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ConfigError(f"{name} must be an integer")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        try:
            self.r_grid = [float(r) for r in self.r_grid]
            self.snr_grid_db = [float(x) for x in self.snr_grid_db]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"grids must be lists of numbers: {exc}") from None
        if self.command in ("dmt", "verify-region"):
            if not self.r_grid or any(not 0.0 <= r <= 1.0 for r in self.r_grid):
                raise ConfigError("r_grid must be a nonempty subset of [0, 1]")
        if self.command in ("outage", "exponent"):
            g = self.snr_grid_db
            if not g or any(b <= a for a, b in zip(g, g[1:])):
                raise ConfigError("snr_grid_db must be nonempty and strictly increasing")
        if self.resolution <= 0 or self.tolerance < 0:
            raise ConfigError("resolution must be positive and tolerance nonnegative")
        # build every protocol config and the link profile now, so that no
        # computation starts on an invalid setup
        try:
            self.protocol_configs()
            self.profile(0.0)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        if self.command == "verify-region":
            for p in self.protocols:
                if p not in _REGION:
                    raise ConfigError(f"no region optimizer for {p.value}")
                if not 2 <= self.n_nodes <= 4 or (p in (Protocol.NAF, Protocol.DDF) and self.n_nodes != 2):
                    raise ConfigError(f"unsupported n_nodes={self.n_nodes} for {p.value}")

    def protocol_configs(self) -> list:
        out = []
        for p in self.protocols:
            n = self.n_nodes if p is not Protocol.DIRECT else 1
            out.append(ProtocolConfig(
                p, n, rate_bpcu=float(self.rate_bpcu), fair_power_split=bool(self.fair_power_split),
                relay_gain_scale=float(self.relay_gain_scale),
                ddf_relay_mi_source_only=bool(self.ddf_relay_mi_source_only),
                ddf_block_length=self.ddf_block_length,
                cma_frames_per_superframe=self.cma_frames_per_superframe,
                cma_repetition_share=float(self.cma_repetition_share)))
        return out

    def profile(self, snr_db: float) -> LinkSnrProfile:
        return LinkSnrProfile(float(snr_db), {str(k): float(v) for k, v in self.offsets_db.items()},
                              frozenset(self.noiseless_links))

    def as_record(self) -> dict:
        d = dataclasses.asdict(self)
        d["protocols"] = [p.value for p in self.protocols]
        return d

    def digest(self) -> str:
        rec = self.as_record()
        rec.pop("out")
        rec.pop("format")
        blob = json.dumps(rec, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


_REGION = {
    Protocol.NAF: lambda n, r, res: region_infimum_naf(r, res),
    Protocol.DDF: lambda n, r, res: region_infimum_ddf(r, res),
    Protocol.DDF_MULTI: region_infimum_ddf_multi,
    Protocol.CMA_NAF: region_infimum_cma,
}
_KEYS = {f.name for f in dataclasses.fields(ExperimentConfig)} - {"command"}


def load_config(path) -> dict:
    """Read a YAML or JSON mapping. Raises OSError on I/O failure."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text) if str(path).endswith(".json") else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a mapping")
    return data


def build_config(command: str, file_data: dict, overrides: dict) -> ExperimentConfig:
    data = dict(file_data)
    if data.pop("command", command) != command:
        raise ConfigError(f"config file is for {file_data['command']!r}, not {command!r}")
    if "protocol" in data:
        if "protocols" in data:
            raise ConfigError("give either protocol or protocols, not both")
        data["protocols"] = data.pop("protocol")
    unknown = set(data) - _KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig(command, **data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


# ----------------------------------------------------------------- commands

def run_dmt(cfg: ExperimentConfig):
    rows = []
    for p in cfg.protocols:
        for r in cfg.r_grid:
            try:
                d = dmt_closed_form(p, cfg.n_nodes if p is not Protocol.DIRECT else 1, r)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            rows.append({"protocol": p.value, "n": cfg.n_nodes, "r": r, "d": d})
    return ["protocol", "n", "r", "d"], rows, EXIT_OK


def run_outage(cfg: ExperimentConfig):
    rows = []
    for pc in cfg.protocol_configs():
        res = sweep(pc, cfg.profile(cfg.snr_grid_db[0]), cfg.snr_grid_db, cfg.trials, cfg.seed)
        for e in res.estimates:
            rows.append({"protocol": pc.protocol.value, "snr_db": e.snr_db, "rate_bpcu": e.rate_bpcu,
                         "trials": e.trials, "outages": e.outages, "p_out": e.p_hat,
                         "ci_low": e.ci_low, "ci_high": e.ci_high, "seed": e.seed})
    header = ["protocol", "snr_db", "rate_bpcu", "trials", "outages", "p_out", "ci_low",
              "ci_high", "seed"]
    return header, rows, EXIT_OK


def run_exponent(cfg: ExperimentConfig):
    rows = []
    status = EXIT_OK
    for pc in cfg.protocol_configs():
        res = sweep(pc, cfg.profile(cfg.snr_grid_db[0]), cfg.snr_grid_db, cfg.trials, cfg.seed)
        try:
            fit = estimate_exponent(res, cfg.min_outages)
            slope, icpt, used = fit.slope, fit.intercept, len(fit.snr_db)
        except ValueError:
            slope = icpt = float("nan")
            used = 0
            status = EXIT_VERIFY
        rows.append({"protocol": pc.protocol.value, "n": pc.n_nodes, "rate_bpcu": pc.rate_bpcu,
                     "slope": slope, "intercept": icpt, "points_used": used,
                     "min_outages": cfg.min_outages})
    header = ["protocol", "n", "rate_bpcu", "slope", "intercept", "points_used", "min_outages"]
    return header, rows, status


def run_verify_region(cfg: ExperimentConfig):
    rows = []
    worst = 0.0
    for p in cfg.protocols:
        for r in cfg.r_grid:
            closed = dmt_closed_form(p, cfg.n_nodes, r)
            region = float(_REGION[p](cfg.n_nodes, r, cfg.resolution))
            err = abs(region - closed)
            worst = max(worst, err)
            rows.append({"protocol": p.value, "n": cfg.n_nodes, "r": r, "d_closed": closed,
                         "d_region": region, "abs_err": err})
    header = ["protocol", "n", "r", "d_closed", "d_region", "abs_err"]
    return header, rows, EXIT_OK if worst <= cfg.tolerance else EXIT_VERIFY


RUNNERS = {"dmt": run_dmt, "outage": run_outage, "exponent": run_exponent,
           "verify-region": run_verify_region}


# ------------------------------------------------------------------- output

def _clean(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def render(cfg: ExperimentConfig, header, rows) -> str:
    meta = {"tool": "coopdmt", "version": __version__, "command": cfg.command, "seed": cfg.seed,
            "config_sha256": cfg.digest()}
    rows = [{k: _clean(row[k]) for k in header} for row in rows]
    if cfg.format == "json":
        return json.dumps({"metadata": meta, "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    buf.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _parser():
    ap = argparse.ArgumentParser(prog="coopdmt", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"coopdmt {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="YAML or JSON settings file")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--trials", type=int)
        sp.add_argument("--out", help="output path (stdout if omitted)")
        sp.add_argument("--format", choices=("csv", "json"))
        sp.add_argument("--protocol", action="append", dest="protocols",
                        help="protocol name; repeat for several")
        sp.add_argument("--n-nodes", type=int, dest="n_nodes")
        sp.add_argument("--rate", type=float, dest="rate_bpcu")
    return ap


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    overrides = {k: getattr(args, k) for k in ("seed", "trials", "out", "format", "protocols",
                                                "n_nodes", "rate_bpcu")}
    try:
        file_data = load_config(args.config) if args.config else {}
        cfg = build_config(args.command, file_data, overrides)
        if cfg.out not in (None, "-") and not os.path.isdir(os.path.dirname(os.path.abspath(cfg.out))):
            raise FileNotFoundError(f"output directory for {cfg.out!r} does not exist")
        header, rows, status = RUNNERS[args.command](cfg)
    except ConfigError as exc:
        print(f"coopdmt: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"coopdmt: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    text = render(cfg, header, rows)
    try:
        if cfg.out in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"coopdmt: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if status == EXIT_VERIFY:
        print("coopdmt: verification failed", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
