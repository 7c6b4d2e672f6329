"""Command-line front end: experiment configuration, runs, and data files.

Every run writes CSV data (12 significant digits, LF line endings,
header row), a summary.json with fits and diagnostics, and a run.json
manifest with sha256 checksums of all outputs.  Exit codes: 0 success,
1 usage/configuration error, 2 numerical/fit error, 3 edge not found.
"""

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, classical, edge
from .classical import CHAOTIC_SEED, FIXED_POINT_PLUS
from .coherent import coherent_state_at, project_oo
from .errors import (
    ConfigError,
    EdgeNotFoundError,
    KickedTopError,
)
from .evolution import fidelity_series, plateau
from .spin import unitarity_residual
from .top import (
    KickedTopSpec,
    build_qkt,
    critical_delta,
    off_block_residual,
    parity_basis,
    perturbation_stats,
)
from .tsallis import classify_decay, fit_qexp

DEFAULTS = {
    "alpha": 3.0,
    "steps": 3000,
    "z_step": 0.002,
    "tail_fraction": 0.2,
    "format": "csv",
}

REPRODUCE_TARGETS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "table1")
TABLE1_J = (120, 150, 180, 210, 240, 280, 360, 480)

# accepted configuration keys and their types; "J_list" and "deltas" are
# comma-separated in files and on the command line
CONFIG_TYPES = {
    "kind": str, "target": str,
    "J": int, "alpha": float, "delta": float, "weak_delta": float,
    "state": str, "state_z": float, "steps": int,
    "window": str, "q_grid": str, "z_range": str, "z_step": float,
    "tail_fraction": float, "deltas": str, "J_list": str,
    "d0": float, "out": str, "format": str, "hold": str,
}


def _fmt(x):
    """12-significant-digit representation used in every CSV."""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def parse_config_file(path):
    """Flat key-value file: one `key = value` (or `key: value`) per line,
    '#' comments allowed."""
    raw = {}
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        for sep in ("=", ":"):
            if sep in line:
                key, val = line.split(sep, 1)
                break
        else:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        raw[key.strip().replace("-", "_")] = val.strip()
    return raw


def merge_config(file_kv, flag_kv):
    """Validated configuration; command-line flags win over the file."""
    merged = dict(file_kv)
    merged.update({k: v for k, v in flag_kv.items() if v is not None})
    unknown = sorted(set(merged) - set(CONFIG_TYPES))
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    out = {}
    for key, val in merged.items():
        typ = CONFIG_TYPES[key]
        try:
            out[key] = typ(val)
        except (TypeError, ValueError):
            raise ConfigError(
                f"configuration key {key!r} expects {typ.__name__}, got {val!r}"
            )
    for key, val in DEFAULTS.items():
        out.setdefault(key, val)
    return out


def _parse_triple(text, name):
    parts = [p for p in str(text).replace(",", " ").split() if p]
    if len(parts) != 3:
        raise ConfigError(f"{name} expects three comma-separated numbers, got {text!r}")
    return tuple(float(p) for p in parts)


def _parse_pair(text, name):
    parts = [p for p in str(text).replace(",", " ").split() if p]
    if len(parts) != 2:
        raise ConfigError(f"{name} expects two comma-separated numbers, got {text!r}")
    return float(parts[0]), float(parts[1])


def _parse_list(text, typ, name):
    try:
        return [typ(p) for p in str(text).replace(",", " ").split() if p]
    except ValueError:
        raise ConfigError(f"{name} expects comma-separated {typ.__name__}s, got {text!r}")


def _require(cfg, *keys):
    missing = [k for k in keys if k not in cfg]
    if missing:
        raise ConfigError(f"{cfg.get('kind', 'run')} requires: {', '.join(missing)}")


def _even_J(cfg):
    J = cfg["J"]
    if J % 2 != 0 or J < 2:
        raise ConfigError(f"quantum experiments need even J >= 2, got {J}")
    return J


def _json_value(v):
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    return v


class RunWriter:
    """Collects output files and finalizes the run manifest."""

    def __init__(self, out_dir, cfg):
        self.dir = Path(out_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.cfg = cfg
        self.fmt = cfg.get("format", "csv")
        self.t0 = time.time()
        self.entries = []

    def _register(self, path):
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        self.entries.append({"path": path.name, "sha256": digest})

    def csv(self, name, header, rows):
        """Data table in the configured format(s); name is the CSV name."""
        rows = list(rows)
        path = None
        if self.fmt in ("csv", "both"):
            path = self.dir / name
            lines = [",".join(header)]
            lines += [",".join(_fmt(v) for v in row) for row in rows]
            path.write_text("\n".join(lines) + "\n", newline="\n")
            self._register(path)
        if self.fmt in ("json", "both"):
            jpath = self.dir / (Path(name).stem + ".json")
            jpath.write_text(json.dumps(
                {"columns": list(header),
                 "rows": [[_json_value(v) for v in row] for row in rows]},
                indent=2) + "\n")
            self._register(jpath)
            path = path or jpath
        return path

    def json(self, name, obj):
        path = self.dir / name
        path.write_text(json.dumps(obj, indent=2, default=_json_default) + "\n")
        self._register(path)
        return path

    def finalize(self):
        record = {
            "config": {k: v for k, v in sorted(self.cfg.items())},
            "version": __version__,
            "wall_time_s": round(time.time() - self.t0, 3),
            "outputs": self.entries,
        }
        path = self.dir / "run.json"
        path.write_text(json.dumps(record, indent=2) + "\n")
        for entry in self.entries:   # manifest must validate on completion
            data = (self.dir / entry["path"]).read_bytes()
            if hashlib.sha256(data).hexdigest() != entry["sha256"]:
                raise KickedTopError(f"checksum mismatch for {entry['path']}")
        return record


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, "__dataclass_fields__"):
        return {k: getattr(obj, k) for k in obj.__dataclass_fields__
                if k not in ("amps", "T")}
    return str(obj)


def _initial_state(cfg, J):
    if "state" in cfg:
        x, y, z = _parse_triple(cfg["state"], "state")
        full = coherent_state_at(J, x, y, z)
        decomp = parity_basis(J)
        state, weight = project_oo(full, decomp)
        return state, {"center": (x, y, z), "oo_weight": weight}
    if "state_z" in cfg:
        z = cfg["state_z"]
        pt = edge.scan_point(z, hold=cfg.get("hold", "x"))
        state = edge.scan_state(J, z, hold=cfg.get("hold", "x"))
        return state, {"center": pt, "scan_z": z}
    raise ConfigError("provide --state x,y,z or --state-z Z")


def _fit_kwargs(cfg):
    kw = {}
    if "window" in cfg:
        a, b = _parse_pair(cfg["window"], "window")
        kw["window"] = (int(a), int(b))
    if "q_grid" in cfg:
        kw["q_grid"] = _parse_triple(cfg["q_grid"], "q_grid")
    return kw


def _series_csv(writer, name, series):
    return writer.csv(name, ("t", "overlap"),
                      list(zip(series.steps.tolist(), series.values.tolist())))


# ----------------------------------------------------------- experiments

def run_build(cfg, writer):
    _require(cfg, "J")
    J = _even_J(cfg)
    spec = KickedTopSpec(J, cfg["alpha"], cfg.get("delta", 0.0))
    U = build_qkt(spec)
    decomp = parity_basis(J)
    stats = perturbation_stats(spec)
    writer.json("summary.json", {
        "J": J, "alpha": cfg["alpha"], "delta": cfg.get("delta", 0.0),
        "dim": 2 * J + 1,
        "unitarity_residual": unitarity_residual(U),
        "off_block_residual": off_block_residual(U, decomp),
        "block_dims": decomp.block_dims,
        "perturbation": stats,
    })


def run_fidelity(cfg, writer):
    _require(cfg, "J", "delta")
    J = _even_J(cfg)
    state, meta = _initial_state(cfg, J)
    spec = KickedTopSpec(J, cfg["alpha"], cfg["delta"])
    series = fidelity_series(spec, state, cfg["steps"])
    _series_csv(writer, "overlap.csv", series)
    writer.json("summary.json", {
        "J": J, "alpha": cfg["alpha"], "delta": cfg["delta"],
        "steps": cfg["steps"], "initial": meta,
        "plateau": plateau(series, cfg["tail_fraction"]),
    })
    return series


def run_fit(cfg, writer):
    series = run_fidelity(cfg, writer)
    fit = fit_qexp(series, **_fit_kwargs(cfg))
    writer.json("fit.json", {"qexp": fit})
    return fit


def run_classify(cfg, writer):
    series = run_fidelity(cfg, writer)
    cls = classify_decay(series)
    writer.json("classification.json", {"kind": cls.kind, "detail": cls})
    return cls


def _scan_kwargs(cfg):
    kw = {}
    if "z_range" in cfg:
        kw["z_range"] = _parse_pair(cfg["z_range"], "z_range")
    if "z_step" in cfg:
        kw["z_step"] = cfg["z_step"]
    if "weak_delta" in cfg:
        kw["weak_delta"] = cfg["weak_delta"]
    if "hold" in cfg:
        kw["hold"] = cfg["hold"]
    if "steps" in cfg and cfg["steps"] != DEFAULTS["steps"]:
        kw["steps"] = cfg["steps"]
    return kw


def run_edge_scan(cfg, writer):
    _require(cfg, "J")
    J = _even_J(cfg)
    delta = cfg.get("delta", edge.scan_delta_for(J))
    result = edge.scan_edge(J, alpha=cfg["alpha"], delta=delta, **_scan_kwargs(cfg))
    rows = [(p.z, p.kind, p.decades,
             p.weak_decades if p.weak_decades is not None else "",
             p.qexp.q if p.qexp else "")
            for p in result.points]
    writer.csv("scan.csv", ("z", "class", "decades", "weak_decades", "q_rel"), rows)
    writer.json("summary.json", {
        "J": J, "alpha": cfg["alpha"], "delta": delta,
        "edge_z": result.edge_z, "edge_offset": result.edge_offset,
        "hold": result.hold,
    })
    return result


def run_delta_sweep(cfg, writer):
    _require(cfg, "J", "state_z", "deltas")
    J = _even_J(cfg)
    deltas = _parse_list(cfg["deltas"], float, "deltas")
    result = edge.delta_sweep(J, cfg["alpha"], cfg["state_z"], deltas,
                              hold=cfg.get("hold", "x"))
    rows = [(p.delta, p.q_rel if p.q_rel is not None else "",
             p.tau if p.tau is not None else "", p.error or "")
            for p in result.points]
    writer.csv("sweep.csv", ("delta", "q_rel", "tau", "error"), rows)
    writer.json("summary.json", result)
    return result


def run_table1(cfg, writer):
    J_list = _parse_list(cfg.get("J_list", ",".join(map(str, TABLE1_J))),
                         int, "J_list")
    rows = edge.summary_table(J_list, alpha=cfg["alpha"],
                              scan_kw=_scan_kwargs(cfg) or None,
                              hold=cfg.get("hold", "x"))
    csv_rows = [(r.J,
                 r.edge_offset if r.edge_offset is not None else "",
                 r.delta_c, r.q_rel_c if r.q_rel_c is not None else "")
                for r in rows]
    writer.csv("table1.csv", ("J", "edge_offset", "delta_c", "q_rel_c"), csv_rows)
    ok = [r for r in rows if r.error is None and r.q_rel_c is not None]
    writer.csv("qc_vs_invJ.csv", ("inv_J", "q_rel_c"),
               [(1.0 / r.J, r.q_rel_c) for r in ok])
    writer.csv("edge_vs_invJ.csv", ("edge_offset", "inv_J"),
               [(r.edge_offset, 1.0 / r.J) for r in ok])
    writer.json("summary.json", {"rows": rows})
    return rows


def run_classical(cfg, writer, sub):
    if sub == "orbit":
        _require(cfg, "state")
        p0 = _parse_triple(cfg["state"], "state")
        pts = classical.orbit(np.array(p0), cfg["alpha"], cfg["steps"])
        proj = classical.project_orbit(pts)
        writer.csv("orbit.csv", ("x", "y", "z"), [tuple(p) for p in pts])
        writer.csv("orbit_projected.csv", ("px", "pz"), [tuple(p) for p in proj])
        writer.json("summary.json", {
            "alpha": cfg["alpha"], "steps": cfg["steps"], "seed": p0,
            "norm_drift": float(abs((pts**2).sum(axis=1) - 1.0).max()),
        })
    elif sub == "sensitivity":
        _require(cfg, "state")
        p0 = _parse_triple(cfg["state"], "state")
        sens = classical.sensitivity(np.array(p0), cfg["alpha"], cfg["steps"],
                                     d0=cfg.get("d0", 1e-9))
        writer.csv("xi.csv", ("t", "xi"),
                   list(zip(sens.steps.tolist(), sens.xi.tolist())))
        writer.json("summary.json", sens)
    elif sub == "project":
        _require(cfg, "state")
        p0 = _parse_triple(cfg["state"], "state")
        px, pz = classical.project(p0)
        writer.csv("projected.csv", ("px", "pz"), [(px, pz)])
        print(f"({_fmt(px)}, {_fmt(pz)})")
    else:
        raise ConfigError(f"unknown classical subcommand {sub!r}")


# ----------------------------------------------------------- reproduce

def reproduce_fig1(cfg, writer):
    J, delta, steps = 480, 0.005, min(cfg["steps"], 1000)
    spec = KickedTopSpec(J, cfg["alpha"], delta)
    decomp = parity_basis(J)
    out = {}
    for label, pt in (("fixed_point", FIXED_POINT_PLUS), ("chaotic", CHAOTIC_SEED)):
        state, _ = project_oo(coherent_state_at(J, *pt), decomp)
        series = fidelity_series(spec, state, steps)
        _series_csv(writer, f"fig1_{label}.csv", series)
        out[label] = {"center": pt, "min_overlap": float(series.values.min()),
                      "class": classify_decay(series).kind}
    writer.json("summary.json", {"J": J, "delta": delta, "steps": steps, **out})


def reproduce_fig2(cfg, writer):
    pts = classical.orbit(np.array(CHAOTIC_SEED), cfg["alpha"], 10000)
    proj = classical.project_orbit(pts)
    writer.csv("fig2_orbit.csv", ("px", "pz"), [tuple(p) for p in proj])
    writer.json("summary.json", {"alpha": cfg["alpha"], "points": len(proj),
                                 "seed": CHAOTIC_SEED})


def reproduce_fig3(cfg, writer):
    J = 240
    z = cfg.get("state_z", edge.Z_F - 0.176)
    state = edge.scan_state(J, z, hold=cfg.get("hold", "x"))
    runs = {
        "weak": dict(delta=0.0003, steps=3000, window=(600, 2500)),
        "fgr": dict(delta=0.01, steps=300, window=(20, 70)),
    }
    summary = {"J": J, "alpha": cfg["alpha"], "state_z": z}
    for label, p in runs.items():
        series = fidelity_series(KickedTopSpec(J, cfg["alpha"], p["delta"]),
                                 state, p["steps"])
        _series_csv(writer, f"fig3_{label}.csv", series)
        fit = fit_qexp(series, window=p["window"])
        summary[label] = {"delta": p["delta"], "window": p["window"], "fit": fit}
    writer.json("summary.json", summary)
    return summary


def reproduce_fig4(cfg, writer):
    J_list = _parse_list(cfg.get("J_list", "120,240,360,480"), int, "J_list")
    deltas = np.geomspace(2e-4, 2e-2, 9)
    summary = {}
    for J in J_list:
        scan = edge.scan_edge(J, delta=edge.scan_delta_for(J),
                              hold=cfg.get("hold", "x"))
        sweep = edge.delta_sweep(J, cfg["alpha"], scan.edge_z, deltas,
                                 hold=cfg.get("hold", "x"))
        rows = [(p.delta, p.q_rel if p.q_rel is not None else "",
                 p.tau if p.tau is not None else "") for p in sweep.points]
        writer.csv(f"fig4_J{J}.csv", ("delta", "q_rel", "tau"), rows)
        summary[f"J{J}"] = {"edge_z": scan.edge_z, "tau_slope": sweep.tau_slope,
                            "q_rel_c": sweep.q_rel_c, "q_rel_s": sweep.q_rel_s}
    writer.json("summary.json", summary)


def reproduce_fig5(cfg, writer):
    cfg = dict(cfg)
    cfg.setdefault("J_list", ",".join(map(str, TABLE1_J)))
    run_table1(cfg, writer)


def reproduce_fig6(cfg, writer):
    J_list = _parse_list(cfg.get("J_list", "120,480"), int, "J_list")
    orbit_pts = classical.orbit(np.array(CHAOTIC_SEED), cfg["alpha"], 10000)
    quarter = [classical.project(p) for p in orbit_pts
               if p[0] >= 0 and p[2] >= 0]
    writer.csv("fig6_background.csv", ("px", "pz"), quarter)
    inset = []
    for J in J_list:
        scan = edge.scan_edge(J, delta=edge.scan_delta_for(J),
                              hold=cfg.get("hold", "x"))
        center = edge.scan_point(scan.edge_z, hold=cfg.get("hold", "x"))
        ring = _footprint_ring(center, J)
        writer.csv(f"fig6_footprint_J{J}.csv", ("px", "pz"),
                   [classical.project(p) for p in ring])
        inset.append((scan.edge_offset, 1.0 / J))
    writer.csv("fig6_inset.csv", ("edge_offset", "inv_J"), inset)
    writer.json("summary.json", {"J_list": J_list})


def _footprint_ring(center, J, n=181):
    """Circle of angular radius sqrt(2/J) around a sphere point: the 1/e
    contour of the coherent-state overlap cos(dtheta/2)^(2J)."""
    c = np.asarray(center, dtype=float)
    radius = np.sqrt(2.0 / J)
    # orthonormal tangent frame at c
    a = np.array([0.0, 0.0, 1.0])
    if abs(c @ a) > 0.9:
        a = np.array([1.0, 0.0, 0.0])
    u = np.cross(c, a)
    u /= np.linalg.norm(u)
    v = np.cross(c, u)
    ang = np.linspace(0, 2 * np.pi, n)
    ring = (np.cos(radius) * c[None, :]
            + np.sin(radius) * (np.cos(ang)[:, None] * u[None, :]
                                + np.sin(ang)[:, None] * v[None, :]))
    return ring


def run_reproduce(cfg, writer):
    target = cfg.get("target")
    handlers = {
        "fig1": reproduce_fig1, "fig2": reproduce_fig2, "fig3": reproduce_fig3,
        "fig4": reproduce_fig4, "fig5": reproduce_fig5, "fig6": reproduce_fig6,
        "table1": run_table1,
    }
    if target not in handlers:
        raise ConfigError(
            f"unknown reproduce target {target!r}; choose from {', '.join(REPRODUCE_TARGETS)}"
        )
    handlers[target](cfg, writer)


# ----------------------------------------------------------- entry point

def build_parser():
    parser = argparse.ArgumentParser(
        prog="kickedtop",
        description="Kicked-top overlap decay and edge-of-chaos experiments",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="flat key=value configuration file")
        p.add_argument("--J", type=int)
        p.add_argument("--alpha", type=float)
        p.add_argument("--delta", type=float)
        p.add_argument("--weak-delta", dest="weak_delta", type=float)
        p.add_argument("--state", help="x,y,z on the unit sphere")
        p.add_argument("--state-z", dest="state_z", type=float,
                       help="center on the scan circle at this z")
        p.add_argument("--steps", type=int)
        p.add_argument("--window", help="fit window 'a,b'")
        p.add_argument("--q-grid", dest="q_grid", help="'lo,hi,step'")
        p.add_argument("--z-range", dest="z_range", help="'lo,hi'")
        p.add_argument("--z-step", dest="z_step", type=float)
        p.add_argument("--deltas", help="comma-separated perturbations")
        p.add_argument("--J-list", dest="J_list", help="comma-separated J values")
        p.add_argument("--d0", type=float)
        p.add_argument("--hold", choices=("x", "y"))
        p.add_argument("--tail-fraction", dest="tail_fraction", type=float)
        p.add_argument("--out", help="output directory (default runs/<command>)")
        p.add_argument("--format", choices=("csv", "json", "both"))

    for name in ("build", "fidelity", "fit", "classify", "edge-scan",
                 "delta-sweep", "table1"):
        add_common(sub.add_parser(name))
    p_classical = sub.add_parser("classical")
    p_classical.add_argument("mode", choices=("orbit", "sensitivity", "project"))
    add_common(p_classical)
    p_rep = sub.add_parser("reproduce")
    p_rep.add_argument("target", choices=REPRODUCE_TARGETS)
    add_common(p_rep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command

    flag_kv = {k: v for k, v in vars(args).items()
               if k not in ("command", "config", "mode", "target") and v is not None}
    try:
        file_kv = parse_config_file(args.config) if args.config else {}
        cfg = merge_config(file_kv, flag_kv)
        cfg["kind"] = command.replace("-", "_")
        if command == "classical":
            cfg["kind"] = f"classical_{args.mode}"
        if command == "reproduce":
            cfg["target"] = args.target
        out_dir = cfg.get("out") or str(Path("runs") / cfg["kind"])
        writer = RunWriter(out_dir, cfg)

        if command == "build":
            run_build(cfg, writer)
        elif command == "fidelity":
            run_fidelity(cfg, writer)
        elif command == "fit":
            run_fit(cfg, writer)
        elif command == "classify":
            run_classify(cfg, writer)
        elif command == "edge-scan":
            run_edge_scan(cfg, writer)
        elif command == "delta-sweep":
            run_delta_sweep(cfg, writer)
        elif command == "table1":
            run_table1(cfg, writer)
        elif command == "classical":
            run_classical(cfg, writer, args.mode)
        elif command == "reproduce":
            run_reproduce(cfg, writer)
        writer.finalize()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EdgeNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except KickedTopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"run complete: {writer.dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
