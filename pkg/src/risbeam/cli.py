"""Command-line front end: gamma, coeffs, pattern, steer, schedule, compare, table2.

Configuration is JSON (see README).  Outputs are deterministic: export
headers carry a hash of the effective configuration instead of timestamps.
Exit codes: 0 success, 2 validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import circuit, compare as compare_mod, farfield, modulation, schedule as schedule_mod, steering

# Reference operating point of the 1x4 demonstrator (2.45 GHz, 313 Hz baseband).
DEFAULT_F_C_HZ = 2.45e9
DEFAULT_F0_HZ = 313.0
DEFAULT_Z_ANTENNA = (46.85, -0.8)
DEFAULT_Z_LOAD_ON = (2.99, 4.02)
DEFAULT_Z_LOAD_OFF = (96.27, -508.72)
PHASE_BAND_CENTER_DEG = 180.0
PHASE_BAND_HALF_WIDTH_DEG = 12.0

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3


class ConfigError(ValueError):
    pass


def _as_complex(value, name):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ConfigError(f"{name} must be a [re, im] pair, got {value!r}")


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    return cfg


def config_hash(cfg: dict) -> str:
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:12]


def build_geometry(cfg: dict) -> farfield.ArrayGeometry:
    g = cfg.get("geometry", {})
    f_c = float(g.get("f_c_hz", DEFAULT_F_C_HZ))
    lam = float(g.get("lambda_c_m", farfield.SPEED_OF_LIGHT / f_c))
    return farfield.ArrayGeometry(
        n_cols=int(g.get("n_cols", 4)),
        m_rows=int(g.get("m_rows", 1)),
        dx=float(g.get("dx_m", lam / 2.0)),
        dy=float(g.get("dy_m", lam / 2.0)),
        lambda_c=lam,
    )


def build_element_model(cfg: dict) -> farfield.ElementPatternModel:
    e = cfg.get("element_model", {})
    kind = e.get("kind", "isotropic")
    if kind == "isotropic":
        return farfield.ElementPatternModel.isotropic()
    return farfield.ElementPatternModel(
        kind=kind,
        q_exponent=float(e.get("q_exponent", farfield.default_q_exponent())),
        peak_gain_dbi=float(e.get("peak_gain_dbi", 1.75)),
    )


def resolve_impedances(cfg: dict):
    """Impedance point from the config: explicit values or a table lookup."""
    w = cfg.get("waveform", {})
    has_table = "impedance_table" in w
    has_explicit = any(k in w for k in ("z_antenna", "z_load_on", "z_load_off"))
    if has_table and has_explicit:
        raise ConfigError("give either explicit impedances or an impedance table, not both")
    if has_table:
        table = circuit.load_impedance_table(w["impedance_table"])
        if "frequency_hz" not in w:
            raise ConfigError("impedance_table requires frequency_hz")
        return table.lookup(float(w["frequency_hz"]))
    return circuit.ImpedancePoint(
        frequency=float(w.get("frequency_hz", DEFAULT_F_C_HZ)),
        z_antenna=_as_complex(w.get("z_antenna", DEFAULT_Z_ANTENNA), "z_antenna"),
        z_load_on=_as_complex(w.get("z_load_on", DEFAULT_Z_LOAD_ON), "z_load_on"),
        z_load_off=_as_complex(w.get("z_load_off", DEFAULT_Z_LOAD_OFF), "z_load_off"),
    )


def build_waveform(cfg: dict) -> modulation.ModulationWaveform:
    w = cfg.get("waveform", {})
    has_pair = "gamma_on" in w or "gamma_off" in w
    has_table = "impedance_table" in w
    if has_pair and has_table:
        raise ConfigError("give either an explicit gamma pair or an impedance table, not both")
    if has_pair:
        pair = circuit.ReflectionPair(
            _as_complex(w.get("gamma_on", (1.0, 0.0)), "gamma_on"),
            _as_complex(w.get("gamma_off", (-1.0, 0.0)), "gamma_off"),
        )
    else:
        pair = resolve_impedances(cfg).reflection_pair()
    f0 = float(w.get("f0_hz", DEFAULT_F0_HZ))
    duty = float(w.get("duty", 0.5))
    return modulation.ModulationWaveform(pair=pair, f0=f0, tau=0.0, t_pw=duty / f0)


def _parse_profile_arg(args, cfg) -> steering.PhaseProfile:
    if args.profile is not None and args.table2_row is not None:
        raise ConfigError("give --profile or --table2-row, not both")
    resolution = float(getattr(args, "resolution", 1.0) or 1.0)
    if args.table2_row is not None:
        catalog = steering.steering_catalog()
        if not 1 <= args.table2_row <= len(catalog):
            raise ConfigError(f"--table2-row must be in 1..{len(catalog)}")
        return steering.PhaseProfile(
            tuple(float(p) for p in catalog[args.table2_row - 1].psi_deg), resolution
        )
    if args.profile is None:
        raise ConfigError("a profile is required (--profile or --table2-row)")
    try:
        raw = [float(tok) for tok in args.profile.split(",")]
    except ValueError as exc:
        raise ConfigError(f"--profile: {exc}") from exc
    return steering.quantize_profile(raw, resolution)


def _parse_harmonic(text: str) -> int:
    try:
        m = int(text)
    except ValueError as exc:
        raise ConfigError(f"--harmonic must be an integer, got {text!r}") from exc
    return m


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_doc(doc: dict, out_path: str | None):
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", out_path)


def cmd_gamma(args, cfg) -> int:
    point = resolve_impedances(cfg)
    pair = point.reflection_pair()
    doc = {
        "config_hash": config_hash(cfg),
        "frequency_hz": point.frequency,
        "gamma_on": [pair.gamma_on.real, pair.gamma_on.imag],
        "gamma_off": [pair.gamma_off.real, pair.gamma_off.imag],
        "magnitude_on": abs(pair.gamma_on),
        "magnitude_off": abs(pair.gamma_off),
        "differential_magnitude": abs(pair.gamma_on - pair.gamma_off),
        "phase_band_deg": [
            PHASE_BAND_CENTER_DEG - PHASE_BAND_HALF_WIDTH_DEG,
            PHASE_BAND_CENTER_DEG + PHASE_BAND_HALF_WIDTH_DEG,
        ],
    }
    try:
        metrics = circuit.modulation_metrics(pair)
    except ValueError:
        # a zero-magnitude state has no phase; losses are unbounded
        metrics = None
    if metrics is not None:
        in_band = (
            abs(metrics.phase_separation_deg - PHASE_BAND_CENTER_DEG)
            <= PHASE_BAND_HALF_WIDTH_DEG
        )
        doc.update(
            {
                "phase_difference_signed_deg": metrics.phase_difference_signed_deg,
                "phase_separation_deg": metrics.phase_separation_deg,
                "loss_on_db": metrics.loss_on_db,
                "loss_off_db": metrics.loss_off_db,
                "phase_band_status": "PASS" if in_band else "FAIL",
            }
        )
    else:
        doc["phase_band_status"] = "UNDEFINED"
    if doc["differential_magnitude"] < 1e-9:
        doc["warning"] = "no modulation contrast (identical reflection states)"
        print("warning: no modulation contrast", file=sys.stderr)
    if args.format == "doc":
        _emit_doc(doc, args.out)
    else:
        lines = [f"{k}={v}" for k, v in doc.items()]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_coeffs(args, cfg) -> int:
    waveform = build_waveform(cfg)
    if args.phase is not None:
        waveform = modulation.ModulationWaveform(
            pair=waveform.pair,
            f0=waveform.f0,
            tau=farfield.element_delay(args.phase, waveform.f0),
            t_pw=waveform.t_pw,
        )
    rows = []
    for m in range(-args.max_harmonic, args.max_harmonic + 1):
        c = modulation.fourier_coefficient(waveform, m)
        rows.append((m, c))
    if args.format == "doc":
        _emit_doc(
            {
                "config_hash": config_hash(cfg),
                "f0_hz": waveform.f0,
                "duty": waveform.duty,
                "coefficients": [
                    {"m": m, "re": c.real, "im": c.imag, "magnitude": abs(c)}
                    for m, c in rows
                ],
            },
            args.out,
        )
    else:
        lines = [f"#config_hash={config_hash(cfg)}", "m,re,im,magnitude"]
        lines += [f"{m},{c.real:.12g},{c.imag:.12g},{abs(c):.12g}" for m, c in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_pattern(args, cfg) -> int:
    geometry = build_geometry(cfg)
    model = build_element_model(cfg)
    waveform = build_waveform(cfg)
    profile = _parse_profile_arg(args, cfg)
    m = _parse_harmonic(args.harmonic)
    step = float(args.grid_step or cfg.get("grid_step_deg", 1.0))
    try:
        pattern = farfield.pattern_sweep(
            geometry, model, profile, waveform, m, grid_step_deg=step,
            normalization=args.normalization,
        )
        zero_pattern = False
    except ValueError as exc:
        if "all-zero" not in str(exc):
            raise
        raw = farfield.pattern_sweep(
            geometry, model, profile, waveform, m, grid_step_deg=step,
            normalization="raw",
        )
        # flush numerical-zero noise so the export reads as -inf dB rows
        pattern = farfield.HarmonicPattern(
            m=raw.m,
            azimuth_deg=raw.azimuth_deg,
            magnitude=np.where(raw.magnitude < farfield.ZERO_PATTERN_TOL, 0.0, raw.magnitude),
            normalization="raw",
        )
        zero_pattern = True
    meta = {
        "config_hash": config_hash(cfg),
        "geometry": f"{geometry.n_cols}x{geometry.m_rows}",
        "dx_m": f"{geometry.dx:.10g}",
        "dy_m": f"{geometry.dy:.10g}",
        "lambda_c_m": f"{geometry.lambda_c:.10g}",
        "element_model": model.kind,
        "profile_psi_deg": ",".join(f"{p:.10g}" for p in profile.phases_deg),
        "grid_step_deg": f"{step:.10g}",
    }
    if zero_pattern:
        meta["zero_pattern"] = "true (harmonic carries no power for this waveform)"
        print(f"warning: harmonic {m} pattern is identically zero", file=sys.stderr)
    if args.format == "doc":
        _emit_doc(farfield.pattern_doc(pattern, meta), args.out)
    else:
        _emit(farfield.pattern_csv(pattern, meta), args.out)
    return EXIT_OK


def cmd_steer(args, cfg) -> int:
    geometry = build_geometry(cfg)
    m = _parse_harmonic(args.harmonic)
    req = steering.SteeringRequest(
        desired_azimuth_deg=float(args.target),
        harmonic=m,
        geometry=geometry,
        resolution_deg=float(args.resolution),
    )
    if args.method == "search":
        result = steering.optimize_profile_search(
            req, build_waveform(cfg), build_element_model(cfg)
        )
        profile = result.profile
        extra = {"achieved_field_magnitude": result.achieved, "converged": result.converged}
    else:
        profile = steering.progressive_phase_profile(req)
        extra = {}
    doc = steering.profile_doc(profile, harmonic=m, desired_azimuth_deg=float(args.target))
    doc["config_hash"] = config_hash(cfg)
    doc["method"] = args.method
    doc.update(extra)
    _emit_doc(doc, args.out)
    return EXIT_OK


def cmd_schedule(args, cfg) -> int:
    profile = _parse_profile_arg(args, cfg)
    f0 = float(args.f0 or cfg.get("waveform", {}).get("f0_hz", DEFAULT_F0_HZ))
    sched = schedule_mod.build_switch_schedule(profile, f0, ticks_per_period=args.ticks)
    if args.format == "csv":
        _emit(schedule_mod.tick_table_text(sched), args.out)
    else:
        doc = schedule_mod.schedule_doc(sched)
        doc["config_hash"] = config_hash(cfg)
        _emit_doc(doc, args.out)
    return EXIT_OK


def cmd_compare(args, cfg) -> int:
    geometry = build_geometry(cfg)
    model = build_element_model(cfg)
    waveform = build_waveform(cfg)
    reports = []
    for path in args.measured:
        sweep = compare_mod.load_measured_sweep(path)
        if "psi_deg" not in sweep.metadata:
            raise compare_mod.SweepFormatError(
                f"{path}: missing '#psi_deg=...' metadata naming the profile"
            )
        phases = [float(tok) for tok in sweep.metadata["psi_deg"].split(",")]
        report = compare_mod.compare_sweep(sweep, geometry, model, waveform, phases)
        doc = compare_mod.report_doc(report)
        doc["file"] = path
        reports.append(doc)
    total = sum(r["matches"] for r in reports)
    possible = sum(len(r["harmonics"]) for r in reports)
    summary = {
        "config_hash": config_hash(cfg),
        "files": reports,
        "total_matches": total,
        "total_comparisons": possible,
    }
    if args.format == "doc":
        _emit_doc(summary, args.out)
    else:
        lines = [f"#config_hash={config_hash(cfg)}", "file,harmonic,measured,predicted,match,nrms_front"]
        for r in reports:
            for h in r["harmonics"]:
                lines.append(
                    "{},{:+d},{},{},{},{:.6g}".format(
                        r["file"],
                        h["harmonic"],
                        "/".join(f"{a:g}" for a in h["measured_dominance"]),
                        "/".join(f"{a:g}" for a in h["predicted_dominance"]),
                        "yes" if h["match"] else "NO",
                        h["nrms_front"],
                    )
                )
        lines.append(f"#matches={total}/{possible}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_table2(args, cfg) -> int:
    catalog = steering.steering_catalog()
    if args.format == "doc":
        _emit_doc(
            {
                "rows": [
                    {
                        "desired_plus": list(c.desired_plus),
                        "psi_deg": list(c.psi_deg),
                        "measured_plus": [list(p) for p in c.measured_plus],
                        "measured_minus": [list(p) for p in c.measured_minus],
                    }
                    for c in catalog
                ]
            },
            args.out,
        )
    else:
        lines = ["desired_plus,psi_deg,measured_plus,measured_minus"]
        for c in catalog:
            lines.append(
                "{},{},{},{}".format(
                    "/".join(map(str, c.desired_plus)),
                    "[" + " ".join(map(str, c.psi_deg)) + "]",
                    ";".join("/".join(map(str, p)) for p in c.measured_plus),
                    ";".join("/".join(map(str, p)) for p in c.measured_minus),
                )
            )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--grid-step", type=float, help="azimuth grid step in degrees")
    common.add_argument("--format", choices=("csv", "doc"), default="csv")

    parser = argparse.ArgumentParser(
        prog="risbeam",
        description="Harmonic beam steering toolkit for time-modulated surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", parents=[common], help="reflection pair and contrast metrics")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("coeffs", parents=[common], help="harmonic coefficients of the waveform")
    p.add_argument("--max-harmonic", type=int, default=5)
    p.add_argument("--phase", type=float, help="baseband phase of the element in degrees")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("pattern", parents=[common], help="harmonic far-field sweep")
    p.add_argument("--profile", help="comma-separated per-element phases in degrees")
    p.add_argument("--table2-row", type=int, help="preset profile row (1-9)")
    p.add_argument("--harmonic", default="+1")
    p.add_argument("--normalization", choices=("raw", "peak_normalized"), default="peak_normalized")
    p.add_argument("--resolution", type=float, default=1.0)
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("steer", parents=[common], help="synthesize a phase profile")
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--harmonic", default="+1")
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--method", choices=("progressive", "search"), default="progressive")
    p.set_defaults(func=cmd_steer)

    p = sub.add_parser("schedule", parents=[common], help="switch schedule for a profile")
    p.add_argument("--profile")
    p.add_argument("--table2-row", type=int)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--f0", type=float)
    p.add_argument("--ticks", type=int, default=schedule_mod.DEFAULT_TICKS_PER_PERIOD)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("compare", parents=[common], help="measured-sweep agreement report")
    p.add_argument("measured", nargs="+", help="measured sweep files")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("table2", parents=[common], help="print the golden steering catalog")
    p.set_defaults(func=cmd_table2)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, circuit.TableFormatError, compare_mod.SweepFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
