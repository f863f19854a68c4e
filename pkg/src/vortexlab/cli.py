"""Command-line entry point ``vortexlab``.

Exit codes: 0 success, 2 usage or configuration error, 3 closed form requested
for complex squeezing, 4 impossible herald.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys

import numpy as np

from vortexlab import chip, fock, gaussian
from vortexlab.analysis import angular, entanglement, field, wigner
from vortexlab.angles import parse_angle
from vortexlab.config import ConfigError, RunConfig, precision_from_env
from vortexlab.errors import ImpossibleHeraldError, UnsupportedAnalyticError, VortexLabError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ANALYTIC = 3
EXIT_HERALD = 4

DEFAULT_GRID = "-4:4:201"
DEFAULT_SWEEP = "r=0:1.2:25"
DEFAULT_PHIS = "pi/4,1.2,0.3,0.15,pi/2"
ENTANGLEMENT_CUTOFF = 24


class UsageError(Exception):
    pass


def _fmt(value: float, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and math.isnan(value):
        return "nan"
    return f"{value:.{digits}e}"


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv(header, rows, digits) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v, digits) for v in row) + "\n")
    return buf.getvalue()


def _grid_rows(grid: field.Grid2D, *columns):
    xs, ys = grid.xs, grid.ys
    for iy in range(grid.y_steps):
        for ix in range(grid.x_steps):
            yield (float(xs[ix]), float(ys[iy])) + tuple(float(c[iy, ix]) for c in columns)


def _angle(text):
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text):
    try:
        return field.Grid2D.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError(f"must be finite and non-negative: {text!r}")
    return v


def _state_for(args) -> fock.PureState:
    cutoff = args.cutoff if args.cutoff is not None else gaussian.default_cutoff(args.r)
    return chip.make_cv_vortex(args.r, args.eta_prime, args.n, cutoff, theta_s=args.theta_s)


def cmd_field(args, digits):
    grid = args.grid
    if args.mode == "analytic":
        psi = field.vortex_wavefunction_analytic(args.r, args.eta_prime, args.n, grid, args.theta_s)
    else:
        psi = field.field_wavefunction(_state_for(args), grid)
    prob, phase = field.density_and_phase(psi)
    if args.what == "prob":
        text = _csv(("E1", "E2", "value"), _grid_rows(grid, prob), digits)
    elif args.what == "phase":
        text = _csv(("E1", "E2", "value"), _grid_rows(grid, phase), digits)
    else:
        text = _csv(("E1", "E2", "prob", "phase"), _grid_rows(grid, prob, phase), digits)
    _write(text, args.out)


def cmd_wigner(args, digits):
    slc = wigner.WignerSlice(args.delta1, args.delta2, args.grid)
    if args.mode == "analytic":
        if args.theta_s != 0:
            raise UnsupportedAnalyticError("the closed-form Wigner function needs real squeezing")
        w = wigner.wigner_slice_analytic(args.r, args.eta_prime, slc, args.n)
    else:
        w = wigner.wigner_slice_numeric(_state_for(args), slc)
    _write(_csv(("a1", "a2", "W"), _grid_rows(args.grid, w), digits), args.out)


def _parse_sweep(text: str):
    name, _, spec = text.partition("=")
    if name.strip() != "r" or not spec:
        raise UsageError(f"--sweep expects r=min:max:steps, got {text!r}")
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"--sweep expects r=min:max:steps, got {text!r}")
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1 or lo < 0 or hi < lo:
        raise UsageError("--sweep needs 0 <= min <= max and steps >= 1")
    return np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])


def cmd_entanglement(args, digits):
    rs = _parse_sweep(args.sweep)
    try:
        phis = [parse_angle(p) for p in args.phi.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    header = ["r", "Phi", "E_analytic"]
    if args.numeric_check:
        header.append("E_numeric")
    if args.ratio:
        header.append("ratio")
    rows = []
    for phi in phis:
        for r in rs:
            r = float(r)
            row = [r, phi, entanglement.logneg_analytic(r, phi)]
            if args.numeric_check:
                state = entanglement.elliptical_vortex(r, phi, cutoff=args.cutoff)
                row.append(entanglement.logneg_numeric(state, check=False).log_negativity)
            if args.ratio:
                row.append(entanglement.entanglement_ratio(r, phi) if r > 0 else None)
            rows.append(row)
    if args.format == "json":
        records = [dict(zip(header, row)) for row in rows]
        _write(json.dumps(records, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _write(_csv(header, rows, digits), args.out)


def _amplitude_list(state: fock.PureState, floor: float = 1e-14):
    amps = state.amplitudes
    out = []
    for idx in zip(*np.nonzero(np.abs(amps) > floor)):
        a = complex(amps[idx])
        out.append({"index": [int(i) for i in idx], "re": a.real, "im": a.imag})
    return out


def _chip_report(cfg: RunConfig, circuit: chip.CircuitSpec | None = None) -> dict:
    p = cfg.params
    cutoff = cfg.cutoff if cfg.cutoff is not None else gaussian.default_cutoff(p.r, 1e-12)
    if circuit is not None:
        if circuit.modes != 4:
            raise UsageError("a circuit file for the chip report needs exactly 4 modes")
        state = chip.simulate(circuit, fock.vacuum(4, cutoff))
    elif cfg.order == "exact":
        state = chip.exact_state(p, cutoff, cfg.t1, cfg.t2)
    else:
        state = chip.first_order_state(p, cutoff, cfg.t1, cfg.t2)
    heralded, prob = chip.herald_vortex(state, cfg.herald)
    weight = chip.herald_weight(p, cfg.herald)
    target = chip.make_heralded_vortex(p.r, weight, heralded.cutoff, p.theta_s)
    ent = entanglement.logneg_numeric(heralded, check=False)
    return {
        "scenario": "chip",
        "order": "circuit" if circuit is not None else cfg.order,
        "herald": cfg.herald,
        "herald_probability": prob,
        "leakage": heralded.leakage,
        "eta": p.eta,
        "eta_prime": p.eta_prime,
        "target_weight": {"re": weight.real, "im": weight.imag},
        "fidelity": fock.fidelity(heralded, target),
        "lz_expectation": angular.lz_expectation(heralded),
        "log_negativity": ent.log_negativity,
        "cutoff": cutoff,
        "amplitudes": _amplitude_list(heralded),
    }


def _three_mode_report(cfg: RunConfig) -> dict:
    p = cfg.params
    ts = [cfg.t1, cfg.t2 if cfg.t2 is not None else cfg.t1, cfg.t3 if cfg.t3 is not None else cfg.t1]
    taps = [(math.sqrt(1 - t * t), t) for t in ts]
    res = chip.three_mode_chip(p.r, taps, cfg.cutoff, p.theta_s)
    rank = fock.schmidt_decompose(res.d1, [1]).rank
    return {
        "scenario": "three-mode",
        "herald_probabilities": {"D1": res.probabilities[0], "D2": res.probabilities[1]},
        "leakage": res.d1.leakage,
        "branch_amplitudes": [{"re": a.real, "im": a.imag, "abs": abs(a)} for a in res.amplitudes],
        "relative_phases": list(res.phases),
        "schmidt_rank_1_vs_23": rank,
    }


def cmd_chip(args, digits):
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    cfg = RunConfig.from_text(text, "three-mode" if args.three_mode else "chip")
    circuit = None
    if args.circuit is not None:
        if args.three_mode:
            raise UsageError("--circuit cannot be combined with --three-mode")
        try:
            with open(args.circuit, encoding="utf-8") as fh:
                circuit = chip.CircuitSpec.from_text(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read circuit: {exc}") from None
    report = _three_mode_report(cfg) if args.three_mode else _chip_report(cfg, circuit)
    _write(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)


def cmd_budget(args, digits):
    b = chip.BudgetInput(
        pair_flux=args.pair_flux,
        prop_loss_db_per_cm=args.prop_loss,
        length_cm=args.length,
        geometric_loss_db=args.geom_loss,
        coupling_loss_db=args.coupling_loss,
        detector_efficiency=args.det_eff,
        tap_reflectance=args.tap_r2,
        tap_count=args.taps,
    )
    flux = chip.heralded_flux(b)
    _write(f"{_fmt(flux, digits)} states/s/nm/mW\n", args.out)


def _add_state_args(p):
    p.add_argument("--r", type=_nonneg, default=0.3, help="squeeze magnitude")
    p.add_argument("--eta-prime", type=_nonneg, default=1.0, help="ellipticity factor")
    p.add_argument("--n", type=int, default=0, help="parity selector")
    p.add_argument("--theta-s", type=_angle, default=0.0, help="squeeze phase")
    p.add_argument("--grid", type=_grid, default=field.Grid2D.parse(DEFAULT_GRID),
                   help="xmin:xmax:steps[,ymin:ymax:steps]")
    p.add_argument("--mode", choices=("analytic", "numeric"), default="analytic")
    p.add_argument("--cutoff", type=int, default=None, help="Fock cutoff for the numeric path")
    p.add_argument("--out", default=None, help="output file (stdout if omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vortexlab", description="Heralded quantum vortex simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="field-strength probability and phase densities")
    _add_state_args(p)
    p.add_argument("--what", choices=("prob", "phase", "both"), default="prob")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("wigner", help="Wigner function on a two-dimensional slice")
    _add_state_args(p)
    p.add_argument("--delta1", type=_angle, default=math.pi / 2)
    p.add_argument("--delta2", type=_angle, default=0.0)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("entanglement", help="log-negativity sweeps")
    p.add_argument("--sweep", default=DEFAULT_SWEEP, help="r=min:max:steps")
    p.add_argument("--phi", default=DEFAULT_PHIS, help="comma-separated Phi values")
    p.add_argument("--ratio", action="store_true", help="append the ratio to the squeezed-vacuum value")
    p.add_argument("--numeric-check", action="store_true", help="append the partial-transpose value")
    p.add_argument("--cutoff", type=int, default=ENTANGLEMENT_CUTOFF, help="cutoff of the numeric states")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_entanglement)

    p = sub.add_parser("chip", help="run the four-mode chip or the three-mode nesting")
    p.add_argument("--config", required=True, help="key=value file")
    p.add_argument("--three-mode", action="store_true")
    p.add_argument("--circuit", default=None,
                   help="4-mode circuit file replacing the built-in layout; the config still sets the target")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_chip)

    p = sub.add_parser("budget", help="heralded-flux estimate")
    p.add_argument("--pair-flux", type=_nonneg, default=1.4e7)
    p.add_argument("--prop-loss", type=_nonneg, default=0.3, help="dB/cm")
    p.add_argument("--length", type=_nonneg, default=5.0, help="cm")
    p.add_argument("--geom-loss", type=_nonneg, default=1.0, help="dB")
    p.add_argument("--coupling-loss", type=_nonneg, default=1.0, help="dB")
    p.add_argument("--det-eff", type=_nonneg, default=0.10)
    p.add_argument("--tap-r2", type=_nonneg, default=0.01, help="reflectance of each tap")
    p.add_argument("--taps", type=int, default=2)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_budget)
    return parser


_NEGATIVE_VALUE = re.compile(r"^-(\d|\.\d|pi)")


def _attach_negative_values(argv):
    """Join ``--opt -1:1:3`` into ``--opt=-1:1:3`` so argparse does not read a flag."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        digits = precision_from_env()
        args.func(args, digits)
    except UnsupportedAnalyticError as exc:
        print(f"vortexlab: {exc}", file=sys.stderr)
        return EXIT_ANALYTIC
    except ImpossibleHeraldError as exc:
        print(f"vortexlab: {exc}", file=sys.stderr)
        return EXIT_HERALD
    except (UsageError, ConfigError, VortexLabError, ValueError) as exc:
        print(f"vortexlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
