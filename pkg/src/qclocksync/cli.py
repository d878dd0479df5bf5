"""Command-line front-end: run experiments, compile pulse programs, and
produce the four-offset reproduction report."""

from __future__ import annotations

import argparse
import json
import sys as _sys

import numpy as np

from .compiler import (
    GATE_NAMES,
    compile_gate,
    compile_network,
    ideal_gate,
    ideal_network_unitary,
)
from .engine import NoiseParams, propagator
from .linalg import phase_aligned
from .prep import VERBATIM_GAIN, preparation_residual
from .protocol import ProtocolParams, QcsOutcome, inverse_qft_reduced, run_qcs
from .pulses import to_text
from .serialize import matrix_to_json
from .spinsys import SpinSystem, load_config
from .tomography import readout_oracle, reconstruct

SCHEMA_VERSION = 1

#: hardware fidelities reported for the four offsets in the original
#: experiment, kept as non-reproduced reference values
REFERENCE_HARDWARE_FIDELITIES = (0.907, 0.774, 0.752, 0.770)

COMPILE_VERIFY_ATOL = 1e-6


def _params_from_args(args) -> ProtocolParams:
    if args.phi_k is not None:
        return ProtocolParams.from_phi_index(args.phi_k, m=args.m, omega=args.omega)
    omega_delta = args.omega_delta if args.omega_delta is not None else 0.0
    return ProtocolParams(m=args.m, omega=args.omega, delta=omega_delta / args.omega)


def _spin_system_from_args(args) -> SpinSystem:
    if getattr(args, "spin_system", None):
        return load_config(args.spin_system)
    return SpinSystem()


def _noise_from_args(args, sys: SpinSystem) -> NoiseParams | None:
    if args.noise is None or args.noise == "off":
        return None
    try:
        rate = float(args.noise)
    except ValueError:
        raise SystemExit(f"--noise must be 'off' or a dephasing rate, got {args.noise!r}")
    if rate == 0.0 and args.pulse_angle_error == 0.0:
        return None
    return NoiseParams.uniform(
        rate, n=sys.n, pulse_angle_error=args.pulse_angle_error, seed=args.seed
    )


def _outcome_payload(outcome: QcsOutcome) -> dict:
    return {
        "distribution": outcome.distribution,
        "j_peak": outcome.j_peak,
        "delta_estimate": outcome.delta_estimate,
        "exact": outcome.exact,
    }


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_run(args) -> int:
    params = _params_from_args(args)
    payload: dict = {
        "schema_version": SCHEMA_VERSION,
        "mode": args.mode,
        "m": params.m,
        "omega": params.omega,
        "omega_delta": params.omega_delta,
        "phi": params.phi,
    }
    if args.mode == "ideal":
        outcome = run_qcs(params)
        payload["outcome"] = _outcome_payload(outcome)
    else:
        if params.m != 2:
            raise SystemExit("nmr mode compiles the two-working-qubit network; use --m 2")
        from .experiments import run_nmr

        sys = _spin_system_from_args(args)
        noise = _noise_from_args(args, sys)
        result = run_nmr(params, sys, noise=noise)
        payload["outcome"] = _outcome_payload(result.outcome)
        payload["fidelity"] = {
            "c": result.fidelity.c,
            "overlap": result.fidelity.overlap,
            "purity_ratio": result.fidelity.purity_ratio,
        }
        payload["noise"] = (
            None
            if noise is None
            else {
                "dephasing_rates": list(noise.dephasing_rates),
                "pulse_angle_error": noise.pulse_angle_error,
                "seed": noise.seed,
            }
        )
        payload["rho_final"] = matrix_to_json(result.rho_final)
    _emit(payload, args.output)
    return 0


def cmd_compile(args) -> int:
    sys = _spin_system_from_args(args)
    if args.gate is not None:
        program = compile_gate(args.gate, sys)
        reference = ideal_gate(args.gate, sys)
    else:
        params = ProtocolParams.from_phi_index(args.phi_k, m=2)
        program = compile_network(params, sys)
        reference = ideal_network_unitary(params, sys)
    text = to_text(program)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    if args.verify:
        u = propagator(program, sys)
        deviation = float(np.max(np.abs(phase_aligned(u, reference) - reference)))
        print(f"# max deviation vs ideal (global phase aligned): {deviation:.3e}",
              file=_sys.stderr)
        if deviation > COMPILE_VERIFY_ATOL:
            return 1
    return 0


EXPECTED_STATES = ("|000>", "|010>", "|100>", "|110>")
PHI_LABELS = ("0", "-pi/2", "-pi", "-3pi/2")


def _qft_matrix_check() -> float:
    """Max deviation of the reduced inverse-QFT gate network from its
    closed-form matrix (bit-reversed discrete Fourier kernel)."""
    m = 2
    dim = 2**m
    circuit = inverse_qft_reduced(m)
    formula = np.empty((dim, dim), dtype=complex)
    for j in range(dim):
        for b in range(dim):
            rev = int(format(b, f"0{m}b")[::-1], 2)
            formula[j, b] = np.exp(-2j * np.pi * j * rev / dim) / np.sqrt(dim)
    return float(np.max(np.abs(circuit - formula)))


def cmd_reproduce(args) -> int:
    from .experiments import run_nmr

    sys = _spin_system_from_args(args)
    rows = []
    all_pass = True
    for k in range(4):
        params = ProtocolParams.from_phi_index(k)
        ideal = run_qcs(params)
        nmr = run_nmr(params, sys)
        tomo = reconstruct(readout_oracle(nmr.rho_final))
        tomo_residual = float(np.linalg.norm(tomo - nmr.rho_final))
        ok = (
            ideal.j_peak == k
            and abs(ideal.probability(k) - 1.0) < 1e-9
            and nmr.outcome.j_peak == k
            and nmr.fidelity.c >= 0.999
            and tomo_residual < 1e-8
        )
        all_pass = all_pass and ok
        rows.append(
            {
                "phi_k": PHI_LABELS[k],
                "expected_state": EXPECTED_STATES[k],
                "ideal_peak_probability": ideal.probability(k),
                "nmr_fidelity": nmr.fidelity.c,
                "tomography_residual": tomo_residual,
                "reference_hardware_fidelity": REFERENCE_HARDWARE_FIDELITIES[k],
                "pass": ok,
            }
        )

    prep_corrected = preparation_residual(sys, corrected=True)
    prep_verbatim = preparation_residual(sys, corrected=False)
    prep_ok = prep_corrected < 1e-5
    qft_deviation = _qft_matrix_check()
    qft_ok = qft_deviation < 1e-12
    all_pass = all_pass and prep_ok and qft_ok

    payload = {
        "schema_version": SCHEMA_VERSION,
        "rows": rows,
        "preparation": {
            "corrected_residual": prep_corrected,
            "verbatim_gain": VERBATIM_GAIN,
            "verbatim_residual_gain_normalized": prep_verbatim,
            "pass": prep_ok,
        },
        "reduced_inverse_qft_matrix_deviation": qft_deviation,
        "reduced_inverse_qft_pass": qft_ok,
        "all_pass": all_pass,
    }

    lines = [
        "# Four-offset reproduction report",
        "",
        "| phi_k | expected state | ideal peak prob | nmr fidelity | tomography residual | hardware ref* | pass |",
        "|---|---|---|---|---|---|---|",
    ]
    for r in rows:
        lines.append(
            "| {phi_k} | {expected_state} | {ideal_peak_probability:.12f} | "
            "{nmr_fidelity:.6f} | {tomography_residual:.2e} | "
            "{reference_hardware_fidelity:.1%} | {flag} |".format(
                flag="pass" if r["pass"] else "FAIL", **r
            )
        )
    lines += [
        "",
        "*Hardware reference fidelities are the original experiment's reported",
        "values; this simulator does not reproduce them (its noise model is",
        "qualitative plumbing, not a calibrated spectrometer model).",
        "",
        "## Effective-pure-state preparation",
        "",
        f"- corrected sequence residual (Frobenius): {prep_corrected:.3e}"
        f" [{'pass' if prep_ok else 'FAIL'}]",
        f"- published sequence, gain-normalized residual: {prep_verbatim:.6f}"
        f" (overall gain {VERBATIM_GAIN:.6f}; the residual is an irreducible"
        " carbon-carbon zero-quantum term no z-gradient can remove)",
        "",
        "## Reduced inverse-QFT matrix check",
        "",
        f"- circuit vs closed-form matrix, max deviation: {qft_deviation:.3e}"
        f" [{'pass' if qft_ok else 'FAIL'}]",
        "",
        f"Overall: {'ALL PASS' if all_pass else 'FAILURES PRESENT'}",
        "",
    ]
    report = "\n".join(lines)

    output = args.output or "report.md"
    with open(output, "w") as fh:
        fh.write(report)
    sidecar = output.rsplit(".", 1)[0] + ".json"
    with open(sidecar, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    print(report)
    print(f"wrote {output} and {sidecar}", file=_sys.stderr)
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qclocksync",
        description="Simulate the clock-synchronization protocol, ideally or "
        "compiled to three-spin NMR pulse sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment and emit a JSON report")
    run.add_argument("--mode", choices=("ideal", "nmr"), required=True)
    run.add_argument("--m", type=int, default=2, help="number of working qubits")
    group = run.add_mutually_exclusive_group()
    group.add_argument("--phi-k", type=int, choices=range(4),
                       help="phase index k (offset delta = k / (2^m omega))")
    group.add_argument("--omega-delta", type=float, help="dimensionless omega*delta")
    run.add_argument("--omega", type=float, default=1.0)
    run.add_argument("--noise", default="off",
                     help="'off' or a per-spin dephasing rate in 1/s")
    run.add_argument("--pulse-angle-error", type=float, default=0.0)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--spin-system", help="spin-system config file")
    run.add_argument("--output", help="write the JSON report here instead of stdout")
    run.set_defaults(func=cmd_run)

    comp = sub.add_parser("compile", help="emit a pulse program as text")
    cgroup = comp.add_mutually_exclusive_group(required=True)
    cgroup.add_argument("--gate", choices=GATE_NAMES)
    cgroup.add_argument("--network", choices=("qcs",))
    comp.add_argument("--phi-k", type=int, choices=range(4), default=0)
    comp.add_argument("--spin-system", help="spin-system config file")
    comp.add_argument("--verify", action="store_true",
                      help="re-simulate and check the propagator against the ideal gate")
    comp.add_argument("--output", help="write the program here instead of stdout")
    comp.set_defaults(func=cmd_compile)

    rep = sub.add_parser("reproduce",
                         help="run the four-offset reproduction and write a report")
    rep.add_argument("--spin-system", help="spin-system config file")
    rep.add_argument("--output", help="Markdown report path (default report.md)")
    rep.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
