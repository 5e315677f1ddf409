"""``qcsim`` command-line interface.

Subcommands: generate, metrics, simulate, pathstudy, scaling, memory,
advise.  Exit codes: 0 success, 2 usage/configuration, 3 capacity,
4 parse error.  ``QCSIM_MAX_QUBITS`` overrides the state-vector qubit
budget.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

import numpy as np

from . import harness
from .advisor import Backend, advise_circuit
from .circuit import Circuit
from .errors import CapacityError, ConfigError, QasmParseError, QcsimError
from .generators import Family, GeneratorSpec, family_from_name, generate
from .metrics import MetricsReport, compute_all
from .qasm import emit_qasm, parse_qasm
from .sliced import strong_scaling_experiment
from .tensornet import PathfinderConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_PARSE = 4


def _spec_from_args(args) -> GeneratorSpec:
    if args.n is None:
        raise ConfigError("--n is required when generating a circuit")
    return GeneratorSpec(
        family=family_from_name(args.family),
        n=args.n,
        p_layers=getattr(args, "p_layers", None),
        k=getattr(args, "k", None),
        m=getattr(args, "m", None),
        l_layers=getattr(args, "l_layers", None),
        t_steps=getattr(args, "t_steps", None),
        seed=getattr(args, "seed", None),
        dual_oracle=True if getattr(args, "dual_oracle", False) else None,
    )


def _load_circuit(args) -> Circuit:
    if getattr(args, "infile", None):
        with open(args.infile, "r", encoding="utf-8") as fh:
            return parse_qasm(fh.read())
    if not args.family:
        raise ConfigError("provide --family with --n, or --in FILE")
    return generate(_spec_from_args(args))


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _add_generator_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="circuit family (qaoa, random, qpe, qft, vqe, hamiltonian, hiddenshift, bv)")
    p.add_argument("--n", type=int, help="qubit count")
    p.add_argument("--p-layers", dest="p_layers", type=int)
    p.add_argument("--k", type=float, help="one-bit fraction / pairing probability")
    p.add_argument("--m", type=int, help="explicit one-bit count")
    p.add_argument("--l-layers", dest="l_layers", type=int)
    p.add_argument("--t-steps", dest="t_steps", type=int)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--dual-oracle", dest="dual_oracle", action="store_true",
                   help="hidden shift: include the second (dual) oracle query")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a benchmark circuit as QASM")
    _add_generator_opts(p)
    p.add_argument("--out", help="output path (stdout if omitted)")

    p = sub.add_parser("metrics", help="topology metrics as JSON")
    _add_generator_opts(p)
    p.add_argument("--in", dest="infile", help="read a QASM file instead of generating")
    p.add_argument("--avg-seeds", dest="avg_seeds", type=int, default=0,
                   help="average metrics over this many seeds (seeded families)")
    p.add_argument("--out", help="output path (stdout if omitted)")

    p = sub.add_parser("simulate", help="run a backend, print result JSON")
    _add_generator_opts(p)
    p.add_argument("--in", dest="infile")
    p.add_argument("--backend", choices=("sv", "tn", "auto"), default="sv")
    p.add_argument("--precision", choices=("single", "double"), default="double")
    p.add_argument("--samples", type=int, default=8, help="pathfinder samples (tn)")
    p.add_argument("--warmup", type=int, default=3)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--out", help="write the per-rep bench CSV here")
    p.add_argument("--json", action="store_true", help="include the bench records in the JSON output")

    p = sub.add_parser("pathstudy", help="pathfinding budget vs contraction time")
    _add_generator_opts(p)
    p.add_argument("--samples", default="1,2,4,8,16,32",
                   help="comma-separated pathfinder sample budgets")
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("scaling", help="strong scaling of sliced contraction")
    _add_generator_opts(p)
    p.add_argument("--workers", default="1,2,4", help="comma-separated worker counts")
    p.add_argument("--slices", type=int, default=None)
    p.add_argument("--reps", type=int, default=30)
    p.add_argument("--samples", type=int, default=4)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("memory", help="memory occupancy table")
    p.add_argument("--n-range", dest="n_range", default="2:32", help="lo:hi inclusive")
    p.add_argument("--precision", choices=("single", "double"), default="single")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("advise", help="backend recommendation as JSON")
    _add_generator_opts(p)
    p.add_argument("--in", dest="infile")
    p.add_argument("--avg-seeds", dest="avg_seeds", type=int, default=0)
    p.add_argument("--out")
    return parser


def _averaged_report(args) -> MetricsReport:
    spec = _spec_from_args(args)
    reports = []
    for seed in range(args.avg_seeds):
        c = generate(GeneratorSpec(
            family=spec.family, n=spec.n, p_layers=spec.p_layers, k=spec.k,
            m=spec.m, l_layers=spec.l_layers, t_steps=spec.t_steps,
            seed=seed, dual_oracle=spec.dual_oracle))
        reports.append(compute_all(c))

    def mean_of(name):
        values = [getattr(r, name) for r in reports]
        if any(v is None for v in values):
            return None
        return float(np.mean(values))

    return MetricsReport(
        program_communication=mean_of("program_communication"),
        critical_depth=mean_of("critical_depth"),
        entanglement_ratio=mean_of("entanglement_ratio"),
        parallelism=mean_of("parallelism"),
        entanglement_variance=mean_of("entanglement_variance"),
        n_gates=int(np.mean([r.n_gates for r in reports])),
        n_two_qubit=int(np.mean([r.n_two_qubit for r in reports])),
        depth=int(np.mean([r.depth for r in reports])),
        n_two_qubit_effective=int(np.mean([r.n_two_qubit_effective for r in reports])),
        entanglement_ratio_effective=mean_of("entanglement_ratio_effective"),
    )


def _cmd_generate(args) -> int:
    circuit = generate(_spec_from_args(args))
    _write_out(emit_qasm(circuit), args.out)
    return EXIT_OK


def _cmd_metrics(args) -> int:
    if args.avg_seeds and not args.infile:
        report = _averaged_report(args)
    else:
        report = compute_all(_load_circuit(args))
    payload = report.to_dict()
    payload["absent"] = report.absent()
    _write_out(harness.to_json(payload), args.out)
    return EXIT_OK


def _distribution_payload(dist) -> dict:
    top = sorted(dist.as_dict(1e-12).items(), key=lambda kv: -kv[1])[:16]
    return {"num_qubits": dist.num_qubits, "top_outcomes": dict(top)}


def _simulate_one(circuit, backend, args):
    cfg = PathfinderConfig(num_samples=args.samples, seed=args.seed or 0)
    result, records = harness.bench_simulate(
        circuit, backend, args.precision, cfg, args.warmup, args.reps,
        seed=args.seed or 0)
    if hasattr(result, "probs"):
        payload = _distribution_payload(result)
    else:
        payload = {"bitstring": "0" * circuit.num_qubits,
                   "amplitude_re": result.real, "amplitude_im": result.imag}
    payload["backend"] = backend
    payload["timing"] = harness.summarize_times(
        [r.contract_or_run_time_s for r in records])
    return payload, records


def _cmd_simulate(args) -> int:
    circuit = _load_circuit(args)
    backend = args.backend
    if backend == "auto":
        recommendation = advise_circuit(circuit)
        if recommendation.backend is Backend.EITHER:
            payload_sv, records_sv = _simulate_one(circuit, "sv", args)
            payload_tn, records_tn = _simulate_one(circuit, "tn", args)
            faster = "sv" if (payload_sv["timing"]["mean_s"]
                              <= payload_tn["timing"]["mean_s"]) else "tn"
            payload = payload_sv if faster == "sv" else payload_tn
            records = records_sv + records_tn
            payload["auto"] = {"recommended": "either", "ran": ["sv", "tn"],
                               "faster": faster}
        else:
            chosen = "sv" if recommendation.backend is Backend.STATEVECTOR else "tn"
            payload, records = _simulate_one(circuit, chosen, args)
            payload["auto"] = {"recommended": chosen, "ran": [chosen]}
    else:
        payload, records = _simulate_one(circuit, backend, args)
    if args.out:
        _write_out(harness.bench_records_to_csv(records), args.out)
    if args.json:
        payload["bench_records"] = [asdict(r) for r in records]
    sys.stdout.write(harness.to_json(payload) + "\n")
    return EXIT_OK


def _cmd_pathstudy(args) -> int:
    spec = _spec_from_args(args)
    result = harness.pathfinding_study(
        spec, _int_list(args.samples), repetitions=args.reps,
        seed=args.seed or 0)
    csv_text = harness.pathstudy_to_csv(result)
    if args.out:
        _write_out(csv_text, args.out)
    payload = {
        "observed_class": result.observed_class,
        "predicted_class": result.predicted_class,
        "rows": [asdict(r) for r in result.rows],
    }
    sys.stdout.write(harness.to_json(payload) + "\n" if args.json else csv_text)
    return EXIT_OK


def _cmd_scaling(args) -> int:
    spec = _spec_from_args(args)
    workers = _int_list(args.workers)
    if args.slices is not None:
        for w in workers:
            if args.slices < w:
                raise ConfigError(f"slices ({args.slices}) < workers ({w})")
    cfg = PathfinderConfig(num_samples=args.samples, seed=args.seed or 0)
    runs = strong_scaling_experiment(
        spec, workers, cfg, repetitions=args.reps, slices=args.slices)
    csv_text = harness.scaling_runs_to_csv(runs)
    if args.out:
        _write_out(csv_text, args.out)
    if args.json:
        sys.stdout.write(harness.to_json(
            [harness.scaling_run_row(r) for r in runs]) + "\n")
    elif not args.out:
        sys.stdout.write(csv_text)
    return EXIT_OK


def _cmd_memory(args) -> int:
    lo, _, hi = args.n_range.partition(":")
    n_values = list(range(int(lo), int(hi or lo) + 1))
    rows = harness.memory_table(n_values, precision=args.precision)
    csv_text = harness.memory_rows_to_csv(rows)
    if args.out:
        _write_out(csv_text, args.out)
    sys.stdout.write(harness.to_json(rows) + "\n" if args.json else csv_text)
    return EXIT_OK


def _cmd_advise(args) -> int:
    if args.avg_seeds and not args.infile:
        from .advisor import recommend
        report = _averaged_report(args)
        recommendation = recommend(report, args.n)
    else:
        recommendation = advise_circuit(_load_circuit(args))
    _write_out(harness.to_json(recommendation.to_dict()), args.out)
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "metrics": _cmd_metrics,
    "simulate": _cmd_simulate,
    "pathstudy": _cmd_pathstudy,
    "scaling": _cmd_scaling,
    "memory": _cmd_memory,
    "advise": _cmd_advise,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"qcsim: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except QasmParseError as exc:
        print(f"qcsim: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, ValueError) as exc:
        print(f"qcsim: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QcsimError as exc:
        print(f"qcsim: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qcsim: i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
