"""Command-line surface binding the pipeline end to end.

Subcommands: ``gen`` (benchmark term lists), ``optimize`` (extract the
Clifford half, absorb it, emit QASM + report), ``postprocess`` (rewrite
measured counts through the report's CNOT network), ``map-expectations``
(apply transformed-observable signs), ``verify`` (dense cross-check of
the emitted artifacts against the input).  Exit codes: 0 ok,
1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .absorb import (
    CountsHistogram,
    ProbabilityAbsorption,
    absorb_observables,
    absorb_probabilities,
    apply_network,
    postprocess_counts,
)
from .circuit import Circuit, cnot_count, emit_qasm, entangling_depth, h, parse_qasm, peephole
from .errors import CliffexError, NonHCnotGate, NotReducible, TooLarge
from .extract import extract, native_circuit
from .oracle import circuit_unitary, equivalent_up_to_phase, expectation, probabilities
from .pauli import parse_pauli
from .problems import ProblemSpec, gen_labs, gen_maxcut, load_terms, to_input_dict

OK, VERIFY_FAIL, USAGE = 0, 1, 2


def _fail(msg: str, code: int = USAGE) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _write_json(path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _executed_paths(out_path: str, mode: str, count: int) -> list[str]:
    stem = out_path[:-5] if out_path.endswith(".qasm") else out_path
    if mode == "probabilities":
        return [f"{stem}.executed.qasm"]
    return [f"{stem}.obs{k}.qasm" for k in range(count)]


def cmd_gen(args) -> int:
    if args.kind == "maxcut":
        if (args.degree is None) == (args.edges is None):
            return _fail("pass exactly one of --degree or --edges")
        if args.degree is not None:
            spec = ProblemSpec(
                "maxcut_regular", args.nodes, degree=args.degree, seed=args.seed,
                layers=args.layers, gammas=_angles(args.gamma, args.layers),
                betas=_angles(args.beta, args.layers),
            )
        else:
            spec = ProblemSpec(
                "maxcut_random", args.nodes, edges=args.edges, seed=args.seed,
                layers=args.layers, gammas=_angles(args.gamma, args.layers),
                betas=_angles(args.beta, args.layers),
            )
        terms = gen_maxcut(spec)
        n = spec.n
    else:  # labs
        terms = gen_labs(
            args.n, args.layers, _angles(args.gamma, args.layers), _angles(args.beta, args.layers)
        )
        n = args.n
    _write_json(args.out, to_input_dict(n, terms, mode="probabilities"))
    print(f"wrote {len(terms)} terms on {n} qubits to {args.out}")
    return OK


def _angles(values, layers) -> tuple[float, ...] | None:
    if not values:
        return None
    if len(values) == 1:
        return tuple(values) * layers
    if len(values) != layers:
        raise CliffexError(f"need 1 or {layers} angles, got {len(values)}")
    return tuple(values)


def cmd_optimize(args) -> int:
    prob = load_terms(args.input)
    mode = args.mode or prob.mode
    if mode == "observables" and not prob.observables:
        return _fail("observable mode needs an 'observables' list in the input")
    result = extract(prob.terms)
    opt = result.opt_circuit if args.no_peephole else peephole(result.opt_circuit)
    native = native_circuit(prob.terms, prob.n)

    report: dict = {
        "input_digest": _digest(args.input),
        "num_qubits": prob.n,
        "mode": mode,
        "metrics": {
            "cnot_before": cnot_count(native),
            "cnot_after": cnot_count(opt),
            "entangling_depth_before": entangling_depth(native),
            "entangling_depth_after": entangling_depth(opt),
            "rotation_count": result.stats["rotations"],
        },
    }

    executed: list[Circuit] = []
    if mode == "probabilities":
        try:
            pa = absorb_probabilities(result.extracted)
        except (NotReducible, NonHCnotGate) as exc:
            return _fail(
                f"cannot absorb the extracted Clifford into bitstrings ({exc}); "
                "rerun with --mode observables"
            )
        report["absorption"] = {
            "h_mask": sorted(pa.h_mask),
            "network": [list(e) for e in pa.network],
        }
        executed.append(Circuit(opt.n, opt.gates + tuple(h(q) for q in sorted(pa.h_mask))))
    else:
        records = absorb_observables(result.tableau, prob.observables)
        report["observables"] = [
            {
                "original": r.original.label(),
                "transformed": r.transformed.label(),
                "basis_layer": [[g.kind, g.qubits[0]] for g in r.basis_layer],
            }
            for r in records
        ]
        for r in records:
            executed.append(Circuit(opt.n, opt.gates + r.basis_layer))

    exec_paths = _executed_paths(args.out, mode, len(executed))
    Path(args.out).write_text(emit_qasm(opt), encoding="utf-8")
    Path(args.clifford).write_text(emit_qasm(result.extracted), encoding="utf-8")
    for path, circ in zip(exec_paths, executed):
        Path(path).write_text(emit_qasm(circ), encoding="utf-8")
    report["artifacts"] = {
        "optimized": args.out,
        "clifford": args.clifford,
        "executed": exec_paths,
    }
    _write_json(args.report, report)
    m = report["metrics"]
    print(
        f"cnot {m['cnot_before']} -> {m['cnot_after']}, "
        f"entangling depth {m['entangling_depth_before']} -> {m['entangling_depth_after']}, "
        f"mode {mode}"
    )
    return OK


def _load_report(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliffexError(f"cannot read report {path}: {exc}") from exc


def _load_counts(path) -> CountsHistogram:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliffexError(f"cannot read counts {path}: {exc}") from exc
    for key in ("n", "shots", "counts"):
        if key not in data:
            raise CliffexError(f'counts file lacks "{key}"')
    return CountsHistogram(data["n"], dict(data["counts"]), data["shots"])


def cmd_postprocess(args) -> int:
    report = _load_report(args.report)
    if "absorption" not in report:
        raise CliffexError("report lacks an 'absorption' section (probabilities mode)")
    hist = _load_counts(args.counts)
    pa = ProbabilityAbsorption(
        report["num_qubits"],
        frozenset(report["absorption"]["h_mask"]),
        tuple((c, t) for c, t in report["absorption"]["network"]),
    )
    out = postprocess_counts(pa, hist)
    _write_json(args.out, {"n": out.n, "shots": out.shots, "counts": out.counts})
    print(f"rewrote {len(hist.counts)} bitstrings ({out.shots} shots) to {args.out}")
    return OK


def cmd_map_expectations(args) -> int:
    report = _load_report(args.report)
    if "observables" not in report:
        raise CliffexError("report lacks an 'observables' section (observable mode)")
    try:
        with open(args.values, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliffexError(f"cannot read values {args.values}: {exc}") from exc
    values = data["values"] if isinstance(data, dict) else data
    records = report["observables"]
    if len(values) != len(records):
        raise CliffexError(f"{len(values)} values vs {len(records)} observables")
    signs = [-1.0 if r["transformed"].startswith("-") else 1.0 for r in records]
    mapped = [s * float(v) for s, v in zip(signs, values)]
    _write_json(args.out, {"values": mapped})
    print(f"mapped {len(mapped)} expectation values to {args.out}")
    return OK


def cmd_verify(args) -> int:
    prob = load_terms(args.input)
    if prob.n > args.max_qubits:
        return _fail(
            f"{prob.n} qubits exceeds --max-qubits {args.max_qubits}; "
            "verify a smaller instance or a subset of terms",
        )
    report = _load_report(args.report)
    opt = parse_qasm(Path(report["artifacts"]["optimized"]).read_text(encoding="utf-8"))
    cliff = parse_qasm(Path(report["artifacts"]["clifford"]).read_text(encoding="utf-8"))
    native = native_circuit(prob.terms, prob.n)
    cap = args.max_qubits
    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'pass' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1

    u_full = circuit_unitary(cliff, cap) @ circuit_unitary(opt, cap)
    check("unitary round-trip", equivalent_up_to_phase(u_full, circuit_unitary(native, cap), 1e-9))

    m = report["metrics"]
    check("cnot_after matches artifact", m["cnot_after"] == cnot_count(opt))
    check("entangling_depth_after matches artifact", m["entangling_depth_after"] == entangling_depth(opt))
    check("cnot_before matches input", m["cnot_before"] == cnot_count(native))

    if report["mode"] == "observables":
        ok = True
        for rec in report["observables"]:
            transformed = parse_pauli(rec["transformed"])
            unsigned = parse_pauli(transformed.letters())
            lhs = expectation(native, parse_pauli(rec["original"]), cap)
            rhs = transformed.sign * expectation(opt, unsigned, cap)
            ok = ok and abs(lhs - rhs) <= 1e-9
        check("observable expectations", ok)
    else:
        mask = report["absorption"]["h_mask"]
        network = [tuple(e) for e in report["absorption"]["network"]]
        executed = Circuit(opt.n, opt.gates + tuple(h(q) for q in mask))
        p_full = probabilities(native, cap)
        p_exec = probabilities(executed, cap)
        ok = True
        for idx in range(2**prob.n):
            bits = format(idx, f"0{prob.n}b")
            mapped = int(apply_network(network, bits), 2)
            ok = ok and abs(p_full[mapped] - p_exec[idx]) <= 1e-9
        check("output distribution", ok)

    if failures:
        print(f"{failures} check(s) failed")
        return VERIFY_FAIL
    print("all checks passed")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffex",
        description="Optimize Pauli-rotation circuits by extracting and absorbing Clifford subcircuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a benchmark term list")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    mc = gen_sub.add_parser("maxcut", help="MaxCut layers on a regular or random graph")
    mc.add_argument("--nodes", type=int, required=True)
    mc.add_argument("--degree", type=int, help="regular-graph degree")
    mc.add_argument("--edges", type=int, help="random-graph edge count")
    mc.add_argument("--seed", type=int, default=0)
    mc.add_argument("--layers", type=int, default=1)
    mc.add_argument("--gamma", type=float, action="append", help="problem angle (repeat per layer)")
    mc.add_argument("--beta", type=float, action="append", help="mixer angle (repeat per layer)")
    mc.add_argument("--out", default="input.json")
    mc.set_defaults(func=cmd_gen, kind="maxcut")
    labs = gen_sub.add_parser("labs", help="binary-sequence autocorrelation layers")
    labs.add_argument("--n", type=int, required=True)
    labs.add_argument("--layers", type=int, default=1)
    labs.add_argument("--gamma", type=float, action="append")
    labs.add_argument("--beta", type=float, action="append")
    labs.add_argument("--out", default="input.json")
    labs.set_defaults(func=cmd_gen, kind="labs")

    opt = sub.add_parser("optimize", help="extract + absorb and emit artifacts")
    opt.add_argument("input")
    opt.add_argument("--mode", choices=("observables", "probabilities"))
    opt.add_argument("--out", default="opt.qasm")
    opt.add_argument("--clifford", default="clifford.qasm")
    opt.add_argument("--report", default="report.json")
    opt.add_argument("--no-peephole", action="store_true")
    opt.set_defaults(func=cmd_optimize)

    post = sub.add_parser("postprocess", help="rewrite measured counts through the CNOT network")
    post.add_argument("counts")
    post.add_argument("--report", default="report.json")
    post.add_argument("--out", default="counts.post.json")
    post.set_defaults(func=cmd_postprocess)

    mapx = sub.add_parser("map-expectations", help="apply transformed-observable signs to values")
    mapx.add_argument("values")
    mapx.add_argument("--report", default="report.json")
    mapx.add_argument("--out", default="values.post.json")
    mapx.set_defaults(func=cmd_map_expectations)

    ver = sub.add_parser("verify", help="dense cross-check of emitted artifacts")
    ver.add_argument("input")
    ver.add_argument("--report", default="report.json")
    ver.add_argument("--max-qubits", type=int, default=10)
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        return _fail(f"{exc}; sample a subset of terms or raise --max-qubits")
    except CliffexError as exc:
        return _fail(str(exc))
    except FileNotFoundError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
