"""``qarrow`` command line: run an algorithm, export its trace, check majorization.

Exit codes: 0 success, 1 usage or I/O error, 2 majorization violation inside
the asserted window (only with ``--assert-majorization``).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import adiabatic, grover, phase_estimation
from .majorder import DEFAULT_TOL, MajorizationError, Trace, verify_trace
from .statevec import MAX_QUBITS
from .traceio import TraceFormatError, export_lorenz, export_trace, import_trace

log = logging.getLogger("qarrow")

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _qubits(text):
    n = int(text)
    if not 1 <= n <= MAX_QUBITS:
        raise argparse.ArgumentTypeError(f"n must be in [1, {MAX_QUBITS}]")
    return n


def _positive(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the trace here")
    common.add_argument("--format", choices=["json", "csv"],
                        help="trace format (default: from the --out extension, else json)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="prefix-sum tolerance (default: %(default)g)")
    common.add_argument("--assert-majorization", action="store_true",
                        help="exit 2 if any step in the window is not majorized by the next")
    common.add_argument("--assert-through", metavar="LABEL",
                        help="end the asserted window at this snapshot label")
    common.add_argument("--lorenz", metavar="PATH",
                        help="write Lorenz-curve columns (one per snapshot) as CSV")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="qarrow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("grover", parents=[common], help="Grover search")
    g.add_argument("--n", type=_qubits, required=True)
    g.add_argument("--target", type=int, default=0)
    g.add_argument("--iters", type=int, help="kernel applications (default: optimal)")
    g.add_argument("--asymmetric", action="store_true",
                   help="start from uniform amplitudes with one non-target entry doubled")

    a = sub.add_parser("adiabatic", parents=[common], help="adiabatic evolution")
    a.add_argument("--model", choices=["projector", "farhi", "static"], default="projector")
    a.add_argument("--n", type=_qubits, required=True)
    a.add_argument("--T", type=_positive, help="total time (default: 4*2^n, static: pi/2*2^(n/2))")
    a.add_argument("--dt", type=_positive, help="RK4 step (default: stability policy)")

    q = sub.add_parser("qpe", parents=[common], help="phase estimation")
    q.add_argument("--n", type=_qubits, required=True)
    grp = q.add_mutually_exclusive_group(required=True)
    grp.add_argument("--phi", type=float)
    grp.add_argument("--order", nargs=2, type=int, metavar=("A", "MODULUS"),
                     help="use phi = 1/r with r the order of A mod MODULUS")

    v = sub.add_parser("verify", parents=[common], help="check a trace file")
    v.add_argument("path")
    return p


def _grover_trace(args) -> tuple[Trace, int]:
    N = 1 << args.n
    m_star = grover.optimal_iterations(N)
    initial = grover.boosted_start(args.n, args.target) if args.asymmetric else None
    cfg = grover.GroverConfig(args.n, args.target, args.iters or m_star, initial)
    trace = grover.run(cfg)
    return trace, min(m_star, len(trace) - 1)


def _adiabatic_trace(args) -> tuple[Trace, int]:
    if args.model == "static":
        T = args.T or adiabatic.grover_time(args.n)
        H = adiabatic.InterpolatingHamiltonian.constant(adiabatic.static_hamiltonian(args.n))
        run = adiabatic.run_static_sweep
    elif args.model == "farhi":
        T = args.T or 4 * 2 ** args.n
        H = adiabatic.farhi_hamiltonian(args.n)
        run = adiabatic.run_farhi_sweep
    else:
        T = args.T or 4 * 2 ** args.n
        H = adiabatic.projector_hamiltonian(args.n)
        run = adiabatic.run_projector_sweep
    cfg = adiabatic.EvolutionConfig.for_sweep(H, T)
    if args.dt:
        n_steps = max(1, round(T / args.dt))
        cfg = adiabatic.EvolutionConfig(T, T / n_steps,
                                        max(1, n_steps // adiabatic.SNAPSHOTS_PER_SWEEP))
    trace = run(args.n, T, cfg)
    success = [trace.probs(i)[0] for i in range(len(trace))]
    return trace, adiabatic.success_peak(success)


def _qpe_trace(args) -> tuple[Trace, int]:
    phi = args.phi
    if args.order:
        phi = phase_estimation.order_finding_phase(*args.order)
    trace = phase_estimation.run_qpe(phase_estimation.QpeConfig(args.n, phi))
    return trace, len(trace) - 1


def run(args) -> int:
    if args.command == "verify":
        trace = import_trace(args.path, args.format)
        stop = len(trace) - 1
    else:
        build = {"grover": _grover_trace, "adiabatic": _adiabatic_trace, "qpe": _qpe_trace}
        trace, stop = build[args.command](args)
    if args.assert_through:
        try:
            stop = trace.index(args.assert_through)
        except KeyError:
            raise UsageError(f"no snapshot labeled {args.assert_through!r}") from None

    if args.out:
        export_trace(trace, args.out, args.format)
    if args.lorenz:
        export_lorenz(trace, args.lorenz)

    window = trace.window(stop)
    report = verify_trace(window, args.tol) if len(window) >= 2 else None
    out = {
        "algorithm": trace.algorithm,
        "n": trace.n_qubits,
        "window": [trace.labels[0], trace.labels[stop]],
        "verdicts": report.to_dict()["verdicts"] if report else [],
        "first_violation": report.first_violation if report else None,
    }
    if args.verbose and report:
        for m, v in enumerate(report.step_verdicts):
            log.info("%s -> %s: %s", window.labels[m], window.labels[m + 1], v.relation.value)
    print(json.dumps(out))
    if args.assert_majorization and report and not report.ok:
        return EXIT_VIOLATION
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        return run(args)
    except UsageError as exc:
        print(f"qarrow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, TraceFormatError, MajorizationError, ValueError) as exc:
        print(f"qarrow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
