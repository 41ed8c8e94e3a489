"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--qubits 16] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from qarrow import _kernels as K
from qarrow.adiabatic import EvolutionConfig, farhi_hamiltonian, symmetric_uniform_state


def gate_cases(n):
    rng = np.random.default_rng(0)
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    amps /= np.linalg.norm(amps)
    q, c = n // 2, n // 3
    return {
        "hadamard": lambda f: f(amps, q),
        "phase": lambda f: f(amps, q, 0.3),
        "cphase": lambda f: f(amps, c, q, 0.3),
        "swap": lambda f: f(amps, c, q),
    }


def rk4_case():
    H = farhi_hamiltonian(8)
    psi0 = symmetric_uniform_state(8)
    cfg = EvolutionConfig.for_sweep(H, 128.0)
    dt = cfg.T / cfg.n_steps
    return lambda f: f(H.h0, H.h1, psi0, cfg.T, dt, cfg.n_steps, cfg.snapshot_stride)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qubits", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K.HAS_NUMBA:
        raise SystemExit("numba unavailable or disabled; nothing to compare")

    cases = gate_cases(args.qubits)
    cases["rk4_interp"] = rk4_case()
    print(f"{'kernel':<12}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, call in cases.items():
        f_np = getattr(K, f"{name}_np")
        f_nb = getattr(K, f"{name}_nb")
        call(f_nb)  # compile / load cache
        t_np = best(lambda: call(f_np), args.repeat)
        t_nb = best(lambda: call(f_nb), args.repeat)
        print(f"{name:<12}{1e3 * t_np:>12.3f}{1e3 * t_nb:>12.3f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
