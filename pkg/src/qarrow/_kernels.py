"""Hot inner loops: gate application on dense statevectors and fixed-step RK4.

Every kernel exists twice, as a pure-numpy version (``*_np``) and as a numba
``njit`` version (``*_nb``). The public names resolve to the numba version
unless numba is missing or ``QARROW_DISABLE_NUMBA`` is set to a non-empty
value other than ``0``. The choice is made once, at import time.
"""
import os

import numpy as np

_disabled = os.environ.get("QARROW_DISABLE_NUMBA", "") not in ("", "0")

try:
    if _disabled:
        raise ImportError
    import numba

    njit = numba.njit(cache=True, nogil=True)
    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False


# -- pure numpy ---------------------------------------------------------------

def _bit(n_amps, q):
    return (np.arange(n_amps) >> q) & 1


def hadamard_np(amps, q):
    stride = 1 << q
    view = amps.reshape(-1, 2, stride)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    r = 1.0 / np.sqrt(2.0)
    view[:, 0, :] = (a0 + a1) * r
    view[:, 1, :] = (a0 - a1) * r


def phase_np(amps, q, angle):
    amps[_bit(amps.size, q) == 1] *= np.exp(1j * angle)


def cphase_np(amps, ctrl, tgt, angle):
    mask = (_bit(amps.size, ctrl) & _bit(amps.size, tgt)) == 1
    amps[mask] *= np.exp(1j * angle)


def swap_np(amps, q1, q2):
    idx = np.arange(amps.size)
    b1 = (idx >> q1) & 1
    b2 = (idx >> q2) & 1
    src = idx ^ ((b1 ^ b2) * ((1 << q1) | (1 << q2)))
    amps[:] = amps[src]


def rk4_interp_np(h0, h1, psi0, total_time, dt, n_steps, stride):
    """Integrate psi' = -i H(t/T) psi with H(s) = (1-s) h0 + s h1.

    Returns (probabilities at recorded steps, recorded step indices, final psi).
    """
    psi = psi0.astype(np.complex128).copy()
    n_rec = n_steps // stride + 1
    if n_steps % stride:
        n_rec += 1
    probs = np.empty((n_rec, psi.size))
    steps = np.empty(n_rec, dtype=np.int64)
    probs[0] = np.abs(psi) ** 2
    steps[0] = 0
    rec = 1
    dh = h1 - h0
    half = 0.5 * dt
    for k in range(n_steps):
        t = k * dt
        ha = h0 + (t / total_time) * dh
        hm = h0 + ((t + half) / total_time) * dh
        hb = h0 + ((t + dt) / total_time) * dh
        k1 = -1j * (ha @ psi)
        k2 = -1j * (hm @ (psi + half * k1))
        k3 = -1j * (hm @ (psi + half * k2))
        k4 = -1j * (hb @ (psi + dt * k3))
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (k + 1) % stride == 0 or k + 1 == n_steps:
            probs[rec] = np.abs(psi) ** 2
            steps[rec] = k + 1
            rec += 1
    return probs, steps, psi


# -- numba --------------------------------------------------------------------

if HAS_NUMBA:

    @njit
    def hadamard_nb(amps, q):
        stride = 1 << q
        r = 1.0 / np.sqrt(2.0)
        for base in range(0, amps.size, 2 * stride):
            for j in range(base, base + stride):
                a0 = amps[j]
                a1 = amps[j + stride]
                amps[j] = (a0 + a1) * r
                amps[j + stride] = (a0 - a1) * r

    @njit
    def phase_nb(amps, q, angle):
        f = np.exp(1j * angle)
        for i in range(amps.size):
            if (i >> q) & 1:
                amps[i] *= f

    @njit
    def cphase_nb(amps, ctrl, tgt, angle):
        f = np.exp(1j * angle)
        for i in range(amps.size):
            if ((i >> ctrl) & 1) and ((i >> tgt) & 1):
                amps[i] *= f

    @njit
    def swap_nb(amps, q1, q2):
        m1 = 1 << q1
        m2 = 1 << q2
        for i in range(amps.size):
            # visit each unordered pair once, from the side where bit q1 is set
            if (i & m1) and not (i & m2):
                j = (i ^ m1) | m2
                tmp = amps[i]
                amps[i] = amps[j]
                amps[j] = tmp

    @njit
    def _matvec(h0, dh, s, v, out):
        d = v.size
        for i in range(d):
            acc = 0.0 + 0.0j
            for j in range(d):
                acc += (h0[i, j] + s * dh[i, j]) * v[j]
            out[i] = -1j * acc

    @njit
    def rk4_interp_nb(h0, h1, psi0, total_time, dt, n_steps, stride):
        psi = psi0.astype(np.complex128).copy()
        d = psi.size
        n_rec = n_steps // stride + 1
        if n_steps % stride:
            n_rec += 1
        probs = np.empty((n_rec, d))
        steps = np.empty(n_rec, dtype=np.int64)
        for i in range(d):
            probs[0, i] = psi[i].real ** 2 + psi[i].imag ** 2
        steps[0] = 0
        rec = 1
        dh = h1 - h0
        half = 0.5 * dt
        k1 = np.empty(d, np.complex128)
        k2 = np.empty(d, np.complex128)
        k3 = np.empty(d, np.complex128)
        k4 = np.empty(d, np.complex128)
        tmp = np.empty(d, np.complex128)
        for k in range(n_steps):
            t = k * dt
            _matvec(h0, dh, t / total_time, psi, k1)
            for i in range(d):
                tmp[i] = psi[i] + half * k1[i]
            _matvec(h0, dh, (t + half) / total_time, tmp, k2)
            for i in range(d):
                tmp[i] = psi[i] + half * k2[i]
            _matvec(h0, dh, (t + half) / total_time, tmp, k3)
            for i in range(d):
                tmp[i] = psi[i] + dt * k3[i]
            _matvec(h0, dh, (t + dt) / total_time, tmp, k4)
            for i in range(d):
                psi[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if (k + 1) % stride == 0 or k + 1 == n_steps:
                for i in range(d):
                    probs[rec, i] = psi[i].real ** 2 + psi[i].imag ** 2
                steps[rec] = k + 1
                rec += 1
        return probs, steps, psi

    hadamard = hadamard_nb
    phase = phase_nb
    cphase = cphase_nb
    swap = swap_nb
    rk4_interp = rk4_interp_nb
else:
    hadamard = hadamard_np
    phase = phase_np
    cphase = cphase_np
    swap = swap_np
    rk4_interp = rk4_interp_np

BACKEND = "numba" if HAS_NUMBA else "numpy"
