"""Reference implementations shared by the test suite.

Everything in this module is deliberately written *independently* of the
package internals: explicit loops instead of reshapes, closed-form 2x2
eigenvalues instead of LAPACK where possible, and alternative mathematical
characterizations (Bloch-span rank, commuting slice families) instead of the
detection algorithms under test.  A test that compares the package against
these oracles can only pass if both derivations agree.
"""
from __future__ import annotations

import numpy as np

from qcorr import BipartiteState


# ---------------------------------------------------------------------------
# elementary oracles


def naive_partial_transpose(rho: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Blockwise transpose over the first factor, written with explicit loops."""
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    n = dim_b
    for k in range(dim_a):
        for l in range(dim_a):
            out[k * n : (k + 1) * n, l * n : (l + 1) * n] = \
                rho[l * n : (l + 1) * n, k * n : (k + 1) * n]
    return out


def entropy_bits(weights) -> float:
    """- sum w log2 w over the positive entries, by direct summation."""
    total = 0.0
    for w in np.asarray(weights, dtype=np.float64).ravel():
        if w > 0.0:
            total -= w * np.log2(w)
    return float(total)


def vn_entropy(mat) -> float:
    w = np.clip(np.linalg.eigvalsh(np.asarray(mat, dtype=np.complex128)), 0.0, None)
    return entropy_bits(w)


def eig2(a: float, d: float, b: complex) -> tuple[float, float]:
    """Eigenvalues of [[a, b], [conj(b), d]] from the quadratic formula."""
    m = 0.5 * (a + d)
    r = np.sqrt(0.25 * (a - d) ** 2 + abs(b) ** 2)
    return float(m - r), float(m + r)


def binary_entropy(x) -> np.ndarray:
    x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
    out = np.zeros_like(x)
    for val in (x, 1.0 - x):
        mask = val > 0.0
        out = out - np.where(mask, val * np.log2(np.where(mask, val, 1.0)), 0.0)
    return out


# ---------------------------------------------------------------------------
# brute-force measured correlation for a qubit-qubit state


def brute_discord_2q(state: BipartiteState, n_theta: int = 512, n_phi: int = 1024) -> float:
    """Discord of a 2x2 state from an exhaustive Bloch-sphere grid.

    Conditional 2x2 spectra come from the closed-form quadratic eigenvalues,
    so no eigen-solver or optimizer code from the package is involved.
    """
    if state.dim_a != 2 or state.dim_b != 2:
        raise ValueError("brute_discord_2q expects a 2x2 state")
    rho = state.rho
    b11, b12 = rho[:2, :2], rho[:2, 2:]
    b21, b22 = rho[2:, :2], rho[2:, 2:]

    rho_b = b11 + b22
    rho_a = np.array([[np.trace(b11), np.trace(b12)],
                      [np.trace(b21), np.trace(b22)]])
    s_b = entropy_bits(np.clip(eig2(rho_b[0, 0].real, rho_b[1, 1].real, rho_b[0, 1]), 0.0, None))
    s_a = entropy_bits(np.clip(eig2(rho_a[0, 0].real, rho_a[1, 1].real, rho_a[0, 1]), 0.0, None))
    s_ab = vn_entropy(rho)
    mi = s_a + s_b - s_ab

    th = np.linspace(0.0, np.pi, n_theta)[:, None]
    ph = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)[None, :]
    c2 = np.cos(th / 2.0) ** 2
    s2 = np.sin(th / 2.0) ** 2
    cs = np.cos(th / 2.0) * np.sin(th / 2.0)
    e = np.exp(1j * ph)

    # sigma_+ = c^2 b11 + cs e b12 + cs conj(e) b21 + s^2 b22  (unnormalized)
    a_p = c2 * b11[0, 0].real + 2.0 * cs * (e * b12[0, 0]).real + s2 * b22[0, 0].real
    d_p = c2 * b11[1, 1].real + 2.0 * cs * (e * b12[1, 1]).real + s2 * b22[1, 1].real
    o_p = c2 * b11[0, 1] + cs * e * b12[0, 1] + cs * np.conj(e) * b21[0, 1] + s2 * b22[0, 1]
    tot11 = (b11 + b22)[0, 0].real
    tot22 = (b11 + b22)[1, 1].real
    tot12 = (b11 + b22)[0, 1]

    p_plus = a_p + d_p
    m_p = 0.5 * (a_p + d_p)
    r_p = np.sqrt(np.maximum(0.25 * (a_p - d_p) ** 2 + np.abs(o_p) ** 2, 0.0))
    lam1 = np.clip(m_p - r_p, 0.0, None)
    lam2 = np.clip(m_p + r_p, 0.0, None)

    a_m = tot11 - a_p
    d_m = tot22 - d_p
    o_m = tot12 - o_p
    m_m = 0.5 * (a_m + d_m)
    r_m = np.sqrt(np.maximum(0.25 * (a_m - d_m) ** 2 + np.abs(o_m) ** 2, 0.0))
    mu1 = np.clip(m_m - r_m, 0.0, None)
    mu2 = np.clip(m_m + r_m, 0.0, None)
    p_minus = 1.0 - p_plus

    def plogp(x):
        return np.where(x > 0.0, x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)

    # sum_k p_k S(sigma_k / p_k) = -sum over unnormalized eigs w log2 w + sum p log2 p
    cond = -(plogp(lam1) + plogp(lam2) + plogp(mu1) + plogp(mu2)) \
        + plogp(p_plus) + plogp(p_minus)
    best = float(np.max(s_b - cond))
    return max(0.0, mi - max(best, 0.0))


# ---------------------------------------------------------------------------
# independent classical-quantum characterizations


def qubit_side_cq(state: BipartiteState, tol: float = 1e-8) -> bool:
    """CQ test for dim_a = 2 by a rank condition.

    Writing rho = (I (x) C_I + sum_w sigma_w (x) C_w) / 2 over the Pauli
    basis on A, the state is classical on A iff the three conditioned
    operators (C_x, C_y, C_z) span at most one real direction.
    """
    if state.dim_a != 2:
        raise ValueError("qubit_side_cq expects dim_a = 2")
    n = state.dim_b
    rho = state.rho
    b11, b12 = rho[:n, :n], rho[:n, n:]
    b21, b22 = rho[n:, :n], rho[n:, n:]
    cx = b12 + b21
    cy = 1j * (b12 - b21)
    cz = b11 - b22
    rows = np.stack([
        np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in (cx, cy, cz)
    ])
    s = np.linalg.svd(rows, compute_uv=False)
    return bool(s[1] <= tol * max(1.0, s[0]))


def commuting_slice_cq(state: BipartiteState, tol: float = 1e-8) -> bool:
    """CQ test for any dim_a via simultaneous diagonalizability.

    The A-side slice family T_ab with (T_ab)[k, l] = block(k, l)[a, b] is of
    the form U diag(...) U^dagger for a single unitary U iff every slice is
    normal and all slices pairwise commute; that is exactly the
    classical-quantum form.
    """
    m, n = state.dim_a, state.dim_b
    t = state.rho.reshape(m, n, m, n).transpose(1, 3, 0, 2).reshape(n * n, m, m)
    worst = 0.0
    for i in range(t.shape[0]):
        a = t[i]
        worst = max(worst, float(np.linalg.norm(a @ a.conj().T - a.conj().T @ a)))
        for j in range(i + 1, t.shape[0]):
            b = t[j]
            worst = max(worst, float(np.linalg.norm(a @ b - b @ a)))
    return worst <= tol


# ---------------------------------------------------------------------------
# stratified X-state parameter sampling with decision margins


def sample_xstate_params(rng: np.random.Generator, kind: str):
    """Draw XStateParams of the requested kind, away from decision boundaries.

    kind 'generic' draws independent couplings (possibly non-positive or
    NPT), 'sppt' forces exactly equal coupling magnitudes, 'zero_discord'
    additionally imposes the diagonal swap symmetry, and 'diagonal' zeroes
    both couplings.  Every inequality the analytic predicates test is kept
    at least `margin` away from equality unless it holds exactly, so the
    closed forms and the numerical pipeline cannot disagree through
    rounding.
    """
    from qcorr import XStateParams

    margin = 1e-5
    while True:
        diag = rng.dirichlet(np.ones(4) * 1.2)
        if diag.min() < 0.02:
            continue
        a11, a22, b11, b22 = (float(x) for x in diag)
        alpha, beta = rng.uniform(0.0, 2.0 * np.pi, size=2)
        if kind == "generic":
            ra, rb = rng.uniform(0.0, 1.3, size=2)
            a12 = ra * np.sqrt(a11 * a22) * np.exp(1j * alpha)
            b12 = rb * np.sqrt(b11 * b22) * np.exp(1j * beta)
        elif kind == "sppt":
            mag = rng.uniform(0.0, 0.95) * min(np.sqrt(a11 * a22), np.sqrt(b11 * b22))
            a12 = mag * np.exp(1j * alpha)
            b12 = mag * np.exp(1j * beta)
        elif kind == "zero_discord":
            x, y = a11 / (2.0 * (a11 + a22)), a22 / (2.0 * (a11 + a22))
            a11, a22, b11, b22 = x, y, y, x
            mag = rng.uniform(0.0, 0.95) * np.sqrt(a11 * a22)
            a12 = mag * np.exp(1j * alpha)
            b12 = mag * np.exp(1j * beta)
        elif kind == "diagonal":
            a12 = 0j
            b12 = 0j
        else:
            raise ValueError(f"unknown kind {kind!r}")

        slacks = [
            a11 * a22 - abs(a12) ** 2,
            b11 * b22 - abs(b12) ** 2,
            a11 * a22 - abs(b12) ** 2,
            b11 * b22 - abs(a12) ** 2,
        ]
        if any(s != 0.0 and abs(s) < margin for s in slacks):
            continue
        # the numerical normality residual is ~ |.|a12|^2 - |b12|^2.| / (a11 b11),
        # compared against eps_sppt * max(1, |S|^2); an absolute 1e-4 margin on
        # the squared-magnitude gap keeps that ratio > 10^3 on the failing side
        gap = abs(a12) ** 2 - abs(b12) ** 2
        if kind == "generic" and gap != 0.0 and abs(gap) < 1e-4:
            continue
        return XStateParams(a11=a11, a22=a22, b11=b11, b22=b22,
                            a12=complex(a12), b12=complex(b12))


def simplex_grid(steps: int) -> list[tuple[float, float, float, float]]:
    """All probability 4-tuples on the uniform simplex grid with `steps` steps."""
    pts = []
    for i in range(steps + 1):
        for j in range(steps + 1 - i):
            for k in range(steps + 1 - i - j):
                l = steps - i - j - k
                pts.append((i / steps, j / steps, k / steps, l / steps))
    return pts


def child_seeds(master: int, count: int) -> list[int]:
    """Deterministic stream of independent integer seeds."""
    rng = np.random.default_rng(master)
    return [int(s) for s in rng.integers(0, 2**63 - 1, size=count)]
