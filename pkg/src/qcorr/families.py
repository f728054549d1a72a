"""Named state families and random ensembles.

Constructors for classical-quantum states, X-states and Bell-diagonal
states, their closed-form positivity / PPT / SPPT / zero-discord
predicates, and seeded random generators (Ginibre densities, Haar
unitaries, random CQ / SPPT / pure states).

All randomness flows through numpy's default_rng (the PCG64 bit
generator): a fixed integer seed reproduces every state bit for bit.

Predicates compare real closed forms; equalities and sign tests use the
absolute slack EQ_ATOL so that parameter sets constructed from float
arithmetic (grids, differences of probabilities) land on the intended
side.  Genuine violations in the sampled families are separated from
zero by many orders of magnitude more than the slack.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bipartite import TRACE_ATOL, BipartiteState, assemble_blocks, validate
from .errors import InvalidParams, InvalidSpec
from .matlib import DEFAULT_TOL, Tolerance, dagger, fro_norm, hermitize

__all__ = [
    "EQ_ATOL",
    "XStateParams",
    "BellDiagonalParams",
    "CqSpec",
    "build_cq_state",
    "xstate",
    "xstate_matrix",
    "xstate_is_positive",
    "xstate_is_ppt",
    "xstate_is_sppt",
    "xstate_zero_discord",
    "bell_projectors",
    "bell_diagonal",
    "induced_xstate",
    "bell_is_sppt",
    "bell_zero_discord",
    "random_ginibre_density",
    "random_unitary",
    "random_cq_spec",
    "random_cq",
    "random_sppt",
    "random_pure",
]

EQ_ATOL = 1e-12


@dataclass(frozen=True)
class XStateParams:
    """Two-qubit X-state parameters.

    The diagonal weights are real and sum to 1; a12 couples |00> with |11>
    and b12 couples |01> with |10>.  Positivity of the assembled state is
    equivalent to a11 a22 >= |a12|^2 and b11 b22 >= |b12|^2.
    """

    a11: float
    a22: float
    b11: float
    b22: float
    a12: complex
    b12: complex

    def __post_init__(self) -> None:
        diag = (self.a11, self.a22, self.b11, self.b22)
        if any(d < -EQ_ATOL for d in diag):
            raise InvalidParams(f"negative diagonal weight in {diag}")
        total = float(sum(diag))
        if abs(total - 1.0) > TRACE_ATOL:
            raise InvalidParams(f"diagonal weights sum to {total!r}, expected 1")


@dataclass(frozen=True)
class BellDiagonalParams:
    """Probabilities over the Bell basis, ordered (Phi+, Phi-, Psi+, Psi-)."""

    p1: float
    p2: float
    p3: float
    p4: float

    def __post_init__(self) -> None:
        p = (self.p1, self.p2, self.p3, self.p4)
        if any(x < -EQ_ATOL for x in p):
            raise InvalidParams(f"negative probability in {p}")
        if abs(sum(p) - 1.0) > TRACE_ATOL:
            raise InvalidParams(f"probabilities sum to {sum(p)!r}, expected 1")


@dataclass(frozen=True)
class CqSpec:
    """Ingredients of a classical-quantum state.

    u is a dim_a x dim_a unitary whose columns are the classical basis
    vectors; sigmas are dim_a PSD operators on the B side whose traces sum
    to 1 (they carry the outcome probabilities).
    """

    dim_a: int
    u: np.ndarray
    sigmas: tuple[np.ndarray, ...]


def build_cq_state(spec: CqSpec, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """Assemble rho = sum_k |f_k><f_k| x sigma_k with f_k the columns of u."""
    m = spec.dim_a
    if m not in (2, 3):
        raise InvalidSpec(f"dim_a must be 2 or 3, got {m}")
    u = np.asarray(spec.u, dtype=np.complex128)
    if u.shape != (m, m):
        raise InvalidSpec(f"u must be {m}x{m}, got {u.shape}")
    defect = fro_norm(dagger(u) @ u - np.eye(m))
    if defect > 1e-10:
        raise InvalidSpec(f"u unitarity defect {defect:.3e} exceeds 1e-10")
    if len(spec.sigmas) != m:
        raise InvalidSpec(f"expected {m} conditional operators, got {len(spec.sigmas)}")
    sigmas = [np.asarray(s, dtype=np.complex128) for s in spec.sigmas]
    n = sigmas[0].shape[0]
    total = 0.0
    for s in sigmas:
        if s.shape != (n, n):
            raise InvalidSpec(f"conditional operators must share shape {(n, n)}, got {s.shape}")
        if fro_norm(s - dagger(s)) > tol.eps_residual * max(1.0, fro_norm(s)):
            raise InvalidSpec("conditional operator is not Hermitian")
        w = np.linalg.eigvalsh(hermitize(s))
        if w.size and float(w[0]) < -tol.eps_psd * max(1.0, fro_norm(s)):
            raise InvalidSpec(f"conditional operator has eigenvalue {float(w[0]):.3e}")
        total += float(np.trace(s).real)
    if abs(total - 1.0) > TRACE_ATOL:
        raise InvalidSpec(f"conditional traces sum to {total!r}, expected 1")

    blocks = np.einsum("km,lm,mab->klab", u, np.conj(u), np.array(sigmas))
    rho = hermitize(assemble_blocks(blocks))
    return validate(rho, m, n, tol)


def xstate_matrix(params: XStateParams) -> np.ndarray:
    """The 4x4 X-pattern matrix; assembled without any positivity check."""
    a12 = complex(params.a12)
    b12 = complex(params.b12)
    return np.array(
        [
            [params.a11, 0.0, 0.0, a12],
            [0.0, params.b11, b12, 0.0],
            [0.0, np.conj(b12), params.b22, 0.0],
            [np.conj(a12), 0.0, 0.0, params.a22],
        ],
        dtype=np.complex128,
    )


def xstate(params: XStateParams, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """The validated two-qubit X-state; requires positive parameters."""
    if not xstate_is_positive(params):
        raise InvalidParams("parameters violate the positivity inequalities")
    return validate(xstate_matrix(params), 2, 2, tol)


def xstate_is_positive(params: XStateParams) -> bool:
    """a11 a22 >= |a12|^2 and b11 b22 >= |b12|^2."""
    return (
        params.a11 * params.a22 - abs(params.a12) ** 2 >= -EQ_ATOL
        and params.b11 * params.b22 - abs(params.b12) ** 2 >= -EQ_ATOL
    )


def xstate_is_ppt(params: XStateParams) -> bool:
    """Positivity plus the partially transposed pair of inequalities."""
    return (
        xstate_is_positive(params)
        and params.a11 * params.a22 - abs(params.b12) ** 2 >= -EQ_ATOL
        and params.b11 * params.b22 - abs(params.a12) ** 2 >= -EQ_ATOL
    )


def xstate_is_sppt(params: XStateParams) -> bool:
    """Positivity plus |a12| = |b12| (which already implies PPT)."""
    return xstate_is_positive(params) and abs(abs(params.a12) - abs(params.b12)) <= EQ_ATOL


def xstate_zero_discord(params: XStateParams) -> bool:
    """Exact zero-discord test.

    Either both couplings vanish (the state is diagonal, hence classical in
    the computational basis), or |a12| = |b12| together with a11 = b22 and
    a22 = b11, which makes the two 2x2 parameter matrices unitarily
    equivalent by an antidiagonal phase unitary.
    """
    if not xstate_is_positive(params):
        return False
    if abs(params.a12) <= EQ_ATOL and abs(params.b12) <= EQ_ATOL:
        return True
    return (
        abs(abs(params.a12) - abs(params.b12)) <= EQ_ATOL
        and abs(params.a11 - params.b22) <= EQ_ATOL
        and abs(params.a22 - params.b11) <= EQ_ATOL
    )


def bell_projectors() -> list[np.ndarray]:
    """The four Bell projectors, ordered (Phi+, Phi-, Psi+, Psi-)."""
    r = 1.0 / np.sqrt(2.0)
    vecs = np.array(
        [
            [r, 0.0, 0.0, r],
            [r, 0.0, 0.0, -r],
            [0.0, r, r, 0.0],
            [0.0, r, -r, 0.0],
        ],
        dtype=np.complex128,
    )
    return [np.outer(v, np.conj(v)) for v in vecs]


def bell_diagonal(params: BellDiagonalParams, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """rho = sum_i p_i P_i over the Bell projectors."""
    p = (params.p1, params.p2, params.p3, params.p4)
    rho = sum(w * proj for w, proj in zip(p, bell_projectors()))
    return validate(hermitize(rho), 2, 2, tol)


def induced_xstate(params: BellDiagonalParams) -> XStateParams:
    """X-state parameters of the Bell-diagonal density matrix.

    The density matrix sum_i p_i P_i carries half of the customary
    (p1 +- p2, p3 +- p4) combinations in each slot, so that the diagonal
    weights sum to 1.
    """
    return XStateParams(
        a11=(params.p1 + params.p2) / 2.0,
        a22=(params.p1 + params.p2) / 2.0,
        b11=(params.p3 + params.p4) / 2.0,
        b22=(params.p3 + params.p4) / 2.0,
        a12=(params.p1 - params.p2) / 2.0,
        b12=(params.p3 - params.p4) / 2.0,
    )


def bell_is_sppt(params: BellDiagonalParams) -> bool:
    """|p1 - p2| = |p3 - p4|."""
    return abs(abs(params.p1 - params.p2) - abs(params.p3 - params.p4)) <= EQ_ATOL


def bell_zero_discord(params: BellDiagonalParams) -> bool:
    """Zero discord for a Bell-diagonal state.

    In correlation-tensor form rho = (I x I + sum_a t_a s_a x s_a)/4 the
    state is classical-quantum exactly when at most one t_a is nonzero.
    That covers the pairings p1 = p3, p2 = p4 and p1 = p4, p2 = p3 as well
    as the diagonal case p1 = p2, p3 = p4 (classical in the computational
    basis), which the pairings miss.
    """
    t1 = params.p1 - params.p2 + params.p3 - params.p4
    t2 = -params.p1 + params.p2 + params.p3 - params.p4
    t3 = params.p1 + params.p2 - params.p3 - params.p4
    return sum(abs(t) > EQ_ATOL for t in (t1, t2, t3)) <= 1


def _rng(rng_seed) -> np.random.Generator:
    return np.random.default_rng(rng_seed)


def _ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def random_ginibre_density(n: int, rng_seed) -> np.ndarray:
    """rho = G G^dagger / tr(G G^dagger) with i.i.d. complex Gaussian G."""
    g = _ginibre(_rng(rng_seed), n)
    rho = g @ dagger(g)
    return hermitize(rho / np.trace(rho).real)


def _haar(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(_ginibre(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unitary(n: int, rng_seed) -> np.ndarray:
    """Haar-distributed unitary (QR of a Ginibre matrix, phases fixed)."""
    return _haar(_rng(rng_seed), n)


def random_cq_spec(dim_a: int, n: int, rng_seed) -> CqSpec:
    """Random ingredients of a classical-quantum state.

    The basis is Haar random; conditional operators mix a Ginibre density
    with a sliver of the maximally mixed state, and the outcome weights are
    kept away from 0.  Both choices bound the conditioning of the induced
    factorizations so residuals stay near machine precision across
    ensembles.
    """
    rng = _rng(rng_seed)
    u = _haar(rng, dim_a)
    w = rng.dirichlet(np.ones(dim_a))
    w = (w + 0.25) / (1.0 + 0.25 * dim_a)
    sigmas = []
    for k in range(dim_a):
        g = _ginibre(rng, n)
        dens = g @ dagger(g)
        dens = dens / np.trace(dens).real
        sigmas.append(w[k] * hermitize(0.95 * dens + 0.05 * np.eye(n) / n))
    return CqSpec(dim_a=dim_a, u=u, sigmas=tuple(sigmas))


def random_cq(dim_a: int, n: int, rng_seed, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """Random classical-quantum state built from random_cq_spec."""
    return build_cq_state(random_cq_spec(dim_a, n, rng_seed), tol)


def random_sppt(n: int, rng_seed, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """Random 2xN state that is SPPT by construction.

    Builds X = [[X1, S X1], [0, X2]] with well-conditioned X1, X2 and a
    random normal S = W D W^dagger (Haar W, complex diagonal D), then
    normalizes rho = X^dagger X.  Normality of S survives the canonical
    re-extraction, which conjugates S by the unitary polar factor of X1.
    """
    rng = _rng(rng_seed)
    xs = []
    for _ in range(2):
        g = _ginibre(rng, n)
        xs.append(np.eye(n) + 0.5 * g / max(np.linalg.norm(g, 2), 1e-12))
    w = _haar(rng, n)
    d = np.diag((rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0))
    s = w @ d @ dagger(w)
    x1, x2 = xs
    zero = np.zeros((n, n), dtype=np.complex128)
    x = assemble_blocks(np.array([[x1, s @ x1], [zero, x2]]))
    rho = dagger(x) @ x
    rho = hermitize(rho / np.trace(rho).real)
    return validate(rho, 2, n, tol)


def random_pure(dim_a: int, n: int, rng_seed, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """Haar-random pure state on the dim_a x n system."""
    rng = _rng(rng_seed)
    psi = rng.standard_normal(dim_a * n) + 1j * rng.standard_normal(dim_a * n)
    psi = psi / np.linalg.norm(psi)
    return validate(np.outer(psi, np.conj(psi)), dim_a, n, tol)
