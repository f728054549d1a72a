"""Block Cholesky factorization rho = X^dagger X and the strong PPT test.

For a 2xN state the factor is X = [[X1, S X1], [0, X2]] with X1, X2
Hermitian PSD (the canonical gauge) and S = X1^+ rho12 X1^+.  The state
is strong PPT (SPPT) when S is normal; replacing S by S^dagger then
reproduces the partial transpose.  For 3xN the factor carries S12, S13,
S23 and the SPPT test additionally requires S12 S13^dagger = S13^dagger S12.

When X1 is rank-deficient and rho12 carries mass outside its range, no S
reproduces rho12 and the canonical extraction cannot decide SPPT; the
factorization is then flagged rank_deficient, the unexplained mass is
reported, and the verdict is negative rather than silently passed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.linalg as npl

from . import bipartite
from .bipartite import BipartiteState, assemble_blocks, block_tensor
from .errors import DimensionMismatch, InconsistentBlocks, NotPsd, NotUnitary
from .matlib import DEFAULT_TOL, Tolerance, dagger, fro_norm, hermitian_eig, hermitize

__all__ = [
    "SpptFactorization2",
    "SpptFactorization3",
    "SpptVerdict",
    "factorize_2xn",
    "factorize_3xn",
    "assemble_x",
    "canonical_y",
    "gauge_transform",
    "is_sppt",
]


@dataclass(frozen=True)
class SpptFactorization2:
    """Canonical factorization of a 2xN state.

    rho is the factorized matrix; unexplained_mass is the Frobenius norm of
    the part of rho12 outside the range of X1 (zero when X1 has full rank).
    """

    x1: np.ndarray
    x2: np.ndarray
    s: np.ndarray
    reconstruction_residual: float
    normality_residual: float
    rank_deficient: bool
    unexplained_mass: float
    rho: np.ndarray


@dataclass(frozen=True)
class SpptFactorization3:
    """Canonical factorization of a 3xN state (see module docstring)."""

    x1: np.ndarray
    x2: np.ndarray
    x3: np.ndarray
    s12: np.ndarray
    s13: np.ndarray
    s23: np.ndarray
    reconstruction_residual: float
    normality_residuals: dict[str, float]
    cross_residual: float
    rank_deficient: bool
    unexplained_mass: float
    rho: np.ndarray


@dataclass(frozen=True)
class SpptVerdict:
    """SPPT decision with every residual that entered it.

    is_sppt requires all normality (and, for 3xN, cross) residuals under
    their thresholds, a faithful reconstruction, numerical PPT, and a
    decidable extraction (rank_deficient false), so is_sppt implies is_ppt
    by construction.  For 3xN the verdict refers to the canonical gauge.
    """

    is_sppt: bool
    residuals: dict[str, float]
    rank_deficient: bool
    factorization: SpptFactorization2 | SpptFactorization3


def _sqrt_with_pinv(m: np.ndarray, tol: Tolerance, scale: float):
    """Clamped PSD sqrt plus the pseudoinverse of that sqrt, from one eigh."""
    eig = hermitian_eig(m, tol)
    lam_min = float(eig.eigenvalues[-1])
    if lam_min < -tol.eps_psd * scale:
        raise NotPsd(f"min eigenvalue {lam_min:.3e} below -{tol.eps_psd * scale:.3e}")
    lam = np.clip(eig.eigenvalues, 0.0, None)
    cut = tol.eps_rank * (float(lam[0]) if lam.size else 0.0)
    keep = lam > cut
    root = np.sqrt(lam)
    inv = np.zeros_like(lam)
    inv[keep] = 1.0 / root[keep]
    v = eig.eigenvectors
    x = hermitize((v * root) @ dagger(v))
    xp = hermitize((v * inv) @ dagger(v))
    return x, xp, int(np.count_nonzero(keep))


def _clamped_sqrt(m: np.ndarray, tol: Tolerance) -> np.ndarray:
    # best-effort completion used only on flagged rank-deficient extractions
    eig = hermitian_eig(m, tol)
    lam = np.clip(eig.eigenvalues, 0.0, None)
    v = eig.eigenvectors
    return hermitize((v * np.sqrt(lam)) @ dagger(v))


def _outside_mass(m: np.ndarray, proj: np.ndarray) -> float:
    return fro_norm(m - proj @ m @ proj)


def factorize_2xn(state: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> SpptFactorization2:
    """Canonical-gauge block Cholesky factorization of a 2xN state."""
    if state.dim_a != 2:
        raise DimensionMismatch(f"expected dim_a = 2, got {state.dim_a}")
    t = block_tensor(state)
    rho11, rho12, rho22 = t[0, 0], t[0, 1], t[1, 1]
    scale = max(1.0, fro_norm(state.rho))

    x1, x1p, rank1 = _sqrt_with_pinv(hermitize(rho11), tol, scale)
    s = x1p @ rho12 @ x1p
    proj = hermitize(x1 @ x1p)
    mass = _outside_mass(rho12, proj)
    deficient = rank1 < state.dim_b and mass > tol.eps_residual * scale

    m22 = hermitize(rho22 - x1 @ dagger(s) @ s @ x1)
    try:
        x2, _, _ = _sqrt_with_pinv(m22, tol, scale)
    except NotPsd as exc:
        if not deficient:
            raise InconsistentBlocks(f"rho22 minus the explained part is not PSD: {exc}") from exc
        x2 = _clamped_sqrt(m22, tol)

    f = SpptFactorization2(
        x1=x1,
        x2=x2,
        s=s,
        reconstruction_residual=0.0,
        normality_residual=float(fro_norm(dagger(s) @ s - s @ dagger(s))),
        rank_deficient=deficient,
        unexplained_mass=mass,
        rho=state.rho,
    )
    recon = fro_norm(dagger(assemble_x(f)) @ assemble_x(f) - state.rho)
    return SpptFactorization2(**{**f.__dict__, "reconstruction_residual": float(recon)})


def factorize_3xn(state: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> SpptFactorization3:
    """Canonical-gauge block Cholesky factorization of a 3xN state."""
    if state.dim_a != 3:
        raise DimensionMismatch(f"expected dim_a = 3, got {state.dim_a}")
    t = block_tensor(state)
    scale = max(1.0, fro_norm(state.rho))

    x1, x1p, rank1 = _sqrt_with_pinv(hermitize(t[0, 0]), tol, scale)
    s12 = x1p @ t[0, 1] @ x1p
    s13 = x1p @ t[0, 2] @ x1p
    proj1 = hermitize(x1 @ x1p)
    mass12 = _outside_mass(t[0, 1], proj1)
    mass13 = _outside_mass(t[0, 2], proj1)

    deficient = rank1 < state.dim_b and max(mass12, mass13) > tol.eps_residual * scale
    m22 = hermitize(t[1, 1] - x1 @ dagger(s12) @ s12 @ x1)
    try:
        x2, x2p, rank2 = _sqrt_with_pinv(m22, tol, scale)
    except NotPsd as exc:
        if not deficient:
            raise InconsistentBlocks(f"rho22 minus the explained part is not PSD: {exc}") from exc
        x2 = _clamped_sqrt(m22, tol)
        x2p = np.zeros_like(x2)
        rank2 = 0

    m23 = t[1, 2] - x1 @ dagger(s12) @ s13 @ x1
    s23 = x2p @ m23 @ x2p
    proj2 = hermitize(x2 @ x2p)
    mass23 = _outside_mass(m23, proj2)
    deficient = deficient or (rank2 < state.dim_b and mass23 > tol.eps_residual * scale)

    m33 = hermitize(t[2, 2] - x1 @ dagger(s13) @ s13 @ x1 - x2 @ dagger(s23) @ s23 @ x2)
    try:
        x3, _, _ = _sqrt_with_pinv(m33, tol, scale)
    except NotPsd as exc:
        if not deficient:
            raise InconsistentBlocks(f"rho33 minus the explained part is not PSD: {exc}") from exc
        x3 = _clamped_sqrt(m33, tol)

    f = SpptFactorization3(
        x1=x1,
        x2=x2,
        x3=x3,
        s12=s12,
        s13=s13,
        s23=s23,
        reconstruction_residual=0.0,
        normality_residuals={
            "s12": float(fro_norm(dagger(s12) @ s12 - s12 @ dagger(s12))),
            "s13": float(fro_norm(dagger(s13) @ s13 - s13 @ dagger(s13))),
            "s23": float(fro_norm(dagger(s23) @ s23 - s23 @ dagger(s23))),
        },
        cross_residual=float(fro_norm(s12 @ dagger(s13) - dagger(s13) @ s12)),
        rank_deficient=deficient,
        unexplained_mass=float(np.sqrt(mass12**2 + mass13**2 + mass23**2)),
        rho=state.rho,
    )
    recon = fro_norm(dagger(assemble_x(f)) @ assemble_x(f) - state.rho)
    return SpptFactorization3(**{**f.__dict__, "reconstruction_residual": float(recon)})


def assemble_x(f: SpptFactorization2 | SpptFactorization3) -> np.ndarray:
    """The upper block-triangular factor X with rho = X^dagger X."""
    n = f.x1.shape[0]
    zero = np.zeros((n, n), dtype=np.complex128)
    if isinstance(f, SpptFactorization2):
        grid = [[f.x1, f.s @ f.x1], [zero, f.x2]]
    else:
        grid = [
            [f.x1, f.s12 @ f.x1, f.s13 @ f.x1],
            [zero, f.x2, f.s23 @ f.x2],
            [zero, zero, f.x3],
        ]
    return assemble_blocks(np.array(grid))


def canonical_y(f: SpptFactorization2) -> np.ndarray:
    """Y^dagger Y for the factor Y obtained by replacing S with S^dagger.

    Equals the partial transpose of the factorized state exactly when S is
    normal, which is the content of the SPPT certificate.
    """
    x1, x2, s = f.x1, f.x2, f.s
    grid = np.array(
        [
            [dagger(x1) @ x1, dagger(x1) @ dagger(s) @ x1],
            [dagger(x1) @ s @ x1, dagger(x1) @ s @ dagger(s) @ x1 + dagger(x2) @ x2],
        ]
    )
    return assemble_blocks(grid)


def gauge_transform(
    f: SpptFactorization2, g1, g2, tol: Tolerance = DEFAULT_TOL
) -> SpptFactorization2:
    """Apply the gauge freedom X1 -> G1 X1, X2 -> G2 X2, S -> G1 S G1^dagger.

    G1 and G2 must be unitary; the factorized state, the normality residual
    and the SPPT verdict are invariant (the residuals are recomputed from
    the transformed factors, so equality is numerical, not assumed).
    """
    g1 = np.asarray(g1, dtype=np.complex128)
    g2 = np.asarray(g2, dtype=np.complex128)
    n = f.x1.shape[0]
    for name, g in (("g1", g1), ("g2", g2)):
        if g.shape != (n, n):
            raise DimensionMismatch(f"{name} must be {n}x{n}, got {g.shape}")
        defect = fro_norm(dagger(g) @ g - np.eye(n))
        if defect > tol.eps_residual:
            raise NotUnitary(f"{name} unitarity defect {defect:.3e}")
    x1 = g1 @ f.x1
    x2 = g2 @ f.x2
    s = g1 @ f.s @ dagger(g1)
    out = SpptFactorization2(
        x1=x1,
        x2=x2,
        s=s,
        reconstruction_residual=0.0,
        normality_residual=float(fro_norm(dagger(s) @ s - s @ dagger(s))),
        # both quantities are gauge-invariant; carried over unchanged
        rank_deficient=f.rank_deficient,
        unexplained_mass=f.unexplained_mass,
        rho=f.rho,
    )
    recon = fro_norm(dagger(assemble_x(out)) @ assemble_x(out) - f.rho)
    return SpptFactorization2(**{**out.__dict__, "reconstruction_residual": float(recon)})


def is_sppt(state: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> SpptVerdict:
    """Strong-PPT verdict from the canonical factorization residuals."""
    ppt = bipartite.is_ppt(state, tol)
    scale = max(1.0, fro_norm(state.rho))
    if state.dim_a == 2:
        f = factorize_2xn(state, tol)
        s_sq = fro_norm(f.s) ** 2
        residuals = {
            "normality": f.normality_residual,
            "reconstruction": f.reconstruction_residual,
            "unexplained_mass": f.unexplained_mass,
            "ppt_min_eigenvalue": ppt.min_eigenvalue,
        }
        normal_ok = f.normality_residual <= tol.eps_sppt * max(1.0, s_sq)
    elif state.dim_a == 3:
        f = factorize_3xn(state, tol)
        residuals = {
            "normality_s12": f.normality_residuals["s12"],
            "normality_s13": f.normality_residuals["s13"],
            "normality_s23": f.normality_residuals["s23"],
            "cross": f.cross_residual,
            "reconstruction": f.reconstruction_residual,
            "unexplained_mass": f.unexplained_mass,
            "ppt_min_eigenvalue": ppt.min_eigenvalue,
        }
        pairs = {"s12": f.s12, "s13": f.s13, "s23": f.s23}
        normal_ok = all(
            f.normality_residuals[k] <= tol.eps_sppt * max(1.0, fro_norm(m) ** 2)
            for k, m in pairs.items()
        )
        cross_scale = max(1.0, fro_norm(f.s12) * fro_norm(f.s13))
        normal_ok = normal_ok and f.cross_residual <= tol.eps_sppt * cross_scale
    else:
        raise DimensionMismatch(f"SPPT test defined for dim_a in {{2, 3}}, got {state.dim_a}")

    recon_ok = f.reconstruction_residual <= tol.eps_residual * scale
    verdict = bool(normal_ok and recon_ok and ppt.is_ppt and not f.rank_deficient)
    return SpptVerdict(
        is_sppt=verdict,
        residuals=residuals,
        rank_deficient=f.rank_deficient,
        factorization=f,
    )
