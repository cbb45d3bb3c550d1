"""Polar decomposition and Moore-Penrose inversion of dense complex matrices.

The polar factor produced here is always the partial isometry that vanishes
on the null space, characterized by ``T = U |T|`` together with
``U* U = P`` where ``P`` projects onto the closure of ``ran(T*)``. This is a
stricter contract than the unitary polar factorization: the factor is unique,
and it is the one under which products, powers, and Moore-Penrose inverses
behave well. ``verify_polar`` checks the full contract plus the derived
identities ``|T*| = U |T| U*`` and ``U |T| = |T*| U``, and reports per-identity
residuals.

All operations accept rectangular input except where noted; all are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    ToleranceConfig,
    as_operator,
    equality_residual,
    fro_norm,
    numerical_rank,
    range_projection,
    svd,
)

__all__ = [
    "PolarParts",
    "PolarCheck",
    "PenroseCheck",
    "abs_value",
    "polar_decompose",
    "verify_polar",
    "moore_penrose",
    "penrose_check",
    "mp_polar_parts",
]


@dataclass(frozen=True)
class PolarParts:
    """Polar factors ``(U, P)`` with ``U`` a partial isometry and ``P`` PSD.

    ``rank`` is the numerical rank used to build the isometry; the same rank
    backs every range projection taken within one decomposition.
    """

    isometry: np.ndarray
    modulus: np.ndarray
    rank: int


@dataclass(frozen=True)
class PolarCheck:
    """Outcome of ``verify_polar``: per-identity scaled residuals."""

    ok: bool
    residuals: dict[str, float]

    def worst(self) -> float:
        return max(self.residuals.values())


@dataclass(frozen=True)
class PenroseCheck:
    """Scaled residuals of the four Moore-Penrose equations.

    Order: ``TXT - T``, ``XTX - X``, ``(TX)* - TX``, ``(XT)* - XT``.
    """

    residuals: tuple[float, float, float, float]
    ok: bool


def abs_value(t, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Hermitian PSD square root of ``t* t``, computed from the SVD of ``t``."""
    t = as_operator(t)
    decomp = svd(t)
    x = decomp.right_vectors
    result = (x * decomp.singular_values) @ x.conj().T
    return 0.5 * (result + result.conj().T)


def polar_decompose(t, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> PolarParts:
    """Canonical polar decomposition ``t = U P`` with ``U* U = P_{ran t*}``.

    From the SVD ``t = W diag(s) X*`` with numerical rank ``r``, the factors
    are ``U = W_r X_r*`` and ``P = X diag(s) X*``. Sign and phase ambiguity of
    degenerate singular vectors cancels in both products, so the output is
    deterministic given the factorization.
    """
    t = as_operator(t)
    decomp = svd(t)
    r = numerical_rank(decomp.singular_values, cfg)
    if r == 0:
        isometry = np.zeros_like(t)
    else:
        isometry = decomp.left_vectors[:, :r] @ decomp.right_vectors[:, :r].conj().T
    x = decomp.right_vectors
    modulus = (x * decomp.singular_values) @ x.conj().T
    modulus = 0.5 * (modulus + modulus.conj().T)
    return PolarParts(isometry=isometry, modulus=modulus, rank=r)


def verify_polar(
    t, parts: PolarParts, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> PolarCheck:
    """Check that ``parts`` is the polar decomposition of ``t``.

    Verifies, each within tolerance:

    * ``t = U P`` (reconstruction),
    * ``P`` Hermitian with spectrum >= -tol,
    * ``U`` a partial isometry (``U U* U = U``),
    * ``U* U`` equals the range projection of ``P``,
    * ``|t*| = U P U*`` and ``U P = |t*| U``.

    Returns a PolarCheck carrying one scaled residual per identity. The PSD
    residual is compared against ``zero_rel_tol``; everything else against
    ``equality_rel_tol``.
    """
    t = as_operator(t)
    u = as_operator(parts.isometry)
    p = as_operator(parts.modulus)
    if u.shape != t.shape:
        raise ValueError(f"isometry shape {u.shape} does not match operator {t.shape}")
    if p.shape != (t.shape[1], t.shape[1]):
        raise ValueError(f"modulus shape {p.shape} does not match operator {t.shape}")

    herm = 0.5 * (p + p.conj().T)
    eigenvalues = np.linalg.eigvalsh(herm)
    psd_scale = max(1.0, float(eigenvalues[-1]) if eigenvalues.size else 0.0)
    adjoint_modulus = abs_value(t.conj().T, cfg)

    residuals = {
        "reconstruction": equality_residual(t, u @ p),
        "modulus_hermitian": fro_norm(p - p.conj().T) / max(1.0, fro_norm(p)),
        "modulus_psd": max(0.0, -float(eigenvalues[0])) / psd_scale,
        "partial_isometry": equality_residual(u @ u.conj().T @ u, u),
        "range_condition": equality_residual(
            u.conj().T @ u, range_projection(p, cfg)
        ),
        "adjoint_modulus": equality_residual(u @ p @ u.conj().T, adjoint_modulus),
        "intertwine": equality_residual(u @ p, adjoint_modulus @ u),
    }
    ok = all(
        value <= (cfg.zero_rel_tol if name == "modulus_psd" else cfg.equality_rel_tol)
        for name, value in residuals.items()
    )
    return PolarCheck(ok=ok, residuals=residuals)


def moore_penrose(t, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Moore-Penrose inverse via SVD inversion above the rank cutoff."""
    t = as_operator(t)
    decomp = svd(t)
    r = numerical_rank(decomp.singular_values, cfg)
    if r == 0:
        return np.zeros((t.shape[1], t.shape[0]), dtype=np.complex128)
    x = decomp.right_vectors[:, :r]
    w = decomp.left_vectors[:, :r]
    return (x / decomp.singular_values[:r]) @ w.conj().T


def penrose_check(
    t, x, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> PenroseCheck:
    """Evaluate the four Moore-Penrose equations for a candidate inverse ``x``."""
    t = as_operator(t)
    x = as_operator(x)
    if x.shape != (t.shape[1], t.shape[0]):
        raise ValueError(f"candidate shape {x.shape} does not match operator {t.shape}")
    tx = t @ x
    xt = x @ t
    residuals = (
        fro_norm(t @ x @ t - t) / max(1.0, fro_norm(t)),
        fro_norm(x @ t @ x - x) / max(1.0, fro_norm(x)),
        fro_norm(tx.conj().T - tx) / max(1.0, fro_norm(tx)),
        fro_norm(xt.conj().T - xt) / max(1.0, fro_norm(xt)),
    )
    ok = all(value <= cfg.equality_rel_tol for value in residuals)
    return PenroseCheck(residuals=residuals, ok=ok)


def mp_polar_parts(t, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> PolarParts:
    """Polar decomposition of the Moore-Penrose inverse of a square ``t``.

    If ``t = U |t|`` then the inverse decomposes as ``U* |pinv(t)|``; the
    returned parts pass ``verify_polar`` against ``moore_penrose(t)``.
    """
    t = as_operator(t)
    if t.shape[0] != t.shape[1]:
        raise ValueError(f"expected a square operator, got {t.shape}")
    parts = polar_decompose(t, cfg)
    pinv = moore_penrose(t, cfg)
    return PolarParts(
        isometry=parts.isometry.conj().T,
        modulus=abs_value(pinv, cfg),
        rank=parts.rank,
    )
