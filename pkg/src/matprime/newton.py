"""Gauss-Newton solver for the commutator equations of polynomial matrices.

A polynomial matrix M = sum C_i t^i commutes with its derivative iff the
t^k coefficients of MM' - M'M vanish: R_k = sum_{i+j=k+1} j*(C_i C_j -
C_j C_i) = 0 for k = 0..2r-1 (the top block is identically zero and kept
for transparency).  The system is underdetermined, so iterations take
minimal-norm least-squares steps.  Whenever such an iteration converges,
the limit is checked for being (numerically) Type 1: the monomials t^i
are independent over the constants, so the C_i are the canonical constant
coefficients and Type 1 means they pairwise commute.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from matprime.errors import NumericalBreakdown

_MACHINE_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class PolyMatrixFamily:
    """Coefficients C_0..C_r of a polynomial matrix, each n x n float."""

    coeffs: np.ndarray  # shape (r+1, n, n)

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=float)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ValueError("coeffs must have shape (r+1, n, n)")
        if not np.isfinite(arr).all():
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", arr)

    @property
    def r(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def n(self) -> int:
        return self.coeffs.shape[1]

    def flatten(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    @classmethod
    def from_flat(cls, vec: np.ndarray, r: int, n: int) -> "PolyMatrixFamily":
        return cls(np.asarray(vec, dtype=float).reshape(r + 1, n, n))


@dataclass(frozen=True)
class NewtonConfig:
    max_iters: int = 100
    residual_tol: float = 1e-10
    step_damping: float = 1.0
    commute_tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.residual_tol <= 0 or self.commute_tol <= 0:
            raise ValueError("tolerances must be positive")
        if not 0 < self.step_damping <= 1:
            raise ValueError("damping must be in (0, 1]")


@dataclass(frozen=True)
class TrialResult:
    converged: bool
    iterations: int
    final_residual_norm: float
    approx_type1: bool
    max_pairwise_commutator_norm: float


def commutator_residual(fam: PolyMatrixFamily) -> list[np.ndarray]:
    """R_k for k = 0..2r-1: the t^k coefficient of MM' - M'M."""
    r, n = fam.r, fam.n
    c = fam.coeffs
    out = [np.zeros((n, n)) for _ in range(max(2 * r, 0))]
    for i in range(r + 1):
        for j in range(1, r + 1):
            k = i + j - 1
            comm = c[i] @ c[j] - c[j] @ c[i]
            out[k] = out[k] + j * comm
    return out


def jacobian_apply(fam: PolyMatrixFamily, delta: PolyMatrixFamily) -> list[np.ndarray]:
    """Directional derivative of the residual along delta."""
    if fam.coeffs.shape != delta.coeffs.shape:
        raise ValueError("family and delta shapes differ")
    r, n = fam.r, fam.n
    c, d = fam.coeffs, delta.coeffs
    out = [np.zeros((n, n)) for _ in range(max(2 * r, 0))]
    for i in range(r + 1):
        for j in range(1, r + 1):
            k = i + j - 1
            term = (d[i] @ c[j] - c[j] @ d[i]) + (c[i] @ d[j] - d[j] @ c[i])
            out[k] = out[k] + j * term
    return out


def residual_norm(fam: PolyMatrixFamily) -> float:
    blocks = commutator_residual(fam)
    if not blocks:
        return 0.0
    return float(np.sqrt(sum(float(np.sum(b * b)) for b in blocks)))


def approx_type1_check(fam: PolyMatrixFamily, tol: float) -> tuple[bool, float]:
    """Max Frobenius norm of [C_i, C_j] over pairs; Type 1 within tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = fam.coeffs
    worst = 0.0
    for i in range(len(c)):
        for j in range(i + 1, len(c)):
            comm = c[i] @ c[j] - c[j] @ c[i]
            worst = max(worst, float(np.linalg.norm(comm)))
    return worst <= tol, worst


def _jacobian_matrix(fam: PolyMatrixFamily) -> np.ndarray:
    r, n = fam.r, fam.n
    n_vars = (r + 1) * n * n
    n_eqs = 2 * r * n * n
    jac = np.zeros((n_eqs, n_vars))
    for col in range(n_vars):
        unit = np.zeros(n_vars)
        unit[col] = 1.0
        blocks = jacobian_apply(fam, PolyMatrixFamily.from_flat(unit, r, n))
        jac[:, col] = np.concatenate([b.reshape(-1) for b in blocks])
    return jac


def newton_solve(
    start: PolyMatrixFamily, config: NewtonConfig
) -> tuple[PolyMatrixFamily, TrialResult]:
    """Damped minimal-norm Gauss-Newton on the flattened residual.

    Raises NumericalBreakdown when the least-squares subproblem fails or
    the iterates stop being finite.
    """
    fam = start
    res = residual_norm(fam)
    iters = 0
    while res > config.residual_tol and iters < config.max_iters:
        jac = _jacobian_matrix(fam)
        rhs = np.concatenate([b.reshape(-1) for b in commutator_residual(fam)])
        try:
            step, *_ = np.linalg.lstsq(jac, -rhs, rcond=None)
        except np.linalg.LinAlgError as exc:
            raise NumericalBreakdown(f"least-squares step failed: {exc}") from exc
        if not np.isfinite(step).all():
            raise NumericalBreakdown("non-finite least-squares step")
        flat = fam.flatten() + config.step_damping * step
        if not np.isfinite(flat).all():
            raise NumericalBreakdown("iterate left the finite floats")
        fam = PolyMatrixFamily.from_flat(flat, start.r, start.n)
        res = residual_norm(fam)
        iters += 1
    converged = res <= config.residual_tol
    if converged:
        is_t1, worst = approx_type1_check(fam, config.commute_tol)
    else:
        is_t1, worst = False, float("nan")
    return fam, TrialResult(converged, iters, res, is_t1, worst)


# -- experiment runner ---------------------------------------------------------


@dataclass(frozen=True)
class ExperimentSummary:
    n: int
    r: int
    trials: int
    seed: int
    near_type2: bool
    converged_count: int
    breakdown_count: int
    type1_among_converged: float | None
    convergence_rate: float
    residual_max: float | None
    residual_mean: float | None
    commutator_max: float | None
    iterations_mean: float | None
    records: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "r": self.r,
            "trials": self.trials,
            "seed": self.seed,
            "near_type2": self.near_type2,
            "converged_count": self.converged_count,
            "breakdown_count": self.breakdown_count,
            "type1_among_converged": self.type1_among_converged,
            "convergence_rate": self.convergence_rate,
            "residual_max": self.residual_max,
            "residual_mean": self.residual_mean,
            "commutator_max": self.commutator_max,
            "iterations_mean": self.iterations_mean,
        }
        if self.records:
            out["records"] = self.records
        return out


def near_type2_family(n: int, r: int, seed: int) -> PolyMatrixFamily:
    """Float cast of an exact Type-2 polynomial matrix of size n, degree 4
    (the rank-one nilpotent built on f = (1, t, t^2, 0, ..., 0)); needs
    n >= 3 and r >= 4."""
    if n < 3:
        raise ValueError("Type 2 needs size >= 3")
    if r < 4:
        raise ValueError("the smallest polynomial Type-2 family has degree 4; need r >= 4")
    from matprime.classify import make_type2
    from matprime.expr import parse_ratfunc

    f = [parse_ratfunc(s) for s in ("1", "t", "t^2")] + [
        parse_ratfunc("0") for _ in range(n - 3)
    ]
    m = make_type2(f, seed)
    return family_from_exact(m, r)


def family_from_exact(m, r: int) -> PolyMatrixFamily:
    """Exact polynomial matrix -> float coefficient family C_0..C_r."""
    n = m.n_rows
    coeffs = np.zeros((r + 1, n, n))
    for i in range(n):
        for j in range(n):
            entry = m[i, j]
            if not entry.is_polynomial():
                raise ValueError("matrix entries must be polynomials in t")
            if entry.num.degree > r:
                raise ValueError(f"entry degree {entry.num.degree} exceeds r = {r}")
            for k, c in enumerate(entry.num.coefficients()):
                coeffs[k, i, j] = float(c)
    return PolyMatrixFamily(coeffs)


def run_experiment(
    n: int,
    r: int,
    trials: int,
    config: NewtonConfig,
    near_type2: bool = False,
    noise: float = 1e-2,
    verbose_records: bool = False,
) -> ExperimentSummary:
    """Seeded batch of Gauss-Newton runs from random (or near-Type-2)
    starting coefficients.  Per-trial randomness is derived from
    (config.seed, trial index), so parallel and serial execution agree."""
    if trials < 1:
        raise ValueError("need at least one trial")
    base = near_type2_family(n, r, config.seed) if near_type2 else None
    results = []
    breakdowns = 0
    records = []
    for idx in range(trials):
        rng = np.random.default_rng([config.seed, idx])
        draw = rng.standard_normal((r + 1, n, n))
        if base is not None:
            start = PolyMatrixFamily(base.coeffs + noise * draw)
        else:
            start = PolyMatrixFamily(draw)
        try:
            _, result = newton_solve(start, config)
        except NumericalBreakdown:
            breakdowns += 1
            if verbose_records:
                records.append({"trial": idx, "breakdown": True})
            continue
        results.append(result)
        if verbose_records:
            records.append(
                {
                    "trial": idx,
                    "converged": result.converged,
                    "iterations": result.iterations,
                    "residual": result.final_residual_norm,
                    "approx_type1": result.approx_type1,
                    "max_commutator": _json_float(result.max_pairwise_commutator_norm),
                }
            )
    converged = [x for x in results if x.converged]
    type1_frac = (
        sum(1 for x in converged if x.approx_type1) / len(converged)
        if converged
        else None
    )
    return ExperimentSummary(
        n=n,
        r=r,
        trials=trials,
        seed=config.seed,
        near_type2=near_type2,
        converged_count=len(converged),
        breakdown_count=breakdowns,
        type1_among_converged=type1_frac,
        convergence_rate=len(converged) / trials,
        residual_max=max((x.final_residual_norm for x in converged), default=None),
        residual_mean=(
            sum(x.final_residual_norm for x in converged) / len(converged)
            if converged
            else None
        ),
        commutator_max=max(
            (x.max_pairwise_commutator_norm for x in converged), default=None
        ),
        iterations_mean=(
            sum(x.iterations for x in converged) / len(converged) if converged else None
        ),
        records=records,
    )


def _json_float(x: float):
    return None if not np.isfinite(x) else float(x)
