"""Entrywise domination (subordination) calculus and the norm bounds built on it.

M is subordinate to S when |m_pq| <= s_pq for every entry, S having real
non-negative entries. Subordination survives sums, products and the entrywise
exponential, which is what turns the constant-entry majorant of a matrix into
a total-variation bound for the measures built in the approximant module.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    ResourceLimitError,
    as_matrix,
    batched_operator_norms,
    matrix_exp,
    operator_norm,
    tuple_factor_products,
)

__all__ = [
    "SubordinationWitness",
    "is_subordinate",
    "norm_majorant",
    "rank_one_exp",
    "check_exp_monotone",
    "inverse_triangle_sum",
    "partition_product_bound",
    "total_variation_bound",
]


@dataclass(frozen=True)
class SubordinationWitness:
    """Outcome of an entrywise |m_pq| <= s_pq check.

    slack is min over entries of s_pq - |m_pq|; worst_pair is an index pair
    attaining it. holds allows slack down to -1e-12*max(1, ||s||) so that
    mathematically tight inequalities survive rounding.
    """

    holds: bool
    worst_pair: tuple[int, int]
    slack: float


def _require_entrywise_nonneg(m, name: str) -> np.ndarray:
    a = as_matrix(m, name)
    if np.any(a.imag != 0) or np.any(a.real < 0):
        raise ValueError(f"{name}: entries must be real and non-negative")
    return a.real


def is_subordinate(m, s) -> SubordinationWitness:
    """Witness for |m_pq| <= s_pq; s must have real non-negative entries."""
    a = as_matrix(m, "m")
    b = _require_entrywise_nonneg(s, "s")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    diff = b - np.abs(a)
    flat = int(np.argmin(diff))
    n = a.shape[0]
    slack = float(diff.flat[flat])
    tol = 1e-12 * max(1.0, float(np.linalg.norm(b, 2)))
    return SubordinationWitness(slack >= -tol, (flat // n, flat % n), slack)


def norm_majorant(b) -> np.ndarray:
    """Constant-entry majorant: every entry equals ||b||.

    Any matrix is subordinate to its majorant, and the majorant has operator
    norm n*||b|| and entrywise-exponential norm e^(n*||b||).
    """
    a = as_matrix(b, "b")
    return np.full(a.shape, operator_norm(a))


def rank_one_exp(r) -> np.ndarray:
    """Exponential of a constant-entry matrix, in closed form.

    For r with every entry equal to c >= 0 (a rank-one matrix when c > 0),
    e^r = I + ((e^(n*c) - 1)/(n*c)) * r; for c = 0 this is the identity.
    """
    a = as_matrix(r, "r")
    if np.any(a.imag != 0):
        raise ValueError("r: entries must be real")
    re = a.real
    c = float(re.flat[0])
    if np.abs(re - c).max() > 1e-12 * max(1.0, abs(c)):
        raise ValueError("r: entries must all be equal")
    if c < 0:
        raise ValueError("r: the common entry must be non-negative")
    n = a.shape[0]
    out = np.eye(n)
    if c > 0:
        out = out + (math.expm1(n * c) / (n * c)) * re
    return out


def check_exp_monotone(x, y) -> SubordinationWitness:
    """Witness that y subordinate to x (x entrywise non-negative) gives e^y subordinate to e^x.

    Both exponentials go through the same algorithm; the witness tolerance
    absorbs the per-matrix parameter choices it makes internally.
    """
    xr = _require_entrywise_nonneg(x, "x")
    pre = is_subordinate(y, xr)
    if not pre.holds:
        raise ValueError(
            f"y is not subordinate to x (slack {pre.slack:.3e} at {pre.worst_pair})"
        )
    ey = matrix_exp(y)
    ex = matrix_exp(xr)
    # e^x of an entrywise non-negative real matrix is entrywise non-negative;
    # the imaginary part is exactly zero through the complex arithmetic.
    return is_subordinate(ey, np.maximum(ex.real, 0.0))


def inverse_triangle_sum(parts) -> tuple[float, float]:
    """(sum of norms, n * norm of sum) for entrywise non-negative parts.

    For such parts the sum of operator norms is bounded by n times the norm
    of the sum, the reverse of the triangle inequality up to the factor n.
    """
    mats = [_require_entrywise_nonneg(p, f"parts[{i}]") for i, p in enumerate(parts)]
    if not mats:
        raise ValueError("parts must be non-empty")
    n = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape != (n, n):
            raise ValueError(f"parts[{i}]: dimension mismatch")
    total = np.add.reduce(np.stack(mats), axis=0)
    lhs = float(sum(np.linalg.norm(m, 2) for m in mats))
    rhs = float(n * np.linalg.norm(total, 2))
    return lhs, rhs


def partition_product_bound(projectors, r, count: int, guard: int = 10**6):
    """Sum of norms of all length-count products F_k1 e^(r/count) ... F_kcount e^(r/count).

    The F_j must be entrywise non-negative with sum_j F_j = I (within 1e-10)
    and r entrywise non-negative. Returns (sum_of_norms, n*||e^r||); the first
    never exceeds the second. The unnormed products themselves sum to e^r
    exactly, which is how the bound telescopes.
    """
    mats = [
        _require_entrywise_nonneg(p, f"projectors[{i}]")
        for i, p in enumerate(projectors)
    ]
    if not mats:
        raise ValueError("projectors must be non-empty")
    n = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape != (n, n):
            raise ValueError(f"projectors[{i}]: dimension mismatch")
    rr = _require_entrywise_nonneg(r, "r")
    if rr.shape != (n, n):
        raise ValueError("r: dimension mismatch with projectors")
    if not isinstance(count, (int, np.integer)) or count < 1:
        raise ValueError("count must be a positive integer")
    ident_defect = np.abs(np.add.reduce(np.stack(mats), axis=0) - np.eye(n)).max()
    if ident_defect > 1e-10:
        raise ValueError(
            f"projectors must sum to the identity (defect {ident_defect:.3e})"
        )
    l = len(mats)
    if l**count > guard:
        raise ResourceLimitError(
            f"partition product enumeration needs {l**count} tuples, guard is {guard}"
        )
    step = matrix_exp(rr / count)
    factors = np.matmul(np.stack(mats).astype(np.complex128), step)
    _, prods = tuple_factor_products(factors, count, guard)
    sum_norms = float(batched_operator_norms(prods).sum())
    bound = float(n * operator_norm(matrix_exp(rr)))
    return sum_norms, bound


def total_variation_bound(n: int, b) -> float:
    """n * e^(n*||b||), the a-priori total-variation bound for any step count."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("n must be a positive integer")
    return float(n * math.exp(n * operator_norm(b)))
