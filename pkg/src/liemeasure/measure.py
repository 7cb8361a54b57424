"""Discrete matrix-valued measures on the real line and their transforms.

A measure here is a finite list of atoms (location, weight) with strictly
increasing real locations and square complex matrix weights, all of one
dimension. Its bilateral Laplace transform is sum_k e^(t*lambda_k) * W_k,
an entire matrix-valued function of complex t; moments are the derivatives
of the transform at t = 0.
"""

import json
from dataclasses import dataclass

import numpy as np

from .linalg import batched_operator_norms, canonical_json

__all__ = [
    "DiscreteMatrixMeasure",
    "TraceMeasure",
    "laplace_transform",
    "total_variation",
    "support_interval",
    "moment",
    "trace_measure",
    "is_nonnegative_measure",
    "hermitian_deviation",
    "transform_distance",
    "measure_to_json",
    "measure_from_json",
    "read_measure",
    "write_measure",
    "write_trace_csv",
]

# exponent cap: e^x overflows float64 just above x = 709
_EXP_ARG_LIMIT = 700.0


@dataclass(frozen=True)
class DiscreteMatrixMeasure:
    """Atoms of a matrix-valued measure, sorted by location.

    locations: (K,) float array, strictly increasing
    weights:   (K, n, n) complex array, weights[k] sits at locations[k]
    N:         step count of the construction that produced the measure, if any
    source:    free-form provenance label ("dp", "bruteforce", ...)
    tuple_norm_sum: when built by exhaustive enumeration, the accumulated sum
        of the operator norms of the per-tuple products (an upper bound for
        the total variation)
    """

    locations: np.ndarray
    weights: np.ndarray
    N: int | None = None
    source: str | None = None
    tuple_norm_sum: float | None = None

    def __post_init__(self):
        locs = np.asarray(self.locations, dtype=float)
        w = np.asarray(self.weights, dtype=np.complex128)
        if locs.ndim != 1:
            raise ValueError("locations must be a 1-D array")
        if w.ndim != 3 or w.shape[1] != w.shape[2] or w.shape[1] < 1:
            raise ValueError(f"weights must be a (K, n, n) stack, got {w.shape}")
        if w.shape[0] != locs.size:
            raise ValueError("locations and weights disagree on the atom count")
        if not np.all(np.isfinite(locs)):
            raise ValueError("locations must be finite")
        if not (np.all(np.isfinite(w.real)) and np.all(np.isfinite(w.imag))):
            raise ValueError("weights must be finite")
        if np.any(np.diff(locs) <= 0):
            raise ValueError("locations must be strictly increasing")
        object.__setattr__(self, "locations", locs)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return int(self.locations.size)

    @property
    def dim(self) -> int:
        return int(self.weights.shape[1])

    @property
    def atoms(self) -> list[tuple[float, np.ndarray]]:
        return [(float(l), w) for l, w in zip(self.locations, self.weights)]


@dataclass(frozen=True)
class TraceMeasure:
    """Scalar measure obtained by tracing the weights of a matrix measure."""

    locations: np.ndarray
    weights: np.ndarray  # (K,) complex

    def __post_init__(self):
        locs = np.asarray(self.locations, dtype=float)
        w = np.asarray(self.weights, dtype=np.complex128)
        if locs.ndim != 1 or w.shape != locs.shape:
            raise ValueError("locations and weights must be 1-D of equal length")
        if not np.all(np.isfinite(locs)):
            raise ValueError("locations must be finite")
        if not (np.all(np.isfinite(w.real)) and np.all(np.isfinite(w.imag))):
            raise ValueError("weights must be finite")
        if np.any(np.diff(locs) <= 0):
            raise ValueError("locations must be strictly increasing")
        object.__setattr__(self, "locations", locs)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return int(self.locations.size)


def _check_transform_args(m: DiscreteMatrixMeasure, t) -> complex:
    t = complex(t)
    if m.locations.size:
        worst = float((t.real * m.locations).max())
        if worst > _EXP_ARG_LIMIT:
            raise OverflowError(
                f"Re(t)*lambda reaches {worst:.6g}, beyond the e^700 float range"
            )
    return t


def laplace_transform(m: DiscreteMatrixMeasure, t) -> np.ndarray:
    """sum_k e^(t*lambda_k) * W_k, atoms taken in ascending-location order."""
    t = _check_transform_args(m, t)
    coeff = np.exp(t * m.locations)
    return np.einsum("k,kij->ij", coeff, m.weights)


def moment(m: DiscreteMatrixMeasure, k: int) -> np.ndarray:
    """sum_k lambda_k^k * W_k; k = 0 gives the total mass."""
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError("moment order must be a non-negative integer")
    coeff = m.locations.astype(complex) ** k if k else np.ones(len(m), dtype=complex)
    return np.einsum("k,kij->ij", coeff, m.weights)


def total_variation(m: DiscreteMatrixMeasure) -> float:
    """Sum of the operator norms of the atom weights."""
    return float(batched_operator_norms(m.weights).sum())


def support_interval(m: DiscreteMatrixMeasure) -> tuple[float, float]:
    """(smallest location, largest location); error on an empty measure."""
    if not len(m):
        raise ValueError("empty measure has no support interval")
    return float(m.locations[0]), float(m.locations[-1])


def trace_measure(m: DiscreteMatrixMeasure) -> TraceMeasure:
    """Scalar measure with weights tr(W_k) at the same locations."""
    return TraceMeasure(
        m.locations.copy(), np.trace(m.weights, axis1=1, axis2=2)
    )


def is_nonnegative_measure(m: DiscreteMatrixMeasure, tol: float = 1e-9) -> bool:
    """True iff every atom weight is Hermitian positive semidefinite within tol."""
    for w in m.weights:
        scale = max(1.0, float(np.abs(w).max()) * m.dim)
        if float(np.linalg.norm(w - w.conj().T, 2)) > tol * scale:
            return False
        h = (w + w.conj().T) / 2.0
        if float(np.linalg.eigvalsh(h).min()) < -tol * scale:
            return False
    return True


def hermitian_deviation(m: DiscreteMatrixMeasure) -> float:
    """max over atoms of ||W_k - W_k*||; zero when every weight is Hermitian."""
    if not len(m):
        return 0.0
    defect = m.weights - np.conj(np.swapaxes(m.weights, 1, 2))
    return float(batched_operator_norms(defect).max())


def transform_distance(m1: DiscreteMatrixMeasure, m2: DiscreteMatrixMeasure, t_grid) -> float:
    """max over the grid of ||transform(m1, t) - transform(m2, t)||."""
    if m1.dim != m2.dim:
        raise ValueError("measures must share one matrix dimension")
    grid = [complex(t) for t in t_grid]
    if not grid:
        raise ValueError("t_grid must be non-empty")
    worst = 0.0
    for t in grid:
        d = laplace_transform(m1, t) - laplace_transform(m2, t)
        worst = max(worst, float(np.linalg.norm(d, 2)))
    return worst


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def measure_to_json(m: DiscreteMatrixMeasure) -> dict:
    """Schema: {"n": int, "N": int|null, "atoms": [{"lambda": float, "weight": {"re", "im"}}]}."""
    atoms = [
        {"lambda": float(l), "weight": {"re": w.real, "im": w.imag}}
        for l, w in zip(m.locations, m.weights)
    ]
    return {"n": m.dim, "N": None if m.N is None else int(m.N), "atoms": atoms}


def measure_from_json(obj) -> DiscreteMatrixMeasure:
    if not isinstance(obj, dict):
        raise ValueError("measure JSON: expected an object")
    for key in ("n", "atoms"):
        if key not in obj:
            raise ValueError(f'measure JSON: required key "{key}"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError('measure JSON: "n" must be a positive integer')
    nsteps = obj.get("N")
    if nsteps is not None and (not isinstance(nsteps, int) or isinstance(nsteps, bool) or nsteps < 1):
        raise ValueError('measure JSON: "N" must be a positive integer or null')
    raw = obj["atoms"]
    if not isinstance(raw, list):
        raise ValueError('measure JSON: "atoms" must be a list')
    locs = np.zeros(len(raw))
    weights = np.zeros((len(raw), n, n), dtype=np.complex128)
    for k, atom in enumerate(raw):
        if not isinstance(atom, dict) or "lambda" not in atom or "weight" not in atom:
            raise ValueError(f'measure JSON: atom {k} needs "lambda" and "weight"')
        try:
            locs[k] = float(atom["lambda"])
        except (TypeError, ValueError) as exc:
            raise ValueError(f"measure JSON: atom {k} has a bad location") from exc
        w = atom["weight"]
        if not isinstance(w, dict) or "re" not in w:
            raise ValueError(f'measure JSON: atom {k} weight needs "re"')
        try:
            re = np.asarray(w["re"], dtype=float)
            im_raw = w.get("im")
            im = np.zeros((n, n)) if im_raw is None else np.asarray(im_raw, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"measure JSON: atom {k} weight entries must be numbers") from exc
        if re.shape != (n, n) or im.shape != (n, n):
            raise ValueError(f"measure JSON: atom {k} weight must be {n}x{n}")
        weights[k] = re + 1j * im
    return DiscreteMatrixMeasure(locs, weights, N=nsteps, source="json")


def read_measure(path) -> DiscreteMatrixMeasure:
    with open(path, "r", encoding="ascii") as fh:
        obj = json.load(fh)
    return measure_from_json(obj)


def write_measure(path, m: DiscreteMatrixMeasure) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(canonical_json(measure_to_json(m)) + "\n")


def write_trace_csv(path, m) -> None:
    """Columns: lambda, weight_re, weight_im (17 significant digits).

    Accepts a TraceMeasure or a DiscreteMatrixMeasure (traced on the fly).
    """
    tm = trace_measure(m) if isinstance(m, DiscreteMatrixMeasure) else m
    lines = ["lambda,weight_re,weight_im"]
    for l, w in zip(tm.locations, tm.weights):
        lines.append(
            f"{float(l):.17g},{float(w.real):.17g},{float(w.imag):.17g}"
        )
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
