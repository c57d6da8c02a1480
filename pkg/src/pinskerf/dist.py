"""Finite discrete distributions and the total variation distance."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

SUM_TOL = 1e-12
MAX_SPREAD_ATOMS = 20

#: Extended nonnegative reals are plain floats; ``math.inf`` stands for +inf.
ExtReal = float


class DimensionError(ValueError):
    """Two distributions do not live on the same atom set."""


class CapacityError(ValueError):
    """Exact subset enumeration was requested for too many atoms."""


@dataclass(frozen=True)
class Distribution:
    """Probability mass on ``len(weights)`` index-aligned atoms."""

    weights: np.ndarray
    labels: Optional[tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64).ravel()
        if w.size == 0:
            raise ValueError("a distribution needs at least one atom")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("weights must be finite and nonnegative")
        total = w.sum()
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"weights sum to {float(total)!r}, not 1 (tol {SUM_TOL})")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != w.size:
                raise ValueError("labels and weights differ in length")
            object.__setattr__(self, "labels", labels)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def normalized(cls, weights: Sequence[float], labels=None) -> "Distribution":
        """Rescale nonnegative ``weights`` to sum to one."""
        w = np.asarray(weights, dtype=np.float64)
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        total = w.sum()
        if not total > 0:
            raise ValueError("weights have zero total mass")
        return cls(w / total, labels)

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        """Parse inline syntax such as ``"0.5,0.3,0.2"`` (fractions allowed)."""
        from fractions import Fraction

        parts = [s.strip() for s in text.split(",") if s.strip()]
        if not parts:
            raise ValueError("empty distribution")
        return cls(np.array([float(Fraction(s)) for s in parts]))

    @classmethod
    def from_csv(cls, path) -> "Distribution":
        """Read one weight per line; blank lines and ``#`` comments are skipped."""
        from fractions import Fraction

        weights = []
        for line in Path(path).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                weights.append(float(Fraction(line.split(",")[0].strip())))
        return cls(np.array(weights))

    def __len__(self) -> int:
        return self.weights.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.weights, other.weights)

    def __hash__(self) -> int:
        return hash((self.weights.tobytes(), self.labels))

    def __repr__(self) -> str:
        return f"Distribution({self.weights.tolist()!r})"


def _check_aligned(P: Distribution, Q: Distribution) -> None:
    if len(P) != len(Q):
        raise DimensionError(f"atom counts differ: {len(P)} vs {len(Q)}")


def variational_distance(P: Distribution, Q: Distribution) -> float:
    """V(P, Q) = sum |q_i - p_i|, in [0, 2]."""
    _check_aligned(P, Q)
    return float(np.abs(Q.weights - P.weights).sum())


def max_partition_spread(P: Distribution) -> float:
    """sup over subsets A of P(A) (1 - P(A)), by exact enumeration.

    Only subsets containing the last atom are enumerated, since A and its
    complement give the same value.
    """
    n = len(P)
    if n > MAX_SPREAD_ATOMS:
        raise CapacityError(
            f"{n} atoms exceeds the enumeration cap of {MAX_SPREAD_ATOMS}; "
            "approximate spreads are not supported"
        )
    w = P.weights
    if n == 1:
        return 0.0
    # subset sums of the first n-1 atoms, built by doubling
    sums = np.zeros(1)
    for x in w[:-1]:
        sums = np.concatenate([sums, sums + x])
    mass = np.minimum(sums + w[-1], 1.0)
    return float(np.max(mass * (1.0 - mass)))


def max_partition_spread_bruteforce(P: Distribution) -> float:
    """Reference enumeration over all 2^n subsets (small n only)."""
    best = 0.0
    w = P.weights
    for r in range(len(w) + 1):
        for subset in itertools.combinations(range(len(w)), r):
            a = float(sum(w[i] for i in subset))
            best = max(best, a * (1 - a))
    return best


def mixture(P: Distribution, Q: Distribution, w: float) -> Distribution:
    """Atomwise w p + (1 - w) q."""
    _check_aligned(P, Q)
    if not 0.0 <= w <= 1.0 or math.isnan(w):
        raise ValueError(f"mixture weight {w!r} outside [0, 1]")
    # written as a correction to p so that mixing P with itself is exact
    m = P.weights + (1.0 - w) * (Q.weights - P.weights)
    return Distribution.normalized(m, P.labels)
