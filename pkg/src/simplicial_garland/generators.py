"""Deterministic complex generators."""

from __future__ import annotations

import random
from itertools import combinations

from .complex import SimplicialComplex, build_complex, full_simplex, simplex_boundary, skeleton_of_simplex

MODELS = ("simplex", "simplex-boundary", "skeleton", "random-pure")
MAX_RETRIES = 100


def random_pure(n: int, d: int, p: float, seed: int | None = None) -> SimplicialComplex:
    """Closure of a random set of ``d``-faces on ``{0..n-1}``.

    Each ``(d+1)``-subset is kept independently with probability ``p``.
    Resamples up to ``MAX_RETRIES`` times if nothing was kept.
    """
    if not 0 <= d < n:
        raise ValueError(f"need 0 <= d < n, got n={n}, d={d}")
    if not 0 < p <= 1:
        raise ValueError(f"need 0 < p <= 1, got p={p}")
    rng = random.Random(seed)
    candidates = list(combinations(range(n), d + 1))
    for _ in range(MAX_RETRIES):
        chosen = [c for c in candidates if rng.random() < p]
        if chosen:
            return build_complex(chosen)
    raise RuntimeError(f"no face selected after {MAX_RETRIES} attempts")


def generate(model: str, n: int | None = None, d: int | None = None,
             p: float | None = None, seed: int | None = None) -> SimplicialComplex:
    if model == "simplex":
        return full_simplex(_need(n, "n", 1))
    if model == "simplex-boundary":
        return simplex_boundary(_need(n, "n", 2))
    if model == "skeleton":
        return skeleton_of_simplex(_need(n, "n", 1), _need(d, "d", 0))
    if model == "random-pure":
        if p is None:
            raise ValueError("random-pure needs p")
        return random_pure(_need(n, "n", 1), _need(d, "d", 0), p, seed)
    raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")


def _need(value, name: str, lo: int) -> int:
    if value is None:
        raise ValueError(f"parameter {name} is required")
    if value < lo:
        raise ValueError(f"parameter {name} must be >= {lo}, got {value}")
    return int(value)


def corpus(count: int = 100, seed: int = 0) -> list[SimplicialComplex]:
    """Seeded random pure complexes with ``n <= 8`` and ``d <= 3``."""
    out = []
    for i in range(count):
        n = 4 + i % 5
        d = 1 + (i // 5) % 3
        out.append(random_pure(n, d, 0.5, seed=seed * 100003 + i))
    return out
