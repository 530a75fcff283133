"""Seeded Monte Carlo experiments and exact formulas for asymptotic densities.

Every experiment splits its samples into fixed-size shards.  Shard ``k`` of a
run with seed ``s`` draws from its own stream derived from ``(s, k)``, and
shard totals are combined in shard order, so the result depends only on the
parameters and the seed and never on how many workers ran the shards.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Any, Callable

import numpy as np

from .conjugacy import Conjugate, certify_distinct, membership
from .homomorphism import (
    FreeHomomorphism,
    TwistedPair,
    format_hom,
    parse_hom,
    sample_hom,
)
from .remnant import remnant_length, remnant_report
from .words import sample_word

__all__ = [
    "SHARD_SIZE",
    "ExperimentResult",
    "ZetaValue",
    "zeta",
    "shard_random",
    "shard_generator",
    "coprime_density_experiment",
    "expected_gcd_reciprocal_experiment",
    "remnant_density_experiment",
    "image_density_bound",
    "image_density_experiment",
    "certificate_rate_experiment",
    "rank1_rank1_expected_density",
    "rank1_rank1_first_increase",
    "rank1_expected_density_experiment",
]

SHARD_SIZE = 10_000


@dataclass
class ExperimentResult:
    experiment: str
    estimate: float
    samples: int
    std_error: float
    reference: float | None
    parameters: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    elapsed_ms: float | None = None

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "parameters": dict(self.parameters),
            "seed": self.seed,
            "samples": self.samples,
            "estimate": self.estimate,
            "std_error": self.std_error,
            "reference": self.reference,
            "elapsed_ms": self.elapsed_ms if timing else None,
        }


@dataclass(frozen=True)
class ZetaValue:
    s: int
    value: float
    error_bound: float


def zeta(s: int, tol: float = 1e-9) -> ZetaValue:
    """Riemann zeta at an integer ``s >= 2`` with an explicit error bound.

    The tail ``sum_{d > N} d^-s`` lies between the integrals of ``x^-s``
    over ``[N+1, inf)`` and ``[N, inf)``; the value uses the midpoint of that
    bracket and the error bound is half its width plus a rounding allowance.
    """
    if not isinstance(s, int) or s < 2:
        raise ValueError(f"zeta needs an integer s >= 2, got {s!r}")

    def half_width(N: int) -> float:
        return (N ** (1 - s) - (N + 1) ** (1 - s)) / (2 * (s - 1))

    N = 16
    while half_width(N) > tol / 2:
        N *= 2
    partial_sum = math.fsum(d ** -float(s) for d in range(N, 0, -1))
    upper = N ** (1 - s) / (s - 1)
    lower = (N + 1) ** (1 - s) / (s - 1)
    rounding = 4 * N * math.ulp(partial_sum)
    return ZetaValue(s, partial_sum + (upper + lower) / 2, half_width(N) + rounding)


def shard_random(seed: int, shard: int) -> random.Random:
    state = np.random.SeedSequence(seed, spawn_key=(shard,)).generate_state(4)
    return random.Random(int.from_bytes(state.tobytes(), "little"))


def shard_generator(seed: int, shard: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(shard,)))


def _run_shards(
    work: Callable[[int, int, int], tuple[float, float]],
    samples: int,
    seed: int,
    workers: int,
) -> tuple[float, float]:
    """Sum ``(total, total_of_squares)`` over shards of ``work(seed, shard, size)``."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    sizes = [SHARD_SIZE] * (samples // SHARD_SIZE)
    if samples % SHARD_SIZE:
        sizes.append(samples % SHARD_SIZE)
    jobs = [(seed, k, size) for k, size in enumerate(sizes)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, *zip(*jobs)))
    else:
        parts = [work(*job) for job in jobs]
    return math.fsum(p[0] for p in parts), math.fsum(p[1] for p in parts)


def _proportion(hits: float, samples: int) -> tuple[float, float]:
    est = hits / samples
    return est, math.sqrt(est * (1 - est) / samples)


def _mean(total: float, squares: float, samples: int) -> tuple[float, float]:
    mean = total / samples
    if samples < 2:
        return mean, 0.0
    var = max(squares - samples * mean * mean, 0.0) / (samples - 1)
    return mean, math.sqrt(var / samples)


def _integer_tuples(seed: int, shard: int, size: int, n: int, p: int) -> np.ndarray:
    return shard_generator(seed, shard).integers(-p, p + 1, size=(size, n), dtype=np.int64)


def _coprime_shard(seed: int, shard: int, size: int, *, n: int, p: int) -> tuple[float, float]:
    g = np.gcd.reduce(_integer_tuples(seed, shard, size, n, p), axis=1)
    hits = float(np.count_nonzero(g == 1))
    return hits, hits


def _gcd_reciprocal_shard(seed: int, shard: int, size: int, *, n: int, p: int) -> tuple[float, float]:
    g = np.gcd.reduce(_integer_tuples(seed, shard, size, n, p), axis=1).astype(np.float64)
    # the zero tuple gives the trivial map, whose image has density 0
    recip = np.divide(1.0, g, out=np.zeros_like(g), where=g > 0)
    return math.fsum(recip), math.fsum(recip * recip)


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.elapsed_ms = (time.perf_counter() - start) * 1000.0
        return result

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


@_timed
def coprime_density_experiment(
    n: int, p: int, samples: int, seed: int, workers: int = 1
) -> ExperimentResult:
    """Fraction of integer n-tuples from ``[-p, p]^n`` with gcd 1 (surjections onto Z)."""
    if n < 2 or p < 1:
        raise ValueError("need n >= 2 and p >= 1")
    hits, _ = _run_shards(partial(_coprime_shard, n=n, p=p), samples, seed, workers)
    est, se = _proportion(hits, samples)
    return ExperimentResult(
        "coprime", est, samples, se, 1.0 / zeta(n).value, {"n": n, "p": p}, seed
    )


@_timed
def expected_gcd_reciprocal_experiment(
    n: int, p: int, samples: int, seed: int, workers: int = 1
) -> ExperimentResult:
    """Mean of ``1/gcd`` over n-tuples in ``[-p, p]^n``: the image density of a map onto Z."""
    if n < 2 or p < 1:
        raise ValueError("need n >= 2 and p >= 1")
    total, squares = _run_shards(
        partial(_gcd_reciprocal_shard, n=n, p=p), samples, seed, workers
    )
    mean, se = _mean(total, squares, samples)
    return ExperimentResult(
        "gcd-mean", mean, samples, se, zeta(n + 1).value / zeta(n).value,
        {"n": n, "p": p}, seed,
    )


def _remnant_shard(
    seed: int, shard: int, size: int, *, n: int, m: int, l: int, p: int
) -> tuple[float, float]:
    rng = shard_random(seed, shard)
    hits = 0
    for _ in range(size):
        rl = remnant_report(sample_hom(n, m, p, rng).images).remnant_length
        if rl is not None and rl >= l:
            hits += 1
    return float(hits), float(hits)


@_timed
def remnant_density_experiment(
    n: int, m: int, l: int, p: int, samples: int, seed: int, workers: int = 1
) -> ExperimentResult:
    """Fraction of random maps ``F_n -> F_m`` (images in the p-ball) with remnant length >= l.

    With ``l = 1`` this is also the rate at which injectivity is certified.
    """
    if m < 2:
        raise ValueError("remnant genericity needs codomain rank m >= 2")
    if n < 1 or l < 1 or p < 0:
        raise ValueError("need n >= 1, l >= 1, p >= 0")
    hits, _ = _run_shards(
        partial(_remnant_shard, n=n, m=m, l=l, p=p), samples, seed, workers
    )
    est, se = _proportion(hits, samples)
    return ExperimentResult(
        "remnant-density", est, samples, se, 1.0,
        {"n": n, "m": m, "l": l, "p": p}, seed,
    )


def image_density_bound(n: int, l: int) -> float:
    """Upper bound ``16n(2n-1)^-ceil(l/2)`` on the density of a map's image.

    ``n`` is the codomain rank and ``l`` the remnant length (0 when there is
    no remnant, which makes the bound vacuous).
    """
    if n < 2 or l < 0:
        raise ValueError("need codomain rank n >= 2 and l >= 0")
    return 16 * n / (2 * n - 1) ** math.ceil(l / 2)


def _image_shard(seed: int, shard: int, size: int, *, images: str, m: int, p: int) -> tuple[float, float]:
    phi = parse_hom(images, m)
    rng = shard_random(seed, shard)
    hits = 0
    for _ in range(size):
        if isinstance(membership(phi, sample_word(m, p, rng)), Conjugate):
            hits += 1
    return float(hits), float(hits)


@_timed
def image_density_experiment(
    phi: FreeHomomorphism, p: int, samples: int, seed: int, workers: int = 1
) -> ExperimentResult:
    """Fraction of the p-ball of the codomain lying in ``phi(G)``, decided exactly."""
    rl = remnant_length(phi)
    if rl is None:
        raise ValueError("image density needs a homomorphism with remnant")
    m = phi.codomain_rank
    # the map travels as text so shards pickle cheaply
    hits, _ = _run_shards(
        partial(_image_shard, images=format_hom(phi), m=m, p=p), samples, seed, workers
    )
    est, se = _proportion(hits, samples)
    reference = image_density_bound(m, rl) if m >= 2 else None
    return ExperimentResult(
        "image-density", est, samples, se, reference,
        {"phi": format_hom(phi), "m": m, "l": rl, "p": p}, seed,
    )


def _certificate_shard(
    seed: int, shard: int, size: int, *, n: int, m: int, p: int, psi: str
) -> tuple[float, float]:
    psi_map = parse_hom(psi, m, n)
    rng = shard_random(seed, shard)
    hits = 0
    for _ in range(size):
        phi = sample_hom(n, m, p, rng)
        u, v = sample_word(m, p, rng), sample_word(m, p, rng)
        if certify_distinct(TwistedPair(phi, psi_map), u, v) is not None:
            hits += 1
    return float(hits), float(hits)


@_timed
def certificate_rate_experiment(
    n: int, m: int, p: int, psi: str, samples: int, seed: int, workers: int = 1
) -> ExperimentResult:
    """Rate at which random ``(phi, u, v)`` carry a distinctness certificate for a fixed psi.

    No reference value: genericity is asymptotic and comes without a rate.
    """
    if m < 2:
        raise ValueError("certificates need codomain rank m >= 2")
    hits, _ = _run_shards(
        partial(_certificate_shard, n=n, m=m, p=p, psi=psi), samples, seed, workers
    )
    est, se = _proportion(hits, samples)
    return ExperimentResult(
        "certificate-rate", est, samples, se, None,
        {"n": n, "m": m, "p": p, "psi": psi}, seed,
    )


def _harmonic_parts(p: int) -> tuple[int, int]:
    """``H_p`` as ``numerator / lcm(1..p)`` without any gcd reductions."""
    num, den = 0, 1
    for k in range(1, p + 1):
        g = math.gcd(den, k)
        if g != k:
            scale = k // g
            num *= scale
            den *= scale
        num += den // k
    return num, den


def rank1_rank1_expected_density(p: int) -> Fraction:
    """Exact average image density ``2 H_p / (2p + 1)`` of maps ``Z -> Z`` of degree in [-p, p]."""
    if p < 1:
        raise ValueError("p must be at least 1")
    num, den = _harmonic_parts(p)
    return Fraction(2 * num, den * (2 * p + 1))


def rank1_rank1_first_increase(p_lo: int, p_hi: int) -> int | None:
    """First ``p`` in ``[p_lo, p_hi)`` with ``f(p+1) >= f(p)``, or None if strictly decreasing.

    With ``D = lcm(1..p+1)`` and ``H_p = N/D``, ``f(p+1) < f(p)`` reduces to
    ``(2p+1) D/(p+1) < 2N``, which needs only big-by-small products.
    """
    if p_lo < 1 or p_hi <= p_lo:
        raise ValueError("need 1 <= p_lo < p_hi")
    num, den = _harmonic_parts(p_lo)
    for p in range(p_lo, p_hi):
        k = p + 1
        g = math.gcd(den, k)
        if g != k:
            scale = k // g
            num *= scale
            den *= scale
        if (2 * p + 1) * (den // k) >= 2 * num:
            return p
        num += den // k
    return None


def _rank1_shard(seed: int, shard: int, size: int, *, p: int) -> tuple[float, float]:
    k = np.abs(shard_generator(seed, shard).integers(-p, p + 1, size=size, dtype=np.int64))
    d = np.divide(1.0, k, out=np.zeros(size), where=k > 0)
    return math.fsum(d), math.fsum(d * d)


@_timed
def rank1_expected_density_experiment(
    p: int, samples: int, seed: int, workers: int = 1
) -> ExperimentResult:
    """Sampled mean of ``D(kZ) = 1/|k|`` for k uniform in [-p, p], against the exact average."""
    if p < 1:
        raise ValueError("p must be at least 1")
    exact = rank1_rank1_expected_density(p)
    total, squares = _run_shards(partial(_rank1_shard, p=p), samples, seed, workers)
    mean, se = _mean(total, squares, samples)
    params: dict[str, Any] = {"p": p}
    if p <= 50:
        params["exact"] = f"{exact.numerator}/{exact.denominator}"
    return ExperimentResult("rank1-expected", mean, samples, se, float(exact), params, seed)
