"""Reference spectral laws and the statistics that compare empirical
spectra against them.

Laws on offer: the semicircle on [-1,1], the Marchenko-Pastur law
with ratio gamma in (0,1], and a centered Gaussian.  Moments are
exact rationals evaluated in floating point (Catalan numbers for the
semicircle, Narayana polynomials for Marchenko-Pastur, double
factorials for the Gaussian); distribution functions are closed-form
where one exists and a cached quadrature grid otherwise.

Empirical side: compensated spectral moments, a trace oracle that
checks them against powers of the matrix itself, Kolmogorov-Smirnov
distances, histograms with a conserved total count, and per-member
moment sweeps over ensembles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .ensembles import EnsembleSpec, SymCirculant, TriDiag, build, default_scale, spectrum_square
from .eigen import (
    Spectrum,
    circulant_eigenvalues,
    dense_sym_eigenvalues,
    jacobi_eigenvalues,
    tridiag_eigenvalues,
)
from .errors import CapabilityError, DomainError

CATALAN_MAX = 30
MOMENT_MAX = 12
TRACE_MAX_N = 512


@dataclass(frozen=True)
class RefLaw:
    """A reference distribution for spectra.

    kind "semicircle": support [-1,1], density (2/pi) sqrt(1-x^2).
    kind "marchenko_pastur": ratio gamma in (0,1], unit variance
    convention, support [(1-sqrt(gamma))^2, (1+sqrt(gamma))^2].
    kind "gaussian": centered, standard deviation sigma.
    """

    kind: str
    gamma: Optional[float] = None
    sigma: Optional[float] = None


def semicircle_law() -> RefLaw:
    return RefLaw(kind="semicircle")


def mp_law(gamma: float) -> RefLaw:
    if not 0.0 < gamma <= 1.0:
        raise DomainError("marchenko_pastur ratio must lie in (0, 1]")
    return RefLaw(kind="marchenko_pastur", gamma=float(gamma))


def gaussian_law(sigma: float) -> RefLaw:
    if sigma <= 0.0:
        raise DomainError("gaussian sigma must be positive")
    return RefLaw(kind="gaussian", sigma=float(sigma))


def catalan(r: int) -> int:
    if r < 0:
        raise DomainError("catalan index must be >= 0")
    if r > CATALAN_MAX:
        raise CapabilityError(f"catalan capped at r <= {CATALAN_MAX}")
    return math.comb(2 * r, r) // (r + 1)


def narayana(r: int, k: int) -> int:
    if r < 1 or not 1 <= k <= r:
        raise DomainError("narayana needs r >= 1 and 1 <= k <= r")
    return math.comb(r, k) * math.comb(r, k - 1) // r


def law_moment(law: RefLaw, r: int) -> float:
    """Exact r-th moment of the law, evaluated as a float."""
    if r < 0:
        raise DomainError("moment order must be >= 0")
    if r == 0:
        return 1.0
    if law.kind == "semicircle":
        if r % 2 == 1:
            return 0.0
        s = r // 2
        return catalan(s) / 4.0**s
    if law.kind == "marchenko_pastur":
        g = law.gamma
        return float(sum(narayana(r, k) * g ** (k - 1) for k in range(1, r + 1)))
    if law.kind == "gaussian":
        if r % 2 == 1:
            return 0.0
        # (r-1)!! * sigma^r
        return float(math.prod(range(r - 1, 0, -2))) * law.sigma**r
    raise DomainError(f"unknown law kind {law.kind!r}")


def _mp_support(gamma: float) -> tuple[float, float]:
    rg = math.sqrt(gamma)
    return (1.0 - rg) ** 2, (1.0 + rg) ** 2


def law_pdf(law: RefLaw, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if law.kind == "semicircle":
        inside = np.abs(x) < 1.0
        out = np.zeros_like(x)
        out[inside] = (2.0 / math.pi) * np.sqrt(1.0 - x[inside] ** 2)
        return out
    if law.kind == "marchenko_pastur":
        a, b = _mp_support(law.gamma)
        inside = (x > a) & (x < b) & (x > 0.0)
        out = np.zeros_like(x)
        xi = x[inside]
        out[inside] = np.sqrt((b - xi) * (xi - a)) / (2.0 * math.pi * law.gamma * xi)
        return out
    if law.kind == "gaussian":
        s = law.sigma
        return np.exp(-(x**2) / (2.0 * s * s)) / (s * math.sqrt(2.0 * math.pi))
    raise DomainError(f"unknown law kind {law.kind!r}")


@lru_cache(maxsize=8)
def _mp_cdf_table(gamma: float):
    # Cumulative trapezoid on the angular substitution
    # x(theta) = midpoint + halfwidth * sin(theta), which absorbs the
    # square-root edge behavior and leaves a smooth integrand.
    a, b = _mp_support(gamma)
    K = 1 << 16
    theta = np.linspace(-math.pi / 2.0, math.pi / 2.0, K + 1)
    x = (a + b) / 2.0 + (b - a) / 2.0 * np.sin(theta)
    jac = (b - a) / 2.0 * np.cos(theta)
    y = np.sqrt(np.maximum((b - x) * (x - a), 0.0)) / (2.0 * math.pi * gamma * x)
    g = y * jac
    step = math.pi / K
    cum = np.concatenate([[0.0], np.cumsum((g[1:] + g[:-1]) * (step / 2.0))])
    cum /= cum[-1]  # pin cdf(b) = 1 against quadrature drift
    return theta, cum, a, b


def law_cdf(law: RefLaw, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if law.kind == "semicircle":
        xc = np.clip(x, -1.0, 1.0)
        return 0.5 + (xc * np.sqrt(1.0 - xc**2) + np.arcsin(xc)) / math.pi
    if law.kind == "marchenko_pastur":
        if law.gamma == 1.0:
            # substituting u = sqrt(x) turns the density into
            # sqrt(4 - u^2)/pi, which integrates in closed form
            u = np.sqrt(np.clip(x, 0.0, 4.0))
            return (u * np.sqrt(4.0 - u**2) / 2.0 + 2.0 * np.arcsin(u / 2.0)) / math.pi
        theta, cum, a, b = _mp_cdf_table(law.gamma)
        frac = np.clip((2.0 * x - a - b) / (b - a), -1.0, 1.0)
        return np.interp(np.arcsin(frac), theta, cum)
    if law.kind == "gaussian":
        denom = law.sigma * math.sqrt(2.0)
        return np.array([0.5 * (1.0 + math.erf(v / denom)) for v in np.atleast_1d(x)]).reshape(x.shape)
    raise DomainError(f"unknown law kind {law.kind!r}")


def empirical_moment(values: np.ndarray, r: int) -> float:
    """(1/n) sum of r-th powers, accumulated with compensated summation.

    Powers come from repeated multiplication, not pow(): each multiply
    is correctly rounded, so negating the spectrum negates odd powers
    exactly and sign-paired ensembles report odd means of exactly zero.
    """
    if r < 1:
        raise DomainError("moment order must be >= 1")
    if r > MOMENT_MAX:
        raise CapabilityError(f"empirical moments capped at r <= {MOMENT_MAX}")
    v = np.asarray(values, dtype=np.float64)
    p = v.copy()
    for _ in range(r - 1):
        p *= v
    return math.fsum(p.tolist()) / len(v)


def trace_moment_oracle(m, r: int) -> float:
    """(1/n) trace(M^r) by repeated multiplication: an eigenvalue-free
    check on empirical_moment."""
    if r < 1:
        raise DomainError("moment order must be >= 1")
    if r > MOMENT_MAX:
        raise CapabilityError(f"trace oracle capped at r <= {MOMENT_MAX}")
    M = m if isinstance(m, np.ndarray) else m.full()
    n = M.shape[0]
    if n > TRACE_MAX_N:
        raise CapabilityError(f"trace oracle capped at n <= {TRACE_MAX_N}")
    P = M.copy()
    for _ in range(r - 1):
        P = P @ M
    return float(np.trace(P)) / n


def ks_distance(values: np.ndarray, law: RefLaw) -> float:
    """Kolmogorov-Smirnov distance between the empirical distribution
    of the values and the law."""
    v = np.sort(np.asarray(values, dtype=np.float64))
    n = len(v)
    if n == 0:
        raise DomainError("need at least one value")
    F = law_cdf(law, v)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


@dataclass
class HistogramResult:
    bin_edges: np.ndarray  # length bins+1
    counts: np.ndarray  # integer, sums to the sample count
    density: np.ndarray  # counts / (total * width)


def make_histogram(values: np.ndarray, bins: int, range: Optional[tuple[float, float]] = None) -> HistogramResult:
    """Equal-width histogram.  The counts always sum to len(values):
    an explicit range that fails to cover the data is an error, not a
    silent truncation."""
    v = np.asarray(values, dtype=np.float64)
    if bins < 1:
        raise DomainError("bins must be >= 1")
    if len(v) == 0:
        raise DomainError("need at least one value")
    if range is not None:
        lo, hi = range
        if not (lo < hi):
            raise DomainError("histogram range must satisfy lo < hi")
        if v.min() < lo or v.max() > hi:
            raise DomainError(
                f"range [{lo}, {hi}] does not cover data "
                f"[{v.min()}, {v.max()}]"
            )
    else:
        lo, hi = float(v.min()), float(v.max())
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
    counts, edges = np.histogram(v, bins=bins, range=(lo, hi))
    assert int(counts.sum()) == len(v)
    width = edges[1] - edges[0]
    return HistogramResult(bin_edges=edges, counts=counts, density=counts / (len(v) * width))


def spectrum_of(obj, solver: str = "auto") -> Spectrum:
    """Spectrum of a matrix or of the realization an EnsembleSpec
    describes, routed to the appropriate solver.

    solver "auto" picks by structure: cosine sums for circulants, QL
    for tridiagonals, Householder+QL for dense.  Explicit "cosine",
    "fft", "dense", or "jacobi" force a route (structure permitting);
    cross-validation runs the same matrix through several.
    """
    spec = obj if isinstance(obj, EnsembleSpec) else None
    mat = build(spec) if spec is not None else obj
    squared = spec is not None and spec.family == "squared_pseudo"
    tri_scale = 1.0
    if isinstance(mat, TriDiag) and spec is not None and spec.family == "tridiag_hermite":
        tri_scale = default_scale(mat.n)  # this family normalizes at spectrum time

    if solver == "auto":
        if isinstance(mat, SymCirculant):
            sp = circulant_eigenvalues(mat)
        elif isinstance(mat, TriDiag):
            sp = tridiag_eigenvalues(mat, scale=tri_scale)
        else:
            sp = dense_sym_eigenvalues(mat)
    elif solver in ("cosine", "fft"):
        if not isinstance(mat, SymCirculant):
            raise DomainError(f"solver {solver!r} requires a circulant matrix")
        sp = circulant_eigenvalues(mat, backend=solver)
    elif solver == "dense":
        sp = dense_sym_eigenvalues(mat)
    elif solver == "jacobi":
        sp = jacobi_eigenvalues(mat)
    else:
        raise DomainError(f"unknown solver {solver!r}")
    return spectrum_square(sp) if squared else sp


@dataclass
class MomentReport:
    orders: tuple[int, ...]
    per_member: np.ndarray  # shape (members, orders)
    mean: np.ndarray
    std: np.ndarray  # ddof=1; zero when a single member
    law: Optional[RefLaw]
    reference: Optional[np.ndarray]
    delta: Optional[np.ndarray]  # mean - reference


def ensemble_stats(
    specs: list[EnsembleSpec],
    orders: list[int],
    law: Optional[RefLaw] = None,
    solver: str = "auto",
) -> MomentReport:
    """Per-member spectral moments across an ensemble, with mean and
    sample standard deviation per order, and deltas against a
    reference law when one is given.

    Means are compensated column sums, so ensembles that pair every
    member with its negation report odd-moment means of exactly zero.
    """
    if not specs:
        raise DomainError("need at least one ensemble member")
    orders_t = tuple(orders)
    per = np.empty((len(specs), len(orders_t)))
    for i, spec in enumerate(specs):
        sp = spectrum_of(spec, solver=solver)
        for j, r in enumerate(orders_t):
            per[i, j] = empirical_moment(sp.values, r)
    mean = np.array([math.fsum(per[:, j].tolist()) / len(specs) for j in range(len(orders_t))])
    if len(specs) > 1:
        std = per.std(axis=0, ddof=1)
    else:
        std = np.zeros(len(orders_t))
    reference = delta = None
    if law is not None:
        reference = np.array([law_moment(law, r) for r in orders_t])
        delta = mean - reference
    return MomentReport(
        orders=orders_t,
        per_member=per,
        mean=mean,
        std=std,
        law=law,
        reference=reference,
        delta=delta,
    )


def support_divergence(values: np.ndarray, law: RefLaw) -> bool:
    """True when the sample escapes a doubled version of the law's
    support: the scaled spectrum has not merely fluctuated past the
    edge but lives somewhere else entirely.  Unbounded laws never
    flag."""
    v = np.asarray(values, dtype=np.float64)
    if law.kind == "semicircle":
        return bool(np.max(np.abs(v)) > 2.0)
    if law.kind == "marchenko_pastur":
        _, b = _mp_support(law.gamma)
        return bool(np.max(v) > 2.0 * b or np.min(v) < -0.5 * b)
    return False


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = np.log(np.asarray(xs, dtype=np.float64))
    ly = np.log(np.asarray(ys, dtype=np.float64))
    if len(lx) < 2:
        raise DomainError("need at least two points for a slope")
    lx = lx - lx.mean()
    return float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx))
