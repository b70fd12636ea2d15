"""Matrix families built from shift-register sequences and their
random counterparts.

The central construction is a symmetric circulant sign matrix whose
first row is read off a maximal-length sequence s at a chosen shift:
entry (i,j) = sign * (1/(2*sqrt(n))) * (-1)^(s(i-j+a) + s(j-i+a)).
The full ensemble takes every shift a and both signs, 2n members in
all.  Alongside it live the families used as comparison points: a
one-sided Toeplitz variant of the same sequence, true random sign
matrices, random symmetric circulants, lifted Paley-graph adjacency
matrices, and tridiagonal Gaussian-ensemble reductions.

Matrices carry their entries verbatim; reproducibility of the sampled
families comes from EnsembleSpec, which pins the family, parameters,
and RNG substream (master seed plus member index) of one realization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import DomainError
from .gf2 import is_prime_u64, parse_poly
from .sequences import MSeq, msequence, shifted


@dataclass
class SymCirculant:
    """Symmetric circulant sign matrix: entry (i,j) = scale * first_row[(j-i) mod n].

    Symmetry forces the first row to be palindromic apart from index 0:
    first_row[j] = first_row[n-j] for 1 <= j <= n-1.
    """

    first_row: np.ndarray  # n values in {+1.0, -1.0}
    scale: float
    n: int

    def is_palindromic(self) -> bool:
        return bool(np.array_equal(self.first_row[1:], self.first_row[:0:-1]))

    def full(self) -> np.ndarray:
        idx = np.arange(self.n)
        return self.scale * self.first_row[(idx[None, :] - idx[:, None]) % self.n]


@dataclass
class DenseSym:
    """Real symmetric matrix held as the packed lower triangle,
    row-major: packed[i*(i+1)/2 + j] = entry (i,j) for j <= i."""

    n: int
    packed: np.ndarray

    @classmethod
    def from_full(cls, M: np.ndarray) -> "DenseSym":
        n = M.shape[0]
        return cls(n=n, packed=M[np.tril_indices(n)].copy())

    def full(self) -> np.ndarray:
        n = self.n
        out = np.zeros((n, n))
        il = np.tril_indices(n)
        out[il] = self.packed
        out = out + out.T
        out[np.diag_indices(n)] /= 2.0
        return out


@dataclass
class TriDiag:
    """Symmetric tridiagonal matrix: main diagonal plus one subdiagonal."""

    diag: np.ndarray
    subdiag: np.ndarray

    @property
    def n(self) -> int:
        return len(self.diag)

    def full(self) -> np.ndarray:
        return (
            np.diag(self.diag)
            + np.diag(self.subdiag, 1)
            + np.diag(self.subdiag, -1)
        )


FAMILIES = (
    "pseudo",
    "squared_pseudo",
    "one_sided",
    "wigner",
    "random_circulant",
    "paley",
    "tridiag_hermite",
)

TRIDIAG_VARIANTS = ("standard", "iid-chisq")


@dataclass(frozen=True)
class EnsembleSpec:
    """Everything needed to rebuild one matrix realization.

    Sampled families draw from the substream keyed (rng_seed, member),
    so parallel and serial sweeps see identical matrices.
    """

    family: str
    poly: Optional[str] = None
    seed: Optional[tuple[int, ...]] = None
    shift: Optional[int] = None
    sign: Optional[int] = None
    n: Optional[int] = None
    q: Optional[int] = None
    rng_seed: Optional[int] = None
    member: int = 0
    variant: Optional[str] = None
    scale: Optional[float] = None

    def to_json(self) -> str:
        record = {k: v for k, v in self.__dict__.items() if v is not None}
        if "seed" in record:
            record["seed"] = list(record["seed"])
        return json.dumps(record, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "EnsembleSpec":
        record = json.loads(text)
        if "seed" in record:
            record["seed"] = tuple(record["seed"])
        return cls(**record)


def member_rng(master_seed: int, member: int) -> np.random.Generator:
    """The documented substream contract: member k of a sweep draws
    from SeedSequence(master_seed, spawn_key=(k,))."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(member,)))


@lru_cache(maxsize=64)
def _cached_msequence(poly: str, seed: tuple[int, ...]) -> MSeq:
    return msequence(parse_poly(poly), seed)


def default_scale(n: int) -> float:
    return 1.0 / (2.0 * math.sqrt(n))


def build_pseudo(s: MSeq, a: int, sign: int = 1) -> SymCirculant:
    """The circulant member at shift a:
    entry (i,j) = sign * (1/(2*sqrt(n))) * (-1)^(s(i-j+a) + s(j-i+a)).

    The diagonal is constant sign/(2*sqrt(n)) and the first row is
    palindromic, so the matrix is symmetric as well as circulant.
    """
    n = s.n
    if not 0 <= a < n:
        raise DomainError(f"shift must lie in 0..{n - 1}")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    bits = np.asarray(s.bits, dtype=np.int64)
    d = np.arange(n)
    exponent = bits[(a + d) % n] ^ bits[(a - d) % n]
    row = sign * (1.0 - 2.0 * exponent)
    return SymCirculant(first_row=row, scale=default_scale(n), n=n)


def pseudo_ensemble(s: MSeq) -> list[EnsembleSpec]:
    """All 2n members: every shift a in 0..n-1, then their negatives."""
    base = dict(family="pseudo", poly=str(s.generator), seed=s.seed)
    return [
        EnsembleSpec(shift=a, sign=sign, **base)
        for sign in (1, -1)
        for a in range(s.n)
    ]


def build_one_sided(s: MSeq) -> DenseSym:
    """The one-sided Toeplitz variant:
    entry (i,j) = (1/(2*sqrt(n))) * (-1)^(s(|i-j|)).

    |i-j| is not a cyclic difference, so this matrix is symmetric but
    not circulant; it is stored dense.  Its spectrum leaves the [-1,1]
    support and is the library's non-semicircular contrast case.
    """
    n = s.n
    z = default_scale(n) * (1.0 - 2.0 * np.asarray(s.bits, dtype=np.float64))
    packed = np.empty(n * (n + 1) // 2)
    offset = 0
    for i in range(n):
        packed[offset : offset + i + 1] = z[i::-1]  # z[i-j] for j = 0..i
        offset += i + 1
    return DenseSym(n=n, packed=packed)


def sample_wigner(n: int, rng_seed) -> DenseSym:
    """Independent equiprobable +-1/(2*sqrt(n)) on the upper triangle
    including the diagonal, reflected to a symmetric matrix."""
    if n < 1:
        raise DomainError("dimension must be >= 1")
    rng = np.random.default_rng(rng_seed)
    iu = np.triu_indices(n)
    vals = (rng.integers(0, 2, size=len(iu[0])) * 2 - 1) * default_scale(n)
    M = np.zeros((n, n))
    M[iu] = vals
    M.T[iu] = vals
    return DenseSym.from_full(M)


def sample_random_circulant(n: int, rng_seed) -> SymCirculant:
    """Random symmetric circulant: the (n+1)/2 free entries of a
    palindromic first row drawn as independent +-1, scale 1/(2*sqrt(n)).
    Odd n keeps the free-parameter count exact."""
    if n < 3 or n % 2 == 0:
        raise DomainError("random symmetric circulant needs odd n >= 3")
    rng = np.random.default_rng(rng_seed)
    half = (rng.integers(0, 2, size=(n + 1) // 2) * 2 - 1).astype(np.float64)
    row = np.empty(n)
    row[0] = half[0]
    row[1 : (n + 1) // 2] = half[1:]
    row[(n + 1) // 2 :] = half[1:][::-1]
    return SymCirculant(first_row=row, scale=default_scale(n), n=n)


def paley_matrix(q: int, scale: float = 1.0) -> SymCirculant:
    """Sign-lifted Paley adjacency: entry (i,j) = -1 when i-j is a
    non-zero quadratic residue mod q, +1 otherwise.  q must be prime
    with q = 1 mod 4 so that -1 is a square and the matrix symmetric."""
    if not is_prime_u64(q):
        raise DomainError(f"{q} is not prime")
    if q % 4 != 1:
        raise DomainError(f"{q} is not 1 mod 4")
    row = np.ones(q)
    residues = {(x * x) % q for x in range(1, q)}
    row[sorted(residues)] = -1.0
    return SymCirculant(first_row=row, scale=scale, n=q)


def sample_tridiag_hermite(n: int, rng_seed, variant: str = "standard") -> TriDiag:
    """Tridiagonal model with Normal(0,2) diagonal.

    variant "standard": subdiagonal entries are independent chi-distributed
    values with degrees of freedom n-1, n-2, ..., 1 (the tridiagonal
    reduction of the Gaussian orthogonal ensemble); scaled by
    1/(2*sqrt(n)) at spectrum time its spectrum tends to the semicircle.

    variant "iid-chisq": subdiagonal entries are i.i.d. chi-square(n-1)
    draws.  These grow like n, so the scaled spectrum leaves [-1,1]
    entirely; spectrum reports flag this variant as divergent.
    """
    if n < 2:
        raise DomainError("tridiagonal model needs n >= 2")
    if variant not in TRIDIAG_VARIANTS:
        raise DomainError(f"variant must be one of {TRIDIAG_VARIANTS}")
    rng = np.random.default_rng(rng_seed)
    diag = rng.normal(0.0, math.sqrt(2.0), size=n)
    if variant == "iid-chisq":
        sub = rng.chisquare(n - 1, size=n - 1)
    else:
        # chi draws: sum-of-squares of normals for small degrees of
        # freedom, gamma method beyond.
        sub = np.empty(n - 1)
        for i, dof in enumerate(range(n - 1, 0, -1)):
            if dof <= 32:
                sub[i] = math.sqrt(np.sum(rng.normal(size=dof) ** 2))
            else:
                sub[i] = math.sqrt(rng.chisquare(dof))
    return TriDiag(diag=diag, subdiag=sub)


def spectrum_square(sp):
    """Map each eigenvalue x to 4x^2 and re-sort: the spectrum of
    (2A)^2, whose r-th moment is the 2r-th moment of 2A."""
    from .eigen import Spectrum  # local import: eigen consumes this module

    values = np.sort(4.0 * np.asarray(sp.values) ** 2)
    return Spectrum(values=values, n=sp.n, provenance=sp.provenance + "+squared")


def build(spec: EnsembleSpec):
    """Materialize the matrix a spec describes (replay contract)."""
    fam = spec.family
    if fam not in FAMILIES:
        raise DomainError(f"unknown family {fam!r}")
    if fam in ("pseudo", "squared_pseudo"):
        s = _cached_msequence(spec.poly, tuple(spec.seed))
        return build_pseudo(s, spec.shift, spec.sign if spec.sign else 1)
    if fam == "one_sided":
        s = _cached_msequence(spec.poly, tuple(spec.seed))
        return build_one_sided(shifted(s, spec.shift or 0))
    if fam == "wigner":
        return sample_wigner(spec.n, member_rng(spec.rng_seed, spec.member))
    if fam == "random_circulant":
        return sample_random_circulant(spec.n, member_rng(spec.rng_seed, spec.member))
    if fam == "paley":
        return paley_matrix(spec.q, spec.scale if spec.scale else 1.0)
    if fam == "tridiag_hermite":
        return sample_tridiag_hermite(
            spec.n, member_rng(spec.rng_seed, spec.member), spec.variant or "standard"
        )
    raise AssertionError(fam)
