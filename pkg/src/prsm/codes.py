"""Code-theoretic companions of the sequence machinery, verified by
explicit enumeration at desk scale.

A maximal-length sequence and its cyclic shifts span a simplex code;
the polynomial multiples of its generator form the dual Hamming code.
On top of those sit the combinatorial maps used to control spectral
moment sums: a tuple of cyclic steps folds into a length-n parity
word, that word contracts against every shift of the sequence, and
shift-and-add closure forces the contraction to be either identically
zero or a shift of the sequence itself.  verify_tuple_identities
sweeps every admissible tuple and checks the whole chain, counting
how often each case occurs.

Everything here enumerates and checks; nothing is asymptotic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .errors import CapabilityError, DomainError, ShiftAddViolation, VerificationError
from .gf2 import Gf2Poly, is_primitive, _mod
from .sequences import MSeq, _rot

MAX_CODE_DIM = 20  # explicit word lists capped at 2^20
_FULL_CLOSURE_DIM = 10  # pairwise closure checked exhaustively up to here


def _weight(w: int) -> int:
    return w.bit_count()


def _dot_parity(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class BinaryCode:
    """A binary linear code as an explicit list of codewords.

    Words are ints, bit i = symbol i.  Construction verifies linearity:
    exhaustive pairwise closure for small codes, basis-against-word
    spot checks beyond that.
    """

    n: int
    k: int
    words: tuple[int, ...]

    @cached_property
    def word_set(self) -> frozenset:
        return frozenset(self.words)

    @property
    def dimension(self) -> int:
        return self.k

    def __contains__(self, w: int) -> bool:
        return w in self.word_set

    def validate(self) -> None:
        if len(self.words) != 1 << self.k:
            raise VerificationError(
                f"code lists {len(self.words)} words, dimension {self.k} needs {1 << self.k}"
            )
        if 0 not in self.word_set:
            raise VerificationError("code misses the zero word")
        mask = (1 << self.n) - 1
        if any(w & ~mask for w in self.words):
            raise VerificationError(f"codeword exceeds length {self.n}")
        if self.k <= _FULL_CLOSURE_DIM:
            for a in self.words:
                for b in self.words:
                    if a ^ b not in self.word_set:
                        raise VerificationError(f"not closed: {a:#x} + {b:#x}")
        else:
            words = self.words
            step = max(1, len(words) // 64)
            sample = words[::step]
            for a in sample:
                for b in sample:
                    if a ^ b not in self.word_set:
                        raise VerificationError(f"not closed: {a:#x} + {b:#x}")


def _span(basis: Sequence[int], n: int) -> BinaryCode:
    if len(basis) > MAX_CODE_DIM:
        raise CapabilityError(
            f"enumeration capped at dimension {MAX_CODE_DIM}, got {len(basis)}"
        )
    words = [0]
    for b in basis:
        words.extend([w ^ b for w in words])
    if len(set(words)) != len(words):
        raise VerificationError("basis is linearly dependent")
    code = BinaryCode(n=n, k=len(basis), words=tuple(sorted(words)))
    code.validate()
    return code


def simplex_code(s: MSeq) -> BinaryCode:
    """The zero word plus all n cyclic shifts of the sequence: a linear
    code of dimension m in which every non-zero word has weight 2^(m-1).
    Linearity is exactly the shift-and-add property made static."""
    if s.m > 16:
        raise CapabilityError("simplex enumeration capped at m <= 16")
    n, m = s.n, s.m
    basis = [_rot(s.packed, j, n) for j in range(m)]
    code = _span(basis, n)
    shifts = {_rot(s.packed, a, n) for a in range(n)}
    if code.word_set != shifts | {0}:
        raise VerificationError("span of shifts is not {0} + all shifts")
    half = 1 << (m - 1)
    if any(_weight(w) != half for w in code.words if w):
        raise VerificationError(f"non-zero simplex word with weight != {half}")
    return code


def hamming_basis(f: Gf2Poly) -> list[int]:
    """Basis of the dual code: the shifts x^i * f(x), i = 0..n-m-1.
    No modular reduction is needed; the degrees stay below n."""
    if not is_primitive(f):
        raise DomainError(f"{f} is not primitive")
    m = f.degree
    n = (1 << m) - 1
    return [f.bits << i for i in range(n - m)]


def hamming_code(f: Gf2Poly) -> BinaryCode:
    """All polynomial multiples of f of degree < n: the dual of the
    simplex code, dimension n - m."""
    m = f.degree
    n = (1 << m) - 1
    if n - m > MAX_CODE_DIM:
        raise CapabilityError(
            f"Hamming enumeration needs dimension {n - m} > cap {MAX_CODE_DIM}"
        )
    return _span(hamming_basis(f), n)


def weight_spectrum(code: BinaryCode) -> list[int]:
    """counts[l] = number of codewords of weight l, l = 0..n."""
    counts = [0] * (code.n + 1)
    for w in code.words:
        counts[_weight(w)] += 1
    return counts


def _reverse_cyclic(w: int, n: int) -> int:
    # bit 0 fixed, bit i swapped with bit n-i: polynomial order reversal
    out = w & 1
    for i in range(1, n):
        if (w >> i) & 1:
            out |= 1 << (n - i)
    return out


def palindromic_subcode(code: BinaryCode) -> BinaryCode:
    """Subcode of words fixed by cyclic order reversal.  For the dual
    code of degree-m sequences the dimension must come out to
    (n+1)/2 - m; any other count is reported as a verification failure
    rather than returned."""
    n = code.n
    if n < 7:
        raise DomainError("palindromic subcode needs n >= 7")
    m = (n + 1).bit_length() - 1
    if (1 << m) - 1 != n:
        raise DomainError(f"length {n} is not 2^m - 1")
    fixed = sorted(w for w in code.words if _reverse_cyclic(w, n) == w)
    count = len(fixed)
    if count & (count - 1):
        raise VerificationError(f"palindrome count {count} is not a power of two")
    dim = count.bit_length() - 1
    expected = (n + 1) // 2 - m
    if dim != expected:
        raise VerificationError(
            f"palindromic subcode dimension {dim} != (n+1)/2 - m = {expected}"
        )
    sub = BinaryCode(n=n, k=dim, words=tuple(fixed))
    sub.validate()
    return sub


def palindromic_dimension(f: Gf2Poly) -> int:
    """Dimension of the palindromic subcode of the dual code, counted
    without enumerating the code itself: a word lies in the dual iff f
    divides it as a polynomial, so it suffices to sweep the 2^((n+1)/2)
    palindromes.  Reaches m=5, where the dual (dimension 26) is beyond
    the enumeration cap."""
    if not is_primitive(f):
        raise DomainError(f"{f} is not primitive")
    m = f.degree
    n = (1 << m) - 1
    half = (n + 1) // 2  # free positions: bit 0 plus pairs (i, n-i)
    if half > 16:
        raise CapabilityError(f"palindrome sweep capped at (n+1)/2 <= 16, got {half}")
    pair_masks = [(1 << i) | (1 << (n - i)) for i in range(1, half)]
    count = 0
    for free in range(1 << half):
        w = free & 1
        bits = free >> 1
        while bits:
            low = bits & -bits
            w |= pair_masks[low.bit_length() - 1]
            bits ^= low
        if _mod(w, f.bits) == 0:
            count += 1
    if count & (count - 1):
        raise VerificationError(f"palindrome count {count} is not a power of two")
    dim = count.bit_length() - 1
    expected = half - m
    if dim != expected:
        raise VerificationError(
            f"palindromic subcode dimension {dim} != (n+1)/2 - m = {expected}"
        )
    return dim


@dataclass(frozen=True)
class StepTuple:
    """An r-tuple of cyclic steps.  Admissible tuples (the walk closes)
    have step sum 0 mod n."""

    values: tuple[int, ...]
    n: int

    def __post_init__(self):
        if any(not 0 <= v < self.n for v in self.values):
            raise DomainError(f"tuple values must lie in 0..{self.n - 1}")

    @property
    def closes(self) -> bool:
        return sum(self.values) % self.n == 0


def _tuple_values(t, n: int) -> tuple[int, ...]:
    values = tuple(t.values) if isinstance(t, StepTuple) else tuple(t)
    if any(not 0 <= v < n for v in values):
        raise DomainError(f"tuple values must lie in 0..{n - 1}")
    return values


def tuple_parity_word(t, n: int) -> tuple[int, ...]:
    """Parity word of a step tuple: bit i = parity of occurrences of i
    among (t_0..t_{r-1}, -t_0..-t_{r-1}) mod n.  Bit 0 is always 0,
    since 0 and -0 coincide and contribute in pairs."""
    values = _tuple_values(t, n)
    counts = [0] * n
    for v in values:
        counts[v] ^= 1
        counts[(n - v) % n] ^= 1
    return tuple(counts)


def _parity_word_packed(values: tuple[int, ...], n: int) -> int:
    w = 0
    for v in values:
        w ^= 1 << v
        w ^= 1 << ((n - v) % n)
    return w


@dataclass
class OverlapResult:
    """Contraction bits over all shifts a = 0..n-1, classified:
    identically zero or a cyclic shift of the sequence (shift-and-add
    closure admits nothing else)."""

    bits: tuple[int, ...]
    is_zero: bool
    shift: Optional[int]


def overlap_with_shifts(s: MSeq, t) -> OverlapResult:
    """Contract the tuple's parity word against every cyclic shift of
    the sequence: bit a = parity of the overlap between the word and
    the sequence shifted by a, i.e. sum_q [s(t_q + a) + s(-t_q + a)]
    mod 2."""
    n = s.n
    values = _tuple_values(t, n)
    word = _parity_word_packed(values, n)
    bits = tuple((word & _rot(s.packed, a, n)).bit_count() & 1 for a in range(n))
    packed = sum(b << i for i, b in enumerate(bits))
    if packed == 0:
        return OverlapResult(bits=bits, is_zero=True, shift=None)
    for g in range(n):
        if packed == _rot(s.packed, g, n):
            return OverlapResult(bits=bits, is_zero=False, shift=g)
    raise ShiftAddViolation(f"contraction of {values} is neither zero nor a shift")


def _walk_is_even(values: tuple[int, ...], n: int) -> bool:
    # walk 0 -> t_0 -> t_0+t_1 -> ...; even iff every undirected edge
    # is traversed an even number of times
    edges: dict = {}
    node = 0
    for v in values:
        nxt = (node + v) % n
        e = (node, nxt) if node <= nxt else (nxt, node)
        edges[e] = edges.get(e, 0) ^ 1
        node = nxt
    return not any(edges.values())


@dataclass
class TupleSweepReport:
    """Outcome of the exhaustive tuple sweeps for one sequence and one
    tuple length.  Plain fields cover the admissible tuples (step sum
    0 mod n); "unconstrained" fields cover all n^r tuples, since parts
    of the moment bookkeeping drop the closure condition and the two
    countings differ."""

    n: int
    m: int
    r: int
    tuples: int
    violations: int
    dual_membership_checked: int
    autocorrelation_checked: int
    even_walk_checked: int
    zero_word_tuples: int
    even_walk_tuples: int
    dual_nonzero_tuples: int
    shift_valued_tuples: int
    tuples_unconstrained: int
    zero_word_unconstrained: int
    dual_nonzero_unconstrained: int
    shift_valued_unconstrained: int
    first_counterexample: Optional[dict]

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)

    @property
    def passed(self) -> bool:
        return self.violations == 0


def verify_tuple_identities(s: MSeq, r: int) -> TupleSweepReport:
    """Exhaustive check of the tuple machinery.

    Admissible pass (free coordinates t_0..t_{r-2}, last one solved so
    the walk closes; n^(r-1) tuples):

    (i) the contraction is identically zero iff the parity word lies
        in the dual code;
    (ii) the signed sum over shifts equals n when the contraction is
         zero and -1 when it is a shift;
    (iii) a closed walk that traverses every edge an even number of
          times has parity word zero.

    Unconstrained pass (all n^r tuples): (i) and (ii) again, with the
    class counts reported separately; (iii) needs a closed walk and
    does not apply.

    dual_nonzero counts tuples whose parity word is non-zero yet
    orthogonal to every shift, shift_valued those whose contraction is
    a shift of the sequence; together with the zero-word class they
    partition each sweep.
    """
    if s.m > 4:
        raise CapabilityError("exhaustive sweep capped at m <= 4")
    if not 1 <= r <= 4:
        raise CapabilityError("exhaustive sweep capped at r <= 4")
    n = s.n
    dual = hamming_code(s.generator)
    shift_words = {_rot(s.packed, g, n) for g in range(n)}
    rotations = [_rot(s.packed, a, n) for a in range(n)]

    violations = 0
    checked = [0, 0, 0]
    first: Optional[dict] = None

    def record(kind: str, values, detail: str):
        nonlocal violations, first
        violations += 1
        if first is None:
            first = {"identity": kind, "tuple": list(values), "detail": detail}

    def classify(values):
        # returns "zero" | "dual_nonzero" | "shift_valued" after (i), (ii)
        word = _parity_word_packed(values, n)
        overlap = [(word & rot).bit_count() & 1 for rot in rotations]
        packed = sum(b << i for i, b in enumerate(overlap))
        contraction_zero = packed == 0

        checked[0] += 1
        if contraction_zero != (word in dual.word_set):
            record(
                "dual_membership",
                values,
                f"contraction_zero={contraction_zero}, word={word:#x}",
            )

        corr = n - 2 * sum(overlap)
        checked[1] += 1
        if contraction_zero:
            if corr != n:
                record("autocorrelation", values, f"sum={corr}, expected {n}")
        else:
            if corr != -1:
                record("autocorrelation", values, f"sum={corr}, expected -1")
            if packed not in shift_words:
                record(
                    "autocorrelation", values, "contraction is neither zero nor a shift"
                )

        if word == 0:
            return "zero"
        return "dual_nonzero" if contraction_zero else "shift_valued"

    from itertools import product

    tuples = 0
    zero_word = even_walk = dual_nonzero = shift_valued = 0
    for head in product(range(n), repeat=r - 1):
        last = (-sum(head)) % n
        values = head + (last,)
        tuples += 1
        kind = classify(values)
        zero_word += kind == "zero"
        dual_nonzero += kind == "dual_nonzero"
        shift_valued += kind == "shift_valued"

        checked[2] += 1
        if _walk_is_even(values, n):
            even_walk += 1
            if kind != "zero":
                record("even_walk", values, "parity word != 0 despite even walk")

    if zero_word + dual_nonzero + shift_valued != tuples:
        record(
            "partition", (), f"{zero_word}+{dual_nonzero}+{shift_valued} != {tuples}"
        )

    tuples_u = 0
    zero_word_u = dual_nonzero_u = shift_valued_u = 0
    for values in product(range(n), repeat=r):
        tuples_u += 1
        kind = classify(values)
        zero_word_u += kind == "zero"
        dual_nonzero_u += kind == "dual_nonzero"
        shift_valued_u += kind == "shift_valued"

    if zero_word_u + dual_nonzero_u + shift_valued_u != tuples_u:
        record(
            "partition_unconstrained",
            (),
            f"{zero_word_u}+{dual_nonzero_u}+{shift_valued_u} != {tuples_u}",
        )

    return TupleSweepReport(
        n=n,
        m=s.m,
        r=r,
        tuples=tuples,
        violations=violations,
        dual_membership_checked=checked[0],
        autocorrelation_checked=checked[1],
        even_walk_checked=checked[2],
        zero_word_tuples=zero_word,
        even_walk_tuples=even_walk,
        dual_nonzero_tuples=dual_nonzero,
        shift_valued_tuples=shift_valued,
        tuples_unconstrained=tuples_u,
        zero_word_unconstrained=zero_word_u,
        dual_nonzero_unconstrained=dual_nonzero_u,
        shift_valued_unconstrained=shift_valued_u,
        first_counterexample=first,
    )
