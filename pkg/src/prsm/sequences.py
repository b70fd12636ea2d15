"""Maximal-length shift-register sequences and their audit battery.

A binary sequence of period n = 2^m - 1 produced by a linear-feedback
shift register with a primitive degree-m feedback polynomial passes a
battery of pseudo-randomness checks: balance, run-length halving,
two-valued autocorrelation, the shift-and-add closure, the width-m
window property, and bounded serial-test discrepancy.  This module
generates the sequences and implements every check exactly.

One period is held both as a tuple of 0/1 ints and as a packed Python
int (bit i = value at position i); the packed form turns correlation
sweeps into XOR + popcount on machine words, which is what makes the
exhaustive battery over all shifts cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (
    DegenerateSeedError,
    DomainError,
    PeriodMismatchError,
    ShiftAddViolation,
)
from .gf2 import Gf2Poly, factorize_u64


@dataclass(frozen=True)
class MSeq:
    """One period of a maximal-length sequence plus its provenance.

    Construct through msequence(), which validates the period; the raw
    constructor performs no checks so that the audit predicates can be
    exercised on degenerate inputs.
    """

    bits: tuple[int, ...]
    generator: Gf2Poly
    seed: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def m(self) -> int:
        return self.generator.degree

    @cached_property
    def packed(self) -> int:
        """Period as a single int, bit i = bits[i]."""
        return _pack(self.bits)


def _pack(bits) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b:
            out |= 1 << i
    return out


def _rot(x: int, a: int, n: int) -> int:
    """Cyclic shift: bit i of the result is bit (i+a) mod n of x."""
    a %= n
    if a == 0:
        return x
    mask = (1 << n) - 1
    return ((x >> a) | (x << (n - a))) & mask


def lfsr_generate(f: Gf2Poly, seed, length: int) -> list[int]:
    """Run the register: output obeys
    bits[i+m] = sum_{j<m} f_j * bits[i+j]  (mod 2)  for all i.

    Any seed is accepted; the all-zero seed yields the all-zero stream.
    """
    m = f.degree
    if m < 1:
        raise DomainError("feedback polynomial must have degree >= 1")
    seed = tuple(int(b) for b in seed)
    if len(seed) != m:
        raise DomainError(f"seed length {len(seed)} != degree {m}")
    if any(b not in (0, 1) for b in seed):
        raise DomainError("seed must consist of 0/1 values")
    taps = [(f.bits >> j) & 1 for j in range(m)]
    out = list(seed[:length])
    while len(out) < length:
        i = len(out) - m
        acc = 0
        for j in range(m):
            if taps[j]:
                acc ^= out[i + j]
        out.append(acc)
    return out[:length]


def msequence(f: Gf2Poly, seed) -> MSeq:
    """One full period of length 2^m - 1, validated to have exactly that
    period.  A non-primitive f produces a shorter or non-closing period
    and raises PeriodMismatchError."""
    m = f.degree
    seed = tuple(int(b) for b in seed)
    if not any(seed):
        raise DegenerateSeedError("all-zero seed generates the zero stream")
    n = (1 << m) - 1
    bits = tuple(lfsr_generate(f, seed, n))
    packed = _pack(bits)
    # Cyclic closure: the recurrence must hold at every position mod n,
    # expressed on whole periods as XOR of rotations.
    acc = 0
    for j in range(m):
        if (f.bits >> j) & 1:
            acc ^= _rot(packed, j, n)
    if acc != _rot(packed, m, n):
        raise PeriodMismatchError(
            f"{f} is not primitive: sequence does not close at period {n}"
        )
    # Closure means the period divides n; reject proper divisors.
    if n > 1:
        for p, _ in factorize_u64(n):
            d = n // p
            if _rot(packed, d, n) == packed:
                raise PeriodMismatchError(
                    f"{f} is not primitive: observed period divides {d} < {n}"
                )
    return MSeq(bits=bits, generator=f, seed=seed)


def shifted(s: MSeq, a: int) -> MSeq:
    """Cyclic shift: position i of the result reads s at i+a.  A shift
    of an m-sequence is an m-sequence for the same generator."""
    a %= s.n
    bits = s.bits[a:] + s.bits[:a]
    return MSeq(bits=bits, generator=s.generator, seed=bits[: s.m])


def description_length(s: MSeq) -> int:
    """Binary digits needed to regenerate the sequence: feedback taps
    plus initial fill, 2*m - 1 = 2*log2(n+1) - 1 in total."""
    return 2 * s.m - 1


def axiom_balance(s: MSeq) -> int:
    """Sum of (-1)^bits[i] over one period: zeros minus ones.
    Exactly -1 for an m-sequence (2^(m-1) ones vs 2^(m-1)-1 zeros)."""
    ones = s.packed.bit_count()
    return (s.n - ones) - ones


@dataclass(frozen=True)
class RunReport:
    """Cyclic run-length tallies: blocks are runs of ones, gaps of zeros."""

    blocks: dict[int, int]
    gaps: dict[int, int]
    total: int
    passed: bool


def axiom_runs(s: MSeq) -> RunReport:
    """Enumerate runs over the cyclic period (wrap-around runs merged)
    and check the halving law: whenever the expected count total/2^len
    exceeds 1, exactly that many runs of that length occur, half of
    them blocks and half gaps."""
    bits, n = s.bits, s.n
    blocks: dict[int, int] = {}
    gaps: dict[int, int] = {}
    start = next((i for i in range(n) if bits[i] != bits[i - 1]), None)
    if start is None:
        # Constant sequence: a single cyclic run of length n.
        (blocks if bits[0] else gaps)[n] = 1
        total = 1
    else:
        i = start
        total = 0
        while True:
            j = i
            length = 0
            while length < n and bits[j % n] == bits[i % n]:
                j += 1
                length += 1
            tally = blocks if bits[i % n] else gaps
            tally[length] = tally.get(length, 0) + 1
            total += 1
            i = j
            if (i - start) >= n:
                break
    passed = True
    length = 1
    while total > (1 << length):  # expected count total/2^length exceeds 1
        expected = total >> length
        got_b = blocks.get(length, 0)
        got_g = gaps.get(length, 0)
        if total % (1 << length) != 0 or got_b != got_g or got_b + got_g != expected:
            passed = False
        length += 1
    return RunReport(blocks=blocks, gaps=gaps, total=total, passed=passed)


def autocorrelation(s: MSeq, a: int) -> int:
    """C(a) = sum_i (-1)^(bits[i] + bits[i+a]): n at a = 0 and exactly
    -1 at every other shift for an m-sequence."""
    if not 0 <= a < s.n:
        raise DomainError(f"shift must lie in 0..{s.n - 1}")
    disagreements = (s.packed ^ _rot(s.packed, a, s.n)).bit_count()
    return s.n - 2 * disagreements


def shift_and_add_table(s: MSeq) -> dict[int, int]:
    """For each a in 1..n-1 the unique b with
    bits[i] + bits[i+a] = bits[i+b] (mod 2) for all i.

    Existence for every a characterizes m-sequences; a missing shift
    raises ShiftAddViolation.  The returned mapping is a bijection on
    1..n-1."""
    n, p = s.n, s.packed
    by_rotation = {_rot(p, b, n): b for b in range(n)}
    table: dict[int, int] = {}
    for a in range(1, n):
        summed = p ^ _rot(p, a, n)
        b = by_rotation.get(summed)
        if b is None:
            raise ShiftAddViolation(
                f"shift-and-add failed at a={a}: sum is not a cyclic shift"
            )
        table[a] = b
    return table


def window_check(s: MSeq) -> bool:
    """True iff the width-m window, slid cyclically over one period,
    visits every non-zero m-tuple exactly once."""
    n, m = s.n, s.m
    mask = (1 << m) - 1
    doubled = s.packed | (s.packed << n)
    seen = set()
    for i in range(n):
        w = (doubled >> i) & mask
        if w == 0 or w in seen:
            return False
        seen.add(w)
    return len(seen) == n


def serial_test(s: MSeq, k: int) -> int:
    """Maximum over all pairs of k-tuples of the difference in cyclic
    occurrence counts; at most 1 for an m-sequence when k <= m."""
    if not 1 <= k <= s.m:
        raise DomainError(f"tuple length must lie in 1..{s.m}")
    n = s.n
    mask = (1 << k) - 1
    doubled = s.packed | (s.packed << n)
    counts = [0] * (1 << k)
    for i in range(n):
        counts[(doubled >> i) & mask] += 1
    return max(counts) - min(counts)


@dataclass(frozen=True)
class BMResult:
    """Berlekamp-Massey output: linear complexity and the shortest
    feedback polynomial, in the same tap convention as lfsr_generate
    (bits[i+L] = sum_{j<L} f_j bits[i+j] mod 2)."""

    complexity: int
    feedback: Gf2Poly
    confident: bool  # input covered at least 2L symbols


def berlekamp_massey(bits) -> BMResult:
    """Shortest linear recurrence over GF(2) reproducing ``bits``.

    Two periods of a degree-m m-sequence give complexity exactly m and
    recover the generator polynomial.
    """
    bits = [int(b) for b in bits]
    if not bits:
        raise DomainError("empty input")
    c, b = 1, 1  # connection polynomials, bit j = coefficient of x^j
    L, shift = 0, 1
    window = 0  # bit j = bits[i-j]
    for i, bit in enumerate(bits):
        window = (window << 1) | bit
        d = (c & window).bit_count() & 1
        if d:
            t = c
            c ^= b << shift
            if 2 * L <= i:
                L = i + 1 - L
                b = t
                shift = 1
            else:
                shift += 1
        else:
            shift += 1
    # Convert the connection polynomial c(x) = 1 + c_1 x + ... into the
    # feedback-tap form: f_j = c_{L-j}, with the implicit leading tap.
    fb = 0
    for j in range(L + 1):
        if (c >> j) & 1:
            fb |= 1 << (L - j)
    return BMResult(
        complexity=L,
        feedback=Gf2Poly(fb if L else 1),
        confident=len(bits) >= 2 * L,
    )


def to_line(s: MSeq) -> str:
    """One period as a line of '0'/'1' characters."""
    return "".join("1" if b else "0" for b in s.bits)


def from_line(text: str) -> MSeq:
    """Rebuild an MSeq from its exported line.  The generator is
    recovered with Berlekamp-Massey and the period re-validated."""
    bits = []
    for ch in text.strip():
        if ch not in "01":
            raise DomainError(f"unexpected character {ch!r} in sequence line")
        bits.append(int(ch))
    result = berlekamp_massey(bits + bits)  # two periods pin the recurrence
    L = result.complexity
    if L == 0:
        raise DomainError("constant-zero line is not an m-sequence")
    rebuilt = msequence(result.feedback, bits[:L])
    if list(rebuilt.bits) != bits:
        raise PeriodMismatchError("line is not one period of an m-sequence")
    return rebuilt
