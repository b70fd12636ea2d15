"""Exact arithmetic over GF(2)[x].

Polynomials are held as Python integers: bit j of ``bits`` is the
coefficient of x^j, so x^3+x+1 is 0b1011.  All arithmetic is carry-less
(XOR addition), which makes multiplication, division and gcd plain bit
twiddling on arbitrary-precision ints.

The primitivity test needs the factorization of 2^m - 1, so a small
exact integer factorizer (trial division plus Brent's cycle finder) and
a deterministic Miller-Rabin primality test live here too.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapabilityError, DomainError, PolyParseError

# Primitivity is tested by exponentiation inside GF(2^m); the period
# 2^m - 1 must stay within a machine word.
MAX_PRIMITIVE_DEGREE = 32


@dataclass(frozen=True)
class Gf2Poly:
    """A polynomial over GF(2), bit j of ``bits`` = coefficient of x^j."""

    bits: int

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return self.bits.bit_length() - 1

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for j in range(self.degree, -1, -1):
            if (self.bits >> j) & 1:
                terms.append("1" if j == 0 else "x" if j == 1 else f"x^{j}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"Gf2Poly({self})"


def parse_poly(text: str) -> Gf2Poly:
    """Parse "x^a+x^b+...+1" or a "0x.." bitmask into a Gf2Poly.

    Parsing is involutive with formatting: parse_poly(str(p)) == p.
    """
    text = text.strip()
    if text.lower().startswith("0x"):
        try:
            return Gf2Poly(int(text, 16))
        except ValueError:
            raise PolyParseError(f"bad hex bitmask {text!r}") from None
    if text == "0":
        return Gf2Poly(0)
    bits = 0
    for token in text.split("+"):
        token = token.strip()
        if token == "1":
            power = 0
        elif token == "x":
            power = 1
        elif token.startswith("x^"):
            try:
                power = int(token[2:])
            except ValueError:
                raise PolyParseError(f"bad exponent in token {token!r}") from None
            if power < 0:
                raise PolyParseError(f"negative exponent in token {token!r}")
        else:
            raise PolyParseError(f"unrecognized token {token!r}")
        if (bits >> power) & 1:
            raise PolyParseError(f"duplicate monomial {token!r}")
        bits |= 1 << power
    return Gf2Poly(bits)


def _mul(a: int, b: int) -> int:
    """Carry-less product of two bit-encoded polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
    return out


def _divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of bit-encoded polynomials, b != 0."""
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _mulmod(a: int, b: int, modulus: int) -> int:
    return _mod(_mul(a, b), modulus)


def _xpowmod(e: int, modulus: int) -> int:
    """x^e reduced modulo the bit-encoded polynomial ``modulus``."""
    result = _mod(1, modulus)
    base = _mod(2, modulus)
    while e:
        if e & 1:
            result = _mulmod(result, base, modulus)
        base = _mulmod(base, base, modulus)
        e >>= 1
    return result


def poly_mul_mod(a: Gf2Poly, b: Gf2Poly, modulus: Gf2Poly) -> Gf2Poly:
    """a*b reduced modulo ``modulus`` over GF(2)."""
    if modulus.bits == 0:
        raise DomainError("zero modulus")
    return Gf2Poly(_mulmod(a.bits, b.bits, modulus.bits))


def is_irreducible(f: Gf2Poly) -> bool:
    """Rabin's test: f of degree m is irreducible iff x^(2^m) = x (mod f)
    and gcd(x^(2^(m/p)) - x, f) = 1 for every prime p dividing m."""
    m = f.degree
    if m < 1:
        raise DomainError("irreducibility needs degree >= 1")
    # x^(2^k) mod f by k squarings of x.
    r = _mod(2, f.bits)
    powers = {}
    for k in range(1, m + 1):
        r = _mulmod(r, r, f.bits)
        powers[k] = r
    if powers[m] != _mod(2, f.bits):
        return False
    for p, _ in factorize_u64(m) if m > 1 else []:
        if _gcd(powers[m // p] ^ _mod(2, f.bits), f.bits) != 1:
            return False
    return True


def is_primitive(f: Gf2Poly) -> bool:
    """True iff f is irreducible and x generates the full multiplicative
    group of GF(2^m), i.e. the order of x modulo f is 2^m - 1."""
    m = f.degree
    if m < 1 or m > MAX_PRIMITIVE_DEGREE:
        raise CapabilityError(
            f"primitivity supported for degree 1..{MAX_PRIMITIVE_DEGREE}, got {m}"
        )
    if not is_irreducible(f):
        return False
    n = (1 << m) - 1
    if n == 1:
        return True  # x+1: the multiplicative group of GF(2) is trivial
    for p, _ in factorize_u64(n):
        if _xpowmod(n // p, f.bits) == 1:
            return False
    return True


def reciprocal(f: Gf2Poly) -> Gf2Poly:
    """x^deg(f) * f(1/x): the coefficient bit-string reversed.

    An involution whenever f(0) = 1; preserves degree and primitivity.
    """
    if f.bits == 0:
        return f
    d = f.degree
    rev = 0
    for j in range(d + 1):
        if (f.bits >> j) & 1:
            rev |= 1 << (d - j)
    return Gf2Poly(rev)


def primitive_polynomials(m: int):
    """Yield every primitive polynomial of degree m, ascending by bitmask.

    Exhaustive search; a primitive polynomial has constant term 1, so
    only 2^(m-1) candidates are tested.
    """
    if m < 1 or m > MAX_PRIMITIVE_DEGREE:
        raise CapabilityError(f"degree 1..{MAX_PRIMITIVE_DEGREE} supported, got {m}")
    for inner in range(1 << (m - 1)) if m > 1 else [0]:
        f = Gf2Poly((1 << m) | (inner << 1) | 1)
        if is_primitive(f):
            yield f


def smallest_primitive(m: int) -> Gf2Poly:
    """The primitive polynomial of degree m with the smallest bitmask."""
    return next(primitive_polynomials(m))


def self_reciprocal_primitives(max_degree: int) -> list[Gf2Poly]:
    """All primitive f with reciprocal(f) = f, degrees 1..max_degree.

    Exhaustive over degrees 1..12 this returns exactly [x+1, x^2+x+1].
    """
    found = []
    for m in range(1, max_degree + 1):
        for f in primitive_polynomials(m):
            if reciprocal(f) == f:
                found.append(f)
    return found


# ---------------------------------------------------------------------------
# Exact integer factorization for the order test.

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(v: int) -> bool:
    """Deterministic Miller-Rabin, exact for v < 2^64."""
    if v < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if v % p == 0:
            return v == p
    d = v - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, v)
        if x in (1, v - 1):
            continue
        for _ in range(s - 1):
            x = x * x % v
            if x == v - 1:
                break
        else:
            return False
    return True


def _brent_rho(v: int) -> int:
    """A nontrivial factor of composite odd v (Brent's variant of the
    Pollard rho cycle finder, deterministic constant sweep)."""
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % v
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % v
                    q = q * abs(x - y) % v
                g = _int_gcd(q, v)
                k += 128
            r *= 2
        if g == v:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % v
                g = _int_gcd(abs(x - ys), v)
        if g != v:
            return g
    raise ArithmeticError(f"rho failed to split {v}")  # unreachable in u64 range


def _int_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def factorize_u64(value: int) -> list[tuple[int, int]]:
    """Prime factorization of 2 <= value <= 2^63 as (prime, multiplicity)
    pairs, primes ascending.  Trial division up to 2^16 covers every
    2^m - 1 with m <= 32; the rho fallback handles anything else."""
    if value < 2:
        raise DomainError("factorize_u64 needs value >= 2")
    if value > 1 << 63:
        raise CapabilityError("factorize_u64 supports values up to 2^63")
    factors: dict[int, int] = {}
    v = value
    for p in range(2, 1 << 16):
        if p * p > v:
            break
        while v % p == 0:
            factors[p] = factors.get(p, 0) + 1
            v //= p
    stack = [v] if v > 1 else []
    while stack:
        w = stack.pop()
        if w == 1:
            continue
        if is_prime_u64(w):
            factors[w] = factors.get(w, 0) + 1
            continue
        d = _brent_rho(w)
        stack.extend((d, w // d))
    return sorted(factors.items())


def euler_phi(value: int) -> int:
    """Euler's totient via the factorization above."""
    out = value
    for p, _ in factorize_u64(value):
        out -= out // p
    return out
