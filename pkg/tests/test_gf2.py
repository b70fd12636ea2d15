"""GF(2) polynomial arithmetic and primitivity search."""

import pytest

from prsm.errors import CapabilityError, PolyParseError
from prsm.gf2 import (
    Gf2Poly,
    euler_phi,
    factorize_u64,
    is_irreducible,
    is_prime_u64,
    is_primitive,
    parse_poly,
    primitive_polynomials,
    reciprocal,
    self_reciprocal_primitives,
    smallest_primitive,
)


def test_parse_human_form():
    p = parse_poly("x^4+x+1")
    assert p.bits == 0b10011
    assert p.degree == 4
    assert str(p) == "x^4+x+1"


def test_parse_is_order_insensitive():
    assert parse_poly("1 + x + x^4") == parse_poly("x^4+x+1")


def test_parse_hex_form():
    assert parse_poly("0x13") == parse_poly("x^4+x+1")


def test_parse_rejects_garbage():
    for bad in ("", "x^3+banana", "x^-2+1", "3x+1"):
        with pytest.raises(PolyParseError):
            parse_poly(bad)


def test_str_round_trips():
    for text in ("x+1", "x^2+x+1", "x^13+x^8+x^5+x^3+1"):
        assert str(parse_poly(text)) == text


def test_irreducible_vs_primitive():
    # x^4+x^3+x^2+x+1 divides x^5+1: irreducible, order 5 < 15
    p = parse_poly("x^4+x^3+x^2+x+1")
    assert is_irreducible(p)
    assert not is_primitive(p)


def test_reducible_is_not_irreducible():
    assert not is_irreducible(parse_poly("x^2+1"))  # (x+1)^2
    assert not is_irreducible(parse_poly("x^4+x^2+1"))


def test_classic_primitives():
    for text in ("x^2+x+1", "x^3+x+1", "x^4+x+1", "x^5+x^2+1"):
        assert is_primitive(parse_poly(text))


def test_primitive_counts_match_group_order():
    # number of degree-m primitives = phi(2^m - 1) / m
    for m in range(2, 11):
        found = list(primitive_polynomials(m))
        assert len(found) == euler_phi(2**m - 1) // m
        assert all(p.degree == m and is_primitive(p) for p in found)


def test_smallest_primitive_table():
    expected = {
        3: "x^3+x+1",
        4: "x^4+x+1",
        5: "x^5+x^2+1",
        6: "x^6+x+1",
        7: "x^7+x+1",
        8: "x^8+x^4+x^3+x^2+1",
    }
    for m, text in expected.items():
        assert str(smallest_primitive(m)) == text


def test_reciprocal_flips_coefficients():
    assert str(reciprocal(parse_poly("x^3+x+1"))) == "x^3+x^2+1"
    # involution
    p = parse_poly("x^8+x^4+x^3+x^2+1")
    assert reciprocal(reciprocal(p)) == p


def test_reciprocal_pairs_are_both_primitive():
    for p in primitive_polynomials(5):
        assert is_primitive(reciprocal(p))


def test_self_reciprocal_primitives_are_exactly_two():
    found = [str(p) for p in self_reciprocal_primitives(12)]
    assert found == ["x+1", "x^2+x+1"]


def test_primitivity_degree_cap():
    with pytest.raises(CapabilityError):
        is_primitive(parse_poly("x^40+x+1"))


def test_prime_and_factor_helpers():
    assert is_prime_u64(2**31 - 1)
    assert not is_prime_u64(2**11 - 1)
    assert factorize_u64(2047) == [(23, 1), (89, 1)]
    assert factorize_u64(2**20) == [(2, 20)]
    assert euler_phi(2047) == 22 * 88
    assert euler_phi(2**10 - 1) == 600


def test_poly_equality_and_hash():
    a = parse_poly("x^3+x+1")
    b = parse_poly("1+x+x^3")
    assert a == b
    assert len({a, b}) == 1
    assert a != parse_poly("x^3+x^2+1")
