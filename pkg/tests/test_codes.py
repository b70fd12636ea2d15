"""Cyclic codes and the tuple-sum identities behind the moment proofs."""

import json

import pytest

from prsm.codes import (
    BinaryCode,
    hamming_basis,
    hamming_code,
    tuple_parity_word,
    palindromic_dimension,
    palindromic_subcode,
    simplex_code,
    overlap_with_shifts,
    verify_tuple_identities,
    weight_spectrum,
    _dot_parity,
    _walk_is_even,
)
from prsm.errors import CapabilityError, VerificationError
from prsm.gf2 import parse_poly, smallest_primitive
from prsm.sequences import msequence


def _seq(m):
    return msequence(smallest_primitive(m), (1,) * m)


def test_simplex_m2():
    s = msequence(parse_poly("x^2+x+1"), (1, 0))
    code = simplex_code(s)
    assert code.n == 3 and code.k == 2
    assert sorted(code.words) == [0b000, 0b011, 0b101, 0b110]


def test_simplex_m3_structure():
    code = simplex_code(_seq(3))
    assert code.k == 3 and len(code.words) == 8
    assert weight_spectrum(code) == [1, 0, 0, 0, 7, 0, 0, 0]


def test_simplex_nonzero_weights_constant():
    for m in (3, 4, 5):
        spectrum = weight_spectrum(simplex_code(_seq(m)))
        assert spectrum[0] == 1
        assert spectrum[2 ** (m - 1)] == 2**m - 1
        assert sum(spectrum) == 2**m


def test_hamming_7_4_weight_spectrum():
    code = hamming_code(parse_poly("x^3+x+1"))
    assert (code.n, code.k) == (7, 4)
    assert weight_spectrum(code) == [1, 0, 0, 7, 7, 0, 0, 1]


def test_simplex_and_hamming_are_dual():
    for m in (3, 4):
        f = smallest_primitive(m)
        sx = simplex_code(_seq(m))
        hm = hamming_code(f)
        assert sx.k + hm.k == sx.n
        assert all(_dot_parity(a, b) == 0 for a in sx.words for b in hm.words)


def test_hamming_basis_matches_code():
    f = parse_poly("x^3+x+1")
    basis = hamming_basis(f)
    assert len(basis) == 4
    assert set(basis) <= set(hamming_code(f).words)


def test_hamming_dimension_cap():
    with pytest.raises(CapabilityError):
        hamming_code(smallest_primitive(5))  # dim 26 exceeds the table cap


def test_code_validation_rejects_non_closed_sets():
    with pytest.raises(VerificationError):
        BinaryCode(n=3, k=1, words=(0b000, 0b011, 0b101)).validate()


def test_palindromic_subcode_dimensions():
    for m, expected in ((3, 1), (4, 4)):
        f = smallest_primitive(m)
        sub = palindromic_subcode(hamming_code(f))
        assert sub.k == expected
        sub.validate()


def test_palindromic_dimension_by_enumeration():
    for m, expected in ((3, 1), (4, 4), (5, 11)):
        assert palindromic_dimension(smallest_primitive(m)) == expected


def test_parity_word_worked_example():
    # n = 7, t = (3, 5, 0): indicator parities of {t_q, -t_q} hits
    assert tuple_parity_word((3, 5, 0), 7) == (0, 0, 1, 1, 1, 1, 0)


def test_parity_word_first_bit_always_zero():
    # +t and -t collide at index 0, so its parity never sets
    for t in ((0, 0), (1, 2, 3), (6, 6, 6, 6)):
        assert tuple_parity_word(t, 7)[0] == 0


def test_overlap_is_zero_or_a_shift_exhaustively():
    s = _seq(3)
    n = s.n
    shifts = set()
    zeros = 0
    for t0 in range(n):
        for t1 in range(n):
            res = overlap_with_shifts(s, (t0, t1))
            if res.is_zero:
                zeros += 1
            else:
                assert res.shift is not None
                shifts.add(res.shift)
    assert zeros > 0 and shifts <= set(range(n))


def test_even_walk_forces_zero_word_but_not_conversely():
    n = 7
    assert _walk_is_even((1, 6, 2, 5), n)
    assert all(b == 0 for b in tuple_parity_word((1, 6, 2, 5), n))
    # visits every edge once yet still cancels: the converse fails
    assert not _walk_is_even((1, 2, 6, 5), n)
    assert all(b == 0 for b in tuple_parity_word((1, 2, 6, 5), n))


def test_tuple_sweep_m3_r2():
    rep = verify_tuple_identities(_seq(3), 2)
    assert rep.passed and rep.violations == 0
    assert rep.tuples == 7
    assert (rep.zero_word_tuples, rep.dual_nonzero_tuples, rep.shift_valued_tuples) == (7, 0, 0)
    assert rep.tuples_unconstrained == 49
    assert (
        rep.zero_word_unconstrained,
        rep.dual_nonzero_unconstrained,
        rep.shift_valued_unconstrained,
    ) == (13, 0, 36)


def test_tuple_sweep_m3_r4():
    rep = verify_tuple_identities(_seq(3), 4)
    assert rep.passed and rep.violations == 0
    assert rep.tuples == 343
    assert (rep.zero_word_tuples, rep.dual_nonzero_tuples, rep.shift_valued_tuples) == (127, 0, 216)
    assert rep.even_walk_tuples == 91
    assert rep.tuples_unconstrained == 2401
    assert (
        rep.zero_word_unconstrained,
        rep.dual_nonzero_unconstrained,
        rep.shift_valued_unconstrained,
    ) == (409, 0, 1992)


def test_tuple_sweep_m4_r4():
    rep = verify_tuple_identities(_seq(4), 4)
    assert rep.passed and rep.violations == 0
    assert rep.tuples == 15**3
    assert (rep.zero_word_tuples, rep.dual_nonzero_tuples, rep.shift_valued_tuples) == (631, 0, 2744)
    assert rep.even_walk_tuples == 435
    assert rep.tuples_unconstrained == 15**4
    # the free sweep populates the dual-but-unshifted class
    assert (
        rep.zero_word_unconstrained,
        rep.dual_nonzero_unconstrained,
        rep.shift_valued_unconstrained,
    ) == (2297, 1344, 46984)


def test_tuple_sweep_report_json_round_trip():
    rep = verify_tuple_identities(_seq(3), 2)
    record = json.loads(rep.to_json())
    assert record["n"] == 7 and record["r"] == 2
    assert record["violations"] == 0


def test_tuple_sweep_caps():
    with pytest.raises(CapabilityError):
        verify_tuple_identities(_seq(5), 2)
    with pytest.raises(CapabilityError):
        verify_tuple_identities(_seq(3), 5)
