import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from outcount.errors import InvalidInputError, ProperPowerError
from outcount.family import random_positive_word
from outcount.small_cancellation import (Relator, c_prime_verdict, check_remark_conditions,
                                         gw_one_relator, max_piece, satisfies_c_prime,
                                         symmetrized_closure)
from outcount.words import Word, invert, rotate

from oracles import inv_str, naive_max_piece, reduce_str


def R(s):
    return Relator.parse(s)


def test_symmetrized_closure_examples():
    assert len(symmetrized_closure(R("abAB"))) == 8
    assert {str(w) for w in symmetrized_closure(R("ab"))} == {"ab", "ba", "BA", "AB"}
    with pytest.raises(ProperPowerError):
        symmetrized_closure(R("abab"))


def test_relator_validation():
    with pytest.raises(InvalidInputError):
        R("")
    with pytest.raises(InvalidInputError):
        R("abA")


@pytest.mark.parametrize("rel,expected", [("abAB", 1), ("abABcdCD", 1), ("ab", 0)])
def test_max_piece_examples(rel, expected):
    report = max_piece([R(rel)])
    assert report.max_piece_length == expected == naive_max_piece(rel)
    assert report.relator_length == len(rel)
    if expected:
        piece, u, v = report.witness
        assert u != v
        assert u.codes[:len(piece)] == v.codes[:len(piece)] == piece.codes
    else:
        assert report.witness is None


def test_max_piece_propagates_proper_power():
    with pytest.raises(ProperPowerError):
        max_piece([R("abab")])


@pytest.mark.parametrize("rel,lam,expected", [
    ("abAB", "1/6", False), ("abABcdCD", "1/6", True), ("abAB", "1/3", True)])
def test_c_prime_examples(rel, lam, expected):
    assert satisfies_c_prime([R(rel)], lam) is expected


def test_c_prime_is_exact_at_boundary():
    # the only piece is "a" (two rotations start with it); 20*1 < 1*20 is false
    rel = R("abcdefghijklmnopqrsa")
    assert naive_max_piece(str(rel)) == 1
    verdict = c_prime_verdict([rel], Fraction(1, 20))
    assert not verdict.holds
    assert verdict.inequality() == "20*1 = 20 >= 20 = 1*20"
    assert satisfies_c_prime([R("abcdefghijklmnopqrsta")], Fraction(1, 20))


def test_c_prime_parameter_range():
    for bad in ("0", "3/2", "-1/6", "x"):
        with pytest.raises(InvalidInputError):
            satisfies_c_prime([R("ab")], bad)


def test_verdict_inequality_text():
    v = c_prime_verdict([R("abAB")], "1/6")
    assert v.inequality() == "6*1 = 6 >= 4 = 1*4"
    v = c_prime_verdict([R("abABcdCD")], "1/6")
    assert v.inequality() == "6*1 = 6 < 8 = 1*8"


def test_multi_relator_pieces():
    rs = [R("abAB"), R("cdCD")]
    assert max_piece(rs).max_piece_length == 1
    rs = [R("abcd"), R("abce")]
    assert max_piece(rs).max_piece_length == 3
    assert not satisfies_c_prime(rs, "1/2")
    assert satisfies_c_prime(rs, 1)


def test_gw_one_relator_fixture():
    r = gw_one_relator("bc")
    assert str(r) == "TTTatAtAtA"
    assert len(r) == 10
    # independent substitution oracle
    b, c = "Tat", "TTatt"
    rhs = reduce_str("a" + b + c)
    assert str(r) == reduce_str("TTTattt" + inv_str(rhs))


def test_gw_one_relator_b():
    r = gw_one_relator("b")
    assert str(r) == reduce_str("TTTattt" + inv_str("aTat"))
    assert str(r) == "TTTattAtA"


def _exponent_sums(text):
    a = text.count("a") - text.count("A")
    t = text.count("t") - text.count("T")
    return a, t


@given(st.text("bc", min_size=1, max_size=40))
@settings(max_examples=100)
def test_gw_exponent_sums(w):
    r = gw_one_relator(w)
    a, t = _exponent_sums(str(r))
    assert t == 0 and a == -len(w)
    assert r.word.is_cyclically_reduced()
    sub = {"b": "Tat", "c": "TTatt"}
    assert str(r) == reduce_str("TTTattt" + inv_str(reduce_str("a" + "".join(sub[x] for x in w))))


def test_gw_rejects_bad_words():
    for bad in ("", "abc", "bB"):
        with pytest.raises(InvalidInputError):
            gw_one_relator(bad)


def test_remark_conditions_examples():
    cond = check_remark_conditions("bbccb")
    assert cond.positive and cond.has_bb and cond.has_cc and cond.has_bc and cond.has_cb
    assert cond.c_prime_1_20 is False
    assert check_remark_conditions("bbcc").has_cb is False
    assert check_remark_conditions("bBc").positive is False
    assert check_remark_conditions("bcbc").is_proper_power
    assert check_remark_conditions("bcbc").c_prime_1_20 is None
    with pytest.raises(InvalidInputError):
        check_remark_conditions("abc")


# properties -----------------------------------------------------------------

relator_text = st.text("aAbB", min_size=1, max_size=14).map(reduce_str).filter(
    lambda s: s and s[0] != s[-1].swapcase() and (s + s).find(s, 1) == len(s))


@given(relator_text)
@settings(max_examples=100)
def test_max_piece_matches_naive(s):
    assert max_piece([R(s)]).max_piece_length == naive_max_piece(s)


@given(relator_text, st.integers(0, 30))
@settings(max_examples=60)
def test_piece_symmetries(s, j):
    r = R(s)
    base = max_piece([r]).max_piece_length
    assert max_piece([Relator(invert(r.word))]).max_piece_length == base
    assert max_piece([Relator(Word(rotate(r.word.codes, j), r.word.rank))]).max_piece_length == base


@given(relator_text, st.fractions(Fraction(1, 50), 1), st.fractions(Fraction(1, 50), 1))
@settings(max_examples=60)
def test_c_prime_monotone(s, l1, l2):
    lo, hi = sorted((l1, l2))
    if satisfies_c_prime([R(s)], lo):
        assert satisfies_c_prime([R(s)], hi)


def test_random_long_words_have_short_pieces():
    hits = 0
    for seed in range(100):
        w = random_positive_word(1000, seed)
        if max_piece([Relator(w)]).max_piece_length <= 3 * math.log2(1000):
            hits += 1
    assert hits >= 90
