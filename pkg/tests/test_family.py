import itertools
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from outcount.errors import InvalidInputError
from outcount.family import (CENSUS_HEADER, Certificate, census, census_csv, certify,
                             growth_csv, growth_experiment, make_phi_w, random_admissible_word,
                             random_positive_word)
from outcount.graph_maps import TrainTrack
from outcount.small_cancellation import Relator, max_piece

from oracles import family_lambda


def test_random_positive_word_determinism():
    assert random_positive_word(5, 42) == random_positive_word(5, 42)
    assert str(random_positive_word(1, 3)) in ("b", "c")
    assert random_positive_word(30, 1).is_positive()
    with pytest.raises(InvalidInputError):
        random_positive_word(0, 1)


def test_random_positive_word_balance():
    b = sum(str(random_positive_word(100, s)).count("b") for s in range(10_000))
    assert abs(b / 10 ** 6 - 0.5) < 0.02


def test_random_admissible_word():
    w = random_admissible_word(12, 5)
    assert all(s in str(w) for s in ("bb", "cc", "bc", "cb"))
    with pytest.raises(InvalidInputError):
        random_admissible_word(4, 0)


def test_make_phi_w_examples():
    assert [str(x) for x in make_phi_w("bc").images] == ["b", "c", "abc"]
    assert [str(x) for x in make_phi_w("bbccb").images] == ["b", "c", "abbccb"]
    for bad in ("", "abc", "bB"):
        with pytest.raises(InvalidInputError):
            make_phi_w(bad)


def test_certify_bbccb():
    cert = certify("bbccb")
    assert cert.conditions.c_prime_1_20 is False
    assert cert.whitehead_connected and cert.irreducible and cert.kb_bound_ok
    assert cert.train_track is TrainTrack.YES
    assert abs(cert.lam - 3.0796) < 1e-3
    assert not cert.passed_all
    assert cert.log_lambda_over_log_L == pytest.approx(math.log(cert.lam) / math.log(5))


def test_certify_bbcc():
    cert = certify("bbcc")
    assert cert.conditions.has_cb is False and not cert.passed_all


def test_certify_length_200_pinned():
    # a random word of length 200 has a repeated subword of length >= 10 (= 200/20),
    # so C'(1/20) fails; pinned from the first run of the full pipeline
    w = random_positive_word(200, 200)
    cert = certify(w)
    assert max_piece([Relator(w)]).max_piece_length == 12
    assert cert.conditions.subwords and cert.conditions.c_prime_1_20 is False
    assert cert.whitehead_connected and cert.train_track is TrainTrack.YES
    assert not cert.passed_all


def test_certify_long_word_passes():
    cert = certify(random_positive_word(1000, 0))
    assert cert.passed_all


def test_certify_gw_flag():
    cert = certify("bbccb", gw_check=True)
    assert cert.gw_c_prime_1_6 is not None
    assert "gw_c_prime_1_6" in cert.to_dict()
    assert "gw_c_prime_1_6" not in certify("bbccb").to_dict()


def test_certificate_json_round_trip():
    for seed in range(10):
        cert = certify(random_positive_word(15 + seed, seed), gw_check=seed % 2 == 0)
        data = json.loads(json.dumps(cert.to_dict()))
        assert Certificate.from_dict(data) == cert


def test_certificate_invariants():
    for seed in range(40):
        cert = certify(random_admissible_word(30, seed))
        assert cert.lam > 1 and cert.irreducible and cert.kb_bound_ok
        assert cert.train_track is TrainTrack.YES
        assert cert.whitehead_connected
        expected = (cert.conditions.all_satisfied and cert.whitehead_connected
                    and cert.irreducible and cert.kb_bound_ok)
        assert cert.passed_all == expected


@given(st.text("bc", min_size=3, max_size=60).filter(lambda s: "b" in s and "c" in s))
@settings(max_examples=50)
def test_lambda_between_extremes(w):
    L = len(w)
    lam = certify(w).lam
    assert family_lambda(L - 1, 1) - 1e-9 <= lam <= family_lambda(1, L - 1) + 1e-9
    assert lam == pytest.approx(family_lambda(w.count("b"), w.count("c")), abs=1e-6)


def test_census_length_5_exhaustive():
    (row,) = census([5], 3, master_seed=0)
    assert row.samples == 32
    assert row.pass_subwords == 4
    assert row.pass_cprime == 0 and row.pass_all == 0
    words = ["".join(t) for t in itertools.product("bc", repeat=5)]
    subword_hits = sorted(w for w in words if all(s in w for s in ("bb", "cc", "bc", "cb")))
    assert subword_hits == ["bbccb", "bccbb", "cbbcc", "ccbbc"]


def test_census_sampling_and_invariants():
    rows = census([60, 20], 20, master_seed=9, exhaustive=False)
    assert [r.L for r in rows] == [20, 60]
    for r in rows:
        assert r.pass_all <= r.pass_cprime <= r.pass_subwords <= r.samples == 20
        assert r.seed == 9
    assert census_csv(rows).splitlines()[0] == ",".join(CENSUS_HEADER)


def test_census_determinism_and_workers():
    a = census_csv(census([5, 40], 12, master_seed=3))
    b = census_csv(census([5, 40], 12, master_seed=3))
    c = census_csv(census([5, 40], 12, master_seed=3, workers=2))
    assert a == b == c
    assert a != census_csv(census([5, 40], 12, master_seed=4))


def test_census_rejects_bad_args():
    with pytest.raises(InvalidInputError):
        census([5], 0, 0)
    with pytest.raises(InvalidInputError):
        census([0], 1, 0)


def test_growth_experiment_ranges():
    points = {p.L: p for p in growth_experiment([10, 100], 50, master_seed=1)}
    assert points[10].mean_log_ratio > 0.4
    assert 0.7 <= points[100].mean_log_ratio <= 1.05
    text = growth_csv(list(points.values()))
    assert text.splitlines()[0] == "L,mean_lambda,mean_log_ratio"
    with pytest.raises(InvalidInputError):
        growth_experiment([1], 5, 0)
