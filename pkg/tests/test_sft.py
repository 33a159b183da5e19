import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import language as oracle_language, periodic_words
from shiftflip.errors import DomainError, PreconditionError, SearchBoundError
from shiftflip.points import EventuallyPeriodicPoint
from shiftflip.sft import (SftPresentation, count_language, count_periodic_points,
                           ep_point_admissible, is_infinite, is_irreducible, iter_connectors,
                           language, periodic_admissible, periodic_points, shortest_connector,
                           synchronizing_block)
from shiftflip.words import word_str


def test_golden_mean_counts_are_fibonacci(golden):
    fib = [2, 3]
    while len(fib) < 15:
        fib.append(fib[-1] + fib[-2])
    assert [count_language(golden, n) for n in range(1, 16)] == fib


def test_language_matches_oracle(golden, full2):
    for X, forb in ((golden, ["11"]), (full2, [])):
        for n in range(1, 11):
            assert sorted(word_str(w) for w in language(X, n)) == oracle_language("01", forb, n)
            assert count_language(X, n) == len(language(X, n))


def test_two_step_space():
    X = SftPresentation.from_forbidden("ab", 2, ["aaa", "bab"])
    for n in range(1, 10):
        assert sorted(word_str(w) for w in language(X, n)) == \
            oracle_language("ab", ["aaa", "bab"], n)
        assert count_periodic_points(X, n) == len(periodic_words("ab", ["aaa", "bab"], n))


def test_periodic_points_match_oracle(golden):
    for n in range(1, 12):
        got = sorted(word_str(p.word) for p in periodic_points(golden, n))
        assert got == periodic_words("01", ["11"], n)


def test_golden_periodic_counts_are_lucas(golden):
    lucas = [1, 3]
    while len(lucas) < 14:
        lucas.append(lucas[-1] + lucas[-2])
    assert [count_periodic_points(golden, n) for n in range(1, 14)] == lucas[:13]


def test_irreducibility_and_size(golden):
    assert is_irreducible(golden) and is_infinite(golden)
    cycle = SftPresentation.from_forbidden("ab", 1, ["aa", "bb"])
    assert is_irreducible(cycle) and not is_infinite(cycle)
    reducible = SftPresentation.from_forbidden("ab", 1, ["ba"])
    assert not is_irreducible(reducible)
    with pytest.raises(PreconditionError):
        is_infinite(reducible)
    with pytest.raises(PreconditionError):
        synchronizing_block(reducible)
    assert synchronizing_block(golden) == ("0",)


def test_connectors(golden):
    assert list(iter_connectors(golden, "0", "0", 0)) == [()]
    assert list(iter_connectors(golden, "1", "1", 1)) == [("0",)]
    assert list(iter_connectors(golden, "0", "0", 2)) == [("0", "0"), ("0", "1"), ("1", "0")]
    assert shortest_connector(golden, "1", "1", 5) == ("0",)
    with pytest.raises(SearchBoundError):
        shortest_connector(golden, "1", "1", 0)


@settings(max_examples=60, deadline=None)
@given(st.text("01", min_size=1, max_size=4), st.text("01", min_size=1, max_size=4),
       st.integers(0, 5))
def test_connectors_are_exactly_the_admissible_fillers(pre, suf, n):
    X = SftPresentation.from_forbidden("01", 1, ["11"])
    got = [word_str(w) for w in iter_connectors(X, pre, suf, n)]
    want = [w for w in oracle_language("01", ["11"], n + len(pre) + len(suf))
            if w.startswith(pre) and w.endswith(suf)]
    assert got == sorted(w[len(pre):len(w) - len(suf)] for w in want)


def test_point_admissibility(golden):
    assert periodic_admissible(golden, "010")
    assert periodic_admissible(golden, "01")
    assert not periodic_admissible(golden, "1")
    assert not periodic_admissible(golden, "0110")
    p = EventuallyPeriodicPoint(("0",), ("1", "0", "1"), ("0",), 0)
    assert ep_point_admissible(golden, p)
    assert not ep_point_admissible(golden, EventuallyPeriodicPoint(("1",), (), ("0",), 0))


def test_json_round_trip(golden):
    obj = json.loads(golden.dumps())
    assert SftPresentation.from_json(obj) == golden


def test_bad_presentations():
    with pytest.raises(DomainError):
        SftPresentation.from_forbidden("01", 1, ["111"])
    with pytest.raises(DomainError):
        count_language(SftPresentation.full_shift("01"), 0)
