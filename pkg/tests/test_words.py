"""Tests for word expansion of the recursive bound."""

import pytest

from app.services.bounds import bound_dp, feasible
from app.services.words import (
    Letter,
    Word,
    check_lemma21,
    check_nu_injectivity,
    expand_words,
    partition_by_B1,
    placement,
    step,
    words_to_json,
)
from app.utils.errors import InfeasibleStateError

A, B0, B1 = Letter.A, Letter.B0, Letter.B1


def names(words):
    return [str(w) for w in words]


def test_step_moves():
    assert step((5, 2, 2), A) == (3, 1, 2)
    assert step((5, 2, 2), B0) == (3, 2, 2)
    assert step((5, 2, 2), B1) == (2, 1, 1)


def test_words_of_smallest_state():
    words = expand_words(2, 2, 2, 1)

    assert names(words) == ["A", "B0A", "B0B1"]
    assert words[1].trace == ((1, 1, 1), (0, 0, 1))


def test_words_of_square_stratum():
    words = expand_words(4, 4, 4, 2)

    assert names(words) == ["AA", "AB1", "B1A", "B1B1"]
    assert {l: names(part) for l, part in partition_by_B1(words).items()} == {
        0: ["AA"],
        1: ["AB1", "B1A"],
        2: ["B1B1"],
    }


def test_empty_word_for_b_zero():
    (word,) = expand_words(2, 2, 1, 0)

    assert len(word) == 0
    assert str(word) == "ε"
    assert word.final == (1, 0, 2)
    assert partition_by_B1([word]) == {0: [word]}


def test_infeasible_state_rejected():
    with pytest.raises(InfeasibleStateError):
        expand_words(4, 4, 4, 3)


def test_word_equality_ignores_trace():
    first = Word.from_letters([A], (2, 1, 1))

    assert first == Word((A,), (2, 1, 1), ())
    assert first.b1_count == 0


def test_placement():
    word = Word.from_letters([B0, A, B1, A], (9, 3, 3))

    assert placement(word) == (2, 4)


def test_nu_injectivity():
    assert check_nu_injectivity(expand_words(2, 2, 2, 1))
    assert check_nu_injectivity(expand_words(4, 4, 4, 2))
    assert not check_nu_injectivity([[B0], [B1]])


def test_binomial_report_smallest_state():
    report = check_lemma21(2, 2, 2, 1)

    assert report.ok
    assert report.total == 3
    first, last = report.levels
    assert (first.size, first.size_bound, first.max_length, first.length_bound) == (2, 2, 2, 2)
    assert first.size_margin == 0
    assert (last.size, last.size_bound, last.length_bound) == (1, 1, None)
    assert report.failures() == []


def test_binomial_report_b_zero():
    report = check_lemma21(3, 3, 2, 0)

    assert report.ok
    assert report.total == 1
    assert len(report.levels) == 1


@pytest.mark.parametrize("m", [2, 3])
def test_square_strata_reach_power_of_two(m):
    M = m * m
    report = check_lemma21(M, M, M, m)

    assert report.ok
    assert report.total == 2**m


def _check_grid(M_max):
    for M in range(1, M_max + 1):
        for i in range(1, M + 1):
            for a in range(M + 1):
                for b in range(i + 1):
                    if not feasible(i, M, a, b):
                        continue
                    report = check_lemma21(i, M, a, b)
                    assert report.total == bound_dp(i, M, a, b), (i, M, a, b)
                    assert report.ok, report.failures()


def test_word_count_equals_dp():
    _check_grid(7)


@pytest.mark.slow
def test_word_count_equals_dp_full():
    _check_grid(10)


def test_words_to_json():
    payload = words_to_json(expand_words(2, 2, 2, 1))

    assert payload[0] == {
        "word": "A",
        "letters": ["A"],
        "l": 0,
        "start": [2, 1, 1],
        "trace": [[1, 0, 1]],
    }
    assert [w["l"] for w in payload] == [0, 0, 1]
