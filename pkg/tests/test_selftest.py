"""The randomized suite runner: reproducibility and generators."""

import random

import pytest

from pmfiber import FIELD_QI, SUITES, is_irreducible, run_selftest
from pmfiber.scalars import conj, is_rational
from pmfiber.selftest import (
    planted_block_upper,
    planted_cut_instance,
    rand_full_support,
    rand_hermitian,
    rand_symmetric_irreducible,
)
from pmfiber.fiber import is_cut, swap_factors_degenerate
from pmfiber.structure import frobenius_form


def test_all_suites_green_small():
    results = run_selftest(n=4, trials=3, seed=9)
    assert [r.name for r in results] == list(SUITES)
    assert all(r.ok for r in results), [
        (r.name, r.messages) for r in results if not r.ok
    ]


def test_seeded_runs_are_reproducible():
    first = run_selftest(n=4, trials=2, seed=5, suites=["dodgson", "cut_witness"])
    second = run_selftest(n=4, trials=2, seed=5, suites=["dodgson", "cut_witness"])
    assert [(r.name, r.failures) for r in first] == [
        (r.name, r.failures) for r in second
    ]


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_selftest(suites=["nope"])


def test_planted_cut_instances_are_cuts():
    rng = random.Random(61)
    for _ in range(10):
        n = rng.randint(4, 6)
        A, X = planted_cut_instance(rng, n)
        assert is_cut(A, X)
        assert is_irreducible(A)
        # every planted instance is one the factor swap can separate
        assert not swap_factors_degenerate(A, X)


def test_planted_block_upper_counts():
    rng = random.Random(62)
    for _ in range(10):
        n = rng.randint(3, 7)
        A, m = planted_block_upper(rng, n)
        assert len(frobenius_form(A).blocks) == m


def test_rand_generators_shapes():
    rng = random.Random(63)
    A = rand_full_support(rng, 4)
    assert all(A.entries[i][j] for i in range(4) for j in range(4))
    S = rand_symmetric_irreducible(rng, 4)
    assert S.entries == S.transpose().entries
    H = rand_hermitian(rng, 4, )
    for i in range(4):
        assert is_rational(H.entries[i][i])
        for j in range(4):
            assert H.entries[i][j] == conj(H.entries[j][i])
    assert H.field == FIELD_QI
