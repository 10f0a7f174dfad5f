"""Gauss sums: direct values, shift transforms, and the magnitude bound."""

import math
import random

import numpy as np
import pytest

from sqsieve import backend
from sqsieve.gauss import (
    GaussSumSpec,
    bound_excess,
    gauss_bound_check,
    gauss_direct,
    gauss_transform,
    gauss_transform_even,
    gauss_transform_odd,
    transform_deviation,
)

from oracles import gauss_brute


def test_direct_reference_values():
    assert gauss_direct(GaussSumSpec(1, 0, 1)) == pytest.approx(1.0)
    assert abs(gauss_direct(GaussSumSpec(1, 0, 2))) < 1e-14
    g3 = gauss_direct(GaussSumSpec(1, 0, 3))
    assert g3 == pytest.approx(1j * math.sqrt(3), abs=1e-13)
    g4 = gauss_direct(GaussSumSpec(1, 0, 4))
    assert g4 == pytest.approx(2 + 2j, abs=1e-13)


def test_direct_matches_brute_oracle():
    rng = random.Random(71)
    for _ in range(150):
        c = rng.randint(1, 60)
        a = rng.randint(0, 3 * c)
        l = rng.randint(-2 * c, 2 * c)
        got = gauss_direct(GaussSumSpec(a, l, c))
        want = gauss_brute(a % c, l % c, c)
        assert abs(got - want) <= 1e-11 * c


def test_row_kernel_matches_direct():
    for c in (1, 2, 7, 24, 45):
        for a in range(1, c + 1):
            if math.gcd(a, c) != 1:
                continue
            row = backend.gauss_row(a, c)
            for l in {0, 1 % c, c // 2, c - 1}:
                assert abs(complex(row[l]) - gauss_direct(GaussSumSpec(a, l, c))) <= 1e-11 * c


def test_shift_periodicity_in_l():
    for c in range(1, 31):
        for a in range(1, c + 1):
            if math.gcd(a, c) != 1:
                continue
            for l in (0, 1, c - 1):
                g1 = gauss_direct(GaussSumSpec(a, l, c))
                g2 = gauss_direct(GaussSumSpec(a, l + c, c))
                assert abs(g1 - g2) == 0  # identical after canonical reduction


def test_transform_even_examples():
    s = GaussSumSpec(1, 0, 5)
    assert gauss_transform_even(s) == pytest.approx(gauss_direct(s), abs=1e-13)
    s = GaussSumSpec(1, 2, 5)
    assert gauss_transform_even(s) == pytest.approx(gauss_direct(s), abs=1e-12)
    s = GaussSumSpec(3, 4, 7)
    assert gauss_transform_even(s) == pytest.approx(gauss_direct(s), abs=1e-12)


def test_transform_odd_examples():
    s = GaussSumSpec(1, 1, 4)
    assert gauss_transform_odd(s) == pytest.approx(gauss_direct(s), abs=1e-13)
    s = GaussSumSpec(1, 3, 5)
    assert gauss_transform_odd(s) == pytest.approx(gauss_direct(s), abs=1e-12)
    s = GaussSumSpec(2, 5, 9)
    assert gauss_transform_odd(s) == pytest.approx(gauss_direct(s), abs=1e-12)


def test_transform_rejects_bad_inputs():
    with pytest.raises(ValueError):
        gauss_transform_even(GaussSumSpec(2, 0, 4))  # gcd(a, c) = 2
    with pytest.raises(ValueError):
        gauss_transform_even(GaussSumSpec(1, 1, 4))  # odd l
    with pytest.raises(ValueError):
        gauss_transform_odd(GaussSumSpec(1, 2, 4))  # even l
    with pytest.raises(ValueError):
        GaussSumSpec(1, 0, 0)


def test_transform_random_against_brute():
    rng = random.Random(73)
    for _ in range(100):
        c = rng.randint(1, 50)
        a = rng.choice([x for x in range(1, c + 1) if math.gcd(x, c) == 1])
        l = rng.randint(0, c - 1)
        spec = GaussSumSpec(a, l, c)
        want = gauss_brute(a, l, c)
        assert abs(gauss_transform(spec) - want) <= 1e-10 * max(1.0, abs(want))


def test_transform_sweep_small():
    assert transform_deviation(40) <= 1e-10


def test_bound_sweep_small():
    assert gauss_bound_check(20)
    assert bound_excess(20) <= 1e-9


def test_zero_l_magnitudes_are_classical():
    # |G(a,0;c)| lands on {0, sqrt(c), sqrt(2c)}: a consistency probe
    for c in range(1, 81):
        targets = (0.0, math.sqrt(c), math.sqrt(2 * c))
        for a in range(1, c + 1):
            if math.gcd(a, c) != 1:
                continue
            mag = abs(gauss_direct(GaussSumSpec(a, 0, c)))
            assert min(abs(mag - t) for t in targets) <= 1e-9
