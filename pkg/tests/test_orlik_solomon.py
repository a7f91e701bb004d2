"""Orlik-Solomon algebra and the weighted exterior complex."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rescrit.arrangement import Arrangement, from_rows
from rescrit.catalog import entries, get
from rescrit.orlik_solomon import (
    OrlikSolomon,
    brute_force_aomoto_betti,
    brute_force_os_dimensions,
    euler_characteristic_magnitude,
    poincare_coefficients,
)

FROZEN_POINCARE = {
    "boolean-2": (1, 2, 1),
    "boolean-3": (1, 3, 3, 1),
    "pencil-3": (1, 3, 2),
    "pencil-4": (1, 4, 3),
    "pencil-5": (1, 5, 4),
    "pencil-6": (1, 6, 5),
    "braid-3": (1, 6, 11, 6),
    "x3": (1, 6, 12, 7),
    "monomial-deletion-1": (1, 5, 8, 4),
    "monomial-deletion-2": (1, 8, 19, 12),
    "tame-nonfree-2": (1, 6, 13, 8),
    "discriminantal-2-2": (1, 5, 6),
    "nontame-9": (1, 9, 30, 42, 20),
}


def test_poincare_frozen_catalog_values():
    for name, expected in FROZEN_POINCARE.items():
        assert poincare_coefficients(get(name).arrangement) == expected, name


def test_nbc_counting_matches_poincare():
    for entry in entries():
        A = entry.arrangement
        if not A.is_central:
            continue
        assert OrlikSolomon(A).nbc_sizes() == poincare_coefficients(A), entry.name


def test_brute_force_os_matches_nbc_on_small_entries():
    for name in ("boolean-2", "pencil-3", "pencil-4", "braid-3", "x3"):
        A = get(name).arrangement
        assert brute_force_os_dimensions(A) == poincare_coefficients(A), name


def test_expand_uses_the_circuit_relation(pencil3):
    os_ = OrlikSolomon(pencil3)
    # all three lines are a circuit, so e2^e3 = e1^e3 - e1^e2
    combo = os_.expand((1, 2))
    assert combo == {(0, 2): Fraction(1), (0, 1): Fraction(-1)}
    with pytest.raises(ValueError):
        os_.expand((2, 1))


def test_multiply_generator_signs(pencil3):
    os_ = OrlikSolomon(pencil3)
    # e2 ^ e1 = -(e1 ^ e2), already an NBC set
    assert os_.multiply_generator(1, (0,)) == {(0, 1): Fraction(-1)}
    # squaring a generator dies
    assert os_.multiply_generator(0, (0,)) == {}


def test_frozen_betti_example(pencil3):
    lam = pencil3.weights([1, 1, -2])
    os_ = OrlikSolomon(pencil3)
    assert os_.aomoto_betti(lam) == (0, 1, 1)
    assert os_.least_nonvanishing(lam) == 1
    assert brute_force_aomoto_betti(pencil3, lam) == (0, 1, 1)


def test_nonzero_total_weight_is_acyclic():
    rng = random.Random(3)
    for name in ("pencil-3", "braid-3", "x3", "boolean-3"):
        A = get(name).arrangement
        os_ = OrlikSolomon(A)
        for _ in range(3):
            lam = [Fraction(rng.randint(-9, 9)) for _ in range(A.size)]
            if sum(lam) == 0:
                lam[0] += 1
            assert set(os_.aomoto_betti(lam)) == {0}, name


def test_contraction_homotopy_identity():
    # boundary(omega * x) + omega * boundary(x) = (sum of weights) x
    rng = random.Random(11)
    for name in ("pencil-3", "braid-3", "x3"):
        A = get(name).arrangement
        os_ = OrlikSolomon(A)
        sizes = os_.nbc_sizes()
        lam = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(A.size)]
        total = sum(lam)
        for p in range(1, len(sizes) - 1):
            omega_p = os_.omega_rows(lam, p)
            boundary_up = os_.boundary_rows(p + 1)
            boundary_p = os_.boundary_rows(p)
            omega_down = os_.omega_rows(lam, p - 1)
            dim = sizes[p]
            for i in range(dim):
                for j in range(dim):
                    first = sum(
                        omega_p[i][k] * boundary_up[k][j]
                        for k in range(sizes[p + 1])
                    )
                    second = sum(
                        boundary_p[i][k] * omega_down[k][j]
                        for k in range(sizes[p - 1])
                    )
                    expected = total if i == j else 0
                    assert first + second == expected


def test_differential_squares_to_zero():
    rng = random.Random(5)
    for name in ("braid-3", "x3", "monomial-deletion-1"):
        A = get(name).arrangement
        os_ = OrlikSolomon(A)
        sizes = os_.nbc_sizes()
        lam = [Fraction(rng.randint(-7, 7)) for _ in range(A.size)]
        for p in range(len(sizes) - 2):
            step = os_.omega_rows(lam, p)
            step_up = os_.omega_rows(lam, p + 1)
            for i in range(sizes[p]):
                for j in range(sizes[p + 2]):
                    entry = sum(
                        step[i][k] * step_up[k][j] for k in range(sizes[p + 1])
                    )
                    assert entry == 0


@settings(max_examples=20, deadline=None)
@given(st.permutations(list(range(6))), st.integers(0, 10_000))
def test_betti_order_invariance(perm, seed):
    A = get("x3").arrangement
    rng = random.Random(seed)
    lam = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(6)]
    reordered = Arrangement([A.forms[i] for i in perm])
    betti = OrlikSolomon(A).aomoto_betti(lam)
    betti_perm = OrlikSolomon(reordered).aomoto_betti([lam[i] for i in perm])
    assert betti == betti_perm


@settings(max_examples=20, deadline=None)
@given(
    st.fractions(min_value=-9, max_value=9, max_denominator=4).filter(lambda c: c != 0),
    st.integers(0, 10_000),
)
def test_betti_scaling_invariance(scale, seed):
    A = get("pencil-4").arrangement
    rng = random.Random(seed)
    lam = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)]
    os_ = OrlikSolomon(A)
    assert os_.aomoto_betti(lam) == os_.aomoto_betti([scale * v for v in lam])


def test_alternating_sum_vanishes_for_central():
    rng = random.Random(23)
    for entry in entries():
        A = entry.arrangement
        if not A.is_central or A.size > 8:
            continue
        lam = [Fraction(rng.randint(-9, 9)) for _ in range(A.size)]
        betti = OrlikSolomon(A).aomoto_betti(lam)
        assert sum((-1) ** p * b for p, b in enumerate(betti)) == 0, entry.name


def test_euler_magnitude():
    assert euler_characteristic_magnitude(get("discriminantal-2-2").arrangement) == 2
    # central complements fiber over the torus, so chi vanishes
    assert euler_characteristic_magnitude(get("x3").arrangement) == 0


def test_brute_force_handles_affine():
    A = from_rows([[1, 0], [1, 0], [0, 1]], constants=[0, -1, 0])
    betti = brute_force_aomoto_betti(A, (Fraction(1), Fraction(2), Fraction(3)))
    assert len(betti) == A.rank + 1


def test_rejects_affine_nbc():
    affine = get("discriminantal-2-2").arrangement
    with pytest.raises(ValueError):
        OrlikSolomon(affine)
