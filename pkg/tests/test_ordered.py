import random
from fractions import Fraction

import pytest

from slopestab import (
    DomainError,
    OrderedSpace,
    OrderedVector,
    Ordering,
    axiom_check_scaling,
    lex_compare,
    separation_margin,
)

from helpers import rand_fraction, rand_vector


def vec(*coords):
    return OrderedVector.of(coords)


def test_lex_compare_examples():
    assert lex_compare(vec(0, 0), vec(0, 0)) is Ordering.EQUAL
    assert lex_compare(vec(1, -5), vec(1, -4)) is Ordering.LESS
    assert lex_compare(vec(0, 1), vec(Fraction(1, 2), 0)) is Ordering.LESS


def test_lex_compare_dimension_mismatch():
    with pytest.raises(DomainError):
        lex_compare(vec(1), vec(1, 2))


def test_floats_rejected():
    with pytest.raises(DomainError):
        OrderedVector.of([0.5])


def test_totality_random():
    rng = random.Random(101)
    for _ in range(10_000):
        dim = rng.randint(1, 3)
        u, v = rand_vector(rng, dim), rand_vector(rng, dim)
        outcomes = [
            lex_compare(u, v) is Ordering.LESS,
            lex_compare(u, v) is Ordering.EQUAL,
            lex_compare(u, v) is Ordering.GREATER,
        ]
        assert sum(outcomes) == 1


def test_transitivity_random():
    rng = random.Random(202)
    for _ in range(10_000):
        dim = rng.randint(1, 3)
        u, v, w = (rand_vector(rng, dim) for _ in range(3))
        if u <= v and v <= w:
            assert u <= w


def test_scaling_axiom_examples():
    space = OrderedSpace(2)
    assert axiom_check_scaling(space, [(2, vec(1, 0))])
    assert axiom_check_scaling(space, [(Fraction(1, 3), vec(0, 5))])
    assert axiom_check_scaling(space, [])


def test_scaling_axiom_random():
    rng = random.Random(303)
    space = OrderedSpace(3)
    samples = []
    while len(samples) < 500:
        a = rand_fraction(rng, lo=1)
        r = rand_vector(rng, 3)
        if a > 0 and r > OrderedVector.zero(3):
            samples.append((a, r))
    assert axiom_check_scaling(space, samples)


def grid_margin_holds(space, r_prime, r, eps):
    """Perturbation oracle: every sup-norm grid point within eps of r_prime
    (step eps/4) stays below r."""
    step = eps / 4
    offsets = [step * k for k in range(-4, 5)]
    import itertools

    for delta in itertools.product(offsets, repeat=space.dimension):
        moved = r_prime + OrderedVector.of(delta)
        if not moved < r:
            return False
    return True


def test_separation_margin_examples():
    space = OrderedSpace(2)
    eps = separation_margin(space, [(vec(0, 0), vec(1, 0))])
    assert eps == Fraction(1, 2)
    assert grid_margin_holds(space, vec(0, 0), vec(1, 0), eps)

    assert separation_margin(space, [(vec(0, 0), vec(0, 1))]) is None

    eps = separation_margin(space, [(vec(1, 9), vec(2, 0))])
    assert eps == Fraction(1, 2)
    assert grid_margin_holds(space, vec(1, 9), vec(2, 0), eps)


def test_separation_margin_lex_failure_witness():
    # No positive margin can exist when the first coordinates agree: bumping
    # coordinate 0 by any delta > 0 overtakes.
    space = OrderedSpace(2)
    for delta in (Fraction(1), Fraction(1, 10), Fraction(1, 1000)):
        assert vec(0, 0) + vec(delta, 0) > vec(0, 1)


def test_separation_margin_precondition():
    space = OrderedSpace(1)
    with pytest.raises(DomainError):
        separation_margin(space, [(vec(1), vec(0))])


def test_separation_margin_random_verified_by_grid():
    rng = random.Random(404)
    space = OrderedSpace(2)
    pairs = []
    while len(pairs) < 25:
        u, v = rand_vector(rng, 2), rand_vector(rng, 2)
        if u < v:
            pairs.append((u, v))
    eps = separation_margin(space, pairs)
    if eps is not None:
        assert eps > 0
        for r_prime, r in pairs:
            assert grid_margin_holds(space, r_prime, r, eps)


def test_norm_is_sup():
    space = OrderedSpace(3)
    assert space.norm(vec(1, -5, Fraction(7, 2))) == 5
