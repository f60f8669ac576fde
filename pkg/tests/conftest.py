import random
from fractions import Fraction

import pytest

from itermaps import pl


def random_rational(rng, den_max=64):
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(0, den), den)


def random_pl(rng, max_interior=6):
    """Random canonical PL on [0,1] with rational knots."""
    n = rng.randint(0, max_interior)
    xs = sorted({Fraction(rng.randint(1, 127), 128) for _ in range(n)})
    knots = [(Fraction(0), random_rational(rng))]
    knots += [(x, random_rational(rng)) for x in xs]
    knots.append((Fraction(1), random_rational(rng)))
    return pl.new(knots)


def random_unit_map(rng, max_interior=4):
    """Random PL with f(0) = f(1) = 0 (so it maps into [0,1] and is iterable)."""
    n = rng.randint(1, max_interior)
    xs = sorted({Fraction(rng.randint(1, 127), 128) for _ in range(n)})
    knots = [(Fraction(0), Fraction(0))]
    knots += [(x, random_rational(rng)) for x in xs]
    knots.append((Fraction(1), Fraction(0)))
    return pl.new(knots)


@pytest.fixture
def rng():
    return random.Random(20240817)
