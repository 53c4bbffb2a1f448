from fractions import Fraction

import pytest

from rbprelie import PreLieAlgebra, RBPreLieAlgebra, regular_bimodule
from rbprelie.algebras import zero_table
from rbprelie.linalg import RationalMatrix


def make_a0() -> RBPreLieAlgebra:
    """Dimension 1, zero product, zero operator, weight 0."""
    return RBPreLieAlgebra(
        PreLieAlgebra(1, zero_table(1, 1, 1)), Fraction(0), RationalMatrix.zeros(1, 1)
    )


def make_a1(weight=0, operator=None) -> RBPreLieAlgebra:
    """Dimension 2 with e1·e1 = e2 and the given operator (default zero)."""
    table = [[[Fraction(0), Fraction(0)] for _ in range(2)] for _ in range(2)]
    table[0][0] = [Fraction(0), Fraction(1)]
    alg = PreLieAlgebra(2, tuple(tuple(tuple(v) for v in row) for row in table))
    op = operator if operator is not None else RationalMatrix.zeros(2, 2)
    return RBPreLieAlgebra(alg, Fraction(weight), op)


def make_a1n(weight=1) -> RBPreLieAlgebra:
    """make_a1 with T(e1) = e2, T(e2) = 0."""
    return make_a1(weight, RationalMatrix.from_cols([[0, 1], [0, 0]], 2))


def make_affine() -> RBPreLieAlgebra:
    """Dimension 2 with e1·e2 = e2 only (non-associative), zero operator."""
    table = [[[Fraction(0), Fraction(0)] for _ in range(2)] for _ in range(2)]
    table[0][1] = [Fraction(0), Fraction(1)]
    alg = PreLieAlgebra(2, tuple(tuple(tuple(v) for v in row) for row in table))
    return RBPreLieAlgebra(alg, Fraction(0), RationalMatrix.zeros(2, 2))


def make_idempotent(weight=1) -> RBPreLieAlgebra:
    """Dimension 1 with e1·e1 = e1; rigid at weight 1 with zero operator."""
    return RBPreLieAlgebra(
        PreLieAlgebra(1, (((Fraction(1),),),)), Fraction(weight), RationalMatrix.zeros(1, 1)
    )


@pytest.fixture
def a0():
    return make_a0()


@pytest.fixture
def a1n():
    return make_a1n()


@pytest.fixture
def a0_reg(a0):
    return regular_bimodule(a0)


@pytest.fixture
def a1n_reg(a1n):
    return regular_bimodule(a1n)
