import logging
from fractions import Fraction

import pytest

from core.laurent import LaurentPoly, poly_sum

# Configure basic logging for testing feedback
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)

U = LaurentPoly.u(1, 0)
ONE = LaurentPoly.constant(1)


def test_arithmetic():
    logger.info("--- Testing Laurent Arithmetic ---")
    assert (U - 1) * (U + 1) == U ** 2 - 1, "(u - 1)(u + 1) = u^2 - 1"
    assert (U - U).is_zero(), "Cancelled terms must not be stored"
    assert U * 0 == LaurentPoly(1)
    assert 2 * U == U + U
    assert 1 - U == -(U - 1)
    assert poly_sum([U, U, ONE], 1) == 2 * U + 1
    logger.info("Arithmetic OK.")


def test_monomial_inverse():
    logger.info("--- Testing Monomial Inverses ---")
    m = LaurentPoly.monomial((3,), Fraction(2))
    assert m * m.inverse_monomial() == ONE
    assert U ** -1 == LaurentPoly.monomial((-2,))
    with pytest.raises(ValueError):
        (U + 1).inverse_monomial()
    logger.info("Monomial inverses OK.")


def test_evaluation():
    logger.info("--- Testing Evaluation ---")
    v = LaurentPoly.monomial((1,))
    assert abs(v.evaluate([4]) - 2.0) < 1e-12, "v = sqrt(u)"
    assert (U * U - U).evaluate_exact([3]) == 6
    assert (U ** -1).evaluate_exact([Fraction(3, 2)]) == Fraction(2, 3)
    with pytest.raises(ValueError):
        v.evaluate_exact([4])

    two = LaurentPoly.u(2, 1) + LaurentPoly.u(2, 0, -1)
    assert two.evaluate([4, 9]) == pytest.approx(9.25)
    logger.info("Evaluation OK.")


def test_variable_mismatch():
    logger.info("--- Testing Variable Count Checks ---")
    with pytest.raises(ValueError):
        LaurentPoly.constant(1) + LaurentPoly.constant(2)
    with pytest.raises(ValueError):
        LaurentPoly(2, {(1,): 1})
    logger.info("Variable count checks OK.")


def test_serialization():
    logger.info("--- Testing Serialization ---")
    p = LaurentPoly(2, {(2, -1): Fraction(1, 3), (0, 0): -1})
    data = p.to_dict()
    assert data == {"0,0": "-1", "2,-1": "1/3"}, f"Unexpected encoding {data}"
    assert LaurentPoly.from_dict(2, data) == p
    assert hash(LaurentPoly.from_dict(2, data)) == hash(p)
    logger.info("Serialization OK.")


if __name__ == "__main__":
    test_arithmetic()
    test_monomial_inverse()
    test_evaluation()
    test_variable_mismatch()
    test_serialization()
    logger.info("All Laurent polynomial tests passed.")
