import logging
import math
from fractions import Fraction

import pytest

from core.errors import DomainError, UsageError
from core.weyl import get_weyl_group
from spectral.bounds import (
    bipartite_norm_bound,
    d_constant,
    diameter_bounds,
    gelfand_radius_bounds,
    norm_bound_hbeta,
    norm_bound_hw,
    oh_p0,
    refined_norm_bound_hbeta,
)

# Configure basic logging for testing feedback
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)


def test_d_constant():
    logger.info("--- Testing the Constant D(q, l) ---")
    assert d_constant("A1", 2, 3) == 320, "|W0| 2 q^4 (l + 2) for A1"
    assert isinstance(d_constant("A1", 2, 3), Fraction)
    assert d_constant("A1", "3/2", 0) == Fraction(2 * 2 * 81 * 2, 16)
    assert d_constant("A2", 1, 0) == 6 * 8 * 64
    with pytest.raises(DomainError):
        d_constant("A1", 0, 1)
    with pytest.raises(DomainError):
        d_constant("A1", 2, -1)
    logger.info("D(q, l) OK.")


def test_norm_bounds():
    logger.info("--- Testing Norm Bounds ---")
    group = get_weyl_group("A1")
    t2 = group.translation((2,))
    report = norm_bound_hw("A1", 2, t2, 2)
    assert report.inputs["w"] == group.word_string(t2)
    assert report.inputs["length"] == 2
    assert report.value == pytest.approx(256 * 2.0), "D(2, 2) q_w^{1/2} with q_w = 4"
    assert report.ok and report.margin is None, "No empirical value yet"
    report.empirical = 1e6
    assert not report.ok
    with pytest.raises(UsageError):
        norm_bound_hw("A1", 2, t2, 1)

    plain = norm_bound_hbeta("A1", 2, (1,), 2)
    refined = refined_norm_bound_hbeta("A1", 2, (1,), 2)
    assert refined.value <= plain.value, "The Schur-test bound refines the plain one"
    assert refined.inputs["plain_bound"] == plain.value
    for p in (3, math.inf):
        assert refined_norm_bound_hbeta("A2", 2, (1, 0), p).value <= norm_bound_hbeta("A2", 2, (1, 0), p).value
    with pytest.raises(UsageError):
        norm_bound_hbeta("A1", 2, (-1,), 2)
    logger.info("Norm bounds OK.")


def test_gelfand_and_diameter():
    logger.info("--- Testing Gelfand Radii and Diameter Bounds ---")
    radii = gelfand_radius_bounds("A1", 2, (1,), 2, 6)
    assert len(radii) == 6
    assert all(a > b for a, b in zip(radii, radii[1:])), "k-th roots of D shrink toward q_beta^{1/2}"
    assert radii[-1] > math.sqrt(2)

    bounds = diameter_bounds("A1", 2, 2, 1024)
    assert bounds["avg_upper"] == pytest.approx(10 + 2 * math.log2(10) + 1)
    assert bounds["diameter_upper"] == pytest.approx(20 + 4 * math.log2(10) + 1)
    assert bounds["avg_lower"] == pytest.approx(10 - 2 * math.log2(10) - 1)
    assert math.isinf(diameter_bounds("A1", math.inf, 2, 1024)["diameter_upper"])
    with pytest.raises(DomainError):
        diameter_bounds("A1", 2, 2, 3)
    with pytest.raises(DomainError):
        diameter_bounds("A1", 2, 1, 100)
    logger.info("Gelfand radii and diameter bounds OK.")


def test_bipartite_bound():
    logger.info("--- Testing the Biregular Adjacency Bound ---")
    assert bipartite_norm_bound(3, 2, 1) == pytest.approx(3.0)
    assert bipartite_norm_bound(3, 2, 2) == pytest.approx(math.sqrt(6))
    assert bipartite_norm_bound(3, 2, math.inf) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        bipartite_norm_bound(-1, 2, 2)
    logger.info("Biregular bound OK.")


def test_oh_table():
    logger.info("--- Testing the Uniform Temperedness Table ---")
    expected = {"A2": 4, "A3": 6, "C2": 4, "C3": 6, "B3": 6, "D4": 6, "D5": 10, "G2": 6, "F4": 11, "E8": 29}
    for name, value in expected.items():
        assert oh_p0(name) == value, f"{name}: expected p0 = {value}"
    for name in ("A1", "BC1"):
        with pytest.raises(UsageError):
            oh_p0(name)
    logger.info("Uniform temperedness table OK.")


if __name__ == "__main__":
    test_d_constant()
    test_norm_bounds()
    test_gelfand_and_diameter()
    test_bipartite_bound()
    test_oh_table()
    logger.info("All bound tests passed.")
