import itertools
import logging
import random
from fractions import Fraction

import pytest

from core.errors import UsageError
from core.hecke import get_hecke_algebra
from core.weyl import get_weyl_group

# Configure basic logging for testing feedback
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)

BERNSTEIN_CASES = [
    ("A1", [(1,), (-1,), (2,)]),
    ("BC1", [(1,), (-1,), (2,)]),
    ("A2", [(1, 0), (-1, 1), (0, -1)]),
    ("C2", [(1, 0), (0, 1), (-1, 1)]),
]


def test_quadratic_and_braid_relations():
    logger.info("--- Testing Defining Relations ---")
    for name in ("A1", "BC1", "A2", "C2"):
        algebra = get_hecke_algebra(name)
        for i in range(algebra.group.rank + 1):
            h = algebra.h_generator(i)
            u = algebra.u(i)
            assert h * h == algebra.scalar(u) + h * (u - 1), f"{name}: quadratic relation for s{i}"
            assert h * algebra.generator_inverse(i) == algebra.one(), f"{name}: h_s{i} is invertible"
    a2 = get_hecke_algebra("A2")
    s1, s2 = a2.h_generator("s1"), a2.h_generator("s2")
    assert s1 * s2 * s1 == s2 * s1 * s2, "Braid relation of order 3"
    c2 = get_hecke_algebra("C2")
    s1, s2 = c2.h_generator(1), c2.h_generator(2)
    assert s1 * s2 * s1 * s2 == s2 * s1 * s2 * s1, "Braid relation of order 4"
    logger.info("Defining relations OK.")


def test_omega_twist():
    logger.info("--- Testing the Omega-hat Action ---")
    algebra = get_hecke_algebra("A1")
    w = algebra.h_omega("w1")
    assert w * algebra.h_generator(0) * w == algebra.h_generator(1), "omega s0 omega^-1 = s1"
    assert w * w == algebra.one()
    with pytest.raises(UsageError):
        algebra.h_omega("s1")
    with pytest.raises(UsageError):
        algebra.h_generator("w1")
    logger.info("Omega-hat action OK.")


def test_associativity_and_star():
    logger.info("--- Testing Associativity and the Adjoint ---")
    rng = random.Random(7)
    algebra = get_hecke_algebra("A2")
    ball = algebra.group.enumerate_ball(4)
    for _ in range(100):
        a, b, c = (algebra.basis(rng.choice(ball)) for _ in range(3))
        assert (a * b) * c == a * (b * c), "Product must be associative"
    for _ in range(100):
        a = algebra.basis(rng.choice(ball)) + algebra.basis(rng.choice(ball), 2)
        b = algebra.basis(rng.choice(ball))
        assert (a * b).star() == b.star() * a.star(), "* is an anti-involution"
        assert a.star().star() == a
    for name in ("A1", "BC1"):
        small = get_hecke_algebra(name)
        for w in small.group.enumerate_ball(3):
            assert small.basis(w) * small.basis_inverse(w) == small.one(), f"{name}: h_w must be invertible"
    for w in algebra.group.enumerate_ball(2):
        assert algebra.basis(w) * algebra.basis_inverse(w) == algebra.one()
    logger.info("Associativity and adjoint OK.")


def test_translations_commute():
    logger.info("--- Testing Translation Elements ---")
    a1 = get_hecke_algebra("A1")
    assert a1.y_beta((1,)) * a1.y_beta((-1,)) == a1.one()
    assert a1.y_beta((1,)) * a1.y_beta((1,)) == a1.y_beta((2,))
    assert a1.x_beta((0,)) == a1.one()
    a2 = get_hecke_algebra("A2")
    assert a2.y_beta((1, 0)) * a2.y_beta((0, 1)) == a2.y_beta((0, 1)) * a2.y_beta((1, 0))
    assert a2.y_beta((1, 0)) * a2.y_beta((0, -1)) == a2.y_beta((1, -1))
    logger.info("Translation elements OK.")


def test_bernstein_tables():
    logger.info("--- Testing Bernstein Relations ---")
    for name, betas in BERNSTEIN_CASES:
        algebra = get_hecke_algebra(name)
        params = algebra.group.param_system(2)
        for w0 in algebra.group.w0_elements():
            for beta in betas:
                for variant in ("unprimed", "primed"):
                    table = algebra.bernstein_coeffs(w0, beta, variant)
                    assert algebra.bernstein_expand(table) == algebra.bernstein_product(w0, beta, variant), \
                        f"{name}: table for {variant} w0 = {algebra.group.word_string(w0)}, beta = {beta}"
                    lead = table.leading_key(algebra.group)
                    assert table.entries.get(lead) == algebra.coerce(1), f"{name}: leading coefficient must be 1"
                    rows = algebra.bernstein_bound_check(table, params)
                    assert all(r["ok"] for r in rows), f"{name}: coefficient sums exceed their bound: {rows}"
        logger.info("%s Bernstein tables OK.", name)
    with pytest.raises(UsageError):
        get_hecke_algebra("A1").bernstein_coeffs(get_weyl_group("A1").translation((1,)), (1,))
    logger.info("Bernstein relations OK.")


def test_bernstein_dominant_sweep():
    logger.info("--- Testing Bernstein Relations on Dominant Coweights ---")
    for name in ("A2", "C2"):
        algebra = get_hecke_algebra(name)
        rs = algebra.rs
        betas = [b for b in itertools.product(range(5), repeat=rs.rank) if rs.translation_length(b) <= 4]
        param_sets = [algebra.group.param_system(q) for q in (2, 3)]
        rows = 0
        for w0 in algebra.group.w0_elements():
            for beta in betas:
                for variant in ("unprimed", "primed"):
                    table = algebra.bernstein_coeffs(w0, beta, variant)
                    assert algebra.bernstein_expand(table) == algebra.bernstein_product(w0, beta, variant), \
                        f"{name}: re-expansion differs for {variant} w0 = {algebra.group.word_string(w0)}, beta = {beta}"
                    for params in param_sets:
                        checked = algebra.bernstein_bound_check(table, params)
                        bad = [r for r in checked if not r["ok"]]
                        assert not bad, f"{name}: bound violated at q = {params.q_max}: {bad}"
                        rows += len(checked)
        logger.info("%s: %d dominant coweights, %d bound rows", name, len(betas), rows)
    logger.info("Dominant Bernstein sweep OK.")


def test_bernstein_basis_change():
    logger.info("--- Testing Conversion to the Bernstein Basis ---")
    for name in ("A1", "BC1", "A2"):
        algebra = get_hecke_algebra(name)
        for w in algebra.group.enumerate_ball(5):
            h = algebra.basis(w)
            data = algebra.to_bernstein(h, verify=algebra.group.length(w) <= 2)
            assert algebra.from_bernstein(data) == h, f"{name}: round trip fails for {algebra.group.word_string(w)}"
        h = algebra.parse_element("s0 + 2*s1")
        assert algebra.from_bernstein(algebra.to_bernstein(h)) == h
    logger.info("Bernstein basis conversion OK.")


def test_poincare_identity():
    logger.info("--- Testing the Generalized Poincare Series ---")
    for name, degree in (("A1", 8), ("A2", 8), ("BC1", 4), ("C2", 3)):
        assert get_hecke_algebra(name).poincare_identity_check(degree), f"{name}: Poincare identity fails"

    rows = get_hecke_algebra("A1").poincare_comparison(3)
    assert [r["degree"] for r in rows] == [0, 1, 2, 3]
    assert all(r["matches"] and r["lhs"] == r["rhs"] for r in rows)
    assert sorted(t["word"] for t in rows[0]["lhs"].to_dict()) == ["", "w1"], "Degree 0 is the sum over Omega-hat"
    assert len(rows[3]["lhs"].terms) == 4, "Two elements of length 3 for each of the two Omega-hat cosets"
    logger.info("Poincare identity OK.")


def test_element_format():
    logger.info("--- Testing the Element Format ---")
    algebra = get_hecke_algebra("A1")
    assert algebra.one().to_dict() == [{"word": "", "coeff": {"0": "1"}}]
    half = algebra.basis(algebra.group.from_word("s0 s1"), Fraction(1, 2))
    assert half.to_dict() == [{"word": "s0 s1", "coeff": {"0": "1/2"}}]
    h = algebra.h_generator(0)
    assert (h * h).to_dict() == [
        {"word": "", "coeff": {"2": "1"}},
        {"word": "s0", "coeff": {"0": "-1", "2": "1"}},
    ], "h_s^2 = u + (u - 1) h_s with u = v^2"
    assert algebra.zero().to_dict() == []
    logger.info("Element format OK.")


def test_parse_element():
    logger.info("--- Testing Element Parsing ---")
    algebra = get_hecke_algebra("A1")
    group = algebra.group
    h = algebra.parse_element("s0 + s1")
    assert h == algebra.h_generator(0) + algebra.h_generator(1)
    assert algebra.is_random_walk(h)
    assert algebra.parse_element("2*s0 w1") == algebra.basis(group.translation((1,)), 2)
    assert algebra.parse_element("3 - 1/2*s1") == algebra.scalar(3) - algebra.scale(algebra.h_generator(1), Fraction(1, 2))
    assert not algebra.is_random_walk(algebra.parse_element("s0 w1")), "h_{t_beta} is not self adjoint"
    assert not algebra.is_random_walk(algebra.parse_element("s0 - s1"))
    values = algebra.evaluate(algebra.parse_element("s0 + 2*s1"), group.param_system(2))
    assert values == {group.generators[0]: 1.0, group.generators[1]: 2.0}
    with pytest.raises(UsageError):
        algebra.parse_element("")
    with pytest.raises(UsageError):
        algebra.parse_element("s9")
    logger.info("Element parsing OK.")


if __name__ == "__main__":
    test_quadratic_and_braid_relations()
    test_omega_twist()
    test_associativity_and_star()
    test_translations_commute()
    test_bernstein_tables()
    test_bernstein_dominant_sweep()
    test_bernstein_basis_change()
    test_poincare_identity()
    test_element_format()
    test_parse_element()
    logger.info("All Hecke algebra tests passed.")
