import itertools
import json
import logging

import pytest

from core.config import get_settings
from core.errors import ConfigurationError, ResourceError, UsageError
from core.laurent import poly_sum
from core.weyl import WeylElement, get_weyl_group

# Configure basic logging for testing feedback
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)

# Elements per length of the (non-extended) affine Coxeter group
A1_LAYER = lambda l: 1 if l == 0 else 2
A2_LAYER = lambda l: 1 if l == 0 else 3 * l


def test_products_and_inverses():
    logger.info("--- Testing Group Arithmetic ---")
    group = get_weyl_group("A2")
    for w in group.enumerate_ball(3):
        assert group.multiply(w, group.inverse(w)) == group.identity, "w * w^-1 must be the identity"
        assert group.length(w) == group.length(group.inverse(w)), "l(w) = l(w^-1)"
    assert group.from_word("s1 s1") == group.identity
    assert group.from_word("s1 s2 s1") == group.from_word("s2 s1 s2"), "braid relation of order 3"
    with pytest.raises(UsageError):
        group.from_word("s7")
    logger.info("Group arithmetic OK.")


def test_lengths_and_words_a1():
    logger.info("--- Testing A1 Lengths and Words ---")
    group = get_weyl_group("A1")
    for b in range(-4, 5):
        assert group.length(group.translation((b,))) == abs(b), f"l(t_{b}) should be {abs(b)}"
    assert group.word_string(group.translation((1,))) == "s0 w1", "t_beta1 = s0 omega"
    word, k = group.reduced_word(group.from_word("s0 s1 s0"))
    assert word == (0, 1, 0) and k == 0
    for w in group.enumerate_ball(5):
        assert group.from_word(group.word_string(w)) == w, "Reduced words must multiply back"
    logger.info("A1 lengths and words OK.")


def test_ball_sizes():
    logger.info("--- Testing Ball Enumeration ---")
    a1 = get_weyl_group("A1")
    assert len(a1.enumerate_ball(0)) == 2, "The length-zero layer is Omega-hat"
    assert len(a1.enumerate_ball(5)) == 2 * sum(A1_LAYER(l) for l in range(6))
    a2 = get_weyl_group("A2")
    assert len(a2.enumerate_ball(4)) == 3 * sum(A2_LAYER(l) for l in range(5))
    ball = a2.enumerate_ball(3)
    lengths = [a2.length(w) for w in ball]
    assert lengths == sorted(lengths), "Balls are ordered by length"

    cap = get_settings().max_ball_length
    with pytest.raises(ResourceError):
        a1.enumerate_ball(cap + 1)
    with pytest.raises(UsageError):
        a1.enumerate_ball(-1)
    with pytest.raises(ConfigurationError):
        get_weyl_group("H3")
    logger.info("Ball enumeration OK.")


def test_structure_theorem():
    logger.info("--- Testing the Structure Decomposition ---")
    for name, maxlen in (("A1", 8), ("BC1", 8), ("A2", 6), ("C2", 6), ("G2", 5)):
        group = get_weyl_group(name)
        assert group.structure_check(maxlen) == [], f"{name}: structure decomposition counterexamples"
        assert len(group.fundamental_box()) == len(group.rs.w0_elements)
    logger.info("Structure decomposition OK.")


def test_length_oracle():
    logger.info("--- Testing Lengths Against Word Lengths ---")
    for name in ("A1", "BC1", "A2", "C2", "G2", "A3"):
        assert get_weyl_group(name).length_oracle_check(8) == [], f"{name}: hyperplane length differs from BFS"
    logger.info("Length oracle OK.")


def test_translation_lengths():
    logger.info("--- Testing Translation Lengths ---")
    for name in ("A2", "C2", "G2"):
        group = get_weyl_group(name)
        dominant = list(itertools.product(range(3), repeat=group.rank))
        for beta, gamma in itertools.product(dominant, repeat=2):
            total = tuple(x + y for x, y in zip(beta, gamma))
            assert group.length(group.translation(total)) == \
                group.length(group.translation(beta)) + group.length(group.translation(gamma)), \
                f"{name}: l(t_beta) is additive on dominant coweights ({beta}, {gamma})"
        for beta in dominant:
            t = group.translation(beta)
            for m in group.w0_elements():
                conj = group.multiply(group.multiply(m, t), group.inverse(m))
                assert conj.fin == group.identity.fin, "W0 conjugates translations to translations"
                assert group.length(conj) == group.length(t), f"{name}: l(t_beta) is W0-invariant"
    logger.info("Translation lengths OK.")


def test_element_format():
    logger.info("--- Testing the Element Format ---")
    group = get_weyl_group("A1")
    assert group.translation((1,)).to_dict() == {"beta": [1], "fin": [[1]]}
    for name in ("A1", "A2"):
        group = get_weyl_group(name)
        for w in group.enumerate_ball(2):
            text = json.dumps(w.to_dict())
            assert WeylElement.from_dict(json.loads(text)) == w, f"{name}: {group.word_string(w)} must load back"
    logger.info("Element format OK.")


def test_coxeter_and_params():
    logger.info("--- Testing Coxeter Data and Parameter Classes ---")
    a1 = get_weyl_group("A1")
    assert a1.coxeter_matrix()[0][1] == 0, "s0 s1 has infinite order in A1"
    a2 = get_weyl_group("A2")
    m = a2.coxeter_matrix()
    assert all(m[i][j] == 3 for i in range(3) for j in range(3) if i != j)

    assert a1.param_system().nvars == 1, "omega identifies the two A1 generators"
    assert get_weyl_group("BC1").param_system().nvars == 2, "BC1 has two independent parameters"
    assert get_weyl_group("C2").param_system().nvars == 2

    params = a1.param_system("3/2")
    assert float(params.q_of(1)) == 1.5
    with pytest.raises(UsageError):
        a1.param_system("0")
    with pytest.raises(UsageError):
        a1.param_system({"s5": 2})
    with pytest.raises(UsageError):
        get_weyl_group("BC1").param_system({"s0": 2})

    q2 = a1.param_system(2)
    assert a1.q_value(a1.translation((3,)), q2) == pytest.approx(8.0)
    logger.info("Coxeter data and parameters OK.")


def test_double_cosets():
    logger.info("--- Testing Parabolics and Double Cosets ---")
    group = get_weyl_group("A1")
    assert len(group.parabolic_elements([1])) == 2
    with pytest.raises(UsageError):
        group.parabolic_elements([0, 1])

    data = group.double_coset_min([1], [1], group.generators[0])
    assert data.d_min == group.generators[0]
    assert data.size == 4
    assert data.i3 == ()
    assert data.q_d.evaluate([2]) == pytest.approx(6.0), "q_d = (1 + q) q"
    assert data.n_d.evaluate([2]) == pytest.approx(1.0)

    data = group.double_coset_min([1], [1], group.identity)
    assert data.i3 == (1,)
    assert data.q_d.evaluate([2]) == pytest.approx(1.0)
    assert data.n_d.evaluate([2]) == pytest.approx(3.0), "n_d = q_{W_I3} = 1 + q"

    # Summing q_x over a whole double coset must give q_d * q_{W_I2}
    a2 = get_weyl_group("A2")
    nvars = a2.param_system().nvars
    subsets = [s for k in range(3) for s in itertools.combinations(range(3), k)]
    checked = 0
    for w in a2.enumerate_ball(3):
        for i1, i2 in itertools.product(subsets, repeat=2):
            data = a2.double_coset_min(i1, i2, w)
            coset = a2.double_coset(i1, i2, w)
            assert data.size == len(coset)
            total = poly_sum((a2.q_monomial(x) for x in coset), nvars)
            assert total == data.q_d * a2.parabolic_weight(i2), \
                f"q_d identity fails for I1 = {i1}, I2 = {i2}, w = {a2.word_string(w)}"
            checked += 1
    logger.info("q_d identity checked on %d double cosets", checked)
    logger.info("Double cosets OK.")


def test_sector_length():
    logger.info("--- Testing Sector Lengths ---")
    group = get_weyl_group("A1")
    s1 = group.generators[1]
    assert group.sector_length(group.translation((-1,)))[0] == 1
    assert group.sector_length(group.translation((1,)))[0] == -1
    assert group.sector_length(group.multiply(group.translation((1,)), s1))[0] == 0
    value, q = group.sector_length(group.translation((-2,)))
    assert value == 2 and q.evaluate([2]) == pytest.approx(4.0)
    with pytest.raises(UsageError):
        group.sector_length(group.translation((1,)), split=((2,), (0,)))
    logger.info("Sector lengths OK.")


def test_multiplication_table():
    logger.info("--- Testing Right Multiplication Tables ---")
    group = get_weyl_group("A1")
    ball = group.enumerate_ball(2)
    table = group.right_multiplication_table(ball)
    assert table.shape == (len(ball), 2)
    for k, w in enumerate(ball):
        for i in range(2):
            if table[k, i] >= 0:
                assert ball[table[k, i]] == group.multiply(w, group.generators[i])
            else:
                assert group.length(w) == 2, "Only the outer layer can leave the ball"
    logger.info("Multiplication tables OK.")


if __name__ == "__main__":
    test_products_and_inverses()
    test_lengths_and_words_a1()
    test_ball_sizes()
    test_structure_theorem()
    test_length_oracle()
    test_translation_lengths()
    test_element_format()
    test_coxeter_and_params()
    test_double_cosets()
    test_sector_length()
    test_multiplication_table()
    logger.info("All Weyl group tests passed.")
