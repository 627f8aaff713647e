import logging

import pytest

from core.errors import ConfigurationError, UsageError
from core.rootsys import SUPPORTED_TYPES, identity_matrix, load_root_system

# Configure basic logging for testing feedback
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)

# |W0| and |Omega-hat| per type
GROUP_ORDERS = {
    "A1": (2, 2),
    "BC1": (2, 1),
    "A2": (6, 3),
    "A3": (24, 4),
    "C2": (8, 2),
    "G2": (12, 1),
}


def test_tables_load():
    logger.info("--- Testing Root System Tables ---")
    for name in SUPPORTED_TYPES:
        rs = load_root_system(name)
        w0_order, omega_order = GROUP_ORDERS[name]
        assert len(rs.w0_elements) == w0_order, f"{name}: |W0| should be {w0_order}"
        assert len(rs.omega_hat) == omega_order, f"{name}: |Omega-hat| should be {omega_order}"
        assert rs.w0_length(rs.longest_element) == len(rs.wall_roots), f"{name}: l(w0) must count wall roots"
        assert rs.omega_perms[0] == tuple(range(rs.rank + 1)), f"{name}: Omega-hat index 0 must be the identity"
    logger.info("All tables load with the expected group orders OK.")


def test_type_names():
    logger.info("--- Testing Type Name Handling ---")
    assert load_root_system("a_2") is load_root_system("A2"), "Type names should be canonicalized and cached"
    with pytest.raises(ConfigurationError):
        load_root_system("X9")
    with pytest.raises(ConfigurationError):
        load_root_system(3)
    logger.info("Type names OK.")


def test_roots_and_coroots():
    logger.info("--- Testing Roots and Coroots ---")
    a1 = load_root_system("A1")
    assert a1.coroot((1,)) == (2,), "alpha^vee pairs to 2 with alpha"
    assert a1.highest_root == (1,)

    bc1 = load_root_system("BC1")
    assert not bc1.is_reduced, "BC1 is non-reduced"
    assert bc1.wall_roots == [(2,)], "Only 2*alpha gives walls in BC1"
    assert bc1.is_doubled_node(0)

    assert load_root_system("C2").highest_root == (2, 1)
    assert load_root_system("G2").highest_root == (3, 2)

    a2 = load_root_system("A2")
    assert a2.translation_length((1, 0)) == 2, "l(t_beta1) in A2 is 2"
    assert a2.translation_length((1, 1)) == 4
    with pytest.raises(UsageError):
        a2.pairing((1, 0), (1,))
    logger.info("Roots and coroots OK.")


def test_affine_generators_a1():
    logger.info("--- Testing A1 Affine Generators ---")
    rs = load_root_system("A1")
    s0, s1 = rs.affine_generators()
    assert s0 == ((2,), ((-1,),)), "s0 is x -> 2 - x"
    assert s1 == ((0,), ((-1,),)), "s1 is x -> -x"
    assert rs.omega_hat[1] == ((1,), ((-1,),)), "omega is x -> 1 - x"
    assert rs.omega_perms[1] == (1, 0), "omega swaps s0 and s1"
    assert rs.omega_name(1) == "w1"
    logger.info("A1 generators OK.")


def test_dominance_and_order():
    logger.info("--- Testing Dominant Representatives and the Coweight Order ---")
    a2 = load_root_system("A2")
    plus, w = a2.dominant_rep((-1, 0))
    assert plus == (0, 1), "(-1, 0) is conjugate to the dominant (0, 1)"
    assert a2.w0_length(w) == 2

    assert a2.coweight_leq((0, 0), (1, 1)), "0 < alpha1^vee + alpha2^vee"
    assert not a2.coweight_leq((0, 0), (1, 0)), "beta1 is not in the coroot lattice"

    e = identity_matrix(2)
    assert a2.bruhat_leq(e, a2.longest_element)
    assert not a2.bruhat_leq(a2.longest_element, e)
    logger.info("Dominance and order OK.")


if __name__ == "__main__":
    test_tables_load()
    test_type_names()
    test_roots_and_coroots()
    test_affine_generators_a1()
    test_dominance_and_order()
    logger.info("All root system tests passed.")
