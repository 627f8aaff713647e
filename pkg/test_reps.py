import logging
import math

import numpy as np
import pytest

from core.errors import UnsupportedError, UsageError, ValidationError
from core.weyl import get_weyl_group
from spectral.reps import (
    builtin_rep,
    evaluate,
    induce_color_rotation,
    is_unitary,
    load_rep,
    one_dimensional_reps,
    p_min,
    rep_from_dict,
    rep_to_dict,
    rh_check,
    tempered_growth_check,
    zeta,
)

# Configure basic logging for testing feedback
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)

FIXTURES = "fixtures"
STEINBERG_A1 = f"{FIXTURES}/steinberg_a1.json"
TRIVIAL_A1 = f"{FIXTURES}/trivial_a1.json"
STEINBERG_A2 = f"{FIXTURES}/steinberg_a2.json"
TRIVIAL_A2 = f"{FIXTURES}/trivial_a2.json"
CORRUPTED_A2 = f"{FIXTURES}/corrupted_a2.json"

# Steinberg of A2 without the Omega-hat matrices
BARE_STEINBERG_A2 = {
    "type": "A2",
    "q": {"s0": "2"},
    "generators": {"s0": [[-1]], "s1": [[-1]], "s2": [[-1]]},
}


def test_load_fixtures():
    logger.info("--- Testing Representation Files ---")
    rep = load_rep(STEINBERG_A2)
    assert rep.dim == 1 and rep.extended, "Steinberg fixture is a 1-dim rep of the extended algebra"
    assert is_unitary(rep)
    again = rep_from_dict(rep_to_dict(rep))
    assert again.dim == rep.dim and np.allclose(again.gens[1], rep.gens[1])

    with pytest.raises(ValidationError) as info:
        load_rep(CORRUPTED_A2)
    assert info.value.relation == "h_s1^2", f"Unexpected failing relation {info.value.relation}"
    assert info.value.residual > 0
    with pytest.raises(UsageError):
        load_rep(f"{FIXTURES}/does_not_exist.json")
    with pytest.raises(ValidationError):
        rep_from_dict({"type": "A1", "q": 2, "generators": {"s0": [[1, 2]]}})
    logger.info("Representation files OK.")


def test_p_min_classification():
    logger.info("--- Testing p_min ---")
    assert p_min(load_rep(STEINBERG_A2)).value == 1.0, "Steinberg is 1-tempered"
    assert p_min(load_rep(STEINBERG_A1)).value == 1.0
    trivial = p_min(load_rep(TRIVIAL_A2))
    assert math.isinf(trivial.value), "The trivial representation is not tempered"
    assert not trivial.above_trivial

    values = sorted(p_min(rep).value for rep in one_dimensional_reps("A1", 2))
    assert values[:2] == [1.0, 1.0] and all(math.isinf(v) for v in values[2:])
    assert len(one_dimensional_reps("A2", 2)) == 6

    # h_{beta_1} = h_s0 h_s1 acts by -q1; q_beta = q0 q1
    mixed = builtin_rep("sign:s0=s", "BC1", {"s0": 2, "s1": 3})
    assert p_min(mixed).value == pytest.approx(math.log(6) / math.log(2))
    assert not rh_check(mixed, 2)
    assert rh_check(mixed, 3)
    assert rh_check(load_rep(STEINBERG_A2), 2)
    assert rh_check(load_rep(TRIVIAL_A2), 2), "|mu| = q_beta is allowed"

    with pytest.raises(UnsupportedError):
        p_min(builtin_rep("trivial", "A1", 1))
    logger.info("p_min OK.")


def test_builtin_names():
    logger.info("--- Testing Built-in Representations ---")
    steinberg = builtin_rep("steinberg", "A1", 2)
    t1 = get_weyl_group("A1").translation((1,))
    assert np.allclose(evaluate(steinberg, t1), [[-1]])
    assert np.allclose(evaluate(builtin_rep("trivial", "A1", 2), t1), [[2]])
    with pytest.raises(UsageError):
        builtin_rep("sign:s0=t,s0=s", "BC1", 2)
    with pytest.raises(UsageError):
        builtin_rep("sign:s0=x", "BC1", 2)
    with pytest.raises(UsageError):
        builtin_rep("principal", "A1", 2)
    logger.info("Built-in representations OK.")


def test_zeta_data():
    logger.info("--- Testing Zeta Functions ---")
    data = zeta(load_rep(TRIVIAL_A1))
    assert data.lengths == [1]
    assert np.allclose(data.u_poles[0], [0.5]), "Pole of 1/(1 - q u) at u = 1/q"

    data = zeta(load_rep(STEINBERG_A2))
    assert data.lengths == [2, 2]
    assert np.allclose(sorted(p.real for p in data.u_poles[0]), [-1.0, 1.0])
    assert np.allclose(data.s_poles[0], [0.0])
    logger.info("Zeta functions OK.")


def test_growth_envelope():
    logger.info("--- Testing Matrix Coefficient Growth ---")
    report = tempered_growth_check(load_rep(STEINBERG_A2), [1], [1], max_length=5, p=2, delta=0.1)
    assert report.passed, f"Steinberg coefficients must stay under the envelope: {report.violations}"
    report = tempered_growth_check(load_rep(TRIVIAL_A2), [1], [1], max_length=4, p=2, delta=0.1)
    assert not report.passed and report.violations[0] == 1, "Trivial coefficients grow like q^{l/2}"
    with pytest.raises(UsageError):
        tempered_growth_check(load_rep(STEINBERG_A2), [1, 0], [1], max_length=2, p=2, delta=0.1)
    logger.info("Growth envelope OK.")


def test_color_rotation_induction():
    logger.info("--- Testing Induction to the Extended Algebra ---")
    bare = rep_from_dict(BARE_STEINBERG_A2)
    assert not bare.extended
    with pytest.raises(UsageError):
        p_min(bare)
    induced = induce_color_rotation(bare)
    assert induced.dim == 3 and induced.extended
    assert is_unitary(induced)
    assert p_min(induced).value == 1.0
    logger.info("Induction OK.")


if __name__ == "__main__":
    test_load_fixtures()
    test_p_min_classification()
    test_builtin_names()
    test_zeta_data()
    test_growth_envelope()
    test_color_rotation_induction()
    logger.info("All representation tests passed.")
