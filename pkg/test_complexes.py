import logging
import os
import tempfile

import pytest

from core.errors import UnsupportedError, UsageError, ValidationError
from spectral.complexes import (
    boundary_relations_check,
    chamber_system_from_dict,
    classify_expander,
    distance_theorem_check,
    gallery_stats,
    graph_complex,
    ihara_bass_check,
    injectivity_radius,
    load_chamber_system,
    load_graph,
    random_regular_graph,
    thin_quotient,
    trivial_invariance_check,
    trivial_vectors,
    write_graph,
)

# Configure basic logging for testing feedback
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)

FIXTURES = "fixtures"
K4 = f"{FIXTURES}/k4.txt"
PETERSEN = f"{FIXTURES}/petersen.txt"
K33 = f"{FIXTURES}/k33.txt"
NECKLACE = f"{FIXTURES}/diamond_necklace.txt"
K4_CHAMBERS = f"{FIXTURES}/k4_chambers.json"


def _write(directory: str, name: str, text: str) -> str:
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


def test_graph_complexes():
    logger.info("--- Testing Graph Complexes ---")
    k4 = load_graph(K4)
    assert k4.n_chambers == 12, "K4 has 12 oriented edges"
    assert k4.type_name == "A1" and int(k4.params.q_of(0)) == 2
    assert trivial_invariance_check(k4, 3) == 0.0, "The constant function is an eigenvector of every h_w"
    assert injectivity_radius(k4) == 3
    assert injectivity_radius(load_graph(PETERSEN)) == 5

    k33 = load_graph(K33)
    assert trivial_vectors(k33).shape == (2, 18), "Bipartite graphs carry a sign vector"
    logger.info("Graph complexes OK.")


def test_expander_classification():
    logger.info("--- Testing Expander Classification ---")
    for path in (K4, PETERSEN):
        report = classify_expander(load_graph(path))
        assert report.ramanujan, f"{path} is Ramanujan"
        assert report.p_min == pytest.approx(2.0, rel=1e-6), f"{path}: |mu| = sqrt(q) gives p_min = 2"
        assert not report.above_trivial
    necklace = classify_expander(load_graph(NECKLACE))
    assert not necklace.ramanujan, "Diamonds joined in a long cycle are poor expanders"
    assert necklace.p_min > 4.0
    assert necklace.q_beta == pytest.approx(2.0)

    from_file = classify_expander(load_chamber_system(K4_CHAMBERS))
    assert from_file.ramanujan
    assert from_file.p_min == pytest.approx(2.0, rel=1e-6), "Chamber file of K4 must match the graph"
    logger.info("Expander classification OK.")


def test_ihara_bass():
    logger.info("--- Testing the Ihara-Bass Cross-check ---")
    for path in (K4, PETERSEN, NECKLACE):
        assert ihara_bass_check(load_graph(path)) < 1e-6, f"{path}: NB spectrum must match the adjacency spectrum"
    for seed in range(10):
        X = graph_complex(random_regular_graph(50, 3, seed=seed))
        assert ihara_bass_check(X) < 1e-6, f"Random 3-regular graph with seed {seed} fails Ihara-Bass"
    with pytest.raises(UnsupportedError):
        ihara_bass_check(load_graph(K33, mode="bipartite"))
    logger.info("Ihara-Bass OK.")


def test_bipartite_boundaries():
    logger.info("--- Testing Bipartite Boundary Operators ---")
    k33 = load_graph(K33, mode="bipartite")
    assert k33.type_name == "BC1" and k33.n_chambers == 9
    assert boundary_relations_check(k33) == {"s0": 0, "s1": 0}
    assert trivial_invariance_check(k33, 4) == 0.0
    with pytest.raises(UnsupportedError):
        boundary_relations_check(load_graph(K4))
    with pytest.raises(ValidationError):
        load_graph(K4, mode="bipartite")
    logger.info("Boundary operators OK.")


def test_gallery_distances():
    logger.info("--- Testing Gallery Distances ---")
    stats = gallery_stats(load_graph(K4))
    assert stats.histogram == {0: 1, 1: 4, 2: 1}, "The line graph of K4 is the octahedron"
    assert stats.diameter == 2
    with pytest.raises(UsageError):
        gallery_stats(load_graph(K4), start=99)

    result = distance_theorem_check(load_graph(PETERSEN))
    assert result["passed"], f"Petersen diameter exceeds the bound: {result}"
    assert result["n_chambers"] == 15
    logger.info("Gallery distances OK.")


def test_random_regular_graphs():
    logger.info("--- Testing Random Regular Graphs ---")
    g1 = random_regular_graph(20, 3, seed=5)
    g2 = random_regular_graph(20, 3, seed=5)
    assert sorted(g1.edges()) == sorted(g2.edges()), "The same seed must give the same graph"
    assert all(d == 3 for _, d in g1.degree())
    X = graph_complex(g1)
    assert X.n_chambers == 60
    assert ihara_bass_check(X) < 1e-6
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "random.txt")
        write_graph(g1, path)
        assert load_graph(path).n_chambers == 60, "Written graphs load back"
    with pytest.raises(UsageError):
        random_regular_graph(7, 3, seed=1)
    logger.info("Random regular graphs OK.")


def test_thin_quotients():
    logger.info("--- Testing Thin Quotients ---")
    X = thin_quotient("A1", 3)
    assert X.n_chambers == 12, "Z / 6Z times W0"
    assert X.has_omega
    assert all(len(block) == 2 for blocks in X.panels for block in blocks)
    assert injectivity_radius(X) == 2, "t_3 and t_-3 reach the same chamber"
    assert injectivity_radius(X, max_depth=1) == 1, "Capped searches report a lower bound"
    with pytest.raises(UsageError):
        thin_quotient("A1", 0)
    logger.info("Thin quotients OK.")


def test_malformed_inputs():
    logger.info("--- Testing Malformed Inputs ---")
    with tempfile.TemporaryDirectory() as tmp:
        path = _write(tmp, "path.txt", "4 3\n0 1\n1 2\n2 3\n")
        with pytest.raises(ValidationError) as info:
            load_graph(path)
        assert info.value.relation == "degree"

        path = _write(tmp, "short.txt", "3 2\n0 1\n")
        with pytest.raises(ValidationError) as info:
            load_graph(path)
        assert info.value.relation == "format"

        path = _write(tmp, "garbage.txt", "four six\n")
        with pytest.raises(ValidationError):
            load_graph(path)
    with pytest.raises(UsageError):
        load_graph(f"{FIXTURES}/missing.txt")

    with pytest.raises(ValidationError) as info:
        chamber_system_from_dict({"type": "A1", "q": 2, "chambers": 3,
                                  "panels": {"s0": [[0, 1], [2]], "s1": [[0, 1, 2]]}})
    assert info.value.relation == "panel s0"
    with pytest.raises(ValidationError) as info:
        chamber_system_from_dict({"type": "A1", "q": 2, "chambers": 3, "panels": {"s0": [[0, 1, 2]]}})
    assert info.value.relation == "format"
    logger.info("Malformed inputs OK.")


if __name__ == "__main__":
    test_graph_complexes()
    test_expander_classification()
    test_ihara_bass()
    test_bipartite_boundaries()
    test_gallery_distances()
    test_random_regular_graphs()
    test_thin_quotients()
    test_malformed_inputs()
    logger.info("All chamber complex tests passed.")
