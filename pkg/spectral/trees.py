"""
The (q+1)-regular tree as the building of type A1.

This module provides:
- `TreeBall`, the oriented edges of the tree out to a given depth around a
  root edge, with Dirichlet-truncated Hecke operators.
- Sector types toward a fixed end, the sector lemma and sectorial counts
  predicted from Bernstein coefficients.
- Spherical averages and geometric realizations of representations.
- `RadialModel`, functions of the Weyl distance from the root edge, used for
  approximate-spectrum witnesses at radii too large to materialize.
- Empirical operator norms and the Serre and Alon-Boppana checks.

Vertex 0 is the root a, vertex 1 is b, and chamber 0 is the oriented edge (a, b).
The end used for sector types is the ray a, b, b's first child, its first child, ...
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import networkx as nx
import numpy as np
import scipy.sparse as sp

from core.config import get_settings
from core.errors import ResourceError, UnsupportedError, UsageError
from core.hecke import HeckeElement, get_hecke_algebra
from core.weyl import WeylElement, get_weyl_group
from spectral.bounds import BoundReport, norm_bound_hw
from spectral.complexes import (
    ChamberComplex,
    SparseModel,
    block_matrix,
    injectivity_radius,
    nontrivial_spectrum,
    permutation_matrix,
)
from spectral.reps import HeckeRep, evaluate, evaluate_element

logger = logging.getLogger(__name__)

DEFAULT_WITNESS_RADIUS = 18
TAIL_FRACTION = 0.01


class TreeBall(SparseModel):
    """
    Oriented edges of the (q+1)-regular tree with both endpoints within `radius` of the root edge.

    Attributes:
        q (int): Thickness; every vertex has q + 1 neighbours.
        radius (int): Largest vertex depth (distance to the nearer of a, b).
        parent (np.ndarray): Parent vertex, -1 for a and b.
        depth (np.ndarray): Vertex depth.
        height (np.ndarray): Busemann height toward the fixed end; a = 0, b = 1.
        level (np.ndarray): Signed depth: -depth on a's side, 1 + depth on b's side.
        tails (np.ndarray), heads (np.ndarray): Endpoints of each chamber.
    """

    def __init__(self, q: int, radius: int):
        cap = get_settings().max_tree_radius
        if radius > cap:
            raise ResourceError(f"tree radius {radius} exceeds the configured cap {cap}", required=radius)
        if q < 1 or radius < 1:
            raise UsageError(f"TreeBall needs q >= 1 and radius >= 1, got q = {q}, radius = {radius}")
        self.q = int(q)
        self.radius = int(radius)
        self.group = get_weyl_group("A1")
        self.params = self.group.param_system(self.q)
        self._init_cache()
        self._build_vertices()
        self._build_chambers()
        logger.info("Built TreeBall q = %d, radius %d: %d vertices, %d chambers",
                    self.q, self.radius, len(self.depth), self.n_chambers)

    def _build_vertices(self) -> None:
        parent, depth, height, level, on_ray = [-1, -1], [0, 0], [0, 1], [0, 1], [False, True]
        frontier = [0, 1]
        for d in range(1, self.radius + 1):
            nxt = []
            for v in frontier:
                for k in range(self.q):
                    child = len(parent)
                    ray = on_ray[v] and k == 0
                    parent.append(v)
                    depth.append(d)
                    height.append(height[v] + 1 if ray else height[v] - 1)
                    level.append(level[v] + 1 if level[v] > 0 else level[v] - 1)
                    on_ray.append(ray)
                    nxt.append(child)
            logger.debug("TreeBall layer %d: %d vertices", d, len(nxt))
            frontier = nxt
        self.parent = np.asarray(parent, dtype=np.int64)
        self.depth = np.asarray(depth, dtype=np.int64)
        self.height = np.asarray(height, dtype=np.int64)
        self.level = np.asarray(level, dtype=np.int64)

    def _build_chambers(self) -> None:
        n_vertices = len(self.parent)
        tails = np.empty(2 * (n_vertices - 1), dtype=np.int64)
        heads = np.empty_like(tails)
        tails[0], heads[0], tails[1], heads[1] = 0, 1, 1, 0
        children = np.arange(2, n_vertices)
        tails[2::2], heads[2::2] = self.parent[children], children
        tails[3::2], heads[3::2] = children, self.parent[children]
        self.tails, self.heads = tails, heads
        self.n_chambers = len(tails)
        self.chamber_depth = np.maximum(self.depth[tails], self.depth[heads])

        def blocks(keys: np.ndarray) -> List[List[int]]:
            order = np.argsort(keys, kind="stable")
            cuts = np.flatnonzero(np.diff(keys[order])) + 1
            return [list(chunk) for chunk in np.split(order, cuts)]

        self._generators = [block_matrix(blocks(heads), self.n_chambers), block_matrix(blocks(tails), self.n_chambers)]
        flip = np.arange(self.n_chambers) ^ 1
        self._omegas = {0: self.identity(), 1: permutation_matrix(flip)}
        self._sector_types: Optional[List[WeylElement]] = None
        self._distance_labels: Optional[np.ndarray] = None
        self._distance_types: Optional[List[WeylElement]] = None

    def interior_mask(self, margin: int = 1) -> np.ndarray:
        """Chambers whose rows of any operator of word length <= margin are untruncated."""
        return self.chamber_depth <= self.radius - margin

    def volume_check(self) -> Dict[str, int]:
        """Interior chamber count against the sum of q_w over l(w) <= radius - 1."""
        counted = int(self.interior_mask(1).sum())
        predicted = sum(int(round(self.group.q_value(w, self.params)))
                        for w in self.group.enumerate_ball(self.radius - 1))
        return {"counted": counted, "predicted": predicted}

    # ------------------------------------------------------------ chamber types

    def sector_types(self) -> List[WeylElement]:
        if self._sector_types is None:
            self._sector_types = _types(self.height[self.tails], self.height[self.heads])
        return self._sector_types

    def distance_types(self) -> List[WeylElement]:
        """d(C0, C) for every chamber, read off the signed-depth coordinate."""
        if self._distance_types is None:
            self._distance_types = _types(self.level[self.tails], self.level[self.heads])
        return self._distance_types

    def distance_labels(self) -> np.ndarray:
        """Integer label of d(C0, C); chambers share a label iff they lie on the same sphere."""
        if self._distance_labels is None:
            index: Dict[WeylElement, int] = {}
            labels = np.empty(self.n_chambers, dtype=np.int64)
            for c, w in enumerate(self.distance_types()):
                labels[c] = index.setdefault(w, len(index))
            self._distance_labels = labels
        return self._distance_labels


def _types(start: np.ndarray, end: np.ndarray) -> List[WeylElement]:
    return [WeylElement((int(a),), ((int(b - a),),)) for a, b in zip(start, end)]


def sector_type(tree: TreeBall, chamber: int) -> WeylElement:
    """rho(C): the interval [h(tail), h(head)] of Busemann heights as an element of W-hat."""
    return tree.sector_types()[chamber]


def sector_lemma_check(tree: TreeBall) -> Dict[str, Any]:
    """
    For every interior chamber of type w and each s: counts the s-adjacent chambers of
    type ws, expecting q_s when L(ws) = L(w) + 1 and one when L(ws) = L(w) - 1.
    """
    group = tree.group
    types = tree.sector_types()
    length_cache: Dict[WeylElement, int] = {}

    def sector_len(w: WeylElement) -> int:
        if w not in length_cache:
            length_cache[w] = group.sector_length(w)[0]
        return length_cache[w]

    violations = []
    checked = 0
    for c in np.flatnonzero(tree.interior_mask(1)):
        w = types[c]
        for i, s in enumerate(group.generators):
            ws = group.multiply(w, s)
            q_s = int(tree.params.q_of(i))
            expected = q_s if sector_len(ws) == sector_len(w) + 1 else 1
            matrix = tree.generator_matrix(i)
            row = matrix.indices[matrix.indptr[c]:matrix.indptr[c + 1]]
            found = sum(1 for c2 in row if types[c2] == ws)
            checked += 1
            if found != expected:
                violations.append({"chamber": int(c), "s": f"s{i}", "expected": expected, "found": found})
    logger.info("Sector lemma: %d checks, %d violations", checked, len(violations))
    return {"checked": checked, "violations": violations}


def _predicted_counts(tree: TreeBall, m: int, w_prime: WeylElement) -> Dict[WeylElement, float]:
    """N_{w', w} for d(C', C) = t_{m beta_1}, from the unprimed Bernstein tables."""
    group = tree.group
    algebra = get_hecke_algebra("A1")
    params = tree.params
    beta = (m,)
    q_beta = group.q_value(group.translation(beta), params)
    b_prime = w_prime.beta[0]
    predicted: Dict[WeylElement, float] = {}
    for w0 in group.w0_elements():
        table = algebra.bernstein_coeffs(w0, beta, "unprimed")
        for (w0p, shift), coeff in table.entries.items():
            if w0p.fin != w_prime.fin:
                continue
            plus = group.translation((max(shift[0], 0),))
            minus = group.translation((max(-shift[0], 0),))
            ratio = group.q_value(minus, params) / group.q_value(plus, params)
            value = math.sqrt(q_beta) * math.sqrt(ratio) * params.evaluate(coeff)
            if abs(value) > 1e-12:
                w = WeylElement((b_prime + shift[0],), w0.fin)
                predicted[w] = predicted.get(w, 0.0) + value
    return predicted


def sectorial_count_check(tree: TreeBall, m: int, window: int = 3) -> Dict[str, Any]:
    """
    Compares, for every deep chamber C' with |L(rho(C'))| <= window, the number of chambers C
    with d(C', C) = t_{m beta_1} of each sector type against the Bernstein prediction.

    Raises:
        ResourceError: If the ball is too small to hold any deep chamber.
    """
    if m < 1:
        raise UsageError("m must be positive")
    if tree.radius < m + 2:
        raise ResourceError(f"TreeBall radius {tree.radius} too small for m = {m}", required=m + 2)
    group = tree.group
    types = tree.sector_types()
    matrix = tree.word_matrix(group.translation((m,)))
    deep = np.flatnonzero(tree.chamber_depth <= tree.radius - m - 1)
    predictions: Dict[WeylElement, Dict[WeylElement, float]] = {}
    observed: Dict[tuple, set] = {}
    mismatches = 0
    for c in deep:
        w_prime = types[c]
        if abs(group.sector_length(w_prime)[0]) > window:
            continue
        if w_prime not in predictions:
            predictions[w_prime] = _predicted_counts(tree, m, w_prime)
        start, stop = matrix.indptr[c], matrix.indptr[c + 1]
        counted: Counter = Counter()
        for col, value in zip(matrix.indices[start:stop], matrix.data[start:stop]):
            counted[types[col]] += int(value)
        predicted = predictions[w_prime]
        for w in set(predicted) | set(counted):
            if abs(predicted.get(w, 0.0) - counted.get(w, 0)) > 1e-9 * max(1.0, abs(predicted.get(w, 0.0))):
                mismatches += 1
            observed.setdefault((w_prime, w), set()).add(counted.get(w, 0))
    rows = []
    for (w_prime, w), counts in sorted(observed.items()):
        if abs(group.sector_length(w)[0]) > window:
            continue
        value = predictions[w_prime].get(w, 0.0)
        rows.append({"w_prime": group.word_string(w_prime), "w": group.word_string(w), "predicted": value,
                     "counted": sorted(counts), "ok": counts == {int(round(value))}})
    logger.info("Sectorial counts for m = %d: %d type pairs, %d mismatching chambers", m, len(rows), mismatches)
    return {"m": m, "rows": rows, "mismatches": mismatches, "passed": mismatches == 0}


# ------------------------------------------------------- spherical functions

def spherical_average(tree: TreeBall, f: np.ndarray) -> np.ndarray:
    """Average of f over each sphere {C : d(C0, C) = w}."""
    labels = tree.distance_labels()
    f = np.asarray(f)
    sums = np.bincount(labels, weights=f.real) + (1j * np.bincount(labels, weights=f.imag) if np.iscomplexobj(f) else 0)
    sizes = np.bincount(labels)
    return (sums / sizes)[labels]


def commutation_residual(tree: TreeBall, f: np.ndarray, h: HeckeElement) -> float:
    """max |h(f-bar) - (h f)-bar| over chambers within gallery distance radius - 1 of C0."""
    matrix = tree.operator_matrix(h).matrix
    lengths = np.array([tree.group.length(w) for w in tree.distance_types()])
    inside = lengths <= tree.radius - 1
    left = matrix @ spherical_average(tree, f)
    right = spherical_average(tree, matrix @ np.asarray(f))
    return float(np.max(np.abs(left - right)[inside])) if inside.any() else 0.0


def geometric_realization(rep: HeckeRep, tree: TreeBall, v: Optional[Sequence[complex]] = None,
                          v_star: Optional[Sequence[complex]] = None) -> np.ndarray:
    """
    f(C) = q_d^{-1} <v*, h_d v> with d = d(C0, C); v and v* default to the first basis vector.

    Raises:
        UnsupportedError: If the representation is not of type A1.
    """
    if rep.type_name != tree.type_name:
        raise UnsupportedError(f"trees realize {tree.type_name} representations, got {rep.type_name}")
    if float(rep.params.q_of(0)) != tree.q:
        raise UsageError(f"representation parameters {rep.params.to_dict()} differ from q = {tree.q}")
    v = _unit(rep.dim) if v is None else np.asarray(v, dtype=complex)
    v_star = _unit(rep.dim) if v_star is None else np.asarray(v_star, dtype=complex)
    cache: Dict[WeylElement, complex] = {}
    values = np.empty(tree.n_chambers, dtype=complex)
    for c, w in enumerate(tree.distance_types()):
        if w not in cache:
            cache[w] = np.vdot(v_star, evaluate(rep, w) @ v) / tree.group.q_value(w, tree.params)
        values[c] = cache[w]
    return values.real if np.allclose(values.imag, 0.0) else values


def _unit(dim: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[0] = 1.0
    return e


# ------------------------------------------------------------- radial model

class RadialModel:
    """
    Functions g on {w in W-hat(A1) : l(w) <= radius}, standing for f(C) = g(d(C0, C)) on the
    infinite tree. Values outside the ball are taken as zero.
    """

    def __init__(self, q: int, radius: int):
        if q < 1 or radius < 0:
            raise UsageError("RadialModel needs q >= 1 and radius >= 0")
        self.group = get_weyl_group("A1")
        self.params = self.group.param_system(q)
        self.q = q
        self.radius = radius
        elements = []
        for b in range(-radius - 1, radius + 2):
            for sign in (1, -1):
                w = WeylElement((b,), ((sign,),))
                if self.group.length(w) <= radius:
                    elements.append(w)
        elements.sort(key=lambda w: (self.group.length(w), w))
        self.elements = elements
        self.index = {w: k for k, w in enumerate(elements)}
        self.lengths = np.array([self.group.length(w) for w in elements])
        self.weights = np.array([self.group.q_value(w, self.params) for w in elements])
        self._right = [np.array([self.index.get(self.group.multiply(w, s), -1) for w in elements])
                       for s in self.group.generators]
        self._omega = np.array([self.index.get(self.group.multiply(w, self.group.omegas[1]), -1) for w in elements])

    def _shift(self, g: np.ndarray, table: np.ndarray) -> np.ndarray:
        out = np.zeros_like(g)
        inside = table >= 0
        out[inside] = g[table[inside]]
        return out

    def apply_generator(self, g: np.ndarray, i: int) -> np.ndarray:
        """(h_s g)(w) = q_s g(ws) if l(ws) > l(w), else g(ws) + (q_s - 1) g(w)."""
        q_s = float(self.params.q_of(i))
        table = self._right[i]
        shifted = self._shift(g, table)
        longer = np.array([t < 0 or self.lengths[t] > l for t, l in zip(table, self.lengths)])
        return np.where(longer, q_s * shifted, shifted + (q_s - 1) * g)

    def apply(self, h: HeckeElement, g: np.ndarray) -> np.ndarray:
        total = np.zeros_like(g, dtype=complex)
        for w, c in h.terms.items():
            word, k = self.group.reduced_word(w)
            current = self._shift(g.astype(complex), self._omega) if k else g.astype(complex)
            for i in reversed(word):
                current = self.apply_generator(current, i)
            total += self.params.evaluate(c) * current
        return total

    def norm(self, g: np.ndarray, p: float, mask: Optional[np.ndarray] = None) -> float:
        """(sum q_w |g(w)|^p)^{1/p}, or max |g| for p = inf."""
        values = np.abs(g) if mask is None else np.abs(g[mask])
        if math.isinf(p):
            return float(values.max()) if values.size else 0.0
        weights = self.weights if mask is None else self.weights[mask]
        return float(np.sum(weights * values ** p) ** (1.0 / p))

    def length_masses(self, g: np.ndarray, p: float) -> np.ndarray:
        """sum of q_w |g(w)|^p over each sphere l(w) = 0..radius."""
        return np.bincount(self.lengths, weights=self.weights * np.abs(g) ** p, minlength=self.radius + 1)


@dataclass
class WitnessReport:
    """
    Attributes:
        eigenvalue (complex): lambda = rep(h).
        p (float): Norm exponent.
        radius (int): Radius of the radial model.
        rows (List[Dict]): delta, ratio, tail_fraction per requested delta.
        slope (Optional[float]): Log-log slope of ratio against delta over delta > 0.
    """
    eigenvalue: complex
    p: float
    radius: int
    rows: List[Dict[str, float]] = field(default_factory=list)
    slope: Optional[float] = None

    @property
    def decreasing(self) -> bool:
        ratios = [r["ratio"] for r in sorted(self.rows, key=lambda r: -r["delta"])]
        return all(a > b for a, b in zip(ratios, ratios[1:]))


def approx_spectrum_witness(rep: HeckeRep, h: HeckeElement, p: float = 2.0,
                            deltas: Sequence[float] = (0.4, 0.2, 0.1, 0.05),
                            radius: Optional[int] = None) -> WitnessReport:
    """
    Ratios ||h f_d - lambda f_d||_p / ||f_d||_p for f_d = (1 - d)^{l} f, f the geometric
    realization of a one-dimensional representation and lambda = rep(h).

    Raises:
        UsageError: If rep is not one-dimensional or f_d is not in L_p.
        ResourceError: If more than 1% of the L_p mass lies where h f_d is truncated.
    """
    if rep.dim != 1:
        raise UsageError("approximate-spectrum witnesses need a one-dimensional representation")
    if rep.type_name != "A1":
        raise UnsupportedError("the radial model is implemented for A1")
    radius = DEFAULT_WITNESS_RADIUS if radius is None else radius
    q = int(rep.params.q_of(0))
    model = RadialModel(q, radius)
    span = max(model.group.length(w) for w in h.terms) if h.terms else 0
    exact = model.lengths <= radius - span
    lam = complex(evaluate_element(rep, h)[0, 0])
    base = np.array([evaluate(rep, w)[0, 0] for w in model.elements]) / model.weights
    report = WitnessReport(eigenvalue=lam, p=p, radius=radius)
    for delta in deltas:
        f_delta = (1 - delta) ** model.lengths * base
        if math.isinf(p):
            total = float(np.max(np.abs(f_delta)))
            tail = float(np.max(np.abs(f_delta[~exact]))) if (~exact).any() else 0.0
        else:
            masses = model.length_masses(f_delta, p)
            total = float(masses.sum())
            tail = float(masses[radius - span + 1:].sum())
        fraction = tail / total if total else 0.0
        if fraction > TAIL_FRACTION:
            required = _required_radius(model, f_delta, p, span)
            raise ResourceError(f"radius {radius} leaves {fraction:.1%} of the mass at delta = {delta}",
                                required=required)
        residual = model.apply(h, f_delta) - lam * f_delta
        ratio = model.norm(residual, p, exact) / model.norm(f_delta, p)
        logger.debug("Witness delta = %.4g: ratio %.6g, tail %.2e", delta, ratio, fraction)
        report.rows.append({"delta": float(delta), "ratio": ratio, "tail_fraction": fraction})
    points = [(math.log(r["delta"]), math.log(r["ratio"])) for r in report.rows if r["delta"] > 0 and r["ratio"] > 0]
    if len(points) >= 2:
        xs, ys = zip(*points)
        report.slope = float(np.polyfit(xs, ys, 1)[0])
    logger.info("Approximate spectrum witness: lambda = %s, slope %s", lam, report.slope)
    return report


def _required_radius(model: RadialModel, g: np.ndarray, p: float, span: int) -> Optional[int]:
    """Smallest radius whose geometric tail estimate stays under the 1% threshold."""
    if math.isinf(p):
        return None
    masses = model.length_masses(g, p)
    if model.radius < 2 or masses[-2] <= 0:
        return None
    rho = masses[-1] / masses[-2]
    if rho >= 1:
        raise UsageError("f_delta is not in L_p at this delta; increase delta or p")
    total = masses.sum()
    k = model.radius
    while masses[-1] * rho ** (k - model.radius + 1) / (1 - rho) > TAIL_FRACTION * total:
        k += 1
    return k + span


# ------------------------------------------------------------------- norms

def operator_norm(matrix, p: float, max_iter: int = 20000, tol: float = 1e-10) -> float:
    """
    ||A||_p for p in {1, 2, inf}: max column sum, power iteration on A^T A, max row sum.

    The p = 2 value is the last Rayleigh quotient, a lower bracket of the true norm.

    Raises:
        UsageError: For other p.
    """
    a = sp.csr_matrix(matrix, dtype=float)
    if p == 1:
        return float(abs(a).sum(axis=0).max()) if a.nnz else 0.0
    if math.isinf(p):
        return float(abs(a).sum(axis=1).max()) if a.nnz else 0.0
    if p != 2:
        raise UsageError(f"empirical norms are computed for p in {{1, 2, inf}}, got {p}")
    if a.nnz == 0:
        return 0.0
    rng = np.random.default_rng(get_settings().seed)
    v = 1.0 + 0.1 * rng.random(a.shape[1])
    v /= np.linalg.norm(v)
    value = 0.0
    for iteration in range(max_iter):
        w = a @ v
        new = float(np.dot(w, w))
        u = a.T @ w
        size = np.linalg.norm(u)
        if size == 0:
            return 0.0
        v = u / size
        if abs(new - value) <= tol * new:
            value = new
            logger.debug("Power iteration converged after %d steps", iteration + 1)
            break
        value = new
    else:
        logger.warning("Power iteration stopped at %d iterations; reporting the last Rayleigh quotient", max_iter)
    return math.sqrt(value)


def norm_bound_check(q: int, radius: int, max_length: int, p: float = 2.0) -> List[BoundReport]:
    """Empirical ||h_w||_p on a TreeBall against norm_bound_hw, for every w with l(w) <= max_length."""
    tree = TreeBall(q, radius)
    reports = []
    for w in tree.group.enumerate_ball(max_length):
        report = norm_bound_hw("A1", q, w, p)
        report.empirical = operator_norm(tree.word_matrix(w), p)
        if not report.ok:
            logger.error("Norm bound violated for %s: %.6g > %.6g", report.inputs["w"], report.empirical, report.value)
        reports.append(report)
    return reports


def _require_random_walk(h: HeckeElement) -> None:
    if not h.algebra.is_random_walk(h):
        raise UsageError("expected a random-walk element: self adjoint with non-negative coefficients")
    if h.algebra.group.type_name != "A1":
        raise UnsupportedError("tree checks are implemented for A1")


def lambda2_estimate(h: HeckeElement, q: int, radius: int) -> float:
    """||h||_2 on the tree, bracketed from below by the interior compression of a TreeBall."""
    _require_random_walk(h)
    tree = TreeBall(q, radius)
    inside = np.flatnonzero(tree.interior_mask(1))
    matrix = tree.operator_matrix(h).matrix[inside][:, inside]
    return operator_norm(matrix, 2)


def _move_graph(X: ChamberComplex) -> nx.Graph:
    """Panel adjacency plus one edge per Omega-hat move."""
    g = X.panel_graph()
    for perm in (X.omega or {}).values():
        g.add_edges_from((c, target) for c, target in enumerate(perm) if c != target)
    return g


def _tree_q(X: ChamberComplex) -> int:
    if X.type_name != "A1":
        raise UnsupportedError("tree comparisons need a regular-mode (A1) complex")
    return int(X.params.q_of(0))


def serre_check(complexes: Sequence[ChamberComplex], h: HeckeElement, radius: int = 6) -> List[Dict[str, Any]]:
    """
    Distances from tree spectrum sample points (eigenvalues of a TreeBall compression of h)
    to the nearest nontrivial eigenvalue of h on each quotient, with the graph's girth.
    """
    _require_random_walk(h)
    samples_by_q: Dict[int, np.ndarray] = {}
    rows = []
    for X in complexes:
        q = _tree_q(X)
        if q not in samples_by_q:
            tree = TreeBall(q, radius)
            inside = np.flatnonzero(tree.interior_mask(1))
            dense = tree.operator_matrix(h).matrix[inside][:, inside].toarray().astype(float)
            samples_by_q[q] = np.unique(np.round(np.linalg.eigvalsh(dense), 9))
        samples = samples_by_q[q]
        spectrum = nontrivial_spectrum(X, h).real
        distances = np.array([np.min(np.abs(spectrum - s)) for s in samples]) if len(spectrum) else np.array([np.inf])
        girth = injectivity_radius(X) if X.graph is not None else None
        rows.append({"n_chambers": X.n_chambers, "girth": girth, "samples": len(samples),
                     "max_distance": float(distances.max()), "mean_distance": float(distances.mean())})
    return rows


def alon_boppana_check(complexes: Sequence[ChamberComplex], h: HeckeElement, radius: int = 10) -> List[Dict[str, Any]]:
    """
    For each quotient with chamber diameter N: the lower bound max ||h^n 1_C0||^{1/n} over
    n with 2 n l < N and n l <= radius, against the largest |eigenvalue| of h on functions
    orthogonal to the constants.

    l is the longest word in h, an Omega-hat factor counting as one step; N is measured with
    Omega-hat moves as edges, so the supports of h^n at two chambers N apart are disjoint.
    """
    _require_random_walk(h)
    group = h.algebra.group
    span = max(group.length(w) + (1 if group.reduced_word(w)[1] else 0) for w in h.terms)
    tol = get_settings().tolerance
    trees: Dict[int, TreeBall] = {}
    rows = []
    for X in complexes:
        q = _tree_q(X)
        if q not in trees:
            trees[q] = TreeBall(q, radius)
        tree = trees[q]
        matrix = tree.operator_matrix(h).matrix
        diameter = nx.diameter(_move_graph(X))
        bound, used = 0.0, 0
        v = np.zeros(tree.n_chambers)
        v[0] = 1.0
        for n in range(1, radius + 1):
            if 2 * n * span >= diameter or n * span > radius:
                break
            v = matrix @ v
            bound = max(bound, float(np.linalg.norm(v)) ** (1.0 / n))
            used = n
        spectrum = nontrivial_spectrum(X, h, include_sign=False)
        largest = float(np.max(np.abs(spectrum))) if len(spectrum) else 0.0
        passed = largest >= bound - tol * max(1.0, bound)
        logger.info("Alon-Boppana: N = %d, n = %d, bound %.6f, largest %.6f -> %s",
                    diameter, used, bound, largest, "pass" if passed else "FAIL")
        rows.append({"n_chambers": X.n_chambers, "diameter": diameter, "n": used, "lower_bound": bound,
                     "largest_nontrivial": largest, "passed": passed})
    return rows
