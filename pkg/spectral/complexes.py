"""
Finite chamber systems and their Hecke operators.

This module provides:
- `SparseModel`, the shared machinery turning generator matrices into the
  sparse operator of any Hecke algebra element.
- `ChamberComplex`, a validated finite quotient given by colored panels, built
  from graph files (oriented edges in regular mode, undirected edges of a
  biregular bipartite graph in bipartite mode), from chamber-system files, or
  as a thin quotient of a Coxeter complex.
- Rank-one spectral analysis: non-backtracking spectra, expander classification,
  the Ihara-Bass cross-check, boundary operators, gallery distances, the
  distance theorem check, injectivity radius and random regular graphs.
"""
import json
import logging
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
import sympy

from core.config import get_settings
from core.errors import ResourceError, UnsupportedError, UsageError, ValidationError
from core.hecke import HeckeElement, get_hecke_algebra
from core.laurent import LaurentPoly
from core.weyl import AffineWeylGroup, ParamSystem, WeylElement, get_weyl_group
from spectral.bounds import diameter_bounds
from spectral.reps import p_from_eigenvalues

logger = logging.getLogger(__name__)


@dataclass
class SparseOp:
    """A sparse operator on chamber functions together with the element it realizes."""
    matrix: sp.csr_matrix
    label: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()


def _coefficient_value(c: LaurentPoly, params: ParamSystem):
    try:
        return c.evaluate_exact(params.q)
    except ValueError:
        return params.evaluate(c)


def _max_abs(m: sp.spmatrix) -> float:
    m = sp.csr_matrix(m)
    m.eliminate_zeros()
    return float(abs(m).max()) if m.nnz else 0.0


class SparseModel:
    """
    Chambers 0..N-1 with integer generator matrices and optional Omega-hat permutations.

    Subclasses fill `group`, `params`, `n_chambers`, `_generators` and `_omegas`.
    """
    group: AffineWeylGroup
    params: ParamSystem
    n_chambers: int
    _generators: List[sp.csr_matrix]
    _omegas: Optional[Dict[int, sp.csr_matrix]]

    def _init_cache(self) -> None:
        self._word_cache: Dict[WeylElement, sp.csr_matrix] = {}

    @property
    def type_name(self) -> str:
        return self.group.type_name

    @property
    def has_omega(self) -> bool:
        return self._omegas is not None

    def generator_matrix(self, i: int) -> sp.csr_matrix:
        return self._generators[i]

    def omega_matrix(self, k: int) -> sp.csr_matrix:
        if self._omegas is None:
            raise UsageError(f"{self.type_name} complex has no Omega-hat action")
        return self._omegas[k]

    def identity(self) -> sp.csr_matrix:
        return sp.identity(self.n_chambers, dtype=np.int64, format="csr")

    def word_matrix(self, w: WeylElement) -> sp.csr_matrix:
        """Matrix of h_w as the product along a reduced word."""
        cached = self._word_cache.get(w)
        if cached is not None:
            return cached
        word, k = self.group.reduced_word(w)
        result = self.identity()
        for i in word:
            result = result @ self._generators[i]
        if k:
            result = result @ self.omega_matrix(k)
        result = sp.csr_matrix(result)
        self._word_cache[w] = result
        return result

    def operator_matrix(self, h: HeckeElement) -> SparseOp:
        """
        Matrix of a Hecke algebra element at the complex's parameters.

        Raises:
            UsageError: If h belongs to another type, or has Omega-hat terms without an Omega-hat action.
        """
        if h.algebra.group is not self.group:
            raise UsageError(f"element of {h.algebra.group.type_name} applied to a {self.type_name} complex")
        values = {w: _coefficient_value(c, self.params) for w, c in h.terms.items()}
        integral = all(isinstance(v, Fraction) and v.denominator == 1 for v in values.values())
        dtype = np.int64 if integral else np.float64
        result = sp.csr_matrix((self.n_chambers, self.n_chambers), dtype=dtype)
        for w, v in values.items():
            scale = int(v) if integral else float(v)
            result = result + self.word_matrix(w).astype(dtype) * scale
        result.eliminate_zeros()
        return SparseOp(matrix=sp.csr_matrix(result), label=repr(h))

    def check_relations(self) -> None:
        """
        Verifies the Iwahori-Hecke relations in exact integer arithmetic.

        Raises:
            ValidationError: Naming the failing relation and the largest residual entry.
        """
        ident = self.identity()
        for i, m in enumerate(self._generators):
            q = self.params.q_of(i)
            if q.denominator != 1:
                raise ValidationError(f"q_s{i} = {q} is not an integer", relation=f"q_s{i}")
            residual = m @ m - ident * int(q) - m * (int(q) - 1)
            if _max_abs(residual):
                raise ValidationError(f"quadratic relation fails for s{i}", relation=f"h_s{i}^2",
                                      residual=_max_abs(residual))
        coxeter = self.group.coxeter_matrix()
        size = len(self._generators)
        for i in range(size):
            for j in range(i + 1, size):
                order = coxeter[i][j]
                if order == 0:
                    continue
                left, right = ident, ident
                for k in range(order):
                    left = left @ self._generators[i if k % 2 == 0 else j]
                    right = right @ self._generators[j if k % 2 == 0 else i]
                if _max_abs(left - right):
                    raise ValidationError(f"braid relation fails for s{i}, s{j}", relation=f"braid(s{i},s{j})",
                                          residual=_max_abs(left - right))
        if self._omegas is not None:
            for k, p in self._omegas.items():
                for i, target in enumerate(self.group.omega_perms[k]):
                    diff = p @ self._generators[i] @ p.T - self._generators[target]
                    if _max_abs(diff):
                        name = self.group.omega_name(k)
                        raise ValidationError(f"{name} does not rotate s{i} to s{target}",
                                              relation=f"twist({name},s{i})", residual=_max_abs(diff))
                for k2, p2 in self._omegas.items():
                    target = self.group.omega_index(self.group.multiply(self.group.omegas[k], self.group.omegas[k2]))
                    if _max_abs(p @ p2 - self._omegas[target]):
                        raise ValidationError("Omega-hat action is not a group action", relation="omega")


def permutation_matrix(perm: Sequence[int]) -> sp.csr_matrix:
    """(P f)(c) = f(perm[c])."""
    n = len(perm)
    return sp.csr_matrix((np.ones(n, dtype=np.int64), (np.arange(n), np.asarray(perm))), shape=(n, n))


def block_matrix(blocks: Sequence[Sequence[int]], n: int) -> sp.csr_matrix:
    """Sum over blocks of J - I."""
    rows, cols = [], []
    for block in blocks:
        for a in block:
            for b in block:
                if a != b:
                    rows.append(a)
                    cols.append(b)
    data = np.ones(len(rows), dtype=np.int64)
    return sp.csr_matrix((data, (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))), shape=(n, n))


class ChamberComplex(SparseModel):
    """
    A finite quotient given by panels.

    Attributes:
        group (AffineWeylGroup): Affine type of the complex.
        params (ParamSystem): Integer parameters q_s (blocks have q_s + 1 chambers).
        n_chambers (int): Number of chambers.
        panels (List[List[List[int]]]): Per generator, the partition of chambers into blocks.
        omega (Optional[Dict[int, List[int]]]): Per Omega-hat index, a permutation of chambers.
        mode (str): "regular", "bipartite" or "chambers".
        graph (Optional[nx.Graph]): Source graph for graph-based complexes.
        chamber_edges (List[Tuple[int, int]]): Oriented (regular) or undirected (bipartite) edge per chamber.
    """

    def __init__(self, group: AffineWeylGroup, params: ParamSystem, n_chambers: int,
                 panels: List[List[List[int]]], omega: Optional[Dict[int, List[int]]] = None,
                 mode: str = "chambers", graph: Optional[nx.Graph] = None,
                 chamber_edges: Optional[List[Tuple[int, int]]] = None):
        self.group = group
        self.params = params
        self.n_chambers = n_chambers
        self.panels = panels
        self.omega = omega
        self.mode = mode
        self.graph = graph
        self.chamber_edges = chamber_edges or []
        self._init_cache()
        self._validate_panels()
        self._generators = [block_matrix(blocks, n_chambers) for blocks in panels]
        self._omegas = None
        if omega is not None:
            self._omegas = {k: permutation_matrix(perm) for k, perm in omega.items()}
            self._omegas.setdefault(0, self.identity())
        self.check_relations()
        logger.info("Loaded %s complex of type %s: %d chambers, q = %s",
                    mode, group.type_name, n_chambers, params.to_dict())

    def _validate_panels(self) -> None:
        if len(self.panels) != self.group.rank + 1:
            raise ValidationError(f"expected panels for s0..s{self.group.rank}", relation="panels")
        for i, blocks in enumerate(self.panels):
            q = self.params.q_of(i)
            seen = sorted(c for block in blocks for c in block)
            if seen != list(range(self.n_chambers)):
                raise ValidationError(f"panels of s{i} do not partition the chambers", relation=f"panel s{i}")
            sizes = {len(block) for block in blocks}
            if sizes != {q + 1}:
                raise ValidationError(f"blocks of s{i} have sizes {sorted(sizes)}, expected {q + 1}",
                                      relation=f"panel s{i}")
        if self.omega is not None:
            for k, perm in self.omega.items():
                if sorted(perm) != list(range(self.n_chambers)):
                    raise ValidationError(f"{self.group.omega_name(k)} is not a permutation", relation="omega")

    def component_labels(self) -> np.ndarray:
        adjacency = sum(self._generators[1:], self._generators[0])
        if self._omegas is not None:
            for p in self._omegas.values():
                adjacency = adjacency + p
        _, labels = connected_components(adjacency, directed=False)
        return labels

    def chamber_graph(self) -> nx.Graph:
        """Undirected gallery graph: line graph of the source graph, else panel adjacency."""
        if self.graph is not None:
            line = nx.line_graph(self.graph)
            index = {e: k for k, e in enumerate(sorted(tuple(sorted(e)) for e in self.graph.edges()))}
            return nx.relabel_nodes(line, {node: index[tuple(sorted(node))] for node in line.nodes()})
        return self.panel_graph()

    def panel_graph(self) -> nx.Graph:
        """Chambers joined when they share a panel of some color."""
        g = nx.Graph()
        g.add_nodes_from(range(self.n_chambers))
        for blocks in self.panels:
            for block in blocks:
                for a in block:
                    for b in block:
                        if a < b:
                            g.add_edge(a, b)
        return g


# ------------------------------------------------------------------ loading

def graph_complex(graph: nx.Graph, mode: str = "regular") -> ChamberComplex:
    """
    Chamber complex of a simple connected graph.

    Regular mode: chambers are oriented edges (type A1), h_s0 sums over edges with the same
    head, h_s1 over edges with the same tail, and omega reverses the edge.
    Bipartite mode: chambers are undirected edges (type BC1); s0-panels are the vertices of
    the color class containing vertex 0.

    Raises:
        ValidationError: If the graph is not simple, connected and (bi)regular with degrees >= 3 (>= 2).
    """
    if nx.number_of_selfloops(graph):
        raise ValidationError("graph has self-loops", relation="simple")
    if graph.number_of_nodes() == 0 or not nx.is_connected(graph):
        raise ValidationError("graph is not connected", relation="connected")
    degrees = dict(graph.degree())
    edges = sorted(tuple(sorted(e)) for e in graph.edges())
    if mode == "regular":
        values = set(degrees.values())
        if len(values) != 1 or min(values) < 3:
            raise ValidationError(f"regular mode needs a constant degree >= 3, got degrees {sorted(values)}",
                                  relation="degree")
        q = min(values) - 1
        group = get_weyl_group("A1")
        params = group.param_system(q)
        chambers = []
        for u, v in edges:
            chambers.extend([(u, v), (v, u)])
        by_head: Dict[int, List[int]] = {}
        by_tail: Dict[int, List[int]] = {}
        for c, (u, v) in enumerate(chambers):
            by_head.setdefault(v, []).append(c)
            by_tail.setdefault(u, []).append(c)
        panels = [[by_head[x] for x in sorted(by_head)], [by_tail[x] for x in sorted(by_tail)]]
        flip = [c ^ 1 for c in range(len(chambers))]
        return ChamberComplex(group, params, len(chambers), panels, {1: flip}, mode="regular",
                              graph=graph, chamber_edges=chambers)
    if mode == "bipartite":
        if not nx.is_bipartite(graph):
            raise ValidationError("bipartite mode needs a bipartite graph", relation="bipartite")
        color = nx.bipartite.color(graph)
        first = min(graph.nodes())
        if color[first] != 0:
            color = {x: 1 - c for x, c in color.items()}
        part_degrees = [{degrees[x] for x in graph if color[x] == k} for k in (0, 1)]
        if any(len(d) != 1 for d in part_degrees) or min(min(d) for d in part_degrees) < 2:
            raise ValidationError(f"graph is not biregular with degrees >= 2: {part_degrees}", relation="degree")
        q0, q1 = (min(d) - 1 for d in part_degrees)
        group = get_weyl_group("BC1")
        params = group.param_system({"s0": q0, "s1": q1})
        blocks: List[Dict[int, List[int]]] = [{}, {}]
        for c, (u, v) in enumerate(edges):
            for x in (u, v):
                blocks[color[x]].setdefault(x, []).append(c)
        panels = [[blocks[k][x] for x in sorted(blocks[k])] for k in (0, 1)]
        return ChamberComplex(group, params, len(edges), panels, None, mode="bipartite",
                              graph=graph, chamber_edges=edges)
    raise UsageError(f"unknown graph mode {mode!r}")


def load_graph(path: str, mode: str = "regular") -> ChamberComplex:
    """
    Loads a graph file: first line "N M", then M lines "u v" with 0-based vertices.

    Raises:
        UsageError: If the file cannot be read.
        ValidationError: If it is malformed or the graph is unsuitable.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = [line.split() for line in f if line.strip() and not line.startswith("#")]
    except OSError as e:
        logger.error("Could not read graph file %s: %s", path, e)
        raise UsageError(f"cannot read {path}: {e}") from e
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        pairs = [(int(a), int(b)) for a, b in lines[1:]]
    except (IndexError, ValueError) as e:
        logger.error("Malformed graph file %s: %s", path, e)
        raise ValidationError(f"{path} is not a graph file: {e}", relation="format") from e
    if len(pairs) != m:
        raise ValidationError(f"{path} declares {m} edges but lists {len(pairs)}", relation="format")
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u}, {v}) leaves the vertex range 0..{n - 1}", relation="format")
        if graph.has_edge(u, v):
            raise ValidationError(f"repeated edge ({u}, {v})", relation="simple")
        graph.add_edge(u, v)
    logger.info("Read graph %s: %d vertices, %d edges", path, n, m)
    return graph_complex(graph, mode)


def chamber_system_from_dict(data: Mapping[str, Any]) -> ChamberComplex:
    """Builds a complex from {type, q, chambers, panels: {"s0": [[...], ...]}, omega: {"w1": perm}}."""
    try:
        group = get_weyl_group(str(data["type"]))
        params = group.param_system(data["q"])
        n = int(data["chambers"])
        panels = [[[int(c) for c in block] for block in data["panels"][f"s{i}"]] for i in range(group.rank + 1)]
        omega = None
        if data.get("omega"):
            omega = {}
            for name, perm in data["omega"].items():
                kind, k = group.generator_index(name)
                if kind != "w":
                    raise ValueError(f"{name} is not an Omega-hat element")
                omega[k] = [int(x) for x in perm]
            omega = _close_omega(group, omega, n)
    except (IndexError, KeyError, TypeError, ValueError, UsageError) as e:
        logger.error("Malformed chamber system: %s", e)
        raise ValidationError(f"malformed chamber system: {e}", relation="format") from e
    return ChamberComplex(group, params, n, panels, omega, mode="chambers")


def _close_omega(group: AffineWeylGroup, omega: Dict[int, List[int]], n: int) -> Dict[int, List[int]]:
    known = dict(omega)
    known[0] = list(range(n))
    changed = True
    while changed:
        changed = False
        for k1, p1 in list(known.items()):
            for k2, p2 in list(known.items()):
                k = group.omega_index(group.multiply(group.omegas[k1], group.omegas[k2]))
                if k not in known:
                    # (P1 P2 f)(c) = f(p2[p1[c]])
                    known[k] = [p2[p1[c]] for c in range(n)]
                    changed = True
    return known


def load_chamber_system(path: str) -> ChamberComplex:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        logger.error("Could not read chamber system %s: %s", path, e)
        raise UsageError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        logger.error("Chamber system %s is not valid JSON: %s", path, e)
        raise ValidationError(f"{path} is not valid JSON: {e}", relation="format") from e
    return chamber_system_from_dict(data)


def thin_quotient(type_name: str, modulus: int) -> ChamberComplex:
    """
    The thin complex W-hat / t_{m Q^vee}: chambers are W-hat elements with translation parts
    taken modulo m times the coroot lattice, h_s moves w to ws and omega moves w to w omega.
    """
    if modulus < 1:
        raise UsageError("modulus must be positive")
    group = get_weyl_group(type_name)
    n = group.rank
    basis = sympy.Matrix([list(group.rs.wall_simple_coroot(i)) for i in range(n)]).T
    inverse = basis.inv()
    to_basis = [[Fraction(int(x.p), int(x.q)) for x in inverse.row(r)] for r in range(n)]
    from_basis = [[int(basis[r, c]) for c in range(n)] for r in range(n)]

    def canonical(w: WeylElement) -> WeylElement:
        coords = [sum(a * b for a, b in zip(row, w.beta)) for row in to_basis]
        reduced = [c - modulus * (c // modulus) for c in coords]
        beta = tuple(int(sum(Fraction(a) * b for a, b in zip(row, reduced))) for row in from_basis)
        return WeylElement(beta, w.fin)

    movers = list(group.generators) + list(group.omegas[1:])
    start = canonical(group.identity)
    index = {start: 0}
    order = [start]
    for w in order:
        for g in movers:
            x = canonical(group.multiply(w, g))
            if x not in index:
                index[x] = len(order)
                order.append(x)
    total = len(order)
    cap = 100000
    if total > cap:
        raise ResourceError(f"thin quotient has {total} chambers", required=total)
    panels = []
    for s in group.generators:
        done, blocks = set(), []
        for w in order:
            if w in done:
                continue
            partner = canonical(group.multiply(w, s))
            blocks.append([index[w], index[partner]])
            done.update({w, partner})
        panels.append(blocks)
    omega = {k: [index[canonical(group.multiply(w, group.omegas[k]))] for w in order]
             for k in range(1, len(group.omegas))}
    params = group.param_system(1)
    return ChamberComplex(group, params, total, panels, omega or None, mode="chambers")


# ---------------------------------------------------------------- spectra

def trivial_vectors(X: ChamberComplex, include_sign: bool = True) -> np.ndarray:
    """
    Rows spanning the trivial subrepresentation: component indicators, plus the
    orientation sign of each component when the source graph is bipartite (regular mode).
    """
    labels = X.component_labels()
    rows = []
    for comp in sorted(set(labels)):
        rows.append((labels == comp).astype(float))
    if include_sign and X.mode == "regular" and X.graph is not None and nx.is_bipartite(X.graph):
        color = nx.bipartite.color(X.graph)
        sign = np.array([1.0 if color[u] == 0 else -1.0 for u, _ in X.chamber_edges])
        for comp in sorted(set(labels)):
            rows.append(sign * (labels == comp))
    return np.array(rows)


def nontrivial_spectrum(X: ChamberComplex, h: HeckeElement, include_sign: bool = True) -> np.ndarray:
    """Eigenvalues of h on the orthogonal complement of the trivial subrepresentation."""
    a = X.operator_matrix(h).toarray().astype(complex)
    basis = scipy.linalg.null_space(trivial_vectors(X, include_sign))
    if basis.shape[1] == 0:
        return np.array([], dtype=complex)
    compressed = basis.conj().T @ a @ basis
    eigs = np.linalg.eigvals(compressed)
    return eigs[np.lexsort((eigs.imag, eigs.real))]


@dataclass
class ExpanderReport:
    """
    Attributes:
        p_min (float): From the nontrivial eigenvalues of h_{beta_1}.
        ramanujan (bool): All nontrivial |lambda| <= q_beta^{1/2} + tol.
        above_trivial (bool): Some nontrivial |lambda| > q_beta.
        q_beta (float): q of the translation t_{beta_1}.
        nb_eigenvalues (np.ndarray): Nontrivial eigenvalues.
    """
    p_min: float
    ramanujan: bool
    above_trivial: bool
    q_beta: float
    nb_eigenvalues: np.ndarray = field(repr=False)


def _translation_beta1(X: ChamberComplex) -> WeylElement:
    if X.group.rank != 1:
        raise UnsupportedError("expander classification is implemented for rank-one complexes")
    return X.group.translation((1,))


def nb_operator(X: ChamberComplex) -> SparseOp:
    """h_{beta_1}: the non-backtracking operator s0 w1 (regular) or s0 s1 (bipartite)."""
    t = _translation_beta1(X)
    return SparseOp(matrix=X.word_matrix(t), label=X.group.word_string(t))


def classify_expander(X: ChamberComplex) -> ExpanderReport:
    """
    Classifies a rank-one complex from the nontrivial spectrum of h_{beta_1}.

    Args:
        X: A regular or bipartite graph complex, or a rank-one chamber system.

    Returns:
        ExpanderReport: p_min, the Ramanujan verdict and the eigenvalues behind them.

    Raises:
        UnsupportedError: If X is not of rank one.
    """
    t =_translation_beta1(X)
    algebra = get_hecke_algebra(X.type_name)
    q_beta = X.group.q_value(t, X.params)
    eigs = nontrivial_spectrum(X, algebra.basis(t))
    p, above = p_from_eigenvalues(eigs, q_beta)
    tol = get_settings().tolerance
    ramanujan = bool(np.all(np.abs(eigs) <= np.sqrt(q_beta) + tol)) if len(eigs) else True
    logger.info("Expander classification: p_min = %s, ramanujan = %s", p, ramanujan)
    return ExpanderReport(p_min=p, ramanujan=ramanujan, above_trivial=above, q_beta=q_beta, nb_eigenvalues=eigs)


def ihara_bass_check(X: ChamberComplex, skip: float = 1e-6) -> float:
    """
    Max over NB eigenvalues lambda off {+-1, q} of min_a |lambda^2 - a lambda + q|,
    a ranging over adjacency eigenvalues.
    """
    if X.mode != "regular" or X.graph is None:
        raise UnsupportedError("the Ihara-Bass check needs a regular graph complex")
    q = float(X.params.q_of(0))
    adjacency = np.linalg.eigvalsh(nx.to_numpy_array(X.graph, nodelist=sorted(X.graph.nodes())))
    nb = np.linalg.eigvals(nb_operator(X).toarray().astype(float))
    worst = 0.0
    for lam in nb:
        if abs(lam - 1) < skip or abs(lam + 1) < skip or abs(lam - q) < skip:
            continue
        residual = float(np.min(np.abs(lam * lam - adjacency * lam + q)))
        worst = max(worst, residual)
    logger.debug("Ihara-Bass residual %.3e", worst)
    return worst


def boundary_ops(X: ChamberComplex) -> Dict[str, Dict[str, sp.csr_matrix]]:
    """
    Boundary (chambers -> faces), coboundary (faces -> chambers) and e_I = delta_I d_I
    for the two vertex colors of a bipartite complex.

    Raises:
        UnsupportedError: Outside bipartite mode.
    """
    if X.mode != "bipartite":
        raise UnsupportedError("boundary operators need genuinely colored faces (bipartite mode)")
    ops = {}
    for i, blocks in enumerate(X.panels):
        rows, cols = [], []
        for face, block in enumerate(blocks):
            for c in block:
                rows.append(face)
                cols.append(c)
        boundary = sp.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)),
                                 shape=(len(blocks), X.n_chambers))
        coboundary = sp.csr_matrix(boundary.T)
        ops[f"s{i}"] = {"boundary": boundary, "coboundary": coboundary, "e": sp.csr_matrix(coboundary @ boundary)}
    return ops


def boundary_relations_check(X: ChamberComplex) -> Dict[str, int]:
    """Largest residual entry of d delta = (1 + q) Id, delta d = 1 + h_s and e^2 = (1 + q) e, per color."""
    result = {}
    for name, op in boundary_ops(X).items():
        i = int(name[1:])
        q = int(X.params.q_of(i))
        faces = op["boundary"].shape[0]
        r1 = _max_abs(op["boundary"] @ op["coboundary"] - sp.identity(faces, dtype=np.int64) * (1 + q))
        r2 = _max_abs(op["e"] - X.identity() - X.generator_matrix(i))
        r3 = _max_abs(op["e"] @ op["e"] - op["e"] * (1 + q))
        result[name] = int(max(r1, r2, r3))
    return result


def trivial_invariance_check(X: ChamberComplex, max_length: int) -> float:
    """Largest |h_w 1 - q_w 1| over the ball of radius max_length."""
    ones = np.ones(X.n_chambers)
    worst = 0.0
    for w in X.group.enumerate_ball(max_length):
        if not X.has_omega and X.group.reduced_word(w)[1]:
            continue
        residual = X.word_matrix(w) @ ones - X.group.q_value(w, X.params) * ones
        worst = max(worst, float(np.max(np.abs(residual))))
    return worst


# -------------------------------------------------------------- distances

@dataclass
class GalleryStats:
    start: int
    histogram: Dict[int, int]
    eccentricity: int
    diameter: int
    median: float


def _distance_table(X: ChamberComplex) -> Tuple[nx.Graph, Dict[int, Dict[int, int]]]:
    g = X.chamber_graph()
    if not nx.is_connected(g):
        raise ValidationError("chamber graph is disconnected", relation="connected")
    return g, dict(nx.all_pairs_shortest_path_length(g))


def gallery_stats(X: ChamberComplex, start: int = 0) -> GalleryStats:
    """
    Gallery distances from one chamber (undirected chambers for graph complexes).

    Raises:
        ValidationError: If the chamber graph is disconnected.
    """
    g, table = _distance_table(X)
    if start not in table:
        raise UsageError(f"chamber {start} does not exist")
    distances = table[start]
    histogram: Dict[int, int] = {}
    for d in distances.values():
        histogram[d] = histogram.get(d, 0) + 1
    diameter = max(max(row.values()) for row in table.values())
    return GalleryStats(start=start, histogram=dict(sorted(histogram.items())), eccentricity=max(distances.values()),
                        diameter=diameter, median=float(statistics.median(distances.values())))


def distance_theorem_check(X: ChamberComplex, p: Optional[float] = None) -> Dict[str, Any]:
    """
    Compares gallery distances with the distance and diameter bounds for the computed p.

    p defaults to max(2, p_min) from `classify_expander`; q is the smallest parameter.
    """
    if p is None:
        p = max(2.0, classify_expander(X).p_min)
    g, table = _distance_table(X)
    n = g.number_of_nodes()
    q = float(min(X.params.q))
    bounds = diameter_bounds(X.type_name, p, q, n)
    all_distances = [d for row in table.values() for d in row.values()]
    diameter = max(all_distances)
    within = sum(1 for d in all_distances if d <= bounds["avg_upper"]) / len(all_distances)
    below = sum(1 for d in all_distances if d < bounds["avg_lower"]) / len(all_distances)
    passed = diameter <= bounds["diameter_upper"]
    logger.info("Distance check: N = %d, diameter %d vs bound %.3f -> %s", n, diameter,
                bounds["diameter_upper"], "pass" if passed else "FAIL")
    return {"p": p, "q": q, "n_chambers": n, "diameter": diameter, "bounds": bounds,
            "fraction_within_avg_upper": within, "fraction_below_avg_lower": below, "passed": passed}


def injectivity_radius(X: ChamberComplex, max_depth: Optional[int] = None) -> int:
    """
    Girth of the source graph for graph complexes.

    For chamber systems: the largest r such that, from every chamber, the chambers at
    each Weyl distance w with l(w) <= r are distinct (0/1 rows of h_w with disjoint
    supports). The search stops at max_depth (default HECKE_MAX_BALL_LENGTH), in which
    case the returned value is only a lower bound.
    """
    if X.graph is not None:
        return int(nx.girth(X.graph))
    depth = get_settings().max_ball_length if max_depth is None else max_depth
    covered = sp.csr_matrix((X.n_chambers, X.n_chambers), dtype=np.int64)
    for w in X.group.enumerate_ball(depth):
        if not X.has_omega and X.group.reduced_word(w)[1]:
            continue
        m = X.word_matrix(w)
        if _max_abs(m) > 1 or covered.multiply(m).count_nonzero():
            radius = max(X.group.length(w) - 1, 0)
            logger.info("Injectivity radius %d: distance %s repeats a chamber", radius, X.group.word_string(w))
            return radius
        covered = covered + m
    logger.info("No repeated chamber up to depth %d; injectivity radius is at least %d", depth, depth)
    return depth


def random_regular_graph(n: int, d: int, seed: Optional[int] = None, max_attempts: int = 1000) -> nx.Graph:
    """
    Pairing-model d-regular graph on n vertices, rejecting loops, repeated edges and
    disconnected outcomes.

    Raises:
        UsageError: If n * d is odd or d >= n.
        ResourceError: If no acceptable pairing is found within max_attempts.
    """
    if (n * d) % 2 or d >= n or d < 1:
        raise UsageError(f"no simple {d}-regular graph on {n} vertices")
    rng = np.random.default_rng(get_settings().seed if seed is None else seed)
    points = np.repeat(np.arange(n), d)
    for attempt in range(max_attempts):
        pairs = rng.permutation(points).reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        keys = {tuple(sorted((int(a), int(b)))) for a, b in pairs}
        if len(keys) != len(pairs):
            continue
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(sorted(keys))
        if nx.is_connected(graph):
            logger.debug("Pairing model succeeded after %d attempts", attempt + 1)
            return graph
    raise ResourceError(f"no simple connected {d}-regular graph on {n} vertices after {max_attempts} attempts")


def write_graph(graph: nx.Graph, path: str) -> None:
    edges = sorted(tuple(sorted(e)) for e in graph.edges())
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{graph.number_of_nodes()} {len(edges)}\n")
        for u, v in edges:
            f.write(f"{u} {v}\n")
