"""
Root system tables and exact lattice arithmetic.

This module provides the `RootSystem` class, which holds, for one irreducible
(possibly non-reduced) crystallographic root system:
- The positive roots in simple-root coordinates and the Cartan matrix.
- Coroots and simple coweights. Coweights are stored in the simple-coweight
  basis, so a coweight is an integer vector z with z_i = <alpha_i, beta>.
- The finite Weyl group W0, enumerated once as integer matrices acting on
  coweight coordinates, each with one reduced word.
- The length-zero group Omega-hat = P/Q together with its permutations of the
  affine generators.

Supported types are hard-coded tables: A1, BC1, A2, A3, C2, G2. All arithmetic
is over the integers or `fractions.Fraction`; floats never enter here.

Conventions:
- cartan[i][j] = <alpha_i, alpha_j^vee>; the simple coroot alpha_j^vee is
  column j of the Cartan matrix written in coweight coordinates.
- A W0 element M acts on coweights by x -> M x. The root with coordinates
  M^T a is w^{-1}(alpha).
- "Wall roots" are the positive roots alpha with 2*alpha not a root. Their
  hyperplanes are the walls of the affine arrangement; lengths and the
  affine generator s0 are taken from them.
"""
import logging
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import sympy

from core.errors import ConfigurationError, UsageError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]
AffineTuple = Tuple[Vector, Matrix]

_TABLES = {
    "A1": {
        "family": "A",
        "cartan": ((2,),),
        "symmetrizer": (1,),
        "positive_roots": ((1,),),
    },
    "BC1": {
        "family": "BC",
        "cartan": ((2,),),
        "symmetrizer": (1,),
        "positive_roots": ((1,), (2,)),
    },
    "A2": {
        "family": "A",
        "cartan": ((2, -1), (-1, 2)),
        "symmetrizer": (1, 1),
        "positive_roots": ((1, 0), (0, 1), (1, 1)),
    },
    "A3": {
        "family": "A",
        "cartan": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
        "symmetrizer": (1, 1, 1),
        "positive_roots": ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)),
    },
    "C2": {
        "family": "C",
        "cartan": ((2, -1), (-2, 2)),
        "symmetrizer": (1, 2),
        "positive_roots": ((1, 0), (0, 1), (1, 1), (2, 1)),
    },
    "G2": {
        "family": "G",
        "cartan": ((2, -1), (-3, 2)),
        "symmetrizer": (1, 3),
        "positive_roots": ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)),
    },
}

SUPPORTED_TYPES = tuple(_TABLES)


# Small exact helpers. Matrices here are at most 3x3.

def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def mat_vec(a: Matrix, x) -> tuple:
    return tuple(sum(a[i][k] * x[k] for k in range(len(x))) for i in range(len(a)))


def vec_add(x, y) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x) -> tuple:
    return tuple(c * a for a in x)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


class RootSystem:
    """
    Exact data for one irreducible affine type.

    Attributes:
        type_name (str): Canonical name, e.g. "A2".
        family (str): "A", "BC", "C" or "G".
        rank (int): Number of simple roots n.
        cartan (Matrix): cartan[i][j] = <alpha_i, alpha_j^vee>.
        positive_roots (List[Vector]): Positive roots in simple-root coordinates.
        wall_roots (List[Vector]): Positive roots alpha with 2*alpha not a root.
        highest_root (Vector): Highest wall root theta; s0 reflects in its affine wall.
        omega_hat (List[AffineTuple]): Length-zero elements (beta, M); index 0 is the identity.
        omega_perms (List[Tuple[int, ...]]): omega_perms[k][j] = index of omega_k s_j omega_k^{-1}.
        good_types (List[int]): Vertex types fixed by the bijection with Omega-hat.
    """

    def __init__(self, type_name: str, family: str, cartan: Matrix, symmetrizer: Vector, positive_roots):
        self.type_name = type_name
        self.family = family
        self.rank = len(cartan)
        self.cartan = cartan
        self.symmetrizer = symmetrizer
        n = self.rank
        # (alpha_i, alpha_j) = cartan[i][j] * d_j
        self.form = tuple(tuple(cartan[i][j] * symmetrizer[j] for j in range(n)) for i in range(n))
        self.positive_roots: List[Vector] = [tuple(r) for r in positive_roots]
        root_set = set(self.positive_roots)
        self.wall_roots: List[Vector] = [r for r in self.positive_roots if vec_scale(2, r) not in root_set]
        self.is_reduced = len(self.wall_roots) == len(self.positive_roots)

        self._check_tables()

        self.highest_root = max(self.wall_roots, key=lambda r: (sum(r), r))
        self.simple_coroots: List[Vector] = [tuple(cartan[i][j] for i in range(n)) for j in range(n)]
        self.simple_reflections: List[Matrix] = [self.reflection_matrix(self.simple_root(i)) for i in range(n)]

        theta = self.highest_root
        # p0 = t * sum(beta_i), t = 1/(c+1), c = <theta, sum beta_i>
        self.interior_point = tuple(Fraction(1, sum(theta) + 1) for _ in range(n))

        self._w0_words: Dict[Matrix, Tuple[int, ...]] = {}
        self._enumerate_finite_weyl()
        self._bruhat_cache: Dict[Matrix, frozenset] = {}

        self.omega_hat: List[AffineTuple] = []
        self.omega_perms: List[Tuple[int, ...]] = []
        self._find_omega_hat()
        self.good_types = sorted(perm[0] for perm in self.omega_perms)

        if self.is_reduced:
            det = int(sympy.Matrix(cartan).det())
            if det != len(self.omega_hat):
                raise ConfigurationError(
                    f"{type_name}: |Omega-hat| = {len(self.omega_hat)} but det(cartan) = {det}")
        logger.info("Loaded root system %s: rank %d, %d positive roots, |W0| = %d, |Omega-hat| = %d",
                    type_name, n, len(self.positive_roots), len(self.w0_elements), len(self.omega_hat))

    # ------------------------------------------------------------------ roots

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def wall_simple_root(self, i: int) -> Vector:
        """alpha_i, or 2*alpha_i when alpha_i is multipliable (the BC_n, i = n node)."""
        a = self.simple_root(i)
        doubled = vec_scale(2, a)
        return doubled if doubled in self.positive_roots else a

    def wall_simple_coroot(self, i: int) -> Vector:
        return self.coroot(self.wall_simple_root(i))

    def is_doubled_node(self, i: int) -> bool:
        return self.wall_simple_root(i) != self.simple_root(i)

    def root_norm(self, a) -> Fraction:
        n = self.rank
        return Fraction(sum(a[i] * self.form[i][j] * a[j] for i in range(n) for j in range(n)))

    def coroot(self, a) -> Vector:
        """Coroot of the root with simple-root coordinates `a`, in coweight coordinates."""
        n = self.rank
        norm = self.root_norm(a)
        coords = []
        for k in range(n):
            value = Fraction(2 * sum(self.form[k][j] * a[j] for j in range(n))) / norm
            if value.denominator != 1:
                raise UsageError(f"{self.type_name}: coroot of {a} is not integral")
            coords.append(int(value))
        return tuple(coords)

    def pairing(self, root, beta) -> int:
        """
        Exact pairing <alpha, beta>.

        Args:
            root: Root (or any element of the root lattice) in simple-root coordinates.
            beta: Coweight in simple-coweight coordinates.

        Returns:
            The dot product of the two coordinate vectors.

        Raises:
            UsageError: If the vectors do not have length `rank`.
        """
        if len(root) != self.rank or len(beta) != self.rank:
            raise UsageError(f"pairing expects vectors of length {self.rank}, got {len(root)} and {len(beta)}")
        return sum(a * b for a, b in zip(root, beta))

    def is_root(self, a) -> bool:
        a = tuple(a)
        return a in self.positive_roots or tuple(-x for x in a) in self.positive_roots

    def is_positive(self, a) -> bool:
        return all(x >= 0 for x in a) and any(x > 0 for x in a)

    def reflection_matrix(self, a) -> Matrix:
        """Matrix of s_alpha on coweights: x -> x - <alpha, x> alpha^vee."""
        cor = self.coroot(a)
        n = self.rank
        return tuple(tuple((1 if i == j else 0) - cor[i] * a[j] for j in range(n)) for i in range(n))

    def _check_tables(self) -> None:
        n = self.rank
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ConfigurationError(f"{self.type_name}: cartan diagonal must be 2")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise ConfigurationError(f"{self.type_name}: off-diagonal cartan entries must be <= 0")
                if self.form[i][j] != self.form[j][i]:
                    raise ConfigurationError(f"{self.type_name}: symmetrizer does not symmetrize the cartan matrix")
        # Closure under every reflection s_alpha(gamma) = gamma - <gamma, alpha^vee> alpha
        everything = self.positive_roots + [tuple(-x for x in r) for r in self.positive_roots]
        for a in self.positive_roots:
            norm = self.root_norm(a)
            for g in everything:
                inner = sum(g[i] * self.form[i][j] * a[j] for i in range(n) for j in range(n))
                coeff = Fraction(2 * inner) / norm
                if coeff.denominator != 1:
                    raise ConfigurationError(f"{self.type_name}: <{g}, {a}^vee> is not an integer")
                image = vec_sub(g, vec_scale(int(coeff), a))
                if not self.is_root(image):
                    raise ConfigurationError(f"{self.type_name}: s_{a}({g}) = {image} is not a root")

    # ------------------------------------------------------------- finite W0

    def _enumerate_finite_weyl(self) -> None:
        start = identity_matrix(self.rank)
        self._w0_words[start] = ()
        queue = deque([start])
        while queue:
            m = queue.popleft()
            for i, s in enumerate(self.simple_reflections):
                nxt = mat_mul(m, s)
                if nxt not in self._w0_words:
                    self._w0_words[nxt] = self._w0_words[m] + (i + 1,)
                    queue.append(nxt)
        self.w0_elements: List[Matrix] = sorted(self._w0_words, key=lambda m: (len(self._w0_words[m]), self._w0_words[m]))
        self._w0_inverse = {}
        for m in self.w0_elements:
            for k in self.w0_elements:
                if mat_mul(m, k) == start:
                    self._w0_inverse[m] = k
                    break
        self.longest_element: Matrix = self.w0_elements[-1]
        if len(self._w0_words[self.longest_element]) != len(self.wall_roots):
            raise ConfigurationError(f"{self.type_name}: longest W0 element has the wrong length")

    def w0_word(self, m: Matrix) -> Tuple[int, ...]:
        """Reduced word of a W0 element as generator indices 1..n."""
        return self._w0_words[m]

    def w0_length(self, m: Matrix) -> int:
        return len(self._w0_words[m])

    def w0_inverse(self, m: Matrix) -> Matrix:
        return self._w0_inverse[m]

    def is_finite_weyl(self, m) -> bool:
        return m in self._w0_words

    def bruhat_leq(self, u: Matrix, w: Matrix) -> bool:
        """u <= w in Bruhat order: u is a subword product of one reduced word of w."""
        if w not in self._bruhat_cache:
            below = {identity_matrix(self.rank)}
            for i in self._w0_words[w]:
                s = self.simple_reflections[i - 1]
                below |= {mat_mul(x, s) for x in below}
            self._bruhat_cache[w] = frozenset(below)
        return u in self._bruhat_cache[w]

    # --------------------------------------------------------- affine tuples

    def affine_mul(self, x: AffineTuple, y: AffineTuple) -> AffineTuple:
        return vec_add(x[0], mat_vec(x[1], y[0])), mat_mul(x[1], y[1])

    def affine_inverse(self, x: AffineTuple) -> AffineTuple:
        inv = self.w0_inverse(x[1])
        return tuple(-v for v in mat_vec(inv, x[0])), inv

    def affine_generators(self) -> List[AffineTuple]:
        """s0, s1, ..., sn as (translation, matrix) pairs."""
        theta = self.highest_root
        zero = tuple(0 for _ in range(self.rank))
        s0 = (self.coroot(theta), self.reflection_matrix(theta))
        return [s0] + [(zero, s) for s in self.simple_reflections]

    def in_alcove(self, x) -> bool:
        """Open fundamental alcove: <alpha_i, x> > 0 and <theta, x> < 1."""
        if any(v <= 0 for v in x):
            return False
        return sum(a * v for a, v in zip(self.highest_root, x)) < 1

    def _find_omega_hat(self) -> None:
        n = self.rank
        zero = tuple(0 for _ in range(n))
        candidates = [zero] + [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        gens = self.affine_generators()
        found = []
        for beta in candidates:
            for m in self.w0_elements:
                image = vec_add(mat_vec(m, self.interior_point), beta)
                if self.in_alcove(image):
                    found.append((beta, m))
        found.sort(key=lambda e: (e[0] != zero, e))
        for omega in found:
            inv = self.affine_inverse(omega)
            perm = []
            for g in gens:
                conj = self.affine_mul(self.affine_mul(omega, g), inv)
                if conj not in gens:
                    raise ConfigurationError(f"{self.type_name}: length-zero element does not permute generators")
                perm.append(gens.index(conj))
            self.omega_hat.append(omega)
            self.omega_perms.append(tuple(perm))
        order = sorted(range(len(found)), key=lambda k: self.omega_perms[k][0])
        self.omega_hat = [self.omega_hat[k] for k in order]
        self.omega_perms = [self.omega_perms[k] for k in order]

    def omega_name(self, k: int) -> str:
        """Word token of the k-th Omega-hat element: "w<j>" with j the image of s0."""
        return f"w{self.omega_perms[k][0]}"

    # -------------------------------------------------------------- coweights

    def is_dominant(self, beta) -> bool:
        return all(z >= 0 for z in beta)

    def translation_length(self, beta) -> int:
        """l(t_beta) = sum over wall roots of |<alpha, beta>|."""
        return sum(abs(self.pairing(a, beta)) for a in self.wall_roots)

    def dominant_rep(self, beta) -> Tuple[Vector, Matrix]:
        """
        Returns (beta_plus, w0) with w0 of minimal length and w0(beta) = beta_plus dominant.
        """
        current = tuple(beta)
        w = identity_matrix(self.rank)
        while True:
            negative = [i for i, z in enumerate(current) if z < 0]
            if not negative:
                return current, w
            s = self.simple_reflections[negative[0]]
            current = mat_vec(s, current)
            w = mat_mul(s, w)

    def q_positive(self, diff) -> bool:
        """True if diff is a non-negative integer combination of the simple wall coroots."""
        basis = sympy.Matrix([list(self.wall_simple_coroot(i)) for i in range(self.rank)]).T
        coeffs = basis.inv() * sympy.Matrix(list(diff))
        return all(c.is_integer and c >= 0 for c in coeffs)

    def coweight_leq(self, beta_prime, beta) -> bool:
        """
        The coweight order: beta' <= beta iff beta'+ < beta+ in dominance order, or
        beta'+ = beta+ and w0^beta <= w0^beta' in Bruhat order.
        """
        plus_p, w_p = self.dominant_rep(beta_prime)
        plus, w = self.dominant_rep(beta)
        if plus_p != plus:
            return self.q_positive(vec_sub(plus, plus_p))
        return self.bruhat_leq(w, w_p)


def canonical_type_name(type_name: str) -> str:
    return type_name.replace("_", "").replace(" ", "").replace("~", "").upper()


@lru_cache(maxsize=None)
def load_root_system(type_name: str) -> RootSystem:
    """
    Loads one of the hard-coded root systems.

    Args:
        type_name (str): "A1", "a_1", "BC1", ... (case-insensitive, underscores ignored).

    Returns:
        RootSystem: The populated, validated system. Instances are cached and shared.

    Raises:
        ConfigurationError: If the type is not supported.
    """
    if not isinstance(type_name, str):
        raise ConfigurationError(f"Root system type must be a string, got {type_name!r}")
    name = canonical_type_name(type_name)
    table: Optional[dict] = _TABLES.get(name)
    if table is None:
        logger.error("Unsupported root system type requested: %s", type_name)
        raise ConfigurationError(f"Unknown root system type {type_name!r}; supported: {', '.join(SUPPORTED_TYPES)}")
    return RootSystem(name, table["family"], table["cartan"], table["symmetrizer"], table["positive_roots"])
