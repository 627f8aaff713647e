"""
Extended affine Weyl group arithmetic.

This module provides the `AffineWeylGroup` class, which is responsible for:
- Exact products, inverses and the affine action of elements of
  W-hat = P x| W0, each stored as a `WeylElement` (translation, W0 matrix).
- Lengths by hyperplane counting, reduced words, and parsing of words.
- The structure decomposition w = w0 * t_beta * a and the fundamental box A0.
- Ball enumeration, Coxeter data, parameter systems, parabolic subgroups,
  double cosets and sector lengths.

An element (beta, M) acts on coweights by x -> M x + beta, i.e. it is the
product t_beta * M. Words use the tokens "s0".."sn" for the affine Coxeter
generators and "w<j>" for the length-zero element sending s0 to s_j.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import floor
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from core.config import get_settings
from core.errors import ResourceError, UsageError
from core.laurent import LaurentPoly, poly_sum
from core.rootsys import (
    Matrix,
    RootSystem,
    Vector,
    identity_matrix,
    load_root_system,
    mat_mul,
    mat_vec,
    transpose,
    vec_add,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class WeylElement:
    """An element t_beta * M of W-hat, canonical by construction."""
    beta: Vector
    fin: Matrix

    def to_dict(self) -> Dict[str, list]:
        return {"beta": list(self.beta), "fin": [list(row) for row in self.fin]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "WeylElement":
        return cls(tuple(int(x) for x in data["beta"]), tuple(tuple(int(x) for x in row) for row in data["fin"]))


@dataclass(frozen=True)
class ParamSystem:
    """
    Partition of S = {s0, ..., sn} into parameter classes, optionally with numeric values.

    Attributes:
        classes (Tuple[Tuple[int, ...], ...]): Generator indices per class.
        class_of (Tuple[int, ...]): Class index of each generator.
        q (Tuple[Fraction, ...] | None): Numeric parameter per class; None in abstract mode.
    """
    classes: Tuple[Tuple[int, ...], ...]
    class_of: Tuple[int, ...]
    q: Optional[Tuple[Fraction, ...]] = None

    @property
    def nvars(self) -> int:
        return len(self.classes)

    @property
    def names(self) -> List[str]:
        return [f"s{min(c)}" for c in self.classes]

    def class_index(self, name: str) -> int:
        """Resolves a class name or any member generator name ("s2") to a class index."""
        token = name.strip()
        if token.startswith("s") and token[1:].isdigit():
            i = int(token[1:])
            if 0 <= i < len(self.class_of):
                return self.class_of[i]
        raise UsageError(f"Unknown parameter class {name!r}; classes are {self.names}")

    def with_values(self, assignments: Union[None, str, int, Fraction, Mapping, Sequence]) -> "ParamSystem":
        """
        Returns the numeric parameter system for the given q assignments.

        Args:
            assignments: A bare value (sets every class), a mapping class-name -> value,
                or a list of "class=value" / bare-value strings as given on the command line.

        Raises:
            UsageError: On unknown classes, unparsable or non-positive values, or missing classes.
        """
        values: Dict[int, Fraction] = {}
        if assignments is None:
            raise UsageError("numeric parameters are required")
        if isinstance(assignments, (int, Fraction, str)):
            assignments = [assignments]
        if isinstance(assignments, Mapping):
            items = [(k, v) for k, v in assignments.items()]
        else:
            items = []
            for entry in assignments:
                if isinstance(entry, str) and "=" in entry:
                    key, _, value = entry.partition("=")
                    items.append((key, value))
                else:
                    items.append((None, entry))
        for key, raw in items:
            try:
                value = Fraction(str(raw).strip())
            except (ValueError, ZeroDivisionError) as e:
                logger.error("Could not parse parameter value %r", raw)
                raise UsageError(f"parameter value {raw!r} is not a rational number") from e
            if value <= 0:
                raise UsageError(f"parameter values must be > 0, got {raw!r}")
            if key is None:
                for c in range(self.nvars):
                    values[c] = value
            else:
                values[self.class_index(str(key))] = value
        missing = [self.names[c] for c in range(self.nvars) if c not in values]
        if missing:
            raise UsageError(f"no value given for parameter classes {missing}")
        return ParamSystem(self.classes, self.class_of, tuple(values[c] for c in range(self.nvars)))

    def q_of(self, generator: int) -> Fraction:
        if self.q is None:
            raise UsageError("parameter system is abstract")
        return self.q[self.class_of[generator]]

    @property
    def q_max(self) -> Fraction:
        if self.q is None:
            raise UsageError("parameter system is abstract")
        return max(self.q)

    def evaluate(self, poly: LaurentPoly) -> float:
        if self.q is None:
            raise UsageError("parameter system is abstract")
        return poly.evaluate(self.q)

    def to_dict(self) -> Dict[str, str]:
        return {name: (str(self.q[c]) if self.q is not None else f"u{c}") for c, name in enumerate(self.names)}


@dataclass(frozen=True)
class DistanceData:
    """
    Double coset data for W_{I1} w W_{I2}.

    Attributes:
        d_min (WeylElement): The unique shortest element d~ of the double coset.
        q_d (LaurentPoly): q_{(W_{I1})^{I3}} * q_{d~}.
        n_d (LaurentPoly): q_{W_{I3}}.
        i3 (Tuple[int, ...]): I3 = I1 cap d~ I2 d~^{-1}.
        size (int): Number of elements of the double coset.
    """
    d_min: WeylElement
    q_d: LaurentPoly
    n_d: LaurentPoly
    i3: Tuple[int, ...] = field(default=())
    size: int = 0


class AffineWeylGroup:
    """
    The extended affine Weyl group of one root system.

    Attributes:
        rs (RootSystem): Underlying root system.
        rank (int): n; there are n + 1 Coxeter generators.
        identity (WeylElement): Neutral element.
        generators (List[WeylElement]): s0, ..., sn.
        omegas (List[WeylElement]): Length-zero elements, identity first.
    """

    def __init__(self, root_system: Union[str, RootSystem]):
        self.rs = load_root_system(root_system) if isinstance(root_system, str) else root_system
        self.rank = self.rs.rank
        n = self.rank
        self.identity = WeylElement(tuple([0] * n), identity_matrix(n))
        self.generators = [WeylElement(b, m) for b, m in self.rs.affine_generators()]
        self.omegas = [WeylElement(b, m) for b, m in self.rs.omega_hat]
        self.omega_perms = list(self.rs.omega_perms)
        self._omega_index = {w: k for k, w in enumerate(self.omegas)}
        self._length_cache: Dict[WeylElement, int] = {}
        self._word_cache: Dict[WeylElement, Tuple[Tuple[int, ...], int]] = {}
        self._params: Optional[ParamSystem] = None
        self._coxeter: Optional[List[List[int]]] = None

    @property
    def type_name(self) -> str:
        return self.rs.type_name

    # ------------------------------------------------------------ arithmetic

    def element(self, beta: Sequence[int], fin: Optional[Matrix] = None) -> WeylElement:
        fin = identity_matrix(self.rank) if fin is None else tuple(tuple(r) for r in fin)
        if not self.rs.is_finite_weyl(fin):
            raise UsageError(f"{fin} is not a W0 matrix of {self.type_name}")
        return WeylElement(tuple(int(x) for x in beta), fin)

    def translation(self, beta: Sequence[int]) -> WeylElement:
        return WeylElement(tuple(int(x) for x in beta), identity_matrix(self.rank))

    def finite(self, fin: Matrix) -> WeylElement:
        return WeylElement(tuple([0] * self.rank), fin)

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return WeylElement(vec_add(a.beta, mat_vec(a.fin, b.beta)), mat_mul(a.fin, b.fin))

    def product(self, elements: Iterable[WeylElement]) -> WeylElement:
        return reduce(self.multiply, elements, self.identity)

    def inverse(self, w: WeylElement) -> WeylElement:
        inv = self.rs.w0_inverse(w.fin)
        return WeylElement(tuple(-x for x in mat_vec(inv, w.beta)), inv)

    def act(self, w: WeylElement, x: Sequence) -> tuple:
        """w(x) = M x + beta for a coweight (or any rational point) x."""
        return vec_add(mat_vec(w.fin, tuple(x)), w.beta)

    # ----------------------------------------------------------------- words

    def generator_index(self, token: str) -> Tuple[str, int]:
        """Parses one word token into ("s", i) or ("w", omega index)."""
        t = token.strip()
        if len(t) >= 2 and t[0] in "sw" and t[1:].isdigit():
            j = int(t[1:])
            if t[0] == "s" and j <= self.rank:
                return "s", j
            if t[0] == "w":
                for k, perm in enumerate(self.omega_perms):
                    if perm[0] == j:
                        return "w", k
        raise UsageError(f"Unknown generator {token!r} for {self.type_name}")

    def token_element(self, token: str) -> WeylElement:
        kind, k = self.generator_index(token)
        return self.generators[k] if kind == "s" else self.omegas[k]

    def from_word(self, word: Union[str, Sequence[str]]) -> WeylElement:
        """
        Multiplies out a word.

        Args:
            word: Whitespace separated tokens, or a sequence of tokens.

        Raises:
            UsageError: If a token names no generator.
        """
        tokens = word.split() if isinstance(word, str) else list(word)
        return self.product(self.token_element(t) for t in tokens)

    def omega_index(self, w: WeylElement) -> Optional[int]:
        return self._omega_index.get(w)

    def omega_name(self, k: int) -> str:
        return self.rs.omega_name(k)

    # ---------------------------------------------------------------- length

    def length(self, w: WeylElement) -> int:
        """Number of walls separating the fundamental alcove from its image under w."""
        cached = self._length_cache.get(w)
        if cached is not None:
            return cached
        mt = transpose(w.fin)
        total = 0
        for a in self.rs.wall_roots:
            k = sum(x * y for x, y in zip(a, w.beta))
            image = mat_vec(mt, a)
            total += abs(k) if self.rs.is_positive(image) else abs(k - 1)
        self._length_cache[w] = total
        return total

    def reduced_word(self, w: WeylElement) -> Tuple[Tuple[int, ...], int]:
        """
        Returns (i_1, ..., i_k), k with w = s_{i_1} ... s_{i_k} * omega_k and k = l(w).
        """
        cached = self._word_cache.get(w)
        if cached is not None:
            return cached
        word: List[int] = []
        current = w
        length = self.length(current)
        while length > 0:
            for i, s in enumerate(self.generators):
                candidate = self.multiply(s, current)
                if self.length(candidate) < length:
                    word.append(i)
                    current = candidate
                    length -= 1
                    break
        k = self._omega_index[current]
        result = (tuple(word), k)
        self._word_cache[w] = result
        return result

    def word_string(self, w: WeylElement) -> str:
        word, k = self.reduced_word(w)
        tokens = [f"s{i}" for i in word]
        if k != 0:
            tokens.append(self.omega_name(k))
        return " ".join(tokens)

    # ------------------------------------------------------------- structure

    def w0_elements(self) -> List[WeylElement]:
        return [self.finite(m) for m in self.rs.w0_elements]

    def longest_element(self) -> WeylElement:
        return self.finite(self.rs.longest_element)

    def bruhat_leq(self, u: WeylElement, w: WeylElement) -> bool:
        """Bruhat order on W0 (both arguments must be finite elements)."""
        if any(u.beta) or any(w.beta):
            raise UsageError("Bruhat order is only provided on W0")
        return self.rs.bruhat_leq(u.fin, w.fin)

    def fundamental_box(self) -> List[WeylElement]:
        """The elements of A0: one per W0 matrix M, translated so that M p0 lands in [0, 1)^n."""
        p0 = self.rs.interior_point
        box = []
        for m in self.rs.w0_elements:
            image = mat_vec(m, p0)
            box.append(WeylElement(tuple(-floor(x) for x in image), m))
        return box

    def structure_decompose(self, w: WeylElement) -> Tuple[WeylElement, Vector, WeylElement]:
        """
        Decomposes w = w0 * t_beta * a with w0 in W0, beta dominant and a in A0.

        Returns:
            (w0, beta, a) with l(w) = l(w0) + l(beta) + l(a).
        """
        v = self.act(w, self.rs.interior_point)
        v_plus, u = self.rs.dominant_rep(v)
        beta = tuple(floor(x) for x in v_plus)
        w0 = self.finite(self.rs.w0_inverse(u))
        a = self.multiply(self.translation(tuple(-b for b in beta)), self.multiply(self.finite(u), w))
        return w0, beta, a

    def structure_check(self, max_length: int) -> List[Dict[str, object]]:
        """
        Counterexamples to w = w0 * t_beta * a with beta dominant, a in A0 and additive
        lengths, over the ball of radius max_length. An empty list means the check passed.
        """
        box = set(self.fundamental_box())
        failures = []
        for w in self.enumerate_ball(max_length):
            w0, beta, a = self.structure_decompose(w)
            t = self.translation(beta)
            problems = []
            if self.product([w0, t, a]) != w:
                problems.append("product")
            if not self.rs.is_dominant(beta):
                problems.append("dominance")
            if a not in box:
                problems.append("box")
            if self.length(w) != self.length(w0) + self.length(t) + self.length(a):
                problems.append("length")
            if problems:
                failures.append({"w": self.word_string(w), "beta": list(beta), "problems": problems})
        logger.info("Structure check of %s through length %d: %d counterexamples",
                    self.type_name, max_length, len(failures))
        return failures

    def length_oracle_check(self, max_length: int) -> List[str]:
        """Elements whose hyperplane-count length differs from the BFS word length."""
        cap = get_settings().max_ball_length
        if max_length > cap:
            raise ResourceError(f"ball length {max_length} exceeds the configured cap {cap}", required=max_length)
        distance = {w: 0 for w in self.omegas}
        frontier = list(self.omegas)
        for current in range(1, max_length + 1):
            nxt = []
            for w in frontier:
                for s in self.generators:
                    ws = self.multiply(w, s)
                    if ws not in distance:
                        distance[ws] = current
                        nxt.append(ws)
            frontier = nxt
        return sorted(self.word_string(w) for w, d in distance.items() if self.length(w) != d)

    def enumerate_ball(self, max_length: int) -> List[WeylElement]:
        """
        All w with l(w) <= max_length, ordered by length then canonically.

        Raises:
            ResourceError: If max_length exceeds the configured cap.
        """
        cap = get_settings().max_ball_length
        if max_length > cap:
            raise ResourceError(f"ball length {max_length} exceeds the configured cap {cap}", required=max_length)
        if max_length < 0:
            raise UsageError("ball length must be non-negative")
        layer = list(self.omegas)
        ball = list(layer)
        seen = set(layer)
        for current in range(1, max_length + 1):
            nxt = []
            for w in layer:
                for s in self.generators:
                    ws = self.multiply(w, s)
                    if ws not in seen and self.length(ws) == current:
                        seen.add(ws)
                        nxt.append(ws)
            nxt.sort()
            logger.debug("Ball layer %d of %s: %d elements", current, self.type_name, len(nxt))
            ball.extend(nxt)
            layer = nxt
        logger.info("Enumerated %d elements of length <= %d in %s", len(ball), max_length, self.type_name)
        return ball

    def right_multiplication_table(self, ball: Sequence[WeylElement]) -> np.ndarray:
        """table[k, i] = index of ball[k] * s_i in `ball`, or -1 when it falls outside."""
        index = {w: k for k, w in enumerate(ball)}
        table = np.full((len(ball), self.rank + 1), -1, dtype=np.int64)
        for k, w in enumerate(ball):
            for i, s in enumerate(self.generators):
                table[k, i] = index.get(self.multiply(w, s), -1)
        return table

    # ------------------------------------------------------- coxeter & params

    def coxeter_matrix(self) -> List[List[int]]:
        """m[i][j] = order of s_i s_j, with 0 standing for infinity."""
        if self._coxeter is None:
            size = self.rank + 1
            m = [[1] * size for _ in range(size)]
            for i in range(size):
                for j in range(i + 1, size):
                    st = self.multiply(self.generators[i], self.generators[j])
                    power, order = st, 1
                    while power != self.identity and order <= 12:
                        power = self.multiply(power, st)
                        order += 1
                    value = order if power == self.identity else 0
                    m[i][j] = m[j][i] = value
            self._coxeter = m
        return self._coxeter

    def param_system(self, q=None) -> ParamSystem:
        """
        The finest partition of S with q_s = q_t for odd m_{s,t} and q_s = q_{omega(s)}.

        Args:
            q: Optional numeric assignments, see `ParamSystem.with_values`.
        """
        if self._params is None:
            size = self.rank + 1
            parent = list(range(size))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(x: int, y: int) -> None:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)

            m = self.coxeter_matrix()
            for i in range(size):
                for j in range(size):
                    if m[i][j] % 2 == 1 and i != j:
                        union(i, j)
            for perm in self.omega_perms:
                for i, j in enumerate(perm):
                    union(i, j)
            roots = sorted({find(i) for i in range(size)})
            classes = tuple(tuple(i for i in range(size) if find(i) == r) for r in roots)
            class_of = tuple(roots.index(find(i)) for i in range(size))
            self._params = ParamSystem(classes, class_of)
        if q is None:
            return self._params
        return self._params.with_values(q)

    def class_counts(self, w: WeylElement) -> Tuple[int, ...]:
        params = self.param_system()
        counts = [0] * params.nvars
        for i in self.reduced_word(w)[0]:
            counts[params.class_of[i]] += 1
        return tuple(counts)

    def q_monomial(self, w: WeylElement, half: bool = False) -> LaurentPoly:
        """q_w (or q_w^{1/2} when half is set) as a monomial in the v-variables."""
        factor = 1 if half else 2
        return LaurentPoly.monomial(tuple(factor * c for c in self.class_counts(w)))

    def q_value(self, w: WeylElement, params: ParamSystem) -> float:
        return params.evaluate(self.q_monomial(w))

    # ------------------------------------------------------------- parabolics

    def _check_spherical(self, subset: Iterable[int]) -> Tuple[int, ...]:
        items = tuple(sorted(set(int(i) for i in subset)))
        if any(i < 0 or i > self.rank for i in items):
            raise UsageError(f"subset {items} names generators outside s0..s{self.rank}")
        if len(items) == self.rank + 1:
            raise UsageError("the full generating set S is not spherical: W is infinite")
        return items

    def parabolic_elements(self, subset: Iterable[int]) -> List[WeylElement]:
        """All elements of the finite parabolic subgroup W_I."""
        items = self._check_spherical(subset)
        found = {self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for i in items:
                ws = self.multiply(w, self.generators[i])
                if ws not in found:
                    found.add(ws)
                    queue.append(ws)
        return sorted(found, key=lambda x: (self.length(x), x))

    def parabolic_weight(self, subset: Iterable[int]) -> LaurentPoly:
        """q_{W_I} = sum of q_w over W_I."""
        nvars = self.param_system().nvars
        return poly_sum((self.q_monomial(w) for w in self.parabolic_elements(subset)), nvars)

    def double_coset(self, i1: Iterable[int], i2: Iterable[int], w: WeylElement) -> List[WeylElement]:
        left = self.parabolic_elements(i1)
        right = self.parabolic_elements(i2)
        return sorted({self.multiply(self.multiply(x, w), y) for x in left for y in right},
                      key=lambda x: (self.length(x), x))

    def double_coset_min(self, i1: Iterable[int], i2: Iterable[int], w: WeylElement) -> DistanceData:
        """
        Shortest representative and the q_d, n_d monomials of W_{I1} w W_{I2}.

        Raises:
            UsageError: If I1 or I2 is not spherical.
        """
        i1 = self._check_spherical(i1)
        i2 = self._check_spherical(i2)
        coset = self.double_coset(i1, i2, w)
        d = coset[0]
        if len(coset) > 1 and self.length(coset[1]) == self.length(d):
            raise UsageError("double coset has no unique shortest element")
        d_inv = self.inverse(d)
        right_gens = {self.generators[j] for j in i2}
        i3 = tuple(i for i in i1
                   if self.multiply(self.multiply(d_inv, self.generators[i]), d) in right_gens)
        reps = [x for x in self.parabolic_elements(i1)
                if all(self.length(self.multiply(x, self.generators[i])) > self.length(x) for i in i3)]
        nvars = self.param_system().nvars
        q_reps = poly_sum((self.q_monomial(x) for x in reps), nvars)
        return DistanceData(
            d_min=d,
            q_d=q_reps * self.q_monomial(d),
            n_d=self.parabolic_weight(i3),
            i3=i3,
            size=len(coset),
        )

    # ---------------------------------------------------------------- sectors

    def sector_length(self, w: WeylElement, split: Optional[Tuple[Vector, Vector]] = None
                      ) -> Tuple[int, LaurentPoly]:
        """
        L(w) = l(w0) + l(beta2) - l(beta1) and Q_w = q_{w0} q_{beta2} / q_{beta1}
        for w = t_beta * w0 with beta = beta1 - beta2, beta1 and beta2 dominant.

        Args:
            w: The element.
            split: Optional explicit (beta1, beta2); defaults to the positive/negative parts.
        """
        if split is None:
            beta1 = tuple(max(b, 0) for b in w.beta)
            beta2 = tuple(max(-b, 0) for b in w.beta)
        else:
            beta1, beta2 = tuple(split[0]), tuple(split[1])
            if tuple(a - b for a, b in zip(beta1, beta2)) != w.beta:
                raise UsageError("split does not add up to the translation part")
            if not (self.rs.is_dominant(beta1) and self.rs.is_dominant(beta2)):
                raise UsageError("split parts must be dominant")
        w0 = self.finite(w.fin)
        t1, t2 = self.translation(beta1), self.translation(beta2)
        value = self.length(w0) + self.length(t2) - self.length(t1)
        q = self.q_monomial(w0) * self.q_monomial(t2) * self.q_monomial(t1).inverse_monomial()
        return value, q


_GROUPS: Dict[str, AffineWeylGroup] = {}


def get_weyl_group(type_name: str) -> AffineWeylGroup:
    """Shared AffineWeylGroup per type, so caches are reused across callers."""
    rs = load_root_system(type_name)
    group = _GROUPS.get(rs.type_name)
    if group is None:
        group = AffineWeylGroup(rs)
        _GROUPS[rs.type_name] = group
    return group
