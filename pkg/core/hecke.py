"""
Exact Iwahori-Hecke algebra arithmetic for an extended affine Weyl group.

This module provides the `HeckeAlgebra` class and its `HeckeElement` values:
- Products in the T-basis {h_w}, computed by expanding the right factor into
  a reduced word and applying the one-generator rules
  h_w h_s = h_{ws} (length goes up) or u_s h_{ws} + (u_s - 1) h_w, and
  h_w h_omega = h_{w omega}.
- The adjoint h_w* = h_{w^{-1}}, inverses, and the translation elements
  X_beta and Y_beta.
- Bernstein coefficient tables (both the h_{w0} and the h_{w0}^{-1} variant),
  their re-expansion and bound checks, and conversion between the T-basis and
  the Bernstein basis {Y_beta h_{w0}}.
- The truncated generalized Poincare series and its product formula.

Coefficients are `LaurentPoly` values in v_c with v_c**2 = u_c, so every
q^{1/2} factor stays exact. Numbers only appear when a caller evaluates at a
numeric `ParamSystem`.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import InternalError, UsageError
from core.laurent import LaurentPoly
from core.rootsys import Matrix, Vector, mat_mul, mat_vec, vec_add, vec_scale, vec_sub
from core.weyl import AffineWeylGroup, ParamSystem, WeylElement, get_weyl_group

logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction, LaurentPoly]
BernsteinKey = Tuple[Matrix, Vector]


class HeckeElement:
    """
    Finite linear combination of basis elements h_w.

    Attributes:
        algebra (HeckeAlgebra): Owning algebra.
        terms (Dict[WeylElement, LaurentPoly]): Nonzero coefficients.
    """
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Optional[Mapping[WeylElement, LaurentPoly]] = None):
        self.algebra = algebra
        self.terms: Dict[WeylElement, LaurentPoly] = {}
        if terms:
            for w, c in terms.items():
                c = algebra.coerce(c)
                if not c.is_zero():
                    self.terms[w] = c

    def coefficient(self, w: WeylElement) -> LaurentPoly:
        return self.terms.get(w, LaurentPoly(self.algebra.nvars))

    def support(self) -> List[WeylElement]:
        return sorted(self.terms, key=lambda w: (self.algebra.group.length(w), w))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            other = self.algebra.scalar(other)
        result = dict(self.terms)
        for w, c in other.terms.items():
            value = result.get(w)
            value = c if value is None else value + c
            if value.is_zero():
                result.pop(w, None)
            else:
                result[w] = value
        out = HeckeElement(self.algebra)
        out.terms = result
        return out

    __radd__ = __add__

    def __neg__(self) -> "HeckeElement":
        out = HeckeElement(self.algebra)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __mul__(self, other) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return self.algebra.multiply(self, other)
        return self.algebra.scale(self, other)

    def __rmul__(self, other) -> "HeckeElement":
        return self.algebra.scale(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    def to_dict(self) -> List[Dict[str, object]]:
        """Serializes as [{"word": reduced word, "coeff": {"e0,e1,...": "p/q"}}] in support order."""
        return [{"word": self.algebra.group.word_string(w), "coeff": self.terms[w].to_dict()}
                for w in self.support()]

    def star(self) -> "HeckeElement":
        return self.algebra.star(self)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.support():
            word = self.algebra.group.word_string(w) or "1"
            parts.append(f"({self.terms[w]})*h[{word}]")
        return " + ".join(parts)


@dataclass
class BernsteinTable:
    """
    Coefficients alpha_{w0', beta'} with
    Y_beta h_{w0} = sum alpha h_{w0'} Y_{beta'}             (variant "unprimed") or
    Y_beta h_{w0}^{-1} = sum alpha h_{w0'}^{-1} Y_{beta'}   (variant "primed").
    """
    w0: WeylElement
    beta: Vector
    variant: str
    entries: Dict[Tuple[WeylElement, Vector], LaurentPoly] = field(default_factory=dict)

    def leading_key(self, group: AffineWeylGroup) -> Tuple[WeylElement, Vector]:
        """The key whose coefficient is 1: (w0, w0^{-1} beta) unprimed, (w0, w0 beta) primed."""
        if self.variant == "primed":
            return self.w0, mat_vec(self.w0.fin, self.beta)
        return self.w0, mat_vec(group.rs.w0_inverse(self.w0.fin), self.beta)


BernsteinForm = Dict[BernsteinKey, LaurentPoly]


class HeckeAlgebra:
    """
    The (extended) Iwahori-Hecke algebra of one affine type over Laurent coefficients.

    Attributes:
        group (AffineWeylGroup): The indexing group.
        params (ParamSystem): Abstract parameter classes; u_c is v_c**2.
        nvars (int): Number of parameter classes.
    """

    def __init__(self, group: Union[str, AffineWeylGroup]):
        self.group = get_weyl_group(group) if isinstance(group, str) else group
        self.rs = self.group.rs
        self.params: ParamSystem = self.group.param_system()
        self.nvars = self.params.nvars
        self._y_cache: Dict[Vector, HeckeElement] = {}
        self._bernstein_cache: Dict[BernsteinKey, HeckeElement] = {}

    # ------------------------------------------------------------------ basics

    def coerce(self, c: Coefficient) -> LaurentPoly:
        if isinstance(c, LaurentPoly):
            return c
        return LaurentPoly.constant(self.nvars, c)

    def u(self, generator: int) -> LaurentPoly:
        return LaurentPoly.u(self.nvars, self.params.class_of[generator])

    def zero(self) -> HeckeElement:
        return HeckeElement(self)

    def basis(self, w: WeylElement, coeff: Coefficient = 1) -> HeckeElement:
        return HeckeElement(self, {w: self.coerce(coeff)})

    def one(self) -> HeckeElement:
        return self.basis(self.group.identity)

    def scalar(self, c: Coefficient) -> HeckeElement:
        return self.basis(self.group.identity, c)

    def h_generator(self, s: Union[int, str]) -> HeckeElement:
        if isinstance(s, str):
            kind, k = self.group.generator_index(s)
            if kind != "s":
                raise UsageError(f"{s!r} is not a Coxeter generator")
            s = k
        return self.basis(self.group.generators[s])

    def h_omega(self, k: Union[int, str]) -> HeckeElement:
        if isinstance(k, str):
            kind, k = self.group.generator_index(k)
            if kind != "w":
                raise UsageError("expected an Omega-hat generator name")
        return self.basis(self.group.omegas[k])

    def scale(self, h: HeckeElement, c: Coefficient) -> HeckeElement:
        c = self.coerce(c)
        return HeckeElement(self, {w: coeff * c for w, coeff in h.terms.items()})

    # ----------------------------------------------------------- multiplication

    def _right_mul_generator(self, terms: Dict[WeylElement, LaurentPoly], i: int) -> Dict[WeylElement, LaurentPoly]:
        s = self.group.generators[i]
        u = self.u(i)
        result: Dict[WeylElement, LaurentPoly] = {}

        def add(w: WeylElement, c: LaurentPoly) -> None:
            value = result.get(w)
            value = c if value is None else value + c
            if value.is_zero():
                result.pop(w, None)
            else:
                result[w] = value

        for w, c in terms.items():
            ws = self.group.multiply(w, s)
            if self.group.length(ws) > self.group.length(w):
                add(ws, c)
            else:
                add(ws, c * u)
                add(w, c * (u - 1))
        return result

    def _right_mul_omega(self, terms: Dict[WeylElement, LaurentPoly], k: int) -> Dict[WeylElement, LaurentPoly]:
        omega = self.group.omegas[k]
        return {self.group.multiply(w, omega): c for w, c in terms.items()}

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        """Product a * b, expanding each basis element of b into a reduced word."""
        total = self.zero()
        for w, c in b.terms.items():
            word, k = self.group.reduced_word(w)
            partial = {x: coeff * c for x, coeff in a.terms.items()}
            for i in word:
                partial = self._right_mul_generator(partial, i)
            if k:
                partial = self._right_mul_omega(partial, k)
            total = total + HeckeElement(self, partial)
        return total

    def product(self, elements: Iterable[HeckeElement]) -> HeckeElement:
        result = self.one()
        for e in elements:
            result = self.multiply(result, e)
        return result

    def star(self, h: HeckeElement) -> HeckeElement:
        """h_w* = h_{w^{-1}}; rational coefficients are unchanged by conjugation."""
        return HeckeElement(self, {self.group.inverse(w): c for w, c in h.terms.items()})

    def generator_inverse(self, s: Union[int, str]) -> HeckeElement:
        """h_s^{-1} = u_s^{-1} h_s - (1 - u_s^{-1})."""
        if isinstance(s, str):
            s = self.group.generator_index(s)[1]
        u_inv = self.u(s).inverse_monomial()
        return self.basis(self.group.generators[s], u_inv) - self.scalar(1 - u_inv)

    def basis_inverse(self, w: WeylElement) -> HeckeElement:
        """h_w^{-1} = h_{omega^{-1}} h_{s_k}^{-1} ... h_{s_1}^{-1} for w = s_1 ... s_k omega."""
        word, k = self.group.reduced_word(w)
        result = self.basis(self.group.inverse(self.group.omegas[k]))
        for i in reversed(word):
            result = self.multiply(result, self.generator_inverse(i))
        return result

    # ------------------------------------------------------------ translations

    def _dominant_split(self, beta: Sequence[int]) -> Tuple[Vector, Vector]:
        beta1 = tuple(max(b, 0) for b in beta)
        beta2 = tuple(max(-b, 0) for b in beta)
        return beta1, beta2

    def x_beta(self, beta: Sequence[int]) -> HeckeElement:
        """X_beta = h_{beta1} h_{beta2}^{-1}."""
        beta1, beta2 = self._dominant_split(beta)
        t1, t2 = self.group.translation(beta1), self.group.translation(beta2)
        return self.multiply(self.basis(t1), self.basis_inverse(t2))

    def y_beta(self, beta: Sequence[int]) -> HeckeElement:
        """Y_beta = q_{beta1}^{-1/2} q_{beta2}^{1/2} h_{beta1} h_{beta2}^{-1}."""
        beta = tuple(beta)
        cached = self._y_cache.get(beta)
        if cached is not None:
            return cached
        beta1, beta2 = self._dominant_split(beta)
        t1, t2 = self.group.translation(beta1), self.group.translation(beta2)
        factor = self.group.q_monomial(t1, half=True).inverse_monomial() * self.group.q_monomial(t2, half=True)
        result = self.scale(self.x_beta(beta), factor)
        self._y_cache[beta] = result
        return result

    # ------------------------------------------------------ Bernstein relations

    def commutation_terms(self, i: int, beta: Vector) -> List[Tuple[Vector, LaurentPoly]]:
        """
        Terms of Y_beta h_{s_i} - h_{s_i} Y_{s_i beta} as (beta'', coefficient) pairs, i >= 1.

        For ordinary nodes this is (u_i - 1) times the geometric sum
        (Y_beta - Y_{s_i beta}) / (1 - Y_{-alpha_i^vee}). At the doubled node of a
        BC system the prefactor gains v_i (v_0 - v_0^{-1}) Y_{-(2 alpha_i)^vee}.
        """
        n = self.rs.rank
        root = self.rs.simple_root(i - 1)
        step = self.rs.simple_coroots[i - 1]
        k = self.rs.pairing(root, beta)
        geometric: List[Tuple[Vector, int]] = []
        if k > 0:
            geometric = [(vec_sub(beta, vec_scale(j, step)), 1) for j in range(k)]
        elif k < 0:
            geometric = [(vec_add(beta, vec_scale(j, step)), -1) for j in range(1, -k + 1)]
        if not geometric:
            return []
        prefactor: List[Tuple[Vector, LaurentPoly]] = [(tuple([0] * n), self.u(i) - 1)]
        if self.rs.is_doubled_node(i - 1):
            exp_plus = [0] * self.nvars
            exp_minus = [0] * self.nvars
            ci, c0 = self.params.class_of[i], self.params.class_of[0]
            exp_plus[ci] += 1
            exp_minus[ci] += 1
            exp_plus[c0] += 1
            exp_minus[c0] -= 1
            coeff = LaurentPoly.monomial(exp_plus) - LaurentPoly.monomial(exp_minus)
            gamma = self.rs.wall_simple_coroot(i - 1)
            prefactor.append((tuple(-g for g in gamma), coeff))
        terms = []
        for shift, p in prefactor:
            for b, sign in geometric:
                terms.append((vec_add(b, shift), p * sign))
        return terms

    @staticmethod
    def _add_form(form: BernsteinForm, key: BernsteinKey, c: LaurentPoly) -> None:
        value = form.get(key)
        value = c if value is None else value + c
        if value.is_zero():
            form.pop(key, None)
        else:
            form[key] = value

    def _reflect(self, i: int, beta: Vector) -> Vector:
        return mat_vec(self.rs.simple_reflections[i - 1], beta)

    def _step_unprimed(self, form: BernsteinForm, i: int) -> BernsteinForm:
        """sum c h_{w'} Y_{b}  ->  (sum c h_{w'} Y_{b}) h_{s_i}."""
        s = self.rs.simple_reflections[i - 1]
        u = self.u(i)
        out: BernsteinForm = {}
        for (m, b), c in form.items():
            sb = self._reflect(i, b)
            ms = mat_mul(m, s)
            if self.rs.w0_length(ms) > self.rs.w0_length(m):
                self._add_form(out, (ms, sb), c)
            else:
                self._add_form(out, (ms, sb), c * u)
                self._add_form(out, (m, sb), c * (u - 1))
            for b2, p in self.commutation_terms(i, b):
                self._add_form(out, (m, b2), c * p)
        return out

    def _step_primed(self, form: BernsteinForm, i: int) -> BernsteinForm:
        """sum c h_{w'}^{-1} Y_{b}  ->  (sum c h_{w'}^{-1} Y_{b}) h_{s_i}^{-1}."""
        s = self.rs.simple_reflections[i - 1]
        u = self.u(i)
        u_inv = u.inverse_monomial()
        out: BernsteinForm = {}
        for (m, b), c in form.items():
            sb = self._reflect(i, b)
            sm = mat_mul(s, m)
            if self.rs.w0_length(sm) > self.rs.w0_length(m):
                self._add_form(out, (sm, sb), c)
            else:
                self._add_form(out, (sm, sb), c * u_inv)
                self._add_form(out, (m, sb), -c * (1 - u_inv))
            # Y_b h_s^{-1} - h_s^{-1} Y_{sb} = (1 - u^{-1})(Y_{sb} - Y_b) + u^{-1} [Y_b h_s - h_s Y_{sb}]
            self._add_form(out, (m, sb), c * (1 - u_inv))
            self._add_form(out, (m, b), -c * (1 - u_inv))
            for b2, p in self.commutation_terms(i, b):
                self._add_form(out, (m, b2), c * u_inv * p)
        return out

    def bernstein_coeffs(self, w0: WeylElement, beta: Sequence[int], variant: str = "unprimed") -> BernsteinTable:
        """
        Coefficient table of Y_beta h_{w0} (or Y_beta h_{w0}^{-1}) in the form
        sum alpha h_{w0'} Y_{beta'} (or sum alpha h_{w0'}^{-1} Y_{beta'}).

        Args:
            w0: A W0 element.
            beta: Any coweight.
            variant: "unprimed" or "primed".

        Raises:
            UsageError: If w0 is not in W0 or the variant is unknown.
        """
        if any(w0.beta) or not self.rs.is_finite_weyl(w0.fin):
            raise UsageError("bernstein_coeffs expects an element of W0")
        if variant not in ("unprimed", "primed"):
            raise UsageError(f"unknown Bernstein variant {variant!r}")
        beta = tuple(beta)
        identity = self.group.identity.fin
        form: BernsteinForm = {(identity, beta): self.coerce(1)}
        word = self.rs.w0_word(w0.fin)
        if variant == "unprimed":
            for i in word:
                form = self._step_unprimed(form, i)
        else:
            for i in reversed(word):
                form = self._step_primed(form, i)
        entries = {(self.group.finite(m), b): c for (m, b), c in form.items()}
        return BernsteinTable(w0=w0, beta=beta, variant=variant, entries=entries)

    def bernstein_product(self, w0: WeylElement, beta: Sequence[int], variant: str = "unprimed") -> HeckeElement:
        """Direct T-basis value of Y_beta h_{w0} (unprimed) or Y_beta h_{w0}^{-1} (primed)."""
        right = self.basis(w0) if variant == "unprimed" else self.basis_inverse(w0)
        return self.multiply(self.y_beta(beta), right)

    def bernstein_expand(self, table: BernsteinTable) -> HeckeElement:
        """Re-expands a table into the T-basis."""
        total = self.zero()
        for (w, b), c in table.entries.items():
            left = self.basis(w) if table.variant == "unprimed" else self.basis_inverse(w)
            total = total + self.scale(self.multiply(left, self.y_beta(b)), c)
        return total

    def bernstein_bound_check(self, table: BernsteinTable, params: ParamSystem) -> List[Dict]:
        """
        Compares sum_{beta'} |alpha_{w0', beta'}| with its bound for every w0' in the table.

        The bound is 2^{l(w0)} (q_max (l(beta) + 1))^{l(w0) - l(w0')} for the unprimed
        variant and 2^{l(w0)} (l(beta) + 1)^{l(w0) - l(w0')} for the primed one.
        """
        l_w0 = self.group.length(table.w0)
        l_beta = self.rs.translation_length(table.beta)
        q_max = float(params.q_max)
        sums: Dict[WeylElement, float] = {}
        for (w, _), c in table.entries.items():
            sums[w] = sums.get(w, 0.0) + abs(params.evaluate(c))
        rows = []
        for w in sorted(sums, key=lambda x: (self.group.length(x), x)):
            gap = l_w0 - self.group.length(w)
            base = (l_beta + 1) * (q_max if table.variant == "unprimed" else 1.0)
            bound = 2 ** l_w0 * base ** gap
            rows.append({"w0_prime": self.group.word_string(w), "sum": sums[w], "bound": bound,
                         "ok": sums[w] <= bound * (1 + 1e-12)})
        return rows

    # --------------------------------------------------- Bernstein basis change

    def _left_mul_generator_form(self, form: BernsteinForm, i: int) -> BernsteinForm:
        """h_{s_i} (sum c Y_b h_w) in Bernstein form, using h_s Y_g = Y_{sg} h_s - [Y_{sg} h_s - h_s Y_g]."""
        s = self.rs.simple_reflections[i - 1]
        u = self.u(i)
        out: BernsteinForm = {}
        for (m, b), c in form.items():
            sb = self._reflect(i, b)
            sm = mat_mul(s, m)
            if self.rs.w0_length(sm) > self.rs.w0_length(m):
                self._add_form(out, (sm, sb), c)
            else:
                self._add_form(out, (sm, sb), c * u)
                self._add_form(out, (m, sb), c * (u - 1))
            for b2, p in self.commutation_terms(i, sb):
                self._add_form(out, (m, b2), -c * p)
        return out

    def _right_mul_generator_form(self, form: BernsteinForm, i: int, inverse: bool = False) -> BernsteinForm:
        """(sum c Y_b h_w) h_{s_i}^{+-1}; only the finite Hecke algebra is involved."""
        s = self.rs.simple_reflections[i - 1]
        u = self.u(i)
        u_inv = u.inverse_monomial()
        out: BernsteinForm = {}
        for (m, b), c in form.items():
            ms = mat_mul(m, s)
            up = self.rs.w0_length(ms) > self.rs.w0_length(m)
            if not inverse:
                if up:
                    self._add_form(out, (ms, b), c)
                else:
                    self._add_form(out, (ms, b), c * u)
                    self._add_form(out, (m, b), c * (u - 1))
            else:
                # h_w h_s^{-1} = u^{-1} h_w h_s - (1 - u^{-1}) h_w
                if up:
                    self._add_form(out, (ms, b), c * u_inv)
                else:
                    self._add_form(out, (ms, b), c)
                    self._add_form(out, (m, b), c * (1 - u_inv))
                self._add_form(out, (m, b), -c * (1 - u_inv))
        return out

    def _times_translation_block(self, form: BernsteinForm, gamma: Vector, fin: Matrix, factor: LaurentPoly
                                 ) -> BernsteinForm:
        """form * factor * Y_gamma * h_{fin}^{-1}."""
        out: BernsteinForm = {}
        for (m, b), c in form.items():
            moved: BernsteinForm = {(self.group.identity.fin, gamma): c * factor}
            for i in reversed(self.rs.w0_word(m)):
                moved = self._left_mul_generator_form(moved, i)
            for (m2, b2), c2 in moved.items():
                self._add_form(out, (m2, vec_add(b2, b)), c2)
        for i in reversed(self.rs.w0_word(fin)):
            out = self._right_mul_generator_form(out, i, inverse=True)
        return out

    def _right_mul_s0_form(self, form: BernsteinForm) -> BernsteinForm:
        # s0 = t_{theta^vee} s_theta with lengths adding, so h_{s0} = q^{1/2}_{theta^vee} Y_{theta^vee} h_{s_theta}^{-1}
        s0 = self.group.generators[0]
        theta_vee = s0.beta
        factor = self.group.q_monomial(self.group.translation(theta_vee), half=True)
        return self._times_translation_block(form, theta_vee, s0.fin, factor)

    def _right_mul_omega_form(self, form: BernsteinForm, k: int) -> BernsteinForm:
        # omega = t_b M with l(t_b) = l(M^{-1}), so h_omega = q_b^{1/2} Y_b h_{M^{-1}}^{-1}
        omega = self.group.omegas[k]
        factor = self.group.q_monomial(self.group.translation(omega.beta), half=True)
        return self._times_translation_block(form, omega.beta, self.rs.w0_inverse(omega.fin), factor)

    def to_bernstein(self, h: HeckeElement, verify: bool = False) -> Dict[Tuple[WeylElement, Vector], LaurentPoly]:
        """
        Coefficients c(w0, beta) with h = sum c Y_beta h_{w0}.

        Each h_w is rewritten generator by generator. With `verify`, the result is
        expanded back and compared with h.

        Raises:
            InternalError: If verification fails.
        """
        total: BernsteinForm = {}
        for w, c in h.terms.items():
            form: BernsteinForm = {(self.group.identity.fin, tuple([0] * self.rs.rank)): c}
            word, k = self.group.reduced_word(w)
            for i in word:
                if i == 0:
                    form = self._right_mul_s0_form(form)
                else:
                    form = self._right_mul_generator_form(form, i)
            if k:
                form = self._right_mul_omega_form(form, k)
            for key, value in form.items():
                self._add_form(total, key, value)
        result = {(self.group.finite(m), b): c for (m, b), c in total.items()}
        if verify and self.from_bernstein(result) != h:
            logger.error("Bernstein conversion failed to reproduce %s", h)
            raise InternalError("Bernstein conversion does not reproduce the input element")
        return result

    def from_bernstein(self, data: Mapping[Tuple[WeylElement, Vector], Coefficient]) -> HeckeElement:
        """sum c Y_beta h_{w0} in the T-basis."""
        total = self.zero()
        for (w0, beta), c in data.items():
            key = (w0.fin, tuple(beta))
            expanded = self._bernstein_cache.get(key)
            if expanded is None:
                expanded = self.multiply(self.y_beta(beta), self.basis(w0))
                self._bernstein_cache[key] = expanded
            total = total + self.scale(expanded, c)
        return total

    # ------------------------------------------------------------- Poincare

    def _series_mul(self, a: Dict[Vector, HeckeElement], b: Dict[Vector, HeckeElement], max_degree: int
                    ) -> Dict[Vector, HeckeElement]:
        out: Dict[Vector, HeckeElement] = {}
        for ea, ha in a.items():
            for eb, hb in b.items():
                e = vec_add(ea, eb)
                if sum(e) > max_degree:
                    continue
                prod = self.multiply(ha, hb)
                out[e] = out[e] + prod if e in out else prod
        return {e: h for e, h in out.items() if not h.is_zero()}

    def poincare_truncated(self, max_degree: int) -> Dict[Vector, HeckeElement]:
        """
        sum_{l(w) <= L} h_w u_w, keyed by the u-exponent vector of u_w.
        """
        series: Dict[Vector, HeckeElement] = {}
        for w in self.group.enumerate_ball(max_degree):
            e = self.group.class_counts(w)
            series[e] = series[e] + self.basis(w) if e in series else self.basis(w)
        return series

    def poincare_product(self, max_degree: int) -> Dict[Vector, HeckeElement]:
        """
        Degree-<= L truncation of P_{W0} * prod_i (1 - h_{beta_i} u_{beta_i})^{-1} * P_{A0}.
        """
        zero_exp = tuple([0] * self.nvars)
        result: Dict[Vector, HeckeElement] = {}
        for w in self.group.w0_elements():
            e = self.group.class_counts(w)
            result[e] = result[e] + self.basis(w) if e in result else self.basis(w)
        for i in range(self.rs.rank):
            beta_i = tuple(1 if k == i else 0 for k in range(self.rs.rank))
            t = self.group.translation(beta_i)
            step = self.group.class_counts(t)
            if sum(step) == 0:
                raise InternalError("fundamental coweight of length zero")
            factor: Dict[Vector, HeckeElement] = {zero_exp: self.one()}
            power, exp = self.one(), zero_exp
            while sum(exp) + sum(step) <= max_degree:
                power = self.multiply(power, self.basis(t))
                exp = vec_add(exp, step)
                factor[exp] = power
            result = self._series_mul(result, factor, max_degree)
        box: Dict[Vector, HeckeElement] = {}
        for a in self.group.fundamental_box():
            e = self.group.class_counts(a)
            box[e] = box[e] + self.basis(a) if e in box else self.basis(a)
        return self._series_mul(result, box, max_degree)

    def poincare_comparison(self, max_degree: int) -> List[Dict[str, object]]:
        """
        Coefficient of each u-exponent on both sides of the series identity.

        Returns:
            List[Dict]: One row per exponent with "exponent", "degree", "lhs", "rhs"
            (HeckeElements, zero when the side has no such term) and "matches".
        """
        lhs = self.poincare_truncated(max_degree)
        rhs = self.poincare_product(max_degree)
        rows = []
        for e in sorted(set(lhs) | set(rhs), key=lambda e: (sum(e), e)):
            left, right = lhs.get(e, self.zero()), rhs.get(e, self.zero())
            rows.append({"exponent": list(e), "degree": sum(e), "lhs": left, "rhs": right,
                         "matches": left == right})
        ok = all(r["matches"] for r in rows)
        logger.info("Poincare identity for %s through degree %d: %s", self.group.type_name, max_degree,
                    "holds" if ok else "FAILS")
        return rows

    def poincare_identity_check(self, max_degree: int) -> bool:
        return all(r["matches"] for r in self.poincare_comparison(max_degree))

    # ------------------------------------------------------------- parsing

    _TERM = re.compile(r"([+-]?)\s*([^+-]+)")
    _COEFF = re.compile(r"^(\d+(?:/\d+)?)\s*\*?\s*(.*)$")

    def parse_element(self, text: str) -> HeckeElement:
        """
        Parses sums such as "s0 + s1 + 2*s0 w1" or "3 - 1/2*s1".

        Each term is an optional rational coefficient followed by a word; the word is
        read as the product of the generators it names. "1", "id" or an empty word
        stand for the identity.

        Raises:
            UsageError: On empty input or unknown generators.
        """
        if not text or not text.strip():
            raise UsageError("empty Hecke element")
        total = self.zero()
        for sign, body in self._TERM.findall(text):
            body = body.strip()
            if not body:
                raise UsageError(f"malformed Hecke element {text!r}")
            coeff = Fraction(1)
            word = body
            match = self._COEFF.match(body)
            if match:
                coeff = Fraction(match.group(1))
                word = match.group(2).strip()
            if sign == "-":
                coeff = -coeff
            tokens = [t for t in word.replace("*", " ").split() if t not in ("1", "id")]
            term = self.product(self.basis(self.group.token_element(t)) for t in tokens)
            total = total + self.scale(term, coeff)
        return total

    def is_random_walk(self, h: HeckeElement) -> bool:
        """Self adjoint with constant non-negative coefficients."""
        if h.is_zero():
            return False
        zero_exp = tuple([0] * self.nvars)
        for w, c in h.terms.items():
            if set(c.terms) != {zero_exp} or c.terms[zero_exp] < 0:
                return False
            if h.coefficient(self.group.inverse(w)) != c:
                return False
        return True

    def evaluate(self, h: HeckeElement, params: ParamSystem) -> Dict[WeylElement, float]:
        return {w: params.evaluate(c) for w, c in h.terms.items()}


_ALGEBRAS: Dict[str, HeckeAlgebra] = {}


def get_hecke_algebra(type_name: str) -> HeckeAlgebra:
    group = get_weyl_group(type_name)
    algebra = _ALGEBRAS.get(group.type_name)
    if algebra is None:
        algebra = HeckeAlgebra(group)
        _ALGEBRAS[group.type_name] = algebra
    return algebra
