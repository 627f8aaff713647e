"""
Closed-form operator-norm and distance bounds for quotients of affine buildings.

Every calculator takes the affine type by name and reads |W0| and l(w~0) from the
loaded root system, so the inputs of a bound can never disagree with each other.
"""
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from core.errors import DomainError, UsageError
from core.hecke import get_hecke_algebra
from core.rootsys import canonical_type_name
from core.weyl import WeylElement, get_weyl_group

logger = logging.getLogger(__name__)


@dataclass
class BoundReport:
    """
    A bound value with the inputs it was computed from.

    Attributes:
        formula (str): Name of the bound.
        inputs (Dict[str, Any]): Inputs in a fixed order.
        value (float): The bound.
        empirical (Optional[float]): A measured value the bound is compared against.
    """
    formula: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    value: float = 0.0
    empirical: Optional[float] = None

    @property
    def margin(self) -> Optional[float]:
        if self.empirical is None:
            return None
        return self.value - self.empirical

    @property
    def ok(self) -> bool:
        return self.empirical is None or self.empirical <= self.value * (1 + 1e-12)


def _w0_data(type_name: str):
    group = get_weyl_group(type_name)
    return group, len(group.rs.w0_elements), group.rs.w0_length(group.rs.longest_element)


def _check_p(p: float) -> None:
    if p < 2:
        raise UsageError(f"the norm bounds are stated for p >= 2, got p = {p}")


def _exponent(p: float) -> float:
    """(p - 1) / p, with the limit 1 at p = inf."""
    return 1.0 if math.isinf(p) else (p - 1) / p


def d_constant(type_name: str, q_max, length: int) -> Fraction:
    """
    D(q, l) = |W0| 2^{l(w~0)} q^{4 l(w~0)} (l + 1 + l(w~0))^{l(w~0)}, exactly.

    Raises:
        DomainError: If q < 1 or l < 0.
    """
    q = Fraction(str(q_max))
    if q < 1 or length < 0:
        raise DomainError(f"D(q, l) needs q >= 1 and l >= 0, got q = {q}, l = {length}")
    _, order, l0 = _w0_data(type_name)
    return order * Fraction(2) ** l0 * q ** (4 * l0) * Fraction(length + 1 + l0) ** l0


def norm_bound_hw(type_name: str, q, w: WeylElement, p: float) -> BoundReport:
    """||h_w||_p <= D(q_max, l(w)) q_w^{(p-1)/p} for p >= 2."""
    _check_p(p)
    group = get_weyl_group(type_name)
    params = group.param_system(q)
    length = group.length(w)
    q_w = group.q_value(w, params)
    d = d_constant(type_name, params.q_max, length)
    value = float(d) * q_w ** _exponent(p)
    inputs = {"type": group.type_name, "p": p, "q": params.to_dict(), "w": group.word_string(w),
              "length": length, "q_w": q_w, "D": str(d)}
    return BoundReport(formula="norm_bound_hw", inputs=inputs, value=value)


def norm_bound_hbeta(type_name: str, q, beta: Sequence[int], p: float) -> BoundReport:
    """||h_beta||_p <= |W0| (2 q_max)^{l(w~0)} (l(beta) + 1)^{l(w~0)} q_beta^{(p-1)/p}."""
    _check_p(p)
    group, order, l0 = _w0_data(type_name)
    beta = tuple(int(b) for b in beta)
    if not group.rs.is_dominant(beta):
        raise UsageError(f"{beta} is not a dominant coweight")
    params = group.param_system(q)
    t = group.translation(beta)
    length = group.length(t)
    q_beta = group.q_value(t, params)
    value = order * (2 * float(params.q_max)) ** l0 * (length + 1) ** l0 * q_beta ** _exponent(p)
    inputs = {"type": group.type_name, "p": p, "q": params.to_dict(), "beta": list(beta),
              "length": length, "q_beta": q_beta}
    return BoundReport(formula="norm_bound_hbeta", inputs=inputs, value=value)


def refined_norm_bound_hbeta(type_name: str, q, beta: Sequence[int], p: float) -> BoundReport:
    """
    Schur-test bound on ||h_beta||_p from the per-(w0, w0') block constants.

    Block (w0', w0) is q_beta^{(p-1)/p} S'^{1/p} S^{(p-1)/p}, where S sums |alpha| over beta'
    in the table of Y_beta h_{w0} and S' sums |alpha'| in the table of Y_beta h_{w~0 w0^{-1}}^{-1}
    at the entry w~0 w0'^{-1}.
    """
    report = norm_bound_hbeta(type_name, q, beta, p)
    group = get_weyl_group(type_name)
    algebra = get_hecke_algebra(type_name)
    params = group.param_system(q)
    beta = tuple(int(b) for b in beta)
    elements = group.w0_elements()
    longest = group.longest_element()
    index = {w: k for k, w in enumerate(elements)}
    size = len(elements)

    def sums(variant: str) -> np.ndarray:
        table_sums = np.zeros((size, size))
        for j, w0 in enumerate(elements):
            table = algebra.bernstein_coeffs(w0, beta, variant)
            for (w, _), c in table.entries.items():
                table_sums[index[w], j] += abs(params.evaluate(c))
        return table_sums

    plain = sums("unprimed")
    primed = sums("primed")
    exponent = _exponent(p)
    q_beta = report.inputs["q_beta"]
    block = np.zeros((size, size))
    for j, w0 in enumerate(elements):
        j1 = index[group.multiply(longest, group.inverse(w0))]
        for i, w0p in enumerate(elements):
            i1 = index[group.multiply(longest, group.inverse(w0p))]
            s, s_prime = plain[i, j], primed[i1, j1]
            if s == 0 or (s_prime == 0 and exponent < 1):
                continue
            factor = 1.0 if exponent == 1 else s_prime ** (1 - exponent)
            block[i, j] = q_beta ** exponent * factor * s ** exponent
    row_max = float(block.sum(axis=1).max())
    col_max = float(block.sum(axis=0).max())
    value = row_max ** exponent * col_max ** (1 - exponent)
    logger.debug("Refined h_beta bound for %s: %.6g (plain bound %.6g)", beta, value, report.value)
    inputs = dict(report.inputs)
    inputs["plain_bound"] = report.value
    return BoundReport(formula="refined_norm_bound_hbeta", inputs=inputs, value=value)


def bipartite_norm_bound(k0: int, k1: int, p: float) -> float:
    """||A||_p <= K0^{1/p} K1^{(p-1)/p} for the adjacency operator of a (K0, K1)-biregular graph."""
    if k0 < 0 or k1 < 0:
        raise DomainError("degrees must be non-negative")
    exponent = _exponent(p)
    return float(k0) ** (1 - exponent) * float(k1) ** exponent


_OH_FIXED = {"E6": 16, "E7": 18, "E8": 29, "F4": 11, "G2": 6}


def oh_p0(type_name: str) -> int:
    """
    Uniform temperedness exponent p0 of the affine Coxeter group (k-rank >= 2).

    Raises:
        UsageError: For rank one, where no value is available, or for unknown names.
    """
    name = canonical_type_name(type_name)
    match = re.fullmatch(r"(BC|[A-G])(\d+)", name)
    if not match:
        raise UsageError(f"unknown affine type {type_name!r}")
    family, n = match.group(1), int(match.group(2))
    if n < 2:
        raise UsageError(f"p0 is only tabulated for rank >= 2; {name} has rank {n}")
    if name in _OH_FIXED:
        return _OH_FIXED[name]
    if family in ("A", "C") or (family == "B" and n >= 2):
        return 2 * n
    if family == "D" and n >= 4:
        return 2 * (n - 1) if n % 2 == 0 else 2 * n
    raise UsageError(f"no tabulated p0 for {name}")


def diameter_bounds(type_name: str, p: float, q: float, n_chambers: int) -> Dict[str, float]:
    """
    Gallery-distance bounds for an L_p-expander with N chambers.

    Returns:
        Dict with avg_upper = p/2 log_q N + (l(w~0)+1) log_q log_q N + 1,
        avg_lower = log_q N - (n+1) log_q log_q N - 1 and
        diameter_upper = p log_q N + 2 (l(w~0)+1) log_q log_q N + 1.

    Raises:
        DomainError: If N < q^2 or q <= 1.
    """
    if q <= 1:
        raise DomainError("the distance bounds need q > 1")
    if n_chambers < q * q:
        raise DomainError(f"N = {n_chambers} is below q^2 = {q * q}")
    group, _, l0 = _w0_data(type_name)
    log_n = math.log(n_chambers, q)
    loglog = math.log(log_n, q)
    if math.isinf(p):
        return {"avg_upper": math.inf, "avg_lower": log_n - (group.rank + 1) * loglog - 1,
                "diameter_upper": math.inf}
    return {
        "avg_upper": p / 2 * log_n + (l0 + 1) * loglog + 1,
        "avg_lower": log_n - (group.rank + 1) * loglog - 1,
        "diameter_upper": p * log_n + 2 * (l0 + 1) * loglog + 1,
    }


def gelfand_radius_bounds(type_name: str, q, beta: Sequence[int], p: float, n_max: int) -> List[float]:
    """D(q_max, k l(beta))^{1/k} q_beta^{(p-1)/p} for k = 1..n_max; tends to q_beta^{(p-1)/p}."""
    _check_p(p)
    group = get_weyl_group(type_name)
    params = group.param_system(q)
    t = group.translation(tuple(int(b) for b in beta))
    length = group.length(t)
    q_beta = group.q_value(t, params)
    return [float(d_constant(type_name, params.q_max, k * length)) ** (1.0 / k) * q_beta ** _exponent(p)
            for k in range(1, n_max + 1)]
