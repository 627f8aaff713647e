"""
Finite-dimensional representations of the extended Iwahori-Hecke algebra.

This module provides the `HeckeRep` class and the analyses run on it:
- Loading from JSON files and validating the defining relations (quadratic,
  braid, Omega-hat twist and group law), exactly when every entry is rational.
- Built-in one-dimensional representations (trivial, Steinberg, sign
  characters) and the full list of one-dimensional representations.
- Evaluation of h_w, unitarity, the minimal temperedness exponent p_min from
  the eigenvalues of the translation operators h_{beta_i}, zeta function data,
  the eigenvalue criterion, matrix-coefficient growth reports, and induction
  from the non-extended algebra along color rotations.
"""
import cmath
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.config import get_settings
from core.errors import UnsupportedError, UsageError, ValidationError
from core.hecke import HeckeElement
from core.weyl import AffineWeylGroup, ParamSystem, WeylElement, get_weyl_group

logger = logging.getLogger(__name__)


@dataclass
class HeckeRep:
    """
    A validated representation given by generator matrices.

    Attributes:
        group (AffineWeylGroup): Group of the affine type.
        params (ParamSystem): Numeric parameters.
        gens (List[np.ndarray]): Matrix of h_{s_i}, i = 0..n.
        omegas (Dict[int, np.ndarray]): Matrix of h_omega per Omega-hat index; empty when
            the representation is of the non-extended algebra only.
        name (str): Free-form label used in reports.
    """
    group: AffineWeylGroup
    params: ParamSystem
    gens: List[np.ndarray]
    omegas: Dict[int, np.ndarray] = field(default_factory=dict)
    name: str = ""

    @property
    def dim(self) -> int:
        return self.gens[0].shape[0]

    @property
    def extended(self) -> bool:
        return len(self.omegas) == len(self.group.omegas)

    @property
    def type_name(self) -> str:
        return self.group.type_name


@dataclass
class PminResult:
    """
    Attributes:
        value (float): Smallest p with every |lambda| <= q_{beta_i}^{(p-1)/p}; math.inf if none.
        above_trivial (bool): Some eigenvalue exceeds q_{beta_i}.
        eigenvalues (List[List[complex]]): Eigenvalues of h_{beta_i} per i.
    """
    value: float
    above_trivial: bool
    eigenvalues: List[List[complex]]


@dataclass
class ZetaData:
    """
    Attributes:
        char_polys (List[List[complex]]): Coefficients of det(1 - M_{beta_i} t), increasing powers.
        eigenvalues (List[List[complex]]): Eigenvalues of M_{beta_i}.
        lengths (List[int]): l(beta_i).
        u_poles (List[List[complex]]): Poles of det(1 - M_{beta_i} u^{l(beta_i)})^{-1}.
        s_poles (List[List[complex]]): Principal solutions of q_{beta_i}^s = 1/mu.
    """
    char_polys: List[List[complex]]
    eigenvalues: List[List[complex]]
    lengths: List[int]
    u_poles: List[List[complex]]
    s_poles: List[List[complex]]


@dataclass
class GrowthReport:
    """Per-length maxima of |<v*, h_w v>| q_w^{(1-p)/p} against a (1 + delta)^l envelope."""
    p: float
    delta: float
    onset: int
    constant: float
    rows: List[Dict[str, float]]
    violations: List[int]

    @property
    def passed(self) -> bool:
        return not self.violations


# ------------------------------------------------------------------ parsing

def _parse_entry(entry: Any) -> Tuple[complex, Optional[Fraction]]:
    """Returns the complex value and, when it is an exact real rational, that rational."""
    if isinstance(entry, (list, tuple)):
        if len(entry) != 2:
            raise ValueError(f"complex entries are [re, im] pairs, got {entry!r}")
        re_part, exact_re = _parse_entry(entry[0])
        im_part, exact_im = _parse_entry(entry[1])
        value = complex(re_part.real, im_part.real)
        exact = exact_re if (exact_im == 0 and exact_re is not None) else None
        return value, exact
    if isinstance(entry, str):
        exact = Fraction(entry)
        return complex(float(exact)), exact
    if isinstance(entry, bool):
        raise ValueError("boolean matrix entry")
    if isinstance(entry, int):
        return complex(entry), Fraction(entry)
    if isinstance(entry, float):
        return complex(entry), Fraction(entry) if entry.is_integer() else None
    raise ValueError(f"unsupported matrix entry {entry!r}")


def _parse_matrix(rows: Any, label: str) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError(f"{label}: matrix must be a non-empty list of rows")
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise ValueError(f"{label}: matrix is not square")
    values = np.zeros((d, d), dtype=complex)
    exact = np.empty((d, d), dtype=object)
    all_exact = True
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            value, rational = _parse_entry(entry)
            values[i, j] = value
            if rational is None:
                all_exact = False
            exact[i, j] = rational
    return values, (exact if all_exact else None)


def _exact_from_numeric(m: np.ndarray) -> Optional[np.ndarray]:
    if np.any(np.abs(m.imag) > 0) or not np.all(np.equal(np.mod(m.real, 1), 0)):
        return None
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m.real):
        out[idx] = Fraction(int(v))
    return out


# --------------------------------------------------------------- validation

def _residual(lhs: np.ndarray, rhs: np.ndarray) -> Tuple[float, float]:
    diff = float(np.linalg.norm(lhs - rhs))
    scale = 1.0 + float(np.linalg.norm(lhs)) + float(np.linalg.norm(rhs))
    return diff, scale


def _check(lhs: np.ndarray, rhs: np.ndarray, relation: str, exact_pair=None) -> None:
    if exact_pair is not None:
        e_lhs, e_rhs = exact_pair
        if not np.all(e_lhs == e_rhs):
            diff = float(np.linalg.norm(lhs - rhs))
            logger.error("Relation %s fails exactly (residual %.3e)", relation, diff)
            raise ValidationError(f"relation {relation} fails: residual {diff:.3e}", relation=relation, residual=diff)
        return
    tol = get_settings().tolerance
    diff, scale = _residual(lhs, rhs)
    if diff > tol * scale:
        logger.error("Relation %s fails with residual %.3e", relation, diff)
        raise ValidationError(f"relation {relation} fails: residual {diff:.3e}", relation=relation, residual=diff)


def _alternating(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=a.dtype)
    for k in range(m):
        result = result @ (a if k % 2 == 0 else b)
    return result


def validate_rep(rep: HeckeRep, exact: Optional[List[Optional[np.ndarray]]] = None) -> None:
    """
    Checks every defining relation of the representation.

    Args:
        rep: The representation.
        exact: Optional exact (Fraction object) copies of the generator matrices, in the
            order s0..sn followed by the provided Omega-hat matrices in index order.

    Raises:
        ValidationError: Naming the first failing relation and its residual norm.
    """
    group = rep.group
    d = rep.dim
    exact = exact or [None] * (len(rep.gens) + len(rep.omegas))
    all_exact = all(e is not None for e in exact)
    ident = np.eye(d, dtype=complex)
    ident_exact = np.array([[Fraction(int(i == j)) for j in range(d)] for i in range(d)], dtype=object) if all_exact else None
    for m in list(rep.gens) + list(rep.omegas.values()):
        if m.shape != (d, d):
            raise ValidationError("generator matrices must all have the same square shape", relation="shape")

    for i, m in enumerate(rep.gens):
        q = rep.params.q_of(i)
        lhs = m @ m
        rhs = float(q) * ident + (float(q) - 1) * m
        pair = None
        if all_exact:
            e = exact[i]
            pair = (e @ e, ident_exact * q + e * (q - 1))
        _check(lhs, rhs, f"h_s{i}^2", pair)

    coxeter = group.coxeter_matrix()
    for i in range(len(rep.gens)):
        for j in range(i + 1, len(rep.gens)):
            m = coxeter[i][j]
            if m == 0:
                continue
            a, b = rep.gens[i], rep.gens[j]
            pair = None
            if all_exact:
                pair = (_alternating(exact[i], exact[j], m), _alternating(exact[j], exact[i], m))
            _check(_alternating(a, b, m), _alternating(b, a, m), f"braid(s{i},s{j})", pair)

    for k, mw in rep.omegas.items():
        inv = np.linalg.inv(mw)
        for i, perm_target in enumerate(group.omega_perms[k]):
            _check(mw @ rep.gens[i] @ inv, rep.gens[perm_target], f"twist({group.omega_name(k)},s{i})")
        for k2, mw2 in rep.omegas.items():
            prod = group.multiply(group.omegas[k], group.omegas[k2])
            target = group.omega_index(prod)
            _check(mw @ mw2, rep.omegas[target], f"omega({group.omega_name(k)}*{group.omega_name(k2)})")
    if rep.omegas:
        _check(rep.omegas[0], ident, "omega(identity)")
    logger.info("Representation %s of %s (dim %d) satisfies all relations%s",
                rep.name or "<unnamed>", group.type_name, d, " exactly" if all_exact else "")


def _complete_omegas(group: AffineWeylGroup, given: Dict[int, np.ndarray], d: int) -> Dict[int, np.ndarray]:
    """Fills in Omega-hat matrices generated by the given ones; identity goes to index 0."""
    if len(group.omegas) == 1:
        return {0: np.eye(d, dtype=complex)}
    if not given:
        return {}
    known = dict(given)
    known[0] = np.eye(d, dtype=complex)
    changed = True
    while changed:
        changed = False
        for k1, m1 in list(known.items()):
            for k2, m2 in list(known.items()):
                k = group.omega_index(group.multiply(group.omegas[k1], group.omegas[k2]))
                if k not in known:
                    known[k] = m1 @ m2
                    changed = True
    return known


def rep_from_dict(data: Mapping[str, Any], name: str = "") -> HeckeRep:
    """
    Builds and validates a representation from its JSON structure.

    Raises:
        ValidationError: On malformed content or failed relations.
        ConfigurationError: On an unknown type.
        UsageError: On unusable parameter assignments.
    """
    try:
        group = get_weyl_group(str(data["type"]))
        params = group.param_system(data["q"])
        generators = data["generators"]
        if not isinstance(generators, Mapping):
            raise ValueError("'generators' must be an object")
        gens, exact = [], []
        for i in range(group.rank + 1):
            key = f"s{i}"
            if key not in generators:
                raise ValueError(f"missing generator matrix {key}")
            m, e = _parse_matrix(generators[key], key)
            gens.append(m)
            exact.append(e)
        given: Dict[int, np.ndarray] = {}
        given_exact: Dict[int, Optional[np.ndarray]] = {}
        for key, rows in generators.items():
            if key.startswith("s"):
                continue
            kind, k = group.generator_index(key)
            given[k], given_exact[k] = _parse_matrix(rows, key)
    except (KeyError, ValueError, TypeError, ZeroDivisionError, UsageError) as e:
        logger.error("Malformed representation data: %s", e)
        raise ValidationError(f"malformed representation: {e}", relation="format") from e

    d = gens[0].shape[0]
    if "dim" in data and int(data["dim"]) != d:
        raise ValidationError(f"declared dim {data['dim']} does not match matrix size {d}", relation="shape")
    if any(m.shape != (d, d) for m in gens + list(given.values())):
        raise ValidationError("generator matrices must all have the same square shape", relation="shape")
    omegas = _complete_omegas(group, given, d)
    if given and len(omegas) != len(group.omegas):
        raise ValidationError("the given Omega-hat matrices do not generate Omega-hat", relation="omega")
    rep = HeckeRep(group=group, params=params, gens=gens, omegas=omegas, name=name)
    exact_all = exact + [given_exact.get(k, _exact_from_numeric(omegas[k])) for k in sorted(omegas)]
    validate_rep(rep, exact_all)
    return rep


def load_rep(path: str) -> HeckeRep:
    """
    Loads a representation file:
    {"type": "A2", "dim": d, "q": {"s0": "2"}, "generators": {"s0": [[[re, im], ...], ...], "w1": ...}}.

    Raises:
        UsageError: If the file cannot be read.
        ValidationError: If it is malformed or violates a relation.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        logger.error("Could not read representation file %s: %s", path, e)
        raise UsageError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        logger.error("Representation file %s is not valid JSON: %s", path, e)
        raise ValidationError(f"{path} is not valid JSON: {e}", relation="format") from e
    if not isinstance(data, Mapping):
        raise ValidationError(f"{path} must contain a JSON object", relation="format")
    return rep_from_dict(data, name=path)


def rep_to_dict(rep: HeckeRep) -> Dict[str, Any]:
    def encode(m: np.ndarray) -> List[List[List[float]]]:
        return [[[float(z.real), float(z.imag)] for z in row] for row in m]

    generators = {f"s{i}": encode(m) for i, m in enumerate(rep.gens)}
    for k in sorted(rep.omegas):
        if k:
            generators[rep.group.omega_name(k)] = encode(rep.omegas[k])
    return {"type": rep.type_name, "dim": rep.dim, "q": rep.params.to_dict(), "generators": generators}


# -------------------------------------------------------------- builtins

def _cyclic_generator(group: AffineWeylGroup) -> Optional[int]:
    size = len(group.omegas)
    for k in range(1, size):
        power, order = group.omegas[k], 1
        while power != group.identity:
            power = group.multiply(power, group.omegas[k])
            order += 1
        if order == size:
            return k
    return None


def _one_dim(group: AffineWeylGroup, params: ParamSystem, signs: Sequence[bool], char: int, name: str) -> HeckeRep:
    """signs[c] True means h_s -> q_s on class c, False means h_s -> -1."""
    gens = []
    for i in range(group.rank + 1):
        c = params.class_of[i]
        value = float(params.q[c]) if signs[c] else -1.0
        gens.append(np.array([[value]], dtype=complex))
    omegas = {0: np.eye(1, dtype=complex)}
    size = len(group.omegas)
    if size > 1:
        g = _cyclic_generator(group)
        power = group.identity
        for m in range(size):
            k = group.omega_index(power)
            omegas[k] = np.array([[cmath.exp(2j * math.pi * char * m / size)]], dtype=complex)
            power = group.multiply(power, group.omegas[g])
    rep = HeckeRep(group=group, params=params, gens=gens, omegas=omegas, name=name)
    exact = [np.array([[Fraction(params.q[params.class_of[i]]) if signs[params.class_of[i]] else Fraction(-1)]],
                      dtype=object) for i in range(group.rank + 1)]
    exact += [_exact_from_numeric(omegas[k]) for k in sorted(omegas)]
    validate_rep(rep, exact)
    return rep


def builtin_rep(name: str, type_name: str, q) -> HeckeRep:
    """
    One-dimensional representations by name.

    Args:
        name: "trivial", "steinberg" or "sign:<class>=<t|s>,..." (t: h_s -> q_s, s: h_s -> -1;
            classes left out act trivially).
        type_name: Affine type.
        q: Parameter assignments, see `ParamSystem.with_values`.

    Raises:
        UsageError: On an unknown name or conflicting class assignments.
    """
    group = get_weyl_group(type_name)
    params = group.param_system(q)
    key = name.strip().lower()
    if key == "trivial":
        signs = [True] * params.nvars
    elif key == "steinberg":
        signs = [False] * params.nvars
    elif key.startswith("sign:"):
        chosen: Dict[int, bool] = {}
        for part in key[5:].split(","):
            if not part.strip():
                continue
            cls, _, value = part.partition("=")
            if value.strip() not in ("t", "s"):
                raise UsageError(f"sign assignment {part!r} must be <class>=t or <class>=s")
            c = params.class_index(cls)
            flag = value.strip() == "t"
            if c in chosen and chosen[c] != flag:
                raise UsageError(f"conflicting assignments for parameter class {params.names[c]}")
            chosen[c] = flag
        signs = [chosen.get(c, True) for c in range(params.nvars)]
    else:
        raise UsageError(f"unknown built-in representation {name!r}")
    return _one_dim(group, params, signs, 0, key)


def one_dimensional_reps(type_name: str, q) -> List[HeckeRep]:
    """Every one-dimensional representation: a sign per class times a character of Omega-hat."""
    group = get_weyl_group(type_name)
    params = group.param_system(q)
    reps = []
    for mask in range(2 ** params.nvars):
        signs = [not (mask >> c) & 1 for c in range(params.nvars)]
        for char in range(len(group.omegas)):
            label = ",".join(f"{params.names[c]}={'t' if signs[c] else 's'}" for c in range(params.nvars))
            reps.append(_one_dim(group, params, signs, char, f"sign:{label};chi={char}"))
    return reps


# -------------------------------------------------------------- analysis

def evaluate(rep: HeckeRep, w: WeylElement) -> np.ndarray:
    """Matrix of h_w: product over a reduced word, then the Omega-hat factor."""
    word, k = rep.group.reduced_word(w)
    result = np.eye(rep.dim, dtype=complex)
    for i in word:
        result = result @ rep.gens[i]
    if k:
        if k not in rep.omegas:
            raise UsageError("the representation has no Omega-hat action")
        result = result @ rep.omegas[k]
    return result


def evaluate_element(rep: HeckeRep, h: HeckeElement) -> np.ndarray:
    """Matrix of a Hecke algebra element at the representation's parameters."""
    result = np.zeros((rep.dim, rep.dim), dtype=complex)
    for w, c in h.terms.items():
        result += rep.params.evaluate(c) * evaluate(rep, w)
    return result


def is_unitary(rep: HeckeRep) -> bool:
    """M_s Hermitian for every s and M_omega^dagger = M_{omega^{-1}}."""
    tol = get_settings().tolerance
    for m in rep.gens:
        if np.linalg.norm(m - m.conj().T) > tol * (1 + np.linalg.norm(m)):
            return False
    for k, m in rep.omegas.items():
        inv = rep.omegas[rep.group.omega_index(rep.group.inverse(rep.group.omegas[k]))]
        if np.linalg.norm(m.conj().T - inv) > tol * (1 + np.linalg.norm(m)):
            return False
    return True


def _translation_data(rep: HeckeRep) -> List[Tuple[int, float, np.ndarray]]:
    """(l(beta_i), q_{beta_i}, M_{beta_i}) for each simple coweight."""
    if not rep.extended:
        raise UsageError("translation operators need the Omega-hat action")
    out = []
    n = rep.group.rank
    for i in range(n):
        t = rep.group.translation(tuple(1 if k == i else 0 for k in range(n)))
        out.append((rep.group.length(t), rep.group.q_value(t, rep.params), evaluate(rep, t)))
    return out


def p_from_eigenvalues(eigenvalues: Sequence[complex], q_beta: float) -> Tuple[float, bool]:
    """
    Smallest p with |lambda| <= q_beta^{(p-1)/p} for all given eigenvalues.

    Returns:
        (p, above_trivial): p is 1 when every |lambda| <= 1 and math.inf when some
        |lambda| reaches q_beta; above_trivial flags |lambda| > q_beta (1 + tol).

    Raises:
        UnsupportedError: For q_beta = 1, where the criterion degenerates.
    """
    tol = get_settings().tolerance
    if q_beta <= 1 + tol:
        raise UnsupportedError("p_min is undefined for thin parameters (q_beta = 1)")
    log_q = math.log(q_beta)
    value, above = 1.0, False
    for z in eigenvalues:
        r = abs(z)
        if r <= 1 + tol:
            contribution = 1.0
        elif r > q_beta * (1 + tol):
            above = True
            contribution = math.inf
        elif r >= q_beta * (1 - tol):
            contribution = math.inf
        else:
            contribution = log_q / (log_q - math.log(r))
        value = max(value, contribution)
    return value, above


def p_min(rep: HeckeRep) -> PminResult:
    """
    Minimal p for which the representation is p-tempered, from eigenvalues of h_{beta_i}.

    Raises:
        UnsupportedError: For thin parameters (q_{beta_i} = 1), where the criterion degenerates.
    """
    value = 1.0
    above = False
    eigenvalues = []
    for _, q_beta, m in _translation_data(rep):
        eigs = [complex(z) for z in np.linalg.eigvals(m)]
        eigenvalues.append(eigs)
        p, flag = p_from_eigenvalues(eigs, q_beta)
        value = max(value, p)
        above = above or flag
    logger.info("p_min of %s: %s%s", rep.name or rep.type_name, value, " (above trivial)" if above else "")
    return PminResult(value=value, above_trivial=above, eigenvalues=eigenvalues)


def zeta(rep: HeckeRep) -> ZetaData:
    char_polys, eigenvalues, lengths, u_poles, s_poles = [], [], [], [], []
    for length, q_beta, m in _translation_data(rep):
        coeffs = np.poly(m)
        char_polys.append([complex(c) for c in coeffs])
        eigs = [complex(z) for z in np.linalg.eigvals(m)]
        eigenvalues.append(eigs)
        lengths.append(length)
        poles, s_list = [], []
        for mu in eigs:
            if abs(mu) < 1e-14:
                continue
            base = 1 / mu
            root = base ** (1.0 / length)
            poles.extend(root * cmath.exp(2j * math.pi * k / length) for k in range(length))
            s_list.append(-cmath.log(mu) / math.log(q_beta))
        u_poles.append(poles)
        s_poles.append(s_list)
    return ZetaData(char_polys, eigenvalues, lengths, u_poles, s_poles)


def rh_check(rep: HeckeRep, p: float) -> bool:
    """Every eigenvalue mu of every h_{beta_i} has |mu| <= q^{(p-1)/p} or |mu| = q."""
    tol = get_settings().tolerance
    exponent = 1.0 if math.isinf(p) else (p - 1) / p
    for _, q_beta, m in _translation_data(rep):
        bound = q_beta ** exponent
        for z in np.linalg.eigvals(m):
            r = abs(z)
            if r <= bound * (1 + tol):
                continue
            if abs(r - q_beta) <= tol * q_beta:
                continue
            return False
    return True


def tempered_growth_check(rep: HeckeRep, v: Sequence[complex], v_star: Sequence[complex], max_length: int,
                          p: float, delta: float, onset: int = 0) -> GrowthReport:
    """
    Reports max_{l(w) = l} |<v*, h_w v>| q_w^{(1-p)/p} for l <= max_length.

    The envelope is C (1 + delta)^l with C the largest ratio (and at least 1) up to `onset`;
    lengths beyond `onset` exceeding it are violations.
    """
    v = np.asarray(v, dtype=complex)
    v_star = np.asarray(v_star, dtype=complex)
    if v.shape != (rep.dim,) or v_star.shape != (rep.dim,):
        raise UsageError(f"vectors must have length {rep.dim}")
    exponent = -1.0 if math.isinf(p) else (1 - p) / p
    maxima: Dict[int, float] = {}
    for w in rep.group.enumerate_ball(max_length):
        length = rep.group.length(w)
        coeff = abs(np.vdot(v_star, evaluate(rep, w) @ v))
        ratio = coeff * rep.group.q_value(w, rep.params) ** exponent
        maxima[length] = max(maxima.get(length, 0.0), ratio)
    constant = max([1.0] + [maxima[l] for l in maxima if l <= onset])
    rows, violations = [], []
    for length in sorted(maxima):
        envelope = constant * (1 + delta) ** length
        violated = length > onset and maxima[length] > envelope * (1 + 1e-12)
        rows.append({"length": length, "max_ratio": maxima[length], "envelope": envelope, "violation": violated})
        if violated:
            violations.append(length)
    return GrowthReport(p=p, delta=delta, onset=onset, constant=constant, rows=rows, violations=violations)


def induce_color_rotation(rep: HeckeRep) -> HeckeRep:
    """
    Induces a representation of the non-extended algebra to the extended one.

    The space is V tensor C[Omega-hat]; block k carries h_s as M_{pi_k^{-1}(s)} and h_omega
    moves block k to the block of omega * omega_k.
    """
    group = rep.group
    size = len(group.omegas)
    d = rep.dim
    inverse_perms = []
    for perm in group.omega_perms:
        inv = [0] * len(perm)
        for i, j in enumerate(perm):
            inv[j] = i
        inverse_perms.append(inv)
    gens = []
    for i in range(group.rank + 1):
        big = np.zeros((d * size, d * size), dtype=complex)
        for k in range(size):
            big[k * d:(k + 1) * d, k * d:(k + 1) * d] = rep.gens[inverse_perms[k][i]]
        gens.append(big)
    omegas = {}
    for j in range(size):
        big = np.zeros((d * size, d * size), dtype=complex)
        for k in range(size):
            target = group.omega_index(group.multiply(group.omegas[j], group.omegas[k]))
            big[target * d:(target + 1) * d, k * d:(k + 1) * d] = np.eye(d)
        omegas[j] = big
    induced = HeckeRep(group=group, params=rep.params, gens=gens, omegas=omegas,
                       name=f"induced({rep.name or 'rep'})")
    validate_rep(induced)
    return induced
