#!/usr/bin/env python3
"""
Affine Hecke spectral toolkit - command line

    python cli.py weyl structure-check --type A2 --maxlen 10
    python cli.py rep tempered --rep fixtures/steinberg_a2.json
    python cli.py graph analyze --graph fixtures/petersen.txt
    python cli.py bounds oh --type A3
    python cli.py tree witness --builtin steinberg --q 2

Reports are JSON on stdout (or --out), tables optionally as CSV (--csv).
Exit codes: 0 all checks passed, 1 a check failed, 2 usage or configuration
error, 3 a resource cap was hit.
"""
import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from core.config import Settings, get_settings
from core.errors import HeckeToolkitError, ResourceError, UsageError, ValidationError
from core.hecke import get_hecke_algebra
from core.weyl import get_weyl_group
from spectral import bounds, complexes, reports, reps, trees

logger = logging.getLogger(__name__)

# report, table rows, passed
Outcome = Tuple[Dict[str, Any], List[Dict[str, Any]], bool]

DEFAULT_MAXLEN = {"weyl": 6, "rep": 8, "graph": 4}


@dataclass
class RunConfig:
    """
    One CLI invocation.

    Attributes:
        command (str): "<group> <action>", e.g. "weyl enum".
        type_name (Optional[str]): Affine type, when the command takes one.
        q (List[str]): Parameter assignments as given ("2", "s0=3").
        inputs (List[str]): Input files.
        max_ball_length (int): Cap on enumeration length.
        max_tree_radius (int): Cap on explicit tree radius.
        seed (int): Seed for every random choice.
        out (Optional[str]): JSON report path; stdout when None.
        csv (Optional[str]): CSV table path.
    """
    command: str
    type_name: Optional[str] = None
    q: List[str] = field(default_factory=list)
    inputs: List[str] = field(default_factory=list)
    max_ball_length: int = 14
    max_tree_radius: int = 16
    seed: int = 0
    out: Optional[str] = None
    csv: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Settings) -> "RunConfig":
        inputs = list(getattr(args, "graph", None) or []) + list(getattr(args, "chambers", None) or [])
        if getattr(args, "rep", None):
            inputs.append(args.rep)
        return cls(
            command=f"{args.group} {args.action}",
            type_name=getattr(args, "type", None),
            q=list(args.q or ["2"]),
            inputs=inputs,
            max_ball_length=settings.max_ball_length,
            max_tree_radius=settings.max_tree_radius,
            seed=settings.seed if args.seed is None else args.seed,
            out=args.out,
            csv=args.csv,
        )

    def require_type(self) -> str:
        if not self.type_name:
            raise UsageError(f"'{self.command}' needs --type")
        return self.type_name

    def check_caps(self, maxlen: Optional[int] = None, radius: Optional[int] = None) -> None:
        """Raises ResourceError before any enumeration when a requested size is over its cap."""
        if maxlen is not None and maxlen > self.max_ball_length:
            raise ResourceError(f"--maxlen {maxlen} exceeds HECKE_MAX_BALL_LENGTH = {self.max_ball_length}",
                                required=maxlen)
        if radius is not None and radius > self.max_tree_radius:
            raise ResourceError(f"--radius {radius} exceeds HECKE_MAX_TREE_RADIUS = {self.max_tree_radius}",
                                required=radius)


# ------------------------------------------------------------------ weyl

def weyl_enum(args: argparse.Namespace, config: RunConfig) -> Outcome:
    config.check_caps(maxlen=args.maxlen)
    group = get_weyl_group(config.require_type())
    rows = []
    per_length: Dict[int, int] = {}
    for w in group.enumerate_ball(args.maxlen):
        length = group.length(w)
        per_length[length] = per_length.get(length, 0) + 1
        rows.append({"word": group.word_string(w), "length": length, "beta": list(w.beta),
                     "omega": group.reduced_word(w)[1]})
    report = {"command": config.command, "type": group.type_name, "maxlen": args.maxlen, "count": len(rows),
              "per_length": per_length, "elements": rows}
    return report, rows, True


def weyl_structure_check(args: argparse.Namespace, config: RunConfig) -> Outcome:
    config.check_caps(maxlen=args.maxlen)
    group = get_weyl_group(config.require_type())
    failures = group.structure_check(args.maxlen)
    mismatches = group.length_oracle_check(args.maxlen)
    passed = not failures and not mismatches
    report = {"command": config.command, "type": group.type_name, "maxlen": args.maxlen,
              "counterexamples": failures, "length_mismatches": mismatches, "passed": passed}
    return report, failures, passed


def weyl_poincare(args: argparse.Namespace, config: RunConfig) -> Outcome:
    config.check_caps(maxlen=args.maxlen)
    algebra = get_hecke_algebra(config.require_type())
    rows = algebra.poincare_comparison(args.maxlen)
    mismatched = [r["exponent"] for r in rows if not r["matches"]]
    passed = not mismatched
    report = {"command": config.command, "type": algebra.group.type_name, "maxlen": args.maxlen,
              "degrees": rows, "mismatched_exponents": mismatched, "passed": passed}
    return report, rows, passed


# ------------------------------------------------------------------- rep

def _load_rep(args: argparse.Namespace, config: RunConfig) -> reps.HeckeRep:
    if args.rep:
        return reps.load_rep(args.rep)
    if args.builtin:
        return reps.builtin_rep(args.builtin, config.require_type(), config.q)
    raise UsageError("give a representation with --rep FILE or --builtin NAME")


def _rep_header(rep: reps.HeckeRep, config: RunConfig) -> Dict[str, Any]:
    return {"command": config.command, "rep": rep.name, "type": rep.type_name, "dim": rep.dim,
            "q": rep.params.to_dict()}


def rep_validate(args: argparse.Namespace, config: RunConfig) -> Outcome:
    rep = _load_rep(args, config)
    report = _rep_header(rep, config)
    report.update({"extended": rep.extended, "unitary": reps.is_unitary(rep), "passed": True})
    return report, [], True


def rep_tempered(args: argparse.Namespace, config: RunConfig) -> Outcome:
    rep = _load_rep(args, config)
    result = reps.p_min(rep)
    report = _rep_header(rep, config)
    report.update({"p_min": result.value, "above_trivial": result.above_trivial,
                   "eigenvalues": result.eigenvalues})
    passed = True
    if args.p is not None:
        passed = reps.rh_check(rep, args.p)
        report["rh_p"] = args.p
        report["rh_holds"] = passed
    rows = [{"coweight": i + 1, "eigenvalue": z, "abs": abs(z)}
            for i, eigs in enumerate(result.eigenvalues) for z in eigs]
    report["passed"] = passed
    return report, rows, passed


def rep_zeta(args: argparse.Namespace, config: RunConfig) -> Outcome:
    rep = _load_rep(args, config)
    data = reps.zeta(rep)
    report = _rep_header(rep, config)
    report["zeta"] = data
    rows = [{"coweight": i + 1, "length": data.lengths[i], "u_pole": u, "abs": abs(u)}
            for i, poles in enumerate(data.u_poles) for u in poles]
    return report, rows, True


def _vector(text: Optional[str], dim: int) -> np.ndarray:
    if not text:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1
        return v
    try:
        values = [complex(x.replace(" ", "")) for x in text.split(",")]
    except ValueError as e:
        raise UsageError(f"cannot parse vector {text!r}") from e
    return np.array(values, dtype=complex)


def rep_growth(args: argparse.Namespace, config: RunConfig) -> Outcome:
    config.check_caps(maxlen=args.maxlen)
    rep = _load_rep(args, config)
    p = args.p
    if p is None:
        p = max(2.0, reps.p_min(rep).value)
        if math.isinf(p):
            raise UsageError("the representation is not p-tempered for any finite p; pass --p")
    v = _vector(args.v, rep.dim)
    v_star = _vector(args.v_star, rep.dim)
    results = [reps.tempered_growth_check(rep, v, v_star, args.maxlen, p, delta, onset=args.onset)
               for delta in (args.delta or [0.1])]
    passed = all(r.passed for r in results)
    report = _rep_header(rep, config)
    report.update({"p": p, "checks": results, "passed": passed})
    rows = [dict(row, delta=r.delta) for r in results for row in r.rows]
    return report, rows, passed


# ----------------------------------------------------------------- graph

def _load_complexes(args: argparse.Namespace, config: RunConfig) -> List[Tuple[str, complexes.ChamberComplex]]:
    loaded = []
    for path in args.graph or []:
        loaded.append((path, complexes.load_graph(path, args.mode)))
    for path in args.chambers or []:
        loaded.append((path, complexes.load_chamber_system(path)))
    if args.random:
        try:
            n, d, count = (int(x) for x in args.random.split(","))
        except ValueError as e:
            raise UsageError(f"--random expects N,D,COUNT, got {args.random!r}") from e
        for k in range(count):
            g = complexes.random_regular_graph(n, d, seed=config.seed + k)
            loaded.append((f"random:{n},{d}#{k}", complexes.graph_complex(g, args.mode)))
    if not loaded:
        raise UsageError("give at least one --graph, --chambers or --random input")
    logger.info("Loaded %d complexes", len(loaded))
    return loaded


def graph_analyze(args: argparse.Namespace, config: RunConfig) -> Outcome:
    tol = get_settings().tolerance
    rows, details, passed = [], [], True
    for label, X in _load_complexes(args, config):
        result = complexes.classify_expander(X)
        row = {"input": label, "mode": X.mode, "n_chambers": X.n_chambers, "p_min": result.p_min,
               "ramanujan": result.ramanujan, "above_trivial": result.above_trivial, "q_beta": result.q_beta}
        if X.mode == "regular" and X.graph is not None:
            residual = complexes.ihara_bass_check(X)
            row["ihara_bass_residual"] = residual
            row["girth"] = complexes.injectivity_radius(X)
            passed = passed and residual <= 1e-6 * max(1.0, result.q_beta)
        elif X.mode == "bipartite":
            residuals = complexes.boundary_relations_check(X)
            row["boundary_residual"] = max(residuals.values())
            passed = passed and row["boundary_residual"] <= tol
        else:
            # lower bound once it reaches maxlen
            row["injectivity_radius"] = complexes.injectivity_radius(X, args.maxlen)
        invariance = complexes.trivial_invariance_check(X, args.maxlen)
        row["trivial_invariance_residual"] = invariance
        passed = passed and invariance <= tol
        rows.append(row)
        details.append(dict(row, nb_eigenvalues=result.nb_eigenvalues))
    report = {"command": config.command, "complexes": details, "passed": passed}
    return report, rows, passed


def graph_diameter_check(args: argparse.Namespace, config: RunConfig) -> Outcome:
    rows = []
    for label, X in _load_complexes(args, config):
        result = complexes.distance_theorem_check(X, p=args.p)
        rows.append(dict({"input": label}, **result))
    passed = all(r["passed"] for r in rows)
    return {"command": config.command, "checks": rows, "passed": passed}, rows, passed


def _walk(args: argparse.Namespace, loaded) -> Any:
    type_name = loaded[0][1].type_name
    return get_hecke_algebra(type_name).parse_element(args.h)


def graph_serre(args: argparse.Namespace, config: RunConfig) -> Outcome:
    radius = args.radius or 6
    config.check_caps(radius=radius)
    loaded = _load_complexes(args, config)
    h = _walk(args, loaded)
    rows = trees.serre_check([X for _, X in loaded], h, radius=radius)
    rows = [dict({"input": label}, **row) for (label, _), row in zip(loaded, rows)]
    report = {"command": config.command, "h": args.h, "radius": radius, "rows": rows, "passed": True}
    return report, rows, True


def graph_alon_boppana(args: argparse.Namespace, config: RunConfig) -> Outcome:
    radius = args.radius or 10
    config.check_caps(radius=radius)
    loaded = _load_complexes(args, config)
    h = _walk(args, loaded)
    rows = trees.alon_boppana_check([X for _, X in loaded], h, radius=radius)
    rows = [dict({"input": label}, **row) for (label, _), row in zip(loaded, rows)]
    passed = all(r["passed"] for r in rows)
    report = {"command": config.command, "h": args.h, "radius": radius, "rows": rows, "passed": passed}
    return report, rows, passed


# ---------------------------------------------------------------- bounds

def _bound_outcome(config: RunConfig, report: bounds.BoundReport) -> Outcome:
    row = {"formula": report.formula, "value": report.value}
    return {"command": config.command, "bound": report, "passed": report.ok}, [row], report.ok


def bounds_d(args: argparse.Namespace, config: RunConfig) -> Outcome:
    group = get_weyl_group(config.require_type())
    q_max = group.param_system(config.q).q_max
    value = bounds.d_constant(group.type_name, q_max, args.l)
    report = bounds.BoundReport(formula="d_constant", inputs={"type": group.type_name, "q_max": q_max, "l": args.l},
                                value=float(value))
    out, rows, passed = _bound_outcome(config, report)
    out["exact"] = value
    return out, rows, passed


def bounds_hw(args: argparse.Namespace, config: RunConfig) -> Outcome:
    group = get_weyl_group(config.require_type())
    w = group.from_word(args.word or "")
    return _bound_outcome(config, bounds.norm_bound_hw(group.type_name, config.q, w, args.p or 2.0))


def bounds_hbeta(args: argparse.Namespace, config: RunConfig) -> Outcome:
    group = get_weyl_group(config.require_type())
    try:
        beta = tuple(int(x) for x in (args.beta or "").split(","))
    except ValueError as e:
        raise UsageError(f"--beta expects comma separated integers, got {args.beta!r}") from e
    if len(beta) != group.rank:
        raise UsageError(f"--beta needs {group.rank} coordinates for {group.type_name}")
    fn = bounds.refined_norm_bound_hbeta if args.refined else bounds.norm_bound_hbeta
    return _bound_outcome(config, fn(group.type_name, config.q, beta, args.p or 2.0))


def bounds_oh(args: argparse.Namespace, config: RunConfig) -> Outcome:
    type_name = config.require_type()
    value = bounds.oh_p0(type_name)
    return {"command": config.command, "type": type_name, "p0": value, "passed": True}, \
        [{"type": type_name, "p0": value}], True


def bounds_diameter(args: argparse.Namespace, config: RunConfig) -> Outcome:
    group = get_weyl_group(config.require_type())
    if args.N is None:
        raise UsageError("'bounds diameter' needs --N")
    q = float(min(group.param_system(config.q).q))
    p = args.p or 2.0
    values = bounds.diameter_bounds(group.type_name, p, q, args.N)
    report = {"command": config.command, "type": group.type_name, "p": p, "q": q, "n_chambers": args.N,
              "bounds": values, "passed": True}
    return report, [dict({"p": p, "q": q, "n_chambers": args.N}, **values)], True


# ------------------------------------------------------------------ tree

def tree_witness(args: argparse.Namespace, config: RunConfig) -> Outcome:
    rep = _load_rep(args, config) if args.rep else reps.builtin_rep(args.builtin or "steinberg", "A1", config.q)
    h = get_hecke_algebra("A1").parse_element(args.h)
    deltas = tuple(args.delta) if args.delta else (0.4, 0.2, 0.1, 0.05)
    result = trees.approx_spectrum_witness(rep, h, p=args.p or 2.0, deltas=deltas, radius=args.radius)
    report = {"command": config.command, "rep": rep.name, "h": args.h, "witness": result,
              "passed": result.decreasing}
    return report, result.rows, result.decreasing


def _tree_q(config: RunConfig) -> int:
    params = get_weyl_group("A1").param_system(config.q)
    q = params.q_of(0)
    if q.denominator != 1:
        raise UsageError("trees need an integer q")
    return int(q)


def tree_norms(args: argparse.Namespace, config: RunConfig) -> Outcome:
    radius = args.radius or 8
    maxlen = 3 if args.maxlen is None else args.maxlen
    config.check_caps(maxlen=maxlen, radius=radius)
    results = trees.norm_bound_check(_tree_q(config), radius, maxlen, p=args.p or 2.0)
    passed = all(r.ok for r in results)
    rows = [{"w": r.inputs["w"], "bound": r.value, "empirical": r.empirical, "ok": r.ok} for r in results]
    report = {"command": config.command, "radius": radius, "maxlen": maxlen, "reports": results, "passed": passed}
    return report, rows, passed


def tree_sectors(args: argparse.Namespace, config: RunConfig) -> Outcome:
    radius = args.radius or 10
    config.check_caps(radius=radius)
    tree = trees.TreeBall(_tree_q(config), radius)
    volume = tree.volume_check()
    lemma = trees.sector_lemma_check(tree)
    counts = [trees.sectorial_count_check(tree, m) for m in (args.m or [1, 2, 3])]
    passed = volume["counted"] == volume["predicted"] and not lemma["violations"] and all(c["passed"] for c in counts)
    rows = [dict(row, m=c["m"]) for c in counts for row in c["rows"]]
    report = {"command": config.command, "q": tree.q, "radius": radius, "volume": volume, "sector_lemma": lemma,
              "sectorial_counts": counts, "passed": passed}
    return report, rows, passed


COMMANDS: Dict[str, Dict[str, Callable[[argparse.Namespace, RunConfig], Outcome]]] = {
    "weyl": {"enum": weyl_enum, "structure-check": weyl_structure_check, "poincare": weyl_poincare},
    "rep": {"validate": rep_validate, "tempered": rep_tempered, "zeta": rep_zeta, "growth": rep_growth},
    "graph": {"analyze": graph_analyze, "diameter-check": graph_diameter_check, "serre": graph_serre,
              "alon-boppana": graph_alon_boppana},
    "bounds": {"d": bounds_d, "hw": bounds_hw, "hbeta": bounds_hbeta, "oh": bounds_oh, "diameter": bounds_diameter},
    "tree": {"witness": tree_witness, "norms": tree_norms, "sectors": tree_sectors},
}


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="affine type, e.g. A1, BC1, A2, C2, G2")
    common.add_argument("--q", action="append", help="parameter value or class=value; repeatable (default 2)")
    common.add_argument("--maxlen", type=int, help="ball length / Poincare degree / tree word length")
    common.add_argument("--radius", type=int, help="tree radius")
    common.add_argument("--p", type=float, help="norm exponent")
    common.add_argument("--delta", type=float, action="append", help="decay rate; repeatable")
    common.add_argument("--seed", type=int, help="seed (default HECKE_SEED)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--csv", help="also write the report's table as CSV")
    common.add_argument("--rep", help="representation JSON file")
    common.add_argument("--builtin", help="built-in representation: trivial, steinberg, sign:<class>=<t|s>,...")
    common.add_argument("--v", help="vector as comma separated complex numbers")
    common.add_argument("--v-star", dest="v_star", help="dual vector as comma separated complex numbers")
    common.add_argument("--onset", type=int, default=0, help="lengths up to onset set the growth constant")
    common.add_argument("--graph", action="append", help="graph file (N M header, one edge per line)")
    common.add_argument("--chambers", action="append", help="chamber-system JSON file")
    common.add_argument("--random", help="random regular graphs as N,D,COUNT")
    common.add_argument("--mode", default="regular", choices=("regular", "bipartite"))
    common.add_argument("--h", default="s0 + s1", help="Hecke element, e.g. 's0 + s1'")
    common.add_argument("--l", type=int, default=0, help="length for the D constant")
    common.add_argument("--word", help="word for h_w, e.g. 's0 w1'")
    common.add_argument("--beta", help="coweight in the fundamental-coweight basis, e.g. 1,0")
    common.add_argument("--refined", action="store_true", help="use the block-refined h_beta bound")
    common.add_argument("--N", type=int, help="number of chambers")
    common.add_argument("--m", type=int, action="append", help="translation length for sector counts")

    parser = argparse.ArgumentParser(description="Affine Weyl groups, Hecke algebras and L_p spectral checks.")
    groups = parser.add_subparsers(dest="group", required=True)
    for name, actions in COMMANDS.items():
        sub = groups.add_parser(name).add_subparsers(dest="action", required=True)
        for action in actions:
            sub.add_parser(action, parents=[common])
    args = parser.parse_args(argv)
    if args.maxlen is None and args.group in DEFAULT_MAXLEN:
        args.maxlen = DEFAULT_MAXLEN[args.group]
    return args


def main(argv: Optional[List[str]] = None) -> int:
    try:
        settings = get_settings()
    except HeckeToolkitError as e:
        logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
        logger.error("%s", e)
        return e.exit_code
    logging.basicConfig(level=getattr(logging, settings.log_level),
                        format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
    args = _parse_args(argv)
    config = RunConfig.from_args(args, settings)
    logger.info("Running '%s'", config.command)
    try:
        report, rows, passed = COMMANDS[args.group][args.action](args, config)
    except ValidationError as e:
        logger.error("Validation failed: %s", e)
        report = {"command": config.command, "error": str(e), "relation": e.relation, "residual": e.residual,
                  "passed": False}
        text = reports.write_report(report, config.out)
        if not config.out:
            sys.stdout.write(text)
        return e.exit_code
    except HeckeToolkitError as e:
        logger.error("%s: %s", type(e).__name__, e)
        if isinstance(e, ResourceError) and e.required is not None:
            logger.error("Required size estimate: %s", e.required)
        return e.exit_code
    try:
        text = reports.write_report(report, config.out)
        if not config.out:
            sys.stdout.write(text)
        if config.csv:
            reports.write_csv(rows, config.csv)
    except HeckeToolkitError as e:
        logger.error("%s", e)
        return e.exit_code
    logger.info("'%s' %s", config.command, "passed" if passed else "FAILED")
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
