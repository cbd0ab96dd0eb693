"""Command-line entry point: ``ebw <command> ...``.

Every command prints one JSON document on stdout (``simulate`` prints one
JSON line per p) and a short human summary on stderr.

Exit codes: 0 success, 2 admissibility or parse failure, 3 search budget
exhausted, 4 internal invariant violated.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__, alist, gf2
from .decode import DepolarizingModel, simulate_depolarizing
from .designs import (
    Design,
    construct_ag_lines,
    construct_pg_lines,
    construct_projective_plane,
    construct_sts,
    design_from_matrix,
    incidence_matrix,
    load_design,
    pbd_necessary_conditions,
    verify_pbd,
)
from .eaqecc import (
    audit_bounds,
    characterize,
    dimension_bounds,
    one_ebit_girth_predicate,
    one_ebit_structure_check,
    pbd_equivalence_check,
    quantum_min_distance,
)
from .errors import AdmissibilityError, EbwError, InfeasibleError, ParseError, StructuralError
from .evenfree import DEFAULT_NODE_BUDGET, classical_min_distance, count_pasch, min_even_configuration
from .tanner import cycle_report

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4


class InvariantViolation(EbwError):
    pass


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=False) + "\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load(path: str) -> tuple[gf2.BinaryMatrix, Design | None, dict]:
    """Read a design JSON or an alist file; the kind is sniffed from the content."""
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such file: {path}")
    text = p.read_text()
    if text.lstrip().startswith("{"):
        d = load_design(p)
        H = incidence_matrix(d)
        canon = json.dumps(d.to_json(), separators=(",", ":")).encode()
        info = {"path": path, "kind": "design", "fingerprint": hashlib.sha256(canon).hexdigest()}
        return H, d, info
    H = alist.loads(text)
    info = {"path": path, "kind": "alist", "fingerprint": H.fingerprint()}
    d = None
    if (H.col_weights() >= 2).all():
        d = design_from_matrix(H)
    return H, d, info


def _report(args, info=None, **parts) -> dict:
    doc = {"command": args.argv, "tool_version": __version__}
    if info is not None:
        doc["input"] = info
    doc.update(parts)
    return doc


def _steiner_mu(d: Design | None):
    if d is None:
        return None, None
    pbd = verify_pbd(d)
    mu = pbd.block_size_set[0] if pbd.is_pbd and pbd.is_steiner else None
    return pbd, mu


# --- commands ------------------------------------------------------------------


def cmd_construct(args) -> int:
    fam = args.family
    if fam == "sts":
        d = construct_sts(args.params[0])
    elif fam == "pg":
        d = construct_pg_lines(args.params[0])
    elif fam == "ag":
        if len(args.params) != 2:
            raise AdmissibilityError("construct ag needs two parameters: m q")
        d = construct_ag_lines(*args.params)
    else:
        d = construct_projective_plane(args.params[0])
    if args.format == "alist":
        text = alist.dumps(incidence_matrix(d))
    else:
        text = json.dumps(d.to_json()) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    _say(f"{fam} {' '.join(map(str, args.params))}: v={d.v}, b={d.b}")
    return EXIT_OK


def cmd_verify(args) -> int:
    H, d, info = _load(args.input)
    if d is None:
        raise StructuralError("matrix has a column of weight < 2 and is not a design incidence matrix")
    rep = verify_pbd(d)
    ok, alpha, beta = pbd_necessary_conditions(d.v, rep.block_size_set)
    _emit(_report(args, info, pbd=rep.to_json(),
                  necessary_conditions={"passes": ok, "alpha": alpha, "beta": beta}))
    _say(f"is_pbd={rep.is_pbd} K={rep.block_size_set} odd_replicate={rep.odd_replicate}")
    return EXIT_OK


def cmd_characterize(args) -> int:
    H, d, info = _load(args.input)
    pbd, mu = _steiner_mu(d)
    params = characterize(H, distance_cap=args.distance_cap, quantum_distance=args.quantum_distance,
                          node_budget=args.node_budget)
    check = one_ebit_structure_check(H)
    equiv = pbd_equivalence_check(H)
    girth_pred = one_ebit_girth_predicate(H)
    cycles = cycle_report(H, mu)
    parts = {
        "one_ebit": check.holds,
        "one_ebit_check": check.to_json(),
        "params": params.to_json(),
        "cycles": cycles.to_json(),
        "pbd": None if pbd is None else pbd.to_json(),
    }
    partial = params.classical_d is not None and not params.classical_d.complete
    if mu is not None:
        ef = min_even_configuration(d, args.evenfree_cap, args.node_budget)
        if mu == 3:
            ef.pasch_count = count_pasch(d)
        parts["evenfreeness"] = ef.to_json()
        partial = partial or not ef.complete
        bounds = audit_bounds(d, H)
        parts["bounds"] = bounds.to_json()
        parts["bound_violation"] = bounds.to_json()["bound_violation"]
    consistency = {
        "one_ebit_iff_pbd": check.holds == equiv,
        "one_ebit_iff_c1_girth_gt4": check.holds == girth_pred,
        "c1_girth_gt4_implies_girth6": not girth_pred or params.girth == 6,
    }
    if mu is not None and cycles.predicted_six_cycles is not None:
        consistency["six_cycles_match_formula"] = cycles.six_cycle_count == cycles.predicted_six_cycles
    parts["consistency_checks"] = consistency
    _emit(_report(args, info, **parts))
    d_str = "-" if params.classical_d is None else str(params.classical_d)
    _say(f"{params.label} rank={params.rank} girth={cycles.to_json()['girth']} d={d_str} "
         f"N6={cycles.six_cycle_count} one_ebit={check.holds}")
    if not all(consistency.values()):
        _say(f"invariant violated: {consistency}")
        return EXIT_INVARIANT
    return EXIT_BUDGET if partial else EXIT_OK


def cmd_distance(args) -> int:
    H, d, info = _load(args.input)
    res = classical_min_distance(H, args.cap, args.node_budget)
    parts = {"classical_d": res.to_json()}
    if args.quantum:
        parts["quantum_d"] = quantum_min_distance(H, args.cap).to_json()
    _emit(_report(args, info, **parts))
    _say(f"classical d = {res}")
    return EXIT_OK if res.complete else EXIT_BUDGET


def cmd_cycles(args) -> int:
    H, d, info = _load(args.input)
    _, mu = _steiner_mu(d)
    rep = cycle_report(H, mu)
    _emit(_report(args, info, cycles=rep.to_json()))
    _say(f"girth={rep.to_json()['girth']} N4={rep.four_cycle_count} N6={rep.six_cycle_count}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.input:
        H, d, info = _load(args.input)
        if d is None:
            raise StructuralError("bounds audit needs a Steiner 2-design incidence matrix")
        rep = audit_bounds(d, H)
        doc = _report(args, info, bounds=rep.to_json())
        doc["bound_violation"] = doc["bounds"]["bound_violation"]
    else:
        if args.n is None or args.mu is None:
            raise AdmissibilityError("bounds needs an input file or both --n and --mu")
        rep = dimension_bounds(args.n, args.mu)
        doc = _report(args, bounds=rep.to_json())
    _emit(doc)
    for v in rep.violations:
        _say(f"bound_violation: {v.name} predicted {v.predicted}, computed {v.computed}")
    return EXIT_OK


def _parse_p_list(text: str) -> list[float]:
    out = []
    for tok in text.split(","):
        try:
            p = float(tok)
        except ValueError:
            raise AdmissibilityError(f"invalid probability {tok!r}") from None
        if not 0.0 <= p <= 1.0:
            raise AdmissibilityError(f"probability {p} outside [0, 1]")
        out.append(p)
    return out


def cmd_simulate(args) -> int:
    ps = _parse_p_list(args.p)
    H, _, info = _load(args.input)
    for p in ps:
        res = simulate_depolarizing(H, DepolarizingModel(p), args.trials, args.decoder, args.seed,
                                    t_max=args.t_max, max_iters=args.max_iters)
        _emit(res.to_json())
        _say(f"p={p}: {res.block_errors}/{res.trials} = {res.rate:.3g} [{res.ci_lo:.3g}, {res.ci_hi:.3g}]")
    return EXIT_OK


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ebw", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a design (sts V | pg M | ag M Q | plane Q)")
    p.add_argument("family", choices=["sts", "pg", "ag", "plane"])
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["json", "alist"], default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the pair-covering property of a design")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("characterize", help="full report for a design or alist matrix")
    p.add_argument("input")
    p.add_argument("--distance-cap", type=int, default=8)
    p.add_argument("--evenfree-cap", type=int, default=8)
    p.add_argument("--quantum-distance", action="store_true")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_characterize)

    p = sub.add_parser("distance", help="classical (and optionally quantum) minimum distance")
    p.add_argument("input")
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("cycles", help="girth and 4-/6-cycle counts")
    p.add_argument("input")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("bounds", help="rank/dimension bounds, audited against an input or for given n, mu")
    p.add_argument("input", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--mu", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("simulate", help="Monte Carlo two-step decoding over the depolarizing channel")
    p.add_argument("input")
    p.add_argument("--p", required=True, help="comma-separated depolarizing probabilities")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--decoder", choices=["syndrome", "sum-product"], default="syndrome")
    p.add_argument("--t-max", type=int)
    p.add_argument("--max-iters", type=int, default=50)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = ["ebw", *argv]
    try:
        return args.func(args)
    except (AdmissibilityError, ParseError, StructuralError, FileNotFoundError, ValueError) as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT
    except InfeasibleError as exc:
        _say(f"infeasible: {exc}")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
