"""Deterministic command-line front end.

Every subcommand reads exact JSON, runs zero-tolerance verifications and
prints one JSON report (sorted keys) to stdout.  Exit status: 0 when every
requested verification passed, 1 on a verification failure, 2 on an invalid
job specification.  BDFORGE_THREADS caps the worker pool used for the
per-quadruple sweep of full-suite; the report ordering is canonical
regardless of the schedule.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass


from . import bialgebra as bialg_mod
from . import descent as descent_mod
from .bd import (RMatrixRejection, VerificationFailed, build_bd_rmatrix,
                 make_quadruple, solve_cartan_part, verify_rmatrix)
from .chevalley import algebra, element_to_json
from .rootsys import AdmissibleTriple, UnsupportedType, enumerate_admissible_triples
from .scalars import scalar_to_str
from .tensors import Tensor2, cyb, flip
from .twist import build_twist_cocycle, find_pi

COMMANDS = ("enumerate", "bd-build", "bialg-verify", "verify",
            "find-pi", "cocycle", "descend", "full-suite")


@dataclass
class JobSpec:
    command: str
    type_label: str = ""
    rank: int = 0
    triple: dict | None = None
    rh: list | None = None
    r: list | None = None
    n: int = 0
    d: int = 0
    output_path: str | None = None


class InvalidSpec(ValueError):
    pass


def _algebra_for(spec: JobSpec):
    if not spec.type_label or spec.rank < 1:
        raise InvalidSpec("--type and --rank are required")
    return algebra(spec.type_label, spec.rank)


def _parse_triple(g, spec: JobSpec) -> AdmissibleTriple:
    if spec.triple is None:
        raise InvalidSpec("--triple is required")
    triple = AdmissibleTriple.from_json(spec.triple)
    if triple not in enumerate_admissible_triples(g.rs):
        raise InvalidSpec(f"triple {spec.triple} is not admissible for "
                          f"{spec.type_label}{spec.rank}")
    return triple


def _quadruple(g, spec: JobSpec):
    triple = _parse_triple(g, spec)
    r_h = Tensor2.from_json(g, spec.rh) if spec.rh is not None else None
    try:
        return make_quadruple(g, triple, r_h)
    except ValueError as exc:
        raise InvalidSpec(str(exc)) from None


def run(spec: JobSpec):
    """Execute a job; returns (exit_code, report)."""
    try:
        handler = _HANDLERS[spec.command]
    except KeyError:
        return 2, {"error": f"unknown command {spec.command!r}"}
    try:
        return handler(spec)
    except (InvalidSpec, UnsupportedType, descent_mod.UnsupportedRank,
            ValueError, KeyError) as exc:
        return 2, {"error": str(exc)}


def _cmd_enumerate(spec: JobSpec):
    g = _algebra_for(spec)
    triples = enumerate_admissible_triples(g.rs)
    return 0, {"type": spec.type_label, "rank": spec.rank,
               "count": len(triples),
               "triples": [t.to_json() for t in triples]}


def _cmd_bd_build(spec: JobSpec):
    g = _algebra_for(spec)
    quad = _quadruple(g, spec)
    try:
        rm = build_bd_rmatrix(g, quad)
    except VerificationFailed as exc:
        return 1, {"error": str(exc)}
    return 0, {"r": rm.r.to_json(), "lambda": scalar_to_str(rm.lam),
               "cyb_zero": True}


def _cmd_bialg_verify(spec: JobSpec):
    g = _algebra_for(spec)
    if spec.r is None:
        raise InvalidSpec("--r is required")
    tensor = Tensor2.from_json(g, spec.r)
    delta = bialg_mod.cobracket_from_r(g, tensor, validate=False)
    verdicts = bialg_mod.check_axioms(delta)
    code = 0 if all(verdicts.values()) else 1
    return code, verdicts


def _cmd_verify(spec: JobSpec):
    g = _algebra_for(spec)
    if spec.r is None:
        raise InvalidSpec("--r is required")
    tensor = Tensor2.from_json(g, spec.r)
    try:
        lam = verify_rmatrix(g, tensor)
    except RMatrixRejection as exc:
        return 1, {"rejection": exc.reason}
    return 0, {"lambda": scalar_to_str(lam)}


def _cmd_find_pi(spec: JobSpec):
    g = _algebra_for(spec)
    quad = _quadruple(g, spec)
    pi = find_pi(quad)
    if pi is None:
        return 0, {"pi": None}
    return 0, {"pi": {str(i): str(pi(i)) for i in g.rs.simple_indices}}


def _cmd_cocycle(spec: JobSpec):
    g = _algebra_for(spec)
    if not spec.d:
        raise InvalidSpec("--d is required")
    quad = _quadruple(g, spec)
    pi = find_pi(quad)
    if pi is None:
        return 1, {"pi": None,
                   "error": "no diagram automorphism satisfies the flip conditions"}
    coc = build_twist_cocycle(quad, pi, spec.d)
    return 0, {"pi": {str(i): str(pi(i)) for i in g.rs.simple_indices},
               "d": spec.d, "u": coc.u.to_json()}


def _cmd_descend(spec: JobSpec):
    from .bd import build_dj_rmatrix
    if not spec.n or not spec.d:
        raise InvalidSpec("--n and --d are required")
    coc = descent_mod.unitary_cocycle(spec.n, spec.d)
    g = coc.algebra
    rm = build_dj_rmatrix(g)
    cases = {
        "sqrt_d_multiple": descent_mod.descent_case(rm, coc, descent_mod.ALPHA_SQRT_D),
        "rational": descent_mod.descent_case(rm, coc, descent_mod.ALPHA_RATIONAL),
    }
    try:
        form = descent_mod.fixed_points(coc)
    except descent_mod.DimensionMismatch as exc:
        return 1, {"error": str(exc)}
    delta = descent_mod.descend_cobracket(rm, coc, form, descent_mod.ALPHA_SQRT_D)
    verdicts = bialg_mod.check_axioms(delta)
    round_trip = descent_mod.reextension_matches(rm, coc, form, delta,
                                                 descent_mod.ALPHA_SQRT_D)
    ok = all(verdicts.values()) and round_trip and form.dim == spec.n ** 2 - 1
    report = {
        "n": spec.n, "d": spec.d,
        "k_dimension": form.dim,
        "descent_cases": cases,
        "basis": [element_to_json(v) for v in form.basis_over_K],
        "cobracket": [t.to_json() for t in delta.values],
        "axioms": verdicts,
        "round_trip": round_trip,
    }
    return (0 if ok else 1), report


def _quadruple_checks(g, triple):
    quad = make_quadruple(g, triple)
    checks = {"triple": triple.to_json()}
    try:
        rm = build_bd_rmatrix(g, quad)
    except VerificationFailed as exc:
        checks.update({"r_matrix": False, "error": str(exc)})
        return checks
    checks["lambda"] = scalar_to_str(rm.lam)
    checks["r_matrix"] = (rm.r + flip(rm.r) == g.casimir()[0]) and cyb(rm.r).is_zero()
    delta = bialg_mod.cobracket_from_r(g, rm, validate=False)
    checks["bialgebra"] = bialg_mod.check_axioms(delta)
    pi = find_pi(quad, rm)
    checks["pi"] = None if pi is None else {str(i): str(pi(i))
                                            for i in g.rs.simple_indices}
    return checks


def _cmd_full_suite(spec: JobSpec):
    g = _algebra_for(spec)
    triples = enumerate_admissible_triples(g.rs)
    workers = max(1, int(os.environ.get("BDFORGE_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(triples) or 1)) as pool:
            results = list(pool.map(lambda t: _quadruple_checks(g, t), triples))
    else:
        results = [_quadruple_checks(g, t) for t in triples]
    ok = all(c.get("r_matrix") and all(c.get("bialgebra", {}).values())
             for c in results)
    kernel_dims = {}
    for t in triples:
        _, kernel = solve_cartan_part(g, t)
        kernel_dims[json.dumps(t.to_json(), sort_keys=True)] = len(kernel)
    report = {"type": spec.type_label, "rank": spec.rank,
              "triple_count": len(triples),
              "cartan_kernel_dims": kernel_dims,
              "quadruples": results,
              "all_passed": ok}
    return (0 if ok else 1), report


_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "bd-build": _cmd_bd_build,
    "bialg-verify": _cmd_bialg_verify,
    "verify": _cmd_verify,
    "find-pi": _cmd_find_pi,
    "cocycle": _cmd_cocycle,
    "descend": _cmd_descend,
    "full-suite": _cmd_full_suite,
}


def _add_type_rank(p):
    p.add_argument("--type", dest="type_label", required=True,
                   choices=["A", "B", "C", "D", "G"])
    p.add_argument("--rank", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bdforge",
        description="Exact Belavin-Drinfeld bialgebra construction and verification")
    parser.add_argument("--output", dest="output_path", default=None,
                        help="also write the JSON report to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list admissible triples")
    _add_type_rank(p)

    p = sub.add_parser("bd", help="Belavin-Drinfeld constructions")
    bd_sub = p.add_subparsers(dest="bd_command", required=True)
    pb = bd_sub.add_parser("build", help="build and verify the BD r-matrix")
    _add_type_rank(pb)
    pb.add_argument("--triple", required=True, help="triple JSON")
    pb.add_argument("--rh", default=None, help="Cartan part tensor JSON")

    p = sub.add_parser("bialg", help="bialgebra checks")
    bi_sub = p.add_subparsers(dest="bialg_command", required=True)
    pv = bi_sub.add_parser("verify", help="check the three cobracket axioms for dr")
    _add_type_rank(pv)
    pv.add_argument("--r", required=True, help="tensor JSON")

    p = sub.add_parser("verify", help="verify the r-matrix axioms")
    _add_type_rank(p)
    p.add_argument("--r", required=True, help="tensor JSON")

    p = sub.add_parser("twist", help="twisted cocycle constructions")
    tw_sub = p.add_subparsers(dest="twist_command", required=True)
    pf = tw_sub.add_parser("find-pi", help="search for a flip-compatible diagram automorphism")
    _add_type_rank(pf)
    pf.add_argument("--triple", required=True)
    pf.add_argument("--rh", default=None)
    pc = tw_sub.add_parser("cocycle", help="build the base twisted cocycle")
    _add_type_rank(pc)
    pc.add_argument("--triple", required=True)
    pc.add_argument("--rh", default=None)
    pc.add_argument("--d", type=int, required=True)

    p = sub.add_parser("descend", help="quadratic Galois descent")
    de_sub = p.add_subparsers(dest="descend_command", required=True)
    ps = de_sub.add_parser("sun", help="special unitary form su_n(Q,d)")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--d", type=int, required=True)

    p = sub.add_parser("full-suite", help="run every check for one type")
    _add_type_rank(p)

    return parser


def spec_from_args(args) -> JobSpec:
    command = args.command
    if command == "bd":
        command = "bd-build"
    elif command == "bialg":
        command = "bialg-verify"
    elif command == "twist":
        command = "find-pi" if args.twist_command == "find-pi" else "cocycle"
    elif command == "descend":
        command = "descend"
    spec = JobSpec(command=command, output_path=args.output_path)
    for name in ("type_label", "rank", "n", "d"):
        if hasattr(args, name):
            setattr(spec, name, getattr(args, name))
    for name, attr in (("triple", "triple"), ("rh", "rh"), ("r", "r")):
        raw = getattr(args, attr, None)
        if raw is not None:
            try:
                setattr(spec, name, json.loads(raw))
            except json.JSONDecodeError as exc:
                raise InvalidSpec(f"invalid JSON for --{attr}: {exc}") from None
    return spec


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
    except InvalidSpec as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return 2
    code, report = run(spec)
    payload = json.dumps(report, sort_keys=True, indent=2)
    print(payload)
    if spec.output_path:
        with open(spec.output_path, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
