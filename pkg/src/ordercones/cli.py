"""Command-line front end.

Spaces are described by small JSON files (rationals as ``"p/q"`` strings so
the interface stays exact; floats as decimal strings).  Verdict lines are
machine-parseable and prefixed with ``RESULT``; exit code 0 means the
verdict was true, 1 false, 2 any error.

    ordercones check   --space cone.json --element "0,1,0" --predicate net-catching
    ordercones unorm   --space cone.json --unit "1,1" --element "3,-2"
    ordercones certify --space ice.json --element "1,0,0" [--majorant]
    ordercones suite   config.json [--only Prop7.5] [--seed N] [--out report.csv]
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import harness, icecream, lexseq, polyhedral
from .core import RationalVector, format_rat, rat

SPACE_KINDS = ("hcone", "vcone", "icecream", "lex", "evseq")


class CLIError(Exception):
    pass


# ---------------------------------------------------------------------------
# Space files.


def parse_space(payload: dict):
    if not isinstance(payload, dict) or "kind" not in payload:
        raise CLIError("space file must be a JSON object with a 'kind' field")
    kind = payload["kind"]
    try:
        if kind == "hcone":
            dim = int(payload["dim"])
            normals = tuple(
                RationalVector([rat(c) for c in row]) for row in payload["normals"]
            )
            return polyhedral.HCone(normals, dim)
        if kind == "vcone":
            dim = int(payload["dim"])
            gens = tuple(
                RationalVector([rat(c) for c in row])
                for row in payload["generators"]
            )
            return polyhedral.VCone(gens, dim)
        if kind == "icecream":
            dim = int(payload["dim"])
            axis = np.array([float(c) for c in payload["axis"]], dtype=float)
            eps = float(payload["eps"])
            tol = float(payload.get("tol", "1e-9"))
            return icecream.IceCreamCone(axis=axis, eps=eps, dim=dim, tol=tol)
        if kind == "lex":
            return lexseq.LexSpace(int(payload["dim"]))
        if kind == "evseq":
            return lexseq.EvSeqSpace()
    except CLIError:
        raise
    except Exception as exc:
        raise CLIError(f"invalid {kind!r} space file: {exc}") from exc
    raise CLIError(f"unknown space kind {kind!r}; expected one of {SPACE_KINDS}")


def dump_space(space) -> dict:
    """Inverse of :func:`parse_space` on canonical forms."""
    if isinstance(space, polyhedral.HCone):
        return {
            "kind": "hcone",
            "dim": space.dim,
            "normals": [[format_rat(c) for c in a.coords] for a in space.normals],
        }
    if isinstance(space, polyhedral.VCone):
        return {
            "kind": "vcone",
            "dim": space.dim,
            "generators": [
                [format_rat(c) for c in r.coords] for r in space.generators
            ],
        }
    if isinstance(space, icecream.IceCreamCone):
        return {
            "kind": "icecream",
            "dim": space.dim,
            "axis": [repr(float(c)) for c in space.axis],
            "eps": repr(space.eps),
            "tol": repr(space.tol),
        }
    if isinstance(space, lexseq.LexSpace):
        return {"kind": "lex", "dim": space.dim}
    if isinstance(space, lexseq.EvSeqSpace):
        return {"kind": "evseq"}
    raise CLIError(f"cannot serialize {space!r}")


def load_space(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise CLIError(f"cannot read space file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CLIError(f"space file is not valid JSON: {exc}") from exc
    return parse_space(payload)


def parse_rational_vector(text: str) -> RationalVector:
    try:
        return RationalVector([rat(part.strip()) for part in text.split(",")])
    except Exception as exc:
        raise CLIError(f"cannot parse vector {text!r}: {exc}") from exc


def parse_float_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(part) for part in text.split(",")], dtype=float)
    except ValueError as exc:
        raise CLIError(f"cannot parse float vector {text!r}: {exc}") from exc


def parse_evseq(text: str) -> lexseq.EvSeq:
    """Syntax ``p1,p2,...;tail`` — the prefix may be empty (``;1``)."""
    if ";" not in text:
        raise CLIError(f"sequence element {text!r} needs the form 'prefix;tail'")
    head, _, tail = text.partition(";")
    try:
        prefix = tuple(
            rat(part.strip()) for part in head.split(",") if part.strip() != ""
        )
        return lexseq.EvSeq(prefix, rat(tail.strip()))
    except Exception as exc:
        raise CLIError(f"cannot parse sequence {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# check


PREDICATES = ("member", "interior", "order-unit", "net-catching")


def _check_hcone(cone: polyhedral.HCone, element: str, predicate: str):
    x = parse_rational_vector(element)
    if predicate == "member":
        return cone.contains(x), []
    if predicate == "interior":
        return polyhedral.interior_member(cone, x), []
    if predicate == "order-unit":
        return polyhedral.is_order_unit(cone, x), []
    verdict = polyhedral.is_net_catching_fd(cone, x)
    extra = []
    if verdict:
        w = polyhedral.interior_witness(cone)
        n = polyhedral.catch_index(cone, x, w)
        extra.append(f"RESULT caught_chain_of={_vec_str(w)} at_index={n}")
    return verdict, extra


def _check_icecream(cone: icecream.IceCreamCone, element: str, predicate: str):
    x = parse_float_vector(element)
    region = icecream.member(cone, x)
    extra = [f"RESULT region={region.value}"]
    if predicate == "member":
        return region is not icecream.Region.OUTSIDE, extra
    # interior points, order units and net catching elements coincide for
    # this closed generating Archimedean cone
    return region is icecream.Region.INTERIOR, extra


def _check_lex(space: lexseq.LexSpace, element: str, predicate: str):
    x = parse_rational_vector(element)
    if x.dim != space.dim:
        raise CLIError(f"element dim {x.dim} != space dim {space.dim}")
    sign = lexseq.lex_classify(x)
    extra = [f"RESULT lex_sign={sign.sign} leading_index={sign.leading}"]
    if predicate == "member":
        return sign.sign >= 0, extra
    if predicate == "order-unit":
        return lexseq.lex_is_order_unit(x), extra
    # interior of the cone in the order topology = net catching elements
    return lexseq.lex_is_net_catching(x), extra


def _check_evseq(element: str, predicate: str):
    u = parse_evseq(element)
    cone = lexseq.EvSeqCone()
    if predicate == "member":
        return cone.contains(u), []
    if predicate == "order-unit":
        return lexseq.ev_is_order_unit(u), []
    # no element of this space is net catching; certify when possible
    extra = []
    if cone.contains(u) and not u.is_zero():
        report = lexseq.non_netcatching_witness(u)
        extra.append(
            f"RESULT witness_chain=zeros_before_n_then_{report.c} "
            f"(decreases to 0, never below the candidate)"
        )
        extra.append(
            f"RESULT witness_escape n=1 at_position={report.escape_positions[0]}"
        )
    return False, extra


def cmd_check(args) -> int:
    space = load_space(args.space)
    if args.predicate not in PREDICATES:
        raise CLIError(f"unknown predicate {args.predicate!r}")
    if isinstance(space, polyhedral.HCone):
        verdict, extra = _check_hcone(space, args.element, args.predicate)
    elif isinstance(space, polyhedral.VCone):
        hcone = polyhedral.v_to_h(space)
        if args.predicate == "member":
            verdict, extra = space.contains(parse_rational_vector(args.element)), []
        else:
            verdict, extra = _check_hcone(hcone, args.element, args.predicate)
    elif isinstance(space, icecream.IceCreamCone):
        verdict, extra = _check_icecream(space, args.element, args.predicate)
    elif isinstance(space, lexseq.LexSpace):
        verdict, extra = _check_lex(space, args.element, args.predicate)
    else:
        verdict, extra = _check_evseq(args.element, args.predicate)
    print(f"RESULT {'true' if verdict else 'false'}")
    for line in extra:
        print(line)
    return 0 if verdict else 1


def _vec_str(v: RationalVector) -> str:
    return ",".join(format_rat(c) for c in v.coords)


# ---------------------------------------------------------------------------
# unorm


def cmd_unorm(args) -> int:
    space = load_space(args.space)
    if isinstance(space, polyhedral.VCone):
        space = polyhedral.v_to_h(space)
    if isinstance(space, polyhedral.HCone):
        u = parse_rational_vector(args.unit)
        x = parse_rational_vector(args.element)
        value = polyhedral.unorm(space, u, x)
        print(f"RESULT {format_rat(value)}")
        return 0
    if isinstance(space, icecream.IceCreamCone):
        u = parse_float_vector(args.unit)
        x = parse_float_vector(args.element)
        value = icecream.unorm_ice(space, u, x)
        print(f"RESULT {value!r}")
        return 0
    raise CLIError("unit norms are computed for hcone, vcone and icecream spaces")


# ---------------------------------------------------------------------------
# certify


def cmd_certify(args) -> int:
    space = load_space(args.space)
    if not isinstance(space, icecream.IceCreamCone):
        raise CLIError("certificates are computed for icecream spaces")
    x = parse_float_vector(args.element)
    if args.majorant:
        lam = icecream.base_majorant(space, x)
        print(f"RESULT lambda={lam!r}")
        return 0
    cert = icecream.equivalence_certificate(space, x)
    print(f"RESULT kappa={cert.kappa!r} lambda={cert.lam!r}")
    return 0


# ---------------------------------------------------------------------------
# suite


def _load_suite_config(path: str, seed_override) -> harness.SuiteConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise CLIError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CLIError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise CLIError("config file must hold a JSON object")
    known = {"seed", "dims", "trials_per_property", "float_tol", "mutations"}
    unknown = set(payload) - known
    if unknown:
        raise CLIError(f"unknown config fields: {sorted(unknown)}")
    if seed_override is not None:
        payload["seed"] = seed_override
    try:
        return harness.SuiteConfig(**payload)
    except (TypeError, ValueError) as exc:
        raise CLIError(f"invalid config: {exc}") from exc


def cmd_suite(args) -> int:
    config = _load_suite_config(args.config, args.seed)
    if args.only is not None:
        try:
            reports = [harness.run_one(args.only, config)]
        except KeyError:
            raise CLIError(f"unknown property id {args.only!r}") from None
    else:
        reports = harness.run_all(config)
    for r in reports:
        line = f"RESULT {r.property_id} {r.status} trials={r.trials}"
        if r.counterexample:
            line += f" counterexample={r.counterexample}"
        print(line)
    csv_text = harness.report_csv(reports)
    json_text = harness.report_json(reports)
    if args.out:
        out = args.out
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(json_text if out.endswith(".json") else csv_text)
        except OSError as exc:
            raise CLIError(f"cannot write report: {exc}") from exc
    else:
        sys.stdout.write(csv_text)
    return 0 if all(r.status == "pass" for r in reports) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordercones",
        description="order-theoretic decision procedures for cone-ordered spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="evaluate a predicate on an element")
    p_check.add_argument("--space", required=True, help="space description file")
    p_check.add_argument("--element", required=True, help="element, e.g. '1,1/2'")
    p_check.add_argument("--predicate", required=True, choices=PREDICATES)
    p_check.set_defaults(fn=cmd_check)

    p_unorm = sub.add_parser("unorm", help="unit norm of an element")
    p_unorm.add_argument("--space", required=True)
    p_unorm.add_argument("--unit", required=True, help="interior unit u")
    p_unorm.add_argument("--element", required=True, help="element x")
    p_unorm.set_defaults(fn=cmd_unorm)

    p_cert = sub.add_parser(
        "certify", help="ball-equivalence certificate / base majorant"
    )
    p_cert.add_argument("--space", required=True)
    p_cert.add_argument("--element", required=True)
    p_cert.add_argument(
        "--majorant",
        action="store_true",
        help="print the base majorant instead of the certificate",
    )
    p_cert.set_defaults(fn=cmd_certify)

    p_suite = sub.add_parser("suite", help="run the property suite")
    p_suite.add_argument("config", help="suite config JSON file")
    p_suite.add_argument("--only", help="run a single property id")
    p_suite.add_argument("--seed", type=int, help="override the config seed")
    p_suite.add_argument("--out", help="report path (.csv or .json)")
    p_suite.set_defaults(fn=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CLIError as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
