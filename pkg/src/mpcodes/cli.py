"""Command-line entry point: ``mpcodes <group> <command> ...``.

Exit status is 0 on success, 1 on a domain error (non-FRR matrix, failed
hypothesis, cap exceeded, failed reproduction claim) and 2 on unreadable or
malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import config
from .classify import (
    SfrrProfile,
    has_partitioned_orthogonal,
    is_nsc,
    is_quasi_orthogonal,
    is_reversely_nsc,
    is_sfrr,
    is_two_way_sfrr,
    search,
)
from .code import Code, dual, params
from .errors import MpcError, SpecError
from .matrix import RingMatrix, frr_certificate, is_frr
from .mpc import MpcSpec, bound_report, build, dual_mpc
from .repro import EXAMPLES, run_repro
from .ring import WeightTable, make_ring, spec_from_json, spec_name


class InputError(Exception):
    """Unreadable or malformed input file (exit status 2)."""


def _load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def _words_text(code: Code, limit: int = 64) -> str:
    ring = code.ring
    lines = [" ".join(ring.format(x) for x in w) for w in code.words[:limit]]
    if code.cardinality > limit:
        lines.append(f"... ({code.cardinality - limit} more)")
    return "\n".join(lines)


def _code_summary(code: Code) -> dict:
    p = params(code)
    return {
        "label": p.label(code.ring.order),
        "n": p.n,
        "size": p.size,
        "d_H": p.d_H,
        "free": p.is_free,
        "rank": p.rank,
        "mds": p.is_mds,
    }


# ----------------------------------------------------------------- handlers


def cmd_ring_info(args):
    ring = make_ring(spec_from_json(_load(args.spec)), config.limits.max_ring_order)
    comps = ring.decompose()
    info = {
        "name": ring.name,
        "order": ring.order,
        "characteristic": ring.characteristic,
        "units": len(ring.units),
        "components": [{"ring": c.name, "order": c.order, "idempotent": ring.literal(e.index)} for c, e in comps],
    }
    text = [f"{ring.name}: order {ring.order}, characteristic {ring.characteristic}, {len(ring.units)} units"]
    text += [f"  component {k}: {c.name} (idempotent {ring.format(e.index)})" for k, (c, e) in enumerate(comps)]
    _emit(args, info, "\n".join(text))
    return 0


def cmd_matrix_check(args):
    a = RingMatrix.from_json(_load(args.matrix), config.limits.max_ring_order)
    pred = args.pred
    if pred == "frr":
        result = is_frr(a)
    elif pred == "nsc":
        result = is_nsc(a)
    elif pred == "rnsc":
        result = is_reversely_nsc(a)
    elif pred == "qo":
        result = is_quasi_orthogonal(a)
    elif pred.startswith("sfrr="):
        prof = SfrrProfile.from_json(_load(pred[5:]), a.m)
        result = is_sfrr(a, prof)
    elif pred.startswith("two-way="):
        result = is_two_way_sfrr(a, int(pred[8:]))
    elif pred.startswith("po="):
        result = has_partitioned_orthogonal(a, int(pred[3:]))
    else:
        raise InputError(f"unknown predicate {pred!r}")
    _emit(args, {"predicate": pred, "result": result}, f"{pred}: {result}")
    return 0


def cmd_matrix_cert(args):
    a = RingMatrix.from_json(_load(args.matrix), config.limits.max_ring_order)
    cert = frr_certificate(a)
    payload = {"right_inverse": cert.right_inverse.to_json(), "kernel_basis": cert.kernel_basis.to_json()}
    text = f"right inverse B (A B = I):\n{cert.right_inverse.pretty()}\nkernel basis G (A G^T = 0):\n{cert.kernel_basis.pretty() or '(empty)'}"
    _emit(args, payload, text)
    return 0


def cmd_code_params(args):
    code = Code.from_json(_load(args.code), config.limits.max_ring_order)
    info = _code_summary(code)
    if args.weight:
        w = WeightTable.from_json(code.ring, _load(args.weight))
        info["d_w"] = code.min_distance(w)
    text = f"{info['label']}  free={info['free']} rank={info['rank']} mds={info['mds']}"
    if "d_w" in info:
        text += f" d_w={info['d_w']}"
    _emit(args, info, text)
    return 0


def cmd_code_dual(args):
    code = Code.from_json(_load(args.code), config.limits.max_ring_order)
    d = dual(code)
    payload = {"dual": d.to_json(), **_code_summary(d)}
    _emit(args, payload, f"dual {_code_summary(d)['label']}\n{_words_text(d)}")
    return 0


def _mpc_spec(path) -> MpcSpec:
    return MpcSpec.from_json(_load(path), Path(path).parent, config.limits.max_ring_order)


def cmd_mpc_build(args):
    spec = _mpc_spec(args.spec)
    code = build(spec)
    info = _code_summary(code)
    payload = {**info, "code": code.to_json()}
    _emit(args, payload, f"{info['label']} (|C| = {info['size']})")
    return 0


def cmd_mpc_dual(args):
    spec = _mpc_spec(args.spec)
    results = {}
    if args.method in ("formula", "both"):
        results["formula"] = dual_mpc(spec)
    if args.method in ("brute", "both"):
        results["brute"] = dual(build(spec))
    payload = {k: _code_summary(v) for k, v in results.items()}
    lines = [f"{k}: {v['label']}" for k, v in payload.items()]
    status = 0
    if args.method == "both":
        same = results["formula"] == results["brute"]
        payload["agree"] = same
        lines.append(f"formula and brute force agree: {same}")
        status = 0 if same else 1
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_mpc_bounds(args):
    spec = _mpc_spec(args.spec)
    weight = WeightTable.from_json(spec.ring, _load(args.weight)) if args.weight else None
    fwd = SfrrProfile.from_json(_load(args.forward), spec.m) if args.forward else None
    rev = SfrrProfile.from_json(_load(args.reverse), spec.m) if args.reverse else None
    rep = bound_report(spec, weight, fwd, rev, args.mprime, compute_true=not args.no_true)
    _emit(args, rep.to_json(), rep.table())
    return 0 if rep.verified_sandwich in (None, True) else 1


def cmd_search(args):
    ring = make_ring(spec_from_json(_load(args.ring)), config.limits.max_ring_order)
    found = search(ring, args.rows, args.cols, args.pred, workers=config.limits.workers, up_to_block_basis=args.up_to_block_basis)
    payload = {"ring": spec_name(ring.spec), "count": len(found), "matrices": [m.to_literals() for m in found]}
    text = [f"{len(found)} matrices"] + [m.pretty() + "\n" for m in found]
    _emit(args, payload, "\n".join(text).rstrip())
    return 0


def cmd_repro(args):
    rep = run_repro(args.example)
    _emit(args, rep.to_json(), rep.render())
    return 0 if rep.passed else 1


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mpcodes", description="Matrix-product codes over finite commutative Frobenius rings.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--workers", type=int, default=1, help="worker processes for search")
    p.add_argument("--cap-codewords", type=int, default=config.Limits.max_codewords)
    p.add_argument("--cap-search", type=int, default=config.Limits.max_search)
    p.add_argument("--cap-ring-order", type=int, default=config.Limits.max_ring_order)
    p.add_argument("--cap-pairs", type=int, default=config.Limits.max_pairs)
    sub = p.add_subparsers(dest="group", required=True)

    ring = sub.add_parser("ring").add_subparsers(dest="cmd", required=True)
    r = ring.add_parser("info")
    r.add_argument("spec")
    r.set_defaults(func=cmd_ring_info)

    mat = sub.add_parser("matrix").add_subparsers(dest="cmd", required=True)
    r = mat.add_parser("check")
    r.add_argument("matrix")
    r.add_argument("--pred", required=True, help="frr|nsc|rnsc|qo|sfrr=<profile.json>|two-way=<m'>|po=<m'>")
    r.set_defaults(func=cmd_matrix_check)
    r = mat.add_parser("cert")
    r.add_argument("matrix")
    r.set_defaults(func=cmd_matrix_cert)

    code = sub.add_parser("code").add_subparsers(dest="cmd", required=True)
    r = code.add_parser("params")
    r.add_argument("code")
    r.add_argument("--weight")
    r.set_defaults(func=cmd_code_params)
    r = code.add_parser("dual")
    r.add_argument("code")
    r.set_defaults(func=cmd_code_dual)

    mpc = sub.add_parser("mpc").add_subparsers(dest="cmd", required=True)
    r = mpc.add_parser("build")
    r.add_argument("spec")
    r.set_defaults(func=cmd_mpc_build)
    r = mpc.add_parser("dual")
    r.add_argument("spec")
    r.add_argument("--method", choices=("formula", "brute", "both"), default="formula")
    r.set_defaults(func=cmd_mpc_dual)
    r = mpc.add_parser("bounds")
    r.add_argument("spec")
    r.add_argument("--forward", help="forward profile JSON (default: largest found)")
    r.add_argument("--reverse", help="reverse profile JSON (default: largest found)")
    r.add_argument("--mprime", type=int, help="split point for the two-way bounds (default: detected from the codes)")
    r.add_argument("--weight", help="weight table JSON for the row-code bounds")
    r.add_argument("--no-true", action="store_true", help="skip enumerating the true distance")
    r.set_defaults(func=cmd_mpc_bounds)

    r = sub.add_parser("search")
    r.add_argument("--ring", required=True)
    r.add_argument("--rows", type=int, required=True)
    r.add_argument("--cols", type=int, required=True)
    r.add_argument("--pred", required=True, help="two-way=<m'>|two_way_sfrr{m'}|qo|nsc")
    r.add_argument("--up-to-block-basis", action="store_true", help="merge two-way matrices with the same block row codes")
    r.set_defaults(func=cmd_search)

    r = sub.add_parser("repro")
    r.add_argument("example", choices=sorted(EXAMPLES))
    r.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = replace(config.limits)
    config.limits.max_codewords = args.cap_codewords
    config.limits.max_search = args.cap_search
    config.limits.max_ring_order = args.cap_ring_order
    config.limits.max_pairs = args.cap_pairs
    config.limits.workers = args.workers
    try:
        return args.func(args)
    except (InputError, SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MpcError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    finally:
        config.limits.__dict__.update(saved.__dict__)


if __name__ == "__main__":
    sys.exit(main())
