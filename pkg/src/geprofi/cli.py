"""Command-line front end.  Every command reads and writes JSON.

Exit status: 0 on success, 1 when the answer is negative (a certificate
fails verification, no certificate is found, a reproduce row fails), 2 on
malformed input or a violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import certify as K
from . import constructions as C
from .errors import GeprofiError, PreconditionError
from .field import DEFAULT_BOUND, QQ, RandomSource, parse_field
from .ideals import hilbert, weddle_excess, wlp_cokernel
from .projgeom import PointConfig, ProjPoint, random_point
from .reproduce import SUITES, reproduce

FORMAT_VERSION = 1
COMMANDS = ("construct", "hvector", "lgp", "certify", "verify", "weddle", "wlp", "census", "reproduce")
KINDS = ("example_3_2", "concurrent_lines", "hypergrid", "grid_extension", "rnc_points",
         "rational_curve", "trivial_planes_lines", "liaison_ff", "random_lgp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geprofi", description="Full-intersection certificates for point sets in P^4.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--kind", choices=KINDS, help="construction kind (construct)")
    p.add_argument("--mode", choices=("b2", "cone", "curve"), help="certifier (certify)")
    p.add_argument("--suite", choices=SUITES, default="paper_all", help="reproduce suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="Q", help="Q or Fp:<prime>")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="sampling bound for random integers")
    p.add_argument("--retries", type=int, default=K.DEFAULT_RETRIES)
    p.add_argument("--b", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--params", help="kind-specific parameters as inline JSON")
    p.add_argument("--in", dest="input", help="input document: a path, '-' for stdin, or inline JSON")
    p.add_argument("--out", help="output path (default: stdout)")
    return p


def _load(source: str | None) -> dict:
    if source is None:
        raise PreconditionError("this command needs --in")
    if source == "-":
        text, where = sys.stdin.read(), "<stdin>"
    elif source.lstrip().startswith(("{", "[")):
        text, where = source, "<inline>"
    else:
        path = Path(source)
        if not path.exists():
            raise PreconditionError(f"no such input file: {source}")
        text, where = path.read_text(), source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"malformed JSON in {where}: {exc.msg} at line {exc.lineno} column {exc.colno} (char {exc.pos})") from exc


def _config_of(doc: dict) -> PointConfig:
    """Accept a bare configuration or the output of ``construct``."""
    if isinstance(doc, dict) and "result" in doc and isinstance(doc["result"], dict):
        doc = doc["result"]
    if isinstance(doc, dict) and "config" in doc:
        doc = doc["config"]
    if not isinstance(doc, dict):
        raise PreconditionError("expected a point configuration document")
    return PointConfig.from_json(doc)


def _record_of(doc: dict, field) -> C.ConstructionRecord | None:
    res = doc.get("result", doc) if isinstance(doc, dict) else None
    if not isinstance(res, dict) or not res.get("record"):
        return None
    try:
        return C.ConstructionRecord.from_json(res["record"], field)
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed construction record: {exc}") from exc


def _params(args) -> dict:
    if not args.params:
        return {}
    try:
        val = json.loads(args.params)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"malformed JSON in --params: {exc.msg} at line {exc.lineno} column {exc.colno} (char {exc.pos})") from exc
    if not isinstance(val, dict):
        raise PreconditionError("--params must be a JSON object")
    return val


def _hinfo(cfg: PointConfig) -> dict:
    h = hilbert(cfg)
    return {"hilbert_function": list(h.sizes), "h_vector": list(h.h_vector), "symmetric": h.is_symmetric()}


def cmd_construct(args, rs, field):
    if args.kind is None:
        raise PreconditionError("construct needs --kind")
    params = _params(args)
    for key in ("b", "d"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.kind == "random_lgp":
        cfg, rec = C.random_lgp(int(params.get("count", 10)), rs, field), None
    else:
        if field != QQ and args.kind != "liaison_ff":
            raise PreconditionError(f"{args.kind} is built over Q; use --field Q")
        cfg, rec = C.build(args.kind, params, rs)
    if cfg is None:
        return 1, {"config": None, "record": rec.to_json(), "note": "oracle search incomplete; retry with another seed"}
    result = {"config": cfg.to_json(), "record": rec.to_json() if rec else None, **_hinfo(cfg)}
    return 0, result


def cmd_hvector(args, rs, field):
    return 0, _hinfo(_config_of(_load(args.input)))


def cmd_lgp(args, rs, field):
    res = K.is_lgp(_config_of(_load(args.input)))
    return 0, {"lgp": res.ok, "witness": list(res.witness) if res.witness else None}


def cmd_certify(args, rs, field):
    doc = _load(args.input)
    cfg = _config_of(doc)
    mode = args.mode or "b2"
    log: list[str] = []
    if mode == "b2":
        cert = K.certify_b2(cfg, rs, args.retries, log=log)
    else:
        rec = _record_of(doc, cfg.field)
        if rec is None:
            raise PreconditionError(f"--mode {mode} needs the construction record (use the output of construct)")
        if mode == "cone":
            cert = K.certify_cone_construction(cfg, rec, rs, args.retries, log=log)
        else:
            if rec.curve is None:
                raise PreconditionError("--mode curve needs a construction with a parametrized curve")
            d = args.d if args.d is not None else len(cfg) // rec.curve.degree
            cert = K.certify_on_curve(rec.curve, rec.curve_params, d, rs, args.retries, log=log)
    if cert is None:
        return 1, {"certificate": None, "notes": log}
    return 0, {"certificate": cert.to_json(), "notes": log}


def cmd_verify(args, rs, field):
    doc = _load(args.input)
    if isinstance(doc, dict) and isinstance(doc.get("result"), dict) and "certificate" in doc["result"]:
        doc = doc["result"]["certificate"]
    if not isinstance(doc, dict):
        raise PreconditionError("expected a certificate document")
    try:
        cert = K.GeprofiCertificate.from_json(doc)
    except PreconditionError as exc:
        return 1, {"verified": False, "failed_check": "well-formed", "detail": str(exc), "transcript": []}
    res = K.verify_certificate(cert)
    out = {"verified": res.ok, "failed_check": res.failed, "detail": res.detail, "transcript": res.transcript}
    return (0 if res.ok else 1), out


def _point_arg(params, cfg, rs):
    if "point" in params:
        return ProjPoint(params["point"], cfg.field)
    return random_point(rs, cfg.ambient_dim, cfg.field)


def cmd_weddle(args, rs, field):
    cfg = _config_of(_load(args.input))
    params = _params(args)
    pt = _point_arg(params, cfg, rs)
    d = args.d if args.d is not None else 2
    return 0, {"point": pt.to_json(), "d": d, "weddle_excess": weddle_excess(cfg, pt, d)}


def cmd_wlp(args, rs, field):
    cfg = _config_of(_load(args.input))
    pt = _point_arg(_params(args), cfg, rs)
    return 0, {"point": pt.to_json(), "wlp_cokernel": wlp_cokernel(cfg, pt)}


def cmd_census(args, rs, field):
    cfg = _config_of(_load(args.input))
    if args.b is None or args.d is None:
        raise PreconditionError("census needs --b and --d")
    return 0, K.triviality_census(cfg, args.b, args.d).to_json()


def cmd_reproduce(args, rs, field):
    rows = reproduce(args.suite, args.seed)
    table = [r.to_json() for r in rows]
    passed = sum(r.passed for r in rows)
    return (0 if passed == len(rows) else 1), {"suite": args.suite, "passed": passed, "total": len(rows), "rows": table}


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def run(argv: list[str] | None = None) -> tuple[int, dict, str | None]:
    """Parse and dispatch; returns exit status, output document and output path."""
    t0 = time.perf_counter()
    argv = sys.argv[1:] if argv is None else list(argv)
    doc: dict = {"format_version": FORMAT_VERSION}
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        doc["error"] = f"usage: {exc}"
        return 2, doc, None
    doc.update({"command": args.command, "argv": argv, "seed": args.seed})
    try:
        field = parse_field(args.field)
        doc["field"] = field.tag()
        if args.bound < 1:
            raise PreconditionError("--bound must be positive")
        if args.retries < 1:
            raise PreconditionError("--retries must be positive")
        rs = RandomSource(args.seed, args.bound)
        status, result = HANDLERS[args.command](args, rs, field)
        doc["result"] = result
    except (GeprofiError, ValueError, TypeError, KeyError) as exc:
        status = 2
        doc["error"] = f"{type(exc).__name__}: {exc}" if not isinstance(exc, GeprofiError) else str(exc)
    doc["seconds"] = round(time.perf_counter() - t0, 4)
    return status, doc, args.out


def main(argv: list[str] | None = None) -> int:
    status, doc, out = run(argv)
    text = json.dumps(doc, indent=2)
    if out and status != 2:
        Path(out).write_text(text + "\n")
    else:
        print(text, file=sys.stderr if status == 2 else sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
