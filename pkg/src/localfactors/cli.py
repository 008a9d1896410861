"""Batch command line: one self-describing JSON document per invocation.

By default the document is executed in-process; with --server it is POSTed to
a running service instead, so the CLI is a thin client over the same wire
format either way.  Exit codes: 0 success, 1 computation or assertion
failure, 2 document/usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import pydantic

from .errors import ConsistencyError, LocalFactorsError
from .service.runner import run, validation_error_details


def _load_document(path: str | None) -> dict:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _emit(payload: dict, pretty: bool) -> None:
    print(json.dumps(payload, indent=2 if pretty else None, sort_keys=True))


def _post(server: str, command: str, document: dict) -> tuple[int, dict]:
    import httpx

    path = "/" + command.replace(".", "/")
    response = httpx.post(server.rstrip("/") + path, json=document, timeout=600.0)
    return response.status_code, response.json()


def _execute(command: str, document: dict, args) -> int:
    if args.server:
        status, payload = _post(args.server, command, document)
        _emit(payload, args.pretty)
        if status != 200:
            return 2 if payload.get("error", {}).get("kind") != "consistency" else 1
        return 0
    try:
        out = run(command, document)
    except pydantic.ValidationError as exc:
        _emit({"ok": False, "error": {"kind": "schema",
                                      "locations": validation_error_details(exc)}}, args.pretty)
        return 2
    except ConsistencyError as exc:
        _emit({"ok": False, "error": {"kind": "consistency", "message": str(exc)}}, args.pretty)
        return 1
    except LocalFactorsError as exc:
        _emit({"ok": False, "error": {"kind": "usage", "message": str(exc)}}, args.pretty)
        return 2
    _emit({"ok": True, **out}, args.pretty)
    if command == "selftest" and not out.get("all_passed", False):
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=None,
                        help="POST to a running service instead of running in-process")
    common.add_argument("--pretty", action="store_true", help="indent JSON output")

    parser = argparse.ArgumentParser(
        prog="localfactors",
        description="Exact twisted square local factors: batch CLI and service client",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_doc(p, eval_opt=True):
        p.add_argument("--doc", help="JSON document path, or - for stdin")
        if eval_opt:
            p.add_argument("--eval", dest="eval_point", metavar="s=a+bi",
                           help="also evaluate outputs numerically at s")

    factor = sub.add_parser("factor", help="compute a factor triple", parents=[common])
    fsub = factor.add_subparsers(dest="kind", required=True)
    for kind in ("tate", "twisted", "rs", "artin"):
        with_doc(fsub.add_parser(kind, parents=[common]))

    with_doc(sub.add_parser("plancherel", help="normalized Plancherel density",
                            parents=[common]))

    root = sub.add_parser("rootdatum", help="dump GSpin root datum data", parents=[common])
    with_doc(root, eval_opt=False)
    root.add_argument("--n", type=int, help="rank (alternative to --doc)")
    root.add_argument("--parity", choices=["odd", "even"])

    with_doc(sub.add_parser("transfer-check", help="close-local-fields transfer",
                            parents=[common]), eval_opt=False)

    stab = sub.add_parser("stability-demo", help="stability under highly ramified twists",
                          parents=[common])
    with_doc(stab, eval_opt=False)
    stab.add_argument("--scan-threshold", action="store_true",
                      help="scan eta conductors and report the minimal working one")

    self_test = sub.add_parser("selftest", help="run the acceptance suite", parents=[common])
    self_test.add_argument("--criteria", type=int, nargs="*", help="criterion numbers")

    serve = sub.add_parser("serve", help="run the HTTP service", parents=[common])
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8723)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    if args.command == "selftest":
        doc = {"criteria": args.criteria} if args.criteria else {}
        code = _execute("selftest", doc, args)
        return code

    if args.command == "rootdatum":
        if args.n is not None and args.parity is not None:
            doc = {"n": args.n, "parity": args.parity}
        else:
            doc = _load_document(args.doc)
        return _execute("rootdatum", doc, args)

    if args.command == "factor":
        command = f"factor.{args.kind}"
    else:
        command = args.command

    doc = _load_document(args.doc)
    if getattr(args, "eval_point", None):
        doc["eval"] = args.eval_point
    if getattr(args, "scan_threshold", False):
        doc["scan_threshold"] = True
    return _execute(command, doc, args)


if __name__ == "__main__":
    sys.exit(main())
