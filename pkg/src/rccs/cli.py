"""Command-line client for the service.

Each subcommand assembles a JSON request and sends it to the HTTP service:
by default to an in-process instance (no server needed), or to a remote one
via ``--server``.  Responses are rendered as deterministic text or, with
``--json``, as machine-readable JSON with sorted keys.

Exit codes: 0 verdict true / construction succeeded, 1 clean run with a
false verdict, 2 domain error, 3 parse or input error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from fractions import Fraction

import httpx

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_DOMAIN = 2
EXIT_PARSE = 3

_PARSE_ERROR_KINDS = {"SpaceFormatError", "UnknownEvent"}


class ServiceClient:
    """Minimal HTTP client; in-process ASGI transport unless a server is given."""

    def __init__(self, server: str | None = None):
        self.server = server

    def request(self, method: str, path: str, payload: dict | None = None):
        async def _go():
            if self.server:
                client = httpx.AsyncClient(base_url=self.server, timeout=600)
            else:
                from .service.app import app as service_app

                client = httpx.AsyncClient(
                    transport=httpx.ASGITransport(app=service_app),
                    base_url="http://rccs.local",
                    timeout=600,
                )
            async with client:
                response = await client.request(method, path, json=payload)
                return response.status_code, response.json()

        return asyncio.run(_go())


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_space_payload(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    if not isinstance(payload, dict) or "atoms" not in payload:
        raise ValueError(f"{path} does not look like a space file (no 'atoms' key)")
    return {"atoms": payload["atoms"], "events": payload.get("events", {})}


def _pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise ValueError(f"expected --pair NAME,NAME, got {text!r}")
    return parts[0], parts[1]


def _names(text: str) -> list[str]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or not all(parts):
        raise ValueError(f"expected a comma-separated name list, got {text!r}")
    return parts


def _rat(value: str, decimal: bool) -> str:
    if not decimal:
        return value
    num, _, den = value.partition("/")
    try:
        approx = float(Fraction(int(num), int(den or "1")))
    except (ValueError, ZeroDivisionError):
        return value
    return f"{value} (~{approx:.6g})"


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _default_schedule(args) -> dict:
    max_retries = args.max_retries
    if max_retries is None:
        max_retries = int(os.environ.get("RCCS_MAX_RETRIES", "64"))
    return {"epsilon": args.epsilon, "shrink": args.shrink, "max_retries": max_retries}


def _handle_error(status: int, body: dict) -> int:
    error = (body or {}).get("error")
    if error is None:
        # pydantic validation errors arrive as {"detail": [...]} with status 422
        detail = (body or {}).get("detail", body)
        print(f"error: invalid request ({detail})", file=sys.stderr)
        return EXIT_PARSE
    kind, detail = error.get("kind", "RccsError"), error.get("detail", "")
    print(f"error: {kind}: {detail}", file=sys.stderr)
    return EXIT_PARSE if kind in _PARSE_ERROR_KINDS else EXIT_DOMAIN


# --- subcommand runners -------------------------------------------------------


def _run_verify(args, client: ServiceClient) -> int:
    space = _load_space_payload(args.space)
    a, b = _pair(args.pair)
    if args.kind == "fork":
        if not args.cause:
            raise ValueError("verify fork needs --cause NAME")
        payload = {"space": space, "a": a, "b": b, "cause": args.cause}
        status, body = client.request("POST", "/verify/fork", payload)
    else:
        if not args.partition:
            raise ValueError("verify rccs needs --partition NAME,NAME,...")
        payload = {"space": space, "a": a, "b": b, "partition": _names(args.partition)}
        status, body = client.request("POST", "/verify/rccs", payload)
    if status != 200:
        return _handle_error(status, body)
    if args.json:
        _emit_json(body)
    else:
        report = body["report"]
        print(f"kind: {args.kind}")
        for name, ok in sorted(report["conditions"].items()):
            print(f"  {name}: {'ok' if ok else 'FAIL'}")
        if args.kind == "fork":
            for name, value in report["residuals"].items():
                print(f"  {name} = {_rat(value, args.decimal)}")
        else:
            residuals = ", ".join(
                "undefined" if r is None else _rat(r, args.decimal)
                for r in report["screening_residuals"]
            )
            print(f"  screening residuals: {residuals}")
        print(f"verdict: {body['verdict']}")
    return EXIT_OK if body["verdict"] else EXIT_FALSE


def _run_construct(args, client: ServiceClient) -> int:
    payload = {
        "target": {"a": args.a, "b": args.b, "pAB": args.pab},
        "n": args.n,
        "mode": args.mode,
        "schedule": _default_schedule(args),
    }
    status, body = client.request("POST", "/construct", payload)
    if status != 200:
        return _handle_error(status, body)
    if args.json:
        _emit_json(body)
    else:
        star = body["set"]
        print(f"admissible-star set of size {star['n']} (mode {args.mode})")
        for key in ("c", "a", "b", "d"):
            print(f"  {key} = [{', '.join(_rat(v, args.decimal) for v in star[key])}]")
        print(f"  joint_sum = {_rat(body['report']['joint_sum'], args.decimal)}"
              f" (matches target: {body['report']['joint_matches_target']})")
        print(f"checker verdict: {body['verdict']}")
    return EXIT_OK if body["verdict"] else EXIT_FALSE


def _run_extend(args, client: ServiceClient) -> int:
    space = _load_space_payload(args.space)
    a, b = _pair(args.pair)
    payload = {
        "space": space,
        "a": a,
        "b": b,
        "n": args.n,
        "mode": args.mode,
        "schedule": _default_schedule(args),
    }
    status, body = client.request("POST", "/extend", payload)
    if status != 200:
        return _handle_error(status, body)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(body["extension"], handle, sort_keys=True, indent=2)
            handle.write("\n")
    if args.json:
        _emit_json(body)
    else:
        atoms = len(body["extension"]["atoms"])
        print(f"extension with {atoms} atoms carrying a size-{args.n} system")
        print(f"  system verdict: {body['system_report']['verdict']}")
        hom = body["homomorphism_report"]
        print(
            f"  embedding verdict: {hom['verdict']} "
            f"({hom['events_checked']} events checked, exhaustive={hom['exhaustive']})"
        )
        if args.out:
            print(f"  wrote {args.out}")
    return EXIT_OK if body["verdict"] else EXIT_FALSE


def _run_counterexample(args, client: ServiceClient) -> int:
    status, body = client.request("GET", "/counterexample")
    if status != 200:
        return _handle_error(status, body)
    if args.json:
        _emit_json(body)
        return EXIT_OK
    diagnosis = body["diagnosis"]
    print("two-cell cancellation configuration (8 atoms)")
    for i, cell in enumerate(body["partition"], start=1):
        print(f"  C{i} = {{{', '.join(cell)}}}")
    defects = ", ".join(_rat(v, args.decimal) for v in diagnosis["cell_defects"])
    residuals = ", ".join(_rat(v, args.decimal) for v in diagnosis["residuals"])
    print(f"  per-cell screening residuals: {residuals}")
    print(f"  mass-weighted defect terms: {defects}")
    print(f"  defect total: {_rat(diagnosis['total'], args.decimal)}")
    print(f"  legacy admissible conditions pass: {diagnosis['admissible_verdict']}")
    print(f"  screening holds in every cell: {diagnosis['screening_verdict']}")
    print(f"conclusion: {body['conclusion']}")
    return EXIT_OK


def _run_diagnose(args, client: ServiceClient) -> int:
    space = _load_space_payload(args.space)
    x, y = _pair(args.pair)
    payload = {"space": space, "x": x, "y": y, "partition": _names(args.partition)}
    status, body = client.request("POST", "/diagnose", payload)
    if status != 200:
        return _handle_error(status, body)
    if args.json:
        _emit_json(body)
    else:
        report = body["report"]
        print(f"cell defects: {', '.join(_rat(v, args.decimal) for v in report['cell_defects'])}")
        print(f"defect total: {_rat(report['total'], args.decimal)}")
        print(f"admissible verdict: {report['admissible_verdict']}")
        print(f"screening verdict: {report['screening_verdict']}")
    return EXIT_OK if body["verdict"] else EXIT_FALSE


def _run_oracle_search(args, client: ServiceClient) -> int:
    space = _load_space_payload(args.space)
    a, b = _pair(args.pair)
    payload = {
        "space": space,
        "a": a,
        "b": b,
        "n": args.n,
        "budget": {
            "max_atoms": args.max_atoms,
            "max_partition_size": args.max_partition_size,
            "max_partitions": args.max_partitions,
        },
    }
    status, body = client.request("POST", "/oracle/search", payload)
    if status != 200:
        return _handle_error(status, body)
    if args.json:
        _emit_json(body)
    else:
        print(f"examined {body['examined']} candidate partitions of size {args.n}")
        print(f"found {body['count']} system(s)")
        for cells in body["systems"]:
            print("  " + " | ".join("{" + ", ".join(cell) + "}" for cell in cells))
        print(f"oracle agrees with verifier: {body['agreement_with_verifier']}")
    return EXIT_OK if body["agreement_with_verifier"] else EXIT_FALSE


def _run_identities(args, client: ServiceClient) -> int:
    space = _load_space_payload(args.space)
    x, y = _pair(args.pair)
    payload: dict = {"space": space, "x": x, "y": y}
    if args.partition:
        payload["partition"] = _names(args.partition)
    else:
        payload["seed"] = args.seed
        payload["samples"] = args.samples
    status, body = client.request("POST", "/identities", payload)
    if status != 200:
        return _handle_error(status, body)
    if args.json:
        _emit_json(body)
    else:
        for check in body["checks"]:
            print(
                f"cells={len(check['cells'])}: covariance {_rat(check['pair_covariance'], args.decimal)}"
                f" = comonotone {_rat(check['comonotone_sum'], args.decimal)}"
                f" + defect {_rat(check['defect_sum'], args.decimal)}"
                f" -> {'ok' if check['identity_holds'] else 'FAIL'}"
            )
        print(f"all identities hold: {body['all_hold']}")
        print(f"note: {body['note']}")
    return EXIT_OK if body["all_hold"] else EXIT_FALSE


def _run_serve(args, _client: ServiceClient) -> int:
    import uvicorn

    uvicorn.run("rccs.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def _add_common_flags(parser: argparse.ArgumentParser, top: bool) -> None:
    # On subparsers the flags default to SUPPRESS so a value parsed at the top
    # level is not clobbered; this lets them appear on either side of the command.
    default = {"server": None, "flag": False} if top else None
    parser.add_argument(
        "--server",
        default=default["server"] if top else argparse.SUPPRESS,
        help="base URL of a running service (default: in-process)",
    )
    parser.add_argument(
        "--json",
        action="store_true",
        default=default["flag"] if top else argparse.SUPPRESS,
        help="emit machine-readable JSON",
    )
    parser.add_argument(
        "--decimal",
        action="store_true",
        default=default["flag"] if top else argparse.SUPPRESS,
        help="add approximate decimals next to exact values (non-authoritative)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rccs",
        description="Verify, diagnose, construct and embed common cause systems "
        "over exact finite probability spaces.",
    )
    _add_common_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="verify a fork or a common cause system")
    verify.add_argument("kind", choices=("fork", "rccs"))
    verify.add_argument("--space", required=True, help="space JSON file")
    verify.add_argument("--pair", required=True, help="A,B event names")
    verify.add_argument("--cause", help="cause event name (fork)")
    verify.add_argument("--partition", help="comma-separated cell names (rccs)")
    verify.set_defaults(run=_run_verify)

    construct = sub.add_parser("construct", help="construct an admissible-star set")
    construct.add_argument("--a", required=True, help="target p(A), e.g. 1/2")
    construct.add_argument("--b", required=True, help="target p(B)")
    construct.add_argument("--pab", required=True, help="target p(A and B)")
    construct.add_argument("--n", type=int, required=True, help="system size (>= 2)")
    construct.add_argument("--mode", choices=("literal", "realizable"), default="realizable")
    construct.add_argument("--epsilon", default="1/64")
    construct.add_argument("--shrink", default="1/2")
    construct.add_argument("--max-retries", type=int, default=None)
    construct.set_defaults(run=_run_construct)

    extend = sub.add_parser("extend", help="embed a size-n system into an extension")
    extend.add_argument("--space", required=True)
    extend.add_argument("--pair", required=True)
    extend.add_argument("--n", type=int, required=True)
    extend.add_argument("--mode", choices=("literal", "realizable"), default="realizable")
    extend.add_argument("--epsilon", default="1/64")
    extend.add_argument("--shrink", default="1/2")
    extend.add_argument("--max-retries", type=int, default=None)
    extend.add_argument("--out", help="write the extension space JSON here")
    extend.set_defaults(run=_run_extend)

    counter = sub.add_parser(
        "counterexample", help="rebuild the bundled cancellation configuration"
    )
    counter.set_defaults(run=_run_counterexample)

    diagnose = sub.add_parser("diagnose", help="per-cell dependence defects of a partition")
    diagnose.add_argument("--space", required=True)
    diagnose.add_argument("--pair", required=True)
    diagnose.add_argument("--partition", required=True)
    diagnose.set_defaults(run=_run_diagnose)

    search = sub.add_parser("oracle-search", help="brute-force enumeration of systems")
    search.add_argument("--space", required=True)
    search.add_argument("--pair", required=True)
    search.add_argument("--n", type=int, required=True)
    search.add_argument("--max-atoms", type=int, default=10)
    search.add_argument("--max-partition-size", type=int, default=5)
    search.add_argument("--max-partitions", type=int, default=200_000)
    search.set_defaults(run=_run_oracle_search)

    identities = sub.add_parser("identities", help="check the covariance decomposition")
    identities.add_argument("--space", required=True)
    identities.add_argument("--pair", required=True)
    identities.add_argument("--partition", help="check one named partition")
    identities.add_argument("--seed", type=int, default=0, help="seed for random sweeps")
    identities.add_argument("--samples", type=int, default=20)
    identities.set_defaults(run=_run_identities)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(run=_run_serve)

    for command in sub.choices.values():
        _add_common_flags(command, top=False)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    client = ServiceClient(args.server)
    try:
        return args.run(args, client)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        return _fail(str(exc), EXIT_PARSE)
    except httpx.HTTPError as exc:
        return _fail(f"service unreachable: {exc}", EXIT_DOMAIN)


if __name__ == "__main__":
    sys.exit(main())
