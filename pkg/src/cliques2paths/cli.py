"""Command-line client for the solver service.

By default each invocation talks to an in-process copy of the service
(no sockets involved); pass ``--server http://host:port`` to target a
running deployment instead. Exit codes: 0 feasible/valid, 1
infeasible/invalid, 2 usage or IO error, 3 input-invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import httpx


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app())


def _post(client, path: str, payload: dict) -> dict:
    try:
        resp = client.post(path, json=payload)
    except httpx.HTTPError as err:
        raise _Failure(2, f"request failed: {err}") from err
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        raise _Failure(2, f"HTTP {resp.status_code}") from None
    kind = body.get("kind", "error")
    message = body.get("message", "")
    if resp.status_code == 422:
        raise _Failure(3, f"{kind}: {message}")
    if kind == "InvalidSolution":
        raise _Failure(1, f"{kind}: {message}")
    raise _Failure(2, f"{kind}: {message}")


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_assignment(values: list[bool]) -> str:
    return " ".join(f"x{i + 1}={'T' if v else 'F'}" for i, v in enumerate(values))


def _cmd_solve(args, client) -> int:
    body = _post(client, "/solve", {"instance": _read(args.instance), "algorithm": args.algorithm})
    for warning in body["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"{body['status']} ({body['algorithm']})")
    if body["status"] != "feasible":
        return 1
    _emit(body["solution"], args.out)
    return 0


def _cmd_verify(args, client) -> int:
    body = _post(client, "/verify", {"instance": _read(args.instance), "solution": _read(args.solution)})
    if body["valid"]:
        print("valid")
        return 0
    print("invalid")
    for v in body["violations"]:
        where = f" part {v['part']}" if v["part"] is not None else ""
        edges = f" edges {tuple(v['edges'])}" if v["edges"] else ""
        print(f"  {v['kind']}{where}{edges}")
    return 1


def _stats_line(stats: dict) -> str:
    three_plane = "yes" if stats["max_crossings_per_edge"] <= 3 else "no"
    return (
        f"parts={stats['parts']} crossings={stats['crossings']} "
        f"max-crossings-per-edge={stats['max_crossings_per_edge']} "
        f"3-plane: {three_plane}"
    )


def _cmd_reduce(args, client) -> int:
    body = _post(client, "/reduce", {"formula": _read(args.formula), "chain_len": args.chain_len})
    print(_stats_line(body["stats"]))
    _emit(body["instance"], args.out)
    if args.witness:
        Path(args.witness).write_text(body["witness"])
    return 0


def _cmd_extract(args, client) -> int:
    body = _post(
        client,
        "/extract",
        {"instance": _read(args.instance), "witness": _read(args.witness), "solution": _read(args.solution)},
    )
    print(_fmt_assignment(body["assignment"]))
    return 0


def _cmd_oracle(args, client) -> int:
    body = _post(client, "/oracle", {"formula": _read(args.formula)})
    if not body["satisfiable"]:
        print("unsatisfiable")
        return 1
    print(_fmt_assignment(body["assignment"]))
    return 0


def _cmd_stats(args, client) -> int:
    s = _post(client, "/stats", {"instance": _read(args.instance)})
    print(
        f"n={s['n']} edges={s['edges']} crossings={s['crossings']} "
        f"h={s['h']} max-crossings-per-edge={s['max_crossings_per_edge']}"
    )
    print("part-sizes: " + " ".join(map(str, s["part_sizes"])))
    print(f"link-link-crossing: {'yes' if s['link_link_crossing'] else 'no'}")
    return 0


def _cmd_gen_instance(args, client) -> int:
    body = _post(
        client,
        "/generate/instance",
        {
            "seed": args.seed,
            "parts": args.parts,
            "size_min": args.size_min,
            "size_max": args.size_max,
            "density": args.density,
            "cap": args.cap,
            "links": args.links,
            "realizable": args.realizable,
        },
    )
    _emit(body["instance"], args.out)
    return 0


def _cmd_gen_formula(args, client) -> int:
    body = _post(
        client,
        "/generate/formula",
        {"seed": args.seed, "nvars": args.nvars, "nclauses": args.nclauses},
    )
    _emit(body["formula"], args.out)
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="c2p", description=__doc__)
    parser.add_argument("--server", help="URL of a running service; default is in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance and emit a solution")
    p.add_argument("instance")
    p.add_argument("--algorithm", choices=["exact", "2sat", "1plane", "auto"], default="auto")
    p.add_argument("--out", help="solution file (default: stdout)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reduce", help="compile a formula into an instance")
    p.add_argument("formula")
    p.add_argument("--chain-len", type=int, default=1)
    p.add_argument("--out", help="instance file (default: stdout)")
    p.add_argument("--witness", help="witness file")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("extract", help="read a truth assignment off a solution")
    p.add_argument("instance")
    p.add_argument("witness")
    p.add_argument("solution")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("oracle", help="brute-force a formula")
    p.add_argument("formula")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("stats", help="summarize an instance file")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_stats)

    gen = sub.add_parser("gen", help="seeded random artifacts")
    gensub = gen.add_subparsers(dest="what", required=True)

    p = gensub.add_parser("instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parts", type=int, default=4)
    p.add_argument("--size-min", type=int, default=2)
    p.add_argument("--size-max", type=int, default=4)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--links", type=int, default=0)
    p.add_argument("--realizable", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen_instance)

    p = gensub.add_parser("formula")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nvars", type=int, default=3)
    p.add_argument("--nclauses", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen_formula)

    return parser


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    try:
        with _client(args.server) as client:
            return args.func(args, client)
    except _Failure as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
