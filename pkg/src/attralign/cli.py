"""Command-line client for the alignment service.

Every subcommand speaks HTTP to the service API.  Without --server the app
is mounted in-process (no socket, no separate process), so batch usage works
out of the box; with --server the same requests go to a remote instance.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx


def _request(args, method: str, path: str, payload=None) -> dict:
    async def go():
        if args.server:
            transport = None
            base = args.server.rstrip("/")
        else:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            base = "http://attralign.local"
        async with httpx.AsyncClient(transport=transport, base_url=base, timeout=None) as client:
            resp = await client.request(method, path, json=payload)
            if resp.status_code >= 400:
                try:
                    detail = resp.json().get("detail", resp.text)
                except Exception:
                    detail = resp.text
                raise SystemExit(f"error: {detail}")
            return resp.json()

    return asyncio.run(go())


def _params_payload(args) -> dict:
    return {
        "n": args.n,
        "m": args.m,
        "p": args.p,
        "q": args.q,
        "s_u": args.su,
        "s_a": args.sa,
    }


def _add_param_flags(sub):
    sub.add_argument("--n", type=int, required=True, help="user count")
    sub.add_argument("--m", type=int, required=True, help="attribute count")
    sub.add_argument("--p", type=float, required=True, help="user-user edge probability")
    sub.add_argument("--q", type=float, required=True, help="user-attribute edge probability")
    sub.add_argument("--su", type=float, required=True, help="user-user subsampling probability")
    sub.add_argument("--sa", type=float, required=True, help="user-attribute subsampling probability")


def cmd_classify(args):
    payload = {"params": _params_payload(args), "epsilon": args.epsilon, "tau": args.tau}
    data = _request(args, "POST", "/classify", payload)
    print(json.dumps(data, indent=2))


def cmd_generate(args):
    payload = {"params": _params_payload(args), "seed": args.seed, "identity": args.identity}
    data = _request(args, "POST", "/generate", payload)
    prefix = Path(args.out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    written = []
    for key, suffix in (("g1", "g1.edges"), ("g2", "g2.edges"), ("g2_anon", "g2_anon.edges"), ("permutation", "perm.txt")):
        path = Path(f"{prefix}.{suffix}")
        path.write_text(data[key])
        written.append(str(path))
    print("\n".join(written))


def cmd_align(args):
    overrides = {k: getattr(args, k) for k in ("x", "y", "z", "l", "eta", "delta_x", "delta_y")}
    payload = {
        "params": _params_payload(args),
        "algo": args.algo,
        "seed": args.seed,
        "epsilon": args.epsilon,
        "tau": args.tau,
        "overrides": {k: v for k, v in overrides.items() if v is not None},
        "identity": args.identity,
        "include_c_matrix": args.dump_c is not None,
    }
    data = _request(args, "POST", "/align", payload)
    if args.dump_c is not None:
        rows = data.pop("c_matrix") or []
        Path(args.dump_c).write_text("\n".join(",".join(str(v) for v in row) for row in rows) + "\n")
    else:
        data.pop("c_matrix", None)
    print(json.dumps(data, indent=2))


def cmd_align_seeded(args):
    payload = {
        "N": args.N,
        "alpha": args.alpha,
        "p": args.p,
        "s": args.s,
        "d": args.d,
        "seed": args.seed,
        "epsilon": args.epsilon,
        "tau": args.tau,
    }
    data = _request(args, "POST", "/align/seeded", payload)
    print(json.dumps(data, indent=2))


def cmd_sweep(args):
    from .harness import parse_sweep_config

    try:
        config = parse_sweep_config(Path(args.config).read_text())
    except (OSError, ValueError) as exc:
        raise SystemExit(f"error: {exc}")
    payload = {
        "n": list(config.n),
        "m": list(config.m),
        "p": list(config.p),
        "q": list(config.q),
        "s_u": list(config.s_u),
        "s_a": list(config.s_a),
        "algos": list(config.algos),
        "trials": config.trials,
        "seed": config.seed,
        "epsilon": config.epsilon,
        "tau": config.tau,
        "overrides": {
            k: v
            for k, v in vars(config.overrides).items()
            if v is not None
        },
        "workers": args.workers,
    }
    data = _request(args, "POST", "/sweep", payload)
    Path(args.out).write_text(data["csv"])
    print(f"wrote {args.out}: {data['cells']} cells x {data['trials_per_cell']} trials")


def cmd_serve(args):
    import uvicorn

    uvicorn.run("attralign.service:app", host=args.host, port=args.port)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="attralign", description=__doc__)
    parser.add_argument("--server", default=None, help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="print the feasibility-region flags for one parameter point")
    _add_param_flags(c)
    c.add_argument("--epsilon", type=float, required=True)
    c.add_argument("--tau", type=float, required=True)
    c.set_defaults(func=cmd_classify)

    g = sub.add_parser("generate", help="sample one graph pair and dump edge lists + permutation")
    _add_param_flags(g)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--identity", action="store_true", help="pin the hidden permutation to the identity")
    g.add_argument("--out-prefix", default="instance", help="output path prefix")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("align", help="run one alignment trial and print the record")
    _add_param_flags(a)
    a.add_argument("--algo", choices=["attr_rich", "attr_sparse"], required=True)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--epsilon", type=float, required=True)
    a.add_argument("--tau", type=float, required=True)
    a.add_argument("--x", type=float, default=None, help="override the step-1 threshold of attr_rich")
    a.add_argument("--y", type=float, default=None, help="override the step-2 threshold of attr_rich")
    a.add_argument("--z", type=float, default=None, help="override the anchor threshold of attr_sparse")
    a.add_argument("--l", type=int, default=None, help="override the sparse-routine depth")
    a.add_argument("--eta", type=float, default=None, help="override the sparse-routine promotion fraction")
    a.add_argument("--delta-x", dest="delta_x", type=float, default=None)
    a.add_argument("--delta-y", dest="delta_y", type=float, default=None)
    a.add_argument("--identity", action="store_true")
    a.add_argument("--dump-c", default=None, help="write the full common-count matrix to this CSV path")
    a.set_defaults(func=cmd_align)

    s = sub.add_parser("align-seeded", help="run the seeded-specialization comparison trial")
    s.add_argument("--N", type=int, required=True, help="total vertex count")
    s.add_argument("--alpha", type=float, required=True, help="seed fraction")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--s", type=float, required=True)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon", type=float, default=0.1)
    s.add_argument("--tau", type=float, default=0.5)
    s.set_defaults(func=cmd_align_seeded)

    w = sub.add_parser("sweep", help="run a Monte Carlo sweep from a config file")
    w.add_argument("--config", required=True, help="flat key-value sweep config")
    w.add_argument("--out", required=True, help="output CSV path")
    w.add_argument("--workers", type=int, default=1)
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("serve", help="run the HTTP service")
    v.add_argument("--host", default="127.0.0.1")
    v.add_argument("--port", type=int, default=8000)
    v.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    args.func(args)


if __name__ == "__main__":
    main(sys.argv[1:])
