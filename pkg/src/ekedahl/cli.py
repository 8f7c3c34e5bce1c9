"""Command line interface.

    ekedahl group show <group>
    ekedahl bogomolov <group>
    ekedahl ekedahl <group> --degree i [--resolution file] [--assume-gl3]
    ekedahl kring <expr> [--prec t] [--tables dir]
    ekedahl hcoh <expr> --k k [--prec t] [--tables dir]
    ekedahl solve-window --sums file --n n

``<group>`` is a group file (group-table-v1 / group-perms-v1) or a catalog
spec such as ``symmetric(4)``.  Exit codes: 0 ok, 2 usage, 3 invalid input
or unevaluable request, 4 order cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .cache import ResultCache, cache_key
from .cohomology import DEFAULT_ORDER_CAP, bogomolov_multiplier, h2_units
from .errors import CapError, EkedahlError
from .groups import FiniteGroup, maximal_abelian_subgroups, parse_group_spec
from .invariants import (
    Provenance,
    catalog_lookup,
    ekedahl_invariant,
    load_resolution,
    solve_from_projective_sums,
)
from .io import parse_group_file, parse_window_sums
from .parser import parse_kring_expr, symbols_from_tables
from .varieties import h_k

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_CAP = 0, 2, 3, 4


@dataclass
class CommandRequest:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    output: str = "text"
    cap: int = DEFAULT_ORDER_CAP
    use_cache: bool = True
    cache_dir: str | None = None


def load_group(arg: str) -> FiniteGroup:
    if Path(arg).exists():
        return parse_group_file(arg)
    return parse_group_spec(arg)


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p if isinstance(p, bytes) else str(p).encode())
        h.update(b"\0")
    return h.hexdigest()


def _tables_digest(directory) -> str:
    if not directory:
        return ""
    return _digest(*(p.name.encode() + p.read_bytes()
                     for p in sorted(Path(directory).glob("*.json"))))


# ----------------------------------------------------------------- handlers
# Each returns (fingerprint, compute) so the cache can be consulted before
# the expensive part runs.  compute() returns (result, provenance).


def _group_show(req):
    G = load_group(req.inputs["group"])

    def compute():
        cert = catalog_lookup(G)
        result = {
            "order": G.order,
            "abelian": G.is_abelian,
            "exponent": G.exponent(),
            "fingerprint": G.fingerprint,
            "maximal_abelian_subgroups": sorted(A.order for A in maximal_abelian_subgroups(G)),
        }
        prov = {"constructor": repr(G), "catalog": cert.item if cert else None}
        return result, prov

    return G.fingerprint, compute


def _bogomolov(req):
    G = load_group(req.inputs["group"])

    def compute():
        h2 = h2_units(G, cap=req.cap)
        b0 = bogomolov_multiplier(G, cap=req.cap)
        prov = {
            "route": Provenance.BOGOMOLOV_COROLLARY.value,
            "h2": str(h2.abelian),
            "abelian_subgroups_checked": len(maximal_abelian_subgroups(G)) if h2.orders else 0,
            "fingerprint": G.fingerprint,
        }
        return str(b0), prov

    return G.fingerprint, compute


def _ekedahl(req):
    G = load_group(req.inputs["group"])
    res_path = req.inputs.get("resolution")
    data = load_resolution(res_path) if res_path else None
    fp = _digest(G.fingerprint, json.dumps(data.to_json(), sort_keys=True) if data else "")

    def compute():
        r = ekedahl_invariant(G, req.inputs["degree"], data,
                              assume_gl3=req.inputs.get("assume_gl3", False), cap=req.cap)
        out = r.to_json()
        value = out.pop("value")
        if value is None:
            value = "unknown"
        return value, out

    return fp, compute


def _symbols(req):
    return symbols_from_tables(req.inputs["tables"]) if req.inputs.get("tables") else {}


def _kring(req):
    fp = _digest(req.inputs["expr"], req.inputs.get("prec"), _tables_digest(req.inputs.get("tables")))

    def compute():
        x = parse_kring_expr(req.inputs["expr"], req.inputs.get("prec"), _symbols(req))
        return str(x), {"precision": None if x.is_exact else int(x.precision),
                        "fil_degree": _jsonable_degree(x.fil_degree())}

    return fp, compute


def _hcoh(req):
    fp = _digest(req.inputs["expr"], req.inputs.get("prec"), req.inputs["k"],
                 _tables_digest(req.inputs.get("tables")))

    def compute():
        x = parse_kring_expr(req.inputs["expr"], req.inputs.get("prec"), _symbols(req))
        return str(h_k(x, req.inputs["k"])), {"element": str(x), "k": req.inputs["k"]}

    return fp, compute


def _solve_window(req):
    sums = parse_window_sums(req.inputs["sums"])
    n = req.inputs["n"]
    fp = _digest(json.dumps({str(k): str(v) for k, v in sorted(sums.items())}), n)

    def compute():
        e = solve_from_projective_sums(sums, n)
        return {str(i): str(v) for i, v in e.items()}, {"route": Provenance.WINDOW_SOLVER.value, "n": n}

    return fp, compute


def _jsonable_degree(d):
    return None if d == float("-inf") else int(d)


HANDLERS = {
    "group show": _group_show,
    "bogomolov": _bogomolov,
    "ekedahl": _ekedahl,
    "kring": _kring,
    "hcoh": _hcoh,
    "solve-window": _solve_window,
}


def _render_text(subcommand, result, provenance) -> str:
    if subcommand == "group show":
        return "\n".join(f"{k}: {v}" for k, v in result.items())
    if subcommand == "solve-window":
        return "\n".join(f"e_{i} = {v}" for i, v in result.items())
    if subcommand == "ekedahl" and provenance.get("provenance"):
        return f"{result}    [{provenance['provenance']}]"
    return str(result)


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, CapError):
        return EXIT_CAP
    return EXIT_INVALID


def run_command(req: CommandRequest) -> tuple[int, str]:
    """Execute a request; returns ``(exit status, rendered output)``."""
    t0 = time.perf_counter()
    try:
        handler = HANDLERS.get(req.subcommand)
        if handler is None:
            raise ValueError(f"unknown subcommand {req.subcommand!r}")
        fingerprint, compute = handler(req)
        args = {k: v for k, v in sorted(req.inputs.items())
                if k not in ("group", "resolution", "sums", "tables")}
        args["cap"] = req.cap
        key = cache_key(fingerprint, req.subcommand, args, __version__)
        cache = ResultCache(req.cache_dir) if req.use_cache else None
        cached = cache.get(key) if cache else None
        if cached is not None:
            result, provenance, status = cached["result"], cached["provenance"], "hit"
        else:
            result, provenance = compute()
            status = "miss" if cache else "off"
            if cache:
                cache.put(key, {"result": result, "provenance": provenance})
    except (EkedahlError, ValueError, OSError) as exc:
        code = _exit_code(exc)
        if req.output == "json":
            return code, json.dumps({"error": {"type": type(exc).__name__, "message": str(exc),
                                               "exit_code": code},
                                     "version": __version__}, sort_keys=True)
        return code, f"error ({type(exc).__name__}): {exc}"
    if req.output == "json":
        return EXIT_OK, json.dumps({
            "result": result,
            "provenance": provenance,
            "timings": {"total_s": round(time.perf_counter() - t0, 6), "cache": status},
            "version": __version__,
        }, sort_keys=True)
    return EXIT_OK, _render_text(req.subcommand, result, provenance)


# ------------------------------------------------------------------- argparse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_ORDER_CAP,
                        help="largest group order the cohomology pipeline accepts")
    common.add_argument("--no-cache", action="store_true")

    parser = argparse.ArgumentParser(
        prog="ekedahl",
        description="Bogomolov multipliers, Ekedahl invariants and Grothendieck ring arithmetic.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="inspect a group")
    gsub = grp.add_subparsers(dest="action", required=True)
    show = gsub.add_parser("show", parents=[common])
    show.add_argument("group")

    p = sub.add_parser("bogomolov", parents=[common], help="Bogomolov multiplier B0(G)")
    p.add_argument("group")

    p = sub.add_parser("ekedahl", parents=[common], help="Ekedahl invariant e_i(G)")
    p.add_argument("group")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--resolution")
    p.add_argument("--assume-gl3", action="store_true",
                   help="assert that G embeds in GL_3(C)")

    p = sub.add_parser("kring", parents=[common], help="evaluate a ring expression")
    p.add_argument("expr")
    p.add_argument("--prec", type=int)
    p.add_argument("--tables")

    p = sub.add_parser("hcoh", parents=[common], help="H^k of a ring expression")
    p.add_argument("expr")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prec", type=int)
    p.add_argument("--tables")

    p = sub.add_parser("solve-window", parents=[common], help="solve window sums for e_i")
    p.add_argument("--sums", required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


def request_from_args(ns: argparse.Namespace) -> CommandRequest:
    if ns.command == "group":
        name, inputs = "group show", {"group": ns.group}
    elif ns.command in ("bogomolov",):
        name, inputs = ns.command, {"group": ns.group}
    elif ns.command == "ekedahl":
        name, inputs = "ekedahl", {"group": ns.group, "degree": ns.degree,
                                   "resolution": ns.resolution, "assume_gl3": ns.assume_gl3}
    elif ns.command in ("kring", "hcoh"):
        name, inputs = ns.command, {"expr": ns.expr, "prec": ns.prec, "tables": ns.tables}
        if ns.command == "hcoh":
            inputs["k"] = ns.k
    else:
        name, inputs = "solve-window", {"sums": ns.sums, "n": ns.n}
    return CommandRequest(name, inputs, ns.output, ns.cap, not ns.no_cache)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    code, text = run_command(request_from_args(ns))
    print(text, file=sys.stdout if code == EXIT_OK or ns.output == "json" else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
