"""Command-line surface. One binary, subcommands, flags only.

Exit codes are a stable contract: 0 colorable/pass, 1 not-colorable/fail,
2 refusal (input not pattern-free), 3 input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import Coloring, OrderedGraph, contains_pattern
from .errors import CapExceededError, InputError, PreconditionError, RefusalError
from .gadgets import (
    GadgetOutput,
    gen_bipartite,
    gen_h1,
    gen_h2,
    gen_h3,
    gen_h4,
    gen_h5,
    verify_gadget,
)
from .io import (
    parse_instance,
    parse_nae,
    parse_provenance,
    serialize_instance,
    serialize_provenance,
)
from .j16 import solve_j16
from .jw import solve_jw
from .kernels import solve_chordal, solve_two_lists
from .oracle import DEFAULT_CAP, solve_bruteforce
from .patterns import build_pattern, classify, parse_pattern_id
from . import rand

EXIT_YES = 0
EXIT_NO = 1
EXIT_REFUSED = 2
EXIT_INPUT_ERROR = 3


@dataclass
class RunReport:
    command: str
    verdict: str
    fields: list = field(default_factory=list)
    witness: Optional[Coloring] = None
    exit_code: int = EXIT_YES

    def add(self, key: str, value):
        self.fields.append((key, str(value)))

    def text(self) -> str:
        lines = [f"command {self.command}", f"verdict {self.verdict}"]
        for k, v in self.fields:
            lines.append(f"{k} {v}")
        if self.witness is not None:
            body = " ".join(
                f"{v}={c}" for v, c in sorted(self.witness.items(), key=lambda kv: str(kv[0]))
            )
            lines.append(f"witness {body}")
        return "\n".join(lines) + "\n"

    def json_dict(self) -> dict:
        out = {"command": self.command, "verdict": self.verdict}
        out.update({k: v for k, v in self.fields})
        if self.witness is not None:
            out["witness"] = {str(v): c for v, c in self.witness.items()}
        return out


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def cmd_solve(args) -> RunReport:
    report = RunReport("solve", "error")
    report.add("alg", args.alg)
    _, inst = parse_instance(_read(args.file))
    start = time.perf_counter()
    if args.alg == "oracle":
        witness = solve_bruteforce(inst, cap=args.cap)
    elif args.alg == "2sat":
        witness = solve_two_lists(inst)
    elif args.alg == "chordal":
        witness = solve_chordal(inst)
    elif args.alg == "jw":
        witness = solve_jw(inst, args.w, backend=args.backend)
        report.add("w", args.w)
    elif args.alg == "j16":
        witness = solve_j16(inst, args.k, args.l, reverse=args.reversed)
        report.add("k", args.k)
        report.add("l", args.l)
    else:
        raise InputError(f"unknown algorithm {args.alg!r}")
    report.add("time_ms", round(1000 * (time.perf_counter() - start), 2))
    if witness is None:
        report.verdict = "not-colorable"
        report.exit_code = EXIT_NO
    else:
        if not witness.validates(inst):
            raise AssertionError("witness failed revalidation against the raw instance")
        report.verdict = "colorable"
        report.witness = witness
        report.exit_code = EXIT_YES
    return report


def _load_pattern(ident: str) -> OrderedGraph:
    try:
        return build_pattern(parse_pattern_id(ident))
    except InputError:
        pass
    if Path(ident).exists():
        _, inst = parse_instance(_read(ident))
        return inst.graph
    raise InputError(f"{ident!r} is neither a pattern id nor a readable file")


def cmd_check_free(args) -> RunReport:
    report = RunReport("check-free", "error")
    report.add("pattern", args.pattern)
    pattern = _load_pattern(args.pattern)
    _, inst = parse_instance(_read(args.file))
    witness = contains_pattern(inst.graph, pattern)
    if witness is None:
        report.verdict = "free"
        report.exit_code = EXIT_YES
    else:
        report.verdict = "contains"
        report.add("embedding", " ".join(sorted(map(str, witness))))
        report.exit_code = EXIT_NO
    return report


def cmd_classify(args) -> RunReport:
    report = RunReport("classify", "classified")
    _, inst = parse_instance(_read(args.file))
    verdict = classify(inst.graph)
    report.add("status", verdict.status)
    report.add("justification", verdict.justification)
    report.exit_code = EXIT_YES
    return report


_GEN_ORDERS = {
    "h1": ("t1", "t2", "t3"),
    "h2": ("t4",),
    "h3": ("t5", "t6"),
    "h4": ("t7",),
    "h5": ("t8",),
    "bip": ("t5", None),
}


def cmd_gen(args) -> RunReport:
    report = RunReport("gen", "generated")
    allowed = _GEN_ORDERS[args.gadget]
    order = args.order
    if order is None and len([o for o in allowed if o]) == 1:
        order = allowed[0]
    if order not in allowed:
        raise InputError(
            f"gadget {args.gadget} supports orders {[o for o in allowed if o]}, got {order!r}"
        )
    if args.gadget in ("h1", "h2"):
        nae = parse_nae(_read(args.input))
        out = gen_h1(nae, order) if args.gadget == "h1" else gen_h2(nae)
    else:
        _, src = parse_instance(_read(args.input))
        if args.gadget == "bip":
            out = gen_bipartite(src)
        elif args.gadget == "h3":
            out = gen_h3(src.graph, order)
        elif args.gadget == "h4":
            out = gen_h4(src.graph)
        else:
            out = gen_h5(src.graph)
    prefix = args.out or f"{args.gadget}-out"
    og_path = Path(f"{prefix}.og")
    prov_path = Path(f"{prefix}.prov")
    og_path.write_text(serialize_instance(f"{args.gadget}-{order}", out.instance), encoding="utf-8")
    meta = {"gadget": (args.gadget,), "free": tuple(out.advertised_free)}
    if order:
        meta["order"] = (order,)
    prov_path.write_text(serialize_provenance(out.provenance, meta), encoding="utf-8")
    report.add("gadget", args.gadget)
    if order:
        report.add("order", order)
    report.add("vertices", out.instance.graph.n)
    report.add("edges", len(out.instance.graph.edges))
    report.add("graph_file", og_path)
    report.add("prov_file", prov_path)
    report.exit_code = EXIT_YES
    return report


_W_ROLE = re.compile(r"^w_(\d+)\((.*),(.*),(\d+)\)$")
_X_ROLE = re.compile(r"^x_(\d+)\^(\d+)\((.*),(.*),(\d+)\)$")
_Z3_ROLE = re.compile(r"^z_(\d+)\((.*),(.*),(\d+)\)$")
_Z4_ROLE = re.compile(r"^z_(\d+)$")


def _reconstruct_registry(graph: OrderedGraph, roles: dict) -> dict:
    """Rebuild branch paths from role tags: group each branch's vertices,
    then walk the unique simple path from one endpoint to the other."""
    side_vertices: dict = {}
    closing_extra: dict = {}
    closers: dict = {}
    originals = {vid for vid, role in roles.items() if role.startswith("orig_")}
    for vid, role in roles.items():
        m = _W_ROLE.match(role)
        if m:
            i, a, b, j = int(m.group(1)), m.group(2), m.group(3), int(m.group(4))
            side_vertices.setdefault((a, b, j), []).append(vid)
            if i == j:
                closers[j] = (a, b)
            continue
        m = _X_ROLE.match(role)
        if m:
            a, b, j = m.group(3), m.group(4), int(m.group(5))
            side_vertices.setdefault((a, b, j), []).append(vid)
            continue
        m = _Z3_ROLE.match(role)
        if m:
            level = int(m.group(1))
            closing_extra.setdefault(level, []).append(vid)
            continue
        m = _Z4_ROLE.match(role)
        if m:
            closing_extra.setdefault(int(m.group(1)), []).append(vid)
    registry = {}
    for level, (a, b) in sorted(closers.items()):
        u, v = sorted((a, b), key=graph.rank)
        branch = (level - 1) % 3 + 1
        members = set(side_vertices.get((u, v, level), []))
        members |= set(side_vertices.get((v, u, level), []))
        members |= set(closing_extra.get(level, []))
        members |= {u, v}
        path = _walk_path(graph, members, u, v)
        if path is None:
            raise InputError(f"cannot reconstruct branch path for level {level}")
        registry[((u, v), branch)] = tuple(path)
    return registry


def _walk_path(graph: OrderedGraph, members: set, start, goal):
    path = [start]
    seen = {start}
    current = start
    while current != goal:
        nxt = [
            x for x in graph.neighbors(current) if x in members and x not in seen
        ]
        if len(nxt) != 1:
            return None
        current = nxt[0]
        seen.add(current)
        path.append(current)
    return path


def cmd_verify(args) -> RunReport:
    report = RunReport("verify", "error")
    _, inst = parse_instance(_read(args.file))
    roles, meta = parse_provenance(_read(args.prov))
    advertised = meta.get("free", ())
    gadget = meta.get("gadget", ("",))[0]
    registry = {}
    if gadget in ("h3", "h4", "h5"):
        registry = _reconstruct_registry(inst.graph, roles)
    source = None
    source_kind = ""
    if args.source:
        if gadget in ("h1", "h2"):
            source = parse_nae(_read(args.source))
            source_kind = "nae"
        elif gadget in ("h3", "h4", "h5"):
            _, src_inst = parse_instance(_read(args.source))
            source = src_inst.graph
            source_kind = "graph"
        else:
            _, src_inst = parse_instance(_read(args.source))
            source = src_inst
            source_kind = "instance"
    out = GadgetOutput(
        instance=inst,
        provenance=roles,
        advertised_free=tuple(advertised),
        path_registry=registry,
        source_kind=source_kind,
        source=source,
    )
    result = verify_gadget(out, oracle_cap=args.cap)
    for name, ok, detail in result.entries:
        report.add(f"check:{name}", ("pass" if ok else "fail") + (f" {detail}" if detail else ""))
    report.verdict = "verified" if result.passed else "verify-failed"
    report.exit_code = EXIT_YES if result.passed else EXIT_NO
    return report


def cmd_random_instance(args) -> RunReport:
    report = RunReport("random-instance", "generated")
    rng = rand.make_rng(args.seed)
    if args.pattern:
        pattern = _load_pattern(args.pattern)
        inst = rand.random_pattern_free_instance(
            rng, pattern, args.n, args.edge_prob, args.full_bias
        )
    else:
        inst = rand.random_instance(rng, args.n, args.edge_prob, args.full_bias)
    text = serialize_instance(f"random-{args.seed}", inst)
    sys.stdout.write(text)
    report.add("n", inst.graph.n)
    report.add("edges", len(inst.graph.edges))
    report.exit_code = EXIT_YES
    return report


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="oglc",
        description="Decision procedures for list-3-coloring of ordered graphs.",
    )
    top.add_argument("--json", action="store_true", help="also print a JSON report")
    sub = top.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="decide list-3-colorability of an instance file")
    p.add_argument("file")
    p.add_argument("--alg", required=True, choices=["oracle", "2sat", "chordal", "jw", "j16"])
    p.add_argument("--w", type=int, default=1)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--reversed", action="store_true", help="solve the mirrored pattern family")
    p.add_argument("--backend", choices=["link-reduction", "link-enum"], default="link-reduction")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle size cap")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check-free", help="test whether a file avoids a pattern")
    p.add_argument("pattern", help="pattern id (J9, M5, Jw:3, J16:2,1, neg:M5) or pattern file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_free)

    p = sub.add_parser("classify", help="complexity verdict for a forbidden pattern file")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gen", help="generate a hardness gadget")
    p.add_argument("input", help="NAE file (h1, h2) or graph file (h3, h4, h5, bip)")
    p.add_argument("--gadget", required=True, choices=["h1", "h2", "h3", "h4", "h5", "bip"])
    p.add_argument("--order", choices=[f"t{i}" for i in range(1, 9)])
    p.add_argument("--out", help="output path prefix")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="re-check a generated gadget from its files")
    p.add_argument("file", help="ordered-graph file")
    p.add_argument("--prov", required=True, help="provenance sidecar")
    p.add_argument("--source", help="original NAE/graph file for equi-satisfiability")
    p.add_argument("--cap", type=int, default=4000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random-instance", help="emit a reproducible random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--full-bias", type=float, default=0.5)
    p.add_argument("--pattern", help="rejection-sample until free of this pattern id")
    p.set_defaults(func=cmd_random_instance)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except RefusalError as exc:
        report = RunReport(args.cmd, "refused", exit_code=EXIT_REFUSED)
        report.add("pattern", exc.pattern)
        report.add("pattern-witness", " ".join(sorted(map(str, exc.witness))))
    except (InputError, PreconditionError, CapExceededError) as exc:
        report = RunReport(args.cmd, "input-error", exit_code=EXIT_INPUT_ERROR)
        report.add("error", str(exc))
    sys.stdout.write(report.text())
    if args.json:
        sys.stdout.write(json.dumps(report.json_dict(), sort_keys=True) + "\n")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
