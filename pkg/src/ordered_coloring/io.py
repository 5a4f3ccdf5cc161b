"""Text formats: ordered graphs with lists (one record per line), monotone
NAE3SAT instances, and provenance sidecars. Parsing is strict; every error
carries the offending line number."""

from __future__ import annotations

from fractions import Fraction

from .core import Instance, ListAssignment, OrderedGraph
from .errors import InputError
from .oracle import NaeInstance


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_position_token(token: str, lineno: int = 0) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"line {lineno}: bad position {token!r}") from None


def format_position(p: Fraction) -> str:
    return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"


def parse_instance(text: str) -> tuple[str, Instance]:
    """Parse the ordered-graph format: `ograph <name>` header, `vtx <id>
    <pos>`, `edg <id> <id>`, optional `lst <id> <digits>` ("0" means the
    empty list; missing lines default to all three colors)."""
    name = ""
    saw_header = False
    positions: dict = {}
    pos_owner: dict = {}
    edges: list = []
    edge_seen: set = set()
    lists: dict = {}
    for lineno, parts in _lines(text):
        kind = parts[0]
        if kind == "ograph":
            if saw_header:
                raise InputError(f"line {lineno}: duplicate header")
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected `ograph <name>`")
            name = parts[1]
            saw_header = True
        elif kind == "vtx":
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected `vtx <id> <pos>`")
            vid = parts[1]
            if vid in positions:
                raise InputError(f"line {lineno}: duplicate vertex {vid!r}")
            p = parse_position_token(parts[2], lineno)
            if p in pos_owner:
                raise InputError(
                    f"line {lineno}: position {parts[2]} already used by {pos_owner[p]!r}"
                )
            positions[vid] = p
            pos_owner[p] = vid
        elif kind == "edg":
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected `edg <id> <id>`")
            u, v = parts[1], parts[2]
            for x in (u, v):
                if x not in positions:
                    raise InputError(f"line {lineno}: unknown vertex {x!r}")
            if u == v:
                raise InputError(f"line {lineno}: self-loop at {u!r}")
            key = frozenset((u, v))
            if key in edge_seen:
                raise InputError(f"line {lineno}: duplicate edge {u!r} {v!r}")
            edge_seen.add(key)
            edges.append((u, v))
        elif kind == "lst":
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected `lst <id> <digits>`")
            vid, digits = parts[1], parts[2]
            if vid not in positions:
                raise InputError(f"line {lineno}: unknown vertex {vid!r}")
            if vid in lists:
                raise InputError(f"line {lineno}: duplicate list for {vid!r}")
            if digits == "0":
                lists[vid] = frozenset()
            else:
                seen = set()
                for ch in digits:
                    if ch not in "123" or ch in seen:
                        raise InputError(f"line {lineno}: bad list digits {digits!r}")
                    seen.add(ch)
                lists[vid] = frozenset(int(ch) for ch in digits)
        else:
            raise InputError(f"line {lineno}: unknown record {kind!r}")
    graph = OrderedGraph(positions.items(), edges)
    full = {v: lists.get(v, frozenset((1, 2, 3))) for v in positions}
    return name, Instance(graph, ListAssignment(full))


def serialize_instance(name: str, inst: Instance) -> str:
    g = inst.graph
    out = [f"ograph {name}"]
    for v in g.vertices:
        out.append(f"vtx {v} {format_position(g.position(v))}")
    for u, v in sorted(
        (tuple(sorted(e, key=g.rank)) for e in g.edges),
        key=lambda e: (g.rank(e[0]), g.rank(e[1])),
    ):
        out.append(f"edg {u} {v}")
    for v in g.vertices:
        cs = inst.lists.get(v)
        if cs != frozenset((1, 2, 3)):
            digits = "".join(str(c) for c in sorted(cs)) or "0"
            out.append(f"lst {v} {digits}")
    return "\n".join(out) + "\n"


def parse_nae(text: str) -> NaeInstance:
    num_vars = None
    clauses = []
    for lineno, parts in _lines(text):
        kind = parts[0]
        if kind == "nae":
            if num_vars is not None:
                raise InputError(f"line {lineno}: duplicate `nae` header")
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected `nae <num_vars>`")
            try:
                num_vars = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad variable count {parts[1]!r}") from None
        elif kind == "cls":
            if num_vars is None:
                raise InputError(f"line {lineno}: `cls` before `nae` header")
            if len(parts) != 4:
                raise InputError(f"line {lineno}: expected `cls <a> <b> <c>`")
            try:
                clause = tuple(int(x) for x in parts[1:])
            except ValueError:
                raise InputError(f"line {lineno}: bad clause {parts[1:]}") from None
            clauses.append(clause)
        else:
            raise InputError(f"line {lineno}: unknown record {kind!r}")
    if num_vars is None:
        raise InputError("missing `nae <num_vars>` header")
    try:
        return NaeInstance(num_vars, clauses)
    except InputError as exc:
        raise InputError(str(exc)) from None


def serialize_nae(inst: NaeInstance) -> str:
    out = [f"nae {inst.num_vars}"]
    for clause in inst.clauses:
        out.append("cls " + " ".join(str(x) for x in clause))
    return "\n".join(out) + "\n"


def parse_provenance(text: str) -> tuple[dict, dict]:
    """Parse a provenance sidecar into (roles, meta). Meta lines carry the
    generator name, ordering, and advertised pattern list."""
    roles: dict = {}
    meta: dict = {}
    for lineno, parts in _lines(text):
        kind = parts[0]
        if kind == "prov":
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected `prov <vertex-id> <role>`")
            if parts[1] in roles:
                raise InputError(f"line {lineno}: duplicate provenance for {parts[1]!r}")
            roles[parts[1]] = parts[2]
        elif kind == "meta":
            if len(parts) < 3:
                raise InputError(f"line {lineno}: expected `meta <key> <values...>`")
            meta[parts[1]] = tuple(parts[2:])
        else:
            raise InputError(f"line {lineno}: unknown record {kind!r}")
    return roles, meta


def serialize_provenance(roles: dict, meta: dict) -> str:
    out = []
    for key in sorted(meta):
        out.append(f"meta {key} " + " ".join(str(x) for x in meta[key]))
    for vid in sorted(roles, key=str):
        out.append(f"prov {vid} {roles[vid]}")
    return "\n".join(out) + "\n"
