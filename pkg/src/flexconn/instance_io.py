"""Instance file format, JSON alternative, and the random generator.

Text format, one directive per line, `#` starts a comment:

    fgc 1
    p 1
    q 1
    nodes 2
    edge 0 1 S 5
    edge 0 1 U 1

Vertex indices are 0-based; the safety flag is S or U; costs are
nonnegative decimals.  Edge ids are assigned in file order.  Files ending
in .json carry the same data as a JSON object.
"""

from __future__ import annotations

import json
import math
import random
from pathlib import Path

from .errors import FieldRangeError, GenerationError, ParseError
from .graph import Multigraph
from .model import FgcInstance, is_feasible, validate_instance

HEADER = "fgc"
VERSION = 1

# attempts at sampling a connected multigraph / repairing feasibility
MAX_SAMPLING_ATTEMPTS = 1000
MAX_AUGMENTATIONS = 1000


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line) from None


def _parse_cost(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"cost must be a number, got {token!r}", line) from None
    if not math.isfinite(value):
        raise FieldRangeError(f"cost must be finite, got {token!r}", line)
    if value < 0:
        raise FieldRangeError(f"cost must be nonnegative, got {token!r}", line)
    return value


def parse_instance(text: str) -> FgcInstance:
    """Parse and fully validate an instance from the text format.

    Raises ParseError (with a 1-based line number) for malformed syntax,
    FieldRangeError for out-of-range fields, GraphStructureError for a bad
    graph, and InvalidInstanceError when the full edge set is infeasible.
    """
    header_seen = False
    params: dict[str, int] = {}
    edges: list[tuple[int, int, int]] = []
    safety: list[bool] = []
    costs: list[float] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        if not header_seen:
            if key != HEADER:
                raise ParseError(f"expected header '{HEADER} {VERSION}', got {key!r}", line_no)
            if len(tokens) != 2:
                raise ParseError("header must be exactly 'fgc <version>'", line_no)
            if _parse_int(tokens[1], "format version", line_no) != VERSION:
                raise ParseError(f"unsupported format version {tokens[1]}", line_no)
            header_seen = True
            continue
        if key in ("p", "q", "nodes"):
            if len(tokens) != 2:
                raise ParseError(f"'{key}' takes exactly one value", line_no)
            if key in params:
                raise ParseError(f"duplicate '{key}' line", line_no)
            params[key] = _parse_int(tokens[1], key, line_no)
        elif key == "edge":
            if len(tokens) != 5:
                raise ParseError("'edge' takes <u> <v> <S|U> <cost>", line_no)
            u = _parse_int(tokens[1], "endpoint", line_no)
            v = _parse_int(tokens[2], "endpoint", line_no)
            if tokens[3] not in ("S", "U"):
                raise ParseError(f"safety flag must be S or U, got {tokens[3]!r}", line_no)
            edges.append((u, v, line_no))
            safety.append(tokens[3] == "S")
            costs.append(_parse_cost(tokens[4], line_no))
        else:
            raise ParseError(f"unknown directive {key!r}", line_no)

    if not header_seen:
        raise ParseError(f"missing header '{HEADER} {VERSION}'")
    for key in ("p", "q", "nodes"):
        if key not in params:
            raise ParseError(f"missing '{key}' line")
    n = params["nodes"]
    if n < 2:
        raise FieldRangeError(f"nodes must be at least 2, got {n}")
    for u, v, line_no in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise FieldRangeError(f"endpoint out of range 0..{n - 1}", line_no)

    graph = Multigraph(n, tuple((u, v) for u, v, _ in edges))
    inst = FgcInstance(graph, tuple(safety), tuple(costs), params["p"], params["q"])
    validate_instance(inst)
    return inst


def _format_cost(c: float) -> str:
    if c == int(c) and abs(c) < 1e15:
        return str(int(c))
    return repr(c)


def serialize_instance(inst: FgcInstance) -> str:
    """Canonical text form; parse(serialize(inst)) reproduces the instance."""
    lines = [f"{HEADER} {VERSION}", f"p {inst.p}", f"q {inst.q}", f"nodes {inst.n}"]
    for e, (u, v) in enumerate(inst.graph.edges):
        flag = "S" if inst.safe[e] else "U"
        lines.append(f"edge {u} {v} {flag} {_format_cost(inst.cost[e])}")
    return "\n".join(lines) + "\n"


def instance_to_json(inst: FgcInstance) -> dict:
    return {
        "format": HEADER,
        "version": VERSION,
        "p": inst.p,
        "q": inst.q,
        "nodes": inst.n,
        "edges": [
            [u, v, "S" if inst.safe[e] else "U", inst.cost[e]]
            for e, (u, v) in enumerate(inst.graph.edges)
        ],
    }


def instance_from_json(obj: dict) -> FgcInstance:
    try:
        if obj.get("format") != HEADER or obj.get("version") != VERSION:
            raise ParseError("not a fgc/1 JSON object")
        n = int(obj["nodes"])
        raw_edges = obj["edges"]
        endpoints = []
        safety = []
        costs = []
        for u, v, flag, cost in raw_edges:
            if flag not in ("S", "U"):
                raise ParseError(f"safety flag must be S or U, got {flag!r}")
            endpoints.append((int(u), int(v)))
            safety.append(flag == "S")
            costs.append(float(cost))
        p, q = int(obj["p"]), int(obj["q"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed JSON instance: {exc}") from None
    if n < 2:
        raise FieldRangeError(f"nodes must be at least 2, got {n}")
    for u, v in endpoints:
        if not (0 <= u < n and 0 <= v < n):
            raise FieldRangeError(f"endpoint out of range 0..{n - 1}")
    for c in costs:
        if not math.isfinite(c) or c < 0:
            raise FieldRangeError(f"cost must be finite and nonnegative, got {c}")
    inst = FgcInstance(Multigraph(n, tuple(endpoints)), tuple(safety), tuple(costs), p, q)
    validate_instance(inst)
    return inst


def load_instance(path: str | Path) -> FgcInstance:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", exc.lineno) from None
        return instance_from_json(obj)
    return parse_instance(text)


def save_instance(inst: FgcInstance, path: str | Path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(instance_to_json(inst), indent=2) + "\n")
    else:
        path.write_text(serialize_instance(inst))


def _connected(n: int, edges: list[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        parent[find(u)] = find(v)
    root = find(0)
    return all(find(v) == root for v in range(n))


def gen_random(
    n: int,
    m: int,
    safe_fraction: float,
    cost_range: tuple[float, float],
    p: int,
    q: int,
    seed: int,
) -> FgcInstance:
    """Seeded random valid instance.

    Samples uniform random multigraphs until one is connected, labels each
    edge safe with probability safe_fraction, and draws costs uniformly
    from cost_range.  If the full edge set is infeasible for (p, q), the
    graph is repaired by adding parallel unsafe edges across violated cuts
    until it passes, so high q never stalls the generator.
    """
    lo, hi = cost_range
    if n < 2:
        raise GenerationError(f"need at least 2 vertices, got {n}")
    if m < n - 1:
        raise GenerationError(f"{m} edges cannot connect {n} vertices")
    if not 0 <= safe_fraction <= 1:
        raise GenerationError(f"safe_fraction must be in [0, 1], got {safe_fraction}")
    if lo < 0 or hi < lo:
        raise GenerationError(f"cost range must satisfy 0 <= lo <= hi, got {cost_range}")
    if p < 1 or q < 0:
        raise GenerationError(f"need p >= 1 and q >= 0, got p={p}, q={q}")

    rng = random.Random(seed)
    for _ in range(MAX_SAMPLING_ATTEMPTS):
        edges = []
        for _ in range(m):
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            edges.append((min(u, v), max(u, v)))
        if _connected(n, edges):
            break
    else:
        raise GenerationError(
            f"no connected multigraph with n={n}, m={m} found "
            f"in {MAX_SAMPLING_ATTEMPTS} attempts"
        )
    safety = [rng.random() < safe_fraction for _ in range(m)]
    costs = [rng.uniform(lo, hi) for _ in range(m)]

    inst = FgcInstance(Multigraph(n, tuple(edges)), tuple(safety), tuple(costs), p, q)
    for _ in range(MAX_AUGMENTATIONS):
        verdict = is_feasible(inst, inst.all_edges)
        if verdict:
            break
        side = verdict.witness.vertices
        u = min(side)
        v = min(verdict.witness.complement)
        edges.append((min(u, v), max(u, v)))
        safety.append(False)
        costs.append(rng.uniform(lo, hi))
        inst = FgcInstance(Multigraph(n, tuple(edges)), tuple(safety), tuple(costs), p, q)
    else:
        raise GenerationError("feasibility repair did not converge")
    validate_instance(inst)
    return inst
