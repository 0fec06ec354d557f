"""Text and JSON instance formats plus the random generator."""

import json

import pytest

from flexconn import (
    FieldRangeError,
    GenerationError,
    GraphStructureError,
    InvalidInstanceError,
    ParseError,
    gen_random,
    instance_from_json,
    instance_to_json,
    is_feasible_direct,
    load_instance,
    parse_instance,
    save_instance,
    serialize_instance,
)

from instances import named_corpus, two_vertex

SAMPLE = """\
# two vertices, one safe and two unsafe parallel edges
fgc 1
p 1
q 1
nodes 2
edge 0 1 S 5
edge 0 1 U 1   # ids follow file order
edge 0 1 U 1
"""


def test_parse_sample():
    inst = parse_instance(SAMPLE)
    assert inst == two_vertex()


def test_round_trip_text():
    for name, inst in named_corpus():
        assert parse_instance(serialize_instance(inst)) == inst, name


def test_round_trip_json():
    for name, inst in named_corpus():
        blob = json.dumps(instance_to_json(inst))
        assert instance_from_json(json.loads(blob)) == inst, name


def test_round_trip_files(tmp_path):
    inst = two_vertex()
    for fname in ("inst.fgc", "inst.json"):
        path = tmp_path / fname
        save_instance(inst, path)
        assert load_instance(path) == inst


def test_serialize_formats_integral_costs_without_dot():
    text = serialize_instance(two_vertex())
    assert "edge 0 1 S 5\n" in text
    assert "5.0" not in text


def test_serialize_preserves_fractional_costs():
    inst = parse_instance("fgc 1\np 1\nq 0\nnodes 2\nedge 0 1 S 0.1\n")
    assert inst.cost == (0.1,)
    assert parse_instance(serialize_instance(inst)).cost == (0.1,)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("p 1\nq 1\nnodes 2\nedge 0 1 S 1\n", "header"),
        ("fgc 2\np 1\nq 1\nnodes 2\nedge 0 1 S 1\n", "version"),
        ("fgc 1\np 1\nnodes 2\nedge 0 1 S 1\n", "missing 'q'"),
        ("fgc 1\np 1\np 2\nq 1\nnodes 2\nedge 0 1 S 1\n", "duplicate"),
        ("fgc 1\np one\nq 1\nnodes 2\nedge 0 1 S 1\n", "integer"),
        ("fgc 1\np 1\nq 1\nnodes 2\nedge 0 1 X 1\n", "safety flag"),
        ("fgc 1\np 1\nq 1\nnodes 2\nedge 0 1 S\n", "edge"),
        ("fgc 1\np 1\nq 1\nnodes 2\nedge 0 1 S abc\n", "number"),
        ("fgc 1\np 1\nq 1\nnodes 2\nwidget 3\nedge 0 1 S 1\n", "unknown directive"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert fragment in str(exc.value)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as exc:
        parse_instance("fgc 1\np 1\nq 1\nnodes 2\nedge 0 1 X 1\n")
    assert exc.value.line == 5
    assert "line 5:" in str(exc.value)


@pytest.mark.parametrize(
    "text",
    [
        "fgc 1\np 1\nq 1\nnodes 1\n",
        "fgc 1\np 1\nq 1\nnodes 2\nedge 0 2 S 1\nedge 0 1 U 1\n",
        "fgc 1\np 1\nq 1\nnodes 2\nedge 0 1 S -1\n",
        "fgc 1\np 1\nq 1\nnodes 2\nedge 0 1 S inf\n",
    ],
)
def test_field_range_errors(text):
    with pytest.raises(FieldRangeError):
        parse_instance(text)


def test_parse_rejects_self_loop_via_graph_check():
    with pytest.raises(GraphStructureError):
        parse_instance("fgc 1\np 1\nq 1\nnodes 2\nedge 1 1 S 1\nedge 0 1 U 1\n")


def test_parse_rejects_infeasible_edge_set():
    # one unsafe edge cannot give p = 1, q = 1
    with pytest.raises(InvalidInstanceError) as exc:
        parse_instance("fgc 1\np 1\nq 1\nnodes 2\nedge 0 1 U 1\n")
    assert exc.value.code == "infeasible-edges"


def test_parse_rejects_bad_params():
    with pytest.raises(InvalidInstanceError) as exc:
        parse_instance("fgc 1\np 0\nq 1\nnodes 2\nedge 0 1 S 1\n")
    assert exc.value.code == "params"


def test_json_errors():
    with pytest.raises(ParseError):
        instance_from_json({"format": "other"})
    with pytest.raises(ParseError):
        instance_from_json({"format": "fgc", "version": 1, "p": 1, "q": 0})
    with pytest.raises(FieldRangeError):
        instance_from_json(
            {"format": "fgc", "version": 1, "p": 1, "q": 0, "nodes": 2,
             "edges": [[0, 1, "S", -3]]}
        )


def test_load_reports_json_syntax_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_instance(path)


def test_gen_random_is_deterministic():
    a = gen_random(6, 10, 0.5, (1, 10), 1, 1, seed=42)
    b = gen_random(6, 10, 0.5, (1, 10), 1, 1, seed=42)
    assert a == b
    c = gen_random(6, 10, 0.5, (1, 10), 1, 1, seed=43)
    assert a != c


def test_gen_random_produces_valid_feasible_instances():
    for seed in range(8):
        inst = gen_random(5, 9, 0.4, (0, 5), 2, 1, seed=seed)
        assert inst.n == 5
        assert inst.m >= 9  # repair may add edges
        assert is_feasible_direct(inst, inst.all_edges).feasible
        assert all(c >= 0 for c in inst.cost)


def test_gen_random_repairs_high_q():
    # q = 4 forces augmentation on a sparse graph
    inst = gen_random(4, 3, 0.0, (1, 2), 1, 4, seed=0)
    assert inst.m > 3
    assert is_feasible_direct(inst, inst.all_edges).feasible


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=1, m=3, safe_fraction=0.5, cost_range=(0, 1), p=1, q=0, seed=0),
        dict(n=4, m=2, safe_fraction=0.5, cost_range=(0, 1), p=1, q=0, seed=0),
        dict(n=4, m=5, safe_fraction=1.5, cost_range=(0, 1), p=1, q=0, seed=0),
        dict(n=4, m=5, safe_fraction=0.5, cost_range=(2, 1), p=1, q=0, seed=0),
        dict(n=4, m=5, safe_fraction=0.5, cost_range=(-1, 1), p=1, q=0, seed=0),
        dict(n=4, m=5, safe_fraction=0.5, cost_range=(0, 1), p=0, q=1, seed=0),
    ],
)
def test_gen_random_rejects_bad_arguments(kwargs):
    with pytest.raises(GenerationError):
        gen_random(**kwargs)


def test_all_safe_instance_reduces_to_edge_connectivity():
    # with every edge safe, feasibility of F is just p-edge-connectivity,
    # so a generated all-safe instance must keep p parallel paths
    inst = gen_random(5, 12, 1.0, (1, 3), 2, 2, seed=7)
    assert all(inst.safe[e] for e in range(12))  # repairs would append unsafe
    assert is_feasible_direct(inst, inst.all_edges).feasible
