import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from circlefix import cli
from circlefix.dsl import ParseError, parse, parse_action, parse_space, to_text
from circlefix.equivariant import ConeA, random_action
from circlefix.space import (
    Disjoint, Empty, Join, MappingCone, Point, Product, PTrunc, Punctured, Sphere, Susp, Toda, Wedge,
)


def test_parse_examples():
    assert parse("wedge(S(2), S(4), S(6))").root == Wedge((Sphere(2), Sphere(4), Sphere(6)))
    assert parse("coneA(4, 2)").root == ConeA(4, 2)
    with pytest.raises(ParseError) as err:
        parse("rotfree(4)")
    assert "odd" in err.value.message
    assert (err.value.line, err.value.col, err.value.token) == (1, 1, "rotfree")


def test_error_positions():
    with pytest.raises(ParseError) as err:
        parse("wedge(S(2),\n  S(x))")
    assert (err.value.line, err.value.col, err.value.token) == (2, 5, "x")
    with pytest.raises(ParseError) as err:
        parse("S(2) S(3)")
    assert err.value.col == 6
    with pytest.raises(ParseError):
        parse("wedge(S(2))")
    with pytest.raises(ParseError):
        parse("   ")
    with pytest.raises(ParseError):
        parse("S(2) $")


def test_spans():
    prog = parse("join(S(1),\n susp(pt))")
    assert prog.kind == "space"
    assert prog.spans[(1,)] == (2, 2)
    assert prog.spans[(1, 0)] == (2, 7)


def test_wedge_basepoint_suffix():
    a = parse_action("wedgeA(coneA(2, 0)@2, suspA(rotfree(1)))")
    assert a.basepoints == (2, 0)
    assert to_text(a) == "wedgeA(coneA(2, 0)@2, suspA(rotfree(1)))"


leaves = st.one_of(
    st.just(Point()), st.just(Empty()),
    st.integers(0, 6).map(Sphere),
    st.tuples(st.integers(1, 3), st.sampled_from([2, 4])).map(lambda t: PTrunc(*t)),
    st.tuples(st.sampled_from([2, 4]), st.integers(-3, 3), st.integers(-3, 3)).map(lambda t: Toda(*t)),
    st.tuples(st.sampled_from([2, 4]), st.integers(-2, 2)).map(lambda t: MappingCone(*t)),
    st.tuples(st.integers(1, 4), st.integers(1, 4)).map(lambda t: Punctured(Product(Sphere(t[0]), Sphere(t[1])))),
)
spaces = st.recursive(leaves, lambda kids: st.one_of(
    st.lists(kids, min_size=2, max_size=3).map(lambda ps: Wedge(tuple(ps))),
    st.lists(kids, min_size=2, max_size=3).map(lambda ps: Disjoint(tuple(ps))),
    st.tuples(kids, kids).map(lambda t: Join(*t)),
    st.tuples(kids, kids).map(lambda t: Product(*t)),
    kids.map(Susp),
), max_leaves=8)


@settings(max_examples=200)
@given(spaces)
def test_space_roundtrip(e):
    text = to_text(e)
    assert to_text(parse_space(text)) == text
    assert parse_space(text) == e


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_action_roundtrip(seed):
    a = random_action(random.Random(seed))
    text = to_text(a)
    assert to_text(parse_action(text)) == text
    assert parse_action(text) == a


# --- CLI -------------------------------------------------------------------------

def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_euler(capsys):
    code, out, _ = run(capsys, "euler", "toda(2,1,0)")
    assert code == 0 and json.loads(out) == {"chi": 4}


def test_cli_cohomology_schema(capsys):
    code, out, _ = run(capsys, "cohomology", "punct(prod(S(2), S(5)))")
    assert code == 0
    assert json.loads(out) == {"ranks": {"0": 1, "2": 1, "5": 1}, "total_rank": 3, "chi": 1}


def test_cli_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--tnhz", "no")
    assert code == 0
    assert json.loads(out)["cases"] == ["∅", "S1", "S3", "S5", "S7", "S9"]


def test_cli_report_fields(capsys):
    code, out, _ = run(capsys, "report", "wedgeA(suspA(rotfree(1)), suspA(rotfree(3)), suspA(rotfree(5)))")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"total", "fixed", "rank_total", "rank_fixed", "chi_total", "chi_fixed", "tnhz"}
    assert doc["tnhz"] and doc["rank_fixed"] == 4


def test_cli_ring_and_type(capsys):
    code, out, _ = run(capsys, "ring", "toda(2, 5, 0)")
    assert code == 0 and json.loads(out)["iso_class"] == "P2WedgeSphere(2)"
    code, out, _ = run(capsys, "classify-type", "--n", "2", "--a", "0", "--b", "3")
    assert json.loads(out)["label"] == "ProductSpheres"


def test_cli_fixed_set_and_oracle(capsys):
    code, out, _ = run(capsys, "fixed-set", "coneA(4, 0)")
    assert code == 0 and json.loads(out)["type"] == "pt ⊔ pt ⊔ pt"
    code, out, _ = run(capsys, "oracle-check", "join(S(1), S(2))")
    assert code == 0 and json.loads(out)["match"]


def test_cli_compare_theorem(capsys):
    code, out, _ = run(capsys, "compare-theorem", "--n", "2", "--tnhz", "yes")
    assert code == 0 and json.loads(out)["empty_diff"]
    code, out, _ = run(capsys, "compare-theorem", "--n", "4", "--tnhz", "yes", "--p2-unbounded")
    assert code == 1 and not json.loads(out)["empty_diff"]


def test_cli_degree_deterministic(capsys):
    args = ("degree", "--map", "phi", "--n", "4", "--samples", "100000", "--seed", "9")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    doc = json.loads(first[1])
    assert (doc["alpha"], doc["beta"], doc["seed"]) == (2, -1, 9)
    assert first[1] == json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n"


def test_cli_gallery_all(capsys):
    code, out, _ = run(capsys, "gallery", "--all")
    assert code == 0 and json.loads(out)["all_passed"]
    code, out, _ = run(capsys, "gallery", "thm2-Sr", "--param", "n=5", "--param", "r=7")
    assert code == 0 and json.loads(out)["results"][0]["observed"] == "S7"


def test_cli_errors(capsys):
    code, _, err = run(capsys, "fixed-set", "rotfree(4)")
    assert code == 1 and json.loads(err)["column"] == 1
    code, _, err = run(capsys, "euler", "toda(3, 1, 0)")
    assert code == 1
    code, _, err = run(capsys, "gallery", "nope")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["classify", "--n", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_cli_human(capsys):
    code, out, _ = run(capsys, "--human", "euler", "S(2)")
    assert code == 0 and out == "chi: 2\n"
