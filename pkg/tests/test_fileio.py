import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbqp import (Instance, Solution, parse_bqp, parse_instance, parse_solution,
                  serialize_bqp, serialize_instance, serialize_solution)
from bbqp.errors import FormatError, OverflowGuardError
from bbqp.fileio import read_instance

E1_TEXT = "BBQP 1\n2 2\n1 -1\n-2 1\n1 -2\n3 4\n"


def test_serialize_e1_canonical():
    e1 = Instance([[1, -2], [3, 4]], [1, -1], [-2, 1])
    text = serialize_instance(e1)
    assert text == E1_TEXT
    assert len(text.splitlines()) == 6


def test_parse_e1(e1):
    assert parse_instance(io.StringIO(E1_TEXT)) == e1


def test_parse_skips_comments_and_reads_name():
    text = "# name: tiny\n# generated by hand\nBBQP 1\n\n1 1\n# c\n3\n-4\n7\n"
    inst = parse_instance(io.StringIO(text))
    assert inst.name == "tiny"
    assert inst.Q.tolist() == [[7]] and inst.c.tolist() == [3] and inst.d.tolist() == [-4]


def test_named_round_trip():
    inst = Instance([[1, 2, 3]], [0], [4, 5, 6], name="row")
    text = serialize_instance(inst)
    back = parse_instance(io.StringIO(text))
    assert back == inst and back.name == "row"
    assert serialize_instance(back) == text


def test_missing_tokens_in_row_names_the_row():
    text = "BBQP 1\n2 3\n1 1\n1 1 1\n1 2 3\n4 5\n"
    with pytest.raises(FormatError) as exc:
        parse_instance(io.StringIO(text))
    assert "row 2 of Q" in str(exc.value)
    assert exc.value.line == 6


@pytest.mark.parametrize("text, line, column", [
    ("BQBP 1\n1 1\n0\n0\n0\n", 1, 1),
    ("BBQP 1\n1 x\n0\n0\n0\n", 2, 3),
    ("BBQP 1\n1 1\n0\n0\n1.5\n", 5, 1),
    ("BBQP 1\n1 1\n0 0\n0\n0\n", 3, None),
    ("BBQP 1\n0 1\n\n0\n", 2, None),
    ("BBQP 1\n1 1\n0\n0\n", 5, None),
    ("BBQP 1\n1 1\n0\n0\n0\n9\n", 6, None),
])
def test_malformed_instances(text, line, column):
    with pytest.raises(FormatError) as exc:
        parse_instance(io.StringIO(text))
    assert exc.value.line == line
    assert exc.value.column == column


def test_parse_overflow_guard():
    text = f"BBQP 1\n1 1\n0\n0\n{2**63 + 5}\n"
    with pytest.raises(OverflowGuardError):
        parse_instance(io.StringIO(text))


def test_random_50x50_round_trip_bytes():
    rng = np.random.default_rng(50)
    inst = Instance(rng.integers(-10**6, 10**6, (50, 50)), rng.integers(-10**6, 10**6, 50),
                    rng.integers(-10**6, 10**6, 50))
    text = serialize_instance(inst)
    back = parse_instance(io.StringIO(text))
    assert back == inst
    assert serialize_instance(back) == text


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8).flatmap(lambda m: st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-10**9, 10**9), min_size=n, max_size=n), min_size=m, max_size=m),
    st.lists(st.integers(-10**9, 10**9), min_size=m, max_size=m),
    st.lists(st.integers(-10**9, 10**9), min_size=n, max_size=n)))))
def test_round_trip_property(data):
    Q, c, d = data
    inst = Instance(Q, c, d)
    text = serialize_instance(inst)
    assert parse_instance(io.StringIO(text)) == inst
    assert serialize_instance(parse_instance(io.StringIO(text))) == text


def test_solution_round_trip():
    sol = Solution([0, 1, 1], [1, 0])
    text = serialize_solution(sol)
    assert text == "3 2\n011\n10\n"
    assert parse_solution(io.StringIO(text)) == sol


@pytest.mark.parametrize("text, line", [
    ("2 2\n01\n1\n", 3),
    ("2 2\n0a\n11\n", 2),
    ("2 2\n01\n", 3),
])
def test_malformed_solutions(text, line):
    with pytest.raises(FormatError) as exc:
        parse_solution(io.StringIO(text))
    assert exc.value.line == line


def test_bqp_round_trip():
    Qp, cp = np.array([[0, 2], [2, 0]]), np.array([-1, -1])
    text = serialize_bqp(Qp, cp)
    Q2, c2 = parse_bqp(io.StringIO(text))
    assert np.array_equal(Q2, Qp) and np.array_equal(c2, cp)


def test_read_instance_names_from_file(tmp_path, e1):
    path = tmp_path / "e1.bbqp"
    path.write_text(E1_TEXT)
    inst = read_instance(path)
    assert inst == e1 and inst.name == "e1"
