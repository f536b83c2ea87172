import pytest
from hypothesis import given, strategies as st

from qws.dense import Gate
from qws.dsl import Circuit, format_circuit, parse_circuit
from qws.errors import BadDimension, BadTarget, ParseError
from qws.zmod import Dim


def test_parse_examples():
    c = parse_circuit("qudits 1 dim 3\nF 0")
    assert (c.dim, c.gates) == (Dim(3, 1), [Gate("F", (0,))])
    c = parse_circuit("qudits 2 dim 5\nC 0 1\nT 1")
    assert c.gates == [Gate("C", (0, 1)), Gate("T", (1,))]
    assert not c.is_clifford


def test_comments_blank_lines_and_powers():
    text = "# header comment\n\nqudits 2 dim 7  # two qudits\n  Z 1 9\nX 0 -1 # wraps\n\n"
    c = parse_circuit(text)
    assert c.gates == [Gate("Z", (1,), 2), Gate("X", (0,), 6)]


@pytest.mark.parametrize("d", [4, 1, 2, 10])
def test_bad_dimension(d):
    with pytest.raises(BadDimension) as err:
        parse_circuit(f"qudits 1 dim {d}\nF 0")
    assert err.value.line == 1


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("qudits 1 dim 3\nF 1", 2, 3),
        ("qudits 2 dim 3\n\nC 0  0", 3, 6),
        ("qudits 2 dim 3\nC 0 2", 2, 5),
    ],
)
def test_bad_target_location(text, line, column):
    with pytest.raises(BadTarget) as err:
        parse_circuit(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(err.value)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("F 0", 1),
        ("qudits two dim 3", 1),
        ("qudits 1 dim 3\nH 0", 2),
        ("qudits 1 dim 3\nF", 2),
        ("qudits 1 dim 3\nZ 0", 2),
        ("qudits 1 dim 3\nZ 0 x", 2),
        ("qudits 0 dim 3", 1),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as err:
        parse_circuit(text)
    assert err.value.line == line


@st.composite
def circuits(draw):
    d = draw(st.sampled_from([3, 5, 7, 15]))
    n = draw(st.integers(1, 3))
    gates = []
    for _ in range(draw(st.integers(0, 12))):
        kind = draw(st.sampled_from("FPTCZX" if n > 1 else "FPTZX"))
        if kind == "C":
            c, t = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
            gates.append(Gate("C", (c, t)))
        elif kind in "ZX":
            gates.append(Gate(kind, (draw(st.integers(0, n - 1)),), draw(st.integers(0, d - 1))))
        else:
            gates.append(Gate(kind, (draw(st.integers(0, n - 1)),)))
    return Circuit(Dim(d, n), gates)


@given(circuits())
def test_format_parse_round_trip(circuit):
    text = format_circuit(circuit)
    back = parse_circuit(text)
    assert back == circuit
    assert format_circuit(back) == text


def test_round_trip_ignores_comments_and_spacing():
    text = "qudits 2 dim 5 # hi\n\n   F   0\nC 1 0   # ctl 1\n"
    assert format_circuit(parse_circuit(text)) == "qudits 2 dim 5\nF 0\nC 1 0\n"
