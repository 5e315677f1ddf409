import math

import numpy as np
import pytest

from qcsim.circuit import Circuit
from qcsim.errors import QasmParseError, UnsupportedGateError
from qcsim.gates import GateKind
from qcsim.generators import Family, GeneratorSpec, generate
from qcsim.qasm import emit_qasm, parse_qasm

BELL_SRC = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q[0] -> c[0];
measure q[1] -> c[1];
"""


def test_parse_bell():
    c = parse_qasm(BELL_SRC)
    assert c.num_qubits == 2
    kinds = [op.kind for op in c.ops]
    assert kinds == [GateKind.H, GateKind.CNOT, GateKind.MEASURE, GateKind.MEASURE]
    assert c.ops[1].qubits == (0, 1)


def test_empty_body():
    c = parse_qasm("OPENQASM 2.0;\nqreg q[3];\n")
    assert c.num_qubits == 3
    assert c.ops == []


def test_angle_expressions():
    c = parse_qasm("OPENQASM 2.0;\nqreg q[1];\nrz(pi/4) q[0];\nrx(-pi) q[0];\nry(2*pi/3) q[0];\n")
    assert c.ops[0].angle == pytest.approx(math.pi / 4)
    assert c.ops[1].angle == pytest.approx(-math.pi)
    assert c.ops[2].angle == pytest.approx(2 * math.pi / 3)


def test_cu1_alias_for_cp():
    c = parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncu1(0.5) q[0],q[1];\n")
    assert c.ops[0].kind is GateKind.CP


def test_register_measure_expands():
    c = parse_qasm("OPENQASM 2.0;\nqreg q[3];\ncreg c[3];\nmeasure q -> c;\n")
    assert [op.qubits[0] for op in c.ops] == [0, 1, 2]


def test_unsupported_gate_rejected_with_line():
    src = "OPENQASM 2.0;\nqreg q[2];\nccx q[0],q[1],q[0];\n"
    with pytest.raises(UnsupportedGateError) as err:
        parse_qasm(src)
    assert err.value.line == 3


def test_syntax_error_carries_line_number():
    src = "OPENQASM 2.0;\nqreg q[2];\nh q[0;\n"
    with pytest.raises(QasmParseError) as err:
        parse_qasm(src)
    assert err.value.line == 3


def test_register_width_mismatch():
    with pytest.raises(QasmParseError):
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[5];\n")


def test_two_qregs_rejected():
    with pytest.raises(QasmParseError):
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nqreg r[2];\n")


def test_missing_header_rejected():
    with pytest.raises(QasmParseError):
        parse_qasm("qreg q[2];\nh q[0];\n")


def test_emit_bell_contains_single_h_and_cx(bell):
    text = emit_qasm(bell)
    statements = [s.strip() for s in text.splitlines()]
    assert sum(1 for s in statements if s.startswith("h ")) == 1
    assert sum(1 for s in statements if s.startswith("cx ")) == 1


def test_emit_zero_op_circuit_is_header_only():
    text = emit_qasm(Circuit(3))
    assert text == 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\n'


def test_angle_precision_round_trip():
    c = Circuit(1).rz(0, math.pi / 4)
    text = emit_qasm(c)
    # repr keeps >= 15 significant digits
    assert "0.7853981633974483" in text
    back = parse_qasm(text)
    assert back.ops[0].angle == c.ops[0].angle


def _random_circuit(rng: np.random.Generator, n: int, length: int) -> Circuit:
    c = Circuit(n)
    kinds = [k for k in GateKind if k is not GateKind.MEASURE]
    for _ in range(length):
        kind = kinds[rng.integers(len(kinds))]
        qs = rng.choice(n, size=kind.arity, replace=False).tolist()
        angle = float(rng.uniform(0, 2 * math.pi)) if kind.is_parameterized else None
        c.add(kind, *qs, angle=angle)
    if rng.random() < 0.5:
        c.measure_all()
    return c


def test_round_trip_on_random_circuits():
    rng = np.random.default_rng(42)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        c = _random_circuit(rng, n, int(rng.integers(0, 30)))
        back = parse_qasm(emit_qasm(c))
        assert back.structurally_equal(c)


@pytest.mark.parametrize("family", list(Family))
def test_round_trip_on_generator_outputs(family):
    c = generate(GeneratorSpec(family, 6, seed=3))
    back = parse_qasm(emit_qasm(c))
    assert back.structurally_equal(c)
