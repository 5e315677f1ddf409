"""Dense state-vector simulation backend.

Amplitudes live in a flat array of length ``2^n`` indexed little endian
(qubit 0 = least-significant bit).  Gate application reshapes the array to
an n-axis tensor and multiplies only the amplitude groups selected by the
target qubits — pairs for 1-qubit gates, (00,01,10,11)-ordered quadruples
for 2-qubit gates — never expanding the gate to a ``2^n x 2^n`` matrix.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, GateOp, index_to_bitstring
from .errors import CapacityError, UnsupportedOpError

DEFAULT_MAX_QUBITS = 30
_ENV_MAX_QUBITS = "QCSIM_MAX_QUBITS"

_DTYPES = {"single": np.complex64, "double": np.complex128}
_BYTES_PER_AMP = {"single": 8, "double": 16}


def _resolve_max_qubits(max_qubits: int | None) -> int:
    if max_qubits is not None:
        return max_qubits
    env = os.environ.get(_ENV_MAX_QUBITS)
    return int(env) if env else DEFAULT_MAX_QUBITS


def sv_memory_bytes(n: int, precision: str = "single") -> int:
    """Bytes needed for the amplitudes of an ``n``-qubit state vector."""
    return (1 << n) * _BYTES_PER_AMP[precision]


@dataclass
class StateVector:
    num_qubits: int
    amps: np.ndarray

    @property
    def precision(self) -> str:
        return "single" if self.amps.dtype == np.complex64 else "double"

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amps.copy())


def init_zero(
    n: int, precision: str = "double", max_qubits: int | None = None
) -> StateVector:
    """|0...0> on ``n`` qubits; refuses sizes beyond the qubit budget."""
    if n < 1:
        raise ValueError("need at least one qubit")
    if precision not in _DTYPES:
        raise ValueError(f"precision must be 'single' or 'double', got {precision!r}")
    limit = _resolve_max_qubits(max_qubits)
    if n > limit:
        required = sv_memory_bytes(n, precision)
        raise CapacityError(
            f"{n}-qubit state vector needs {required} bytes "
            f"({precision} precision), over the {limit}-qubit budget; "
            f"set {_ENV_MAX_QUBITS} to override",
            required_bytes=required,
        )
    amps = np.zeros(1 << n, dtype=_DTYPES[precision])
    amps[0] = 1.0
    return StateVector(n, amps)


def apply_gate(sv: StateVector, op: GateOp) -> StateVector:
    """Apply one gate in place and return the (updated) state vector."""
    if op.is_measure:
        raise UnsupportedOpError("measurement is handled by sampling, not apply_gate")
    n = sv.num_qubits
    for q in op.qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} outside register of width {n}")
    matrix = op.matrix().astype(sv.amps.dtype)
    psi = sv.amps.reshape([2] * n)
    if len(op.qubits) == 1:
        axis = n - 1 - op.qubits[0]
        psi = np.tensordot(matrix, psi, axes=([1], [axis]))
        psi = np.moveaxis(psi, 0, axis)
    else:
        ax_a = n - 1 - op.qubits[0]
        ax_b = n - 1 - op.qubits[1]
        tensor = matrix.reshape(2, 2, 2, 2)  # (out_a, out_b, in_a, in_b)
        psi = np.tensordot(tensor, psi, axes=([2, 3], [ax_a, ax_b]))
        psi = np.moveaxis(psi, (0, 1), (ax_a, ax_b))
    sv.amps = np.ascontiguousarray(psi).reshape(-1)
    return sv


def run(
    c: Circuit, precision: str = "double", max_qubits: int | None = None
) -> StateVector:
    """Evolve |0...0> through every unitary op of ``c`` in order.

    Trailing measurement markers are skipped; sample the result instead.
    """
    sv = init_zero(c.num_qubits, precision, max_qubits)
    for op in c.unitary_ops:
        apply_gate(sv, op)
    return sv


@dataclass
class OutputDistribution:
    """Probabilities over the ``2^n`` basis states (dense array)."""

    num_qubits: int
    probs: np.ndarray

    def as_dict(self, cutoff: float = 0.0) -> dict[str, float]:
        return {
            index_to_bitstring(i, self.num_qubits): float(p)
            for i, p in enumerate(self.probs)
            if p > cutoff
        }

    def most_likely(self) -> str:
        return index_to_bitstring(int(np.argmax(self.probs)), self.num_qubits)

    def marginal(self, qubits: list[int]) -> "OutputDistribution":
        """Distribution over ``qubits`` (in the given order), others summed out."""
        n = self.num_qubits
        grid = self.probs.reshape([2] * n)
        # axis n-1-q holds qubit q; put the kept qubits first, then sum.
        kept_axes = [n - 1 - q for q in qubits]
        grid = np.moveaxis(grid, kept_axes, range(len(qubits)))
        flat = grid.reshape(1 << len(qubits), -1).sum(axis=1)
        # flat index uses qubits[0] as its most-significant bit; reorder to
        # little-endian over the listed qubits.
        m = len(qubits)
        out = np.zeros(1 << m)
        for i, p in enumerate(flat):
            idx = 0
            for pos in range(m):
                if (i >> (m - 1 - pos)) & 1:
                    idx |= 1 << pos
            out[idx] += p
        return OutputDistribution(m, out)


def distribution(sv: StateVector) -> OutputDistribution:
    probs = np.abs(sv.amps.astype(np.complex128)) ** 2
    return OutputDistribution(sv.num_qubits, probs)


def sample(sv: StateVector, shots: int, seed: int = 0) -> dict[str, int]:
    """Multinomial measurement counts; identical seeds give identical maps."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    dist = distribution(sv)
    probs = dist.probs / dist.probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {
        index_to_bitstring(i, sv.num_qubits): int(count)
        for i, count in enumerate(counts)
        if count
    }
