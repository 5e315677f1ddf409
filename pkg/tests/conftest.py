"""Shared test oracles.

The dense oracle evolves states by explicit basis-index arithmetic (bit
extraction and scatter), a different algorithm from the backend's reshaped
tensor contractions, so the two can check each other.
"""
from __future__ import annotations

import numpy as np
import pytest

from qcsim.circuit import Circuit


def dense_apply(state: np.ndarray, op, n: int) -> np.ndarray:
    """Apply one gate by looping over basis indices (little endian)."""
    u = op.matrix()
    out = np.zeros_like(state, dtype=np.complex128)
    qubits = op.qubits
    if len(qubits) == 1:
        q = qubits[0]
        for i in range(1 << n):
            bit = (i >> q) & 1
            base = i & ~(1 << q)
            for new_bit in (0, 1):
                j = base | (new_bit << q)
                out[j] += u[new_bit, bit] * state[i]
    else:
        qa, qb = qubits
        for i in range(1 << n):
            a, b = (i >> qa) & 1, (i >> qb) & 1
            k_in = 2 * a + b
            base = i & ~(1 << qa) & ~(1 << qb)
            for k_out in range(4):
                na, nb = k_out >> 1, k_out & 1
                j = base | (na << qa) | (nb << qb)
                out[j] += u[k_out, k_in] * state[i]
    return out


def dense_run(c: Circuit) -> np.ndarray:
    """Reference state evolution for small circuits."""
    state = np.zeros(1 << c.num_qubits, dtype=np.complex128)
    state[0] = 1.0
    for op in c.unitary_ops:
        state = dense_apply(state, op, c.num_qubits)
    return state


def brute_force_contract(net) -> np.ndarray:
    """Contract a whole network in one einsum over every label."""
    labels: dict[str, int] = {}
    operands = []
    for t in net.tensors:
        ids = []
        for label in t.indices:
            ids.append(labels.setdefault(label, len(labels)))
        operands.extend([t.data, ids])
    out_ids = [labels[label] for label in net.open_indices]
    operands.append(out_ids)
    return np.einsum(*operands)


@pytest.fixture
def bell() -> Circuit:
    return Circuit(2, name="bell").h(0).cnot(0, 1)
