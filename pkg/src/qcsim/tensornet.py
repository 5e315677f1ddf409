"""Tensor-network contraction backend.

A circuit maps to a network of dense tensors: one rank-1 ``[1, 0]`` tensor
per input qubit, a rank-2 ``(in, out)`` tensor per 1-qubit gate, a rank-4
``(in_a, in_b, out_a, out_b)`` tensor per 2-qubit gate.  The final wire of
each qubit is an open index unless a target bitstring closes it with the
conjugate basis vector, in which case full contraction yields that
bitstring's probability amplitude.

Pathfinding runs ``num_samples`` independent randomized-greedy descents and
keeps the plan with the lowest estimated FLOP count.  The cost of a pairwise
step is the product of the dimensions of the union of both tensors' indices
(shared counted once); since every index here has dimension 2, costs are
exact integers ``2**|union|``.  Estimated peak size is reported but not
optimized.  Slicing fixes chosen index values, splitting one contraction
into independent sub-contractions whose results sum to the original.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .circuit import Circuit, bitstring_to_index, index_to_bitstring
from .errors import CapacityError, ConfigError, StructuralError, UnsupportedOpError
from .statevector import OutputDistribution

_BASIS = (np.array([1.0, 0.0], dtype=np.complex128), np.array([0.0, 1.0], dtype=np.complex128))


@dataclass
class Tensor:
    """Dense tensor with one unique label per index; every dimension is 2."""

    indices: tuple[str, ...]
    data: np.ndarray

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise StructuralError(f"repeated index label in {self.indices}")
        if self.data.shape != (2,) * len(self.indices):
            raise StructuralError(
                f"data shape {self.data.shape} does not match indices {self.indices}"
            )

    @property
    def rank(self) -> int:
        return len(self.indices)

    def sliced(self, assignment: dict[str, int]) -> "Tensor":
        """Fix the labels present in ``assignment`` to their bit values."""
        data = self.data
        indices = []
        for pos, label in enumerate(self.indices):
            if label in assignment:
                data = np.take(data, assignment[label], axis=len(indices))
            else:
                indices.append(label)
        return Tensor(tuple(indices), data)


@dataclass
class TensorNetwork:
    tensors: list[Tensor]
    open_indices: tuple[str, ...] = ()

    def validate(self) -> None:
        seen: dict[str, int] = {}
        for t in self.tensors:
            for label in t.indices:
                seen[label] = seen.get(label, 0) + 1
        for label, count in seen.items():
            expected = 1 if label in self.open_indices else 2
            if count != expected:
                raise StructuralError(
                    f"label {label} appears {count} times, expected {expected}"
                )
        for label in self.open_indices:
            if label not in seen:
                raise StructuralError(f"open index {label} missing from network")

    def all_labels(self) -> set[str]:
        labels: set[str] = set()
        for t in self.tensors:
            labels.update(t.indices)
        return labels


def tn_memory_bytes(net: TensorNetwork, precision: str = "single") -> int:
    """Total bytes of all tensor elements at the given complex precision."""
    bytes_per = 8 if precision == "single" else 16
    return sum(t.data.size for t in net.tensors) * bytes_per


def circuit_to_network(c: Circuit, bitstring: str | None = None) -> TensorNetwork:
    """Convert a circuit (and optional output bitstring) to a tensor network."""
    ops = list(c.ops)
    # Trailing measurement markers are fine; mid-circuit ones are not.
    tail = len(ops)
    while tail and ops[tail - 1].is_measure:
        tail -= 1
    if any(op.is_measure for op in ops[:tail]):
        raise UnsupportedOpError("mid-circuit measurement cannot become a tensor network")
    ops = ops[:tail]

    n = c.num_qubits
    if bitstring is not None and len(bitstring) != n:
        raise ValueError(f"bitstring length {len(bitstring)} != {n} qubits")

    wire = [f"q{q}w0" for q in range(n)]
    counter = [0] * n
    tensors = [Tensor((wire[q],), _BASIS[0].copy()) for q in range(n)]

    def advance(q: int) -> str:
        counter[q] += 1
        wire[q] = f"q{q}w{counter[q]}"
        return wire[q]

    for op in ops:
        matrix = op.matrix()
        if len(op.qubits) == 1:
            q = op.qubits[0]
            t_in = wire[q]
            t_out = advance(q)
            tensors.append(Tensor((t_in, t_out), matrix.T.copy()))
        else:
            qa, qb = op.qubits
            in_a, in_b = wire[qa], wire[qb]
            out_a, out_b = advance(qa), advance(qb)
            data = matrix.reshape(2, 2, 2, 2).transpose(2, 3, 0, 1).copy()
            tensors.append(Tensor((in_a, in_b, out_a, out_b), data))

    if bitstring is None:
        net = TensorNetwork(tensors, tuple(wire))
    else:
        for q in range(n):
            bit = int(bitstring[q])
            tensors.append(Tensor((wire[q],), _BASIS[bit].conj().copy()))
        net = TensorNetwork(tensors, ())
    net.validate()
    return net


def absorb_small_tensors(
    net: TensorNetwork,
    max_rank: int = 1,
    keep: frozenset[int] = frozenset(),
    min_tensors: int = 2,
) -> TensorNetwork:
    """One sweep contracting the network's rank <= ``max_rank`` tensors into
    a neighbour each.

    Input vectors and bitstring closures are rank 1, so the default sweep
    removes exactly those; such contractions never increase a neighbour's
    rank.  Only tensors small at entry are absorbed (no cascading, which
    would collapse chain-like networks outright and leave nothing to plan).
    Positions listed in ``keep`` are never absorbed; the sweep stops early
    rather than dropping below ``min_tensors``.
    """
    tensors = list(net.tensors)
    keep_ids = set(keep)
    small = [
        i
        for i, t in enumerate(tensors)
        if t.rank <= max_rank and i not in keep_ids
    ]
    alive = len(tensors)
    for i in small:
        if alive <= min_tensors:
            break
        t = tensors[i]
        if t is None:
            continue
        partner = None
        for j, other in enumerate(tensors):
            if j == i or other is None:
                continue
            if any(label in other.indices for label in t.indices):
                partner = j
                break
        if partner is None:
            continue
        tensors[partner] = contract_pair(t, tensors[partner])
        tensors[i] = None
        alive -= 1
    merged = [t for t in tensors if t is not None]
    out = TensorNetwork(merged, net.open_indices)
    out.validate()
    return out


# -- pairwise contraction ----------------------------------------------


def contract_pair(a: Tensor, b: Tensor) -> Tensor:
    """Sum over the shared labels; output indices are a's then b's rest."""
    shared = [label for label in a.indices if label in b.indices]
    axes_a = [a.indices.index(label) for label in shared]
    axes_b = [b.indices.index(label) for label in shared]
    data = np.tensordot(a.data, b.data, axes=(axes_a, axes_b))
    out = tuple(l for l in a.indices if l not in shared) + tuple(
        l for l in b.indices if l not in shared
    )
    return Tensor(out, data)


def pair_cost(a_indices: frozenset[str], b_indices: frozenset[str]) -> int:
    """FLOP estimate of one step: product of union-index dimensions."""
    return 1 << len(a_indices | b_indices)


# -- contraction plans --------------------------------------------------


@dataclass(frozen=True)
class ContractionPlan:
    """Full binary contraction of a network in SSA form.

    Step ``k`` contracts ids ``steps[k] = (i, j)`` and produces id
    ``num_tensors + k``; ids below ``num_tensors`` are the network's tensors
    in order.
    """

    num_tensors: int
    steps: tuple[tuple[int, int], ...]
    est_flops: int
    est_peak_elements: int
    sliced_labels: tuple[str, ...] = ()
    slice_warning: bool = False
    per_slice_flops: int | None = None

    @property
    def num_slices(self) -> int:
        return 1 << len(self.sliced_labels)


@dataclass(frozen=True)
class PathfinderConfig:
    num_samples: int = 8
    seed: int = 0
    greedy_noise: float = 1.0

    def __post_init__(self):
        if self.num_samples < 1:
            raise ConfigError("num_samples must be >= 1")
        if self.greedy_noise < 0:
            raise ConfigError("greedy_noise must be >= 0")


def _index_sets(net: TensorNetwork, drop: frozenset[str] = frozenset()) -> list[frozenset[str]]:
    return [frozenset(t.indices) - drop for t in net.tensors]


def _replay(
    num_tensors: int,
    steps: tuple[tuple[int, int], ...],
    sets: list[frozenset[str]],
) -> tuple[int, int]:
    """(total flops, peak output elements) of ``steps`` over ``sets``."""
    buf: dict[int, frozenset[str]] = dict(enumerate(sets))
    flops = 0
    peak = max((1 << len(s) for s in sets), default=1)
    next_id = num_tensors
    for i, j in steps:
        a, b = buf.pop(i), buf.pop(j)
        flops += pair_cost(a, b)
        out = a ^ b
        peak = max(peak, 1 << len(out))
        buf[next_id] = out
        next_id += 1
    return max(flops, 1), peak


def _greedy_descent(
    sets: list[frozenset[str]],
    noise: float,
    rng: np.random.Generator | None,
) -> tuple[tuple[tuple[int, int], ...], int, int]:
    """One randomized-greedy bottom-up contraction order.

    Candidates are pairs sharing an index; the key is log2 of the step cost,
    perturbed by Gumbel noise scaled with ``noise`` (0 = pure greedy,
    deterministic smallest-ids tie-break).  Outer products are taken only
    when no pair shares an index.
    """
    active: dict[int, frozenset[str]] = dict(enumerate(sets))
    next_id = len(sets)
    steps: list[tuple[int, int]] = []
    flops = 0
    peak = max((1 << len(s) for s in sets), default=1)

    while len(active) > 1:
        label_map: dict[str, list[int]] = {}
        for i, s in active.items():
            for label in s:
                label_map.setdefault(label, []).append(i)
        candidates = {
            (min(ids), max(ids)) for ids in label_map.values() if len(ids) == 2
        }
        if not candidates:
            ids = sorted(active)
            ranked = sorted(ids, key=lambda i: (len(active[i]), i))
            pair = (min(ranked[0], ranked[1]), max(ranked[0], ranked[1]))
        else:
            best_key, pair = None, None
            for i, j in sorted(candidates):
                key = float(len(active[i] | active[j]))
                if noise > 0 and rng is not None:
                    key += noise * rng.gumbel()
                if best_key is None or key < best_key:
                    best_key, pair = key, (i, j)
        i, j = pair
        a, b = active.pop(i), active.pop(j)
        flops += pair_cost(a, b)
        out = a ^ b
        peak = max(peak, 1 << len(out))
        active[next_id] = out
        steps.append((i, j))
        next_id += 1

    return tuple(steps), max(flops, 1), peak


def find_path(net: TensorNetwork, cfg: PathfinderConfig) -> ContractionPlan:
    """Best-of-``num_samples`` randomized greedy search, deterministic in
    ``cfg.seed``.  Sample 0 always runs pure greedy as a baseline."""
    if not net.tensors:
        raise StructuralError("cannot plan an empty network")
    sets = _index_sets(net)
    best: tuple[int, int, tuple, int] | None = None  # (flops, sample, steps, peak)
    for sample in range(cfg.num_samples):
        if sample == 0:
            steps, flops, peak = _greedy_descent(sets, 0.0, None)
        else:
            rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, sample)))
            steps, flops, peak = _greedy_descent(sets, cfg.greedy_noise, rng)
        key = (flops, sample)
        if best is None or key < (best[0], best[1]):
            best = (flops, sample, steps, peak)
    return ContractionPlan(
        num_tensors=len(net.tensors),
        steps=best[2],
        est_flops=best[0],
        est_peak_elements=best[3],
    )


def replay_cost(net: TensorNetwork, plan: ContractionPlan) -> tuple[int, int]:
    """Recompute (est_flops, est_peak) of ``plan`` on ``net``; slicing-aware."""
    drop = frozenset(plan.sliced_labels)
    return _replay(plan.num_tensors, plan.steps, _index_sets(net, drop))


def _check_plan(net: TensorNetwork, plan: ContractionPlan) -> None:
    if plan.num_tensors != len(net.tensors):
        raise StructuralError(
            f"plan is for {plan.num_tensors} tensors, network has {len(net.tensors)}"
        )
    if len(plan.steps) != max(len(net.tensors) - 1, 0):
        raise StructuralError("plan is not a full binary contraction")
    live = set(range(len(net.tensors)))
    next_id = len(net.tensors)
    for i, j in plan.steps:
        if i not in live or j not in live or i == j:
            raise StructuralError(f"step ({i}, {j}) references unavailable tensors")
        live.discard(i)
        live.discard(j)
        live.add(next_id)
        next_id += 1


def contract(net: TensorNetwork, plan: ContractionPlan) -> Tensor:
    """Execute an unsliced plan; the value is plan-independent."""
    if plan.sliced_labels:
        raise StructuralError("plan has sliced labels; use contract_sliced")
    return _contract_assignment(net, plan, {})


def _contract_assignment(
    net: TensorNetwork, plan: ContractionPlan, assignment: dict[str, int]
) -> Tensor:
    _check_plan(net, plan)
    buf: dict[int, Tensor] = {
        i: (t.sliced(assignment) if assignment else t) for i, t in enumerate(net.tensors)
    }
    if not plan.steps:
        return next(iter(buf.values()))
    next_id = plan.num_tensors
    out = None
    for i, j in plan.steps:
        out = contract_pair(buf.pop(i), buf.pop(j))
        buf[next_id] = out
        next_id += 1
    return out


def slice_assignments(plan: ContractionPlan):
    """All value assignments of the plan's sliced labels."""
    labels = plan.sliced_labels
    for bits in itertools.product((0, 1), repeat=len(labels)):
        yield dict(zip(labels, bits))


def contract_one_slice(
    net: TensorNetwork, plan: ContractionPlan, assignment: dict[str, int]
) -> Tensor:
    return _contract_assignment(net, plan, assignment)


def contract_sliced(net: TensorNetwork, plan: ContractionPlan) -> Tensor:
    """Sum of all slice contractions; equals the unsliced result."""
    total = None
    for assignment in slice_assignments(plan):
        part = _contract_assignment(net, plan, assignment)
        total = part if total is None else Tensor(part.indices, total.data + part.data)
    return total


def choose_slices(
    net: TensorNetwork, plan: ContractionPlan, target_slices: int
) -> ContractionPlan:
    """Pick log2(target_slices) labels to slice, greedily minimizing the
    peak intermediate size (ties: larger FLOP reduction, then label order)."""
    if target_slices < 1 or target_slices & (target_slices - 1):
        raise ConfigError(f"target_slices must be a power of two >= 1, got {target_slices}")
    wanted = int(math.log2(target_slices))
    candidates = sorted(net.all_labels() - set(net.open_indices) - set(plan.sliced_labels))
    chosen: list[str] = list(plan.sliced_labels)
    warning = False
    if wanted > len(candidates):
        warning = True

    for _ in range(wanted):
        if not candidates:
            warning = True
            break
        best = None
        for label in candidates:
            drop = frozenset(chosen) | {label}
            flops, peak = _replay(plan.num_tensors, plan.steps, _index_sets(net, drop))
            key = (peak, flops, label)
            if best is None or key < best[0]:
                best = (key, label)
        chosen.append(best[1])
        candidates.remove(best[1])

    drop = frozenset(chosen)
    per_slice_flops, peak = _replay(plan.num_tensors, plan.steps, _index_sets(net, drop))
    return replace(
        plan,
        sliced_labels=tuple(sorted(chosen)),
        slice_warning=warning,
        per_slice_flops=per_slice_flops,
        est_flops=per_slice_flops * (1 << len(chosen)),
        est_peak_elements=peak,
    )


# -- circuit-level entry points -----------------------------------------

DEFAULT_ENUMERATION_GUARD = 20


def _closed_network(
    c: Circuit, bitstring: str, preabsorb: bool
) -> tuple[TensorNetwork, list[int]]:
    """Closed network plus the positions of the closure tensors."""
    net = circuit_to_network(c, bitstring)
    n = c.num_qubits
    closures = list(range(len(net.tensors) - n, len(net.tensors)))
    if preabsorb:
        keep = frozenset(closures)
        net = absorb_small_tensors(net, max_rank=1, keep=keep)
        closures = list(range(len(net.tensors) - n, len(net.tensors)))
    return net, closures


def amplitude(
    c: Circuit,
    bitstring: str,
    cfg: PathfinderConfig | None = None,
    preabsorb: bool = True,
) -> complex:
    """Probability amplitude of ``bitstring`` via network contraction."""
    cfg = cfg or PathfinderConfig()
    net = circuit_to_network(c, bitstring)
    if preabsorb:
        net = absorb_small_tensors(net, max_rank=1)
    plan = find_path(net, cfg)
    result = contract(net, plan)
    return complex(result.data.reshape(()))


def reconstruct_distribution(
    c: Circuit,
    cfg: PathfinderConfig | None = None,
    preabsorb: bool = True,
    max_enumeration: int = DEFAULT_ENUMERATION_GUARD,
) -> OutputDistribution:
    """Close and contract the open indices over every bitstring.

    One plan is found on the first closure and reused: the network structure
    is bitstring-independent, only the closure vectors change.
    """
    n = c.num_qubits
    if n > max_enumeration:
        required = (1 << n) * 16
        raise CapacityError(
            f"enumerating 2^{n} bitstrings needs {required} bytes of output; "
            f"raise max_enumeration to allow it",
            required_bytes=required,
        )
    cfg = cfg or PathfinderConfig()
    net, closures = _closed_network(c, "0" * n, preabsorb)
    plan = find_path(net, cfg)
    probs = np.zeros(1 << n, dtype=float)
    for idx in range(1 << n):
        bits = index_to_bitstring(idx, n)
        for q, pos in enumerate(closures):
            old = net.tensors[pos]
            net.tensors[pos] = Tensor(old.indices, _BASIS[int(bits[q])].conj())
        amp = complex(contract(net, plan).data.reshape(()))
        probs[idx] = abs(amp) ** 2
    return OutputDistribution(n, probs)
