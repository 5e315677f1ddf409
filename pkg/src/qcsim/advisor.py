"""Metric-driven backend selection.

Rule table (evaluated in order, strict inequalities, boundaries fall
through):

* R1: entanglement variance > 0.2            -> statevector
* R2: effective entanglement ratio > 0.5     -> statevector
* R3: (PC > 0.9 and CD < 0.2) or
      (PC < 0.15 and CD > 0.9)               -> tensornet
* R4: otherwise                              -> either (no decisive rule)

R2 uses the effective entanglement ratio, in which runs of multi-qubit gates
on one pair count once: repeated same-pair constructions (e.g. a
CNOT-RZ-CNOT phase block) cost like a single entangling tensor once the
rank-1/rank-2 neighbours are absorbed, and the raw ratio would misjudge
them.

Independently of the backend pick:

* distributed slicing pays off when the interaction graph is dense:
  ``distributed_benefit = high`` iff PC >= 0.9;
* pathfinding economics: ER >= 0.85 -> unbounded (more pathfinding samples
  keep improving contraction), ER <= 0.4 -> bounded, split by CD >= 0.9
  into pathfinding_bound (flat landscape) vs contraction_bound; anything
  else is unknown.

The unbounded cutoff is 0.85 rather than a round 0.9: the benchmark suite's
ER values cluster either above 0.89 (phase-estimation/Fourier style, which
demonstrably benefit) or below 0.65, so 0.85 separates the regimes with
margin on both sides.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .circuit import Circuit
from .metrics import MetricsReport, compute_all

EV_STATEVECTOR_THRESHOLD = 0.2
ER_STATEVECTOR_THRESHOLD = 0.5
PC_HIGH = 0.9
PC_LOW = 0.15
CD_LOW = 0.2
CD_HIGH = 0.9
ER_UNBOUNDED = 0.85
ER_BOUNDED = 0.4


class Backend(Enum):
    STATEVECTOR = "statevector"
    TENSORNET = "tensornet"
    EITHER = "either"


class DistributedBenefit(Enum):
    HIGH = "high"
    LOW = "low"


class PathfindingClass(Enum):
    PATHFINDING_BOUND = "pathfinding_bound"
    CONTRACTION_BOUND = "contraction_bound"
    UNBOUNDED = "unbounded"
    UNKNOWN = "unknown"


@dataclass
class Recommendation:
    backend: Backend
    distributed_benefit: DistributedBenefit
    pathfinding_class: PathfindingClass
    rationale: list[str] = field(default_factory=list)
    metrics: MetricsReport | None = None

    def to_dict(self) -> dict:
        return {
            "backend": self.backend.value,
            "distributed_benefit": self.distributed_benefit.value,
            "pathfinding_class": self.pathfinding_class.value,
            "rationale": list(self.rationale),
            "metrics": self.metrics.to_dict() if self.metrics else None,
        }


def recommend(report: MetricsReport, n: int) -> Recommendation:
    """Apply the rule table to a metrics report."""
    rationale: list[str] = []
    ev = report.entanglement_variance
    er = report.entanglement_ratio
    er_eff = report.entanglement_ratio_effective
    pc = report.program_communication
    cd = report.critical_depth

    needed = {"entanglement_variance": ev, "entanglement_ratio": er,
              "program_communication": pc, "critical_depth": cd}
    missing = [name for name, value in needed.items() if value is None]
    if missing:
        rationale.append(f"metrics absent ({', '.join(missing)}); no rule can fire")
        backend = Backend.EITHER
    elif ev > EV_STATEVECTOR_THRESHOLD:
        rationale.append(
            f"R1: entanglement variance {ev:.3f} > {EV_STATEVECTOR_THRESHOLD} "
            "(unbalanced entanglement hinders pathfinding) -> statevector"
        )
        backend = Backend.STATEVECTOR
    elif er_eff > ER_STATEVECTOR_THRESHOLD:
        rationale.append(
            f"R2: effective entanglement ratio {er_eff:.3f} > {ER_STATEVECTOR_THRESHOLD} "
            "(mostly multi-qubit gates grow intermediates early) -> statevector"
        )
        backend = Backend.STATEVECTOR
    elif (pc > PC_HIGH and cd < CD_LOW) or (pc < PC_LOW and cd > CD_HIGH):
        rationale.append(
            f"R3: program communication {pc:.3f} and critical depth {cd:.3f} are "
            f"opposite (> {PC_HIGH} with < {CD_LOW}, or < {PC_LOW} with > {CD_HIGH}); "
            "the network contracts like a pseudo-regular grid -> tensornet"
        )
        backend = Backend.TENSORNET
    else:
        rationale.append("R4: no decisive rule -> either")
        backend = Backend.EITHER

    if pc is not None and pc >= PC_HIGH:
        benefit = DistributedBenefit.HIGH
        rationale.append(
            f"distributed slicing: program communication {pc:.3f} >= {PC_HIGH} -> high benefit"
        )
    else:
        benefit = DistributedBenefit.LOW
        shown = "absent" if pc is None else f"{pc:.3f}"
        rationale.append(
            f"distributed slicing: program communication {shown} < {PC_HIGH} -> low benefit"
        )

    if er is None or cd is None:
        pclass = PathfindingClass.UNKNOWN
        rationale.append("pathfinding class: metrics absent -> unknown")
    elif er >= ER_UNBOUNDED:
        pclass = PathfindingClass.UNBOUNDED
        rationale.append(
            f"pathfinding class: entanglement ratio {er:.3f} >= {ER_UNBOUNDED} -> unbounded"
        )
    elif er <= ER_BOUNDED:
        if cd >= CD_HIGH:
            pclass = PathfindingClass.PATHFINDING_BOUND
            rationale.append(
                f"pathfinding class: entanglement ratio {er:.3f} <= {ER_BOUNDED} and "
                f"critical depth {cd:.3f} >= {CD_HIGH} (flat landscape) -> pathfinding_bound"
            )
        else:
            pclass = PathfindingClass.CONTRACTION_BOUND
            rationale.append(
                f"pathfinding class: entanglement ratio {er:.3f} <= {ER_BOUNDED} and "
                f"critical depth {cd:.3f} < {CD_HIGH} -> contraction_bound"
            )
    else:
        pclass = PathfindingClass.UNKNOWN
        rationale.append(
            f"pathfinding class: entanglement ratio {er:.3f} between {ER_BOUNDED} "
            f"and {ER_UNBOUNDED} -> unknown"
        )

    return Recommendation(backend, benefit, pclass, rationale, report)


def advise_circuit(c: Circuit) -> Recommendation:
    """Compute metrics, then recommend."""
    return recommend(compute_all(c), c.num_qubits)
