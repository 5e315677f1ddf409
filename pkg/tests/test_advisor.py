import numpy as np
import pytest

from qcsim.advisor import (
    Backend,
    DistributedBenefit,
    PathfindingClass,
    advise_circuit,
    recommend,
)
from qcsim.circuit import Circuit
from qcsim.generators import Family, GeneratorSpec, generate
from qcsim.metrics import MetricsReport, compute_all


def report(ev=0.0, er=0.3, er_eff=None, pc=0.5, cd=0.5, p=0.5) -> MetricsReport:
    return MetricsReport(
        program_communication=pc,
        critical_depth=cd,
        entanglement_ratio=er,
        parallelism=p,
        entanglement_variance=ev,
        n_gates=100,
        n_two_qubit=int(er * 100),
        depth=10,
        n_two_qubit_effective=int((er_eff if er_eff is not None else er) * 100),
        entanglement_ratio_effective=er_eff if er_eff is not None else er,
    )


def test_r1_fires_before_r3():
    # EV wins even when the R3 pattern is present
    rec = recommend(report(ev=0.3, pc=1.0, cd=0.1), 16)
    assert rec.backend is Backend.STATEVECTOR
    assert rec.rationale[0].startswith("R1")


def test_r2_uses_effective_ratio():
    rec = recommend(report(er=0.64, er_eff=0.32, pc=1.0, cd=0.1), 16)
    assert rec.backend is Backend.TENSORNET  # R2 passed over, R3 fires
    plain = recommend(report(er=0.64, er_eff=0.64, pc=1.0, cd=0.1), 16)
    assert plain.backend is Backend.STATEVECTOR


def test_r3_both_arms():
    assert recommend(report(pc=0.95, cd=0.1), 16).backend is Backend.TENSORNET
    assert recommend(report(pc=0.05, cd=0.95), 16).backend is Backend.TENSORNET


def test_boundaries_fall_through():
    # strict inequalities: exactly-at-threshold values do not fire
    rec = recommend(report(ev=0.2, er=0.5, pc=0.9, cd=0.2), 16)
    assert rec.backend is Backend.EITHER


def test_r4_without_decisive_rule():
    rec = recommend(report(), 16)
    assert rec.backend is Backend.EITHER
    assert any("no decisive rule" in line for line in rec.rationale)


def test_distributed_benefit_threshold():
    assert recommend(report(pc=0.92), 16).distributed_benefit is DistributedBenefit.HIGH
    assert recommend(report(pc=0.5), 16).distributed_benefit is DistributedBenefit.LOW


def test_pathfinding_classes():
    assert recommend(report(er=0.95), 16).pathfinding_class is PathfindingClass.UNBOUNDED
    assert recommend(report(er=0.86), 16).pathfinding_class is PathfindingClass.UNBOUNDED
    assert (
        recommend(report(er=0.2, cd=0.95), 16).pathfinding_class
        is PathfindingClass.PATHFINDING_BOUND
    )
    assert (
        recommend(report(er=0.2, cd=0.2), 16).pathfinding_class
        is PathfindingClass.CONTRACTION_BOUND
    )
    assert recommend(report(er=0.6), 16).pathfinding_class is PathfindingClass.UNKNOWN


def test_rationale_is_auditable():
    rec = recommend(report(ev=0.25), 16)
    assert rec.rationale
    # each fired rule names the metric value and its threshold
    assert "0.250" in rec.rationale[0] and "0.2" in rec.rationale[0]


def test_absent_metrics_give_either():
    rec = advise_circuit(Circuit(3))
    assert rec.backend is Backend.EITHER
    assert rec.pathfinding_class is PathfindingClass.UNKNOWN
    assert any("absent" in line for line in rec.rationale)


def test_bell_is_either(bell):
    rec = advise_circuit(bell)
    assert rec.backend is Backend.EITHER


def test_determinism():
    r = report(ev=0.21)
    a, b = recommend(r, 8), recommend(r, 8)
    assert a.to_dict() == b.to_dict()


# -- benchmark fixtures -----------------------------------------------------


def test_generated_benchmark_recommendations():
    for family in (Family.VQE, Family.HAMILTONIAN, Family.QAOA):
        rec = advise_circuit(generate(GeneratorSpec(family, 32)))
        assert rec.backend is Backend.TENSORNET, family


def averaged_random_report(n: int, seeds: int = 100) -> MetricsReport:
    reports = [
        compute_all(generate(GeneratorSpec(Family.RANDOM, n, seed=s)))
        for s in range(seeds)
    ]

    def mean(name):
        return float(np.mean([getattr(r, name) for r in reports]))

    return MetricsReport(
        program_communication=mean("program_communication"),
        critical_depth=mean("critical_depth"),
        entanglement_ratio=mean("entanglement_ratio"),
        parallelism=mean("parallelism"),
        entanglement_variance=mean("entanglement_variance"),
        n_gates=reports[0].n_gates,
        n_two_qubit=reports[0].n_two_qubit,
        depth=reports[0].depth,
        n_two_qubit_effective=reports[0].n_two_qubit_effective,
        entanglement_ratio_effective=mean("entanglement_ratio_effective"),
    )


def test_random_28_recommends_statevector():
    rec = recommend(averaged_random_report(28), 28)
    assert rec.backend is Backend.STATEVECTOR
    assert rec.rationale[0].startswith("R1")


def test_pathfinding_class_fixtures():
    assert (
        advise_circuit(generate(GeneratorSpec(Family.QFT, 32))).pathfinding_class
        is PathfindingClass.UNBOUNDED
    )
    assert (
        advise_circuit(generate(GeneratorSpec(Family.QPE, 32))).pathfinding_class
        is PathfindingClass.UNBOUNDED
    )
    for family in (Family.VQE, Family.HAMILTONIAN):
        assert (
            advise_circuit(generate(GeneratorSpec(family, 32))).pathfinding_class
            is PathfindingClass.PATHFINDING_BOUND
        )


def test_distributed_benefit_fixtures():
    for family in (Family.QFT, Family.QPE, Family.QAOA):
        rec = advise_circuit(generate(GeneratorSpec(family, 32)))
        assert rec.distributed_benefit is DistributedBenefit.HIGH
    for family in (Family.VQE, Family.HAMILTONIAN):
        rec = advise_circuit(generate(GeneratorSpec(family, 32)))
        assert rec.distributed_benefit is DistributedBenefit.LOW
