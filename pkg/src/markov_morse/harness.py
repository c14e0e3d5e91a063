"""Empirical stability and invariant harness over random chains.

Random row-stochastic matrices probe two things: that the pipeline's
structural invariants (partition validity, coarsening, containment, dual
homology routes) hold on inputs nobody hand-picked, and that the bottleneck
distance between a chain's diagram and a perturbed chain's diagram respects
the proved bounds — d_B at most the measured entrywise matrix distance for a
single compensated edit, and strictly below l * delta for l edits capped by
delta. Every sample is seed-deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bottleneck import bottleneck_distance
from .cells import closure
from .homology import homology_dims, homology_dims_by_components
from .markov import (
    PerturbationSpec,
    TransitionMatrix,
    matrix_distance,
    perturb,
    serialize_matrix,
)
from .mvf import is_coarsening, is_valid_mvf
from .persistence import build_diagram, containment_map, run_filtration


@dataclass(frozen=True)
class RandomChainSpec:
    """Sampling parameters for one random chain."""

    n: int
    density: float = 0.7
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one state")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must be in [0, 1]")


def random_chain(spec: RandomChainSpec) -> TransitionMatrix:
    """Seed-deterministic random chain.

    Each off-diagonal entry receives Uniform(0,1) mass with probability
    `density`; diagonals always receive positive mass; rows are normalized.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    weights = rng.uniform(0.0, 1.0, size=(n, n))
    mask = rng.uniform(0.0, 1.0, size=(n, n)) < spec.density
    np.fill_diagonal(mask, True)
    weights *= mask
    diag = rng.uniform(0.2, 1.0, size=n)
    weights[np.eye(n, dtype=bool)] = diag
    weights /= weights.sum(axis=1, keepdims=True)
    return TransitionMatrix(weights)


def _sample_perturbation(
    P: TransitionMatrix,
    rng: np.random.Generator,
    delta_cap: float,
    strict: bool,
    forbid: frozenset[tuple[int, int]] = frozenset(),
) -> PerturbationSpec | None:
    """One feasible compensated perturbation, or None.

    Keeps the target entry strictly positive (no edge is created or
    destroyed) and avoids exact collisions with other off-diagonal values so
    the generic, tie-free regime is sampled; ties get their own tests.
    """
    n = P.n
    candidates = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j and P.prob(i, j) > 0.0 and (i, j) not in forbid
    ]
    if not candidates:
        return None
    others = {
        float(v) for k, row in enumerate(P.entries) for m, v in enumerate(row) if k != m
    }
    order = rng.permutation(len(candidates))
    high = 0.99 * delta_cap if strict else delta_cap
    for k in order:
        i, j = candidates[int(k)]
        value = P.prob(i, j)
        magnitude = float(rng.uniform(0.01 * delta_cap, high))
        for sign in rng.permutation([1.0, -1.0]):
            delta = float(sign) * magnitude
            new_val = value + delta
            if not 0.0 < new_val <= 1.0:
                continue
            if not 0.0 <= P.prob(i, i) - delta <= 1.0:
                continue
            if new_val in others:
                continue
            return PerturbationSpec(i, j, delta)
    return None


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    n: int
    targets: tuple[tuple[int, int], ...]
    deltas: tuple[float, ...]
    delta_measured: float
    l: int
    bound: float
    d_b: float
    violation: bool

    def as_dict(self) -> dict:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "n": self.n,
            "targets": [list(t) for t in self.targets],
            "deltas": list(self.deltas),
            "delta_measured": self.delta_measured,
            "l": self.l,
            "bound": self.bound,
            "d_b": self.d_b,
            "violation": self.violation,
        }


@dataclass(frozen=True)
class StabilityReport:
    mode: str
    trials: int
    violations: int
    worst_ratio: float
    records: tuple[TrialRecord, ...]
    counterexamples: tuple[dict, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "trials": self.trials,
            "violations": self.violations,
            "worst_ratio": self.worst_ratio,
            "records": [r.as_dict() for r in self.records],
            "counterexamples": list(self.counterexamples),
        }


def stability_trials(
    source: TransitionMatrix | RandomChainSpec,
    trials: int,
    *,
    n_entries: int = 1,
    delta_cap: float = 0.05,
    seed: int | None = None,
) -> StabilityReport:
    """Perturb-and-compare trials.

    Single mode (n_entries=1): one compensated off-diagonal edit per trial;
    a violation is d_B strictly above the measured matrix distance. Multi
    mode (n_entries=l>1): l edits each strictly below delta_cap; a violation
    is d_B >= l * delta_cap.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if n_entries < 1:
        raise ValueError("n_entries must be >= 1")
    fixed = isinstance(source, TransitionMatrix)
    if seed is None:
        seed = 0 if fixed else source.seed
    master = np.random.default_rng(seed)
    mode = "single" if n_entries == 1 else "multi"
    records = []
    counterexamples = []
    worst = 0.0
    violations = 0
    trial = 0
    attempts = 0
    while trial < trials:
        attempts += 1
        if attempts > 50 * trials:
            raise RuntimeError("could not sample feasible perturbations")
        trial_seed = int(master.integers(2**63))
        rng = np.random.default_rng(trial_seed)
        if fixed:
            P = source
        else:
            P = random_chain(RandomChainSpec(source.n, source.density, trial_seed))
        Q = P
        specs: list[PerturbationSpec] = []
        forbid: set[tuple[int, int]] = set()
        for _ in range(n_entries):
            s = _sample_perturbation(Q, rng, delta_cap, strict=(mode == "multi"), forbid=frozenset(forbid))
            if s is None:
                break
            Q = perturb(Q, s)
            specs.append(s)
            forbid.add((s.row, s.col))
        if len(specs) < n_entries:
            if fixed:
                raise ValueError("matrix does not admit the requested perturbations")
            continue  # resample a fresh chain
        dist = matrix_distance(P, Q)
        d_b = bottleneck_distance(build_diagram(run_filtration(P)), build_diagram(run_filtration(Q)))
        if mode == "single":
            bound = dist.delta_inf
            violated = d_b > bound
        else:
            bound = n_entries * delta_cap
            violated = d_b >= bound
        worst = max(worst, d_b / bound if bound > 0 else 0.0)
        rec = TrialRecord(
            trial=trial,
            seed=trial_seed,
            n=P.n,
            targets=tuple((s.row, s.col) for s in specs),
            deltas=tuple(s.delta for s in specs),
            delta_measured=dist.delta_inf,
            l=n_entries,
            bound=bound,
            d_b=d_b,
            violation=violated,
        )
        records.append(rec)
        if violated:
            violations += 1
            counterexamples.append(
                {
                    "trial": trial,
                    "matrix": serialize_matrix(P),
                    "perturbed": serialize_matrix(Q),
                }
            )
        trial += 1
    return StabilityReport(mode, trials, violations, worst, tuple(records), tuple(counterexamples))


@dataclass(frozen=True)
class PropertyReport:
    trials: int
    violations: int
    checks: dict[str, int]
    failures: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "violations": self.violations,
            "checks": dict(self.checks),
            "failures": list(self.failures),
        }


def property_trials(spec: RandomChainSpec, trials: int) -> PropertyReport:
    """Structural invariants of the full pipeline over random chains.

    Per chain and stage: the field partitions the complex into locally
    closed parts; consecutive stages coarsen; Morse sets nest into exactly
    one successor; homology via GF(2) rank agrees with the component-count
    formulas; the diagram's immortal points equal the final stage's Morse
    sets and every death exceeds its birth.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    master = np.random.default_rng(spec.seed)
    checks = {
        "valid_field": 0,
        "coarsening": 0,
        "containment": 0,
        "homology_dual_route": 0,
        "diagram_shape": 0,
    }
    failures = []
    for trial in range(trials):
        trial_seed = int(master.integers(2**63))
        P = random_chain(RandomChainSpec(spec.n, spec.density, trial_seed))
        F = run_filtration(P)
        tag = f"trial {trial} (seed {trial_seed})"
        for stage in F.stages:
            if is_valid_mvf(stage.field, F.complex):
                checks["valid_field"] += 1
            else:
                failures.append(f"{tag}: invalid field at gamma={stage.gamma}")
            for m in stage.morse_sets:
                cl = closure(F.complex, m.cells)
                if homology_dims(F.complex, cl) == homology_dims_by_components(F.complex, cl):
                    checks["homology_dual_route"] += 1
                else:
                    failures.append(f"{tag}: homology route mismatch at gamma={stage.gamma}")
        for prev, nxt in zip(F.stages, F.stages[1:]):
            if is_coarsening(nxt.field, prev.field):
                checks["coarsening"] += 1
            else:
                failures.append(f"{tag}: no coarsening {prev.gamma} -> {nxt.gamma}")
            try:
                containment_map(prev, nxt)
                checks["containment"] += 1
            except RuntimeError as exc:
                failures.append(f"{tag}: {exc}")
        D = build_diagram(F)
        immortal = sum(1 for p in D.points if math.isinf(p.death))
        if immortal == len(F.stages[-1].morse_sets) and all(p.death > p.birth for p in D.points):
            checks["diagram_shape"] += 1
        else:
            failures.append(f"{tag}: diagram shape violation")
    return PropertyReport(trials, len(failures), checks, tuple(failures))
