"""Method-of-steps integration of x'(t) = -(Tx)(t) and trajectory classification.

The integrator is classical fixed-step RK4.  Because the response operator
reads only strictly delayed values (tau(t) <= t - min_lag and the step rule
enforces step <= min_lag / 4), the stage derivatives do not depend on the
current state, the two middle stages coincide, and every delayed read falls
inside the already-computed part of the trajectory: no implicitness.
Delayed reads use cubic Hermite interpolation of the stored value and
derivative samples by default, which preserves the fourth-order accuracy;
linear interpolation is available for cross-checks.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .criterion import (
    LiminfEstimate,
    Verdict,
    VerdictOutcome,
    estimate_liminf_w,
    theorem_verdict,
)
from .errors import (
    HistoryCoverageError,
    HistoryDomainError,
    InvalidParameterError,
    StepSizeError,
)
from .operators import AmnesiaOperator, AuditReport, HistoryFunction, audit_sign_bound, random_history


class Interpolation(Enum):
    LINEAR = "linear"
    CUBIC_HERMITE = "cubic_hermite"


@dataclass(frozen=True)
class SimulationConfig:
    t_end: float
    step: float
    interpolation: Interpolation = Interpolation.CUBIC_HERMITE
    overflow_guard: float = 1e12

    def __post_init__(self):
        if self.t_end <= 0.0:
            raise InvalidParameterError(f"t_end must be positive, got {self.t_end}")
        if self.step <= 0.0:
            raise InvalidParameterError(f"step must be positive, got {self.step}")
        if self.overflow_guard <= 0.0:
            raise InvalidParameterError(f"overflow_guard must be positive, got {self.overflow_guard}")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled solution: times k*step, values x, derivatives x'.

    ``derivative_values[k]`` is -(Tx)(times[k]) evaluated against the dense
    history available at that node.  ``overflowed`` marks a run halted early
    because |x| passed the overflow guard (or the operator evaluation
    overflowed); the arrays then end at the offending sample.
    """

    times: np.ndarray
    values: np.ndarray
    derivative_values: np.ndarray
    config: SimulationConfig
    operator_label: str = ""
    overflowed: bool = False

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    @property
    def final_value(self) -> float:
        return float(self.values[-1])


def integrate(
    op: AmnesiaOperator,
    initial_history: HistoryFunction,
    config: SimulationConfig,
) -> Trajectory:
    """Integrate x'(t) = -(Tx)(t) on [0, t_end] from the given history.

    The initial history must cover [sigma(0), 0].  For operators with a known
    ``min_lag`` the step rule step <= min_lag / 4 is enforced up front; it
    guarantees that every delayed read lies at or before the last completed
    node.  Integration halts early, with the trajectory flagged, as soon as
    |x| exceeds ``config.overflow_guard`` or an operator evaluation overflows.
    """
    h = config.step
    if op.min_lag is not None and h > op.min_lag / 4.0 + 1e-12:
        raise StepSizeError(
            f"step {h} exceeds min_lag/4 = {op.min_lag / 4.0} for operator {op.label!r}"
        )
    n = int(math.floor(config.t_end / h + 1e-9))
    if n < 1:
        raise InvalidParameterError(f"t_end {config.t_end} is shorter than one step {h}")

    sigma0 = op.sigma(0.0)
    if sigma0 < initial_history.domain_start - 1e-9 * max(1.0, abs(sigma0)):
        raise HistoryCoverageError(
            f"initial history starts at {initial_history.domain_start} but the operator "
            f"reads back to sigma(0) = {sigma0}"
        )

    times = np.arange(n + 1) * h
    x = np.zeros(n + 1)
    dx = np.zeros(n + 1)
    frontier = 0  # index of the last computed node
    hermite = config.interpolation is Interpolation.CUBIC_HERMITE

    def read(t: float) -> float:
        if t <= 0.0:
            return initial_history(t)
        if t > frontier * h + 1e-9 * max(1.0, t):
            raise HistoryDomainError(
                f"delayed read at t={t} is ahead of the computed trajectory "
                f"(frontier {frontier * h}); decrease the step"
            )
        j = min(int(t / h), frontier - 1)
        j = max(j, 0)
        theta = (t - j * h) / h
        if not hermite:
            return x[j] * (1.0 - theta) + x[j + 1] * theta
        h00 = (1.0 + 2.0 * theta) * (1.0 - theta) ** 2
        h10 = theta * (1.0 - theta) ** 2
        h01 = theta * theta * (3.0 - 2.0 * theta)
        h11 = theta * theta * (theta - 1.0)
        return x[j] * h00 + h * dx[j] * h10 + x[j + 1] * h01 + h * dx[j + 1] * h11

    reader = HistoryFunction(read, initial_history.domain_start, float(times[-1]))

    x[0] = initial_history(0.0)
    dx[0] = -op.evaluate(0.0, reader)

    overflowed = False
    last = n
    comp = 0.0  # Kahan compensation keeps the state accumulation at truncation level
    for k in range(n):
        frontier = k
        t = float(times[k])
        f0 = dx[k]
        try:
            fmid = -op.evaluate(t + 0.5 * h, reader)
            fend = -op.evaluate(t + h, reader)
        except OverflowError:
            overflowed = True
            last = k
            break
        # RK4 with state-independent stages: k2 = k3 = fmid, Simpson update.
        incr = (h / 6.0) * (f0 + 4.0 * fmid + fend) - comp
        s = x[k] + incr
        comp = (s - x[k]) - incr
        x[k + 1] = s
        dx[k + 1] = fend
        if not math.isfinite(s) or abs(s) > config.overflow_guard:
            overflowed = True
            last = k + 1
            break

    return Trajectory(
        times=times[: last + 1],
        values=x[: last + 1],
        derivative_values=dx[: last + 1],
        config=config,
        operator_label=op.label,
        overflowed=overflowed,
    )


class SolutionClassification(Enum):
    OSCILLATORY = "oscillatory"
    MONOTONE_TO_ZERO = "monotone_to_zero"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SolutionClass:
    """Trajectory classification against the oscillate-or-decay dichotomy.

    ``sign_changes`` counts strict sign changes after the transient cutoff
    (isolated zeros between same-signed neighbors are tangencies, not
    crossings); ``zero_crossings`` lists crossing times over the whole run.
    """

    classification: SolutionClassification
    zero_crossings: tuple[float, ...]
    final_value: float
    tail_monotone: bool
    sign_changes: int
    decay_tol: float


def zero_crossings(traj: Trajectory) -> list[float]:
    """Times where the sampled solution changes strict sign.

    Crossings between samples are located by linear interpolation; exact-zero
    samples are reported at their own timestamp, with runs of consecutive
    zeros collapsed to their first time.
    """
    ts = traj.times
    vs = traj.values
    out: list[float] = []
    in_zero_run = False
    for k in range(len(vs)):
        if vs[k] == 0.0:
            if not in_zero_run:
                out.append(float(ts[k]))
                in_zero_run = True
            continue
        in_zero_run = False
        if k + 1 < len(vs) and vs[k + 1] != 0.0 and vs[k] * vs[k + 1] < 0.0:
            frac = vs[k] / (vs[k] - vs[k + 1])
            out.append(float(ts[k] + frac * (ts[k + 1] - ts[k])))
    return out


def _tail_sign_changes(values: np.ndarray) -> int:
    changes = 0
    prev = 0
    for v in values:
        if v == 0.0:
            continue
        s = 1 if v > 0.0 else -1
        if prev != 0 and s != prev:
            changes += 1
        prev = s
    return changes


def classify(
    traj: Trajectory,
    transient_fraction: float = 0.25,
    decay_tol: Optional[float] = None,
) -> SolutionClass:
    """Classify the tail (t >= transient_fraction * final time) of a trajectory.

    Oscillatory needs at least two strict sign changes in the tail.
    MonotoneToZero needs a one-signed tail, nonincreasing in magnitude, with
    |final value| below ``decay_tol`` (default: 1e-6 times the peak magnitude
    over the transient).  Anything failing both patterns is Inconclusive.
    Scaling the values by a positive constant changes neither the class nor
    the crossing times.
    """
    if traj.overflowed:
        raise InvalidParameterError("cannot classify an overflow-flagged trajectory")
    if not 0.0 <= transient_fraction < 1.0:
        raise InvalidParameterError(f"transient_fraction must be in [0, 1), got {transient_fraction}")

    ts = traj.times
    vs = traj.values
    cutoff = transient_fraction * float(ts[-1])
    tail_mask = ts >= cutoff - 1e-12
    tail = vs[tail_mask]

    transient = vs[~tail_mask]
    scale_pool = transient if transient.size else vs
    scale = float(np.max(np.abs(scale_pool)))
    if decay_tol is None:
        decay_tol = 1e-6 * max(scale, 5e-324)

    changes = _tail_sign_changes(tail)
    abs_tail = np.abs(tail)
    tail_monotone = bool(np.all(np.diff(abs_tail) <= 1e-12 * max(scale, 1e-300)))
    signs = {1 if v > 0 else -1 for v in tail if v != 0.0}
    one_signed = len(signs) <= 1
    final_value = float(vs[-1])

    if changes >= 2:
        cls = SolutionClassification.OSCILLATORY
    elif changes == 0 and one_signed and tail_monotone and abs(final_value) < decay_tol:
        cls = SolutionClassification.MONOTONE_TO_ZERO
    else:
        cls = SolutionClassification.INCONCLUSIVE

    return SolutionClass(
        classification=cls,
        zero_crossings=tuple(zero_crossings(traj)),
        final_value=final_value,
        tail_monotone=tail_monotone,
        sign_changes=changes,
        decay_tol=float(decay_tol),
    )


@dataclass(frozen=True, eq=False)
class ConcordanceReport:
    """Criterion verdict side by side with an ensemble of simulated solutions.

    ``discordant_runs`` counts completed runs whose class contradicts a
    GUARANTEED verdict: Inconclusive with a one-signed tail bounded away
    from zero.  Overflowed runs cannot be classified and are only counted.
    """

    verdict: Verdict
    estimate: LiminfEstimate
    classes: tuple[SolutionClass, ...]
    seeds: tuple[int, ...]
    overflowed_runs: int
    discordant_runs: int
    concordant: bool
    audit: AuditReport
    trajectories: tuple[Trajectory, ...] = ()


def concordance_experiment(
    op: AmnesiaOperator,
    config: SimulationConfig,
    *,
    n_histories: int = 10,
    seed: int = 0,
    history_amplitude: float = 1.0,
    transient_fraction: float = 0.25,
    criterion_t_start: Optional[float] = None,
    criterion_t_end: Optional[float] = None,
    audit_trials: int = 5,
    keep_trajectories: bool = False,
) -> ConcordanceReport:
    """Estimate w for the operator's bound, then simulate seeded random histories.

    The operator must pass its sign-bound audit (a sampled audit runs first
    and raises on violations, since the criterion hypothesis would be void).
    Histories are truncated Fourier sums seeded with seed, seed+1, ...; the
    report is deterministic for fixed arguments.
    """
    if n_histories < 1:
        raise InvalidParameterError(f"n_histories must be >= 1, got {n_histories}")
    if op.bound_b is None:
        raise InvalidParameterError("operator has no bound_b; the criterion needs one")

    lag0 = -op.sigma(0.0)
    if not lag0 > 0.0:
        raise InvalidParameterError("operator must read strictly into the past at t = 0")
    t0 = criterion_t_start if criterion_t_start is not None else 2.0 * lag0
    t1 = criterion_t_end if criterion_t_end is not None else t0 + max(config.t_end, 10.0 * lag0)

    audit = audit_sign_bound(
        op,
        t_samples=np.linspace(t0, t1, 8),
        trials=audit_trials,
        seed=seed,
    )
    if not audit.passed:
        raise InvalidParameterError(
            f"operator {op.label!r} violates its sign bound on {len(audit.violations)} "
            f"sampled pairs (worst margin {audit.worst_margin:.3g}); criterion not applicable"
        )

    estimate = estimate_liminf_w(op.bound_b, op.tau, t0, t1)
    verdict = theorem_verdict(estimate)

    classes: list[SolutionClass] = []
    kept: list[Trajectory] = []
    seeds = tuple(seed + i for i in range(n_histories))
    overflowed = 0
    discordant = 0
    for s in seeds:
        hist = random_history(s, sigma_pad_start(op), 0.0, amplitude=history_amplitude)
        traj = integrate(op, hist, config)
        if keep_trajectories:
            kept.append(traj)
        if traj.overflowed:
            overflowed += 1
            continue
        cls = classify(traj, transient_fraction)
        classes.append(cls)
        if (
            verdict.outcome is VerdictOutcome.GUARANTEED
            and cls.classification is SolutionClassification.INCONCLUSIVE
            and cls.sign_changes == 0
            and abs(cls.final_value) >= cls.decay_tol
        ):
            discordant += 1

    return ConcordanceReport(
        verdict=verdict,
        estimate=estimate,
        classes=tuple(classes),
        seeds=seeds,
        overflowed_runs=overflowed,
        discordant_runs=discordant,
        concordant=discordant == 0,
        audit=audit,
        trajectories=tuple(kept),
    )


def sigma_pad_start(op: AmnesiaOperator) -> float:
    """Start of an initial-history domain safely covering [sigma(0), 0]."""
    sigma0 = op.sigma(0.0)
    return sigma0 - 1e-6 * max(1.0, abs(sigma0))
