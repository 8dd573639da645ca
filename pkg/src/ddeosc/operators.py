"""Response operators with limited memory for delay equations x'(t) + (Tx)(t) = 0.

An operator here is causal with *amnesia*: its value at time t depends on
the solution only through a window [sigma(t), tau(t)] strictly in the past
of t.  Two histories that agree on that window produce the same value.
Each operator carries a nonnegative rate function ``bound_b`` that is
supposed to satisfy, for histories of a single strict sign on [sigma(t), t],

    (Tx)(t) >= bound_b(t) * inf x    when x > 0,
    (Tx)(t) <= bound_b(t) * sup x    when x < 0,

with inf/sup taken over [sigma(t), t].  Linear operators with nonnegative
coefficients satisfy this automatically with bound_b equal to the
coefficient sum; for nonlinear kernels the bound is derived by hand and
supplied by the caller, and :func:`audit_sign_bound` spot-checks the claim
numerically.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import HistoryDomainError, InvalidParameterError
from .quadrature import simpson_nodes_weights

TimeFunction = Callable[[float], float]
DelayMap = Callable[[float, float], float]


class HistoryFunction:
    """An evaluable trajectory segment on [domain_start, domain_end].

    Evaluation outside the domain raises :class:`HistoryDomainError`; there
    is no extrapolation.  A small relative slack absorbs floating-point
    noise in delayed-time arithmetic, and in-slack arguments are clamped to
    the domain before the underlying callable sees them.
    """

    __slots__ = ("domain_start", "domain_end", "_fn")

    def __init__(self, fn: TimeFunction, domain_start: float, domain_end: float = 0.0):
        if not domain_start <= domain_end:
            raise InvalidParameterError(
                f"empty history domain [{domain_start}, {domain_end}]"
            )
        self.domain_start = float(domain_start)
        self.domain_end = float(domain_end)
        self._fn = fn

    def __call__(self, t: float) -> float:
        slack = 1e-9 * max(1.0, abs(t))
        if t < self.domain_start - slack or t > self.domain_end + slack:
            raise HistoryDomainError(
                f"history evaluated at t={t}, outside [{self.domain_start}, {self.domain_end}]"
            )
        return float(self._fn(min(max(t, self.domain_start), self.domain_end)))

    @classmethod
    def constant(cls, value: float, domain_start: float, domain_end: float = 0.0) -> "HistoryFunction":
        v = float(value)
        return cls(lambda t: v, domain_start, domain_end)

    @classmethod
    def exponential(cls, rate: float, domain_start: float, domain_end: float = 0.0) -> "HistoryFunction":
        """h(t) = exp(rate * t)."""
        r = float(rate)
        return cls(lambda t: math.exp(r * t), domain_start, domain_end)


def random_history(
    seed: int,
    domain_start: float,
    domain_end: float = 0.0,
    modes: int = 5,
    amplitude: float = 1.0,
    positive: bool = False,
) -> HistoryFunction:
    """Seeded truncated Fourier sum, peak-normalized to ``amplitude``.

    With ``positive=True`` the normalized sum is shifted up by 1.1x the
    amplitude, so the result is strictly positive with minimum 0.1x.
    Identical seeds produce identical histories.
    """
    if not domain_start < domain_end:
        raise InvalidParameterError(f"empty history domain [{domain_start}, {domain_end}]")
    if modes < 1:
        raise InvalidParameterError(f"modes must be >= 1, got {modes}")
    rng = np.random.default_rng(seed)
    cos_coef = rng.uniform(-1.0, 1.0, modes)
    sin_coef = rng.uniform(-1.0, 1.0, modes)
    length = domain_end - domain_start
    omegas = np.array([math.pi * (m + 1) / length for m in range(modes)])

    def raw(t: float) -> float:
        phases = omegas * (t - domain_start)
        return float(np.dot(cos_coef, np.cos(phases)) + np.dot(sin_coef, np.sin(phases)))

    grid = np.linspace(domain_start, domain_end, 512)
    peak = max(abs(raw(float(t))) for t in grid)
    scale = amplitude / peak if peak > 1e-12 else 0.0
    shift = 1.1 * amplitude if positive else 0.0

    return HistoryFunction(lambda t: scale * raw(t) + shift, domain_start, domain_end)


@dataclass(frozen=True)
class AmnesiaOperator:
    """A causal response (Tx)(t) reading x only on [sigma(t), tau(t)].

    ``evaluate(t, history)`` returns the operator value; ``tau``/``sigma``
    are the newest/oldest times it may read for a given t (tau(t) <= t).
    ``bound_b`` is the rate function of the sign-respecting bound described
    in the module docstring, or None when no bound is known.  ``read_points``
    optionally lists the exact times the operator samples at a given t; the
    audit folds them into its window grid so that bound checks never flag
    spurious violations from grid placement.  ``min_lag`` is the smallest
    value of t - tau(t) over the operating range, used by the integrator's
    step-size rule when known.
    """

    label: str
    evaluate: Callable[[float, HistoryFunction], float]
    tau: TimeFunction
    sigma: TimeFunction
    bound_b: Optional[TimeFunction] = None
    read_points: Optional[Callable[[float], list[float]]] = None
    min_lag: Optional[float] = None


def _as_time_function(value) -> TimeFunction:
    if callable(value):
        return value
    v = float(value)
    return lambda t: v


def make_discrete_delay(
    terms: Sequence[tuple],
    bound_b: Optional[TimeFunction] = None,
    label: str = "discrete-delay operator",
) -> AmnesiaOperator:
    """Build (Tx)(t) = sum_i p_i(t) * x(t - d_i) from (coefficient, delay) pairs.

    Coefficients may be numbers or callables of t; every delay must be
    positive.  When all coefficients are nonnegative the rate bound
    b(t) = sum_i p_i(t) is derived automatically (negative parts are clipped
    pointwise); pass ``bound_b`` to override, which is necessary for
    sign-changing coefficients if the criterion machinery will be used.
    """
    if not terms:
        raise InvalidParameterError("at least one (coefficient, delay) term is required")
    coefs: list[TimeFunction] = []
    delays: list[float] = []
    for coef, delay in terms:
        d = float(delay)
        if d <= 0.0:
            raise InvalidParameterError(f"delays must be positive, got {delay}")
        coefs.append(_as_time_function(coef))
        delays.append(d)
    d_min, d_max = min(delays), max(delays)

    def ev(t: float, history: HistoryFunction) -> float:
        return sum(c(t) * history(t - d) for c, d in zip(coefs, delays))

    def default_bound(t: float) -> float:
        return sum(max(c(t), 0.0) for c in coefs)

    return AmnesiaOperator(
        label=label,
        evaluate=ev,
        tau=lambda t: t - d_min,
        sigma=lambda t: t - d_max,
        bound_b=bound_b if bound_b is not None else default_bound,
        read_points=lambda t: [t - d for d in delays],
        min_lag=d_min,
    )


def make_distributed_delay(
    kernel: Callable[[float, float, list[float]], float],
    s_range: tuple[float, float],
    delay_maps: Sequence[DelayMap],
    *,
    bound_b: TimeFunction,
    quadrature_panels: int = 64,
    label: str = "distributed-delay operator",
) -> AmnesiaOperator:
    """Build (Tx)(t) as the integral over s in [s_lo, s_hi] of a delayed kernel.

    ``kernel(t, s, xs)`` receives the history evaluated at every delay map,
    xs = [history(d(t, s)) for d in delay_maps]; the integral is composite
    Simpson with ``quadrature_panels`` panels (even, >= 2).  tau/sigma are
    the extremes of the delay maps over the quadrature grid.  A rate bound
    cannot be inferred from an arbitrary kernel, so ``bound_b`` is required;
    use :func:`audit_sign_bound` to sanity-check it.
    """
    s_lo, s_hi = float(s_range[0]), float(s_range[1])
    if not s_lo < s_hi:
        raise InvalidParameterError(f"s_range must be increasing, got [{s_lo}, {s_hi}]")
    if not delay_maps:
        raise InvalidParameterError("at least one delay map is required")
    if bound_b is None:
        raise InvalidParameterError("bound_b must be supplied for distributed-delay operators")
    nodes, weights = simpson_nodes_weights(s_lo, s_hi, quadrature_panels)
    maps = list(delay_maps)

    def ev(t: float, history: HistoryFunction) -> float:
        total = 0.0
        for s, w in zip(nodes, weights):
            xs = [history(d(t, s)) for d in maps]
            total += w * kernel(t, s, xs)
        return total

    def reads(t: float) -> list[float]:
        return [d(t, s) for d in maps for s in nodes]

    def tau(t: float) -> float:
        return max(reads(t))

    def sigma(t: float) -> float:
        return min(reads(t))

    # Lags are assumed time-invariant for the step-size rule, which holds
    # for delay maps of the form t - g(s).
    min_lag = -tau(0.0) if tau(0.0) < 0.0 else None

    return AmnesiaOperator(
        label=label,
        evaluate=ev,
        tau=tau,
        sigma=sigma,
        bound_b=bound_b,
        read_points=reads,
        min_lag=min_lag,
    )


def evaluate(op: AmnesiaOperator, t: float, history: HistoryFunction) -> float:
    """Evaluate (Tx)(t); requires [op.sigma(t), t] inside the history domain."""
    return op.evaluate(t, history)


def sigma_growth_check(op: AmnesiaOperator, t_start: float, t_end: float, samples: int = 64) -> bool:
    """Spot-check that the oldest-read map sigma(t) grows without bound.

    The criterion additionally assumes liminf sigma(t) = +infinity, which no
    finite sample can prove; this refutes obvious violations only.  Returns
    False when sigma fails to gain ground over the horizon or trends
    non-positively on its tail.
    """
    if not t_start < t_end:
        raise InvalidParameterError(f"need t_start < t_end, got [{t_start}, {t_end}]")
    ts = np.linspace(t_start, t_end, samples)
    ss = np.array([op.sigma(float(t)) for t in ts])
    if ss[-1] <= ss[0]:
        return False
    tail = ss[samples // 2 :]
    slope = float(np.polyfit(ts[samples // 2 :], tail, 1)[0])
    return slope > 0.0


@dataclass(frozen=True)
class AuditViolation:
    t: float
    trial: int
    sign: int
    operator_value: float
    bound_term: float
    margin: float


@dataclass(frozen=True)
class AuditReport:
    """Result of spot-checking an operator's sign-respecting bound.

    ``margin`` per check is the slack: (Tx)(t) - b(t)*inf x for positive
    histories, b(t)*sup x - (Tx)(t) for negative ones.  Nonnegative slack
    everywhere means the bound held on every sampled pair.
    """

    checked: int
    satisfied: int
    violations: tuple[AuditViolation, ...]
    worst_margin: float

    @property
    def passed(self) -> bool:
        return not self.violations


def audit_sign_bound(
    op: AmnesiaOperator,
    t_samples: Sequence[float],
    *,
    trials: int = 10,
    seed: int = 0,
    amplitude: float = 1.0,
    tol: float = 1e-6,
    history_factory: Optional[Callable[[float, int, int], HistoryFunction]] = None,
) -> AuditReport:
    """Check the sign-respecting bound of ``op`` on sampled (t, history) pairs.

    For each t in ``t_samples`` and each trial, one strictly positive and one
    strictly negative history are generated on [sigma(t), t] (seeded Fourier
    sums by default; pass ``history_factory(t, trial, sign)`` to override) and
    the bound inequality is evaluated with inf/sup taken over a dense window
    grid that includes the operator's own read points.  A check fails when its
    slack drops below ``-tol * max(1, |b(t) * inf/sup|)``; the tolerance
    absorbs the quadrature error of integral-backed operators.
    """
    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}")
    if op.bound_b is None:
        raise InvalidParameterError("operator has no bound_b to audit")

    violations: list[AuditViolation] = []
    checked = 0
    worst = math.inf

    for t in t_samples:
        t = float(t)
        lo = op.sigma(t)
        if not lo < t:
            raise InvalidParameterError(f"sigma(t) must be below t; sigma({t}) = {lo}")
        window = np.linspace(lo, t, 257)
        if op.read_points is not None:
            extra = [p for p in op.read_points(t) if lo <= p <= t]
            window = np.unique(np.concatenate([window, np.array(extra)]))
        b_t = op.bound_b(t)
        for trial in range(trials):
            for sign in (+1, -1):
                if history_factory is not None:
                    hist = history_factory(t, trial, sign)
                else:
                    base = random_history(
                        seed * 1_000_003 + trial, lo - 1e-6, t, amplitude=amplitude, positive=True
                    )
                    if sign > 0:
                        hist = base
                    else:
                        hist = HistoryFunction(lambda s, h=base: -h(s), lo - 1e-6, t)
                value = op.evaluate(t, hist)
                samples = [hist(float(s)) for s in window]
                if sign > 0:
                    bound_term = b_t * min(samples)
                    slack = value - bound_term
                else:
                    bound_term = b_t * max(samples)
                    slack = bound_term - value
                checked += 1
                worst = min(worst, slack)
                if slack < -tol * max(1.0, abs(bound_term)):
                    violations.append(
                        AuditViolation(
                            t=t,
                            trial=trial,
                            sign=sign,
                            operator_value=value,
                            bound_term=bound_term,
                            margin=slack,
                        )
                    )

    return AuditReport(
        checked=checked,
        satisfied=checked - len(violations),
        violations=tuple(violations),
        worst_margin=worst,
    )
