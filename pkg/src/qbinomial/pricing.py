"""Payoff definitions and closed-form option pricing.

Four pricing routes live here: the classical subjective (Bernoulli)
price, the single-period risk-neutral price (identical for every state
in the risk-neutral disk), the N-period Maxwell-Boltzmann price in
Cox-Ross-Rubinstein form, and the N-period Bose-Einstein price whose
weights are a normalized geometric family rather than binomial terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .bloch import DensityState, TwoLevelObservable, eigenbasis, expectation
from .market import (
    MEMBERSHIP_TOL,
    ClassicalModel,
    MarketParams,
    classical_risk_neutral_q,
    is_arbitrage_free,
)

Model = Literal["classical", "quantum_single", "mb", "be"]

MODELS: tuple[Model, ...] = ("classical", "quantum_single", "mb", "be")


@dataclass(frozen=True)
class TwoPointPayoff:
    """Payoff paid at the down and up terminal prices of one period."""

    at_down: float
    at_up: float

    def __post_init__(self) -> None:
        for value in (self.at_down, self.at_up):
            if not math.isfinite(value) or value < 0.0:
                raise ValueError("payoffs must be finite and nonnegative")


@dataclass(frozen=True)
class CallSpec:
    """European call with strike K; terminal payoff (S - K)^+."""

    strike: float

    def __post_init__(self) -> None:
        if not self.strike > 0.0:
            raise ValueError("strike must be positive")


@dataclass(frozen=True)
class PricingResult:
    price: float
    discounted_by: float
    model: Model
    periods: int
    cutoff_tau: int | None = None


def call_two_point(params: MarketParams, spec: CallSpec) -> TwoPointPayoff:
    """Clipped call payoffs at the two one-period terminal prices."""
    at_down = max(0.0, params.stock_initial * (1.0 + params.down) - spec.strike)
    at_up = max(0.0, params.stock_initial * (1.0 + params.up) - spec.strike)
    return TwoPointPayoff(at_down=at_down, at_up=at_up)


def single_period_price(params: MarketParams, payoff: TwoPointPayoff) -> PricingResult:
    """Discounted risk-neutral expectation of a one-period payoff.

    This is the state-independent price: every state in the risk-neutral
    disk gives the same number (see single_period_trace_price).
    """
    q = classical_risk_neutral_q(params)
    discount = 1.0 / (1.0 + params.rate)
    price = discount * (q * payoff.at_up + (1.0 - q) * payoff.at_down)
    return PricingResult(price=price, discounted_by=discount, model="quantum_single", periods=1)


def single_period_trace_price(
    params: MarketParams,
    payoff: TwoPointPayoff,
    state: DensityState,
    obs: TwoLevelObservable,
) -> float:
    """One-period price as the discounted dense trace tr(rho H).

    H is the payoff observable assembled from the eigenprojectors of the
    return observable. The supplied state must lie in the risk-neutral
    disk; the result then equals single_period_price within 1e-12.
    """
    if abs(obs.low - params.down) > 1e-9 or abs(obs.high - params.up) > 1e-9:
        raise ValueError("observable values must match the market's (down, up)")
    if abs(expectation(state, obs) - params.rate) >= MEMBERSHIP_TOL:
        raise ValueError("state is not risk-neutral for this market")
    u, v = eigenbasis(obs)
    h = payoff.at_up * np.outer(u, u.conj()) + payoff.at_down * np.outer(v, v.conj())
    return float(np.trace(state.matrix() @ h).real) / (1.0 + params.rate)


def classical_expected_price(model: ClassicalModel, payoff: TwoPointPayoff) -> float:
    """Subjective Bernoulli price: discounted expectation under p.

    Coincides with the risk-neutral price exactly when p equals the
    risk-neutral up-probability.
    """
    p = model.up_probability
    return (p * payoff.at_up + (1.0 - p) * payoff.at_down) / (1.0 + model.params.rate)


def complementary_binomial(m: int, n: int, p: float) -> float:
    """Upper binomial tail: sum of C(n,j) p^j (1-p)^(n-j) for j = m..n.

    By convention the full sum (m <= 0) is exactly 1 and the empty sum
    (m = n+1) exactly 0. Terms are accumulated with the multiplicative
    recurrence term_{j+1} = term_j * (n-j)/(j+1) * p/(1-p); direct
    summation is exact enough at desk scale and avoids incomplete-beta
    machinery.
    """
    if not 0 <= m <= n + 1:
        raise ValueError("m must lie in [0, n+1]")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if m == 0:
        return 1.0
    if m == n + 1:
        return 0.0
    if p == 0.0:
        return 0.0  # all mass sits at j = 0 < m
    if p == 1.0:
        return 1.0  # all mass sits at j = n >= m
    ratio = p / (1.0 - p)
    term = (1.0 - p) ** n
    total = 0.0
    for j in range(n):
        term *= (n - j) / (j + 1) * ratio
        if j + 1 >= m:
            total += term
    return total


def crr_cutoff_tau(params: MarketParams, spec: CallSpec, periods: int) -> int:
    """Smallest up-move count whose terminal price strictly exceeds the strike.

    Returns periods + 1 when even the all-up path stays at or below K
    (the call is then worthless).
    """
    if periods < 1:
        raise ValueError("periods must be >= 1")
    s0 = params.stock_initial
    for n in range(periods + 1):
        if s0 * (1.0 + params.up) ** n * (1.0 + params.down) ** (periods - n) > spec.strike:
            return n
    return periods + 1


def mb_payoff_price(
    params: MarketParams,
    payoff: Callable[[float], float],
    periods: int,
) -> float:
    """Discounted binomial-weighted expectation of a terminal payoff.

    The explicit Maxwell-Boltzmann sum: weight C(N,n) q^n (1-q)^(N-n) on
    the terminal price with n up moves. Accepts any terminal payoff
    function, which is how puts and other payoffs are priced.
    """
    if periods < 1:
        raise ValueError("periods must be >= 1")
    q = classical_risk_neutral_q(params)
    total = 0.0
    for n in range(periods + 1):
        terminal = (
            params.stock_initial
            * (1.0 + params.up) ** n
            * (1.0 + params.down) ** (periods - n)
        )
        total += math.comb(periods, n) * q**n * (1.0 - q) ** (periods - n) * payoff(terminal)
    return total / (1.0 + params.rate) ** periods


def mb_price(params: MarketParams, spec: CallSpec, periods: int) -> PricingResult:
    """N-period Maxwell-Boltzmann call price in Cox-Ross-Rubinstein form.

    Evaluates S0 * Psi(tau; N, q') - K (1+r)^-N * Psi(tau; N, q) with
    q' = q (1+up)/(1+rate), and cross-checks the result against the
    explicit binomial sum before returning it.
    """
    if periods < 1:
        raise ValueError("periods must be >= 1")
    q = classical_risk_neutral_q(params)
    q_prime = q * (1.0 + params.up) / (1.0 + params.rate)
    tau = crr_cutoff_tau(params, spec, periods)
    discount = (1.0 + params.rate) ** (-periods)
    closed = (
        params.stock_initial * complementary_binomial(tau, periods, q_prime)
        - spec.strike * discount * complementary_binomial(tau, periods, q)
    )
    explicit = mb_payoff_price(params, lambda s: max(0.0, s - spec.strike), periods)
    scale = max(1.0, params.stock_initial, spec.strike)
    if abs(closed - explicit) > 1e-10 * scale:
        raise ArithmeticError(
            f"closed form {closed!r} and explicit sum {explicit!r} disagree"
        )
    return PricingResult(
        price=max(0.0, closed),
        discounted_by=discount,
        model="mb",
        periods=periods,
        cutoff_tau=tau,
    )


def be_weights(params: MarketParams, periods: int) -> np.ndarray:
    """Bose-Einstein occupation weights q^n (1-q)^(N-n) normalized to sum 1.

    A geometric-ratio family indexed by the up-move count n; no binomial
    coefficients appear. All-equal weights at q = 1/2 need no special
    casing.
    """
    q = classical_risk_neutral_q(params)
    raw = np.array([q**n * (1.0 - q) ** (periods - n) for n in range(periods + 1)])
    return raw / raw.sum()


def be_payoff_price(
    params: MarketParams,
    payoff: Callable[[float], float],
    periods: int,
) -> float:
    """Discounted Bose-Einstein-weighted expectation of a terminal payoff."""
    if periods < 1:
        raise ValueError("periods must be >= 1")
    weights = be_weights(params, periods)
    total = 0.0
    for n in range(periods + 1):
        terminal = (
            params.stock_initial
            * (1.0 + params.up) ** n
            * (1.0 + params.down) ** (periods - n)
        )
        total += weights[n] * payoff(terminal)
    return total / (1.0 + params.rate) ** periods


def be_price(params: MarketParams, spec: CallSpec, periods: int) -> PricingResult:
    """N-period Bose-Einstein call price (identical-particle statistics)."""
    if periods < 1:
        raise ValueError("periods must be >= 1")
    discount = (1.0 + params.rate) ** (-periods)
    price = be_payoff_price(params, lambda s: max(0.0, s - spec.strike), periods)
    return PricingResult(price=price, discounted_by=discount, model="be", periods=periods)


def convergence_sweep(
    params: MarketParams,
    spec: CallSpec,
    max_periods: int,
    model: Model,
) -> list[tuple[int, float]]:
    """Prices for N = 1..max_periods with the per-period (down, up, rate) held fixed.

    No rescaling with N is performed, so this sweeps the fixed-parameter
    family rather than approaching a continuous-time limit.
    """
    if max_periods < 1:
        raise ValueError("max_periods must be >= 1")
    if model == "mb":
        pricer = mb_price
    elif model == "be":
        pricer = be_price
    else:
        raise ValueError(f"model {model!r} is single-period; sweep needs 'mb' or 'be'")
    return [(n, pricer(params, spec, n).price) for n in range(1, max_periods + 1)]
