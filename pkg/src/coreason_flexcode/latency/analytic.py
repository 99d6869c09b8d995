# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_flexcode

"""
Closed-form and quadrature expectations of access latency.

Node i answers after X_i + l * t_trans with X_i ~ Uniform(0, t_pos) drawn once per
request. Waiting for R of n nodes costs the R-th order statistic U_R, and
U_R / t_pos ~ Beta(R, n + 1 - R). A flexible code finishes at min_j T_j with
T_j = U_{R_j} + l_j * t_trans.
"""

import math
from collections.abc import Sequence

import numpy as np
import polars as pl
from scipy import integrate
from scipy.special import betaln, gammaln

from coreason_flexcode.config import FlexConfig
from coreason_flexcode.exceptions import LatencyParameterError
from coreason_flexcode.latency.models import AccessProfile, LatencyModel, LatencyResult
from coreason_flexcode.latency.simulation import monte_carlo
from coreason_flexcode.utils.logger import logger


def _beta_fraction(x: float, a: float, b: float) -> float:
    """Modified Lentz evaluation of the incomplete beta continued fraction."""
    tiny = FlexConfig.BETA_TINY
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = 1.0 / (tiny if abs(d) < tiny else d)
    h = d
    for m in range(1, FlexConfig.BETA_MAX_ITER + 1):
        m2 = 2 * m
        for aa in (
            m * (b - m) * x / ((qam + m2) * (a + m2)),
            -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2)),
        ):
            d = 1.0 + aa * d
            d = 1.0 / (tiny if abs(d) < tiny else d)
            c = 1.0 + aa / c
            c = tiny if abs(c) < tiny else c
            delta = d * c
            h *= delta
        if abs(delta - 1.0) < FlexConfig.BETA_EPS:
            return h
    raise LatencyParameterError(f"Incomplete beta did not converge for x={x}, a={a}, b={b}")  # pragma: no cover


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """
    Regularized incomplete beta function I_x(a, b) = B(x; a, b) / B(a, b).

    Args:
        x: Upper limit in [0, 1].
        a: First shape parameter, > 0.
        b: Second shape parameter, > 0.

    Returns:
        The value in [0, 1].

    Raises:
        LatencyParameterError: If x lies outside [0, 1] or a shape is not positive.
    """
    if not 0.0 <= x <= 1.0:
        raise LatencyParameterError(f"x must lie in [0, 1], got {x}")
    if a <= 0 or b <= 0:
        raise LatencyParameterError(f"Shape parameters must be positive, got a={a}, b={b}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = math.exp(a * math.log(x) + b * math.log1p(-x) - betaln(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_fraction(x, a, b) / a
    return 1.0 - front * _beta_fraction(1.0 - x, b, a) / b


def _check_threshold(recovery: int, n: int) -> None:
    if not 1 <= recovery <= n:
        raise LatencyParameterError(f"Recovery threshold must lie in [1, {n}], got {recovery}")


def expected_order_statistic(n: int, recovery: int, t_pos: float) -> float:
    """E[U_R] = R / (n + 1) * t_pos."""
    _check_threshold(recovery, n)
    return recovery / (n + 1) * t_pos


def expected_fixed(n: int, recovery: int, rows: int, model: LatencyModel) -> float:
    """
    Expected latency of a fixed code reading ``rows`` symbols from each of ``recovery`` nodes.

    Raises:
        LatencyParameterError: If recovery is not in [1, n] or rows < 1.
    """
    if rows < 1:
        raise LatencyParameterError(f"Rows per node must be positive, got {rows}")
    return expected_order_statistic(n, recovery, model.t_pos) + rows * model.t_trans


def expected_flexible_2layer(access: AccessProfile, model: LatencyModel) -> LatencyResult:
    """
    E[min(T_1, T_2)] of a two-layer flexible code.

    With a = R_1 - R_2, b = n + 1 - a and x = (l_2 - l_1) t_trans / t_pos, the gap
    U_{R_1} - U_{R_2} is t_pos times a Beta(a, b) variable, so

        E[T_1 - T_12] = (E[T_1] - E[T_2]) I_{1-x}(b, a) + t_pos a/(n+1) x^a (1-x)^b / (a B(a, b))
        E[T_2 - T_12] = (E[T_2] - E[T_1]) I_x(a, b) + the same term.

    When x >= 1 the transfer gap exceeds every positioning gap and T_12 = T_1.

    Raises:
        LatencyParameterError: If the profile is not two-layer or exceeds n.
    """
    if access.depth != 2:
        raise LatencyParameterError(f"Closed form covers two layers, got {access.depth}")
    n, t_pos = model.n, model.t_pos
    (r1, r2), (l1, l2) = access.recovery, access.rows
    e1 = expected_fixed(n, r1, l1, model)
    e2 = expected_fixed(n, r2, l2, model)
    a = r1 - r2
    b = n + 1 - a
    x = (l2 - l1) * model.t_trans / t_pos
    if x >= 1.0:
        logger.debug(f"Transfer gap x={x:.4f} >= 1: the R_1 code always finishes first")
        return LatencyResult(fixed=(e1, e2), flexible=e1)
    if x == 0.0:
        tail = 0.0
    else:
        tail = t_pos * a / (n + 1) * math.exp(a * math.log(x) + b * math.log1p(-x) - betaln(a, b)) / a
    saving_vs_first = (e1 - e2) * reg_inc_beta(1.0 - x, b, a) + tail
    return LatencyResult(fixed=(e1, e2), flexible=e1 - saving_vs_first)


def _survival(s: float, access: AccessProfile, model: LatencyModel) -> float:
    """
    P(min_j T_j > s), i.e. fewer than R_j positions fall at or below s - l_j t_trans for every j.

    The thresholds split [0, t_pos] into intervals; the joint count probability is a
    multinomial sum evaluated by convolving p^c / c! over the intervals.
    """
    n = model.n
    cdf = [min(max((s - rows * model.t_trans) / model.t_pos, 0.0), 1.0) for rows in access.rows]
    counts = np.arange(n + 1)
    log_fact = gammaln(counts + 1)
    weights = np.zeros(n + 1)
    weights[0] = 1.0
    previous = 0.0
    # thresholds grow as l_j shrinks, so walk layers from last to first
    for j in reversed(range(access.depth)):
        p = cdf[j] - previous
        previous = cdf[j]
        kernel = np.exp(counts * math.log(p) - log_fact) if p > 0 else (counts == 0).astype(float)
        weights = np.convolve(weights, kernel)[: n + 1]
        weights[access.recovery[j] :] = 0.0
    rest = 1.0 - previous
    tail = np.exp((n - counts) * math.log(rest) - gammaln(n - counts + 1)) if rest > 0 else (counts == n).astype(float)
    return float(math.exp(gammaln(n + 1)) * np.dot(weights, tail))


def expected_flexible_numeric(access: AccessProfile, model: LatencyModel) -> float:
    """
    E[min_j T_j] for any number of layers by quadrature of the exact survival function.

    Raises:
        LatencyParameterError: If a recovery threshold exceeds n.
    """
    for recovery in access.recovery:
        _check_threshold(recovery, model.n)
    start = access.rows[0] * model.t_trans
    stop = start + model.t_pos
    edges = {v for rows in access.rows for v in (rows * model.t_trans, rows * model.t_trans + model.t_pos)}
    inside = sorted(v for v in edges if start < v < stop)
    area, _ = integrate.quad(
        _survival,
        start,
        stop,
        args=(access, model),
        points=inside or None,
        epsabs=1e-13,
        epsrel=1e-12,
        limit=200,
    )
    return start + float(area)


def expected_flexible(access: AccessProfile, model: LatencyModel) -> LatencyResult:
    """Exact expectations: closed form for two layers, quadrature otherwise."""
    if access.depth == 2:
        return expected_flexible_2layer(access, model)
    fixed = tuple(expected_fixed(model.n, r, rows, model) for r, rows in zip(access.recovery, access.rows, strict=True))
    return LatencyResult(fixed=fixed, flexible=expected_flexible_numeric(access, model))


def sweep_grid(t_trans_max: float = FlexConfig.SWEEP_T_TRANS_MAX, points: int = FlexConfig.SWEEP_POINTS) -> list[float]:
    """Evenly spaced transfer times from 0 to ``t_trans_max`` inclusive."""
    if points < 1 or t_trans_max < 0:
        raise LatencyParameterError(f"Invalid sweep grid: max={t_trans_max}, points={points}")
    return [float(v) for v in np.linspace(0.0, t_trans_max, points)]


def latency_sweep(
    access: AccessProfile,
    n: int,
    t_pos: float,
    t_trans_values: Sequence[float],
    mc_trials: int | None = None,
    seed: int = FlexConfig.DEFAULT_SEED,
) -> pl.DataFrame:
    """
    Tabulate fixed and flexible expected latency across transfer times.

    Columns: t_trans, E_fixed_1..E_fixed_a, E_flexible, savings_pct_vs_best_fixed and,
    when ``mc_trials`` is given, E_flexible_mc and se_flexible_mc from a seeded simulation.
    """
    records = []
    for t_trans in t_trans_values:
        model = LatencyModel(n=n, t_pos=t_pos, t_trans=t_trans)
        result = expected_flexible(access, model)
        row: dict[str, float] = {"t_trans": float(t_trans)}
        for j, value in enumerate(result.fixed, start=1):
            row[f"E_fixed_{j}"] = value
        row["E_flexible"] = result.flexible
        row["savings_pct_vs_best_fixed"] = result.savings_pct_vs_best_fixed
        if mc_trials is not None:
            sampled = monte_carlo(access, model, mc_trials, seed)
            row["E_flexible_mc"] = sampled.flexible
            row["se_flexible_mc"] = float(sampled.std_error or 0.0)
        records.append(row)
    frame = pl.DataFrame(records)
    if frame.height:
        logger.info(
            f"Latency sweep over {frame.height} points: peak saving "
            f"{frame['savings_pct_vs_best_fixed'].max():.3f}% vs the best fixed code"
        )
    return frame
