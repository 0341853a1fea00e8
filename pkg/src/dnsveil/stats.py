"""Nonparametric comparison of the six algorithms.

Friedman rank test over the fold-accuracy table, the Iman-Davenport
F-distributed correction, and a Holm step-down post-hoc pass against a
baseline algorithm.  The F tail is computed here (regularized incomplete
beta via a modified-Lentz continued fraction plus bisection) so any
degrees of freedom work without embedded tables.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np


class DegenerateTable(Exception):
    """An accuracy table too small to rank."""


class SingularDenominator(Exception):
    """Perfectly consistent ranking: the Iman-Davenport denominator is zero.

    chi2_F has hit its maximum N*(k-1); the null hypothesis is rejected at
    any significance level rather than reported as a number.
    """


class UnknownBaseline(Exception):
    pass


@dataclass
class RankTable:
    ranks: np.ndarray  # (n, k); rank 1 is best, ties averaged
    mean_ranks: np.ndarray  # (k,)
    n: int
    k: int


def friedman_ranks(table: np.ndarray) -> RankTable:
    """Rank algorithms within each fold; higher accuracy means lower rank."""
    table = np.asarray(table, dtype=np.float64)
    if table.ndim != 2:
        raise DegenerateTable("accuracy table must be 2-D")
    n, k = table.shape
    if n < 2 or k < 2:
        raise DegenerateTable(f"need at least 2x2, got {n}x{k}")
    ranks = np.zeros((n, k))
    for i in range(n):
        row = table[i]
        order = np.argsort(-row, kind="stable")
        j = 0
        while j < k:
            h = j
            while h + 1 < k and row[order[h + 1]] == row[order[j]]:
                h += 1
            avg = (j + h) / 2.0 + 1.0
            for t in range(j, h + 1):
                ranks[i, order[t]] = avg
            j = h + 1
    return RankTable(ranks=ranks, mean_ranks=ranks.mean(axis=0), n=n, k=k)


def friedman_statistic(rank_table: RankTable) -> float:
    """chi2_F = 12N/(k(k+1)) * (sum_j R_j^2 - k(k+1)^2/4)."""
    n, k = rank_table.n, rank_table.k
    r = rank_table.mean_ranks
    return 12.0 * n / (k * (k + 1)) * (float(np.sum(r * r)) - k * (k + 1) ** 2 / 4.0)


def iman_davenport(chi2_f: float, n: int, k: int) -> float:
    """F_F = (N-1) chi2_F / (N(k-1) - chi2_F)."""
    denom = n * (k - 1) - chi2_f
    if denom < 1e-9 * max(1.0, n * (k - 1)):
        raise SingularDenominator(f"chi2_F = {chi2_f} saturates N(k-1) = {n * (k - 1)}")
    return (n - 1) * chi2_f / denom


# --- distribution tails --------------------------------------------------

_BETACF_MAX_ITER = 400
_BETACF_EPS = 3e-16
_FPMIN = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, modified Lentz method."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        coef = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + coef * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + coef / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        coef = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + coef * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + coef / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETACF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction failed for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        a * math.log(x)
        + b * math.log1p(-x)
        + math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_cdf(x: float, d1: int, d2: int) -> float:
    if x <= 0:
        return 0.0
    t = d1 * x / (d1 * x + d2)
    return regularized_incomplete_beta(d1 / 2.0, d2 / 2.0, t)


def f_critical(alpha: float, d1: int, d2: int) -> float:
    """Upper-tail critical value of F(d1, d2): the x with P(F > x) = alpha."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly between 0 and 1")
    if d1 < 1 or d2 < 1:
        raise ValueError("degrees of freedom must be >= 1")
    target = 1.0 - alpha
    lo, hi = 0.0, 1.0
    for _ in range(4096):
        if f_cdf(hi, d1, d2) >= target:
            break
        lo, hi = hi, hi * 2.0
    else:
        raise ArithmeticError("failed to bracket the critical value")
    while hi - lo > 1e-10 * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if f_cdf(mid, d1, d2) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


# --- post-hoc procedure ---------------------------------------------------


def posthoc_z(rank_table: RankTable, baseline_index: int) -> List[Tuple[int, float]]:
    """z_i = (R_i - R_0) / sqrt(k(k+1)/(6N)) for every non-baseline algorithm.

    Negative z means algorithm i ranks better than the baseline.
    """
    k, n = rank_table.k, rank_table.n
    if not 0 <= baseline_index < k:
        raise UnknownBaseline(f"baseline index {baseline_index} outside 0..{k - 1}")
    se = math.sqrt(k * (k + 1) / (6.0 * n))
    r = rank_table.mean_ranks
    return [
        (i, (float(r[i]) - float(r[baseline_index])) / se)
        for i in range(k)
        if i != baseline_index
    ]


def two_sided_p(z: float) -> float:
    return 2.0 * (1.0 - normal_cdf(abs(z)))


@dataclass
class HolmStep:
    input_index: int
    p: float
    threshold: float
    reject: bool


def holm_stepdown(pvalues: Sequence[float], alpha: float) -> List[HolmStep]:
    """Step-down decisions over k-1 baseline comparisons.

    Sorted ascending, the i-th p-value (1-based) is tested against
    alpha/(k-i) with k = len(pvalues)+1; the first acceptance stops all
    further rejections.
    """
    k_total = len(pvalues) + 1
    order = sorted(range(len(pvalues)), key=lambda i: (pvalues[i], i))
    steps = []
    alive = True
    for rank, idx in enumerate(order, start=1):
        threshold = alpha / (k_total - rank)
        reject = alive and pvalues[idx] < threshold
        if not reject:
            alive = False
        steps.append(HolmStep(input_index=idx, p=float(pvalues[idx]), threshold=threshold, reject=reject))
    return steps


@dataclass
class PosthocEntry:
    algorithm: str
    z: float
    p: float
    adjusted_threshold: float
    reject: bool


@dataclass
class SignificanceReport:
    n: int
    k: int
    chi2_f: float
    f_f: Optional[float]  # None when the denominator is singular
    singular: bool
    dof: Tuple[int, int]
    f_crit: float
    friedman_reject: bool
    baseline: str
    alpha: float
    mean_ranks: dict
    posthoc: List[PosthocEntry] = field(default_factory=list)


def run_significance(
    accuracy_table: np.ndarray,
    algorithm_labels: Sequence[str],
    baseline_label: str,
    alpha: float = 0.05,
) -> SignificanceReport:
    """The whole procedure: ranks, Friedman, Iman-Davenport, Holm post-hoc.

    The post-hoc pass only runs when the Friedman null hypothesis falls.
    """
    table = np.asarray(accuracy_table, dtype=np.float64)
    if baseline_label not in algorithm_labels:
        raise UnknownBaseline(f"baseline {baseline_label!r} not among {list(algorithm_labels)}")
    baseline_index = list(algorithm_labels).index(baseline_label)

    rank_table = friedman_ranks(table)
    n, k = rank_table.n, rank_table.k
    chi2 = friedman_statistic(rank_table)
    dof = (k - 1, (k - 1) * (n - 1))
    crit = f_critical(alpha, dof[0], dof[1])
    try:
        f_f: Optional[float] = iman_davenport(chi2, n, k)
        singular = False
        reject = f_f > crit
    except SingularDenominator:
        f_f = None
        singular = True
        reject = True

    report = SignificanceReport(
        n=n,
        k=k,
        chi2_f=chi2,
        f_f=f_f,
        singular=singular,
        dof=dof,
        f_crit=crit,
        friedman_reject=reject,
        baseline=baseline_label,
        alpha=alpha,
        mean_ranks={label: float(rank_table.mean_ranks[i]) for i, label in enumerate(algorithm_labels)},
    )
    if not reject:
        return report

    comparisons = posthoc_z(rank_table, baseline_index)
    pvalues = [two_sided_p(z) for _, z in comparisons]
    for step in holm_stepdown(pvalues, alpha):
        algo_index, z = comparisons[step.input_index]
        report.posthoc.append(
            PosthocEntry(
                algorithm=algorithm_labels[algo_index],
                z=z,
                p=step.p,
                adjusted_threshold=step.threshold,
                reject=step.reject,
            )
        )
    return report


def report_dict(report: SignificanceReport) -> dict:
    return {
        "n": report.n,
        "k": report.k,
        "chi2_f": report.chi2_f,
        "f_f": report.f_f,
        "singular": report.singular,
        "dof": list(report.dof),
        "f_critical": report.f_crit,
        "friedman_reject": report.friedman_reject,
        "baseline": report.baseline,
        "alpha": report.alpha,
        "mean_ranks": report.mean_ranks,
        "posthoc_sides": "two-sided",
        "posthoc": [
            {
                "algorithm": e.algorithm,
                "z": e.z,
                "p": e.p,
                "adjusted_threshold": e.adjusted_threshold,
                "reject": e.reject,
            }
            for e in report.posthoc
        ],
    }
