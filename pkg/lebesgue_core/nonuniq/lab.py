"""Finite truncation of the non-uniqueness construction on M_N.

f and g are diagonal states with weights 2^-k and 10^-k, and p is the vector
functional of xi = sum_k 2^-k e_k. Every truncation has a unique
decomposition of h = f + p with respect to g, but the constants that certify
it degenerate as N grows: alpha_min(f, g) = 5^N while the largest lambda with
lambda p <= g tends to zero.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, computed_field

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import IndexOutOfRange, InvalidLevel, UnderflowRisk
from ..functionals import PositiveFunctional, domination_constant, evaluate
from ..numkernel import PsdOperator, operator_norm
from ..opdecomp import parallel_sum
from ..lebesgue import is_unique
from ..log import logger
from ..staralg import AlgebraElement, BlockAlgebra

MIN_LEVEL = 2
MAX_LEVEL = 40
DEFAULT_LEVELS = (6, 12, 24)
BOUND_SLACK = 1e-10


@dataclass(frozen=True, eq=False)
class TruncationLab:
    level: int
    xi: np.ndarray
    xi_prime: Tuple[np.ndarray, ...]
    f: PositiveFunctional
    g: PositiveFunctional
    p: PositiveFunctional
    witnesses: Tuple[AlgebraElement, ...]
    config: NumericConfig

    @property
    def algebra(self) -> BlockAlgebra:
        return self.f.algebra

    @property
    def xi_norm_sq(self) -> float:
        """|xi|^2 = (1 - 4^-N) / 3"""
        return float(np.vdot(self.xi, self.xi).real)


class BoundRow(BaseModel):
    N: int
    n: int
    p_an: float
    g_an: float
    bound: float
    lambda_max: float
    alpha_min: float
    norm_an: float = 0.0
    kadison: float = 0.0

    @computed_field
    @property
    def ratio(self) -> float:
        """measured g(a_n* a_n) over the displayed bound"""
        return self.g_an / self.bound


class BoundReport(BaseModel):
    rows: List[BoundRow] = Field(default_factory=list)
    violations: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


class ChartRow(BaseModel):
    N: int
    alpha_min: float
    lambda_max: float
    singularity_defect: float
    unique: bool


def check_level(level: int) -> int:
    if level < MIN_LEVEL:
        raise InvalidLevel(f"truncation level must be at least {MIN_LEVEL}, got {level}")
    if level > MAX_LEVEL:
        raise UnderflowRisk(f"weights 10^-{level} are below what doubles resolve; the cap is {MAX_LEVEL}")
    return int(level)


def lab_config(level: int, base: NumericConfig = DEFAULT_CONFIG) -> NumericConfig:
    """Tolerances resolving the weights 10^-N of g and |p : g| ~ 0.4^N / 5.

    The rank cutoff sits one decade below the smallest weight of g; a looser
    user cutoff is replaced, with a warning. The singularity threshold sits
    three decades below |p : g|.
    """
    rank_tol = 10.0 ** -(level + 1)
    if base.rank_tol is not None and base.rank_tol > rank_tol:
        logger.warning(
            f"rank tolerance {base.rank_tol:.1e} would drop weights of g at N={level}; using {rank_tol:.1e}"
        )
    elif base.rank_tol is not None:
        rank_tol = base.rank_tol
    singular_tol = min(base.singular_tol, 1e-3 * 0.4**level)
    return base.with_overrides(rank_tol=rank_tol, singular_tol=singular_tol)


def _tail(level: int, n: int) -> np.ndarray:
    v = 2.0 ** -np.arange(1, level + 1, dtype=float)
    v[:n] = 0.0
    return v


def _witness(xi: np.ndarray, tail: np.ndarray) -> np.ndarray:
    return np.outer(xi, tail.conj()) / float(np.vdot(tail, tail).real)


def build(level: int, config: NumericConfig = DEFAULT_CONFIG) -> TruncationLab:
    level = check_level(level)
    config = lab_config(level, config)
    algebra = BlockAlgebra((level,))
    k = np.arange(1, level + 1, dtype=float)
    xi = 2.0 ** -k
    xi_prime = tuple(_tail(level, n) for n in range(1, level))
    f = PositiveFunctional.from_blocks(algebra, [np.diag(2.0 ** -k)], config)
    g = PositiveFunctional.from_blocks(algebra, [np.diag(10.0 ** -k)], config)
    p = PositiveFunctional.from_operators(algebra, [PsdOperator.from_factor(xi, config)])
    witnesses = tuple(AlgebraElement(algebra, (_witness(xi, tail),)) for tail in xi_prime)
    logger.debug(f"truncation lab at N={level}: {len(witnesses)} witness operators")
    return TruncationLab(level, xi, xi_prime, f, g, p, witnesses, config)


def witness_operator(lab: TruncationLab, n: int) -> AlgebraElement:
    """a_n = |xi><xi'_n| / |xi'_n|^2 for 1 <= n <= N-1.

    a_n kills e_1, ..., e_n and maps xi'_n (hence xi) to xi.
    """
    if not 1 <= n <= lab.level - 1:
        raise IndexOutOfRange(f"witness index {n} outside 1..{lab.level - 1}")
    return lab.witnesses[n - 1]


def kadison_bound(lab: TruncationLab, n: int) -> float:
    """Norm bound 2^n sqrt(2(n+1)) that the witness must respect"""
    witness_operator(lab, n)
    return 2.0 ** n * math.sqrt(2 * (n + 1))


def displayed_bound(n: int) -> float:
    """(2/9)(2/5)^n (n+1)"""
    return (2.0 / 9.0) * 0.4 ** n * (n + 1)


def lambda_bound(n: int) -> float:
    """(2/3)(2/5)^n (n+1)"""
    return (2.0 / 3.0) * 0.4 ** n * (n + 1)


def lambda_max(lab: TruncationLab) -> float:
    """Largest lambda with lambda p <= g"""
    return 1.0 / domination_constant(lab.p, lab.g, lab.config)


def alpha_min(lab: TruncationLab) -> float:
    """Least alpha with f <= alpha g; equals 5^N"""
    return domination_constant(lab.f, lab.g, lab.config)


def singularity_defect(lab: TruncationLab) -> float:
    """|D_p : D_g|; exactly |xi|^2 / (1 + xi* D_g^-1 xi), non-zero at every finite N"""
    return operator_norm(parallel_sum(lab.p.operators[0], lab.g.operators[0], lab.config))


def bound_report(lab: TruncationLab, ns: Optional[Sequence[int]] = None) -> BoundReport:
    """Witness measurements against the quantitative bounds, one row per n"""
    report = BoundReport()
    lam = lambda_max(lab)
    alpha = alpha_min(lab)
    lower, upper = lab.xi_norm_sq, 1.0 / 3.0
    for n in ns if ns is not None else range(1, lab.level):
        a = witness_operator(lab, n)
        square = a.adjoint() @ a
        p_an = float(evaluate(lab.p, square).real)
        g_an = float(evaluate(lab.g, square).real)
        norm_an = float(np.linalg.norm(a.blocks[0], 2))
        row = BoundRow(
            N=lab.level,
            n=n,
            p_an=p_an,
            g_an=g_an,
            bound=displayed_bound(n),
            lambda_max=lam,
            alpha_min=alpha,
            norm_an=norm_an,
            kadison=kadison_bound(lab, n),
        )
        report.rows.append(row)
        if not lower * (1 - BOUND_SLACK) <= p_an <= upper * (1 + BOUND_SLACK):
            report.violations.append(f"N={lab.level} n={n}: p(a*a) = {p_an!r} outside [{lower!r}, {upper!r}]")
        if g_an > row.bound * (1 + BOUND_SLACK):
            report.violations.append(f"N={lab.level} n={n}: g(a*a) = {g_an!r} above {row.bound!r}")
        if norm_an > row.kadison * (1 + BOUND_SLACK):
            report.violations.append(f"N={lab.level} n={n}: |a_n| = {norm_an!r} above {row.kadison!r}")
        if lam > g_an / p_an * (1 + BOUND_SLACK) or lam > lambda_bound(n) * (1 + BOUND_SLACK):
            report.violations.append(f"N={lab.level} n={n}: lambda_max = {lam!r} above its bound")
    for violation in report.violations:
        logger.warning(violation)
    return report


def degeneration_chart(
    levels: Sequence[int] = DEFAULT_LEVELS, config: NumericConfig = DEFAULT_CONFIG, seed: int = 0
) -> List[ChartRow]:
    """How the certifying constants degrade with the truncation level"""
    rows = []
    for level in levels:
        lab = build(level, config)
        unique, _ = is_unique(lab.f + lab.p, lab.g, lab.config, seed=seed)
        rows.append(
            ChartRow(
                N=lab.level,
                alpha_min=alpha_min(lab),
                lambda_max=lambda_max(lab),
                singularity_defect=singularity_defect(lab),
                unique=unique,
            )
        )
    return rows


def report_levels(levels: Sequence[int], config: NumericConfig = DEFAULT_CONFIG) -> BoundReport:
    """Concatenated bound reports over several truncation levels"""
    levels = [check_level(level) for level in levels]
    merged = BoundReport()
    for level in levels:
        part = bound_report(build(level, config))
        merged.rows.extend(part.rows)
        merged.violations.extend(part.violations)
    return merged
