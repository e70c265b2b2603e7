"""Independent verification of a functional decomposition."""

import math
from typing import List

import numpy as np
import scipy.linalg as sla
from pydantic import BaseModel, Field

from ..config import DEFAULT_CONFIG, NumericConfig
from ..errors import AlgebraMismatch
from ..functionals import PositiveFunctional, abs_continuous, domination_constant, order_leq, singular
from ..log import logger
from ..numkernel import PsdOperator, support_projection
from ..opdecomp import shorted_operator
from .decompose import Decomposition, random_contraction, sample_below


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name=name, passed=bool(passed), detail=detail))


def _min_eig(arr: np.ndarray) -> float:
    return float(sla.eigvalsh((arr + arr.conj().T) / 2)[0])


def _candidate_below_and_continuous(
    a: PsdOperator, b: PsdOperator, rng: np.random.Generator, config: NumericConfig
) -> np.ndarray:
    """Random C with C <= a and range(C) inside range(b).

    Either a scaled rank-one t v v* with v in range(a) and range(b) and t
    the largest admissible weight, or the short of a random C' <= a to
    support(b).
    """
    ua, ub = a.range_basis(), b.range_basis()
    if ua.shape[1] and ub.shape[1] and rng.uniform() < 0.5:
        common = sla.null_space(np.hstack([ua, -ub]))
        if common.shape[1]:
            coeffs = rng.standard_normal(common.shape[1]) + 1j * rng.standard_normal(common.shape[1])
            v = ua @ (common[: ua.shape[1]] @ coeffs)
            v = v / np.linalg.norm(v)
            inverse = (ua / a.eigvals[: a.rank]) @ ua.conj().T
            weight = 1.0 / float(np.real(v.conj() @ inverse @ v))
            return rng.uniform(0.0, 1.0) * weight * np.outer(v, v.conj())
    root = (a.eigvecs * np.sqrt(a.eigvals)) @ a.eigvecs.conj().T
    below = PsdOperator.from_array(root @ random_contraction(a.dim, rng) @ root, config, certify=False)
    return shorted_operator(below, support_projection(b), config).array


def verify_decomposition(
    f: PositiveFunctional,
    g: PositiveFunctional,
    d: Decomposition,
    config: NumericConfig = DEFAULT_CONFIG,
    seed: int = 0,
) -> VerificationReport:
    """Check every decomposition invariant; failures are reported, not raised"""
    report = VerificationReport()
    if not (f.algebra == g.algebra == d.regular.algebra == d.singular.algebra):
        raise AlgebraMismatch("decomposition and functionals live on different algebras")
    rng = np.random.default_rng(seed)

    residual = max(
        float(np.linalg.norm(r.array + s.array - a.array)) / max(float(np.linalg.norm(a.array)), 1.0)
        for r, s, a in zip(d.regular.operators, d.singular.operators, f.operators)
    )
    report.add("sum", residual <= config.residual_tol, f"relative residual {residual:.3e}")

    for name, part in (("regular_psd", d.regular), ("singular_psd", d.singular)):
        lowest = min(_min_eig(op.array) for op in part.operators)
        scale = max(max(float(np.linalg.norm(op.array, 2)) for op in part.operators), 1.0)
        report.add(name, lowest >= -config.order_tol * scale, f"smallest eigenvalue {lowest:.3e}")

    report.add("regular_abs_continuous", abs_continuous(d.regular, g, config))
    report.add("singular_perp_g", singular(d.singular, g, config))
    report.add("singular_perp_regular", singular(d.singular, d.regular, config))

    alpha = domination_constant(d.regular, g, config)
    dominated = math.isfinite(alpha) and order_leq(d.regular, g.scaled(alpha * (1 + 1e-9)), config)
    report.add("uniform_domination", dominated, f"alpha {alpha:.6g}")

    misses = 0
    for _ in range(config.maximality_samples):
        blocks = [
            _candidate_below_and_continuous(a, b, rng, config) for a, b in zip(f.operators, g.operators)
        ]
        candidate = PositiveFunctional.from_blocks(f.algebra, blocks, config, certify=False)
        if not order_leq(candidate, d.regular, config):
            misses += 1
    report.add("maximality", misses == 0, f"{misses} of {config.maximality_samples} candidates above f_r")

    escapes = 0
    for _ in range(config.maximality_samples):
        if not abs_continuous(sample_below(d.regular, rng, config), g, config):
            escapes += 1
    report.add("below_regular_continuous", escapes == 0, f"{escapes} sampled t <= f_r not << g")

    logger.debug(f"verification: {len(report.checks)} checks, failures {report.failures}")
    return report
