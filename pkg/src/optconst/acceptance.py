"""The twelve acceptance criteria as a runnable suite.

Each criterion returns a :class:`CriterionResult`. The ``payload`` part
depends only on the configuration (seed, samples, budget) and is what the
determinism criterion compares byte for byte; wall-clock timing is kept
apart in ``seconds`` and ``time_limit``.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import data
from .constants import Family, ConstantQuery, Field, khinchine_constant, mixed_littlewood_constant
from .norms import grid_norm
from .special import SQRT_PI, gamma, pair_moment_quadrature, solve_critical, steinhaus_pair_moment
from .steinhaus import discrete_average, extremal_array, mc_average
from .tensor import ComplexTensor, l2_norm
from .torus import apothem
from .verify import _plain, verify_kms_chain, verify_mixed_littlewood, verify_multiple_khinchine

__all__ = ["AcceptanceConfig", "CriterionResult", "CRITERIA", "run_acceptance", "run_criterion"]


@dataclass(frozen=True)
class AcceptanceConfig:
    seed: int = 0
    samples: int = 1_000_000
    threads: int = 0
    budget: int | None = None


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    payload: dict
    seconds: float = 0.0
    time_limit: float | None = None

    @property
    def within_time(self) -> bool:
        return self.time_limit is None or self.seconds < self.time_limit

    def payload_json(self) -> str:
        return json.dumps(
            {"criterion": self.number, "name": self.name, "passed": self.passed, "details": _plain(self.payload)}
        )

    def to_json(self) -> str:
        doc = json.loads(self.payload_json())
        doc["seconds"] = round(self.seconds, 3)
        doc["time_limit"] = self.time_limit
        doc["within_time"] = self.within_time
        return json.dumps(doc)

    def summary(self) -> str:
        status = "PASS" if self.passed and self.within_time else "FAIL"
        timing = f"{self.seconds:.2f}s" + (f" (limit {self.time_limit:g}s)" if self.time_limit else "")
        return f"[{status}] criterion {self.number:2d} {self.name}: {timing}"


def _random_tensor(rng: np.random.Generator, shape: tuple[int, ...]) -> ComplexTensor:
    return ComplexTensor(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def _rng(cfg: AcceptanceConfig, criterion: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed & 0xFFFF_FFFF_FFFF_FFFF, criterion])


def c01_critical(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    p0 = solve_critical("p0").root
    p1 = solve_critical("p1").root
    alpha = p0 / (p0 - 1.0)
    residual = abs(gamma((p0 + 1.0) / 2.0) - SQRT_PI / 2.0)
    ok = residual <= 1e-12 and 1.84 <= p0 <= 1.86 and abs(p1 - 0.4756) <= 5e-4 and abs(alpha - 2.18006) <= 1e-4
    return ok, {"p0": p0, "p0_residual": residual, "p1": p1, "alpha": alpha}


def c02_bilinear_constant(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    cplx = mixed_littlewood_constant(2, math.inf, Field.COMPLEX).value
    real = mixed_littlewood_constant(2, math.inf, Field.REAL).value
    target = 2.0 / SQRT_PI
    ok = abs(cplx - target) <= 1e-12 and real == math.sqrt(2.0)
    return ok, {"complex": cplx, "complex_target": target, "real": real}


def c03_pair_moment(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    rows = []
    ok = True
    for p in (0.3, 1.0, 1.5, 2.0, 3.0, 4.0):
        closed = steinhaus_pair_moment(p)
        quad = pair_moment_quadrature(p)
        ok &= abs(closed - quad) <= 1e-10
        rows.append({"p": p, "closed": closed, "quadrature": quad})
    ok &= abs(steinhaus_pair_moment(2.0) - 2.0) <= 1e-12 and abs(steinhaus_pair_moment(4.0) - 6.0) <= 1e-12
    return bool(ok), {"rows": rows}


def c04_discrete_p2(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    rng = _rng(cfg, 4)
    worst = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 4))
        shape = tuple(int(n) for n in rng.integers(1, 4, size=m))
        M = int(rng.choice([2, 3, 4, 8]))
        a = _random_tensor(rng, shape)
        E = discrete_average(a, M, 2.0, budget=cfg.budget, threads=cfg.threads)
        worst = max(worst, abs(E - l2_norm(a)))
    return worst <= 1e-12, {"cases": 100, "max_abs_error": worst}


def c05_pair_sum_p1(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    target = 4.0 / math.pi
    gaps = []
    for M in (4, 8, 16, 32, 64):
        gaps.append(abs(discrete_average([1.0, 1.0], M, 1.0, threads=cfg.threads) - target))
    decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
    return gaps[-1] <= 1e-3 and decreasing, {"M": [4, 8, 16, 32, 64], "gaps": gaps, "decreasing": decreasing}


def c06_gaussian_limit(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    est = mc_average(extremal_array("uniform", 1, 64), 3.0, cfg.samples, cfg.seed, threads=cfg.threads)
    target = gamma(2.5) ** (1.0 / 3.0)
    dev = abs(est.mean - target)
    ok = dev <= 3.0 * est.std_error
    return ok, {
        "estimate": est.mean,
        "std_error": est.std_error,
        "target": target,
        "deviation_in_std_errors": dev / est.std_error,
        "samples": est.samples,
    }


def c07_multiple_sandwich(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    rng = _rng(cfg, 7)
    arrays = [_random_tensor(rng, (3, 3)) for _ in range(20)]
    rows = []
    ok = True
    for p in (1.0, 3.0):
        lo = khinchine_constant(ConstantQuery(Family.STEINHAUS_LOWER, p)).value ** 2
        hi = khinchine_constant(ConstantQuery(Family.STEINHAUS_UPPER, p)).value ** 2
        for k, a in enumerate(arrays):
            est = mc_average(a, p, cfg.samples, cfg.seed + k, threads=cfg.threads)
            l2 = l2_norm(a)
            good = lo * l2 - 3 * est.std_error <= est.mean <= hi * l2 + 3 * est.std_error
            ok &= good
            rows.append({"p": p, "index": k, "ratio": est.mean / l2, "sigma_ratio": est.std_error / l2, "ok": good})
    return bool(ok), {"rows": rows}


def c08_pair_witness(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    a = extremal_array("pair_ones", 2, 2)
    p = 0.3
    est = mc_average(a, p, cfg.samples, cfg.seed, threads=cfg.threads)
    l2 = l2_norm(a)
    ratio = est.mean / l2
    sigma = est.std_error / l2
    target = khinchine_constant(ConstantQuery(Family.STEINHAUS_LOWER, p)).value ** 2
    dev = abs(ratio - target)
    return dev <= 3.0 * sigma, {"ratio": ratio, "sigma": sigma, "target": target, "deviation_in_sigma": dev / sigma}


def c09_discrete_bound(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    rng = _rng(cfg, 9)
    worst = math.inf
    ok = True
    for _ in range(200):
        m = int(rng.integers(1, 3))
        shape = tuple(int(n) for n in rng.integers(1, 4, size=m))
        M = int(rng.choice([3, 4, 8]))
        p = float(rng.choice([1.0, 1.5, 2.0]))
        r = verify_multiple_khinchine(
            _random_tensor(rng, shape), p, "discrete", M=M, budget=cfg.budget, threads=cfg.threads
        )
        worst = min(worst, r.margin)
        ok &= r.margin >= -1e-9
    # The certificate enumerates M^(total coordinates) rows against a grid of
    # the same size, so the construction is checked on M in {3, 4}.
    worst_cert = 0.0
    for _ in range(50):
        m = int(rng.integers(1, 3))
        shape = tuple(int(n) for n in rng.integers(1, 4, size=m))
        M = int(rng.choice([3, 4]))
        p = float(rng.choice([1.0, 1.5, 2.0]))
        r = verify_kms_chain(_random_tensor(rng, shape), M, p, budget=cfg.budget, threads=cfg.threads)
        cert = r.params["certificate"]
        worst_cert = max(worst_cert, cert)
        ok &= cert <= 1.0 + 1e-9 and r.passed
    return bool(ok), {"bound_cases": 200, "min_margin": worst, "form_cases": 50, "max_certificate": worst_cert}


def c10_norm_sandwich(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    L = data.littlewood_matrix()
    g3 = grid_norm(L, 3, budget=cfg.budget, threads=cfg.threads)
    g4 = grid_norm(L, 4, budget=cfg.budget, threads=cfg.threads)
    hand3 = 1.0 + math.sqrt(3.0)
    hand4 = 2.0 * math.sqrt(2.0)
    matrix_ok = abs(g3 - hand3) <= 1e-12 and abs(g4 - hand4) <= 1e-12
    rng = _rng(cfg, 10)
    refine_ok = True
    violations = 0
    for _ in range(50):
        shape = tuple(int(n) for n in rng.integers(1, 4, size=2))
        T = _random_tensor(rng, shape)
        for M in (3, 4, 5):
            gM = grid_norm(T, M, budget=cfg.budget, threads=cfg.threads)
            g2M = grid_norm(T, 2 * M, budget=cfg.budget, threads=cfg.threads)
            good = gM <= g2M <= apothem(M) ** (-2) * gM + 1e-9
            refine_ok &= good
            violations += not good
    return bool(matrix_ok and refine_ok), {
        "littlewood_M3": g3,
        "littlewood_M3_expected": hand3,
        "littlewood_M4": g4,
        "littlewood_M4_expected": hand4,
        "matrix_ok": matrix_ok,
        "refinement_cases": 150,
        "refinement_violations": violations,
    }


def c11_mixed_littlewood(cfg: AcceptanceConfig) -> tuple[bool, dict]:
    rng = _rng(cfg, 11)
    inputs = [("identity3", data.identity_tensor()), ("littlewood2", data.littlewood_matrix())]
    for k in range(50):
        m = int(rng.integers(2, 4))
        inputs.append((f"random{k}", _random_tensor(rng, (2,) * m)))
    ok = True
    runs = fails = chain_fails = 0
    min_margin = math.inf
    for label, T in inputs:
        for p in (2.0, 4.0, math.inf):
            for variant in range(T.m):
                r = verify_mixed_littlewood(T, p, variant, 8, budget=cfg.budget, threads=cfg.threads)
                runs += 1
                fails += not r.passed
                chain_fails += not r.params["chain_ok"]
                min_margin = min(min_margin, r.margin)
                ok &= r.passed
    return bool(ok), {"runs": runs, "failed": fails, "chain_failures": chain_fails, "min_margin": min_margin}


_Fn = Callable[[AcceptanceConfig], "tuple[bool, dict]"]

CRITERIA: dict[int, tuple[str, _Fn, float | None]] = {
    1: ("critical exponents", c01_critical, 1.0),
    2: ("bilinear Littlewood constant", c02_bilinear_constant, None),
    3: ("pair moment vs quadrature", c03_pair_moment, 1.0),
    4: ("discrete p=2 exactness", c04_discrete_p2, 10.0),
    5: ("pair sum p=1 by enumeration", c05_pair_sum_p1, 5.0),
    6: ("Gaussian limit, MC", c06_gaussian_limit, 60.0),
    7: ("multiple Khinchine sandwich, MC", c07_multiple_sandwich, 120.0),
    8: ("extremal witness ratio, MC", c08_pair_witness, 60.0),
    9: ("discrete multiple Khinchine bound", c09_discrete_bound, 120.0),
    10: ("norm sandwich and refinement", c10_norm_sandwich, 60.0),
    11: ("mixed Littlewood verification", c11_mixed_littlewood, 120.0),
}


def run_criterion(number: int, cfg: AcceptanceConfig | None = None) -> CriterionResult:
    cfg = cfg or AcceptanceConfig()
    if number == 12:
        return c12_determinism(cfg)
    name, fn, limit = CRITERIA[number]
    start = time.perf_counter()
    ok, payload = fn(cfg)
    return CriterionResult(number, name, bool(ok), payload, time.perf_counter() - start, limit)


def c12_determinism(cfg: AcceptanceConfig) -> CriterionResult:
    start = time.perf_counter()
    mismatched = []
    # Monte Carlo criteria are included: their streams depend on the seed only.
    for number in CRITERIA:
        one = run_criterion(number, AcceptanceConfig(cfg.seed, cfg.samples, 1, cfg.budget)).payload_json()
        eight = run_criterion(number, AcceptanceConfig(cfg.seed, cfg.samples, 8, cfg.budget)).payload_json()
        if one != eight:
            mismatched.append(number)
    return CriterionResult(
        12,
        "determinism across thread counts",
        not mismatched,
        {"checked": list(CRITERIA), "mismatched": mismatched},
        time.perf_counter() - start,
        None,
    )


def run_acceptance(cfg: AcceptanceConfig | None = None, only: list[int] | None = None) -> list[CriterionResult]:
    cfg = cfg or AcceptanceConfig()
    numbers = only or list(range(1, 13))
    return [run_criterion(n, cfg) for n in numbers]
