"""Seeded property suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .brackets import (
    BracketTable,
    _act,
    check_bracket_relations,
    check_sl5_invariance,
    e_epsilon,
    random_quadruple,
    random_special_linear,
    random_general_linear,
)
from .cocycle import PoleError, check_cocycle_law, cocycle_eval, normalize, random_cocycle
from .exact import InputError
from .phi import check_equivariance, phi_entry, rank_table


@dataclass
class SuiteResult:
    name: str
    trials: int
    seed: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent stream per trial, so any failing trial can be replayed alone."""
    return random.Random(f"{seed}/{trial}")


def suite_rank_table(trials: int = 1, seed: int = 0) -> SuiteResult:
    result = SuiteResult("rank-table", 5, seed)
    for row in rank_table():
        if not row.ok:
            result.failures.append(f"{row.label}: rank {row.rank}, expected {row.expected_rank}")
    return result


def suite_equivariance(trials: int = 100, seed: int = 0) -> SuiteResult:
    result = SuiteResult("equivariance", trials, seed)
    for t in range(trials):
        rng = trial_rng(seed, t)
        x = random_quadruple(rng)
        a = random_special_linear(rng)
        b = random_general_linear(rng)
        report = check_equivariance(a, b, x)
        if not report.ok:
            result.failures.append(f"seed={seed} trial={t}: discrepancy {report.max_discrepancy}")
    return result


def suite_brackets(trials: int = 10, seed: int = 0) -> SuiteResult:
    result = SuiteResult("brackets", trials, seed)
    for t in range(trials):
        rng = trial_rng(seed, t)
        x = random_quadruple(rng)
        for v in check_bracket_relations(x):
            result.failures.append(f"seed={seed} trial={t}: {v}")
        for v in check_sl5_invariance(random_special_linear(rng), x):
            result.failures.append(f"seed={seed} trial={t}: {v}")
    return result


def eps_relations(x, eps) -> dict[str, tuple[Fraction, Fraction]]:
    """Both sides of the four E_eps identities at ``x``."""
    eps = Fraction(eps)
    t = BracketTable(x)
    te = BracketTable(_act(linalg.identity(5), e_epsilon(eps), x))
    p = lambda s, u: phi_entry(t, s, u)  # noqa: E731
    pe = lambda s, u: phi_entry(te, s, u)  # noqa: E731
    return {
        "phi11^E = phi11 + 2 eps phi12 + eps^2 phi22": (pe(1, 1), p(1, 1) + 2 * eps * p(1, 2) + eps**2 * p(2, 2)),
        "phi22^E = phi22": (pe(2, 2), p(2, 2)),
        "phi13^E = phi13 + eps phi23": (pe(1, 3), p(1, 3) + eps * p(2, 3)),
        "phi34^E = phi34": (pe(3, 4), p(3, 4)),
    }


def suite_eps(trials: int = 10, seed: int = 0) -> SuiteResult:
    result = SuiteResult("eps", trials, seed)
    for t in range(trials):
        rng = trial_rng(seed, t)
        x = random_quadruple(rng)
        eps = Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.choice((1, 2, 5)))
        for name, (lhs, rhs) in eps_relations(x, eps).items():
            if lhs != rhs:
                result.failures.append(f"seed={seed} trial={t} eps={eps}: {name}")
    return result


def suite_cocycle(trials: int = 100, seed: int = 0) -> SuiteResult:
    result = SuiteResult("cocycle", trials, seed)
    for t in range(trials):
        rng = trial_rng(seed, t)
        b = random_cocycle(rng)
        flat = normalize(b)
        while True:
            m = [rng.randint(-3, 3) for _ in range(b.r)]
            m2 = [rng.randint(-3, 3) for _ in range(b.r)]
            s = [Fraction(rng.randint(-30, 30), rng.choice((7, 11, 13))) for _ in range(b.r)]
            try:
                law = check_cocycle_law(b, m, m2, s)
                same = all(cocycle_eval(b, v, s) == cocycle_eval(flat, v, s) for v in (m, m2))
            except PoleError:
                continue
            break
        if not law:
            result.failures.append(f"seed={seed} trial={t}: cocycle law fails at m={m} m'={m2} s={s}")
        if not same:
            result.failures.append(f"seed={seed} trial={t}: normalization changed values at s={s}")
    return result


SUITES = {
    "rank-table": suite_rank_table,
    "equivariance": suite_equivariance,
    "brackets": suite_brackets,
    "cocycle": suite_cocycle,
    "eps": suite_eps,
}


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    fn = SUITES[name]
    return fn(seed=seed) if trials is None else fn(trials=trials, seed=seed)
