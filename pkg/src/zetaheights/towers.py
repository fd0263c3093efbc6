"""Towers of number fields: monotone prime sums, splitting-ratio limits,
the splitting-condition height sum, and family constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateDiscriminantError, DegreeMismatchError, DomainError
from .fields import NumberField, build_number_field, splitting_table
from .primes import prime_powers


@dataclass(frozen=True)
class Tower:
    """Ordered sequence of number fields with strictly increasing degree."""

    levels: tuple
    degree_divisibility_checked: bool = True


def build_tower(polys, check_divisibility: bool = True) -> Tower:
    """Tower from defining polynomials (subfield relations taken on trust)."""
    levels = tuple(build_number_field(f) for f in polys)
    if not levels:
        raise DomainError("tower must have at least one level")
    for a, b in zip(levels, levels[1:]):
        if b.n_K <= a.n_K:
            raise DegreeMismatchError("degrees must strictly increase")
        if check_divisibility and b.n_K % a.n_K != 0:
            raise DegreeMismatchError(
                f"degree {b.n_K} not a multiple of {a.n_K}")
    return Tower(levels=levels, degree_divisibility_checked=check_divisibility)


@dataclass(frozen=True)
class MonotoneSums:
    lower_level_sum: float
    upper_level_sum: float
    holds: bool


def monotone_prime_sums(K: NumberField, L: NumberField, x: int) -> MonotoneSums:
    """Weighted norm-count sums sum_{q<=x} N_q log q / degree for K vs L.

    The lower level's sum dominates; the caller asserts K is a subfield of
    L, and only degree divisibility is verified here.
    """
    if L.n_K % K.n_K != 0:
        raise DegreeMismatchError("upper degree not a multiple of lower")
    lower = _weighted_sum(K, x)
    upper = _weighted_sum(L, x)
    return MonotoneSums(lower_level_sum=lower, upper_level_sum=upper,
                        holds=lower >= upper - 1e-12)


def _weighted_sum(K: NumberField, x: int) -> float:
    table = splitting_table(K, x)
    return math.fsum(c * math.log(q) for q, c in table.counts.items() if c) / K.n_K


@dataclass(frozen=True)
class PsiEstimates:
    cutoff: int
    ratios: dict          # q -> tuple of N_q(L_i)/n_{L_i} down the tower
    psi_hat: dict         # q -> deepest-level ratio
    asymptotically_positive: bool


def psi_estimates(tower: Tower, q_cutoff: int) -> PsiEstimates:
    """Splitting ratios per prime power down the tower; deepest level is
    taken as the estimate of the limiting ratio."""
    if not tower.levels:
        raise DomainError("empty tower")
    tables = [splitting_table(K, q_cutoff) for K in tower.levels]
    ratios = {}
    for q, _p, _k in prime_powers(q_cutoff):
        ratios[q] = tuple(t.counts.get(q, 0) / K.n_K
                          for t, K in zip(tables, tower.levels))
    psi_hat = {q: seq[-1] for q, seq in ratios.items()}
    return PsiEstimates(cutoff=q_cutoff, ratios=ratios, psi_hat=psi_hat,
                        asymptotically_positive=any(v > 0 for v in psi_hat.values()))


def bz_sum(est: PsiEstimates) -> float:
    """(1/2) sum_q psi_hat(q) log q / (q + 1) up to the estimate cutoff."""
    return 0.5 * math.fsum(v * math.log(q) / (q + 1)
                           for q, v in est.psi_hat.items() if v)


@dataclass(frozen=True)
class FamilyConstants:
    phi_q: dict
    phi_R: float
    phi_C: float
    classification: str  # "asymptotically_good" | "asymptotically_bad"


def family_constants(tower: Tower, q_cutoff: int = 30) -> FamilyConstants:
    """Top-level ratios against log sqrt(d): phi_q, phi_R, phi_C.

    The finite-level proxy classifies the family as bad exactly when every
    returned constant vanishes.
    """
    top = tower.levels[-1]
    if top.abs_disc <= 1:
        raise DegenerateDiscriminantError("family constants need |d| > 1")
    denom = 0.5 * top.log_abs_disc
    table = splitting_table(top, q_cutoff)
    phi_q = {q: c / denom for q, c in sorted(table.counts.items())}
    phi_r = top.r1 / denom
    phi_c = top.r2 / denom
    bad = (all(abs(v) <= 1e-12 for v in phi_q.values())
           and abs(phi_r) <= 1e-12 and abs(phi_c) <= 1e-12)
    return FamilyConstants(phi_q=phi_q, phi_R=phi_r, phi_C=phi_c,
                           classification="asymptotically_bad" if bad
                           else "asymptotically_good")


@dataclass(frozen=True)
class CorollaryRow:
    degree: int
    lhs: float
    rhs: float
    holds: bool


def tower_corollary_report(tower: Tower, slack: float = 0.0):
    """Per level: (1/2) sum_{q <= log n} psi_hat_q log q / sqrt q against
    (1/2)(log d / n)(1 + slack), the finite-level splitting-sum bound."""
    rows = []
    for i, K in enumerate(tower.levels):
        logn = math.log(K.n_K) if K.n_K > 1 else 0.0
        est = psi_estimates(Tower(tower.levels[: i + 1]), max(2, int(logn)))
        lhs = 0.5 * math.fsum(v * math.log(q) / math.sqrt(q)
                              for q, v in est.psi_hat.items()
                              if v and q <= logn)
        rhs = 0.5 * (K.log_abs_disc / K.n_K) * (1.0 + slack)
        rows.append(CorollaryRow(degree=K.n_K, lhs=lhs, rhs=rhs,
                                 holds=lhs <= rhs + 1e-12))
    return rows
