# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Reliability

 Poisson reliability model of a word-organised memory and the redundancy rate of
 a line layout.

 Bit faults are independent with rate lambda per bit and unit time. For an n-bit
 word the probability of exactly i faulty bits at time t is

    P{iF} = C(n, i) (1 - exp(-lambda t))^i exp(-lambda (n - i) t)

 and the memory of M words survives with probability

    R(t) = (1 - P{MF} + sum_{i=1..Ne} P{iF} P{FC|iF})^M

 where P{FC|iF} is the fraction of i-flip upsets the layout corrects.
"""

import logging
import math

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from scipy.optimize import brentq
from scipy.special import comb

logger = logging.getLogger(__name__)

GROUP_ORDER = ("G1", "G2", "G3", "G4")


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ReliabilityInput:
    lam: float
    fc_table: Tuple[float, ...]
    n_word: int = 32
    words: int = 50

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("Bit fault rate 'lambda' must be > 0, got %r" % (self.lam,))
        if self.words < 1:
            raise ValueError("Word count 'M' must be >= 1, got %r" % (self.words,))
        if self.n_word < 1:
            raise ValueError("Word width 'n_word' must be >= 1, got %r" % (self.n_word,))
        if len(self.fc_table) < 1:
            raise ValueError("'fc_table' needs at least one entry (Ne >= 1)")
        if len(self.fc_table) > self.n_word:
            raise ValueError("'fc_table' has %d entries but a word only has %d bits"
                             % (len(self.fc_table), self.n_word))
        for i, value in enumerate(self.fc_table, start=1):
            if not 0.0 <= value <= 1.0:
                raise ValueError("P{FC|%dF} must be within [0,1], got %r" % (i, value))

    @property
    def ne(self):
        return len(self.fc_table)


@dataclass(frozen=True)
class RedundancyProfile:
    r_total: int
    n_total: int

    @property
    def tr(self):
        return self.r_total / self.n_total


def _check_time(t):
    if t < 0:
        raise ValueError("Time 't' must be >= 0, got %r" % (t,))


def p_if(i, rel, t):
    """Probability of exactly i faulty bits in one word at time t.

    Can raise:
        ValueError if i is outside 0..n_word or t < 0.
    """
    if not 0 <= i <= rel.n_word:
        raise ValueError("Fault count 'i' must be within 0..%d, got %r" % (rel.n_word, i))
    _check_time(t)
    x = rel.lam * t
    # 1 - exp(-x) without cancellation for small x
    pBit = -math.expm1(-x)
    return float(comb(rel.n_word, i, exact=True)) * pBit ** i * math.exp(-x * (rel.n_word - i))


def p_mf(rel, t):
    """Probability that a word holds at least one faulty bit at time t."""
    _check_time(t)
    return -math.expm1(-rel.lam * rel.n_word * t)


def f_c(rel, t):
    """Probability that a faulty word is corrected, sum_i P{FC|iF} P{iF}/P{MF}.

    Can raise:
        ValueError at t = 0 where P{MF} = 0.
    """
    failure = p_mf(rel, t)
    if failure == 0.0:
        raise ValueError("F_c is undefined at t = %r because P{MF} = 0" % (t,))
    return sum(fc * p_if(i, rel, t) for i, fc in enumerate(rel.fc_table, start=1)) / failure


def reliability(rel, t):
    """Memory reliability R(t) for M independent words."""
    corrected = sum(fc * p_if(i, rel, t) for i, fc in enumerate(rel.fc_table, start=1))
    base = 1.0 - p_mf(rel, t) + corrected
    return min(1.0, base) ** rel.words


def reliability_series(rel, tGrid):
    return np.array([reliability(rel, float(t)) for t in tGrid])


def fc_table_from_campaign(result):
    """P{FC|iF} for i = 1..4 as the DC fraction of group Gi.

    Can raise:
        ValueError if any of the four groups is missing from the result.
    """
    perGroup = result.per_group
    missing = [g for g in GROUP_ORDER if g not in perGroup]
    if missing:
        raise ValueError("Campaign result for '%s' lacks group(s) %s"
                         % (result.layout, ", ".join(missing)))
    return tuple(perGroup[g].rates()["dc"] / 100.0 for g in GROUP_ORDER)


def redundancy_rate(layout):
    """Redundancy bits over coded bits of a line; uncovered columns do not count.

    Can raise:
        ValueError if the layout has no code blocks.
    """
    if not layout.blocks:
        raise ValueError("Layout '%s' has no code blocks" % layout.name)
    return RedundancyProfile(r_total=layout.redundancy_bits, n_total=layout.coded_bits)


def calibrate_lambda(fcTable, t, target, n_word=32, words=50, lamRange=(1e-15, 1.0)):
    """Solve for the bit fault rate giving R(t) = target.

    R decreases with lambda, so the root is bracketed on log(lambda) and found with
    Brent's method.

    Can raise:
        ValueError for a target outside (0, 1) or t <= 0.
        CalibrationError if the target is not reachable within lamRange or the solver
        does not converge.
    """
    if not 0.0 < target < 1.0:
        raise ValueError("Calibration target R must be within (0,1), got %r" % (target,))
    if not t > 0:
        raise ValueError("Calibration time must be > 0, got %r" % (t,))

    fcTable = tuple(fcTable)

    def residual(logLam):
        rel = ReliabilityInput(lam=math.exp(logLam), fc_table=fcTable, n_word=n_word,
                               words=words)
        return reliability(rel, t) - target

    lo, hi = math.log(lamRange[0]), math.log(lamRange[1])
    fLo, fHi = residual(lo), residual(hi)
    logger.debug("Calibration bracket R-target: %.3g at lambda=%g, %.3g at lambda=%g"
                 % (fLo, lamRange[0], fHi, lamRange[1]))
    if fLo * fHi > 0:
        raise CalibrationError("R(%g) = %g is not reachable for lambda in [%g, %g]"
                               % (t, target, lamRange[0], lamRange[1]))
    try:
        logLam, info = brentq(residual, lo, hi, xtol=1e-14, full_output=True,
                              disp=False)
    except (ValueError, RuntimeError) as e:
        raise CalibrationError("Calibration failed: %s" % str(e))
    if not info.converged:
        raise CalibrationError("Calibration did not converge after %d iterations: %s"
                               % (info.iterations, info.flag))

    lam = math.exp(logLam)
    logger.debug("Calibrated lambda = %.6g after %d iterations" % (lam, info.iterations))
    return lam

# END Module reliability
