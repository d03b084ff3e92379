"""Age-penalty costs and the clairvoyant sampling frequency.

The cost of choosing interval tau while observing state j is the expected
number of slots the chain has already spent outside j when the next sample
arrives: sum over n = 1..tau-1 of (tau - n) * (1 - p_jj) * p_jj^(n-1).
Costs are computed by this direct finite sum; the geometric closed form
(tau-1) - p_jj (1 - p_jj^(tau-1)) / (1 - p_jj) is kept as a cross-check only
because it degenerates to 0/0 as p_jj -> 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dtmc import MarkovChain


def age_cost(p_jj: float, tau: int) -> float:
    """Expected age penalty (slots) for interval tau given self-loop prob p_jj.

    Total for p_jj = 1 (returns 0: the chain never leaves, nothing to age
    against), although ergodic chains never produce that input.
    """
    if not 0.0 <= p_jj <= 1.0:
        raise ValueError(f"p_jj must be in [0, 1], got {p_jj!r}")
    if tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    total = 0.0
    q = 1.0 - p_jj
    pw = 1.0
    for n in range(1, tau):
        total += (tau - n) * q * pw
        pw *= p_jj
    return total


def age_cost_closed_form(p_jj: float, tau: int) -> float:
    """Geometric-sum form of age_cost; requires p_jj < 1. Cross-check only."""
    if p_jj >= 1.0:
        raise ValueError("closed form is undefined at p_jj = 1")
    return (tau - 1) - p_jj * (1.0 - p_jj ** (tau - 1)) / (1.0 - p_jj)


@dataclass(frozen=True)
class CostTable:
    """c[j][tau-1] = expected age penalty for interval tau from state j."""

    m_max: int
    c: np.ndarray


def cost_table(chain: MarkovChain, m_max: int) -> CostTable:
    """Tabulate age_cost for every state and every interval 1..m_max."""
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    n = chain.n_states
    c = np.zeros((n, m_max))
    for j in range(n):
        for tau in range(1, m_max + 1):
            c[j, tau - 1] = age_cost(float(chain.p[j, j]), tau)
    c.flags.writeable = False
    return CostTable(m_max=m_max, c=c)


def clairvoyant_frequency(chain: MarkovChain) -> float:
    """Average sampling frequency of the clairvoyant policy that samples
    exactly at transition instants: 1 minus the stationary self-loop mass."""
    return 1.0 - float(np.dot(chain.stationary, np.diag(chain.p)))
