"""Pure-Python simulation kernels (fallback backend).

Contract shared with the Cython twin in _kernel_cy.pyx:

- one uniform is consumed per simulated slot from the source stream, one per
  sampling decision from the policy stream, in slot/decision order;
- a state or interval is chosen by an inverse-CDF scan over the cumulative
  row: the first index i with u < cum[i], clamped to the last index.

Uniforms come from numpy BitGenerators (PCG64 in practice) via
Generator.random, drawn in blocks for speed; block draws consume the stream
in the same order as single draws, so the two backends stay bit-identical.
"""

import numpy as np

BACKEND = "python"

_BLOCK = 1 << 16


class _Uniforms:
    """Buffered uniform draws from a BitGenerator."""

    def __init__(self, bit_generator):
        self._gen = np.random.Generator(bit_generator)
        self._buf = ()
        self._pos = 0

    def take(self) -> float:
        if self._pos >= len(self._buf):
            self._buf = self._gen.random(_BLOCK).tolist()
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return u


def markov_path(cum_rows, x0, horizon, bit_generator):
    """Simulate states X_0..X_horizon; returns an int64 array."""
    n = cum_rows.shape[0]
    rows = cum_rows.tolist()
    uni = _Uniforms(bit_generator)
    out = np.empty(horizon + 1, dtype=np.int64)
    out[0] = x0
    s = x0
    take = uni.take
    top = n - 1
    for t in range(1, horizon + 1):
        u = take()
        row = rows[s]
        i = 0
        while i < top and u >= row[i]:
            i += 1
        s = i
        out[t] = s
    return out


def policy_rollout(cum_chain, cum_policy, x0, n_decisions, burn_in,
                   source_bits, policy_bits, trace=False):
    """Run a Markov sampling policy for n_decisions sampling decisions.

    Per decision: draw the next inter-sampling interval tau from the policy
    row of the currently observed state, evolve the source tau slots, and
    record the age penalty max(0, tau - first_change) where first_change is
    the offset of the first slot whose state differs from the previous one.
    Decisions before burn_in are excluded from the sums.

    Returns (sum_tau, sum_age, taus, ages); the arrays cover every decision
    including burn-in and are None unless trace is requested.
    """
    n = cum_chain.shape[0]
    m = cum_policy.shape[1]
    chain_rows = cum_chain.tolist()
    policy_rows = cum_policy.tolist()
    src = _Uniforms(source_bits).take
    pol = _Uniforms(policy_bits).take
    taus = np.empty(n_decisions, dtype=np.int64) if trace else None
    ages = np.empty(n_decisions, dtype=np.int64) if trace else None
    sum_tau = 0
    sum_age = 0
    x = x0
    n_top = n - 1
    m_top = m - 1
    for k in range(n_decisions):
        u = pol()
        row = policy_rows[x]
        tau = 0
        while tau < m_top and u >= row[tau]:
            tau += 1
        tau += 1
        s = x
        first = 0
        for step in range(1, tau + 1):
            u = src()
            row = chain_rows[s]
            i = 0
            while i < n_top and u >= row[i]:
                i += 1
            if first == 0 and i != s:
                first = step
            s = i
        age = tau - first if first > 0 else 0
        assert 0 <= age <= tau - 1
        if k >= burn_in:
            sum_tau += tau
            sum_age += age
        if trace:
            taus[k] = tau
            ages[k] = age
        x = s
    return sum_tau, sum_age, taus, ages
