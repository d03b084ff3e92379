"""Finite-state discrete-time Markov chain: validation, analysis, sample paths.

A chain is accepted only if it is row-stochastic and ergodic (irreducible and
aperiodic); every steady-state formula downstream relies on that. The
stationary distribution is computed once at construction by a direct linear
solve, not power iteration, so there is no iteration tolerance to tune.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ChainFormatError, NotErgodic, NotStochastic
from . import _kernels

ROW_SUM_TOL = 1e-9
STATIONARY_TOL = 1e-10


def _check_stochastic(p: np.ndarray) -> None:
    n = p.shape[0]
    for j in range(n):
        row = p[j]
        if np.any(row < 0.0) or np.any(row > 1.0 + 1e-12):
            k = int(np.argmax((row < 0.0) | (row > 1.0 + 1e-12)))
            raise NotStochastic(f"entry p[{j}][{k}] = {row[k]!r} is outside [0, 1]")
        s = float(row.sum())
        if abs(s - 1.0) > ROW_SUM_TOL:
            raise NotStochastic(f"row {j} sums to {s!r}, expected 1 within {ROW_SUM_TOL}")


def _check_ergodic(p: np.ndarray) -> None:
    """Reject reducible or periodic chains.

    Irreducibility: the digraph of positive entries must be strongly
    connected (forward and backward reachability from state 0).
    Aperiodicity: gcd over all edges (u, v) of level[u] + 1 - level[v],
    with levels from a BFS rooted at state 0, must be 1.
    """
    n = p.shape[0]
    adj = p > 0.0

    def reach(mat: np.ndarray) -> np.ndarray:
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = [0]
        while frontier:
            u = frontier.pop()
            for v in np.nonzero(mat[u])[0]:
                if not seen[v]:
                    seen[v] = True
                    frontier.append(int(v))
        return seen

    fwd = reach(adj)
    if not fwd.all():
        missing = int(np.argmin(fwd))
        raise NotErgodic(f"state {missing} is unreachable from state 0 (chain is reducible)")
    bwd = reach(adj.T)
    if not bwd.all():
        missing = int(np.argmin(bwd))
        raise NotErgodic(f"state 0 is unreachable from state {missing} (chain is reducible)")

    level = np.full(n, -1, dtype=np.int64)
    level[0] = 0
    queue = [0]
    while queue:
        u = queue.pop(0)
        for v in np.nonzero(adj[u])[0]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(int(v))
    g = 0
    for u in range(n):
        for v in np.nonzero(adj[u])[0]:
            g = math.gcd(g, abs(int(level[u]) + 1 - int(level[v])))
    if g != 1:
        raise NotErgodic(f"chain is periodic with period {g}")


def _stationary(p: np.ndarray) -> np.ndarray:
    # xi' (P - I) = 0 with one equation replaced by the normalization row.
    n = p.shape[0]
    a = p.T - np.eye(n)
    a[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    xi = np.linalg.solve(a, b)
    if abs(float(xi.sum()) - 1.0) > STATIONARY_TOL:
        raise RuntimeError("stationary distribution does not normalize")
    if np.max(np.abs(xi @ p - xi)) > STATIONARY_TOL:
        raise RuntimeError("stationary distribution does not satisfy the equilibrium equations")
    return xi


@dataclass(frozen=True)
class MarkovChain:
    """Validated ergodic DTMC with its stationary distribution.

    Immutable after construction; safe to share across threads.
    """

    p: np.ndarray
    n_states: int = field(init=False)
    stationary: np.ndarray = field(init=False)

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise NotStochastic(f"transition matrix must be square, got shape {p.shape}")
        if p.shape[0] < 2:
            raise NotStochastic("need at least 2 states")
        if not np.all(np.isfinite(p)):
            raise NotStochastic("transition matrix contains non-finite entries")
        p = p.copy()
        _check_stochastic(p)
        _check_ergodic(p)
        xi = _stationary(p)
        cum = np.cumsum(p, axis=1)
        for arr in (p, xi, cum):
            arr.flags.writeable = False
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n_states", p.shape[0])
        object.__setattr__(self, "stationary", xi)
        object.__setattr__(self, "_cum_rows", cum)

    def cum_rows(self) -> np.ndarray:
        """Row-wise cumulative probabilities, used by the sampling kernels."""
        return self._cum_rows


def new_chain(p) -> MarkovChain:
    """Validate a transition matrix and return the chain."""
    return MarkovChain(np.asarray(p, dtype=np.float64))


@dataclass(frozen=True)
class SamplePath:
    """States X_0..X_H plus the slot indices where the state changed."""

    states: np.ndarray
    transition_instants: np.ndarray

    @property
    def horizon(self) -> int:
        return len(self.states) - 1


def n_step(chain: MarkovChain, n: int) -> np.ndarray:
    """n-step transition matrix P^n (P^0 is the identity).

    Plain products up to n = 8, repeated squaring beyond.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    p = chain.p
    size = chain.n_states
    if n == 0:
        return np.eye(size)
    if n <= 8:
        out = p.copy()
        for _ in range(n - 1):
            out = out @ p
        return out
    out = np.eye(size)
    base = p.copy()
    e = n
    while e:
        if e & 1:
            out = out @ base
        e >>= 1
        if e:
            base = base @ base
    return out


def sample_path(chain: MarkovChain, x0: int, horizon: int, seed: int) -> SamplePath:
    """Simulate `horizon` slots from X_0 = x0; deterministic for a fixed seed.

    Randomness comes from a PCG64 stream seeded through SeedSequence(seed),
    one inverse-CDF draw per slot, so paths reproduce across platforms and
    across the compiled/pure kernel backends.
    """
    if not (0 <= x0 < chain.n_states):
        raise ValueError(f"x0 must be a state index in [0, {chain.n_states}), got {x0}")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    bitgen = np.random.PCG64(np.random.SeedSequence(seed))
    states = _kernels.markov_path(chain.cum_rows(), x0, horizon, bitgen)
    instants = np.nonzero(states[1:] != states[:-1])[0] + 1
    return SamplePath(states=states, transition_instants=instants.astype(np.int64))


def _chain_payload(obj, source: str) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ChainFormatError(f"{source}: top-level value must be a JSON object")
    if "p" not in obj:
        raise ChainFormatError(f'{source}: missing required field "p"')
    rows = obj["p"]
    if not isinstance(rows, list) or not rows:
        raise ChainFormatError(f'{source}: field "p" must be a non-empty list of rows')
    n = len(rows)
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ChainFormatError(f'{source}: "p"[{i}] must be a list')
        if len(row) != n:
            raise ChainFormatError(f'{source}: "p"[{i}] has length {len(row)}, expected {n}')
        for k, v in enumerate(row):
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise ChainFormatError(f'{source}: "p"[{i}][{k}] is not a number')
    return np.asarray(rows, dtype=np.float64)


def chain_from_json_file(path) -> MarkovChain:
    """Load {"p": [[...], ...]} and validate it; errors name the bad field."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ChainFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return new_chain(_chain_payload(obj, str(path)))
