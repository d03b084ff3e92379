"""Backend selection for the hot simulation kernels.

The compiled Cython extension is preferred when importable; the pure-Python
module is the fallback. Both consume PCG64 uniforms draw-for-draw in the same
order, so results are bit-identical across backends. Set
AGESAMPLER_PURE_PYTHON=1 to force the fallback (used by tests and benchmarks).
"""

import os

if os.environ.get("AGESAMPLER_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as _impl  # type: ignore[no-redef]

markov_path = _impl.markov_path
policy_rollout = _impl.policy_rollout
BACKEND = _impl.BACKEND


def backend_name() -> str:
    """Which kernel implementation is active: "cython" or "python"."""
    return BACKEND
