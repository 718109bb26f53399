"""Kernel backend selection.

The compiled extension is used when it imports; set ``PRDENSE_PURE=1`` to
force the pure-Python fallback.  ``use_backend`` switches at runtime (tests
and the benchmark run both).
"""
import os
import sys

from . import _pure

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_NAMES = ("threshold_peel", "load_peel", "charge_counts", "best_suffix", "add_loads",
          "counting_sort")

BACKEND = None


def available_backends():
    return ["compiled", "pure"] if _compiled is not None else ["pure"]


def use_backend(name: str) -> None:
    global BACKEND
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built; run `pip install -e .`")
        mod = _compiled
    elif name == "pure":
        mod = _pure
    else:
        raise ValueError(f"unknown backend {name!r}")
    this = sys.modules[__name__]
    for fn in _NAMES:
        setattr(this, fn, getattr(mod, fn))
    BACKEND = name


use_backend("pure" if _compiled is None or os.environ.get("PRDENSE_PURE") == "1" else "compiled")
