"""Kernel backend selection.

The compiled extension (core_c) is preferred when importable; the
numpy-vectorized fallback (core_py) is always available and produces
bit-identical results.  Set AGKEQ_BACKEND=py or =c to force one.
"""

import os

import numpy as np

from . import core_py

ACTIVE = core_py
try:
    from . import core_c

    HAVE_C = True
except ImportError:
    core_c = None
    HAVE_C = False

_choice = os.environ.get("AGKEQ_BACKEND", "").strip().lower()
if _choice == "py":
    ACTIVE = core_py
elif _choice == "c":
    if not HAVE_C:
        raise ImportError("AGKEQ_BACKEND=c but the compiled backend is not built")
    ACTIVE = core_c
elif HAVE_C:
    ACTIVE = core_c

NAME = ACTIVE.NAME

# elementwise helpers are numpy-fast already; shared by both backends
vec_mul = core_py.vec_mul
scale = core_py.scale


def supported(field):
    """Whether the kernel set covers this field (char 2, table-sized)."""
    return field.p == 2 and field.q <= (1 << 16)


def get(name):
    if name == "py":
        return core_py
    if name == "c":
        if not HAVE_C:
            raise ImportError("compiled backend not built")
        return core_c
    raise ValueError(f"unknown backend {name!r}")


def _c(a):
    return np.ascontiguousarray(a)


def matmul(a, b, tab):
    return ACTIVE.matmul(_c(a), _c(b), tab)


def rref(a, tab):
    return ACTIVE.rref(_c(a), tab)


def batch_mul_trunc(a, b, tab):
    return ACTIVE.batch_mul_trunc(_c(a), _c(b), tab)


def contract(t, y, tab):
    return ACTIVE.contract(_c(t), _c(y), tab)


def bilinear(p, y, q, tab):
    return ACTIVE.bilinear(_c(p), _c(y), _c(q), tab)


def residue_quotient(num, den, num_start, target, tab):
    return ACTIVE.residue_quotient(_c(num), _c(den), _c(num_start), target, tab)
