"""Kernel selection: compiled speedups when available, pure Python otherwise.

Set PLOCAL_PURE_KERNELS=1 to force the pure implementations.
"""

import os

from . import _purekernel

_speedups = None
if not os.environ.get("PLOCAL_PURE_KERNELS"):
    try:
        from . import _speedups  # type: ignore[no-redef]
    except ImportError:
        _speedups = None


def backend_name():
    return "pure" if _speedups is None else "compiled"


def mul_close(gens, cap):
    """Subgroup element closure; see _purekernel.mul_close."""
    if _speedups is not None and gens and len(gens[0]) <= 256:
        packed = [bytes(g) for g in gens]
        return [tuple(b) for b in _speedups.mul_close_packed(packed, len(gens[0]), cap)]
    return _purekernel.mul_close(gens, cap)


def _guarded_dense(mat):
    # the compiled reducer works in int64 and signals overflow; redo in
    # arbitrary precision when that happens so torsion is never wrong
    try:
        return _speedups.dense_snf_i64(mat)
    except OverflowError:
        return _purekernel._dense_snf_diagonal(mat)


def snf_diagonal(rows):
    """Smith normal form diagonal; see _purekernel.snf_diagonal."""
    if _speedups is not None:
        return _purekernel.snf_diagonal(rows, dense_fn=_guarded_dense)
    return _purekernel.snf_diagonal(rows)
