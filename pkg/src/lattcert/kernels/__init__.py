"""Hot inner loops, compiled when the extension is built.

`BACKEND` names the implementation picked at import ("cython" or
"python"). `use_backend` switches it at runtime, which is what the tests
and the benchmark use to compare both.
"""
from lattcert.kernels import _pykernels

try:
    from lattcert.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_impl = _ckernels if _ckernels is not None else _pykernels
BACKEND = "cython" if _ckernels is not None else "python"


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])


def use_backend(name):
    """Select "python" or "cython"; returns the previously active name."""
    global _impl, BACKEND
    if name == "cython" and _ckernels is None:
        raise ImportError("compiled kernels are not built")
    if name not in ("python", "cython"):
        raise ValueError(name)
    old = BACKEND
    _impl = _ckernels if name == "cython" else _pykernels
    BACKEND = name
    return old


def roots_mod_p(coeffs, p):
    return _impl.roots_mod_p(coeffs, p)


def det_box_search(mats, d, bound, target):
    return _impl.det_box_search(mats, d, bound, target)
