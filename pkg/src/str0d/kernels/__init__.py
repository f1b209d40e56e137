"""Hot table kernels, compiled when available.

The Cython module is used if it was built; otherwise, or when
``STR0D_PURE_PYTHON=1``, the pure-Python fallback is loaded.  Both accept
``bytes`` for boolean tables and ``array('i')`` for integer tables.
"""
import os
from array import array

BACKEND = "python"

if os.environ.get("STR0D_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _compiled as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _fallback as _impl
else:
    from . import _fallback as _impl

lattice_tables = _impl.lattice_tables
heyting_table = _impl.heyting_table
nucleus_images = _impl.nucleus_images
generate_congruence = _impl.generate_congruence
nucleus_join = _impl.nucleus_join
hom_violation = _impl.hom_violation


def int_array(values):
    return array("i", values)


__all__ = [
    "BACKEND",
    "lattice_tables",
    "heyting_table",
    "nucleus_images",
    "generate_congruence",
    "nucleus_join",
    "hom_violation",
    "int_array",
]
