"""Kernel selection: the compiled extension when built, else the pure
reference.  Set HHK_PURE=1 to force the fallback."""
import os

if os.environ.get("HHK_PURE"):
    from . import speed_py as impl
    BACKEND = "pure"
else:
    try:
        from . import _speed as impl
        BACKEND = "compiled"
    except ImportError:
        from . import speed_py as impl
        BACKEND = "pure"

check_table_hochschild = impl.check_table_hochschild
check_table_bar_d2 = impl.check_table_bar_d2
