"""Term-algebra kernel selection.

Imports the compiled kernels when the extension module built from
``_speedups.pyx`` is available, otherwise falls back to the pure-Python
twin.  ``QPVERIFY_PURE=1`` forces the fallback; ``BACKEND`` reports the
active choice.  ``benchmarks/bench_backends.py`` compares the two.
"""

import os

from . import pure as _pure

if os.environ.get("QPVERIFY_PURE") == "1":
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = "pure" if _impl is _pure else "compiled"

padd = _impl.padd
pscale = _impl.pscale
piadd = _impl.piadd
pmul = _impl.pmul
pderive = _impl.pderive
ptruncate = _impl.ptruncate
merge_ders = _impl.merge_ders
siadd = _impl.siadd
sadd = _impl.sadd
sscale = _impl.sscale
smul = _impl.smul
sn_bracket = _impl.sn_bracket
kveval = _impl.kveval
bivector_eval = _impl.bivector_eval
table_bracket = _impl.table_bracket


def backends():
    """Return the available backends as a name -> module mapping."""
    found = {"pure": _pure}
    try:
        from . import _speedups

        found["compiled"] = _speedups
    except ImportError:
        pass
    return found
