"""Normal-form kernel selection.

The compiled extension (built from _speedups.pyx) is used when it imported
cleanly; setting LECALC_PURE=1 in the environment forces the pure-Python
path. Both backends implement the same normal_form_terms contract and are
exercised against each other by the benchmark script.
"""

import os

from . import pure

if os.environ.get("LECALC_PURE"):
    _impl = pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = pure

normal_form_terms = _impl.normal_form_terms
make_key = pure.make_key
BACKEND = _impl.BACKEND

KIND_LEX = pure.KIND_LEX
KIND_DEGREVLEX = pure.KIND_DEGREVLEX
KIND_BLOCK = pure.KIND_BLOCK
