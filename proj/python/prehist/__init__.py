"""Sequent-calculus workbench for S4 and the Logic of Proofs.

The heavy lifting lives in the compiled ``_prehist`` module; this package
just re-exports it.
"""

import os
import sys

try:
    from ._prehist import *  # noqa: F401,F403
    from ._prehist import __doc__ as _doc
except ImportError:  # running from a build tree
    _dir = os.environ.get("PREHIST_MODULE_DIR")
    if _dir:
        sys.path.insert(0, _dir)
    from _prehist import *  # noqa: F401,F403

__all__ = [
    "parse", "desugar", "forgetful",
    "prove", "prove_cycle_free", "prove_g3lp",
    "check", "annotate", "graph", "find_cycle",
    "eliminate_cuts", "eliminate_boxcuts", "project",
    "inputs", "classify_selfref", "kripke_eval", "selftest",
]
