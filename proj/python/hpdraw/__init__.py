"""Host/parasite reconciliation layouts.

Validation, event classification, time-consistency, planarity, HP-drawings
(planar construction plus two crossing-reduction heuristics), a brute-force
crossing oracle, and instance generators, backed by the C++ core.
"""

try:
    from ._hpdraw import *  # packaged wheel: extension lives inside the package
except ImportError:  # in-tree builds put the extension directly on sys.path
    from _hpdraw import *  # noqa: F401,F403

__all__ = [
    "Instance",
    "parse_newick",
    "gen_random",
    "gen_sewing",
    "gen_ttcm",
    "ParseError",
    "UnknownNodeError",
    "NotPlanarError",
    "TimeInconsistentError",
    "LimitsExceededError",
    "EventClassificationError",
]
