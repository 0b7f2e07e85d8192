"""Exact OPE computations in vertex operator superalgebras."""

from ._voa import (
    Algebra,
    LabError,
    ParseError,
    PoleError,
    UnknownField,
    UnknownName,
    UnknownSuite,
    __version__,
    evaluate,
    normalize,
    preset_names,
    rational_roots,
    run_suite,
    strong_gen_gf,
    suite_names,
)

__all__ = [
    "Algebra",
    "LabError",
    "ParseError",
    "PoleError",
    "UnknownField",
    "UnknownName",
    "UnknownSuite",
    "__version__",
    "evaluate",
    "normalize",
    "preset_names",
    "rational_roots",
    "run_suite",
    "strong_gen_gf",
    "suite_names",
]
