from ._core import (
    BeepcastError,
    codebook,
    compare,
    cost,
    decode,
    encode,
    fibonacci,
    levels,
    min_r,
    narayana,
    narayana_closed_form,
    run,
    self_delimiting_decode,
    self_delimiting_encode,
    sweep,
    verify,
)

__all__ = [
    "BeepcastError",
    "codebook",
    "compare",
    "cost",
    "decode",
    "encode",
    "fibonacci",
    "levels",
    "min_r",
    "narayana",
    "narayana_closed_form",
    "run",
    "self_delimiting_decode",
    "self_delimiting_encode",
    "sweep",
    "verify",
]
