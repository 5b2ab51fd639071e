"""Direct-bias metric and stability battery for word embeddings.

Thin wrapper over the compiled ``_embias`` extension. The heavy lifting
(training, bias geometry, bootstrap machinery) happens in C++; this layer
only adds a convenience that parses report JSON into a dict.
"""

import json

from _embias import (
    BootstrapResult,
    CompareResult,
    DataError,
    Space,
    __version__,
    average_abs_cosine,
    bias_report_json,
    bootstrap,
    compare,
    cosine,
    direct_bias,
    kendall_tau,
    tokenize,
    train,
)

__all__ = [
    "BootstrapResult",
    "CompareResult",
    "DataError",
    "Space",
    "__version__",
    "average_abs_cosine",
    "bias_report",
    "bias_report_json",
    "bootstrap",
    "compare",
    "cosine",
    "direct_bias",
    "kendall_tau",
    "tokenize",
    "train",
]


def bias_report(space, pairs, neutral):
    """Full bias measurement as a dict (parsed report JSON)."""
    return json.loads(bias_report_json(space, pairs, neutral))
