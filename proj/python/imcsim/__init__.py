"""Python interface to the XNOR SRAM in-memory compute simulator."""

from ._core import (
    SimError,
    compare,
    cost_report,
    decode,
    encode,
    full_add,
    infer,
    mac,
    rca_add,
    repro,
    routing_tracks,
    sign_activation,
    tree_sum,
    xnor_latency,
)

__all__ = [
    "SimError",
    "compare",
    "cost_report",
    "decode",
    "encode",
    "full_add",
    "infer",
    "mac",
    "rca_add",
    "repro",
    "routing_tracks",
    "sign_activation",
    "tree_sum",
    "xnor_latency",
]
