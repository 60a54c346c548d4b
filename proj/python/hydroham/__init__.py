"""Exact verification of generalised (bi-)Hamiltonian structures of
hydrodynamic type: python facade over the C++ kernel."""

import json as _json

from ._hydroham import (  # noqa: F401
    ManifestError,
    canonical_expr,
    commands,
    expr_add,
    expr_mul,
    expr_partial,
)
from ._hydroham import run as _run_json


def run(command, manifest, max_jet_order=20, sample_points=(), seed=0):
    """Run a verification command.

    ``manifest`` may be a dict or a JSON string; the report is returned as a
    dict with keys ``command``, ``verdict``, ``checks``, ``outputs`` and
    ``wallMillis``.
    """
    if not isinstance(manifest, str):
        manifest = _json.dumps(manifest)
    report = _run_json(command, manifest, max_jet_order,
                       [str(p) for p in sample_points], seed)
    return _json.loads(report)


__all__ = [
    "ManifestError",
    "canonical_expr",
    "commands",
    "expr_add",
    "expr_mul",
    "expr_partial",
    "run",
]
