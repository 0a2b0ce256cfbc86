"""Exact knot concordance invariants and slice obstructions."""

import json

from ._knotconc import (
    InputError,
    ResourceError,
    UnsupportedError,
    alexander_poly,
    arf,
    derived_depth,
    rho0,
    run,
)
from . import _knotconc


def fos(target, document=None):
    """First-order signatures of a knot or build, as a dict."""
    return json.loads(_knotconc.fos(target, json.dumps(document) if document else ""))


def verdict(target, document=None):
    """Obstruction verdict for a build, as a dict."""
    return json.loads(_knotconc.verdict(target, json.dumps(document) if document else ""))


__all__ = [
    "InputError",
    "ResourceError",
    "UnsupportedError",
    "alexander_poly",
    "arf",
    "derived_depth",
    "fos",
    "rho0",
    "run",
    "verdict",
]
