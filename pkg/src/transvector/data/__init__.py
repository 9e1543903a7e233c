"""Bundled algebra definition files."""

import os

_HERE = os.path.dirname(__file__)


def algebra_path(name: str) -> str:
    """Absolute path of a bundled .alg file, e.g. algebra_path('sl2r')."""
    return os.path.join(_HERE, name + ".alg")
