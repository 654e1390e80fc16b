"""Khovanov A-adequacy of link diagrams via independence complexes of Lando graphs."""

__version__ = "0.1.0"

from khadequacy._kernels import BACKEND  # noqa: E402

__all__ = ["BACKEND", "__version__"]
