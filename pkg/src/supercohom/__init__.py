"""Exact Lie superalgebra cohomology for sl(m|n) and gl(m|n) with a highest-weight screening pipeline."""

from __future__ import annotations

from .algebra import LieSuperalgebra, build_algebra, parse_algebra
from .cohomology import cohomology
from .modules import Module

__version__ = "0.1.0"

__all__ = ["LieSuperalgebra", "Module", "build_algebra", "cohomology", "parse_algebra"]
