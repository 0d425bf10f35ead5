"""Garside groupoids of Springer type built from reflection-group data."""

from .reflection import (
    GroupElement,
    IntervalLattice,
    RootSystem,
    build_interval,
    build_root_system,
)

__all__ = ["GroupElement", "IntervalLattice", "RootSystem", "build_interval", "build_root_system"]
