"""Autostackable group structures: normal forms, stacking functions and
van Kampen diagrams for catalog groups."""

from ._core import Error, Group, entries

__all__ = ["Error", "Group", "entries"]
