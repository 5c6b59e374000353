"""Bounds on the effective moduli of densely packed hard-inclusion composites."""

try:
    from ._gapstress import *  # noqa: F401,F403
    from ._gapstress import __version__
except ImportError:  # in-tree build: extension lives next to the build outputs
    from _gapstress import *  # noqa: F401,F403
    from _gapstress import __version__

__all__ = [name for name in dir() if not name.startswith("_")]
