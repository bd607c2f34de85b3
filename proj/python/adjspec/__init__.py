"""Irreducible-block decomposition and level-crossing classification."""

try:
    from ._core import *  # noqa: F401,F403  installed package layout
except ImportError:  # build tree: the extension sits next to the package on sys.path
    from _core import *  # noqa: F401,F403
