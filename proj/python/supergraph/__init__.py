"""Superposition random graph simulator and statistical workbench."""

try:
    # wheel layout: extension installed inside the package
    from ._supergraph import *  # noqa: F401,F403
except ImportError:
    # build-tree layout: extension on sys.path
    from _supergraph import *  # noqa: F401,F403

__version__ = "0.1.0"
