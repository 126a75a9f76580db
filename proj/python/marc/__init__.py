"""Dual-band two-user MARC: rate regions and optimal mm-wave power allocation."""

try:
    from ._marc import *  # noqa: F401,F403
except ImportError:  # build-tree layout: extension next to the package
    from _marc import *  # noqa: F401,F403
