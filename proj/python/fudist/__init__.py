"""Fu distance of bipartite density matrices under local cyclic unitaries."""

from ._fudist import *  # noqa: F401,F403
