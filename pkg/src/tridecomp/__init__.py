"""Triangle decompositions of planar multigraphs.

Modules: :mod:`.graph` (multigraphs, triangles, divisibility), :mod:`.embedding`
(rotation systems, faces, duals), :mod:`.structure` (faceless, duplicate and
separating triangles, depletions), :mod:`.decompose` (exact cover and
structural certificates), :mod:`.rational`, :mod:`.k4` (closed forms for the
K4 family), :mod:`.io` and :mod:`.cli`.
"""

__version__ = "0.1.0"
