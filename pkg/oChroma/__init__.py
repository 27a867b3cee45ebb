"""
oChroma - O-colourings of vertex-oriented 4-regular plane graphs.

This package provides tools for working with oriented 4-regular graphs, including:
- O-cycle and decomposition enumeration with the o-chromatic index
- A constructive colouring engine with a step trace
- Tait expansion and contraction against cubic graphs
- Orbits of orientations under graph automorphisms
"""

__version__ = '1.0.0'
