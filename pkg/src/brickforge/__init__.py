"""brickforge: a combinatorial calculus for 3-manifold pairs with marked boundary.

The package models compact 3-manifolds whose boundary is a union of tori and
Klein bottles, each carrying a marked trivalent spine graph (a theta graph or
a sigma graph, i.e. two loops joined by a bridge).  Manifold pairs are
represented through skeleta: 2-dimensional polyhedra whose complement is a
ball and whose intersection with the boundary is the marking.  On top of the
skeleton model the package provides assembling operations, normal surface
coordinates, and a finite census of low-complexity skeleta.

Public modules:

    polyhedron  skeleton carriers, validation, canonical signatures, thickening
    surfaces    marked boundary surfaces, Klein bottle loops and mapping classes
    calculus    connected sum, assembling, self-assembling, sharpness bookkeeping
    normal      normal surface vectors, cutting, prime decomposition
    census      enumeration and verification of skeleton tables
    cli         command line entry points
"""

__version__ = "0.1.0"
