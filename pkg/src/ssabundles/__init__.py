"""Classification groups of bundles of stabilized strongly self-absorbing
C*-algebras over finite simplicial complexes."""

__version__ = "0.1.0"
