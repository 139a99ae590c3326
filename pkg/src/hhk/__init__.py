"""Exact-arithmetic engine for differential graded homological algebra.

Computes Hochschild homology/cohomology, bar-construction Ext/Tor, and the
duality-induced BV operator on finite-basis and locally finite graded
algebras, verifying the chain-level identities exactly over Q or F_p.
"""

__version__ = "0.1.0"
