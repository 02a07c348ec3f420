"""Diagrammatic categorification of the Gaussian integers over GF(2).

Modules: ``gf2`` (linear algebra), ``diagrams`` (the category I'),
``twisted`` (twisted complexes), ``algebra_r`` and ``modules_r`` (the algebra
R and its modules), ``bimodules`` (tau, eta and K_0), ``expr`` and ``cli``.
"""

__version__ = "0.1.0"
