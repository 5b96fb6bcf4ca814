"""Lattice spectral action laboratory.

Thin wrapper over the compiled core: torus lattices, gauge network
configurations, the lattice Dirac operator's spectral action, Wilson and
Higgs terms, and continuum-limit sweeps.
"""

from latspec._core import *  # noqa: F401,F403
from latspec._core import __version__  # noqa: F401
