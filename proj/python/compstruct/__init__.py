"""Computable composite structures, the hypercube and their isomorphisms."""

from ._compstruct import *  # noqa: F401,F403
from ._compstruct import __doc__  # noqa: F401

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_FUEL_EXHAUSTED = 3
