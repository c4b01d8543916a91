"""Markov random graph models, generating polynomials, and negative-dependence
geometry: strongly Rayleigh (stability) testing and Lorentzian certification.

The compiled extension carries all functionality; this package just re-exports it.
"""

try:
    from ._ergraph import *          # noqa: F401,F403  (installed wheel layout)
    from ._ergraph import __version__  # noqa: F401
except ImportError:                   # build-tree layout: extension on sys.path
    from _ergraph import *            # noqa: F401,F403
    from _ergraph import __version__  # noqa: F401
