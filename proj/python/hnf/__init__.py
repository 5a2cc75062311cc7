"""Emergent-hypernetwork engine for weakly coupled oscillator networks.

Thin python surface over the C++ core: symbolic hypernetwork derivation,
network/phase-model integration, and sparse (STLSQ/LASSO) model recovery.
"""

from hnf._hnf import (  # noqa: F401
    __version__,
    conjugacy_deviation,
    derive,
    extract_phases,
    lasso,
    rho,
    sigma,
    simulate,
    stlsq,
    verify_cancellation,
)
