"""Iterated unimodal interval maps and their complexity measures.

Subpackages cover: exact piecewise-linear arithmetic (pl), parametric map
families (maps), oscillation/entropy counting (oscillation), periodic-orbit
and itinerary analysis (cycles), spectral lower bounds (spectra),
inapproximability certificates (hardness), ReLU network synthesis (relunet),
and VC-dimension calculators (vcbounds).
"""

from .errors import CertificateError, NotPiecewiseLinear, ResourceLimitError

__all__ = ["CertificateError", "NotPiecewiseLinear", "ResourceLimitError"]

__version__ = "0.1.0"
