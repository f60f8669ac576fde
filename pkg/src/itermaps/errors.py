"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured knot/node budget."""


class NotPiecewiseLinear(TypeError):
    """Raised when an exact PL form is requested from a smooth map."""


class CertificateError(RuntimeError):
    """An oscillation certificate could not be established."""
