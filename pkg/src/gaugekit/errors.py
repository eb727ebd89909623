"""Exception hierarchy.

Everything derives from ValueError so callers that only guard against bad
input keep working.
"""

from __future__ import annotations


class GaugeKitError(ValueError):
    """Base class for all gaugekit errors."""


class ValidationError(GaugeKitError):
    """Malformed input data: tables, fixtures, shapes, non-finite entries."""


class SignatureError(GaugeKitError):
    """Wrong or unsupported metric / Clifford signature."""


class DegreeError(GaugeKitError):
    """Form degree out of range for the requested operation."""


class ChartError(GaugeKitError):
    """Evaluation outside a chart box, an overlap, or on an excluded axis."""


class SingularError(GaugeKitError):
    """A matrix, metric or fiber map that must be invertible is not."""


class UnsupportedError(GaugeKitError):
    """The operation is not decided for this kind of input."""


class FixtureNotFoundError(GaugeKitError):
    """Unknown fixture id or missing fixture file."""
