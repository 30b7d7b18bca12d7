"""Exception types raised by the closed-form evaluators and the config loader."""


class PinchWPCError(Exception):
    """Base class for package errors."""


class InvalidConfig(PinchWPCError, ValueError):
    """A configuration value violates its documented range."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class UnsupportedGeometry(PinchWPCError):
    """Closed form not available for this geometry (needs h > L/2)."""


class NoRegime(UnsupportedGeometry):
    """No unique row of the outage condition table matches the inputs."""


class InvalidAlpha(PinchWPCError, ValueError):
    """A lossy-waveguide expression was called with alpha == 0."""
