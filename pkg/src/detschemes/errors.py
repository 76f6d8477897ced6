"""Shared exception types."""


class DetschemesError(Exception):
    pass


class InputError(DetschemesError):
    """Malformed problem data: schema violations, bad matrices, bad flags."""


class VerificationError(DetschemesError):
    """A checked mathematical property failed to verify."""

    def __init__(self, message, degree=None, direction=None):
        super().__init__(message)
        self.degree = degree
        self.direction = direction
