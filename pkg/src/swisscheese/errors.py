class FamilyError(ValueError):
    """A candidate ball list is not a valid directed family."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.messages()) or "invalid family")


class NotRepresentableError(ValueError):
    """The point set is not a boolean combination of the family's balls."""


class LayeringError(ValueError):
    """Wheels and holes of a decomposition do not stack into even/odd levels."""


class TooLargeError(ValueError):
    """Family exceeds the guard for an exhaustive search."""
