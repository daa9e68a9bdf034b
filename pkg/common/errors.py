class ValidationError(ValueError):
    """Raised when an input value violates a precondition. The offending field is kept
       so that the command line front end can name it in its diagnostic."""
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


class DomainError(ValueError):
    """Raised when a point is evaluated outside the period window of the grid."""


class EnumerationLimitError(RuntimeError):
    """Raised when exhaustive atom enumeration would exceed the configured size guard."""
    def __init__(self, size, limit):
        super().__init__(f"enumeration of {size} atoms exceeds limit {limit}")
        self.size = size
        self.limit = limit
