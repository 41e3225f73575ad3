class InvalidInput(ValueError):
    """Raised when user-supplied labels, matrices, files or specs are malformed."""


class OracleTooLarge(ValueError):
    """Raised when a brute-force oracle is asked to enumerate too large an instance."""
