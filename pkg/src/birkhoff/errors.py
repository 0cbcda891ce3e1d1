class DomainError(ValueError):
    """Input lies outside the set an operation is defined on."""
