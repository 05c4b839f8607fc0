class InputError(ValueError):
    """Malformed or inconsistent problem data."""


class ConstructionError(ValueError):
    """A requested witness cannot be built from the given data."""
