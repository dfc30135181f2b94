"""Exception types shared across the package."""


class ParseError(Exception):
    """Malformed formula or variable-set text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ModelError(Exception):
    """A model document is malformed or violates a structural invariant."""


class EvalError(Exception):
    """An evaluation-time reference is invalid: unknown world or undeclared name."""
