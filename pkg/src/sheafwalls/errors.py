"""Exception types shared by the library and the command line."""


class InvalidInput(ValueError):
    """An argument violates a documented precondition.

    The command line maps this to exit status 2.
    """


class PreconditionError(InvalidInput):
    """A semantic precondition failed (non-ample class, polarization on a wall, ...)."""
