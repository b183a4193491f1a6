"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: InputError and its subclasses exit 2,
MathCheckFailure exits 1, InternalCheckError (a proven identity failing,
which indicates a bug) also exits 1 but with a loud diagnostic.
"""


class YbhError(Exception):
    pass


class InputError(YbhError):
    """Malformed or inconsistent user input (bad arities, bad files, bad flags)."""


class ArityError(InputError):
    """Composition or combination of tensor maps with incompatible arities."""

    def __init__(self, needed, got, context=""):
        self.needed = needed
        self.got = got
        msg = f"arity mismatch: needed {needed}, got {got}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class UnsupportedRingError(InputError):
    """Operation not defined over this coefficient ring (e.g. elimination over a truncated ring)."""


class ValidationError(InputError):
    """A loaded or constructed object violates a structural axiom; carries a witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ResourceLimitError(InputError):
    """Dimension guard tripped; rerun with a higher --max-dim or YBH_MAX_DIM."""


class MathCheckFailure(YbhError):
    """A requested mathematical check came out false (not an input problem)."""


class InternalCheckError(YbhError):
    """An identity that is a theorem failed to verify; indicates a bug in this package."""
