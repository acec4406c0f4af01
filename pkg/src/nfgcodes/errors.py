"""Exception types shared across the package."""


class NFGCodesError(Exception):
    """Base class for every error raised by this package."""


class AlphabetMismatch(NFGCodesError, ValueError):
    pass


class ValidationError(NFGCodesError, ValueError):
    """Input violates a structural constraint (degree, shape, conformity)."""


class CapExceeded(NFGCodesError, RuntimeError):
    """An enumeration or tensor-size cap would be exceeded.

    The message always names the cap so callers can raise it deliberately.
    """

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap} (raise the cap to proceed)")
