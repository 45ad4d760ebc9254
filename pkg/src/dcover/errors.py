"""Exception hierarchy. The CLI maps each leaf class to its own exit code."""


class DcoverError(Exception):
    pass


class RingMismatchError(DcoverError, ValueError):
    pass


class DegreeMismatchError(DcoverError, ValueError):
    pass


class NotInIdealSquareError(DcoverError):
    """The polynomial has no expression A*fa^2 + 2B*fa*fb + C*fb^2."""


class DegenerateDecompositionError(DcoverError):
    """The fb^2 coefficient vanishes, so the image is not of the generic form."""


class ZeroBranchError(DcoverError):
    """The completed square leaves no branch equation (g_tilde == 0)."""


class ComponentDivisorError(DcoverError):
    """The divisor is a pull-back or contains the ramification divisor."""


class BadPrimeError(DcoverError, ValueError):
    pass


class CapExceededError(DcoverError):
    pass


class RetryCapError(DcoverError):
    pass
