"""Exception types shared across the package."""


class HypermetError(Exception):
    """Base class for package-specific failures."""


class AmbientMismatch(HypermetError):
    """Two objects that must live in the same ambient space do not."""


class UnsupportedPair(HypermetError):
    """The requested operation has no exact closed form for this
    combination of representations.  Callers may fall back to a
    sampled representation or restructure the input."""


class Indeterminate(HypermetError):
    """A certified interval straddles the decision threshold.

    Retrying with a finer covering radius (or a smaller tolerance)
    usually resolves it.
    """


class GeneratorFault(HypermetError):
    """A sequence generator raised while producing the k-th set."""

    def __init__(self, index: int, original: BaseException):
        super().__init__(f"sequence generator failed at index {index}: {original!r}")
        self.index = index
        self.original = original
