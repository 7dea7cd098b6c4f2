"""Exception hierarchy shared by every module of the package."""


class BraidCombError(Exception):
    """Base class for all errors raised by braidcomb."""


class InvalidLetter(BraidCombError, ValueError):
    pass


class NotSwappable(BraidCombError, ValueError):
    """Raised when a conjugation is requested whose second indices are not strictly increasing."""


class WordSyntaxError(BraidCombError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class BudgetExceeded(BraidCombError):
    def __init__(self, budget: int, used: int | None = None):
        msg = f"budget of {budget} letters exceeded"
        if used is not None:
            msg += f" (reached {used})"
        super().__init__(msg)
        self.budget = budget
        self.used = used


class TooLong(BraidCombError):
    """The exact evaluation length exceeds the requested maximum."""

    def __init__(self, length: int, max_len: int):
        super().__init__(f"evaluation has length {length} > {max_len}")
        self.length = length
        self.max_len = max_len


class AlphabetMismatch(BraidCombError, ValueError):
    pass


class NotKernel(BraidCombError, ValueError):
    pass


class ReductionStuck(BraidCombError):
    pass
