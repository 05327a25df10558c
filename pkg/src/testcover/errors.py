class BudgetExceeded(RuntimeError):
    """A search hit its node or enumeration budget before reaching an answer."""


class InvariantViolation(AssertionError):
    """An internal guarantee failed; this signals a bug, not bad input."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
