"""Exception hierarchy.  ``exit_code`` is what the CLI returns for each class."""


class FrescoError(Exception):
    exit_code = 1


class SingularMatrix(FrescoError):
    pass


class ZeroFactor(FrescoError):
    pass


class NotMonic(FrescoError):
    pass


class ParseError(FrescoError):
    """Input text rejected.  ``position`` is a 0-based character offset or None."""

    exit_code = 2

    def __init__(self, message, position=None, expected=None, text=None):
        self.message = message
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(self._format())

    def _format(self):
        msg = self.message
        if self.expected:
            msg += f" (expected {self.expected})"
        if self.position is not None:
            msg = f"at column {self.position + 1}: {msg}"
        return msg

    def caret(self):
        """Two-line pointer into the offending text, or '' if unavailable."""
        if self.text is None or self.position is None:
            return ""
        return f"  {self.text}\n  {' ' * self.position}^"


class PolySyntaxError(ParseError):
    pass


class ArityError(ParseError):
    pass


class DuplicateMonomial(ParseError):
    pass


class ZeroCoefficient(ParseError):
    pass


class ConstantTerm(ParseError):
    pass


class MultipleLambda(ParseError):
    pass


class PresentationError(ParseError):
    pass


class C1Violation(FrescoError):
    exit_code = 3


class C2Violation(FrescoError):
    exit_code = 4


class UnreachableTarget(FrescoError):
    pass


class ZeroPivot(FrescoError):
    pass


class NotSimplePole(FrescoError):
    exit_code = 5
