from typing import NoReturn, TYPE_CHECKING

import tblib.pickling_support
import sys

if TYPE_CHECKING:
    from linmba.linearity import LinearityReport

tblib.pickling_support.install()

class ExceptionWrapper(object):

    def __init__(self, ee: BaseException):
        self.ee = ee
        _type,  _value, self.tb = sys.exc_info()

    def re_raise(self) -> NoReturn:
        raise self.ee.with_traceback(self.tb)

class ExpressionSyntaxError(ValueError):
    def __init__(self, position: int, message: str):
        super().__init__(position, message)
        self.position = position
        self.message = message

    def __str__(self) -> str:
        return "Syntax error at position %i: %s" % (self.position, self.message)

class MissingVariableError(ValueError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return 'No value assigned to variable "%s"' % self.name

class CapExceededError(ValueError):
    def __init__(self, count: int, cap: int):
        super().__init__(count, cap)
        self.count = count
        self.cap = cap

    def __str__(self) -> str:
        return "%i variables exceed the configured maximum of %i" % (self.count, self.cap)

class LengthMismatchError(ValueError):
    def __init__(self, expected: int, actual: int):
        super().__init__(expected, actual)
        self.expected = expected
        self.actual = actual

    def __str__(self) -> str:
        return "Expected a truth vector of length %i, got %i" % (self.expected, self.actual)

class NotLinearError(ValueError):
    def __init__(self, report: "LinearityReport"):
        super().__init__(report)
        self.report = report

    def __str__(self) -> str:
        return "Not a linear MBA: %s" % self.report.reason

class InvalidSpecError(ValueError):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return "Invalid generator specification: %s" % self.message

class EvenMultiplierError(InvalidSpecError):
    def __init__(self, a: int):
        super().__init__("affine multiplier %i is even and cannot be inverted" % a)
        self.a = a

class BudgetExceededError(ValueError):
    def __init__(self, required: int, budget: int):
        super().__init__(required, budget)
        self.required = required
        self.budget = budget

    def __str__(self) -> str:
        return "Exhaustive check needs %i evaluations; budget is %i" % (self.required, self.budget)

class DatasetFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(line, message)
        self.line = line
        self.message = message

    def __str__(self) -> str:
        return "Line %i: %s" % (self.line, self.message)
