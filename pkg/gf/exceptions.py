"""
Error hierarchy shared by every app of the toolkit.

Each error carries a stable machine-readable ``code`` that ends up in
reports and CLI output.
"""


class ToolkitError(Exception):
    """Base class for every engine error."""

    code = 'TOOLKIT_ERROR'

    def __init__(self, message='', **details):
        super().__init__(message or self.__class__.__name__)
        self.details = details

    def as_dict(self):
        data = {'code': self.code, 'message': str(self)}
        if self.details:
            data['details'] = {key: str(value) for key, value in sorted(self.details.items())}
        return data


class InvalidInput(ToolkitError):
    code = 'INVALID_INPUT'


class BudgetExceeded(ToolkitError):
    code = 'BUDGET_EXCEEDED'


class NotPrime(ToolkitError):
    code = 'NOT_PRIME'


class ReducibleModulus(ToolkitError):
    code = 'REDUCIBLE_MODULUS'


class DegreeMismatch(ToolkitError):
    code = 'DEGREE_MISMATCH'


class DegreeNotDividing(ToolkitError):
    code = 'DEGREE_NOT_DIVIDING'


class ZeroPolynomial(ToolkitError):
    code = 'ZERO_POLYNOMIAL'


class ContextMismatch(ToolkitError):
    code = 'CONTEXT_MISMATCH'


class ElementParseError(ToolkitError):
    code = 'SPEC_PARSE'
