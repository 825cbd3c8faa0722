import json

import click

# Exit codes

SUCCESS = 0

# Parse and validation errors, and arithmetic preconditions that the input broke.
INVALID_INPUT = 1

# An oracle cross-check or a selftest property failed.
VERIFICATION_FAILED = 2


class BaseException(click.ClickException):
    """
    A ClickException that can easily be constructed with any exit code,
    and which can also optionally give a hint about which param lead to
    the problem.

    When shown, the error is written to stderr as a small JSON document:
        {"error": "<ExceptionClassName>", "detail": "<message>"}
    so that scripts driving the CLI can tell the failure modes apart.
    """

    exit_code = INVALID_INPUT

    def __init__(self, message, exit_code=None, param=None, param_hint=None):
        super(BaseException, self).__init__(message)

        if exit_code is not None:
            self.exit_code = exit_code

        self.param_hint = None
        if param_hint is not None:
            self.param_hint = param_hint
        elif param is not None:
            self.param_hint = param.get_error_hint(None)

    @property
    def code(self):
        return type(self).__name__

    def format_message(self):
        if self.param_hint is not None:
            return f"Invalid value for {self.param_hint}: {self.message}"
        return self.message

    def __json__(self):
        return {"error": self.code, "detail": self.format_message()}

    def show(self, file=None):
        click.echo(json.dumps(self.__json__()), file=file, err=file is None)


class InvalidInput(BaseException):
    exit_code = INVALID_INPUT


class InvalidOperation(BaseException):
    exit_code = INVALID_INPUT


class VerificationFailed(BaseException):
    exit_code = VERIFICATION_FAILED


# Field construction


class NotMonic(InvalidInput):
    pass


class NotSquarefree(InvalidInput):
    pass


class NotARing(InvalidInput):
    pass


class NoUnitInBasis(InvalidInput):
    pass


class Singular(InvalidInput):
    pass


class InvalidConfig(InvalidInput):
    pass


# Modules


class NonIntegralEntries(InvalidInput):
    pass


class NonIntegralModule(InvalidInput):
    pass


# Arithmetic


class DivisionByZero(InvalidOperation):
    pass


class ZeroIdeal(InvalidOperation):
    pass


class ZeroElement(InvalidOperation):
    pass


class ZeroRow(InvalidOperation):
    pass


class ZeroDeterminant(InvalidOperation):
    pass


class NotCoprime(InvalidOperation):
    pass


class NotIntegral(InvalidOperation):
    pass


class InconsistentIdeal(InvalidOperation):
    pass


class NoSolution(InvalidOperation):
    pass


class NotPositiveDefinite(InvalidOperation):
    pass


class FieldMismatch(InvalidOperation):
    pass


class SingularModulus(InvalidOperation):
    pass
