"""Exception hierarchy. Each class carries the CLI exit status it maps to."""


class MpvError(Exception):
    exit_code = 1


# -- parse errors (exit 2) --------------------------------------------------

class ParseError(MpvError):
    exit_code = 2


class ExpressionSyntaxError(ParseError):
    def __init__(self, message, text=None, pos=None):
        self.text = text
        self.pos = pos
        if text is not None and pos is not None:
            message = f"{message} at column {pos + 1}: {text!r}"
        super().__init__(message)


class DocumentSyntaxError(ParseError):
    pass


class SchemaError(ParseError):
    pass


class ScalingError(ParseError):
    pass


# -- log poles (exit 3) ------------------------------------------------------

class LogarithmicPole(MpvError):
    exit_code = 3

    def __init__(self, ids):
        self.ids = list(ids)
        super().__init__("logarithmic pole along " + ", ".join(self.ids))


# -- precondition failures (exit 4) ------------------------------------------

class PreconditionError(MpvError):
    exit_code = 4


class InversionOfZero(PreconditionError, ZeroDivisionError):
    pass


class DenominatorVanishes(PreconditionError, ZeroDivisionError):
    pass


class PoleAtPoint(PreconditionError, ZeroDivisionError):
    pass


class MissingRealization(PreconditionError):
    pass


class MissingResolutionData(PreconditionError):
    pass


class UnknownStratum(PreconditionError):
    pass


class NotConvergent(PreconditionError):
    pass


class InadmissibleShift(PreconditionError):
    pass


class NotUnitComponent(PreconditionError):
    pass


class InvalidCenter(PreconditionError):
    pass


class ExhaustedDoublePoint(InvalidCenter):
    pass


class ConstraintViolated(PreconditionError):
    pass


class InvalidConfig(PreconditionError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid configuration: " + "; ".join(self.violations))


# -- internal cross-checks (exit 5) ------------------------------------------

class InternalAssertion(MpvError):
    exit_code = 5
