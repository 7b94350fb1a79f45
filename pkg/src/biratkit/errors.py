"""Exception hierarchy.

``MathError`` subclasses signal a violated mathematical precondition (CLI exit
code 3); ``Inconclusive`` signals an exhausted certification bound (exit 4);
``ScriptError`` subclasses are parse errors (exit 2).
"""


class BiratError(Exception):
    exit_code = 1


class MathError(BiratError):
    exit_code = 3


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class FieldMismatch(MathError):
    pass


class RingMismatch(MathError):
    pass


class LengthMismatch(MathError):
    pass


class ExponentOverflow(MathError):
    pass


class ZeroDivisor(MathError):
    pass


class ZeroIdeal(MathError):
    pass


class UnitIdeal(MathError):
    pass


class NotBihomogeneous(MathError):
    pass


class NotHomogeneous(MathError):
    pass


class DegreeMismatch(MathError):
    pass


class AllFormsInSourceIdeal(MathError):
    pass


class NotWellDefined(MathError):
    pass


class ChainMismatch(MathError):
    pass


class BaseLocusHit(MathError):
    pass


class NegativeDegree(MathError):
    pass


class SourceNotProjectiveSpace(MathError):
    pass


class NoLinearSyzygies(MathError):
    pass


class KernelNotFound(MathError):
    pass


class VerificationFailed(MathError):
    pass


class NotLinearComposite(MathError):
    pass


class Inconclusive(BiratError):
    exit_code = 4


class ScriptError(BiratError):
    """Parse-time error carrying a 1-based line and column."""

    exit_code = 2

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class ScriptSyntaxError(ScriptError):
    pass


class UndefinedIdentifier(ScriptError):
    pass


class FieldRedeclared(ScriptError):
    pass


class NonHomogeneousGenerator(ScriptError):
    pass
