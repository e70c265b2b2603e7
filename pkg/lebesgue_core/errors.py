"""Exception hierarchy. ``exit_code`` is what the command line returns for each."""


class LebesgueCoreError(Exception):
    exit_code = 1


class ParseError(LebesgueCoreError):
    """Input file could not be read or does not match its JSON format"""


class NonHermitian(LebesgueCoreError, ValueError):
    pass


class NotPsd(LebesgueCoreError, ValueError):
    pass


class NotAProjection(LebesgueCoreError, ValueError):
    pass


class DimensionMismatch(LebesgueCoreError, ValueError):
    pass


class AlgebraMismatch(LebesgueCoreError, ValueError):
    exit_code = 3


class IndexOutOfRange(LebesgueCoreError, IndexError):
    pass


class NoConvergence(LebesgueCoreError):
    exit_code = 4


class NotAGroup(LebesgueCoreError, ValueError):
    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        message = f"Cayley table violates {axiom}"
        super().__init__(f"{message}: {detail}" if detail else message)


class NotAbsolutelyContinuous(LebesgueCoreError):
    pass


class ZeroFunctional(LebesgueCoreError):
    exit_code = 5


class InvalidLevel(LebesgueCoreError, ValueError):
    pass


class UnderflowRisk(LebesgueCoreError, ValueError):
    pass


class VerificationFailed(LebesgueCoreError):
    exit_code = 2


class InvalidAlgebra(LebesgueCoreError, ValueError):
    """Block dimensions or element shapes are malformed"""
