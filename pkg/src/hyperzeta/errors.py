"""Exception hierarchy shared by the library and the CLI."""


class HyperzetaError(Exception):
    exit_code = 1


class NotPrime(HyperzetaError, ValueError):
    pass


class EvenCharacteristic(HyperzetaError, ValueError):
    pass


class NoIrreducibleFound(HyperzetaError, RuntimeError):
    pass


class ContextMismatch(HyperzetaError, ValueError):
    pass


class ZeroPolynomial(HyperzetaError, ValueError):
    pass


class NonMonicModulus(HyperzetaError, ValueError):
    pass


class ZeroModulus(HyperzetaError, ValueError):
    pass


class NotSquarefree(HyperzetaError, ValueError):
    pass


class CharacteristicTooSmall(HyperzetaError, ValueError):
    pass


class VerificationFailed(HyperzetaError):
    exit_code = 2


class BudgetExceeded(HyperzetaError):
    exit_code = 3


class ExtensionTooLarge(BudgetExceeded):
    pass


class PrecisionInsufficient(HyperzetaError):
    exit_code = 4


class PrecisionExceeded(HyperzetaError, ValueError):
    pass


class UnsupportedWeight(HyperzetaError, ValueError):
    pass


class NotTabulated(HyperzetaError, KeyError):
    pass


class PoleHit(HyperzetaError, ZeroDivisionError):
    pass
