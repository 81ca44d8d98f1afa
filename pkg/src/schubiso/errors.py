"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SchubisoError(Exception):
    """Base class for all errors raised by this package."""


# -- Cartan matrices ---------------------------------------------------------


class CartanError(SchubisoError):
    """An integer matrix failed one of the finite-type Cartan invariants."""

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class ShapeError(CartanError):
    pass


class DiagonalNotTwo(CartanError):
    pass


class PositiveOffDiagonal(CartanError):
    pass


class AsymmetricZero(CartanError):
    pass


class NotFiniteType(CartanError):
    pass


class UnknownLabel(SchubisoError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unknown label"


# -- Weyl groups --------------------------------------------------------------


class CapExceeded(SchubisoError):
    def __init__(self, cap: int):
        super().__init__(f"more than {cap} reduced words; raise the cap to continue")
        self.cap = cap


class NotMinimalRepresentative(SchubisoError):
    pass


class NotARoot(SchubisoError):
    pass


# -- cohomology ----------------------------------------------------------------


class NotInInterval(SchubisoError):
    pass


class GeneratorInParabolic(SchubisoError):
    pass


class NotADescent(SchubisoError):
    pass


class ParabolicTooLarge(SchubisoError):
    pass


# -- atlas / cli -----------------------------------------------------------------


class LimitExceeded(SchubisoError):
    pass


class AtlasMismatch(SchubisoError):
    pass


class ParseError(SchubisoError):
    pass


class InvalidDatum(SchubisoError):
    pass
