from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from specbound.linalg import ComplexMatrix


class SpecboundError(Exception):
    pass


class InputError(SpecboundError, ValueError):
    pass


class DimensionMismatchError(InputError):
    @classmethod
    def from_matrices(
        cls, a: ComplexMatrix, b: ComplexMatrix, what: str = "operation"
    ) -> DimensionMismatchError:
        return cls(
            "{0} needs matrices of equal dimension, got {1}x{1} and {2}x{2}".format(
                what, a.dim, b.dim
            )
        )


class BothZeroError(InputError):
    pass


class PreconditionError(SpecboundError):
    @classmethod
    def from_distance(cls, z: complex, distance: float, floor: float) -> PreconditionError:
        return cls(
            "z = {0} is too close to the spectrum: d(z, sigma) = {1:.3g} <= {2:.3g}".format(
                z, distance, floor
            )
        )


class DomainError(SpecboundError):
    pass


class RangeError(SpecboundError):
    pass


class ParameterError(SpecboundError, ValueError):
    pass


class ConfigError(SpecboundError):
    pass
