"""
Exceptions raised by the holonomy toolkit
"""

from dataclasses import dataclass, field


class Holonomy2Error(Exception):
    """
    Base class for every error raised by holonomy2
    """


class StructuralError(Holonomy2Error):
    """
    Shapes or dimensions do not fit together
    """


class RepresentationError(Holonomy2Error):
    """
    Matrices offered as a module do not satisfy the representation property
    """


class ExactnessError(Holonomy2Error):
    """
    A sequence of modules is not short exact
    """


class CocycleError(Holonomy2Error):
    """
    A cochain that must be closed is not
    """


class SectionError(Holonomy2Error):
    """
    A matrix offered as a section is not a right inverse
    """


class BasisError(Holonomy2Error):
    """
    A basis required by a construction cannot be formed
    """


class ConsistencyError(Holonomy2Error):
    """
    An identity that holds for valid input failed internally
    """


class ValidationError(Holonomy2Error):
    """
    An input object failed its validation report
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class UnsupportedStructureError(Holonomy2Error):
    """
    The operation is only defined for a narrower class of inputs
    """


class NumericError(Holonomy2Error):
    """
    Non-finite samples or values in the numeric layer
    """


class InsertionOrderError(Holonomy2Error):
    """
    Insertion positions are not sorted
    """


class SchemaError(Holonomy2Error):
    """
    A JSON or binary input does not match its schema
    """


@dataclass(frozen=True)
class Violation:
    """
    One failed instance of an identity: which axiom, where, and by how much
    """

    axiom: str
    indices: tuple = ()
    residual: object = field(default=None, compare=False)

    def as_dict(self):
        """
        JSON-friendly form used in run reports
        """
        return {
            "axiom": self.axiom,
            "indices": list(self.indices),
            "residual": str(self.residual),
        }
