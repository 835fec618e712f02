"""
Tolerances and switches shared by the numeric and symbolic layers
"""

# pylint: disable=R0902

from dataclasses import dataclass, replace

REPORT_SCHEMA = "holonomy2/report-v1"
L3_NORMALIZATIONS = ("displayed", "factorial")
DERIVATIVES = ("central", "spectral")


@dataclass(frozen=True)
class Settings:
    """
    Defaults follow the tolerances stated per operation
    """

    transport_tol: float = 1e-9
    composition_tol: float = 1e-7
    linearity_tol: float = 1e-10
    connection_tol: float = 1e-6
    holonomy_rel_tol: float = 1e-4
    reparam_tol: float = 1e-5
    l3_normalization: str = "displayed"
    derivative: str = "central"
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.l3_normalization not in L3_NORMALIZATIONS:
            raise ValueError(f"unknown l3 normalization {self.l3_normalization!r}")
        if self.derivative not in DERIVATIVES:
            raise ValueError(f"unknown derivative scheme {self.derivative!r}")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    def replace(self, **changes):
        """
        Copy with the given fields overridden; None values are ignored
        """
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


DEFAULT_SETTINGS = Settings()
