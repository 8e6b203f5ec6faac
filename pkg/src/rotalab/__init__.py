"""Desk-scale verification lab for rotation-algebra module structures.

Exact scalar arithmetic, truncated operator models, groupoid bookkeeping,
module structures over the rotation algebra, and the transform cycle that
ties them together, each with machine-checked identities.
"""

from . import (
    bimodules,
    checks,
    cli,
    closedform,
    duality,
    errors,
    groupoids,
    ktheory,
    nctorus,
    oscillator,
    sampling,
    scalars,
)

__all__ = [
    "bimodules",
    "checks",
    "cli",
    "closedform",
    "duality",
    "errors",
    "groupoids",
    "ktheory",
    "nctorus",
    "oscillator",
    "sampling",
    "scalars",
]
__version__ = "0.1.0"
