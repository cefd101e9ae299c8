"""Named computations that claim constructors refer to.

Importing this package registers every computation on ``router``.
"""

from refgroup_verify.computations import (
    automorphisms,
    coxeter,
    geometry,
    groups,
    imprimitive,
)
from refgroup_verify.computations.router import (
    ComputationRouter,
    Computed,
    router,
)

__all__ = [
    "ComputationRouter",
    "Computed",
    "automorphisms",
    "coxeter",
    "geometry",
    "groups",
    "imprimitive",
    "router",
]
