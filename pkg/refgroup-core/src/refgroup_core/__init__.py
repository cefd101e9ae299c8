"""Refgroup core package: exact matrices, group tables and permutation groups."""

__version__ = "0.1.0"

from refgroup_core.cyclotomic import CycEight
from refgroup_core.matrix import ExactMatrix, standard_gate, tensor_product
from refgroup_core.pauli import PauliElement
from refgroup_core.permutation import BaseStrongGenSet, Permutation, schreier_sims
from refgroup_core.table import (
    FiniteGroupTable,
    enumerate_group,
    table_from_elements,
)

__all__ = [
    "BaseStrongGenSet",
    "CycEight",
    "ExactMatrix",
    "FiniteGroupTable",
    "PauliElement",
    "Permutation",
    "enumerate_group",
    "schreier_sims",
    "standard_gate",
    "table_from_elements",
    "tensor_product",
]
