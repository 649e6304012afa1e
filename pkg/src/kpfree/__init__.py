"""Partitioning graphs into classes that avoid prescribed cliques."""

from kpfree.errors import (
    BudgetExceeded,
    CertificationError,
    ContractViolation,
    GraphFormatError,
    InputError,
    InternalContradiction,
    KpFreeError,
)
from kpfree.graph import Graph
from kpfree.kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "CertificationError",
    "ContractViolation",
    "Graph",
    "GraphFormatError",
    "InputError",
    "InternalContradiction",
    "KpFreeError",
    "__version__",
]
