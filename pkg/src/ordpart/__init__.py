"""Order-preserving partitions of finite posets and the topology of their lattice."""
from .congruence import Partition, is_order_congruence, quotient_poset
from .errors import (
    AxiomError,
    CycleError,
    NotACongruence,
    NotMinimal,
    SizeMismatch,
    TooSmall,
    TotalMismatch,
)
from .extensions import LinearExtension, cyclic_classes, linear_extensions
from .oplattice import OPLattice, enumerate_lattice
from .poset import CoverList, Poset, from_covers
from .topology import homotopy_report, spheres_by_recurrence

__all__ = [
    "AxiomError", "CoverList", "CycleError", "LinearExtension", "NotACongruence",
    "NotMinimal", "OPLattice", "Partition", "Poset", "SizeMismatch", "TooSmall",
    "TotalMismatch", "cyclic_classes", "enumerate_lattice", "from_covers",
    "homotopy_report", "is_order_congruence", "linear_extensions", "quotient_poset",
    "spheres_by_recurrence",
]
