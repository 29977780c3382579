"""Polynomial-delay enumeration of connectors and connectivity-constrained
subgraph families over transitive set systems."""

from .core import (
    ElementSet,
    Instance,
    ItemSet,
    SizeThreshold,
    TransitiveSystemOracle,
    VolumeFunction,
)
from .enumeration import (
    FamilyTreeCursor,
    SolutionRecord,
    bases,
    children,
    enumerate_components,
    enumerate_solutions,
    enumerate_solutions_k,
    parent,
)
from .flow import (
    Coefficients,
    CutCertificate,
    Edge,
    GraphSubset,
    MetaWeightSystem,
    MixedGraph,
    vertex_support,
)
from .systems import (
    MODE_KINDS,
    AuxiliaryGraph,
    ConnectedOracle,
    CoreBudgetError,
    GlobalConnectivityOracle,
    MetaWeightOracle,
    ModeGuardError,
    SpanningVolume,
    SystemMode,
    build_oracle,
    core_l2,
    edge_induced_system,
    global_weight_system,
    induced_weight_system,
    k_cores,
    maximal_in,
    mode_membership,
    spanning_volume,
)

__all__ = [
    "AuxiliaryGraph",
    "Coefficients",
    "ConnectedOracle",
    "CoreBudgetError",
    "CutCertificate",
    "Edge",
    "ElementSet",
    "FamilyTreeCursor",
    "GlobalConnectivityOracle",
    "GraphSubset",
    "Instance",
    "ItemSet",
    "MODE_KINDS",
    "MetaWeightOracle",
    "MetaWeightSystem",
    "MixedGraph",
    "ModeGuardError",
    "SizeThreshold",
    "SolutionRecord",
    "SpanningVolume",
    "SystemMode",
    "TransitiveSystemOracle",
    "VolumeFunction",
    "bases",
    "build_oracle",
    "children",
    "core_l2",
    "edge_induced_system",
    "enumerate_components",
    "enumerate_solutions",
    "enumerate_solutions_k",
    "global_weight_system",
    "induced_weight_system",
    "k_cores",
    "maximal_in",
    "mode_membership",
    "parent",
    "spanning_volume",
    "vertex_support",
]

__version__ = "0.1.0"
