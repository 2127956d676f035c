"""Switching classes of graphs, two-graphs, antipodal metric spaces of
diameter 3, and explicit EPPA-witnesses for all three."""

__version__ = "0.1.0"

from .structures import (
    AntipodalSpace,
    CapacityError,
    Graph,
    PartialMap,
    StructureError,
    SwitchingPartialMap,
    TwoGraph,
    ValidationReport,
    Violation,
    antipode,
    is_partial_isomorphism,
    validate,
    validate_antipodal,
    validate_graph,
    validate_two_graph,
)
from .switching import (
    associated_two_graph,
    find_switch_set,
    is_switching_isomorphism,
    is_switching_witness,
    seidel_switch,
)
from .antipodal import (
    UnliftableError,
    canonical_pode,
    double_cover,
    graph_of_two_graph,
    induced_edge_map,
    lift_two_graph_isomorphism,
    matching_edges,
    pode_graph,
    two_graph_of_antipodal,
)
from .eppa_core import (
    WitnessAutomorphism,
    WitnessContext,
    WitnessVertex,
    build_witness,
    extend_automorphism,
    witness_distance,
)
from .pipelines import (
    HMap,
    SwitchingEppaCertificate,
    TwoGraphEppaCertificate,
    apa_counterexample_report,
    extend_plain_iso,
    extend_switching_iso,
    extend_two_graph_partial,
    switching_eppa_witness,
    two_graph_eppa_witness,
)
from .io import ParseError, parse, parse_any, serialize

__all__ = [
    "AntipodalSpace",
    "CapacityError",
    "Graph",
    "HMap",
    "ParseError",
    "PartialMap",
    "StructureError",
    "SwitchingEppaCertificate",
    "SwitchingPartialMap",
    "TwoGraph",
    "TwoGraphEppaCertificate",
    "UnliftableError",
    "ValidationReport",
    "Violation",
    "WitnessAutomorphism",
    "WitnessContext",
    "WitnessVertex",
    "antipode",
    "apa_counterexample_report",
    "associated_two_graph",
    "build_witness",
    "canonical_pode",
    "double_cover",
    "extend_automorphism",
    "extend_plain_iso",
    "extend_switching_iso",
    "extend_two_graph_partial",
    "find_switch_set",
    "graph_of_two_graph",
    "induced_edge_map",
    "is_partial_isomorphism",
    "is_switching_isomorphism",
    "is_switching_witness",
    "lift_two_graph_isomorphism",
    "matching_edges",
    "parse",
    "parse_any",
    "pode_graph",
    "seidel_switch",
    "serialize",
    "switching_eppa_witness",
    "two_graph_eppa_witness",
    "two_graph_of_antipodal",
    "validate",
    "validate_antipodal",
    "validate_graph",
    "validate_two_graph",
    "witness_distance",
]
