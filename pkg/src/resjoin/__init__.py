"""Resistance distance, Kirchhoff index and Kemeny's constant of central graphs
and central vertex/edge joins."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    LabeledJoinGraph,
    VertexKind,
    central,
    central_edge_join,
    central_vertex_join,
    from_edge_list,
    generate,
    incidence,
    is_connected,
    is_regular,
    laplacian,
)
from .indices import (
    IndexReport,
    foster_check,
    index_report,
    kemeny,
    kemeny_central,
    kirchhoff_from_resistance,
    kirchhoff_trace,
    reported_kirchhoff,
)
from .resistance import (
    Engine,
    ResistanceReport,
    compute,
    local_recursion,
    resistance_block,
    resistance_cej,
    resistance_central,
    resistance_cvj,
    resistance_oracle,
)
