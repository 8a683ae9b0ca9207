"""Steklov spectra of weighted graphs with boundary."""
from .errors import *  # noqa: F401,F403
from .graph import (
    Graph,
    ToothDecomposition,
    build_graph,
    comb_decompose,
    combinatorial,
    diameter,
    graph_from_edges,
    is_homotopy_faithful,
    wedge_power,
    wedge_sum,
)
from .spectral import (
    DEFAULT_TOL,
    DtNMap,
    SteklovSpectrum,
    Tolerances,
    dirichlet_steklov_spectrum,
    dtn_operator,
    harmonic_extension,
    lambda1,
    steklov_spectrum,
    zero_set_Z,
    zero_set_Z1,
)
from .theorems import VerdictReport
from .io import graph_from_json, graph_to_json, load_graph, save_graph

__version__ = "0.1.0"
