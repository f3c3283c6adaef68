"""Cliques-or-trees vertex deletion: multigraph core, exact and approximate
solvers, and a trace-producing kernelization pipeline."""

from .graph import (
    ComponentKind,
    Instance,
    MultiGraph,
    classify_component,
    connected_components,
    is_solution,
)
from .obstructions import (
    Degree2Path,
    Obstruction,
    ObstructionKind,
    PathKind,
    find_any_obstruction,
    find_degree2_overbridge,
    find_degree2_tail,
    find_hole,
    find_small_obstruction,
    verify_obstruction,
)
from .expansion import (
    Bipartition,
    ExpansionCertificate,
    FlowerResult,
    flower_or_hitting_set,
    new_q_expansion,
    q_expansion,
    verify_expansion,
    verify_flower_result,
)
from .solvers import Modulator, SolveResult, approx_deletion_set, brute_force
from .kernelizer import (
    CliqueMarking,
    KernelEngine,
    KernelResult,
    TraceRecord,
    canonical_no_instance,
    eps,
    kernelize,
    mark_clique,
    replay,
    size_bound,
    structural_violations,
)

__all__ = [
    "Bipartition",
    "CliqueMarking",
    "ComponentKind",
    "Degree2Path",
    "ExpansionCertificate",
    "FlowerResult",
    "Instance",
    "KernelEngine",
    "KernelResult",
    "Modulator",
    "MultiGraph",
    "Obstruction",
    "ObstructionKind",
    "PathKind",
    "SolveResult",
    "TraceRecord",
    "approx_deletion_set",
    "brute_force",
    "canonical_no_instance",
    "classify_component",
    "connected_components",
    "eps",
    "find_any_obstruction",
    "find_degree2_overbridge",
    "find_degree2_tail",
    "find_hole",
    "find_small_obstruction",
    "flower_or_hitting_set",
    "is_solution",
    "kernelize",
    "mark_clique",
    "new_q_expansion",
    "q_expansion",
    "replay",
    "size_bound",
    "structural_violations",
    "verify_expansion",
    "verify_flower_result",
    "verify_obstruction",
]
