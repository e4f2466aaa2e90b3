"""cliques2paths: reduce each clique of a partitioned topological graph to a
spanning path so that no two kept edges cross."""

from .errors import (
    C2PError,
    CapExceeded,
    EmptyFormula,
    EvenChain,
    ForeignPart,
    FormatError,
    HTooLarge,
    InconsistentGadget,
    InvalidAssignment,
    InvariantError,
    NotOneInThree,
    NotOnePlane,
    ParamConflict,
    PartTooSmall,
    TooLarge,
    Underconstrained,
)
from .exact import (
    Enumeration,
    Preprocess,
    count_solutions,
    enumerate_solutions,
    preprocess,
    solve_exact,
)
from .generator import GenParams, SplitMix64, random_formula, random_instance
from .model import (
    CliquePartition,
    Edge,
    Instance,
    InstanceBuilder,
    PathChoice,
    Solution,
    TopoGraph,
    build_instance,
    classify_edge,
    max_crossings_per_edge,
    spanning_paths,
)
from .oneplane import (
    CrossComponent,
    OnePlaneOutcome,
    assert_one_plane,
    crossing_components,
    solve_one_plane,
)
from .reduction import (
    Assignment,
    ChainHandle,
    ClauseGadget,
    Formula,
    QuadHandle,
    ReductionWitness,
    TriHandle,
    VariableGadget,
    build_chain,
    build_chain_harness,
    build_clause_gadget,
    build_variable_gadget,
    extract_assignment,
    is_one_in_three,
    oracle_1in3,
    reduce_formula,
    removed_side,
    solution_from_assignment,
)
from .twosat import (
    TwoSatInstance,
    build_2sat,
    extract_solution_2sat,
    solve_2sat,
    solve_with_2sat,
)
from .verify import Violation, removed_edges, verify_solution

__version__ = "0.1.0"
