"""Robust min cost flow with consistent flow on fixed arcs.

Every scenario gets its own integral flow, fixed arcs must carry the same
value in all scenarios, and the cost of a robust flow is its most expensive
scenario.
"""

from robflow.errors import (BudgetExceeded, FlowStructureError, NetworkError,
                            NotSeriesParallel, ParseError, PreconditionError, RobflowError)
from robflow.fileio import (format_result, parse_flow, parse_instance, write_flow,
                            write_instance)
from robflow.loadfix import (exists_within, extend_scenarios, reduce_scenarios,
                             solve_enumeration, solve_with_fixed_load, transform_fixed_load)
from robflow.mcf import McfInstance, McfResult, solve_mcf, solve_mcf_demand
from robflow.network import (Arc, ArcKind, CostReport, Network, RobustFlow, SolveResult,
                             Violation, restrict_to_subgraph, robust_cost,
                             validate_robust_flow)
from robflow.reductions import (CnfFormula, PartitionInstance, Sat3B2Formula, brute_partition,
                                brute_sat, decide_threshold, gen_partition_instance,
                                gen_sat_instance)
from robflow.solve import solve
from robflow.spdec import SpTree, decompose, evaluate
from robflow.spdp import dp_solve
from robflow.spfast import greedy_sp_mcf, solve_unique_sp

__all__ = [
    "Arc", "ArcKind", "BudgetExceeded", "CnfFormula", "CostReport", "FlowStructureError",
    "McfInstance", "McfResult", "Network", "NetworkError", "NotSeriesParallel", "ParseError",
    "PartitionInstance", "PreconditionError", "RobflowError", "RobustFlow", "Sat3B2Formula",
    "SolveResult", "SpTree", "Violation", "brute_partition", "brute_sat", "decide_threshold",
    "decompose", "dp_solve", "evaluate", "exists_within", "extend_scenarios", "format_result",
    "gen_partition_instance", "gen_sat_instance", "greedy_sp_mcf", "parse_flow",
    "parse_instance", "reduce_scenarios", "restrict_to_subgraph", "robust_cost", "solve",
    "solve_enumeration", "solve_mcf", "solve_mcf_demand", "solve_unique_sp",
    "solve_with_fixed_load", "transform_fixed_load", "validate_robust_flow", "write_flow",
    "write_instance",
]
