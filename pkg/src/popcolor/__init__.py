"""SAT and ILP encodings for exact graph coloring and bandwidth coloring."""

from .instance import Coloring, DimacsError, Instance, parse_dimacs, read_instance, violations, write_dimacs
from .cnf import Cnf, VarRegistry, parse_model, to_dimacs
from .encode_gcp import Encoding, decode, encode_ass_s, encode_pop_s, encode_poph_s
from .encode_bcp import encode_ass_s_b, encode_pop_s_b, encode_poph_s_b
from .bounds import greedy_bcp_upper_bound, greedy_gcp_upper_bound
from .preprocess import Clique, ReductionLog, find_clique, lift_coloring, reduce
from .ilp import IlpModel, build_model, count_ass_i_b_closed_form, count_model_size, emit_model
from .solve import SolveResult, solve_external, solve_internal
from .search import SolveReport, solve_bcp, solve_gcp, verify
from .oracle import exact_bcp, exact_gcp

__version__ = "0.1.0"

__all__ = [
    "Clique", "Cnf", "Coloring", "DimacsError", "Encoding", "IlpModel", "Instance", "ReductionLog",
    "SolveReport", "SolveResult", "VarRegistry", "build_model", "count_ass_i_b_closed_form",
    "count_model_size", "decode", "emit_model", "encode_ass_s", "encode_ass_s_b", "encode_pop_s",
    "encode_pop_s_b", "encode_poph_s", "encode_poph_s_b", "exact_bcp", "exact_gcp", "find_clique",
    "greedy_bcp_upper_bound", "greedy_gcp_upper_bound", "lift_coloring", "parse_dimacs", "parse_model",
    "read_instance", "reduce", "solve_bcp", "solve_external", "solve_gcp", "solve_internal", "to_dimacs",
    "verify", "violations", "write_dimacs",
]
