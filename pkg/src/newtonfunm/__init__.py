"""Matrix functions for spectra with close eigenvalues via Newton interpolation."""
from .clustering import (Cluster, ClusterPartition, Spectrum, cluster_center, partition_from_sizes,
                         reorder_spectrum, split_clusters)
from .divided_diff import (DividedDifferenceTable, dd_fill_nonprincipal, dd_table_direct,
                           dd_table_merged)
from .errors import (CoefficientUnavailable, DimensionMismatch, GenerationExhausted,
                     NewtonFunmError, NonFiniteResult, PartitionMismatch, SingularMatrix,
                     ZeroDenominator)
from .experiments import ExperimentConfig, StatsRow, generate_instance, run_trials
from .impulse import (ImpulseSystem, SymbolicResponse, eval_symbolic, format_response,
                      impulse_response)
from .linalg import condition_number, mat_inverse, mat_mul, operator_norm
from .newton import (FunmParams, NewtonPolynomial, build_newton, eval_matrix, eval_matrix_vector,
                     eval_scalar, funm)
from .taylor_dd import (EntryKind, Exp, Polynomial, classify_entry, complete_homogeneous,
                        principal_dd)

__version__ = "0.1.0"
