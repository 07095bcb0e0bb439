"""Matroid-driven variable-strength orthogonal arrays.

Build exact finite matroids, verify arrays against them, transform
arrays alongside matroid operations (deletion, contraction, series and
parallel connection, sums), run exhaustive existence searches, and
classify the set of levels at which a matroid is realizable.
"""

from .classify import (ConstructionExpr, Knowledge, LevelPredicate,
                       PCharReport, classify_pchar, evaluate_expr,
                       expr_from_json, is_regular)
from .constructions import (ZvMatrix, free_expansion, graphic_tu_matrix,
                            matrix_voa, voa_contract, voa_delete,
                            voa_direct_sum, voa_minor, voa_parallel,
                            voa_series, voa_two_sum, whirl_voa)
from .errors import (InputError, PreconditionError, UnsupportedLevelError,
                     VoamatError)
from .families import (fano, fano_dual, graphic_matroid, house, standard,
                       uniform, vector_matroid, wheel, whirl)
from .matroid import (AxiomViolation, Families, IntegerPolymatroid, Matroid,
                      SetFamily, as_polymatroid, check_axioms,
                      check_polymatroid_axioms, connect, derived_families,
                      direct_sum, dual, from_circuits, has_minor,
                      is_connected, is_isomorphic, isomorphism,
                      merge_elements, minor, minor_witness,
                      parallel_connection, relax_circuit_hyperplane,
                      scale_rank, series_connection, two_sum)
from .netcode import NetcodeScheme, netcode_combination
from .oa_builders import (LatinSquare, are_orthogonal, cyclic_oa23,
                          enumerate_oa343, mols_pair, oa_2_4)
from .search import SearchResult, f7star_search, voa_backtracking_search
from .voa import (Failure, Lemma1Report, VerificationReport, Voa,
                  canonical_equal, ded, entropy_function, entropy_vs_rank,
                  lemma1_report, verify_mvoa, verify_oa, verify_voa)

__version__ = "0.1.0"
