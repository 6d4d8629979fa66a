"""bdforge: exact Belavin-Drinfeld Lie bialgebras and quadratic twisted forms over Q."""

from .scalars import QuadExt, Rational, is_square_in_Q, quad_conjugate
from .rootsys import (AdmissibleTriple, DiagramAutomorphism, RootSystem,
                      TRIVIAL_TRIPLE, UnsupportedType, build_root_system,
                      diagram_automorphisms, enumerate_admissible_triples,
                      extend_tau)
from .chevalley import (AlgebraMap, ChevalleyAlgebra, TorusElement,
                        ad_invariant_kernel, algebra, build_chevalley, casimir,
                        chevalley_automorphism, element_from_json,
                        element_to_json, lift_diagram_automorphism,
                        torus_adjoint)
from .tensors import (Tensor2, Tensor3, ad_action2, apply_map2, cyb, flip,
                      shifted_cyb_residual)
from .bd import (AdmissibleQuadruple, NoSolution, RMatrix, RMatrixRejection,
                 VerificationFailed, build_bd_rmatrix, build_dj_rmatrix,
                 make_quadruple, solve_cartan_part, verify_rmatrix)
from .bialgebra import (AxiomViolation, Cobracket, NotLieMorphism, check_axioms,
                        cobracket_from_r, is_bialgebra_automorphism,
                        is_bialgebra_morphism, scalar_multiple_obstruction,
                        surjective_morphism_criterion)
from .twist import (GaloisCocycle, PiConditionViolated, TwistedCocycleClass,
                    build_twist_cocycle, find_pi, hat_map, compatible_with_quadruple,
                    centralizes_rmatrix, is_factored_automorphism)
from .descent import (DescendedForm, DimensionMismatch, MatrixRealization,
                      NotClosed, UnsupportedRank, descend_cobracket,
                      descent_case, fixed_points, reextension_matches,
                      sl_realization, unitary_cocycle)

__version__ = "0.1.0"
