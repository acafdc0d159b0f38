"""Conjugacy-class counting in free groups, train-track analysis of rose maps,
small cancellation checks, and the phi_w family of automorphisms of F_3."""

from .automorphisms import (Endomorphism, StretchEstimate, apply, compose, phi_w_inverse,
                            stretch_estimate, verify_inverse)
from .counting import (GrowthTable, classes_in_ball, count_conjugacy_classes,
                       count_cyclically_reduced, growth_report)
from .family import (Certificate, CensusRow, census, certify, growth_experiment, make_phi_w,
                     random_positive_word)
from .graph_maps import (PFResult, RoseMap, TransitionMatrix, WhiteheadGraph, is_connected,
                         is_expanding, is_irreducible, is_primitive, is_train_track,
                         kb_bound_check, pf_eigenvalue, rose_map_from_endo, transition_matrix,
                         whitehead_graph)
from .small_cancellation import (PieceReport, Relator, check_remark_conditions,
                                 gw_one_relator, max_piece, satisfies_c_prime,
                                 symmetrized_closure)
from .words import (CyclicWord, Letter, Word, concat, cyclic_reduce, enumerate_cyclically_reduced,
                    free_reduce, invert, is_conjugate, translation_length)

__version__ = "0.1.0"
