"""Suspension splittings of 5-dimensional Poincare duality complexes.

Given the homology data of a connected orientable 5-complex satisfying
Poincare duality with torsion-free H_1, plus attaching-coefficient vectors
for its suspension's top cells, the engine computes the canonical wedge
splitting of the suspension, classifies the one exceptional attaching map,
and evaluates cohomology and cohomotopy invariants, with an independent
chain-level oracle checking every step.
"""

from .abgroup import (FgAbGroup, GradedGroup, IntMatrix, direct_sum,
                      group_from_presentation, smith_normal_form,
                      uct_cohomology)
from .blocks import (Block, ChainComplex, GeneratorSymbol, Moore, SigmaCP2,
                     SigmaCP2Tw, Sphere, SteenrodTable, TransferMap,
                     block_chain_complex, homotopy_group, stable_cohomotopy_block,
                     steenrod_action, transfer)
from .invariants import (BlockTheory, INTEGRAL, Pi2Report, Pi3Result,
                         SpinReport, StableCohomotopyTheory, TableTheory,
                         TheoryError, char_class_consistency, classify_spin,
                         generalized_cohomology, mod_k_theory, pi2_structure,
                         pi3, pi3_mod_k, pi4, pi4_mod_k, pi_simple, sq_module)
from .manifolds import Declared, InputData, builtin, connected_sum
from .oracle import (complex_of_result, confluence_probe, expected_homology,
                     verify_split)
from .splitter import (Coeffs4, Coeffs5, FMap, HomologyTable, Move,
                       MoveError, Picks, SplitResult, ValidationError,
                       WedgeClass, apply_move, attach_5cell, build_w2,
                       build_w3, build_w4, classify_f, legal_moves,
                       normalize_coeffs5, reduce_phi5, split)

__all__ = [name for name in dir() if not name.startswith("_")]
