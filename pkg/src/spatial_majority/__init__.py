"""Majority rule in multidimensional spatial voting."""

from .kernels import BACKEND
from .model import (Ball, Box, Coalition, InstanceError, PolicySpace, Voter, VotingSituation,
                    evaluate_utility, gradient, in_upper_contour, load_instance, make_situation,
                    save_instance)
from .geometry import ClippedLine, HalfLinePair, clip_line, distance, generate_directions, split_half_lines
from .line_analysis import InducedIdeal, Lemma1Report, count_ideals_at_anchor, induced_ideal, lemma1_witness
from .solution_concepts import (Budget, CondorcetStatus, CondorcetVerdict, CoreVerdict, DominanceVerdict,
                                certify_singleton_core, dominates, is_condorcet_winner, is_in_core,
                                verify_proposition1, verify_proposition1prime)
from .tournament import (TournamentMatrix, build_tournament, finite_condorcet, finite_core,
                         gillies_uncovered)

__version__ = "0.1.0"
