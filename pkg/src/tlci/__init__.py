"""Counting and automata modalities over non-singular intervals:
exact pointwise evaluator, rewrite passes into unilateral form, and a
deterministic differential tester."""

from .intervals import Interval, closed, closed_open, open_, open_closed, parse_interval
from .formulas import (And, Atom, AutoMod, Count, Eventually, Formula,
                       Globally, Next, Not, Once, Or, Pnueli, TRUE, Until,
                       WeakEventually, conj, disj, implies, neg, node_count,
                       subformulas, validate_formula)
from .words import GenConfig, TimedWord, generate_word, parse_word, render_word, word
from .automata import Nfa, complement, determinize_minimize, intersect, make_nfa
from .semantics import (C1Spec, C2Spec, Evaluation, WitnessAutomaton,
                        condition_violations, eval_formula,
                        eval_witness_property, gap_markers,
                        make_witness_automaton, potential_witnesses,
                        repair_conditions)
from .parsing import parse_automata, parse_formula, render_automata, render_formula
from .rewrite import (PassReport, RewriteError, condition_formula_C,
                      counting_automod, counting_nfa, eliminate_counting,
                      eliminate_eventually, eliminate_unbounded_counting,
                      minimal_segment_nfa, modulo_counter_rewrite,
                      pnueli2_rewrite, rational_rewrite, rewrite_to_unilateral,
                      until_automod, until_nfa, witness_rewrite)

__version__ = "0.1.0"
