"""Clocked Turing machines, verifiers, Kleene normal form and an enumeration-permuting diagonalization."""

from .clocks import POLYNOMIAL, ClockedMachine, clocked_run, polynomial_family
from .diagonal import Budgets, check_divergence, run_diagonalization
from .machine import TuringMachine, decode_machine, encode_machine, run
from .representation import IDENTITY, Representation
from .verify import cnf_sat_verifier, f_P, parity_verifier
from .words import index_to_word, pair, unpair, word_to_index

__version__ = "0.1.0"
