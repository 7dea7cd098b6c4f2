"""Compressed combing and the word problem for pure braid groups of surfaces."""

from . import closed, combing, presentation, slp
from .closed import ClosedDecomposition, closed_comb, pi1_normal_form, project, section_s
from .combing import (
    CombedNormalForm,
    beta_m,
    comb_classical,
    comb_compressed,
    words_equal,
)
from .errors import (
    AlphabetMismatch,
    BraidCombError,
    BudgetExceeded,
    InvalidLetter,
    NotKernel,
    NotSwappable,
    ReductionStuck,
    TooLong,
    WordSyntaxError,
)
from .presentation import Letter, SurfaceParams, format_word, free_reduce, parse_word
from .slp import CompressedWord

__version__ = "0.1.0"

__all__ = [
    "closed", "combing", "presentation", "slp",
    "ClosedDecomposition", "closed_comb", "pi1_normal_form", "project", "section_s",
    "CombedNormalForm", "beta_m", "comb_classical", "comb_compressed", "words_equal",
    "AlphabetMismatch", "BraidCombError", "BudgetExceeded", "InvalidLetter", "NotKernel",
    "NotSwappable", "ReductionStuck", "TooLong", "WordSyntaxError",
    "Letter", "SurfaceParams", "format_word", "free_reduce", "parse_word",
    "CompressedWord",
]
