"""Practical set theory toolchain.

Parse sugared set-theoretic definitions, translate them to the core
language of definitions and partial terms, measure quantifier complexity
and expansion blowup, and render LaTeX or natural-language output.
"""

from . import dzfc, syntax
from .errors import (
    AmbiguityError,
    BudgetExceeded,
    DuplicateEntry,
    DuplicateSymbol,
    FixedVarNotFree,
    ForwardReference,
    LexError,
    LexiconSyntaxError,
    MissingLexiconEntry,
    OverlapWarning,
    ParseError,
    PstError,
    TemplateArityMismatch,
    UnknownSymbol,
    UnknownSymbolError,
    UnregisteredSymbol,
)
from .latex import latex_to_pst, render_latex, render_pst
from .lexicon import DEFAULT_LEXICON, Lexicon, parse_lexicon
from .metrics import (
    CompositionalProfile,
    DepthSummary,
    MetricsEngine,
    MetricsReport,
    corpus_report,
    profile,
    quantifier_depth,
)
from .nl import render_nl
from .parser import CorpusParse, parse_corpus, parse_definition, tokenize
from .store import (
    DefStore,
    ProtectedSet,
    dag_depth,
    dag_size,
    expand,
    load_corpus,
)
from .symbols import SymbolInfo, SymbolTable
from .translate import (
    TranslationEnv,
    translate_definition,
    translate_formula,
    translate_term,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
