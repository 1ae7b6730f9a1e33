"""Exception and warning taxonomy shared across the toolchain."""

from __future__ import annotations


class PstError(Exception):
    """Base class for all toolchain errors."""


# ------------------------------------------------------------ lexing/parsing

class LexError(PstError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class ParseError(PstError):
    def __init__(self, message: str, line: int = 0, column: int = 0,
                 expected: tuple[str, ...] = ()):
        detail = message
        if expected:
            detail += " (expected one of: " + ", ".join(sorted(expected)) + ")"
        if line:
            detail += f" at line {line}, column {column}"
        super().__init__(detail)
        self.line = line
        self.column = column
        self.expected = expected


class AmbiguityError(PstError):
    def __init__(self, message: str, parses: tuple = ()):
        if parses:
            message += "; candidate parses: " + " | ".join(repr(p) for p in parses)
        super().__init__(message)
        self.parses = parses


class UnknownSymbolError(PstError):
    """An infix or operator-like symbol was used before being declared."""

    def __init__(self, symbol: str, line: int = 0, column: int = 0):
        where = f" at line {line}, column {column}" if line else ""
        super().__init__(f"symbol {symbol!r} used before its declaration{where}")
        self.symbol = symbol


# ------------------------------------------------------------ translation

class UnregisteredSymbol(PstError):
    def __init__(self, symbol: str):
        super().__init__(f"symbol {symbol!r} is not registered")
        self.symbol = symbol


class FixedVarNotFree(PstError):
    def __init__(self, var: str):
        super().__init__(f"variable {var!r} is declared fixed but does not occur")
        self.var = var


class OverlapWarning(UserWarning):
    """Guards of a case definition are not syntactically exclusive."""


# ------------------------------------------------------------ definition store

class DuplicateSymbol(PstError):
    def __init__(self, symbol: str):
        super().__init__(f"symbol {symbol!r} is already defined")
        self.symbol = symbol


class ForwardReference(PstError):
    def __init__(self, symbol: str, missing: tuple[str, ...]):
        super().__init__(
            f"definition of {symbol!r} references undefined symbols: "
            + ", ".join(missing))
        self.symbol = symbol
        self.missing = missing


class UnknownSymbol(PstError):
    def __init__(self, symbol: str):
        super().__init__(f"no definition stored for symbol {symbol!r}")
        self.symbol = symbol


class BudgetExceeded(PstError):
    """Expansion grew past the symbol budget; carries the saturated count."""

    def __init__(self, count: int, budget: int):
        super().__init__(f"expansion exceeded budget of {budget} symbols "
                         f"(count reached {count})")
        self.count = count
        self.budget = budget


class CycleError(PstError):
    def __init__(self, symbols: tuple[str, ...]):
        super().__init__("definition cycle: " + " -> ".join(symbols))
        self.symbols = symbols


# ------------------------------------------------------------ rendering

class LexiconSyntaxError(PstError):
    def __init__(self, message: str, line: int):
        super().__init__(f"{message} at line {line}")
        self.line = line


class DuplicateEntry(PstError):
    def __init__(self, symbol: str):
        super().__init__(f"duplicate lexicon entry for {symbol!r}")
        self.symbol = symbol


class MissingLexiconEntry(PstError):
    def __init__(self, symbols: tuple[str, ...]):
        super().__init__("no lexicon entry for: " + ", ".join(sorted(symbols)))
        self.symbols = symbols


class TemplateArityMismatch(PstError):
    def __init__(self, symbol: str, detail: str):
        super().__init__(f"template for {symbol!r}: {detail}")
        self.symbol = symbol
