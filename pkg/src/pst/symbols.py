"""Registry of declared function and relation symbols.

The table is threaded through corpus parsing and translation: a definition
may only use symbols declared by earlier definitions, and infix symbols must
be declared (with a precedence, for functions) before they can be parsed.
Built single-writer, then treated as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dzfc import PAIR_SYMBOL
from .errors import DuplicateSymbol

FUNCTION = "function"
RELATION = "relation"


@dataclass(frozen=True)
class SymbolInfo:
    name: str
    kind: str  # FUNCTION | RELATION
    arity: int
    infix: bool = False
    precedence: Optional[int] = None


class SymbolTable:
    def __init__(self) -> None:
        self._infos: dict[str, SymbolInfo] = {}

    @classmethod
    def base(cls) -> "SymbolTable":
        """Table with the built-in pairing function pre-declared."""
        table = cls()
        table.register(SymbolInfo(PAIR_SYMBOL, FUNCTION, 2))
        return table

    def register(self, info: SymbolInfo) -> None:
        if info.name in self._infos:
            raise DuplicateSymbol(info.name)
        self._infos[info.name] = info

    def lookup(self, name: str) -> Optional[SymbolInfo]:
        return self._infos.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._infos

    def __iter__(self):
        return iter(self._infos.values())

    def copy(self) -> "SymbolTable":
        table = SymbolTable()
        table._infos = dict(self._infos)
        return table

    def is_function(self, name: str) -> bool:
        info = self._infos.get(name)
        return info is not None and info.kind == FUNCTION and not info.infix

    def is_relation(self, name: str) -> bool:
        info = self._infos.get(name)
        return info is not None and info.kind == RELATION and not info.infix

    def is_infix_function(self, name: str) -> bool:
        info = self._infos.get(name)
        return info is not None and info.kind == FUNCTION and info.infix

    def is_infix_relation(self, name: str) -> bool:
        info = self._infos.get(name)
        return info is not None and info.kind == RELATION and info.infix

    def precedence_of(self, name: str) -> int:
        info = self._infos[name]
        if info.precedence is None:
            raise KeyError(f"{name} has no precedence")
        return info.precedence
