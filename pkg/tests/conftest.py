"""Shared fixtures: the textbook corpus, lexicon, and synthetic graphs."""

from __future__ import annotations

from pathlib import Path

import pytest

from pst.lexicon import parse_lexicon
from pst.store import DefStore, load_corpus

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

CHAIN_CORPUS = """\
DEFINITION CH.1: 1-ary relation C1. C1[x] \\iff x = x.

DEFINITION CH.2: 1-ary relation C2. C2[x] \\iff C1[x].

DEFINITION CH.3: 1-ary relation C3. C3[x] \\iff C2[x].

DEFINITION CH.4: 1-ary relation C4. C4[x] \\iff C3[x].

DEFINITION CH.5: 1-ary relation C5. C5[x] \\iff C4[x].
"""

DIAMOND_CORPUS = """\
DEFINITION DI.4: 1-ary relation D4. D4[x] \\iff x = x.

DEFINITION DI.2: 1-ary relation D2. D2[x] \\iff D4[x].

DEFINITION DI.3: 1-ary relation D3. D3[x] \\iff D4[x].

DEFINITION DI.1: 1-ary relation D1. D1[x] \\iff D2[x] \\wedge D3[x].
"""


def doubling_tower(levels: int) -> str:
    """Each level uses the previous one twice, so expansion doubles."""
    blocks = ["DEFINITION TW.0: 1-ary relation W0. W0[x] \\iff x = x."]
    for k in range(1, levels + 1):
        blocks.append(
            f"DEFINITION TW.{k}: 1-ary relation W{k}. "
            f"W{k}[x] \\iff W{k - 1}[x] \\wedge W{k - 1}[x].")
    return "\n\n".join(blocks) + "\n"


@pytest.fixture(scope="session")
def corpus_sources() -> list[str]:
    return [
        (FIXTURES / "foundations.pst").read_text(encoding="utf-8"),
        (FIXTURES / "topology.pst").read_text(encoding="utf-8"),
    ]


@pytest.fixture(scope="session")
def store(corpus_sources) -> DefStore:
    store, issues = load_corpus(corpus_sources)
    assert not issues, [str(i) for i in issues]
    return store.freeze()


@pytest.fixture(scope="session")
def lexicon():
    return parse_lexicon((FIXTURES / "textbook.lex").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def chain_store() -> DefStore:
    store, issues = load_corpus(CHAIN_CORPUS)
    assert not issues
    return store.freeze()


@pytest.fixture(scope="session")
def diamond_store() -> DefStore:
    store, issues = load_corpus(DIAMOND_CORPUS)
    assert not issues
    return store.freeze()
