"""Sentence splitting, tokenization and normalization.

Turns petition text into token sequences the suffix tree can index:
lowercased, accent-folded stems as matching keys, original surfaces kept
for rendering topic labels. Stopwords are flagged, never dropped.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import UnsupportedLanguage
from .stemming import get_stemmer

SUPPORTED_LANGUAGES = ("es", "en")

_WORD_RE = re.compile(r"[^\W_]+")
_SENTENCE_BREAK_RE = re.compile(r"(?<=[.!?])[ \t\r\f\v]+|\n+")


def fold_accents(text: str) -> str:
    """Strip diacritics for matching purposes (never for display)."""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def _match_key(word: str) -> str:
    return fold_accents(word.casefold())


@lru_cache(maxsize=8)
def _bundled_stopwords(language: str) -> frozenset[str]:
    if language not in SUPPORTED_LANGUAGES:
        raise UnsupportedLanguage(
            f"language {language!r} not supported (expected one of {list(SUPPORTED_LANGUAGES)})"
        )
    data = resources.files("petition_discovery.data").joinpath(f"stopwords_{language}.txt")
    return _parse_stopword_text(data.read_text(encoding="utf-8"))


def _parse_stopword_text(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(_match_key(word))
    return frozenset(words)


def load_stopwords(language: str, path: str | Path | None = None) -> frozenset[str]:
    """Stopword set for a language; `path` overrides the bundled list."""
    if path is not None:
        return _parse_stopword_text(Path(path).read_text(encoding="utf-8"))
    return _bundled_stopwords(language)


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    stem: str
    is_stopword: bool
    position: int


@dataclass(frozen=True, slots=True)
class TokenizedDocument:
    petition_id: str
    sentences: tuple[tuple[Token, ...], ...]


def sentence_split(text: str) -> list[str]:
    """Split text into sentences at ., !, ? and newlines."""
    if not text or not text.strip():
        return []
    parts = _SENTENCE_BREAK_RE.split(text)
    return [p.strip() for p in parts if p and p.strip()]


def tokenize_normalize(
    sentence: str,
    language: str = "es",
    stopwords: frozenset[str] | None = None,
) -> list[Token]:
    """Tokenize one sentence into normalized tokens.

    Punctuation is dropped, digits kept. Stems are accent-folded
    lowercase (the suffix-tree alphabet); surfaces keep the original
    spelling for label rendering.
    """
    stemmer = get_stemmer(language)
    if stopwords is None:
        stopwords = _bundled_stopwords(language)
    tokens = []
    for position, match in enumerate(_WORD_RE.finditer(sentence)):
        surface = match.group()
        stem = fold_accents(stemmer(surface.lower()))
        if not stem:
            stem = _match_key(surface)
        tokens.append(
            Token(
                surface=surface,
                stem=stem,
                is_stopword=_match_key(surface) in stopwords,
                position=position,
            )
        )
    return tokens


def tokenize_text(
    text: str,
    language: str = "es",
    stopwords: frozenset[str] | None = None,
) -> tuple[tuple[Token, ...], ...]:
    """Sentence-split and tokenize; empty sentences are not retained."""
    sentences = []
    for sentence in sentence_split(text):
        tokens = tokenize_normalize(sentence, language, stopwords)
        if tokens:
            sentences.append(tuple(tokens))
    return tuple(sentences)


def tokenize_petition_text(
    petition_id: str,
    fields: list[str],
    language: str = "es",
    stopwords: frozenset[str] | None = None,
) -> TokenizedDocument:
    """Build the suffix-tree input for one petition from its text fields."""
    sentences: list[tuple[Token, ...]] = []
    for field in fields:
        sentences.extend(tokenize_text(field, language, stopwords))
    return TokenizedDocument(petition_id=petition_id, sentences=tuple(sentences))


def title_case_label(label: str, stopwords: frozenset[str]) -> str:
    """Title-case a phrase, keeping stopwords lowercase (first word excepted)."""
    words = label.split()
    out = []
    for i, word in enumerate(words):
        if i > 0 and _match_key(word) in stopwords:
            out.append(word.lower())
        else:
            out.append(word[:1].upper() + word[1:])
    return " ".join(out)
