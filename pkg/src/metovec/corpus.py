"""Corpus ingestion: tagged sentences, vocabulary, next-word counts."""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

COARSE_TAGS = frozenset({
    "NOUN", "VERB", "ADJ", "DET", "PRON", "ADV",
    "PREP", "CONJ", "NUM", "PUNCT", "OTHER",
})

_PUNCT_CHARS = set(string.punctuation)


class CorpusFormatError(ValueError):
    """Raised for malformed corpus or gold files, carries the line number."""

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str

    def __post_init__(self):
        if not self.surface:
            raise ValueError("empty surface form")
        if not self.lemma:
            raise ValueError("empty lemma")
        if self.pos not in COARSE_TAGS:
            raise ValueError(f"unknown POS tag {self.pos!r}")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    doc_id: str
    index: int

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sentence has no tokens")

    @property
    def ref(self) -> tuple[str, int]:
        return (self.doc_id, self.index)


def _plain_token(word: str) -> Token:
    lemma = word.lower()
    pos = "PUNCT" if all(c in _PUNCT_CHARS for c in word) else "OTHER"
    return Token(surface=word, lemma=lemma, pos=pos)


def _read_vertical(path):
    doc_id = str(path)
    index = 0
    tokens = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if line.startswith("#doc "):
                if tokens:
                    yield Sentence(tuple(tokens), doc_id, index)
                    tokens = []
                doc_id = line[len("#doc "):].strip()
                index = 0
                continue
            if not line.strip():
                if tokens:
                    yield Sentence(tuple(tokens), doc_id, index)
                    tokens = []
                    index += 1
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise CorpusFormatError(
                    path, lineno,
                    f"expected 3 tab-separated fields, got {len(fields)}")
            surface, lemma, pos = fields
            try:
                tokens.append(Token(surface, lemma.lower(), pos))
            except ValueError as exc:
                raise CorpusFormatError(path, lineno, str(exc)) from exc
    if tokens:
        yield Sentence(tuple(tokens), doc_id, index)


def _read_plain(path):
    doc_id = str(path)
    index = 0
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            words = raw.split()
            if not words:
                continue
            yield Sentence(tuple(_plain_token(w) for w in words), doc_id, index)
            index += 1


class Corpus:
    """A re-iterable sequence of sentences loaded from a file."""

    def __init__(self, sentences):
        self.sentences = tuple(sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __len__(self):
        return len(self.sentences)


def load_corpus(path, format: str = "vertical") -> Corpus:
    """Read a corpus file.

    ``vertical`` is one ``surface<TAB>lemma<TAB>pos`` token per line with
    blank lines between sentences and ``#doc <id>`` lines starting a new
    document.  ``plain`` is one sentence per line, whitespace-tokenized,
    with lemma = lowercased surface and pos = OTHER (PUNCT for
    punctuation-only tokens).
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"corpus file not found: {path}")
    if format == "vertical":
        return Corpus(_read_vertical(path))
    if format == "plain":
        return Corpus(_read_plain(path))
    raise ValueError(f"unknown corpus format {format!r}")


@dataclass
class Vocabulary:
    """Lemma -> dense id map, capped at the ``max_size`` most frequent types.

    Words are ordered by descending count, ties broken by ascending lemma,
    and ids assigned densely in that order.
    """

    words: tuple[str, ...]
    counts: tuple[int, ...]
    total_tokens: int
    max_size: int
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {w: i for i, w in enumerate(self.words)}

    def __len__(self):
        return len(self.words)

    def __contains__(self, lemma):
        return lemma in self.index

    def id_of(self, lemma: str) -> int:
        return self.index[lemma]

    def count_of(self, lemma: str) -> int:
        return self.counts[self.index[lemma]]


def build_vocabulary(corpus, max_size: int, min_count: int = 1) -> Vocabulary:
    """Count lemmas and keep the top ``max_size`` at or above ``min_count``."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    counts = Counter()
    total = 0
    for sentence in corpus:
        for token in sentence.tokens:
            counts[token.lemma] += 1
            total += 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    kept = [(w, c) for w, c in ranked if c >= min_count][:max_size]
    return Vocabulary(
        words=tuple(w for w, _ in kept),
        counts=tuple(c for _, c in kept),
        total_tokens=total,
        max_size=max_size,
    )


class NextWordCounts:
    """Sparse count(w_i | w_{i+1}) rows over the vocabulary."""

    def __init__(self, rows: dict, vocab: Vocabulary):
        self.rows = rows
        self.vocab = vocab

    def count(self, focus: str, follower: str) -> int:
        return self.rows.get(focus, {}).get(follower, 0)

    def row_vector(self, focus: str, columns=None) -> list[int]:
        """Dense row over ``columns`` (default: vocabulary, alphabetical)."""
        if columns is None:
            columns = sorted(self.vocab.words)
        row = self.rows.get(focus, {})
        return [row.get(col, 0) for col in columns]


def next_word_counts(corpus, vocab: Vocabulary) -> NextWordCounts:
    """Count immediate successors within sentences; OOV tokens are skipped
    both as focus and as successor, and no pairs cross sentence boundaries."""
    rows: dict[str, dict[str, int]] = {}
    for sentence in corpus:
        lemmas = [t.lemma for t in sentence.tokens]
        for focus, follower in zip(lemmas, lemmas[1:]):
            if focus not in vocab or follower not in vocab:
                continue
            row = rows.setdefault(focus, {})
            row[follower] = row.get(follower, 0) + 1
    return NextWordCounts(rows, vocab)
