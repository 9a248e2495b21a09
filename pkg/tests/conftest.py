import numpy as np
import pytest

from metovec.corpus import Vocabulary
from metovec.embeddings import EmbeddingModel, TrainingConfig


PROVERB = "what is good for the goose is good for the gander\n"


@pytest.fixture
def proverb_path(tmp_path):
    path = tmp_path / "proverb.txt"
    path.write_text(PROVERB)
    return path


def make_model(vectors: dict, counts=None):
    """Hand-built model from a lemma -> vector mapping (uniform counts
    unless given)."""
    words = tuple(vectors)
    dim = len(next(iter(vectors.values())))
    vocab = Vocabulary(
        words=words,
        counts=tuple((counts or {}).get(w, 1) for w in words),
        total_tokens=sum((counts or {}).get(w, 1) for w in words),
        max_size=len(words),
    )
    inputs = np.array([vectors[w] for w in words], dtype=float)
    nodes = np.zeros((len(words) - 1, dim))
    config = TrainingConfig(dim=dim)
    return EmbeddingModel(inputs, nodes, vocab, config)


def write_vertical(path, sentences, doc_id="doc1"):
    """sentences: list of lists of (surface, lemma, pos) triples."""
    lines = [f"#doc {doc_id}"]
    for sentence in sentences:
        for surface, lemma, pos in sentence:
            lines.append(f"{surface}\t{lemma}\t{pos}")
        lines.append("")
    path.write_text("\n".join(lines) + "\n")
    return path
