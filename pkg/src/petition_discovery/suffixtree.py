"""Word-level generalized suffix tree over tokenized sentences.

Each sentence is inserted independently with a unique terminator, so
phrases never cross sentence boundaries. Construction is the naive
suffix-by-suffix walk: quadratic per sentence in the worst case, which
is far below a millisecond budget at petition-corpus scale. Internal
nodes are exactly the phrases that occur with at least two distinct
continuations, which is what base-cluster discovery needs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import EmptyCorpus, EmptyPhrase
from .textproc import TokenizedDocument


class _Edge:
    __slots__ = ("seq", "start", "end", "child")

    def __init__(self, seq: int, start: int, end: int, child: "_Node"):
        self.seq = seq
        self.start = start
        self.end = end
        self.child = child


class _Node:
    __slots__ = ("children", "leaf", "docs")

    def __init__(self):
        self.children: dict = {}
        # (doc_index, sentence_index, suffix_start) for leaves, else None.
        self.leaf: tuple[int, int, int] | None = None
        self.docs: frozenset[int] | None = None


@dataclass(frozen=True, slots=True)
class PhraseOccurrence:
    """A phrase (stem sequence) with the petitions that contain it."""

    phrase: tuple[str, ...]
    documents: frozenset[str]
    surface: str


class GeneralizedSuffixTree:
    """Suffix tree over the stem sequences of every document sentence."""

    def __init__(self, docs: list[TokenizedDocument]):
        self._docs = list(docs)
        self.doc_ids = [d.petition_id for d in self._docs]
        self._seqs: list[list] = []
        self._seq_meta: list[tuple[int, int]] = []
        self._root = _Node()
        self._finalized = False
        self.stopword_stems: set[str] = set()
        self._build()

    # -- construction -----------------------------------------------------

    def _build(self) -> None:
        term = 0
        inserted_any = False
        for d, doc in enumerate(self._docs):
            for s, sentence in enumerate(doc.sentences):
                if not sentence:
                    continue
                stems = [t.stem for t in sentence]
                for t in sentence:
                    if t.is_stopword:
                        self.stopword_stems.add(t.stem)
                seq = stems + [term]
                term += 1
                seq_id = len(self._seqs)
                self._seqs.append(seq)
                self._seq_meta.append((d, s))
                for i in range(len(stems)):
                    self._insert_suffix(seq_id, i, d, s)
                inserted_any = True
        if not inserted_any:
            raise EmptyCorpus("no non-empty sentences to index")
        self._finalize()

    def _insert_suffix(self, seq_id: int, start: int, doc: int, sent: int) -> None:
        seq = self._seqs[seq_id]
        n = len(seq)
        node = self._root
        pos = start
        while True:
            edge = node.children.get(seq[pos])
            if edge is None:
                leaf = _Node()
                leaf.leaf = (doc, sent, start)
                node.children[seq[pos]] = _Edge(seq_id, pos, n, leaf)
                return
            edge_seq = self._seqs[edge.seq]
            edge_len = edge.end - edge.start
            j = 1
            while j < edge_len and edge_seq[edge.start + j] == seq[pos + j]:
                j += 1
            if j == edge_len:
                node = edge.child
                pos += j
                continue
            # Diverged inside the edge: split it at offset j. The new
            # suffix always has a symbol left (its unique terminator).
            mid = _Node()
            mid.children[edge_seq[edge.start + j]] = _Edge(
                edge.seq, edge.start + j, edge.end, edge.child
            )
            edge.end = edge.start + j
            edge.child = mid
            leaf = _Node()
            leaf.leaf = (doc, sent, start)
            mid.children[seq[pos + j]] = _Edge(seq_id, pos + j, n, leaf)
            return

    def _finalize(self) -> None:
        # Bottom-up doc sets, iterative to keep long sentences safe.
        stack: list[tuple[_Node, bool]] = [(self._root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                if node.leaf is not None:
                    node.docs = frozenset((node.leaf[0],))
                else:
                    docs: set[int] = set()
                    for edge in node.children.values():
                        docs.update(edge.child.docs)
                    node.docs = frozenset(docs)
            else:
                stack.append((node, True))
                for edge in node.children.values():
                    stack.append((edge.child, False))
        self._finalized = True

    # -- queries -----------------------------------------------------------

    def phrase_nodes(self, min_docs: int = 2, max_phrase_len: int = 6) -> list[PhraseOccurrence]:
        """Phrases at internal nodes, filtered to clusterable candidates.

        Keeps nodes whose document set has at least `min_docs` members
        and whose phrase is at most `max_phrase_len` tokens and not made
        of stopwords only.
        """
        out: list[PhraseOccurrence] = []
        # (node, token depth, stems from root)
        stack: list[tuple[_Node, int, tuple[str, ...]]] = [(self._root, 0, ())]
        while stack:
            node, depth, phrase = stack.pop()
            if node is not self._root and node.leaf is None:
                if (
                    0 < depth <= max_phrase_len
                    and len(node.docs) >= min_docs
                    and any(stem not in self.stopword_stems for stem in phrase)
                ):
                    out.append(self._make_occurrence(node, depth, phrase))
            for symbol, edge in node.children.items():
                if edge.child.leaf is not None:
                    continue
                label = tuple(self._seqs[edge.seq][edge.start:edge.end])
                stack.append((edge.child, depth + len(label), phrase + label))
        out.sort(key=lambda occ: occ.phrase)
        return out

    def _make_occurrence(self, node: _Node, depth: int, phrase: tuple[str, ...]) -> PhraseOccurrence:
        surfaces: Counter[str] = Counter()
        docs: set[str] = set()
        for doc_idx, sent_idx, start in self._leaves_below(node):
            docs.add(self.doc_ids[doc_idx])
            tokens = self._docs[doc_idx].sentences[sent_idx][start : start + depth]
            surfaces[" ".join(t.surface.lower() for t in tokens)] += 1
        best = min(surfaces.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        return PhraseOccurrence(phrase=phrase, documents=frozenset(docs), surface=best)

    def _leaves_below(self, node: _Node):
        stack = [node]
        while stack:
            n = stack.pop()
            if n.leaf is not None:
                yield n.leaf
            else:
                stack.extend(edge.child for edge in n.children.values())

    def contains(self, phrase) -> frozenset[str]:
        """Exact document set for a stem phrase; empty if absent."""
        phrase = tuple(phrase)
        if not phrase:
            raise EmptyPhrase("phrase must contain at least one token")
        node = self._root
        pos = 0
        while pos < len(phrase):
            edge = node.children.get(phrase[pos])
            if edge is None:
                return frozenset()
            label = self._seqs[edge.seq][edge.start : edge.end]
            for symbol in label:
                if pos == len(phrase):
                    break
                if symbol != phrase[pos]:
                    return frozenset()
                pos += 1
            node = edge.child
        return frozenset(self.doc_ids[d] for d in node.docs)

    def dump(self) -> str:
        """Indented text rendering of the tree, for golden-file tests."""
        lines: list[str] = []

        def label_text(edge: _Edge) -> str:
            parts = []
            for symbol in self._seqs[edge.seq][edge.start : edge.end]:
                parts.append(f"${symbol}" if isinstance(symbol, int) else str(symbol))
            return " ".join(parts)

        def sort_key(item):
            symbol, _ = item
            return (1, f"{symbol:09d}") if isinstance(symbol, int) else (0, symbol)

        def walk(node: _Node, indent: int) -> None:
            for symbol, edge in sorted(node.children.items(), key=sort_key):
                suffix = f"  (docs={len(edge.child.docs)})" if edge.child.leaf is None else ""
                lines.append("  " * indent + label_text(edge) + suffix)
                walk(edge.child, indent + 1)

        walk(self._root, 0)
        return "\n".join(lines) + "\n"


def build(docs: list[TokenizedDocument]) -> GeneralizedSuffixTree:
    """Build and finalize a generalized suffix tree over the documents."""
    return GeneralizedSuffixTree(docs)
