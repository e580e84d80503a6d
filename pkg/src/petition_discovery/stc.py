"""Suffix-tree clustering: score phrase groups, merge them, label topics.

Base clusters are phrases with their document sets, scored by document
count times an effective-phrase-length factor. Clusters whose document
sets overlap by more than the merge threshold in both directions are
joined into connected components; each component becomes one topic,
labeled by its highest-scoring phrase. Petitions matched by the query
but assigned to no cluster land in the residual "Other Topics" bucket.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import InvalidThreshold
from .ingestion import Petition
from .suffixtree import PhraseOccurrence, build
from .textproc import TokenizedDocument, load_stopwords, title_case_label, tokenize_petition_text

OTHER_LABEL = "Other Topics"


@dataclass(frozen=True, slots=True)
class CorpusStats:
    """Per-stem document frequencies over the fetched corpus."""

    doc_count: int
    df: dict[str, int]
    stopword_stems: frozenset[str]


def corpus_stats(docs: list[TokenizedDocument]) -> CorpusStats:
    df: dict[str, int] = {}
    stopword_stems: set[str] = set()
    for doc in docs:
        seen: set[str] = set()
        for sentence in doc.sentences:
            for token in sentence:
                seen.add(token.stem)
                if token.is_stopword:
                    stopword_stems.add(token.stem)
        for stem in seen:
            df[stem] = df.get(stem, 0) + 1
    return CorpusStats(doc_count=len(docs), df=df, stopword_stems=frozenset(stopword_stems))


@dataclass(frozen=True, slots=True)
class BaseCluster:
    phrase: PhraseOccurrence
    score: float

    @property
    def documents(self) -> frozenset[str]:
        return self.phrase.documents

    def sort_key(self):
        return (-self.score, -len(self.phrase.documents), self.phrase.phrase)


@dataclass(frozen=True, slots=True)
class Topic:
    id: str
    label: str
    petition_ids: tuple[str, ...]
    petition_count: int
    total_supports: int
    color_index: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "label": self.label,
            "petition_count": self.petition_count,
            "total_supports": self.total_supports,
            "color_index": self.color_index,
            "petition_ids": list(self.petition_ids),
        }


@dataclass(frozen=True, slots=True)
class TopicSet:
    query: str
    topics: tuple[Topic, ...]
    other: Topic
    total_petitions: int

    def to_dict(self) -> dict:
        return {
            "query": self.query,
            "total_petitions": self.total_petitions,
            "topics": [t.to_dict() for t in self.topics],
            "other": self.other.to_dict(),
        }


@dataclass(frozen=True, slots=True)
class ClusterParams:
    """Tunable knobs of the clustering stage, with the classic defaults."""

    language: str = "es"
    index_body: bool = False
    min_docs: int = 2
    max_phrase_len: int = 6
    merge_threshold: float = 0.5
    max_base_clusters: int = 500
    min_df: int = 3
    max_df_ratio: float = 0.4
    single_word_factor: float = 0.5
    length_factor_cap: int = 6


def effective_length(
    phrase: tuple[str, ...],
    stats: CorpusStats,
    min_df: int = 3,
    max_df_ratio: float = 0.4,
) -> int:
    """Count phrase tokens that are informative for scoring.

    A token counts when it is not a stopword and its document frequency
    sits between the absolute floor and the relative ceiling: words too
    rare or near-ubiquitous say nothing about a topic.
    """
    ceiling = max_df_ratio * stats.doc_count
    count = 0
    for stem in phrase:
        if stem in stats.stopword_stems:
            continue
        df = stats.df.get(stem, 0)
        if min_df <= df <= ceiling:
            count += 1
    return count


def _length_factor(p: int, single_word_factor: float, cap: int) -> float:
    if p <= 0:
        return 0.0
    if p == 1:
        return single_word_factor
    return float(min(p, cap))


def score_base_clusters(
    occurrences: list[PhraseOccurrence],
    stats: CorpusStats,
    params: ClusterParams = ClusterParams(),
) -> list[BaseCluster]:
    """Score phrase groups and keep the strongest ones.

    score = |documents| * f(effective length); clusters whose factor is
    zero are dropped, the rest ranked and cut to `max_base_clusters`.
    Ties break toward larger document sets, then lexicographic phrase.
    """
    scored: list[BaseCluster] = []
    for occ in occurrences:
        p = effective_length(occ.phrase, stats, params.min_df, params.max_df_ratio)
        factor = _length_factor(p, params.single_word_factor, params.length_factor_cap)
        if factor <= 0.0:
            continue
        scored.append(BaseCluster(phrase=occ, score=len(occ.documents) * factor))
    scored.sort(key=BaseCluster.sort_key)
    return scored[: params.max_base_clusters]


def merge_clusters(
    bases: list[BaseCluster],
    threshold: float = 0.5,
) -> list[list[BaseCluster]]:
    """Connected components under the mutual-overlap predicate.

    Two base clusters are linked when the intersection exceeds
    `threshold` of both document sets. Output order is canonical
    (component leaders by score), independent of input order.
    """
    if not 0.0 < threshold <= 1.0:
        raise InvalidThreshold(f"threshold must be in (0, 1], got {threshold}")
    n = len(bases)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        docs_i = bases[i].documents
        for j in range(i + 1, n):
            docs_j = bases[j].documents
            overlap = len(docs_i & docs_j)
            if overlap > threshold * len(docs_i) and overlap > threshold * len(docs_j):
                parent[find(i)] = find(j)

    groups: dict[int, list[BaseCluster]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(bases[i])
    components = []
    for members in groups.values():
        members.sort(key=BaseCluster.sort_key)
        components.append(members)
    components.sort(key=lambda ms: ms[0].sort_key())
    return components


def _topic_id(members: list[BaseCluster]) -> str:
    phrases = sorted(" ".join(m.phrase.phrase) for m in members)
    digest = hashlib.sha1("\n".join(phrases).encode("utf-8")).hexdigest()
    return digest[:12]


def assemble_topics(
    components: list[list[BaseCluster]],
    all_petitions: list[Petition],
    query: str,
    stopwords: frozenset[str] | None = None,
    language: str = "es",
) -> TopicSet:
    """Turn merged components into the final labeled topic set.

    The residual bucket collects every petition assigned to no
    component; topics are ordered by petition count, then support sum,
    then label, and colored by rank.
    """
    if stopwords is None:
        stopwords = load_stopwords(language)
    supports = {p.id: p.supports for p in all_petitions}

    drafts = []
    clustered: set[str] = set()
    for members in components:
        ids = set()
        for m in members:
            ids.update(m.documents)
        clustered.update(ids)
        label = title_case_label(members[0].phrase.surface, stopwords)
        member_ids = tuple(sorted(ids))
        drafts.append(
            (
                _topic_id(members),
                label,
                member_ids,
                len(member_ids),
                sum(supports[i] for i in member_ids),
            )
        )

    drafts.sort(key=lambda d: (-d[3], -d[4], d[1]))
    topics = tuple(
        Topic(
            id=d[0],
            label=d[1],
            petition_ids=d[2],
            petition_count=d[3],
            total_supports=d[4],
            color_index=rank,
        )
        for rank, d in enumerate(drafts)
    )

    leftover = tuple(sorted(p.id for p in all_petitions if p.id not in clustered))
    other_id = "other-" + hashlib.sha1(query.encode("utf-8")).hexdigest()[:12]
    other = Topic(
        id=other_id,
        label=OTHER_LABEL,
        petition_ids=leftover,
        petition_count=len(leftover),
        total_supports=sum(supports[i] for i in leftover),
        color_index=len(topics),
    )
    return TopicSet(
        query=query,
        topics=topics,
        other=other,
        total_petitions=len(all_petitions),
    )


def cluster_petitions(
    petitions: list[Petition],
    query: str,
    params: ClusterParams = ClusterParams(),
    stopword_path: str | None = None,
) -> TopicSet:
    """Full clustering pipeline: tokenize, index, score, merge, label."""
    stopwords = load_stopwords(params.language, stopword_path)
    docs = []
    for p in petitions:
        fields = [p.title, p.summary] + ([p.body] if params.index_body else [])
        docs.append(tokenize_petition_text(p.id, fields, params.language, stopwords))
    if not petitions or not any(doc.sentences for doc in docs):
        return assemble_topics([], petitions, query, stopwords, params.language)
    tree = build(docs)
    occurrences = tree.phrase_nodes(params.min_docs, params.max_phrase_len)
    stats = corpus_stats(docs)
    bases = score_base_clusters(occurrences, stats, params)
    components = merge_clusters(bases, params.merge_threshold)
    return assemble_topics(components, petitions, query, stopwords, params.language)
