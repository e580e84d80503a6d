"""Interactive discovery of topics and petitions for online petition platforms."""

from .config import DiscoveryConfig, load_config
from .ingestion import SUPPORT_THRESHOLD, CorpusSource, Petition, fetch_petitions, load_corpus
from .layout import CirclePlacement, Tile, circle_radius, mosaic_layout, pack_circles
from .ranking import HotScoreParams, hot_score, rank_petitions
from .stc import (
    BaseCluster,
    ClusterParams,
    CorpusStats,
    Topic,
    TopicSet,
    assemble_topics,
    cluster_petitions,
    corpus_stats,
    effective_length,
    merge_clusters,
    score_base_clusters,
)
from .suffixtree import GeneralizedSuffixTree, PhraseOccurrence, build
from .textproc import Token, TokenizedDocument, sentence_split, tokenize_normalize

__version__ = "0.1.0"

__all__ = [
    "SUPPORT_THRESHOLD",
    "BaseCluster",
    "CirclePlacement",
    "ClusterParams",
    "CorpusSource",
    "CorpusStats",
    "DiscoveryConfig",
    "GeneralizedSuffixTree",
    "HotScoreParams",
    "Petition",
    "PhraseOccurrence",
    "Tile",
    "Token",
    "TokenizedDocument",
    "Topic",
    "TopicSet",
    "assemble_topics",
    "build",
    "circle_radius",
    "cluster_petitions",
    "corpus_stats",
    "effective_length",
    "fetch_petitions",
    "hot_score",
    "load_config",
    "load_corpus",
    "merge_clusters",
    "mosaic_layout",
    "pack_circles",
    "rank_petitions",
    "score_base_clusters",
    "sentence_split",
    "tokenize_normalize",
    "__version__",
]
