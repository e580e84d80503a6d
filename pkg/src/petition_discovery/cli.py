"""Command line interface.

    discover cluster --corpus petitions.jsonl --query basuras [--format table|json]
    discover rank    --corpus petitions.jsonl --mode hot [--query term] [--limit N]
    discover serve   [--corpus petitions.jsonl] [--bind host:port] [--static dir]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import DiscoveryConfig, load_config
from .errors import DiscoveryError
from .ingestion import fetch_petitions, format_timestamp, load_corpus
from .ranking import RANK_MODES, HotScoreParams, hot_score, rank_petitions
from .ingestion import parse_timestamp
from .stc import TopicSet, cluster_petitions


def format_table(topic_set: TopicSet) -> str:
    """Render topics as an aligned text table, residual bucket last."""
    headers = ("Topic", "Petitions", "Supports")
    rows = [
        (t.label, str(t.petition_count), f"{t.total_supports:,}")
        for t in (*topic_set.topics, topic_set.other)
    ]
    widths = [
        max(len(headers[col]), *(len(r[col]) for r in rows)) if rows else len(headers[col])
        for col in range(3)
    ]

    def line(cells, pad=" "):
        left = cells[0].ljust(widths[0], pad)
        mid = cells[1].rjust(widths[1], pad)
        right = cells[2].rjust(widths[2], pad)
        return f"{left} | {mid} | {right}"

    out = [line(headers), line(("", "", ""), pad="-").replace(" | ", "-|-")]
    out.extend(line(r) for r in rows)
    return "\n".join(out) + "\n"


def _build_config(args) -> DiscoveryConfig:
    config = load_config(getattr(args, "config", None))
    if getattr(args, "corpus", None):
        config.source_kind = "file"
        config.corpus_path = args.corpus
    if getattr(args, "language", None):
        config.language = args.language
    if getattr(args, "index_body", False):
        config.index_body = True
    if getattr(args, "bind", None):
        config.bind = args.bind
    if getattr(args, "static", None):
        config.static_dir = args.static
    config.validate()
    return config


def _require_corpus(config: DiscoveryConfig) -> Path:
    path = Path(config.corpus_source().location)
    if config.source_kind == "file" and not path.is_file():
        raise FileNotFoundError(f"corpus file not found: {path}")
    return path


def cmd_cluster(args) -> int:
    config = _build_config(args)
    _require_corpus(config)
    petitions = fetch_petitions(args.query, config.corpus_source(), config.search_fields())
    topic_set = cluster_petitions(
        petitions, args.query.strip(), config.cluster_params(), config.stopword_path or None
    )
    if args.format == "json":
        print(json.dumps(topic_set.to_dict(), ensure_ascii=False, indent=2))
    else:
        print(format_table(topic_set), end="")
    return 0


def cmd_rank(args) -> int:
    config = _build_config(args)
    path = _require_corpus(config)
    if args.query:
        petitions = fetch_petitions(args.query, config.corpus_source(), config.search_fields())
    else:
        petitions = load_corpus(path)
    params = HotScoreParams(
        epoch=parse_timestamp(config.hot_epoch), decay_divisor=config.hot_decay_divisor
    )
    ranked = rank_petitions(petitions, args.mode, params)
    if args.limit:
        ranked = ranked[: args.limit]
    for p in ranked:
        if args.mode == "hot":
            key = f"{hot_score(p.supports, 0, p.created_at, params):.7f}"
        elif args.mode == "supports":
            key = str(p.supports)
        else:
            key = format_timestamp(p.created_at)
        print(f"{key}\t{p.id}\t{p.supports}\t{p.title}")
    return 0


def cmd_serve(args) -> int:
    from . import service

    config = _build_config(args)
    if config.source_kind == "file":
        _require_corpus(config)
    service.run(config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discover", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    cluster = sub.add_parser("cluster", help="cluster petitions matching a query into topics")
    cluster.add_argument("--corpus", help="path to a JSONL corpus file")
    cluster.add_argument("--query", required=True, help="search term")
    cluster.add_argument("--format", choices=("table", "json"), default="table")
    cluster.add_argument("--config", help="path to a key=value config file")
    cluster.add_argument("--language", choices=("es", "en"))
    cluster.add_argument("--index-body", action="store_true", help="index petition bodies too")

    rank = sub.add_parser("rank", help="rank petitions with the list-view baseline")
    rank.add_argument("--corpus", help="path to a JSONL corpus file")
    rank.add_argument("--query", help="optional search term filter")
    rank.add_argument("--mode", choices=RANK_MODES, default="hot")
    rank.add_argument("--limit", type=int)
    rank.add_argument("--config", help="path to a key=value config file")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--corpus", help="path to a JSONL corpus file")
    serve.add_argument("--bind", help="host:port to listen on")
    serve.add_argument("--static", help="directory of frontend assets to serve at /")
    serve.add_argument("--config", help="path to a key=value config file")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"cluster": cmd_cluster, "rank": cmd_rank, "serve": cmd_serve}
    try:
        return handlers[args.command](args)
    except (DiscoveryError, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
