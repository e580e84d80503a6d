"""HTTP service: query -> ingest -> cluster -> layout -> JSON.

Responses are serialized with a fixed field order and compared
byte-for-byte in tests, so everything that reaches json.dumps must be
deterministic for a given (query, corpus, config, seed).

The two-step flow (topics view, then petitions of one topic) relies on
a server-side result cache keyed by the normalized query: topic ids
stay resolvable for result_cache_ttl seconds, after which the petitions
endpoint answers 410 and the client should re-run the query.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass

from fastapi import FastAPI, Query, Response
from fastapi.responses import PlainTextResponse

from .config import DiscoveryConfig
from .errors import EmptyQuery, SchemaMismatch, SourceUnavailable, TimestampBeforeEpoch
from .ingestion import Petition, fetch_petitions, format_timestamp, parse_timestamp
from .layout import circle_radius, mosaic_layout, pack_circles
from .ranking import RANK_MODES, HotScoreParams, hot_score, rank_petitions
from .stc import Topic, TopicSet, cluster_petitions
from .textproc import fold_accents


def topic_tooltip(topic: Topic) -> str:
    return f"{topic.label} — {topic.petition_count} petitions — {topic.total_supports:,} supports"


def petition_tooltip(petition: Petition) -> str:
    return f"{petition.title} — {petition.supports:,} supports"


@dataclass
class _CacheEntry:
    created: float
    topic_set: TopicSet
    petitions_by_topic: dict[str, list[Petition]]


class ResultCache:
    """Per-query clustering results, kept past expiry to tell 410 from 404."""

    def __init__(self, ttl: float, max_entries: int = 128):
        self.ttl = ttl
        self.max_entries = max_entries
        self._entries: dict[str, _CacheEntry] = {}
        self._lock = threading.Lock()

    def get_fresh(self, key: str) -> _CacheEntry | None:
        with self._lock:
            entry = self._entries.get(key)
            if entry and time.monotonic() - entry.created < self.ttl:
                return entry
            return None

    def put(self, key: str, entry: _CacheEntry) -> None:
        with self._lock:
            self._entries.pop(key, None)
            self._entries[key] = entry
            while len(self._entries) > self.max_entries:
                self._entries.pop(next(iter(self._entries)))

    def find_topic(self, topic_id: str) -> tuple[str, _CacheEntry | None]:
        """Return ("fresh", entry), ("expired", None) or ("unknown", None)."""
        with self._lock:
            expired = False
            for key in reversed(self._entries):
                entry = self._entries[key]
                if topic_id in entry.petitions_by_topic:
                    if time.monotonic() - entry.created < self.ttl:
                        return "fresh", entry
                    expired = True
            return ("expired", None) if expired else ("unknown", None)


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=json.dumps(payload, ensure_ascii=False, separators=(",", ":")),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, code: str, message: str) -> Response:
    return _json_response({"error": code, "message": message}, status_code)


def create_app(config: DiscoveryConfig | None = None) -> FastAPI:
    config = config or DiscoveryConfig()
    config.validate()
    app = FastAPI(title="petition-discovery", docs_url=None, redoc_url=None)
    cache = ResultCache(ttl=config.result_cache_ttl)
    hot_params = HotScoreParams(
        epoch=parse_timestamp(config.hot_epoch),
        decay_divisor=config.hot_decay_divisor,
    )

    def run_query(query: str) -> _CacheEntry:
        key = fold_accents(query.strip().casefold())
        entry = cache.get_fresh(key)
        if entry is not None:
            return entry
        petitions = fetch_petitions(query, config.corpus_source(), config.search_fields())
        topic_set = cluster_petitions(
            petitions, query.strip(), config.cluster_params(),
            config.stopword_path or None,
        )
        lookup = {p.id: p for p in petitions}
        by_topic = {
            t.id: [lookup[i] for i in t.petition_ids]
            for t in (*topic_set.topics, topic_set.other)
        }
        entry = _CacheEntry(
            created=time.monotonic(),
            topic_set=topic_set,
            petitions_by_topic=by_topic,
        )
        cache.put(key, entry)
        return entry

    @app.get("/healthz")
    def healthz() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.get("/api/topics")
    def topics(q: str = Query(""), w: int = Query(1200), h: int = Query(800)) -> Response:
        if not q.strip():
            return _error(400, "EmptyQuery", "query parameter q must be non-empty")
        if w <= 0 or h <= 0:
            return _error(422, "BadDimensions", f"canvas must be positive, got {w}x{h}")
        try:
            entry = run_query(q)
        except EmptyQuery as e:
            return _error(400, "EmptyQuery", str(e))
        except (SourceUnavailable, SchemaMismatch) as e:
            return _error(502, "SourceUnavailable", str(e))

        ts = entry.topic_set
        ordered = [*ts.topics, ts.other]
        tiles = mosaic_layout(
            [(t.id, float(t.total_supports)) for t in ordered], float(w), float(h)
        )
        tile_by_id = {t.topic_id: t for t in tiles}

        def topic_payload(topic: Topic) -> dict:
            tile = tile_by_id[topic.id]
            return {
                "id": topic.id,
                "label": topic.label,
                "petition_count": topic.petition_count,
                "total_supports": topic.total_supports,
                "color_index": topic.color_index,
                "tooltip": topic_tooltip(topic),
                "tile": {"x": tile.x, "y": tile.y, "width": tile.width, "height": tile.height},
            }

        return _json_response({
            "query": ts.query,
            "canvas": {"width": w, "height": h},
            "total_petitions": ts.total_petitions,
            "topics": [topic_payload(t) for t in ts.topics],
            "other": topic_payload(ts.other),
        })

    @app.get("/api/topics/{topic_id}/petitions")
    def topic_petitions(
        topic_id: str,
        w: int = Query(1200),
        h: int = Query(800),
        seed: int | None = Query(None),
    ) -> Response:
        if w <= 0 or h <= 0:
            return _error(422, "BadDimensions", f"canvas must be positive, got {w}x{h}")
        status, entry = cache.find_topic(topic_id)
        if status == "unknown":
            return _error(404, "UnknownTopic", f"topic {topic_id!r} not found; run the query first")
        if status == "expired":
            return _error(410, "ExpiredQueryCache", f"results for topic {topic_id!r} expired; re-run the query")

        members = entry.petitions_by_topic[topic_id]
        topic = next(
            t for t in (*entry.topic_set.topics, entry.topic_set.other) if t.id == topic_id
        )
        effective_seed = config.seed if seed is None else seed
        if members:
            circles = [
                (p.id, circle_radius(p.supports, config.circle_scale, config.min_radius))
                for p in members
            ]
            packed = pack_circles(
                circles, float(w), float(h), effective_seed, config.pack_max_iterations
            )
            placements = {c.petition_id: c for c in packed.placements}
            canvas = {"width": packed.width, "height": packed.height}
        else:
            placements = {}
            canvas = {"width": float(w), "height": float(h)}

        def petition_payload(p: Petition) -> dict:
            c = placements[p.id]
            return {
                "id": p.id,
                "title": p.title,
                "supports": p.supports,
                "url": p.url,
                "tooltip": petition_tooltip(p),
                "circle": {"cx": c.cx, "cy": c.cy, "radius": c.radius},
            }

        return _json_response({
            "topic_id": topic_id,
            "label": topic.label,
            "query": entry.topic_set.query,
            "seed": effective_seed,
            "canvas": canvas,
            "petitions": [petition_payload(p) for p in members],
        })

    @app.get("/api/petitions")
    def ranked_petitions(q: str = Query(""), mode: str = Query("hot")) -> Response:
        if not q.strip():
            return _error(400, "EmptyQuery", "query parameter q must be non-empty")
        if mode not in RANK_MODES:
            return _error(422, "BadMode", f"mode must be one of {list(RANK_MODES)}")
        try:
            entry = run_query(q)
        except (SourceUnavailable, SchemaMismatch) as e:
            return _error(502, "SourceUnavailable", str(e))
        members = entry.petitions_by_topic
        all_petitions = {p.id: p for plist in members.values() for p in plist}
        try:
            ranked = rank_petitions(list(all_petitions.values()), mode, hot_params)
            scores = {
                p.id: hot_score(p.supports, 0, p.created_at, hot_params) for p in ranked
            } if mode == "hot" else {}
        except TimestampBeforeEpoch as e:
            return _error(422, "TimestampBeforeEpoch", str(e))
        return _json_response({
            "query": entry.topic_set.query,
            "mode": mode,
            "petitions": [
                {
                    "id": p.id,
                    "title": p.title,
                    "supports": p.supports,
                    "created_at": format_timestamp(p.created_at),
                    "url": p.url,
                    "score": scores.get(p.id),
                }
                for p in ranked
            ],
        })

    static_dir = config.static_dir
    if static_dir:
        from pathlib import Path

        if Path(static_dir).is_dir():
            from fastapi.staticfiles import StaticFiles

            app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def run(config: DiscoveryConfig) -> None:
    """Serve the app with uvicorn on the configured bind address."""
    import uvicorn

    host, _, port = config.bind.partition(":")
    uvicorn.run(create_app(config), host=host or "127.0.0.1", port=int(port or 8000))
