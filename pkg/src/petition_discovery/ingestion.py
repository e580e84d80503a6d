"""Petition ingestion: offline corpus files, a live graph-query client,
and a transparent on-disk cache.

The corpus file format is UTF-8 JSON lines with exactly the fields
id, title, summary, body, supports, created_at (ISO-8601), url. The
live client speaks a consul-style graph-query endpoint and maps its
field names onto the same record shape.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from urllib.parse import urlsplit

import httpx

from .errors import DuplicateId, EmptyQuery, ParseError, SchemaMismatch, SourceUnavailable
from .textproc import fold_accents

logger = logging.getLogger(__name__)

# Supporting votes needed to trigger a city-wide vote (1% of the
# eligible population the platform serves).
SUPPORT_THRESHOLD = 27064

CORPUS_FIELDS = ("id", "title", "summary", "body", "supports", "created_at", "url")

DEFAULT_SEARCH_FIELDS = ("title", "summary", "body")


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 timestamp into an aware UTC datetime."""
    ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True, slots=True)
class Petition:
    id: str
    title: str
    summary: str
    body: str
    supports: int
    created_at: datetime
    url: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("petition id must be non-empty")
        if not self.title:
            raise ValueError(f"petition {self.id!r}: title must be non-empty")
        if not isinstance(self.supports, int) or isinstance(self.supports, bool) or self.supports < 0:
            raise ValueError(f"petition {self.id!r}: supports must be a non-negative integer")
        parts = urlsplit(self.url)
        if parts.scheme not in ("http", "https") or not parts.netloc:
            raise ValueError(f"petition {self.id!r}: url {self.url!r} is not an absolute URL")


@dataclass(frozen=True, slots=True)
class CorpusSource:
    """Where petitions come from: a JSONL file or a live endpoint."""

    kind: str  # "file" | "live-api"
    location: str  # path or endpoint URL
    cache_dir: str | None = None
    cache_ttl: float = 900.0
    timeout: float = 10.0
    retries: int = 2

    def __post_init__(self):
        if self.kind not in ("file", "live-api"):
            raise ValueError(f"unknown source kind {self.kind!r}")


def _record_to_petition(record: dict) -> Petition:
    missing = [f for f in CORPUS_FIELDS if f not in record]
    if missing:
        raise ValueError(f"missing fields: {', '.join(missing)}")
    return Petition(
        id=str(record["id"]),
        title=record["title"],
        summary=record["summary"],
        body=record["body"],
        supports=record["supports"],
        created_at=parse_timestamp(record["created_at"]),
        url=record["url"],
    )


def petition_to_record(p: Petition) -> dict:
    return {
        "id": p.id,
        "title": p.title,
        "summary": p.summary,
        "body": p.body,
        "supports": p.supports,
        "created_at": format_timestamp(p.created_at),
        "url": p.url,
    }


def load_corpus(path: str | Path) -> list[Petition]:
    """Parse a JSONL corpus file; every record must be valid."""
    path = Path(path)
    petitions: list[Petition] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise ParseError(line_number, f"invalid JSON: {e.msg}") from None
            if not isinstance(record, dict):
                raise ParseError(line_number, "record is not a JSON object")
            try:
                petition = _record_to_petition(record)
            except (ValueError, TypeError) as e:
                raise ParseError(line_number, str(e)) from None
            if petition.id in seen:
                raise DuplicateId(line_number, petition.id)
            seen.add(petition.id)
            petitions.append(petition)
    if not petitions:
        logger.warning("corpus file %s contains no petitions", path)
    return petitions


def _match_key(text: str) -> str:
    return fold_accents(text.casefold())


def query_matches(petition: Petition, query: str, fields=DEFAULT_SEARCH_FIELDS) -> bool:
    """Case- and accent-insensitive substring match over the text fields."""
    needle = _match_key(query.strip())
    return any(needle in _match_key(getattr(petition, f)) for f in fields)


# -- live client -----------------------------------------------------------

_GRAPH_QUERY = """
query Petitions($first: Int!, $after: String) {
  proposals(first: $first, after: $after) {
    pageInfo { hasNextPage endCursor }
    edges {
      node {
        id
        title
        summary
        description
        cachedVotesUp
        publicCreatedAt
        publicUrl
      }
    }
  }
}
"""

_NODE_ALIASES = {
    "body": ("body", "description"),
    "supports": ("supports", "cachedVotesUp"),
    "created_at": ("created_at", "publicCreatedAt"),
    "url": ("url", "publicUrl"),
}


def _node_to_petition(node: dict) -> Petition:
    record = {}
    for field in CORPUS_FIELDS:
        for key in _NODE_ALIASES.get(field, (field,)):
            if key in node and node[key] is not None:
                record[field] = node[key]
                break
        else:
            raise SchemaMismatch(f"response node lacks required field {field!r}: {sorted(node)}")
    try:
        return _record_to_petition(record)
    except (ValueError, TypeError) as e:
        raise SchemaMismatch(str(e)) from None


def _fetch_live(source: CorpusSource, page_size: int = 100) -> list[Petition]:
    petitions: list[Petition] = []
    after = None
    attempts = source.retries + 1
    with httpx.Client(timeout=source.timeout) as client:
        while True:
            payload = {"query": _GRAPH_QUERY, "variables": {"first": page_size, "after": after}}
            body = None
            last_error = None
            for attempt in range(attempts):
                try:
                    response = client.post(source.location, json=payload)
                    response.raise_for_status()
                    body = response.json()
                    break
                except (httpx.HTTPError, json.JSONDecodeError) as e:
                    last_error = e
            if body is None:
                raise SourceUnavailable(
                    f"live source {source.location} unreachable after {attempts} attempts: {last_error}"
                )
            try:
                page = body["data"]["proposals"]
                edges = page["edges"]
                page_info = page["pageInfo"]
            except (KeyError, TypeError):
                raise SchemaMismatch(
                    "response lacks data.proposals.edges/pageInfo structure"
                ) from None
            petitions.extend(_node_to_petition(edge["node"]) for edge in edges)
            if not page_info.get("hasNextPage"):
                return petitions
            after = page_info.get("endCursor")


# -- cache -----------------------------------------------------------------

def _cache_path(source: CorpusSource, normalized_query: str) -> Path:
    source_key = str(Path(source.location).resolve()) if source.kind == "file" else source.location
    digest = hashlib.sha1(f"{source_key}\n{normalized_query}".encode("utf-8")).hexdigest()
    return Path(source.cache_dir) / f"{digest}.jsonl"


def _cache_read(path: Path, ttl: float) -> list[Petition] | None:
    try:
        if time.time() - path.stat().st_mtime >= ttl:
            return None
        return [_record_to_petition(json.loads(line)) for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
    except (OSError, ValueError):
        return None


def _cache_write(path: Path, petitions: list[Petition]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for p in petitions:
                fh.write(json.dumps(petition_to_record(p), ensure_ascii=False) + "\n")
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


def fetch_petitions(
    query: str,
    source: CorpusSource,
    search_fields=DEFAULT_SEARCH_FIELDS,
) -> list[Petition]:
    """Petitions whose text contains the query term, ordered by id.

    File sources are filtered locally with the same match rule the live
    path uses. Results are cached under the source's cache_dir when one
    is configured, keyed by (normalized query, source identity).
    """
    normalized = _match_key(query.strip())
    if not normalized:
        raise EmptyQuery("query term must be non-empty")

    cache_file = None
    if source.cache_dir is not None:
        cache_file = _cache_path(source, normalized)
        cached = _cache_read(cache_file, source.cache_ttl)
        if cached is not None:
            return cached

    if source.kind == "file":
        try:
            corpus = load_corpus(source.location)
        except OSError as e:
            raise SourceUnavailable(f"corpus file {source.location} unreadable after 1 attempt: {e}") from None
    else:
        corpus = _fetch_live(source)

    matched = [p for p in corpus if query_matches(p, query, search_fields)]
    matched.sort(key=lambda p: p.id)

    if cache_file is not None:
        _cache_write(cache_file, matched)
    return matched
