"""Runtime configuration: one flat dataclass, serializable to key=value text.

Environment overrides: DISCOVERY_CONFIG points at a config file,
DISCOVERY_API_URL overrides the live endpoint, DISCOVERY_BIND the bind
address.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .ingestion import CorpusSource
from .stc import ClusterParams

ENV_CONFIG = "DISCOVERY_CONFIG"
ENV_API_URL = "DISCOVERY_API_URL"
ENV_BIND = "DISCOVERY_BIND"


@dataclass
class DiscoveryConfig:
    # corpus source
    source_kind: str = "file"  # "file" | "live-api"
    corpus_path: str = ""  # empty -> bundled sample corpus
    api_url: str = ""
    cache_dir: str = ""
    cache_ttl: float = 900.0
    request_timeout: float = 10.0
    match_full_text: bool = True  # False -> match titles only

    # text pipeline
    language: str = "es"
    index_body: bool = False
    stopword_path: str = ""

    # clustering
    min_docs: int = 2
    merge_threshold: float = 0.5
    max_base_clusters: int = 500
    max_phrase_len: int = 6
    min_df: int = 3
    max_df_ratio: float = 0.4
    single_word_factor: float = 0.5
    length_factor_cap: int = 6

    # layout
    circle_scale: float = 1.0
    min_radius: float = 5.0
    pack_max_iterations: int = 500
    seed: int = 42

    # ranking
    hot_epoch: str = "1970-01-01T00:00:00Z"
    hot_decay_divisor: float = 45000.0

    # service
    bind: str = "127.0.0.1:8000"
    result_cache_ttl: float = 900.0
    static_dir: str = ""

    def validate(self) -> None:
        checks = [
            (self.source_kind in ("file", "live-api"), "source_kind must be file or live-api"),
            (self.language in ("es", "en"), "language must be es or en"),
            (self.cache_ttl >= 0, "cache_ttl must be >= 0"),
            (self.request_timeout > 0, "request_timeout must be > 0"),
            (self.min_docs >= 1, "min_docs must be >= 1"),
            (0 < self.merge_threshold <= 1, "merge_threshold must be in (0, 1]"),
            (self.max_base_clusters >= 1, "max_base_clusters must be >= 1"),
            (self.max_phrase_len >= 1, "max_phrase_len must be >= 1"),
            (self.min_df >= 1, "min_df must be >= 1"),
            (0 < self.max_df_ratio <= 1, "max_df_ratio must be in (0, 1]"),
            (self.single_word_factor > 0, "single_word_factor must be > 0"),
            (self.length_factor_cap >= 1, "length_factor_cap must be >= 1"),
            (self.circle_scale > 0, "circle_scale must be > 0"),
            (self.min_radius > 0, "min_radius must be > 0"),
            (self.pack_max_iterations >= 1, "pack_max_iterations must be >= 1"),
            (self.hot_decay_divisor > 0, "hot_decay_divisor must be > 0"),
            (self.result_cache_ttl > 0, "result_cache_ttl must be > 0"),
        ]
        for ok, message in checks:
            if not ok:
                raise ValueError(f"invalid config: {message}")

    # -- serialization -----------------------------------------------------

    def dumps(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{f.name}={value}")
        return "\n".join(lines) + "\n"

    def to_file(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def from_file(cls, path: str | Path) -> "DiscoveryConfig":
        values = {}
        for line_number, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line {line_number}: expected key=value, got {line!r}")
            key, _, raw = line.partition("=")
            values[key.strip()] = raw.strip()
        return cls.from_mapping(values)

    @classmethod
    def from_mapping(cls, values: dict[str, str]) -> "DiscoveryConfig":
        types = {f.name: f.type for f in dataclasses.fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            if key not in types:
                raise ValueError(f"unknown config key {key!r}")
            kind = types[key]
            if kind == "bool":
                if raw.lower() not in ("true", "false"):
                    raise ValueError(f"config key {key!r}: expected true/false, got {raw!r}")
                kwargs[key] = raw.lower() == "true"
            elif kind == "int":
                kwargs[key] = int(raw)
            elif kind == "float":
                kwargs[key] = float(raw)
            else:
                kwargs[key] = raw
        config = cls(**kwargs)
        config.validate()
        return config

    # -- derived views -----------------------------------------------------

    def corpus_source(self) -> CorpusSource:
        if self.source_kind == "live-api":
            if not self.api_url:
                raise ValueError("live-api source requires api_url (or DISCOVERY_API_URL)")
            location = self.api_url
        else:
            location = self.corpus_path or str(bundled_corpus_path())
        return CorpusSource(
            kind=self.source_kind,
            location=location,
            cache_dir=self.cache_dir or None,
            cache_ttl=self.cache_ttl,
            timeout=self.request_timeout,
        )

    def cluster_params(self) -> ClusterParams:
        return ClusterParams(
            language=self.language,
            index_body=self.index_body,
            min_docs=self.min_docs,
            max_phrase_len=self.max_phrase_len,
            merge_threshold=self.merge_threshold,
            max_base_clusters=self.max_base_clusters,
            min_df=self.min_df,
            max_df_ratio=self.max_df_ratio,
            single_word_factor=self.single_word_factor,
            length_factor_cap=self.length_factor_cap,
        )

    def search_fields(self) -> tuple[str, ...]:
        return ("title", "summary", "body") if self.match_full_text else ("title",)


def bundled_corpus_path() -> Path:
    from importlib import resources

    return Path(str(resources.files("petition_discovery.data").joinpath("sample_corpus.jsonl")))


def load_config(path: str | Path | None = None, env: dict | None = None) -> DiscoveryConfig:
    """Build the config from an optional file plus environment overrides."""
    import os

    env = dict(os.environ if env is None else env)
    config_path = path or env.get(ENV_CONFIG)
    config = DiscoveryConfig.from_file(config_path) if config_path else DiscoveryConfig()
    if env.get(ENV_API_URL):
        config.api_url = env[ENV_API_URL]
    if env.get(ENV_BIND):
        config.bind = env[ENV_BIND]
    config.validate()
    return config
