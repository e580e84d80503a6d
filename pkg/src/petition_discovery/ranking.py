"""Hot-score baseline ranking.

The time-decaying score that petition platforms borrowed from news
aggregators: log of net votes plus a linear recency bonus. Kept here
as the status-quo ranker the discovery views are an alternative to.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from math import log10

from .errors import TimestampBeforeEpoch
from .ingestion import Petition

UNIX_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)

RANK_MODES = ("hot", "supports", "newest")


@dataclass(frozen=True, slots=True)
class HotScoreParams:
    epoch: datetime = UNIX_EPOCH
    decay_divisor: float = 45000.0

    def __post_init__(self):
        if self.decay_divisor <= 0:
            raise ValueError("decay_divisor must be positive")


def hot_score(ups: int, downs: int, created_at: datetime, params: HotScoreParams = HotScoreParams()) -> float:
    """Net-vote magnitude plus one point per decay_divisor seconds of age.

    Rounded to 7 decimal places, matching the reference calculator.
    """
    if created_at < params.epoch:
        raise TimestampBeforeEpoch(
            f"created_at {created_at.isoformat()} predates epoch {params.epoch.isoformat()}"
        )
    s = ups - downs
    order = log10(max(abs(s), 1))
    sign = 1 if s > 0 else -1 if s < 0 else 0
    seconds = (created_at - params.epoch).total_seconds()
    return round(order + sign * seconds / params.decay_divisor, 7)


def rank_petitions(
    petitions: list[Petition],
    mode: str = "hot",
    params: HotScoreParams = HotScoreParams(),
) -> list[Petition]:
    """Sort petitions by the chosen key, best first.

    Supports count as upvotes with no downvotes. Ties break toward the
    newer petition, then by id.
    """
    if mode not in RANK_MODES:
        raise ValueError(f"unknown rank mode {mode!r} (expected one of {list(RANK_MODES)})")
    if mode == "hot":
        key = lambda p: hot_score(p.supports, 0, p.created_at, params)
    elif mode == "supports":
        key = lambda p: p.supports
    else:
        key = lambda p: p.created_at.timestamp()
    return sorted(petitions, key=lambda p: (-key(p), -p.created_at.timestamp(), p.id))
