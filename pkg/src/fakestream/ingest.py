"""Event schema, validation, and chronological replay of line-delimited streams.

One JSON object per line::

    {"tweet_id": "5", "user_id": "u1", "timestamp": "2014-08-11T10:00:00Z",
     "text": "...", "label": "fake",
     "creator": {"has_description": true, ..., "registered_at": "2014-08-01T00:00:00Z"},
     "context": {"retweeted": false, ..., "link_urls": ["http://..."]}}

``tweet_id``, ``user_id``, ``timestamp`` and ``text`` are required.  Every
creator/context field is optional: flags default to false, counts to 0,
lists to empty, ``timezone`` to ``"none"`` and ``registered_at`` to the post
timestamp.  Each default is recorded so the load report can count them.
"""
from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

logger = logging.getLogger(__name__)

FAKE = "fake"
NON_FAKE = "non_fake"
CLASSES = (NON_FAKE, FAKE)          # index order used by every classifier
LABEL_INDEX = {NON_FAKE: 0, FAKE: 1}
_LABEL_ALIASES = {"fake": FAKE, "non_fake": NON_FAKE, "non-fake": NON_FAKE}

CREATOR_FLAGS = ("has_description", "has_profile_image", "protected", "verified")
CREATOR_COUNTS = ("follower_count", "friend_count", "user_favourite_count")
CONTEXT_FLAGS = ("retweeted", "favourited")
CONTEXT_COUNTS = ("distribution_depth", "first_level_retweets", "retweet_count", "favourite_count")
CONTEXT_LISTS = ("image_urls", "video_urls", "link_urls")
REQUIRED = ("tweet_id", "user_id", "timestamp", "text")


class ValidationError(ValueError):
    """A raw record that cannot become a TweetEvent."""

    def __init__(self, message, field_name=None):
        super().__init__(message)
        self.field = field_name


def parse_time(value) -> datetime:
    if isinstance(value, datetime):
        dt = value
    elif isinstance(value, str):
        text = value.strip()
        if text.endswith(("Z", "z")):
            text = text[:-1] + "+00:00"
        dt = datetime.fromisoformat(text)
    else:
        raise ValueError(f"not a timestamp: {value!r}")
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_time(dt: datetime) -> str:
    dt = dt.astimezone(timezone.utc)
    if dt.microsecond:
        return dt.strftime("%Y-%m-%dT%H:%M:%S.%fZ")
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class CreatorMeta:
    has_description: bool = False
    has_profile_image: bool = False
    protected: bool = False
    verified: bool = False
    timezone: str = "none"
    follower_count: int = 0
    friend_count: int = 0
    user_favourite_count: int = 0
    registered_at: datetime | None = None


@dataclass(frozen=True)
class ContextMeta:
    retweeted: bool = False
    favourited: bool = False
    distribution_depth: int = 0
    first_level_retweets: int = 0
    retweet_count: int = 0
    favourite_count: int = 0
    image_urls: tuple = ()
    video_urls: tuple = ()
    link_urls: tuple = ()


@dataclass(frozen=True)
class TweetEvent:
    tweet_id: str
    user_id: str
    timestamp: datetime
    text: str
    creator: CreatorMeta
    context: ContextMeta
    label: str | None = None
    defaulted: tuple = field(default=(), compare=False)

    @property
    def label_index(self):
        return None if self.label is None else LABEL_INDEX[self.label]

    def to_record(self) -> dict:
        creator = asdict(self.creator)
        creator["registered_at"] = format_time(self.creator.registered_at)
        context = {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(self.context).items()}
        rec = {
            "tweet_id": self.tweet_id,
            "user_id": self.user_id,
            "timestamp": format_time(self.timestamp),
            "text": self.text,
            "creator": creator,
            "context": context,
        }
        if self.label is not None:
            rec["label"] = self.label
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, ensure_ascii=False)


def _flag(section, name, defaulted, prefix):
    if name not in section or section[name] is None:
        defaulted.append(f"{prefix}.{name}")
        return False
    value = section[name]
    if not isinstance(value, (bool, int)) or value not in (0, 1, True, False):
        raise ValidationError(f"{prefix}.{name} must be a boolean, got {value!r}", f"{prefix}.{name}")
    return bool(value)


def _count(section, name, defaulted, prefix):
    if name not in section or section[name] is None:
        defaulted.append(f"{prefix}.{name}")
        return 0
    value = section[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ValidationError(f"{prefix}.{name} must be an integer count, got {value!r}", f"{prefix}.{name}")
    if value < 0:
        raise ValidationError(f"{prefix}.{name} must be >= 0, got {value!r}", f"{prefix}.{name}")
    return int(value)


def _urls(section, name, defaulted, prefix):
    if name not in section or section[name] is None:
        defaulted.append(f"{prefix}.{name}")
        return ()
    value = section[name]
    if not isinstance(value, list) or not all(isinstance(u, str) for u in value):
        raise ValidationError(f"{prefix}.{name} must be a list of strings", f"{prefix}.{name}")
    return tuple(value)


def validate_event(raw) -> TweetEvent:
    """Turn one parsed record into a TweetEvent or raise ValidationError."""
    if not isinstance(raw, dict):
        raise ValidationError("record is not a JSON object")
    for name in REQUIRED:
        if name not in raw or raw[name] is None or raw[name] == "":
            raise ValidationError(f"missing required field {name}", name)
    tweet_id, user_id, text = str(raw["tweet_id"]), str(raw["user_id"]), raw["text"]
    if not isinstance(text, str):
        raise ValidationError("text must be a string", "text")
    try:
        ts = parse_time(raw["timestamp"])
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad timestamp: {exc}", "timestamp") from None

    label = raw.get("label")
    if label is not None:
        if label not in _LABEL_ALIASES:
            raise ValidationError(f"unknown label {label!r}", "label")
        label = _LABEL_ALIASES[label]

    defaulted = []
    cr = raw.get("creator") or {}
    cx = raw.get("context") or {}
    if not isinstance(cr, dict) or not isinstance(cx, dict):
        raise ValidationError("creator/context must be objects")

    tz = cr.get("timezone")
    if tz is None or tz == "":
        defaulted.append("creator.timezone")
        tz = "none"
    reg = cr.get("registered_at")
    if reg is None:
        defaulted.append("creator.registered_at")
        reg_at = ts
    else:
        try:
            reg_at = parse_time(reg)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad registered_at: {exc}", "creator.registered_at") from None
    if reg_at > ts:
        raise ValidationError("creator.registered_at is after the post timestamp", "creator.registered_at")

    creator = CreatorMeta(
        **{n: _flag(cr, n, defaulted, "creator") for n in CREATOR_FLAGS},
        timezone=str(tz),
        **{n: _count(cr, n, defaulted, "creator") for n in CREATOR_COUNTS},
        registered_at=reg_at,
    )
    context = ContextMeta(
        **{n: _flag(cx, n, defaulted, "context") for n in CONTEXT_FLAGS},
        **{n: _count(cx, n, defaulted, "context") for n in CONTEXT_COUNTS},
        **{n: _urls(cx, n, defaulted, "context") for n in CONTEXT_LISTS},
    )
    return TweetEvent(tweet_id, user_id, ts, text, creator, context, label, tuple(defaulted))


@dataclass
class LineError:
    line: int
    message: str
    field: str | None = None


@dataclass
class LoadResult:
    events: list
    errors: list
    report: dict


def read_stream(source) -> LoadResult:
    """Load a line-delimited event file and return its events in time order.

    Bad lines become LineError records and do not stop the load.  Input that
    is not already chronological is stably sorted and flagged in the report.
    """
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"event stream not found: {path}")

    events, errors = [], []
    seen_ids = set()
    defaulted = Counter()
    n_lines = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            n_lines += 1
            if not line.strip():
                errors.append(LineError(lineno, "empty line"))
                continue
            try:
                raw = json.loads(line)
                event = validate_event(raw)
            except json.JSONDecodeError as exc:
                errors.append(LineError(lineno, f"malformed JSON: {exc.msg}"))
                continue
            except ValidationError as exc:
                errors.append(LineError(lineno, str(exc), exc.field))
                continue
            if event.tweet_id in seen_ids:
                errors.append(LineError(lineno, f"duplicate tweet_id {event.tweet_id}", "tweet_id"))
                continue
            seen_ids.add(event.tweet_id)
            defaulted.update(event.defaulted)
            events.append(event)

    in_order = all(a.timestamp <= b.timestamp for a, b in zip(events, events[1:]))
    if not in_order:
        logger.warning("%s: timestamps out of order, sorting %d events in memory", path, len(events))
        events.sort(key=lambda e: e.timestamp)

    inconsistent = sum(1 for e in events if e.context.distribution_depth >= 1 and e.context.retweet_count < 1)
    labels = Counter(e.label for e in events if e.label is not None)
    report = {
        "source": str(path),
        "lines": n_lines,
        "valid": len(events),
        "invalid": len(errors),
        "events_with_defaults": sum(1 for e in events if e.defaulted),
        "defaulted_fields": dict(sorted(defaulted.items())),
        "resorted": not in_order,
        "users": len({e.user_id for e in events}),
        "labels": {c: labels.get(c, 0) for c in (FAKE, NON_FAKE)},
        "unlabeled": sum(1 for e in events if e.label is None),
        "depth_without_retweets": inconsistent,
        "errors": [asdict(e) for e in errors],
    }
    return LoadResult(events, errors, report)


def write_events(events, path):
    """Write events in the line-delimited schema (deterministic key order)."""
    with open(path, "w", encoding="utf-8") as fh:
        for event in events:
            fh.write(event.to_json() + "\n")


def write_report(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
