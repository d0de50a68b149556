"""Convert the public PHEME thread layout into the line-delimited event schema.

Expected layout (either with or without a top-level dataset folder)::

    <root>/<story>/{rumours,non-rumours}/<thread>/source-tweet(s)/<id>.json
    <root>/<story>/{rumours,non-rumours}/<thread>/structure.json

Rumour threads map to ``fake`` and non-rumour threads to ``non_fake``.  Only
the source tweet of each thread becomes an event; duplicate tweet ids are
kept once.  Traversal rule for the propagation counters: the thread
structure is a nested mapping from tweet id to its children;
``distribution_depth`` is the number of edges on its longest root-to-leaf
path and ``first_level_retweets`` the number of direct children of the root.
"""
from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

from .ingest import FAKE, NON_FAKE, format_time, validate_event

CLASS_DIRS = {"rumours": FAKE, "non-rumours": NON_FAKE}
TWITTER_TIME = "%a %b %d %H:%M:%S %z %Y"


class ConversionError(RuntimeError):
    pass


def twitter_time(value):
    return datetime.strptime(value, TWITTER_TIME).astimezone(timezone.utc)


def tree_depth(node):
    """Edges on the longest path of a nested {id: children} mapping."""
    if not isinstance(node, dict) or not node:
        return 0
    return 1 + max(tree_depth(child) for child in node.values())


def structure_counts(structure, root_id):
    if not isinstance(structure, dict) or not structure:
        return 0, 0
    root = structure.get(str(root_id))
    if root is None and len(structure) == 1:
        root = next(iter(structure.values()))
    if not isinstance(root, dict):
        return 0, 0
    return tree_depth(root), len(root)


def _media(tweet):
    media = (tweet.get("extended_entities") or {}).get("media") or (tweet.get("entities") or {}).get("media") or []
    images = [m.get("media_url_https") or m.get("media_url") or "" for m in media if m.get("type") == "photo"]
    videos = [m.get("media_url_https") or m.get("media_url") or "" for m in media
              if m.get("type") in ("video", "animated_gif")]
    return [u for u in images if u], [u for u in videos if u]


def tweet_to_record(tweet, label, depth=0, first_level=0):
    user = tweet.get("user") or {}
    ts = twitter_time(tweet["created_at"])
    reg = twitter_time(user["created_at"]) if user.get("created_at") else ts
    images, videos = _media(tweet)
    links = [u.get("expanded_url") or u.get("url") for u in (tweet.get("entities") or {}).get("urls") or []]
    return {
        "tweet_id": str(tweet.get("id_str") or tweet["id"]),
        "user_id": str(user.get("id_str") or user.get("id") or "unknown"),
        "timestamp": format_time(ts),
        "text": tweet.get("full_text") or tweet.get("text") or "",
        "label": label,
        "creator": {
            "has_description": bool(user.get("description")),
            "has_profile_image": not bool(user.get("default_profile_image", False)),
            "protected": bool(user.get("protected", False)),
            "verified": bool(user.get("verified", False)),
            "timezone": user.get("time_zone") or "none",
            "follower_count": int(user.get("followers_count") or 0),
            "friend_count": int(user.get("friends_count") or 0),
            "user_favourite_count": int(user.get("favourites_count") or 0),
            "registered_at": format_time(min(reg, ts)),
        },
        "context": {
            "retweeted": bool(tweet.get("retweeted", False)),
            "favourited": bool(tweet.get("favorited", False)),
            "distribution_depth": int(depth),
            "first_level_retweets": int(first_level),
            "retweet_count": int(tweet.get("retweet_count") or 0),
            "favourite_count": int(tweet.get("favorite_count") or 0),
            "image_urls": images,
            "video_urls": videos,
            "link_urls": [u for u in links if u],
        },
    }


def _source_files(thread_dir):
    for name in ("source-tweet", "source-tweets"):
        d = thread_dir / name
        if d.is_dir():
            return sorted(d.glob("*.json"))
    return []


def convert(root):
    """Return (records sorted by time then id, per-class counts)."""
    root = Path(root)
    if not root.is_dir():
        raise ConversionError(f"not a directory: {root}")
    class_dirs = sorted(p for p in root.rglob("*") if p.is_dir() and p.name in CLASS_DIRS)
    if not class_dirs:
        raise ConversionError(f"no rumours/non-rumours folders under {root}")
    records, seen = [], set()
    for cdir in class_dirs:
        label = CLASS_DIRS[cdir.name]
        for thread in sorted(p for p in cdir.iterdir() if p.is_dir()):
            structure = {}
            sfile = thread / "structure.json"
            if sfile.exists():
                with open(sfile, encoding="utf-8") as fh:
                    structure = json.load(fh)
            for src in _source_files(thread):
                with open(src, encoding="utf-8") as fh:
                    tweet = json.load(fh)
                tid = str(tweet.get("id_str") or tweet.get("id"))
                if tid in seen:
                    continue
                depth, first = structure_counts(structure, tid)
                rec = tweet_to_record(tweet, label, depth, first)
                validate_event(rec)
                seen.add(tid)
                records.append(rec)
    if not records:
        raise ConversionError(f"no source tweets found under {root}")
    records.sort(key=lambda r: (r["timestamp"], r["tweet_id"]))
    counts = {FAKE: sum(r["label"] == FAKE for r in records),
              NON_FAKE: sum(r["label"] == NON_FAKE for r in records)}
    return records, counts


def write_records(records, path):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")
