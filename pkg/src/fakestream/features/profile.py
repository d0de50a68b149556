from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime

SECONDS_PER_DAY = 86400.0


@dataclass
class UserProfile:
    """Incremental per-creator statistics.

    ``means`` maps feature name to ``[count, mean]``.
    """
    user_id: str
    n_posts: int = 0
    means: dict = field(default_factory=dict)
    first_seen: datetime | None = None
    registered_at: datetime | None = None

    def mean(self, name):
        entry = self.means.get(name)
        return None if entry is None else entry[1]


def update_profile(profile: UserProfile, values, now=None, registered_at=None) -> UserProfile:
    """Fold one event's numeric features into the running means (in place)."""
    for name, x in values.items():
        entry = profile.means.get(name)
        if entry is None:
            profile.means[name] = [1, float(x)]
        else:
            entry[0] += 1
            entry[1] += (float(x) - entry[1]) / entry[0]
    profile.n_posts += 1
    if profile.first_seen is None and now is not None:
        profile.first_seen = now
    if registered_at is not None:
        profile.registered_at = registered_at
    return profile


def trend_flag(current, mean) -> bool:
    # no history: the first observation equals its own mean
    if mean is None:
        return True
    return current >= mean


def creator_features(creator, profile: UserProfile, now: datetime, n_posts=None) -> dict:
    """Creator-profile features for one event.

    ``n_posts`` defaults to the posts already in ``profile`` plus the current one.
    """
    if n_posts is None:
        n_posts = profile.n_posts + 1
    followers = creator.follower_count
    friends = creator.friend_count
    days = max((now - creator.registered_at).total_seconds() / SECONDS_PER_DAY, 0.0)
    weeks = max(days / 7.0, 1.0)
    return {
        "has_description": float(creator.has_description),
        "has_profile_image": float(creator.has_profile_image),
        "protected": float(creator.protected),
        "verified": float(creator.verified),
        "timezone": creator.timezone,
        "follower_count": float(followers),
        "friend_count": float(friends),
        "friends_followers_ratio": friends / followers if followers > 0 else 0.0,
        "user_favourite_count": float(creator.user_favourite_count),
        "registration_days": days,
        "weekly_frequency": n_posts / weeks,
    }


def context_features(context) -> dict:
    return {
        "retweeted": float(context.retweeted),
        "favourited": float(context.favourited),
        "distribution_depth": float(context.distribution_depth),
        "first_level_retweets": float(context.first_level_retweets),
        "retweet_count": float(context.retweet_count),
        "favourite_count": float(context.favourite_count),
    }
