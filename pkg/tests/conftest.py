import copy
import json

import pytest

from fakestream.textproc import load_resources

BASE_RECORD = {
    "tweet_id": "1",
    "user_id": "u1",
    "timestamp": "2014-08-11T10:00:00Z",
    "text": "Police confirm the road is closed.",
    "label": "non_fake",
    "creator": {
        "has_description": True, "has_profile_image": True, "protected": False, "verified": False,
        "timezone": "London", "follower_count": 10, "friend_count": 5, "user_favourite_count": 3,
        "registered_at": "2014-08-01T00:00:00Z",
    },
    "context": {
        "retweeted": False, "favourited": False, "distribution_depth": 1, "first_level_retweets": 2,
        "retweet_count": 4, "favourite_count": 1, "image_urls": [], "video_urls": [], "link_urls": [],
    },
}


def make_record(**changes):
    rec = copy.deepcopy(BASE_RECORD)
    for key, value in changes.items():
        if key in ("creator", "context"):
            rec[key].update(value)
        else:
            rec[key] = value
    return rec


def write_lines(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write((rec if isinstance(rec, str) else json.dumps(rec)) + "\n")
    return path


@pytest.fixture(scope="session")
def resources():
    return load_resources()


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
