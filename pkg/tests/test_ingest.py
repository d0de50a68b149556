import json

import pytest

from fakestream.ingest import FAKE, NON_FAKE, ValidationError, read_stream, validate_event, write_events

from conftest import make_record, write_lines


def test_complete_record_has_no_defaults():
    ev = validate_event(make_record())
    assert ev.defaulted == ()
    assert ev.label == NON_FAKE and ev.label_index == 0
    assert ev.creator.follower_count == 10


def test_missing_count_defaults_to_zero_and_is_marked():
    rec = make_record()
    del rec["context"]["favourite_count"]
    ev = validate_event(rec)
    assert ev.context.favourite_count == 0
    assert "context.favourite_count" in ev.defaulted


def test_negative_count_names_the_field():
    with pytest.raises(ValidationError) as err:
        validate_event(make_record(creator={"follower_count": -1}))
    assert err.value.field == "creator.follower_count"


@pytest.mark.parametrize("field", ["tweet_id", "user_id", "timestamp", "text"])
def test_required_fields(field):
    rec = make_record()
    del rec[field]
    with pytest.raises(ValidationError):
        validate_event(rec)


def test_registration_after_post_is_rejected():
    with pytest.raises(ValidationError):
        validate_event(make_record(creator={"registered_at": "2015-01-01T00:00:00Z"}))


def test_label_aliases():
    assert validate_event(make_record(label="non-fake")).label == NON_FAKE
    assert validate_event(make_record(label="fake")).label_index == 1
    with pytest.raises(ValidationError):
        validate_event(make_record(label="satire"))


def test_stream_order_and_bad_line(tmp_path):
    recs = [make_record(tweet_id=str(i), timestamp=f"2014-08-11T10:00:0{i}Z") for i in (1, 2, 3)]
    bad = make_record(tweet_id="x")
    del bad["tweet_id"]
    path = write_lines(tmp_path / "s.jsonl", [recs[2], recs[0], bad, recs[1]])
    loaded = read_stream(path)
    assert [e.tweet_id for e in loaded.events] == ["1", "2", "3"]
    assert len(loaded.errors) == 1 and loaded.errors[0].line == 3
    assert loaded.report["resorted"] is True
    assert loaded.report["valid"] == 3 and loaded.report["invalid"] == 1


def test_malformed_json_and_duplicates(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [make_record(), "{not json", make_record()])
    loaded = read_stream(path)
    assert len(loaded.events) == 1
    assert [e.line for e in loaded.errors] == [2, 3]


def test_report_counts(tmp_path):
    recs = [make_record(tweet_id="1", label=FAKE), make_record(tweet_id="2", user_id="u2"),
            make_record(tweet_id="3", label=None)]
    loaded = read_stream(write_lines(tmp_path / "s.jsonl", recs))
    rep = loaded.report
    assert rep["users"] == 2
    assert rep["labels"] == {FAKE: 1, NON_FAKE: 1}
    assert rep["unlabeled"] == 1


def test_write_events_round_trip(tmp_path):
    recs = [make_record(tweet_id=str(i)) for i in range(3)]
    loaded = read_stream(write_lines(tmp_path / "a.jsonl", recs))
    write_events(loaded.events, tmp_path / "b.jsonl")
    again = read_stream(tmp_path / "b.jsonl")
    assert again.events == loaded.events
    first = json.loads((tmp_path / "b.jsonl").read_text().splitlines()[0])
    assert first["creator"]["registered_at"] == "2014-08-01T00:00:00Z"


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        read_stream("/nonexistent/stream.jsonl")
