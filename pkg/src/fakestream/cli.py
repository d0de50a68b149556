"""Command line: run, explain, convert, bench, synth."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from pathlib import Path

from .learn import snapshot
from .config import ConfigError, RunConfig, load_config
from .engine import Engine
from .evaluation import SERIES_FIELDS, run_stream
from .explain import EXTENSIONS, FORMATS, emit_report, explain_step
from .features import export_feature_dictionary
from .ingest import read_stream, write_report

log = logging.getLogger("fakestream")

CONFIG_FILE = "config.txt"
SNAP_DIR = "snapshots"
EXPLAIN_DIR = "explanations"


class CLIError(RuntimeError):
    pass


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _write_csv(path, rows, fields):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(fields), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})


def _load_events(path):
    if not path:
        raise CLIError("input: no input file given")
    try:
        loaded = read_stream(path)
    except FileNotFoundError as exc:
        raise CLIError(str(exc)) from None
    return loaded


def _snapshot_path(out, n):
    return Path(out) / SNAP_DIR / f"snap_{n:08d}.pkl"


def _explain_ids(cfg):
    if not cfg.explain_ids:
        return set()
    with open(cfg.explain_ids, encoding="utf-8") as fh:
        return {line.strip() for line in fh if line.strip()}


def run(cfg: RunConfig, metrics_only=False):
    """Full prequential pass writing every artifact into ``cfg.output_dir``."""
    loaded = _load_events(cfg.input)
    cfg.input = str(Path(cfg.input).resolve())   # explain may run from another directory
    events = loaded.events
    if not events:
        raise CLIError(f"input: no valid events in {cfg.input}")
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / CONFIG_FILE).write_text(cfg.to_text(), encoding="utf-8")
    write_report(loaded.report, out / "load_report.json")

    engine = Engine(cfg, expected_size=len(events))
    ids = _explain_ids(cfg)
    index = []
    if not metrics_only:
        (out / SNAP_DIR).mkdir(exist_ok=True)
        if cfg.explain_every or ids:
            (out / EXPLAIN_DIR).mkdir(exist_ok=True)

    def on_step(step, eng):
        n = eng.n_events
        if metrics_only:
            return
        if n % cfg.snapshot_every == 0:
            snapshot.save({"engine": eng, "n_events": n}, _snapshot_path(out, n))
        tid = step.event.tweet_id
        if (cfg.explain_every and n % cfg.explain_every == 0) or tid in ids:
            expl = explain_step(eng, step, cfg.explain_k)
            name = f"{tid}.{EXTENSIONS[cfg.explain_format]}"
            emit_report(expl, cfg.explain_format, out / EXPLAIN_DIR / name)
            index.append({"tweet_id": tid, "file": f"{EXPLAIN_DIR}/{name}", "label": expl.label,
                          "confidence": expl.confidence})

    report, series, timing = run_stream(engine, events, cfg.window_spec(), cfg.metrics_every, on_step)
    _write_json(out / "report.json", report.deterministic())
    _write_csv(out / "series.csv", series, SERIES_FIELDS)
    _write_json(out / "timing.json", {"samples": report.samples,
                                      "seconds_per_sample": report.seconds_per_sample})
    _write_csv(out / "timing.csv", timing, ("samples", "seconds_per_sample"))
    if not metrics_only:
        export_feature_dictionary(out / "feature_dictionary.json")
        with open(out / "lexicon.tsv", "w", encoding="utf-8") as fh:
            for gram, cls, freq in engine.lexicon.export():
                fh.write(f"{gram}\t{cls}\t{freq}\n")
        if index:
            _write_json(out / EXPLAIN_DIR / "index.json", index)
    return report


def explain(run_dir, tweet_id, fmt="structured", output=None):
    """Rebuild the state just before ``tweet_id`` from the nearest snapshot and explain it."""
    run_dir = Path(run_dir)
    cfg_file = run_dir / CONFIG_FILE
    if not cfg_file.exists():
        raise CLIError(f"run directory {run_dir} has no {CONFIG_FILE}")
    cfg = load_config(cfg_file, env={})
    events = _load_events(cfg.input).events
    pos = next((i for i, e in enumerate(events) if e.tweet_id == tweet_id), None)
    if pos is None:
        raise CLIError(f"unknown tweet_id {tweet_id!r}")
    snaps = sorted((run_dir / SNAP_DIR).glob("snap_*.pkl"))
    best = None
    for p in snaps:
        n = int(p.stem.split("_")[1])
        if n <= pos:
            best = (n, p)
    if best is None:
        engine, start = Engine(cfg, expected_size=len(events)), 0
    else:
        state = snapshot.load(best[1])
        engine, start = state["engine"], state["n_events"]
        engine.attach_resources()
    for ev in events[start:pos]:
        engine.process(ev)
    step = engine.predict(events[pos])
    expl = explain_step(engine, step, cfg.explain_k)
    return emit_report(expl, fmt, output)


def convert(pheme_dir, output):
    from .pheme import ConversionError, convert as convert_dir, write_records
    try:
        records, counts = convert_dir(pheme_dir)
    except ConversionError as exc:
        raise CLIError(str(exc)) from None
    write_records(records, output)
    loaded = read_stream(output)
    write_report(loaded.report, Path(str(output) + ".report.json"))
    return counts, loaded.report


def bench(cfg, limit=None):
    loaded = _load_events(cfg.input)
    events = loaded.events[:limit] if limit else loaded.events
    engine = Engine(cfg, expected_size=len(events))
    start = time.perf_counter()
    report, _, _ = run_stream(engine, events, cfg.window_spec(), 0)
    return report, time.perf_counter() - start


# ---------------------------------------------------------------------------

def _run_overrides(ns):
    o = {"input": ns.input, "output_dir": ns.output_dir, "family": ns.family,
         "feature_set": ns.feature_set, "k": ns.k, "seed": ns.seed,
         "explain_every": ns.explain_every, "explain_ids": ns.explain_ids,
         "explain_format": ns.format}
    if ns.window_fraction is not None:
        o["window"] = f"fraction:{ns.window_fraction}"
    elif ns.window_count is not None:
        o["window"] = f"count:{ns.window_count}"
    for item in ns.set or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(item, "--set expects key=value")
        o[key.strip()] = value.strip()
    return o


def _add_run_args(p):
    p.add_argument("--config", help="flat key = value configuration file")
    p.add_argument("--input", help="line-delimited event file")
    p.add_argument("--output-dir")
    p.add_argument("--family", choices=["gnb", "htc", "hatc", "arfc"])
    p.add_argument("--feature-set", choices=["A", "B", "C"])
    g = p.add_mutually_exclusive_group()
    g.add_argument("--window-fraction", type=float)
    g.add_argument("--window-count", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--explain-every", type=int)
    p.add_argument("--explain-ids")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override any config key")


def build_parser():
    ap = argparse.ArgumentParser(prog="fakestream", description="Online explainable fake-news classification")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="prequential run writing report, series, snapshots")
    _add_run_args(p)

    p = sub.add_parser("explain", help="explanation report for one event of a run")
    p.add_argument("--run-dir", required=True)
    p.add_argument("--tweet-id", required=True)
    p.add_argument("--format", choices=FORMATS, default="structured")
    p.add_argument("--output")

    p = sub.add_parser("convert", help="convert a PHEME directory into the event schema")
    p.add_argument("pheme_dir")
    p.add_argument("--output", required=True)

    p = sub.add_parser("bench", help="metrics-only run reporting seconds per sample")
    _add_run_args(p)
    p.add_argument("--limit", type=int)

    p = sub.add_parser("synth", help="write a synthetic labeled stream")
    p.add_argument("--output", required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--n-fake", type=int)
    p.add_argument("--users", type=int)
    p.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None):
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if ns.command in ("run", "bench"):
            cfg = load_config(ns.config, _run_overrides(ns))
            if ns.command == "run":
                report = run(cfg)
                print(json.dumps(report.deterministic(), sort_keys=True))
                print(f"seconds per sample: {report.seconds_per_sample:.4f}")
                print(f"artifacts written to {cfg.output_dir}")
            else:
                report, elapsed = bench(cfg, ns.limit)
                print(f"{report.samples} samples in {elapsed:.2f} s: "
                      f"{report.seconds_per_sample:.4f} s/sample, accuracy {report.accuracy:.4f}")
        elif ns.command == "explain":
            body = explain(ns.run_dir, ns.tweet_id, ns.format, ns.output)
            if ns.output is None:
                sys.stdout.write(body)
        elif ns.command == "convert":
            counts, report = convert(ns.pheme_dir, ns.output)
            print(f"{report['valid']} events from {report['users']} users: "
                  + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
        elif ns.command == "synth":
            from .synth import generate, write_jsonl
            write_jsonl(generate(ns.n, n_users=ns.users, seed=ns.seed, n_fake=ns.n_fake), ns.output)
            print(f"wrote {ns.n} events to {ns.output}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (CLIError, OSError, snapshot.SnapshotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
