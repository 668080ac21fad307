"""Command-line front end.

Exit codes: 0 verified or completed, 1 a checked property failed (the payload
carries the witness), 2 bad input, 3 a resource cap was hit.
"""

import argparse
import csv
import json
import logging
import os
import random
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from . import __version__
from .errors import InputError, ResourceCapError

log = logging.getLogger("gspflow")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
CAPS_ENV = "GSPFLOW_CAPS"
DEFAULT_CAPS = {"certify_max_ground": 12, "slow_seeds": 2_000_000, "clone_max_ground": 10}
CENSUS_COLUMNS = ("name", "n", "m", "girth", "dc_count", "dc_degree_max", "positive_count",
                  "symdiff2_found", "runtime_ms")


@dataclass
class RunConfig:
    command: str
    source: str = None
    fmt: str = None
    seed: int = 1
    caps: dict = field(default_factory=dict)
    slow: bool = False
    output: str = "json"
    options: dict = field(default_factory=dict)


def parse_caps(text):
    caps = dict(DEFAULT_CAPS)
    if not text:
        return caps
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        if not sep or key.strip() not in DEFAULT_CAPS:
            raise InputError(f"bad cap override {item!r}; known caps: {', '.join(DEFAULT_CAPS)}")
        try:
            caps[key.strip()] = int(value)
        except ValueError:
            raise InputError(f"cap {key.strip()} needs an integer, got {value!r}") from None
    return caps


def envelope(config, result, verdicts, elapsed=None):
    out = {"tool": "gspflow", "version": __version__, "config": asdict(config),
           "result": result, "verdicts": verdicts}
    if elapsed is not None:
        out["timing"] = {"seconds": round(elapsed, 3)}
    return out


def _fmt_girth(g):
    return None if g == float("inf") else int(g)


# ---------------------------------------------------------------- graph input

def _guess_format(path):
    if path.endswith((".g6", ".graph6")):
        return "graph6"
    if path.endswith(".json"):
        return "json"
    return "edge-list"


def load_graph(args):
    from .graphs import named_graph, parse_graph
    if args.named:
        return args.named, named_graph(args.named)
    if not args.graph:
        raise InputError("give --named NAME or --graph PATH")
    fmt = args.format or ("edge-list" if args.graph == "-" else _guess_format(args.graph))
    text = sys.stdin.read() if args.graph == "-" else _read(args.graph)
    return args.graph, parse_graph(fmt, text)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------- commands

def cmd_verify_girth5(args, config):
    from .bicircular import make_bicircular
    from .doublecirc import enumerate_double_circuits
    from .graphs import girth
    name, g = load_graph(args)
    gi = girth(g)
    result = {"graph": name, "n_vertices": g.vertex_count, "m": g.m, "girth": _fmt_girth(gi)}
    if gi < 5:
        result["note"] = f"girth {_fmt_girth(gi)} < 5: theorem not applicable"
        return EXIT_OK, result, {"girth5": "skipped"}
    b = make_bicircular(g)
    reports = enumerate_double_circuits(b, slow=config.slow, jobs=args.jobs,
                                        seed_limit=config.caps["slow_seeds"])
    positive = [r for r in reports if r.positive]
    hist = Counter(r.degree for r in reports)
    result.update({"dual_rank": b.corank, "dc_count": len(reports),
                   "degree_histogram": {str(k): hist[k] for k in sorted(hist)},
                   "positive_count": len(positive)})
    if positive:
        result["witness"] = positive[0].to_json()
        return EXIT_VIOLATION, result, {"girth5": "violated"}
    return EXIT_OK, result, {"girth5": "verified"}


def _oriented_input(args, config):
    from .orientedflow import (realize_bicircular, realize_graphic, realize_lattice_path,
                               realize_uniform)
    if args.lattice_path:
        parts = args.lattice_path.split(",")
        if len(parts) != 2:
            raise InputError("--lattice-path expects UPPER,LOWER")
        return f"LPM[{args.lattice_path}]", realize_lattice_path(parts[0], parts[1], config.seed)
    if args.uniform:
        try:
            r, n = (int(x) for x in args.uniform.split(","))
        except ValueError:
            raise InputError("--uniform expects R,N") from None
        return f"U_{{{r},{n}}}", realize_uniform(r, n, config.seed)
    name, g = load_graph(args)
    if args.graphic:
        return f"M({name})", realize_graphic(g)
    return f"B({name})", realize_bicircular(g, config.seed)


def cmd_certify(args, config):
    from .orientedflow import certify_GSP, certify_coGSP, reorient
    name, o = _oriented_input(args, config)
    run = certify_GSP if args.mode == "gsp" else certify_coGSP
    cap = config.caps["certify_max_ground"]
    cert = run(o, max_ground=cap, max_depth=args.max_depth)
    result = {"input": name, "n": o.n, "certificate": cert.to_json()}
    verdict = cert.verdict
    if args.sweep:
        rng = random.Random(config.seed)
        sweep = []
        for _ in range(args.sweep):
            S = rng.getrandbits(o.n) if o.n else 0
            c = run(reorient(o, S), max_ground=cap, max_depth=args.max_depth)
            sweep.append({"reorient": S, "verdict": c.verdict, "minors_checked": c.minors_checked})
            verdict = verdict and c.verdict
        result["sweep"] = sweep
    return (EXIT_OK if verdict else EXIT_VIOLATION), result, {args.mode: verdict,
                                                              "complete": cert.complete}


def iter_records(text, fmt):
    """Yield (index, name, payload) records from a census stream."""
    if fmt == "graph6":
        idx = 0
        for line in text.splitlines():
            if not line.strip() or line.startswith(">>graph6<<") and not line[10:].strip():
                continue
            yield idx, str(idx), line.strip()
            idx += 1
    else:
        blocks = [b for b in text.replace("\r\n", "\n").split("\n\n") if b.strip()]
        for idx, block in enumerate(blocks):
            yield idx, str(idx), block


def census_record(args):
    """Census row for one record; errors are returned, not raised."""
    idx, name, payload, fmt, slow, timing, caps = args
    from .bicircular import make_bicircular, symdiff2_circuit_pair
    from .doublecirc import double_circuit_to_symdiff_pair, enumerate_double_circuits
    from .graphs import girth, parse_graph
    from .matroid import clone_reduction_order, is_cosimple
    start = time.perf_counter()
    try:
        g = parse_graph(fmt, payload)
    except InputError as exc:
        return {"index": idx, "name": name, "error": f"parse: {exc}"}
    row = {"index": idx, "name": name, "n": g.vertex_count, "m": g.m, "girth": _fmt_girth(girth(g))}
    b = make_bicircular(g)
    try:
        reports = enumerate_double_circuits(b, slow=slow, seed_limit=caps["slow_seeds"])
    except ResourceCapError as exc:
        row["error"] = f"cap: {exc}"
        return row
    degs = [r.degree for r in reports]
    row["dc_count"] = len(reports)
    row["dc_degree_max"] = max(degs) if degs else 0
    row["degree_histogram"] = {str(k): v for k, v in sorted(Counter(degs).items())}
    row["positive_count"] = sum(r.positive for r in reports)
    if is_cosimple(b):
        pair = symdiff2_circuit_pair(b)
        row["symdiff2_found"] = True
        row["symdiff2_method"] = pair.method
    else:
        row["symdiff2_found"] = any(r.singular_count >= 2 for r in reports)
        if row["symdiff2_found"]:
            rep = next(r for r in reports if r.singular_count >= 2)
            double_circuit_to_symdiff_pair(b, rep)
    if b.n <= caps["clone_max_ground"]:
        row["clone_reducible"] = clone_reduction_order(b, cap=caps["clone_max_ground"]) is not None
    if timing:
        row["runtime_ms"] = round((time.perf_counter() - start) * 1000, 1)
    return row


def _csv_cell(value):
    return str(value).lower() if isinstance(value, bool) else value


def _load_checkpoint(path):
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return int(json.load(fh).get("next_index", 0))
    return 0


def _save_checkpoint(path, next_index):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump({"next_index": next_index}, fh)
    os.replace(tmp, path)


def cmd_census(args, config, out):
    src = args.input
    text = sys.stdin.read() if src in (None, "-") else _read(src)
    fmt = args.format or ("graph6" if src in (None, "-") else _guess_format(src))
    start_at = _load_checkpoint(args.checkpoint)
    tasks = ((i, nm, p, fmt, config.slow, args.timing, config.caps)
             for i, nm, p in iter_records(text, fmt) if i >= start_at)
    if args.jobs > 1:
        from multiprocessing import get_context
        pool = get_context("fork").Pool(args.jobs)
        rows = pool.imap(census_record, tasks, chunksize=4)
    else:
        pool = None
        rows = map(census_record, tasks)

    sink = out
    owned = None
    if args.output:
        owned = open(args.output, "a" if start_at else "w", encoding="utf-8", newline="")
        sink = owned
    writer = None
    if args.csv:
        writer = csv.writer(sink, lineterminator="\n")
        if not start_at:
            writer.writerow(CENSUS_COLUMNS)
    violations, capped, errors, count = 0, 0, 0, 0
    json_rows = []
    try:
        for row in rows:
            count += 1
            if "error" in row:
                log.warning("record %s: %s", row["index"], row["error"])
                if row["error"].startswith("cap"):
                    capped += 1
                else:
                    errors += 1
            elif row["dc_degree_max"] > 6:
                violations += 1
                log.error("record %s has a double circuit of degree %s", row["index"],
                          row["dc_degree_max"])
            if writer:
                writer.writerow([_csv_cell(row.get(c, "")) for c in CENSUS_COLUMNS])
            else:
                json_rows.append(row)
            sink.flush()
            if args.checkpoint and count % args.checkpoint_every == 0:
                _save_checkpoint(args.checkpoint, row["index"] + 1)
        if args.checkpoint and count:
            _save_checkpoint(args.checkpoint, row["index"] + 1)
    finally:
        if pool:
            pool.close()
            pool.join()
    summary = {"records": count, "parse_errors": errors, "capped": capped,
               "degree_violations": violations}
    code = EXIT_VIOLATION if violations else EXIT_CAP if capped else EXIT_OK
    if not writer:
        result = {"rows": json_rows, "summary": summary}
        return code, result, {"max_degree_le_6": violations == 0}, owned
    if owned:
        owned.close()
    return code, None, None, None


# ---------------------------------------------------------------- wiring

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")
    common.add_argument("--slow", action="store_true", help="allow long enumerations")
    common.add_argument("-v", "--verbose", action="store_true")
    p = argparse.ArgumentParser(prog="gspflow", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp):
        sp.add_argument("--named")
        sp.add_argument("--graph", help="path to a graph file, or - for stdin")
        sp.add_argument("--format", choices=("edge-list", "graph6", "json"))

    v = sub.add_parser("verify-girth5", parents=[common],
                       help="no positive double circuits in B(G) for girth >= 5")
    graph_args(v)
    v.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("certify", parents=[common],
                       help="certify GSP or coGSP of a realized orientation")
    graph_args(c)
    c.add_argument("--bicircular", action="store_true", help="use B(G) (default for graphs)")
    c.add_argument("--graphic", action="store_true", help="use the cycle matroid M(G)")
    c.add_argument("--lattice-path", help="UPPER,LOWER bounding paths")
    c.add_argument("--uniform", help="R,N")
    c.add_argument("--mode", choices=("gsp", "cogsp"), required=True)
    c.add_argument("--max-depth", type=int, help="survey only minors with |D|+|C| <= K")
    c.add_argument("--sweep", type=int, default=0, help="also check K seeded reorientations")

    s = sub.add_parser("census", parents=[common],
                       help="double-circuit census of B(G) over a graph stream")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--format", choices=("edge-list", "graph6"))
    s.add_argument("--csv", action="store_true")
    s.add_argument("--output")
    s.add_argument("--checkpoint")
    s.add_argument("--checkpoint-every", type=int, default=50)
    s.add_argument("--jobs", type=int, default=1)
    return p


def _text_view(payload):
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}{k}.", v)
        elif isinstance(obj, list) and len(obj) > 8:
            lines.append(f"{prefix[:-1]}: [{len(obj)} items]")
        else:
            lines.append(f"{prefix[:-1]}: {obj}")

    walk("", {k: v for k, v in payload.items() if k != "config"})
    return "\n".join(lines) + "\n"


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    start = time.perf_counter()
    try:
        caps = parse_caps(os.environ.get(CAPS_ENV, ""))
        slow = args.slow
        options = {k: v for k, v in sorted(vars(args).items())
                   if k not in ("command", "seed", "slow", "text", "timing", "verbose")}
        config = RunConfig(args.command, getattr(args, "graph", None) or getattr(args, "input", None),
                           getattr(args, "format", None), args.seed, caps, slow,
                           "text" if args.text else "json", options)
        if args.command == "verify-girth5":
            code, result, verdicts = cmd_verify_girth5(args, config)
        elif args.command == "certify":
            code, result, verdicts = cmd_certify(args, config)
        else:
            code, result, verdicts, owned = cmd_census(args, config, out)
            if result is None:
                return code
            if owned:
                out = owned
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = envelope(config, result, verdicts,
                       time.perf_counter() - start if args.timing else None)
    out.write(_text_view(payload) if args.text else json.dumps(payload, indent=2) + "\n")
    out.flush()
    if args.command == "census" and args.output:
        out.close()
    return code

