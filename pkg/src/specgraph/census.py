"""Streaming census over graph6 input.

Graphs are filtered in stages so that the exact (and comparatively slow)
checks only run on graphs that survive cheap necessary conditions:

1. combinatorial: connectivity and number of valencies;
2. a loose eigenvalue count (grouping at 1e-6), which never exceeds the true
   number of distinct eigenvalues and so can only reject graphs that must fail
   ``d <= r + s`` or a ``d`` constraint;
3. the refined spectrum with its exact walk-rank cross-check;
4. the strong-graph verdict.
"""

from __future__ import annotations

import csv
import gzip
import io
import json
import shutil
import subprocess
from dataclasses import asdict, dataclass, field
from importlib import resources
from itertools import combinations
from multiprocessing import Pool
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

from .classify import NOT_STRONG, check_strong
from .graph import Graph, complement, connected_components, encode_graph6, parse_graph6, read_graph6_lines
from .spectral import (
    default_tolerances, eigendecompose, group_eigenvalues, refined_spectrum, spectrum,
)

KEY_DECIMALS = 9
LOOSE_GROUP_TOL = 1e-6
BUNDLED_MAX_N = 9


# ---------------------------------------------------------------------------
# input streams
# ---------------------------------------------------------------------------


def bundled_graph6(n: int) -> Iterator[str]:
    """All graphs on ``n`` vertices (n <= 9) from the packaged generator output."""
    if not 1 <= n <= BUNDLED_MAX_N:
        raise ValueError(f"bundled graph lists cover 1 <= n <= {BUNDLED_MAX_N}")
    ref = resources.files("specgraph") / "data" / f"graphs{n}.g6.gz"
    with ref.open("rb") as raw, gzip.open(raw, "rt", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield line


def exhaustive_graph6(max_n: int, min_n: int = 1, connected: bool = False) -> Iterator[str]:
    """All graphs with ``min_n <= n <= max_n`` vertices, one graph6 word each.

    Uses the bundled lists up to n = 9 and an external ``geng`` beyond that.
    ``connected=True`` drops disconnected graphs.
    """
    for n in range(min_n, max_n + 1):
        if n <= BUNDLED_MAX_N:
            words: Iterable[str] = bundled_graph6(n)
            if connected:
                words = (w for w in words if len(connected_components(parse_graph6(w))) == 1)
            yield from words
            continue
        geng = shutil.which("geng") or shutil.which("nauty-geng")
        if geng is None:
            raise FileNotFoundError(f"n={n} needs nauty's geng on PATH")
        args = [geng, "-q"] + (["-c"] if connected else []) + [str(n)]
        with subprocess.Popen(args, stdout=subprocess.PIPE, text=True) as proc:
            for line in proc.stdout:
                if line.strip():
                    yield line.strip()


# ---------------------------------------------------------------------------
# records and filters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FilterSpec:
    connected: bool | None = None
    r: int | None = None
    s: int | None = None
    t: int | None = None
    t_min: int | None = None
    strong: bool | None = None
    d: int | None = None

    def is_empty(self) -> bool:
        return all(v is None for v in asdict(self).values())


def _key(x: float) -> float:
    return round(x, KEY_DECIMALS) + 0.0


@dataclass(frozen=True)
class CensusRecord:
    graph6: str
    n: int
    e: int
    t: int
    d: int
    r: int
    s: int
    connected: bool
    strong: str
    spectrum_key: tuple[float, ...]
    mains_key: tuple[float, ...]
    plains_key: tuple[tuple[float, int], ...]

    @property
    def index(self) -> tuple[int, int]:
        return (self.r, self.s)

    @property
    def refined_key(self) -> tuple:
        return (self.r, self.s, self.mains_key, self.plains_key)

    def to_dict(self) -> dict:
        return {
            "graph6": self.graph6, "n": self.n, "e": self.e, "t": self.t, "d": self.d,
            "index": [self.r, self.s], "connected": self.connected, "strong": self.strong,
            "spectrum_key": list(self.spectrum_key),
            "refined_key": {
                "mains": list(self.mains_key),
                "plains": [[v, p] for v, p in self.plains_key],
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CensusRecord":
        return cls(
            graph6=data["graph6"], n=data["n"], e=data["e"], t=data["t"], d=data["d"],
            r=data["index"][0], s=data["index"][1], connected=data["connected"],
            strong=data["strong"], spectrum_key=tuple(data["spectrum_key"]),
            mains_key=tuple(data["refined_key"]["mains"]),
            plains_key=tuple((v, p) for v, p in data["refined_key"]["plains"]),
        )


CSV_FIELDS = ("graph6", "n", "e", "t", "d", "r", "s", "connected", "strong", "spectrum_key", "mains", "plains")


def _csv_row(rec: CensusRecord) -> list:
    return [
        rec.graph6, rec.n, rec.e, rec.t, rec.d, rec.r, rec.s, int(rec.connected), rec.strong,
        " ".join(repr(v) for v in rec.spectrum_key),
        " ".join(repr(v) for v in rec.mains_key),
        " ".join(f"{v!r}^{p}" for v, p in rec.plains_key),
    ]


def write_records(records: Iterable[CensusRecord], out: TextIO, fmt: str = "jsonl") -> int:
    count = 0
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for rec in records:
            writer.writerow(_csv_row(rec))
            count += 1
    elif fmt == "jsonl":
        for rec in records:
            out.write(json.dumps(rec.to_dict()) + "\n")
            count += 1
    else:
        raise ValueError(f"unknown record format {fmt!r}")
    return count


def analyze_graph(g: Graph, word: str | None = None) -> CensusRecord:
    """Full census record for one graph (n >= 2 for the strong verdict)."""
    word = encode_graph6(g) if word is None else word
    report = eigendecompose(g)
    rs = refined_spectrum(g, report=report)
    return _make_record(g, word, report, rs, _strong_verdict(g))


def _strong_verdict(g: Graph) -> str:
    # one vertex: S = 0, trivially in the span
    return check_strong(g).verdict if g.n >= 2 else "trivial"


def _make_record(g, word, report, rs, strong) -> CensusRecord:
    eig = [grp.value for grp in report.groups for _ in range(grp.mult)]
    return CensusRecord(
        graph6=word, n=g.n, e=g.num_edges, t=len(set(g.degrees)), d=len(report.groups),
        r=rs.r, s=rs.s, connected=len(connected_components(g)) == 1, strong=strong,
        spectrum_key=tuple(_key(x) for x in eig),
        mains_key=tuple(_key(x) for x in rs.mains),
        plains_key=tuple((_key(v), p) for v, p in rs.plains),
    )


def evaluate(word: str, filt: FilterSpec) -> CensusRecord | None:
    """Record for ``word`` if it passes ``filt``, else None (raises on bad input)."""
    g = parse_graph6(word)
    if g.n < 1:
        raise ValueError("census graphs need at least one vertex")
    t = len(set(g.degrees))
    if filt.t is not None and t != filt.t:
        return None
    if filt.t_min is not None and t < filt.t_min:
        return None
    if filt.connected is not None:
        if (len(connected_components(g)) == 1) != filt.connected:
            return None
    if filt.d is not None or (filt.r is not None and filt.s is not None):
        w = np.linalg.eigvalsh(g.adjacency.astype(float))
        d_low = len(group_eigenvalues(w, LOOSE_GROUP_TOL))
        if filt.d is not None and d_low > filt.d:
            return None
        if filt.r is not None and filt.s is not None and d_low > filt.r + filt.s:
            return None
    report = eigendecompose(g)
    if filt.d is not None and len(report.groups) != filt.d:
        return None
    rs = refined_spectrum(g, report=report)
    if filt.r is not None and rs.r != filt.r:
        return None
    if filt.s is not None and rs.s != filt.s:
        return None
    strong = _strong_verdict(g)
    if filt.strong is not None and (strong != NOT_STRONG) != filt.strong:
        return None
    return _make_record(g, word, report, rs, strong)


@dataclass
class CensusSummary:
    lines: int = 0
    passed: int = 0
    malformed: list[tuple[int, str]] = field(default_factory=list)
    by_n: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "lines": self.lines,
            "passed": self.passed,
            "malformed": [{"line": ln, "error": msg} for ln, msg in self.malformed],
            "passed_by_n": {str(k): v for k, v in sorted(self.by_n.items())},
        }


def _work(item: tuple[int, str, FilterSpec]):
    lineno, word, filt = item
    try:
        return lineno, evaluate(word, filt), None
    except ValueError as exc:
        return lineno, None, str(exc)


def run_census(
    lines: Iterable[str | bytes],
    filt: FilterSpec | None = None,
    *,
    jobs: int = 1,
    summary: CensusSummary | None = None,
    chunksize: int = 256,
) -> Iterator[CensusRecord]:
    """Yield one record per passing graph, in input order.

    Malformed lines are recorded in ``summary.malformed`` and skipped.
    """
    filt = filt or FilterSpec()
    summary = summary if summary is not None else CensusSummary()
    items = ((lineno, word, filt) for lineno, word in read_graph6_lines(lines))
    if jobs > 1:
        pool = Pool(jobs)
        results = pool.imap(_work, items, chunksize=chunksize)
    else:
        pool = None
        results = map(_work, items)
    try:
        for lineno, rec, err in results:
            summary.lines += 1
            if err is not None:
                summary.malformed.append((lineno, err))
                continue
            if rec is not None:
                summary.passed += 1
                summary.by_n[rec.n] = summary.by_n.get(rec.n, 0) + 1
                yield rec
    finally:
        if pool is not None:
            pool.terminate()


def counterexample_filter(c: int) -> FilterSpec:
    return FilterSpec(connected=True, r=2, s=2, t_min=c, strong=False)


def find_counterexamples(
    stream: Iterable, c: int, *, jobs: int = 1, summary: CensusSummary | None = None
) -> list[CensusRecord]:
    """Connected graphs with index (2,2), at least ``c`` valencies and not strong.

    ``stream`` may hold graph6 lines or already computed records.
    """
    if c < 1:
        raise ValueError("C must be a positive integer")
    first, items = _peek(stream)
    if isinstance(first, CensusRecord):
        return [
            rec for rec in items
            if rec.connected and rec.index == (2, 2) and rec.t >= c and rec.strong == NOT_STRONG
        ]
    return list(run_census(items, counterexample_filter(c), jobs=jobs, summary=summary))


def _peek(items):
    it = iter(items)
    try:
        first = next(it)
    except StopIteration:
        return None, iter(())
    def chain():
        yield first
        yield from it
    return first, chain()


def conjecture_report(
    stream: Iterable[str], c: int, *, jobs: int = 1
) -> dict:
    """Deterministic evidence report for the valency-count conjecture at constant ``c``."""
    summary = CensusSummary()
    found = find_counterexamples(stream, c, jobs=jobs, summary=summary)
    return {
        "C": c,
        "graphs_read": summary.lines,
        "malformed": summary.to_dict()["malformed"],
        "counterexamples": [rec.to_dict() for rec in found],
        "counterexample_count": len(found),
        "counterexamples_by_n": summary.to_dict()["passed_by_n"],
        "supported": not found,
    }


# ---------------------------------------------------------------------------
# refined-cospectral pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RefinedPair:
    first: CensusRecord
    second: CensusRecord
    complements_cospectral: bool

    def to_dict(self) -> dict:
        return {
            "first": self.first.graph6,
            "second": self.second.graph6,
            "index": [self.first.r, self.first.s],
            "complements_cospectral": self.complements_cospectral,
        }


def _same_groups(a: Sequence[tuple[float, int]], b: Sequence[tuple[float, int]], tol: float) -> bool:
    if len(a) != len(b):
        return False
    scale = max([1.0] + [abs(v) for v, _ in a])
    return all(m1 == m2 and abs(v1 - v2) <= tol * scale for (v1, m1), (v2, m2) in zip(a, b))


def find_refined_cospectral_pairs(
    records: Iterable[CensusRecord], tol: float | None = None
) -> list[RefinedPair]:
    """Pairs of distinct graphs with equal refined spectra, annotated with
    whether their complements are cospectral.

    Records are bucketed by their rounded refined key; every bucket collision
    is re-verified against freshly computed spectra at the grouping tolerance.
    """
    tol = default_tolerances().group if tol is None else tol
    buckets: dict[tuple, list[CensusRecord]] = {}
    for rec in records:
        buckets.setdefault(rec.refined_key, []).append(rec)

    refined_cache: dict[str, tuple] = {}
    comp_cache: dict[str, tuple] = {}

    def refined(word: str):
        if word not in refined_cache:
            rs = refined_spectrum(parse_graph6(word))
            refined_cache[word] = (tuple((m, 1) for m in rs.mains), rs.plains)
        return refined_cache[word]

    def comp_spectrum(word: str):
        if word not in comp_cache:
            comp_cache[word] = spectrum(complement(parse_graph6(word)), tol).groups
        return comp_cache[word]

    pairs = []
    for group in buckets.values():
        if len(group) < 2:
            continue
        for a, b in combinations(group, 2):
            if a.graph6 == b.graph6 or a.n != b.n:
                continue
            (ma, pa), (mb, pb) = refined(a.graph6), refined(b.graph6)
            if not (_same_groups(ma, mb, tol) and _same_groups(pa, pb, tol)):
                continue
            same = _same_groups(comp_spectrum(a.graph6), comp_spectrum(b.graph6), tol)
            pairs.append(RefinedPair(a, b, same))
    return pairs


def records_from_jsonl(text: TextIO | str) -> list[CensusRecord]:
    fh = io.StringIO(text) if isinstance(text, str) else text
    return [CensusRecord.from_dict(json.loads(line)) for line in fh if line.strip()]
