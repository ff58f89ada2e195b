"""Registry of checkable statements about main and plain eigenvalues.

Each claim maps an id to the statement it checks and a routine.  Exhaustive
claims consume a stream of graph6 words; example claims ignore it.  Every
routine returns a :class:`ClaimResult` carrying counterexample certificates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .classify import (
    FAMILY_NONE, NOT_STRONG, TWO_SEIDEL, alpha_vector, check_equitable, check_rowlinson,
    check_srg, check_strong, check_two_main_equation, classify_disconnected,
    predicted_deleted_srg_quotient, regular_multipartite_shape, srg_vertex_partition,
    strong_main_eigenvalues, verify_family_certificate,
)
from .exact import minimal_polynomial_degree
from .graph import (
    Graph, complement, complete_graph, cone, connected_components, cycle_graph, delete_vertex,
    disjoint_union, empty_graph, encode_graph6, parse_graph6, petersen_graph, rook_graph,
    rook_row, seidel_switch, star_graph, triangular_graph, valency_partition,
)
from .spectral import (
    eigendecompose, main_count_exact, predicted_complement_plains, refined_from_report,
    refined_spectrum, seidel_spectrum,
)

MAX_STORED_FAILURES = 50


@dataclass
class ClaimResult:
    claim: str
    statement: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    failure_count: int = 0
    flagged: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def fail(self, **certificate) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append(certificate)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "statement": self.statement,
            "passed": self.passed,
            "checked": self.checked,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "flagged": self.flagged,
            "details": self.details,
        }


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    routine: Callable[[Iterable[str], ClaimResult], None]
    exhaustive: bool = True

    def run(self, words: Iterable[str] = ()) -> ClaimResult:
        result = ClaimResult(self.id, self.statement)
        self.routine(words, result)
        return result


CLAIMS: dict[str, Claim] = {}


def claim(id: str, statement: str, exhaustive: bool = True):
    def register(fn):
        CLAIMS[id] = Claim(id, statement, fn, exhaustive)
        return fn
    return register


def _graphs(words: Iterable[str]) -> Iterator[tuple[str, Graph]]:
    for w in words:
        g = parse_graph6(w)
        if g.n >= 1:
            yield w, g


def _connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def random_graph_corpus(count: int, max_n: int, seed: int) -> list[str]:
    """Seeded Erdos-Renyi graphs with 1 <= n <= max_n and random edge density."""
    rng = np.random.default_rng(seed)
    words = []
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        p = float(rng.uniform(0.05, 0.95))
        upper = np.triu(rng.random((n, n)) < p, 1)
        words.append(encode_graph6(Graph(upper | upper.T, _trusted=True)))
    return words


# ---------------------------------------------------------------------------
# exhaustive claims
# ---------------------------------------------------------------------------


@claim("hagos", "the number of main eigenvalues (by j-projection) equals the rank of the walk matrix")
def _hagos(words, res):
    for w, g in _graphs(words):
        res.checked += 1
        numeric = refined_from_report(eigendecompose(g)).r
        exact = main_count_exact(g)
        if numeric != exact:
            res.fail(graph6=w, projection=numeric, walk_rank=exact)


@claim("one-main-regular", "a graph has exactly one main eigenvalue iff it is regular")
def _one_main(words, res):
    for w, g in _graphs(words):
        res.checked += 1
        if (main_count_exact(g) == 1) != g.is_regular():
            res.fail(graph6=w, mains=main_count_exact(g), regular=g.is_regular())


@claim("bireg-equitable", "a biregular graph has two main eigenvalues iff its valency partition is equitable")
def _bireg(words, res):
    for w, g in _graphs(words):
        vp = valency_partition(g)
        if vp.t != 2:
            continue
        res.checked += 1
        mains = main_count_exact(g)
        equitable = check_equitable(g, vp.classes).equitable
        fitted = check_two_main_equation(g) is not None
        if (mains == 2) != equitable or fitted != (mains == 2):
            res.fail(graph6=w, mains=mains, equitable=equitable, degree_equation=fitted)


@claim("bounds", "connected graphs satisfy r <= d, s >= l and d <= r + s <= l + d")
def _bounds(words, res):
    for w, g in _graphs(words):
        if not _connected(g):
            continue
        res.checked += 1
        report = eigendecompose(g)
        rs = refined_spectrum(g, report=report)
        d = len(report.groups)
        l = sum(1 for grp in report.groups if grp.mult >= 2)
        r, s = rs.index
        if not (r <= d and s >= l and d <= r + s <= l + d):
            res.fail(graph6=w, r=r, s=s, d=d, l=l)


def _plains_match(a, b, tol) -> bool:
    if len(a) != len(b):
        return False
    return all(p == q and abs(x - y) <= tol for (x, p), (y, q) in zip(a, b))


@claim("complement-index", "the complement keeps (r, s) and maps each plain eigenvalue pi to -pi-1")
def _complement(words, res, tol: float = 1e-8):
    for w, g in _graphs(words):
        res.checked += 1
        rs = refined_spectrum(g)
        rc = refined_spectrum(complement(g))
        predicted = predicted_complement_plains(rs)
        if rc.index != rs.index or not _plains_match(sorted(rc.plains, reverse=True), predicted, tol):
            res.fail(graph6=w, index=list(rs.index), complement_index=list(rc.index),
                     predicted=[list(x) for x in predicted], observed=[list(x) for x in rc.plains])


@claim("cone-main", "the cone over a graph with r main eigenvalues has at most r + 1")
def _cone(words, res):
    for w, g in _graphs(words):
        res.checked += 1
        r, rc = main_count_exact(g), main_count_exact(cone(g))
        if rc > r + 1:
            res.fail(graph6=w, mains=r, cone_mains=rc)


@claim("perron", "in a connected graph the spectral radius is simple and main")
def _perron(words, res):
    for w, g in _graphs(words):
        if not _connected(g):
            continue
        res.checked += 1
        top = eigendecompose(g).groups[0]
        if top.mult != 1 or top.jproj <= 1e-7:
            res.fail(graph6=w, mult=top.mult, jproj=top.jproj)


@claim("srg-index", "a connected graph has one main and at most two plain eigenvalues iff it is regular with at most three eigenvalues")
def _srg_index(words, res):
    for w, g in _graphs(words):
        if not _connected(g):
            continue
        res.checked += 1
        r, s = refined_spectrum(g).index
        lhs = r == 1 and s <= 2
        rhs = g.is_regular() and minimal_polynomial_degree(g) <= 3
        if lhs != rhs:
            res.fail(graph6=w, index=[r, s], regular=g.is_regular())
        elif lhs and g.n >= 2 and check_srg(g) is None and g.num_edges != g.n * (g.n - 1) // 2:
            res.fail(graph6=w, reason="regular with <= 3 eigenvalues but neither SRG nor complete")


@claim("complete-bipartite", "a connected graph has two main and one plain eigenvalue iff it is a nonregular complete bipartite graph")
def _complete_bipartite(words, res):
    for w, g in _graphs(words):
        if not _connected(g):
            continue
        res.checked += 1
        index = refined_spectrum(g).index
        shape = None
        comps = connected_components(complement(g))
        if len(comps) == 2 and g.num_edges == len(comps[0]) * len(comps[1]):
            shape = sorted(len(c) for c in comps)
        is_kmn = shape is not None and shape[0] != shape[1]
        if (index == (2, 1)) != is_kmn:
            res.fail(graph6=w, index=list(index), complete_bipartite=shape)


@claim("disconnected-22", "every disconnected graph with index (2,2) lies in one of the four families")
def _disconnected(words, res):
    tally: dict[str, int] = {}
    for w, g in _graphs(words):
        if _connected(g):
            continue
        if refined_spectrum(g).index != (2, 2):
            continue
        res.checked += 1
        fam = classify_disconnected(g)
        tally[fam.tag] = tally.get(fam.tag, 0) + 1
        if fam.tag == FAMILY_NONE or not verify_family_certificate(g, fam):
            res.fail(graph6=w, family=fam.tag, certificate=_jsonable(fam.certificate))
    res.details["families"] = dict(sorted(tally.items()))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def three_eigenvalue_candidates(words: Iterable[str]) -> Iterator[tuple[str, Graph]]:
    """Connected graphs with exactly three distinct eigenvalues.

    A loose numerical count (never above the true count) prunes first; the
    survivors are settled by the exact minimal-polynomial degree.
    """
    from .census import LOOSE_GROUP_TOL
    from .spectral import group_eigenvalues

    for w, g in _graphs(words):
        w_ = np.linalg.eigvalsh(g.adjacency.astype(float))
        if len(group_eigenvalues(w_, LOOSE_GROUP_TOL)) > 3:
            continue
        if not _connected(g):
            continue
        if minimal_polynomial_degree(g) == 3:
            yield w, g


@claim("rowlinson", "a connected graph with three eigenvalues has two main eigenvalues iff it is strongly biregular")
def _rowlinson(words, res):
    tally = {"one_main": 0, "two_main": 0, "three_main": 0}
    for w, g in three_eigenvalue_candidates(words):
        res.checked += 1
        rep = check_rowlinson(g)
        alpha = alpha_vector(g)
        key = {1: "one_main", 2: "two_main"}.get(rep.main_count, "three_main")
        tally[key] += 1
        if not rep.consistent or alpha is None:
            res.fail(graph6=w, mains=rep.main_count, strongly_biregular=rep.strongly_biregular)
        if rep.main_count == 3:
            res.flagged.append({"graph6": w, "note": "three main eigenvalues (at least three valencies)"})
    res.details["mains"] = tally


@claim("strong-4ev", "a non-regular strong graph has at most four eigenvalues: two simple mains fixed by (theta0, theta1, m0, m1, n, e) and two plains")
def _strong_4ev(words, res, tol: float = 1e-9):
    for w, g in _graphs(words):
        if g.n < 2 or g.is_regular():
            continue
        verdict = check_strong(g)
        if verdict.verdict == NOT_STRONG:
            continue
        res.checked += 1
        report = eigendecompose(g)
        rs = refined_spectrum(g, report=report)
        d = len(report.groups)
        mults = {round(grp.value, 9): grp.mult for grp in report.groups}
        simple = all(mults.get(round(mu, 9)) == 1 for mu in rs.mains)
        (l0, m0), (l1, m1) = seidel_spectrum(g).groups
        t0, t1 = (-1 - l0) / 2, (-1 - l1) / 2
        mu = strong_main_eigenvalues(t0, t1, m0, m1, g.n, g.num_edges)
        close = rs.r == 2 and all(abs(a - b) <= tol * max(1.0, abs(b)) for a, b in zip(mu, rs.mains))
        if verdict.verdict != TWO_SEIDEL or d > 4 or main_count_exact(g) != 2 or not simple or not close:
            res.fail(graph6=w, verdict=verdict.verdict, d=d, mains=list(rs.mains),
                     predicted=list(mu), simple=simple)
            continue
        if d < 4:
            # a plain eigenvalue disappears exactly when its Seidel eigenvalue is simple
            missing = [t for t, m in ((t0, m0), (t1, m1)) if m == 1]
            explained = len(missing) == 4 - d
            res.flagged.append({"graph6": w, "d": d, "seidel_mults": [m0, m1], "explained": explained})
            if not explained:
                res.fail(graph6=w, d=d, seidel_mults=[m0, m1], reason="unexplained degeneracy")


@claim("seidel-strong", "S^2 lies in span{S, I, J} iff the graph is strongly regular or S has two eigenvalues")
def _seidel_strong(words, res):
    tally: dict[str, int] = {}
    for w, g in _graphs(words):
        if g.n < 2:
            continue
        res.checked += 1
        # check_strong raises if the span test and the two criteria disagree
        v = check_strong(g).verdict
        tally[v] = tally.get(v, 0) + 1
    res.details["verdicts"] = dict(sorted(tally.items()))


# ---------------------------------------------------------------------------
# example claims
# ---------------------------------------------------------------------------


def _close(values, expected, tol=1e-9) -> bool:
    return len(values) == len(expected) and all(abs(a - b) <= tol for a, b in zip(values, expected))


@claim("switched-rook", "switching L(K_{6,6}) on a Delsarte clique gives spectrum 7+-sqrt(129), [4]^9, [-2]^25 with index (2,2)", exhaustive=False)
def _switched_rook(words, res):
    rook = rook_graph(6)
    params = check_srg(rook)
    res.checked += 1
    if params is None or params.as_tuple() != (36, 10, 4, 2):
        res.fail(step="srg", params=params and list(params.as_tuple()))
    g = seidel_switch(rook, rook_row(6, 0))
    report = eigendecompose(g)
    rs = refined_spectrum(g, report=report)
    root = 129 ** 0.5
    groups = [(grp.value, grp.mult) for grp in report.groups]
    expected = [(7 + root, 1), (4.0, 9), (-2.0, 25), (7 - root, 1)]
    if [m for _, m in groups] != [m for _, m in expected] or not _close([v for v, _ in groups], [v for v, _ in expected]):
        res.fail(step="spectrum", groups=groups)
    if rs.index != (2, 2) or not _close(rs.mains, [7 + root, 7 - root]):
        res.fail(step="refined", refined=str(rs))
    vp = valency_partition(g)
    if vp.t != 2 or not check_equitable(g, vp.classes).equitable:
        res.fail(step="equitable", valencies=list(vp.valencies))
    if check_strong(g).verdict != NOT_STRONG:
        res.fail(step="strong", verdict=check_strong(g).verdict)
    res.details["refined"] = rs.to_dict()


@claim("cospectral-pair", "K_{1,4} + K_1 and C_4 + 2K_1 are cospectral with refined spectra (3,1;2,0,-2;[0]^3) and (2,2;2,0;[0]^3,[-2]^1)", exhaustive=False)
def _cospectral_pair(words, res):
    g = disjoint_union(star_graph(4), empty_graph(1))
    h = disjoint_union(cycle_graph(4), empty_graph(2))
    rg, rh = refined_spectrum(g), refined_spectrum(h)
    res.checked += 2
    if rg.index != (3, 1) or not _close(rg.mains, [2, 0, -2]) or [p for _, p in rg.plains] != [3] or not _close([v for v, _ in rg.plains], [0]):
        res.fail(graph="K_{1,4}+K_1", refined=str(rg))
    if rh.index != (2, 2) or not _close(rh.mains, [2, 0]) or [p for _, p in rh.plains] != [3, 1] or not _close([v for v, _ in rh.plains], [0, -2]):
        res.fail(graph="C_4+2K_1", refined=str(rh))
    sg, sh = eigendecompose(g).summary, eigendecompose(h).summary
    if [m for _, m in sg.groups] != [m for _, m in sh.groups] or not _close(sg.values, sh.values):
        res.fail(reason="not cospectral")


SRG_EXAMPLES = {
    "petersen": petersen_graph,
    "rook3": lambda: rook_graph(3),
    "rook4": lambda: rook_graph(4),
    "rook6": lambda: rook_graph(6),
    "triangular5": lambda: triangular_graph(5),
    "triangular6": lambda: triangular_graph(6),
    "C5": lambda: cycle_graph(5),
    "petersen-complement": lambda: complement(petersen_graph()),
}


@claim("deleted-srg", "deleting a vertex of a connected SRG leaves an equitable biregular graph with index (2,2)", exhaustive=False)
def _deleted_srg(words, res):
    for name, build in SRG_EXAMPLES.items():
        srg = build()
        params = check_srg(srg)
        res.checked += 1
        q = check_equitable(srg, srg_vertex_partition(srg, 0))
        if params is None or not q.equitable or q.to_list() != [list(r) for r in predicted_deleted_srg_quotient(params)]:
            res.fail(graph=name, step="sigma-quotient", quotient=q.to_list())
            continue
        g = delete_vertex(srg, 0)
        rs = refined_spectrum(g)
        vp = valency_partition(g)
        qv = check_equitable(g, vp.classes)
        quotient_ev = sorted(np.linalg.eigvals(qv.as_float()).real, reverse=True)
        if vp.t != 2 or not qv.equitable or rs.index != (2, 2) or not _close(rs.mains, quotient_ev):
            res.fail(graph=name, step="deleted", index=list(rs.index), mains=list(rs.mains),
                     quotient_eigenvalues=quotient_ev, equitable=qv.equitable)
        res.details[name] = {"srg": list(params.as_tuple()), "refined": str(rs)}


def run_claim(claim_id: str, words: Iterable[str] = ()) -> ClaimResult:
    if claim_id not in CLAIMS:
        raise KeyError(claim_id)
    return CLAIMS[claim_id].run(words)
