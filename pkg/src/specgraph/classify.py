"""Structural detectors: equitable partitions, strongly regular / strong /
strongly biregular graphs, and the taxonomy of disconnected graphs with two
main and two plain eigenvalues."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import minimal_polynomial_degree, minimal_polynomial_degree_of, span_membership
from .graph import (
    Graph, complement, connected_components, induced_subgraph, is_connected,
    valency_partition,
)
from .spectral import (
    eigendecompose, main_count_exact, refined_spectrum, seidel_matrix,
)


class ClassificationError(ValueError):
    pass


class VerificationError(ArithmeticError):
    """A structural identity expected to hold failed numerically."""


# ---------------------------------------------------------------------------
# quotient matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    classes: tuple[tuple[int, ...], ...]
    b: tuple[tuple[Fraction, ...], ...]
    equitable: bool

    def as_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.b])

    def to_list(self) -> list[list]:
        return [[int(x) if x.denominator == 1 else str(x) for x in row] for row in self.b]


def check_equitable(g: Graph, partition: Sequence[Sequence[int]]) -> QuotientMatrix:
    classes = tuple(tuple(int(v) for v in c) for c in partition)
    flat = [v for c in classes for v in c]
    if any(not c for c in classes) or sorted(flat) != list(range(g.n)):
        raise ClassificationError("partition must consist of nonempty classes covering every vertex once")
    adj = g.adjacency.astype(np.int64)
    # counts[x, j] = neighbours of x in class j
    member = np.zeros((g.n, len(classes)), dtype=np.int64)
    for j, c in enumerate(classes):
        member[list(c), j] = 1
    counts = adj @ member
    rows, equitable = [], True
    for c in classes:
        block = counts[list(c)]
        rows.append(tuple(Fraction(int(s), len(c)) for s in block.sum(axis=0)))
        if np.any(block != block[0]):
            equitable = False
    return QuotientMatrix(classes, tuple(rows), equitable)


def check_two_main_equation(g: Graph) -> tuple[Fraction, Fraction] | None:
    """Rational (a, b) with A d = a d + b j for the degree vector d, or None.

    Defined only for non-regular graphs; for those a solution exists exactly
    when the graph has two main eigenvalues.
    """
    if g.n < 1:
        return None
    d = list(g.degrees)
    ad = [int(x) for x in g.adjacency.astype(np.int64) @ np.array(d, dtype=np.int64)]
    i = 0
    j = next((k for k in range(g.n) if d[k] != d[i]), None)
    if j is None:
        return None
    a = Fraction(ad[i] - ad[j], d[i] - d[j])
    b = ad[i] - a * d[i]
    if all(a * dk + b == adk for dk, adk in zip(d, ad)):
        return a, b
    return None


# ---------------------------------------------------------------------------
# strongly regular graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    a: int
    c: int

    def feasible(self) -> bool:
        n, k, a, c = self.n, self.k, self.a, self.c
        return 0 <= a < k < n and 0 <= c <= k and k * (k - a - 1) == (n - k - 1) * c

    def eigenvalues(self) -> tuple[float, float]:
        """The two nontrivial eigenvalues theta1 > theta2."""
        disc = (self.a - self.c) ** 2 + 4 * (self.k - self.c)
        root = np.sqrt(disc)
        return ((self.a - self.c + root) / 2, (self.a - self.c - root) / 2)

    def eigen_key(self) -> tuple[int, int]:
        # theta1, theta2 are the roots of x^2 - (a-c) x - (k-c)
        return (self.a - self.c, self.k - self.c)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.a, self.c)


def check_srg(g: Graph) -> SrgParams | None:
    """Strongly regular parameters, or None.

    Complete and edgeless graphs are rejected: one of the two pair types is
    absent, so a or c is undefined.
    """
    n = g.n
    if n < 2 or not g.is_regular():
        return None
    k = g.degrees[0]
    if k == 0 or k == n - 1:
        return None
    adj = g.adjacency.astype(np.int64)
    a2 = adj @ adj
    off = ~np.eye(n, dtype=bool)
    adjacent = (adj == 1)
    non_adjacent = off & (adj == 0)
    a_vals = np.unique(a2[adjacent])
    c_vals = np.unique(a2[non_adjacent])
    if len(a_vals) != 1 or len(c_vals) != 1:
        return None
    params = SrgParams(n, k, int(a_vals[0]), int(c_vals[0]))
    # A^2 = kI + aA + c(J - I - A), checked entrywise
    expected = params.k * np.eye(n, dtype=np.int64) + params.a * adj + params.c * (1 - np.eye(n, dtype=np.int64) - adj)
    if not np.array_equal(a2, expected):
        return None
    if not params.feasible():
        raise VerificationError(f"SRG identity holds but parameters {params} fail feasibility")
    return params


def predicted_deleted_srg_quotient(p: SrgParams) -> tuple[tuple[int, ...], ...]:
    """Quotient of the partition {u}, N(u), rest in a strongly regular graph."""
    if not p.feasible():
        raise ClassificationError(f"infeasible SRG parameters {p}")
    n, k, a, c = p.as_tuple()
    return ((0, k, 0), (1, a, k - a - 1), (0, c, k - c))


def srg_vertex_partition(g: Graph, u: int) -> list[tuple[int, ...]]:
    nbrs = g.neighbors(u)
    rest = tuple(v for v in range(g.n) if v != u and v not in set(nbrs))
    return [(u,), nbrs, rest]


# ---------------------------------------------------------------------------
# strong graphs
# ---------------------------------------------------------------------------

STRONGLY_REGULAR = "strongly-regular"
TWO_SEIDEL = "two-seidel-eigenvalues"
BOTH = "both"
NOT_STRONG = "not-strong"


@dataclass(frozen=True)
class StrongClassification:
    verdict: str
    srg: SrgParams | None = None
    # (alpha, beta, gamma) with S^2 = alpha S + beta I + gamma J
    seidel_coefficients: tuple[Fraction, ...] | None = None
    seidel_degree: int = 0

    @property
    def is_strong(self) -> bool:
        return self.verdict != NOT_STRONG

    def to_dict(self) -> dict:
        witness: dict = {}
        if self.srg is not None:
            witness["srg"] = list(self.srg.as_tuple())
        if self.seidel_coefficients is not None:
            witness["seidel_span"] = [str(x) for x in self.seidel_coefficients]
        return {"verdict": self.verdict, "witness": witness or None}


def check_strong(g: Graph) -> StrongClassification:
    """Strong-graph verdict from two exact tests.

    ``S^2`` in span{S, I, J} is solved over the rationals; "two Seidel
    eigenvalues" is certified by the exact minimal-polynomial degree of S.
    """
    if g.n < 2:
        raise ClassificationError("strongness needs at least two vertices")
    n = g.n
    s = seidel_matrix(g)
    eye = np.eye(n, dtype=np.int64)
    ones = np.ones((n, n), dtype=np.int64)
    coeffs = span_membership(s @ s, [s, eye, ones])
    srg = check_srg(g)
    seidel_deg = minimal_polynomial_degree_of(s, symmetric=True)
    two = seidel_deg == 2
    if srg is not None and two:
        verdict = BOTH
    elif srg is not None:
        verdict = STRONGLY_REGULAR
    elif two:
        verdict = TWO_SEIDEL
    else:
        verdict = NOT_STRONG
    if (verdict != NOT_STRONG) != (coeffs is not None):
        raise VerificationError(
            f"span test ({coeffs is not None}) disagrees with SRG/two-eigenvalue criteria ({verdict})"
        )
    return StrongClassification(verdict, srg, coeffs, seidel_deg)


def check_strongly_biregular(g: Graph) -> bool:
    if not is_connected(g):
        raise ClassificationError("strong biregularity is defined here for connected graphs")
    return valency_partition(g).t == 2 and minimal_polynomial_degree(g) == 3


def strong_main_eigenvalues(
    theta0: float, theta1: float, m0: int, m1: int, n: int, e: int
) -> tuple[float, float]:
    """Main eigenvalues of a non-regular strong graph.

    Seidel eigenvalues -1-2*theta_i with multiplicities m_i leave theta_i with
    multiplicity m_i - 1; the two mains then follow from trace(A) = 0 and
    trace(A^2) = 2e.
    """
    if m0 < 1 or m1 < 1 or m0 + m1 != n:
        raise ValueError("multiplicities must be positive and sum to n")
    total = -(m0 - 1) * theta0 - (m1 - 1) * theta1
    squares = 2 * e - (m0 - 1) * theta0 ** 2 - (m1 - 1) * theta1 ** 2
    disc = 2 * squares - total ** 2
    if disc < -1e-9 * max(1.0, abs(squares)):
        raise ValueError(f"inconsistent strong-graph data (discriminant {disc})")
    root = np.sqrt(max(disc, 0.0))
    return ((total + root) / 2, (total - root) / 2)


# ---------------------------------------------------------------------------
# three-eigenvalue graphs
# ---------------------------------------------------------------------------


def _three_eigenvalues(g: Graph) -> tuple[float, float, float] | None:
    if minimal_polynomial_degree(g) != 3:
        return None
    groups = eigendecompose(g).groups
    if len(groups) != 3:
        raise VerificationError(
            f"exact count of 3 distinct eigenvalues but {len(groups)} numerical groups"
        )
    return tuple(grp.value for grp in groups)


def alpha_vector(g: Graph, atol: float = 1e-8) -> np.ndarray | None:
    """Positive vector alpha with (A - t1 I)(A - t2 I) = alpha alpha^T.

    Returns None unless the graph has exactly three distinct eigenvalues
    t0 > t1 > t2.  alpha is an eigenvector of A for t0.
    """
    if not is_connected(g):
        raise ClassificationError("alpha vector needs a connected graph")
    ev = _three_eigenvalues(g)
    if ev is None:
        return None
    t0, t1, t2 = ev
    d = np.array(g.degrees, dtype=float)
    sq = d + t1 * t2
    if np.any(sq <= 0):
        raise VerificationError("d_i + t1*t2 must be positive")
    alpha = np.sqrt(sq)
    a = g.adjacency.astype(float)
    eye = np.eye(g.n)
    lhs = (a - t1 * eye) @ (a - t2 * eye)
    if not np.allclose(lhs, np.outer(alpha, alpha), rtol=0, atol=atol):
        raise VerificationError("(A - t1 I)(A - t2 I) != alpha alpha^T")
    if not np.allclose(a @ alpha, t0 * alpha, rtol=0, atol=atol):
        raise VerificationError("alpha is not a Perron eigenvector")
    return alpha


@dataclass(frozen=True)
class RowlinsonReport:
    main_count: int
    strongly_biregular: bool

    @property
    def consistent(self) -> bool:
        return (self.main_count == 2) == self.strongly_biregular


def check_rowlinson(g: Graph) -> RowlinsonReport:
    """Two main eigenvalues iff strongly biregular, for 3-eigenvalue graphs."""
    if not is_connected(g):
        raise ClassificationError("needs a connected graph")
    if minimal_polynomial_degree(g) != 3:
        raise ClassificationError("needs exactly three distinct eigenvalues")
    return RowlinsonReport(main_count_exact(g), check_strongly_biregular(g))


# ---------------------------------------------------------------------------
# disconnected graphs with index (2, 2)
# ---------------------------------------------------------------------------

FAMILY_CLIQUES = "cliques-i"
FAMILY_MULTIPARTITE = "isolated+multipartite-ii"
FAMILY_ISOLATED_SRG = "isolated+srg-iii"
FAMILY_TWO_SRG = "two-srg-iv"
FAMILY_NONE = "none"


@dataclass(frozen=True)
class DisconnectedFamily:
    tag: str
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"tag": self.tag, "certificate": self.certificate}


def _is_clique(g: Graph) -> bool:
    return g.num_edges == g.n * (g.n - 1) // 2


def regular_multipartite_shape(g: Graph) -> tuple[int, int] | None:
    """(parts, part size) when g is a regular complete multipartite graph with >= 2 parts."""
    if g.n < 2:
        return None
    comps = connected_components(complement(g))
    sizes = {len(c) for c in comps}
    if len(comps) < 2 or len(sizes) != 1:
        return None
    co = complement(g)
    if not all(_is_clique(induced_subgraph(co, c)) for c in comps):
        return None
    return len(comps), sizes.pop()


def classify_disconnected(g: Graph) -> DisconnectedFamily:
    comps = connected_components(g)
    if len(comps) < 2:
        raise ClassificationError("graph is connected")
    index = refined_spectrum(g).index
    if index != (2, 2):
        raise ClassificationError(f"main-plain index is {index}, not (2, 2)")
    parts = [induced_subgraph(g, c) for c in comps]

    # (i) cliques: two distinct sizes, one of them occurring exactly once and
    # the other t-1 >= 2 times
    if all(_is_clique(h) for h in parts):
        counts = Counter(h.n for h in parts)
        t = len(parts)
        if t >= 3 and len(counts) == 2 and sorted(counts.values()) == [1, t - 1]:
            single = next(size for size, cnt in counts.items() if cnt == 1)
            repeated = next(size for size, cnt in counts.items() if cnt == t - 1)
            return DisconnectedFamily(FAMILY_CLIQUES, {
                "components": comps,
                "single": single, "repeated": repeated, "copies": t - 1,
                "sizes": sorted((h.n for h in parts), reverse=True),
            })

    isolated = [h for h in parts if h.n == 1]
    big = [h for h in parts if h.n > 1]

    # (ii) isolated vertices + one regular complete multipartite graph
    if isolated and len(big) == 1:
        shape = regular_multipartite_shape(big[0])
        if shape is not None:
            return DisconnectedFamily(FAMILY_MULTIPARTITE, {
                "components": comps,
                "isolated": len(isolated), "parts": shape[0], "part_size": shape[1],
            })

    # (iii) one isolated vertex + a strongly regular graph
    if len(isolated) == 1 and len(big) == 1:
        p = check_srg(big[0])
        if p is not None:
            return DisconnectedFamily(FAMILY_ISOLATED_SRG, {
                "components": comps, "srg": list(p.as_tuple()),
            })

    # (iv) two SRGs with different valencies and equal nontrivial eigenvalues
    if len(parts) == 2 and not isolated:
        p, q = check_srg(parts[0]), check_srg(parts[1])
        if p is not None and q is not None and p.k != q.k and p.eigen_key() == q.eigen_key():
            return DisconnectedFamily(FAMILY_TWO_SRG, {
                "components": comps,
                "srgs": [list(p.as_tuple()), list(q.as_tuple())],
                "eigenvalues": [round(x, 12) for x in p.eigenvalues()],
            })

    return DisconnectedFamily(FAMILY_NONE, {
        "components": comps,
        "summary": [{"n": h.n, "edges": h.num_edges, "degrees": sorted(set(h.degrees))} for h in parts],
    })


def verify_family_certificate(g: Graph, family: DisconnectedFamily) -> bool:
    """Re-derive the family from the certificate's component vertex sets."""
    cert = family.certificate
    comps = [tuple(c) for c in cert.get("components", ())]
    if sorted(v for c in comps for v in c) != list(range(g.n)):
        return False
    if sorted(comps) != sorted(connected_components(g)):
        return False
    parts = [induced_subgraph(g, c) for c in comps]
    if family.tag == FAMILY_CLIQUES:
        return (all(_is_clique(h) for h in parts)
                and sorted((h.n for h in parts), reverse=True) == cert["sizes"]
                and sorted(Counter(cert["sizes"]).values()) == [1, len(parts) - 1])
    if family.tag == FAMILY_MULTIPARTITE:
        big = [h for h in parts if h.n > 1]
        return (len(big) == 1 and len(parts) - 1 == cert["isolated"]
                and regular_multipartite_shape(big[0]) == (cert["parts"], cert["part_size"]))
    if family.tag == FAMILY_ISOLATED_SRG:
        big = [h for h in parts if h.n > 1]
        return (len(parts) == 2 and len(big) == 1 and check_srg(big[0]) is not None
                and list(check_srg(big[0]).as_tuple()) == cert["srg"])
    if family.tag == FAMILY_TWO_SRG:
        ps = [check_srg(h) for h in parts]
        return (len(parts) == 2 and None not in ps
                and [list(p.as_tuple()) for p in ps] == cert["srgs"]
                and ps[0].k != ps[1].k and ps[0].eigen_key() == ps[1].eigen_key())
    return False


def classification_record(g: Graph) -> dict:
    """JSON-ready structural summary used by the CLI."""
    vp = valency_partition(g)
    q = check_equitable(g, vp.classes) if g.n else None
    srg = check_srg(g) if g.n >= 2 else None
    strong = check_strong(g) if g.n >= 2 else None
    family = None
    if g.n >= 2 and not is_connected(g) and refined_spectrum(g).index == (2, 2):
        family = classify_disconnected(g).to_dict()
    return {
        "srg": list(srg.as_tuple()) if srg else None,
        "strong": strong.to_dict() if strong else None,
        "equitable": q.equitable if q else None,
        "quotient": q.to_list() if q else None,
        "family": family,
    }
