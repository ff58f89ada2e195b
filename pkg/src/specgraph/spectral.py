"""Numerical spectra, the refined (main/plain) spectrum and the Seidel spectrum."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exact import integer_rank, walk_matrix
from .graph import Graph

DEFAULT_TOL_GROUP = 1e-9
DEFAULT_TOL_MAIN = 1e-7
TOLERANCE_ENV = "SPECGRAPH_TOLERANCE"


class SpectralMismatchError(ArithmeticError):
    """Projection-based main count disagrees with the exact walk-matrix rank."""

    def __init__(self, numeric: int, exact: int):
        super().__init__(
            f"numerical/exact disagreement: {numeric} main eigenvalues by projection, "
            f"{exact} by walk-matrix rank"
        )
        self.numeric = numeric
        self.exact = exact


@dataclass(frozen=True)
class Tolerances:
    group: float = DEFAULT_TOL_GROUP
    main: float = DEFAULT_TOL_MAIN

    @classmethod
    def parse(cls, text: str) -> "Tolerances":
        """Parse ``"group=1e-9,main=1e-7"``; a bare number sets ``group``."""
        group, main = DEFAULT_TOL_GROUP, DEFAULT_TOL_MAIN
        for item in filter(None, (p.strip() for p in text.split(","))):
            key, sep, value = item.partition("=")
            if not sep:
                key, value = "group", key
            key = key.strip().lower()
            if key == "group":
                group = float(value)
            elif key == "main":
                main = float(value)
            else:
                raise ValueError(f"unknown tolerance key {key!r}")
        if group <= 0 or main <= 0:
            raise ValueError("tolerances must be positive")
        return cls(group, main)


@lru_cache(maxsize=8)
def _tolerances_from(text: str | None) -> Tolerances:
    return Tolerances.parse(text) if text else Tolerances()


def default_tolerances() -> Tolerances:
    return _tolerances_from(os.environ.get(TOLERANCE_ENV))


ZERO_SNAP = 1e-12


def _round_sig(x: float, digits: int = 12) -> float:
    # below ZERO_SNAP the digits are rounding noise and would break golden output
    if abs(x) < ZERO_SNAP:
        return 0.0
    return float(f"{x:.{digits}g}")


@dataclass(frozen=True)
class SpectrumSummary:
    groups: tuple[tuple[float, int], ...]   # (eigenvalue, multiplicity), descending
    tol_used: float

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for v, _ in self.groups)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.groups)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "groups": [{"value": _round_sig(v), "mult": m} for v, m in self.groups],
        }


@dataclass(frozen=True)
class EigenGroup:
    value: float
    mult: int
    jproj: float      # norm of the projection of j onto the eigenspace


@dataclass(frozen=True)
class EigenReport:
    groups: tuple[EigenGroup, ...]
    tol_used: float

    @property
    def n(self) -> int:
        return sum(g.mult for g in self.groups)

    @property
    def summary(self) -> SpectrumSummary:
        return SpectrumSummary(tuple((g.value, g.mult) for g in self.groups), self.tol_used)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "groups": [
                {"value": _round_sig(g.value), "mult": g.mult, "jproj": _round_sig(g.jproj)}
                for g in self.groups
            ],
        }


def group_eigenvalues(values, tol: float) -> list[list[int]]:
    """Single-linkage grouping of eigenvalue indices, in descending value order.

    Consecutive sorted values are linked when their gap is at most
    ``tol * max(1, max|value|)``.
    """
    vals = np.asarray(values, dtype=float)
    if vals.size == 0:
        return []
    order = np.argsort(-vals, kind="stable")
    thresh = tol * max(1.0, float(np.max(np.abs(vals))))
    groups = [[int(order[0])]]
    for prev, cur in zip(order[:-1], order[1:]):
        if vals[prev] - vals[cur] <= thresh:
            groups[-1].append(int(cur))
        else:
            groups.append([int(cur)])
    return groups


def _symmetric_groups(matrix: np.ndarray, tol: float, with_vectors: bool):
    if with_vectors:
        w, v = np.linalg.eigh(matrix)
    else:
        w, v = np.linalg.eigvalsh(matrix), None
    return w, v, group_eigenvalues(w, tol)


def eigendecompose(g: Graph, tol: float | None = None) -> EigenReport:
    if g.n < 1:
        raise ValueError("spectral analysis needs at least one vertex")
    tol = default_tolerances().group if tol is None else tol
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    w, v, groups = _symmetric_groups(g.adjacency.astype(float), tol, True)
    # j-coordinates in the eigenbasis; per-group norm is basis independent
    coords = v.sum(axis=0)
    out = []
    for idx in groups:
        out.append(EigenGroup(
            value=float(np.mean(w[idx])),
            mult=len(idx),
            jproj=float(np.sqrt(np.sum(coords[idx] ** 2))),
        ))
    return EigenReport(tuple(out), tol)


def spectrum(g: Graph, tol: float | None = None) -> SpectrumSummary:
    if g.n < 1:
        raise ValueError("spectral analysis needs at least one vertex")
    tol = default_tolerances().group if tol is None else tol
    w, _, groups = _symmetric_groups(g.adjacency.astype(float), tol, False)
    return SpectrumSummary(tuple((float(np.mean(w[i])), len(i)) for i in groups), tol)


def main_count_exact(g: Graph) -> int:
    """Number of main eigenvalues as the rank of the walk matrix."""
    return integer_rank(walk_matrix(g))


@dataclass(frozen=True)
class RefinedSpectrum:
    mains: tuple[float, ...]                  # descending
    plains: tuple[tuple[float, int], ...]     # (eigenvalue, plain multiplicity), descending
    n: int

    @property
    def r(self) -> int:
        return len(self.mains)

    @property
    def s(self) -> int:
        return len(self.plains)

    @property
    def index(self) -> tuple[int, int]:
        return (self.r, self.s)

    def spectrum(self, tol: float = DEFAULT_TOL_GROUP) -> tuple[tuple[float, int], ...]:
        """Ordinary spectrum recovered from the refined one."""
        mults: dict[float, int] = {}
        for mu in self.mains:
            mults[mu] = mults.get(mu, 0) + 1
        for pi, p in self.plains:
            key = next((k for k in mults if abs(k - pi) <= tol * max(1.0, abs(k))), pi)
            mults[key] = mults.get(key, 0) + p
        return tuple(sorted(mults.items(), reverse=True))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mains": [_round_sig(m) for m in self.mains],
            "plains": [{"value": _round_sig(v), "pmult": p} for v, p in self.plains],
            "index": [self.r, self.s],
        }

    def __str__(self) -> str:
        mains = ", ".join(f"{m:.6g}" for m in self.mains)
        plains = ", ".join(f"[{v:.6g}]^{p}" for v, p in self.plains)
        return f"({self.r},{self.s}; {mains}; {plains})"


def refined_from_report(report: EigenReport, tol_main: float | None = None) -> RefinedSpectrum:
    """Refined spectrum from projections alone, without the exact cross-check."""
    tol_main = default_tolerances().main if tol_main is None else tol_main
    mains, plains = [], []
    for grp in report.groups:
        is_main = grp.jproj > tol_main
        if is_main:
            mains.append(grp.value)
        p = grp.mult - 1 if is_main else grp.mult
        if p:
            plains.append((grp.value, p))
    return RefinedSpectrum(tuple(mains), tuple(plains), report.n)


def refined_spectrum(
    g: Graph,
    tol_group: float | None = None,
    tol_main: float | None = None,
    *,
    report: EigenReport | None = None,
) -> RefinedSpectrum:
    """Main eigenvalues and plain eigenvalues (with plain multiplicities).

    The projection-based main count is always checked against the exact
    walk-matrix rank; a disagreement raises ``SpectralMismatchError``.
    """
    if report is None:
        report = eigendecompose(g, tol_group)
    rs = refined_from_report(report, tol_main)
    exact = main_count_exact(g)
    if rs.r != exact:
        raise SpectralMismatchError(rs.r, exact)
    return rs


def seidel_matrix(g: Graph) -> np.ndarray:
    """S = J - I - 2A as an int64 array."""
    a = g.adjacency.astype(np.int64)
    s = 1 - 2 * a
    np.fill_diagonal(s, 0)
    return s


def seidel_spectrum(g: Graph, tol: float | None = None) -> SpectrumSummary:
    if g.n < 1:
        raise ValueError("spectral analysis needs at least one vertex")
    tol = default_tolerances().group if tol is None else tol
    w, _, groups = _symmetric_groups(seidel_matrix(g).astype(float), tol, False)
    return SpectrumSummary(tuple((float(np.mean(w[i])), len(i)) for i in groups), tol)


def predicted_complement_plains(rs: RefinedSpectrum) -> tuple[tuple[float, int], ...]:
    """Plain eigenvalues of the complement: each pi becomes -pi-1."""
    return tuple(sorted(((-v - 1.0, p) for v, p in rs.plains), reverse=True))
