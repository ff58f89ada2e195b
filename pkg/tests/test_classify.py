from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from specgraph.classify import (
    BOTH, FAMILY_CLIQUES, FAMILY_ISOLATED_SRG, FAMILY_MULTIPARTITE, FAMILY_NONE, FAMILY_TWO_SRG,
    NOT_STRONG, STRONGLY_REGULAR, TWO_SEIDEL, ClassificationError, DisconnectedFamily, SrgParams,
    alpha_vector, check_equitable, check_rowlinson, check_srg, check_strong,
    check_strongly_biregular, check_two_main_equation, classify_disconnected,
    predicted_deleted_srg_quotient, srg_vertex_partition, strong_main_eigenvalues,
    verify_family_certificate,
)
from specgraph.graph import (
    cliques_union, complement, complete_graph, complete_multipartite, cycle_graph,
    delete_vertex, disjoint_union, empty_graph, path_graph, petersen_graph, rook_graph, rook_row,
    seidel_switch, star_graph, triangular_graph, valency_partition,
)
from specgraph.spectral import main_count_exact, refined_spectrum, seidel_spectrum, spectrum

from .test_graph import graphs, nx_graph


# --- equitable partitions --------------------------------------------------


def test_petersen_sigma_partition_quotient():
    g = petersen_graph()
    q = check_equitable(g, srg_vertex_partition(g, 0))
    assert q.equitable
    assert q.to_list() == [[0, 3, 0], [1, 0, 2], [0, 1, 2]]


def test_petersen_minus_u_valency_quotient():
    g = delete_vertex(petersen_graph(), 0)
    vp = valency_partition(g)
    q = check_equitable(g, vp.classes)
    assert q.equitable
    # classes come in descending valency (3 then 2); the listed form [[0,2],[1,2]]
    # orders them (N(u), rest), i.e. ascending valency
    asc = check_equitable(g, vp.classes[::-1])
    assert asc.to_list() == [[0, 2], [1, 2]]
    assert q.to_list() == [[2, 1], [2, 0]]


def test_path_equitability():
    # both end vertices see (0,1) and both middles see (1,1): P_4 is equitable
    p4 = path_graph(4)
    assert check_equitable(p4, valency_partition(p4).classes).equitable
    p5 = path_graph(5)
    assert not check_equitable(p5, valency_partition(p5).classes).equitable


def test_quotient_can_be_fractional():
    p5 = path_graph(5)
    q = check_equitable(p5, valency_partition(p5).classes)
    # degree-2 class {1,2,3}: 4 degree-2 neighbours in total over 3 vertices
    assert q.b[0][0] == Fraction(4, 3)
    assert "4/3" in q.to_list()[0]


def test_bad_partition_rejected():
    with pytest.raises(ClassificationError):
        check_equitable(path_graph(3), [(0, 1)])
    with pytest.raises(ClassificationError):
        check_equitable(path_graph(3), [(0, 1, 2), ()])


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10, min_n=1))
def test_quotient_eigenvalues_are_graph_eigenvalues(g):
    q = check_equitable(g, valency_partition(g).classes)
    if not q.equitable:
        return
    ev = [v for v, _ in spectrum(g).groups]
    for lam in np.linalg.eigvals(q.as_float()).real:
        assert min(abs(lam - v) for v in ev) < 1e-7


def test_two_main_equation_examples():
    assert check_two_main_equation(star_graph(2)) == (0, 2)
    assert check_two_main_equation(petersen_graph()) is None
    assert check_two_main_equation(disjoint_union(star_graph(4), empty_graph(1))) is None


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9, min_n=2))
def test_two_main_equation_iff_two_mains(g):
    if g.is_regular():
        return
    assert (check_two_main_equation(g) is not None) == (main_count_exact(g) == 2)


# --- strongly regular ------------------------------------------------------


def test_srg_examples():
    assert check_srg(petersen_graph()).as_tuple() == (10, 3, 0, 1)
    assert check_srg(rook_graph(6)).as_tuple() == (36, 10, 4, 2)
    assert check_srg(path_graph(4)) is None
    assert check_srg(complete_graph(5)) is None
    assert check_srg(empty_graph(4)) is None
    assert check_srg(cycle_graph(6)) is None


@pytest.mark.parametrize("g", [petersen_graph(), rook_graph(4), triangular_graph(6), cycle_graph(5)])
def test_srg_matches_networkx(g):
    h = nx_graph(g)
    assert nx.is_strongly_regular(h)
    p = check_srg(g)
    k = g.degrees[0]
    u, v = next(iter(h.edges()))
    assert p.k == k and p.a == len(set(h[u]) & set(h[v]))
    assert p.feasible()


def test_srg_params_eigenvalues():
    a, b = SrgParams(10, 3, 0, 1).eigenvalues()
    assert (a, b) == (1.0, -2.0)
    assert SrgParams(36, 10, 4, 2).eigen_key() == (2, 8)


def test_predicted_deleted_quotient():
    assert predicted_deleted_srg_quotient(SrgParams(10, 3, 0, 1)) == ((0, 3, 0), (1, 0, 2), (0, 1, 2))
    assert predicted_deleted_srg_quotient(SrgParams(36, 10, 4, 2)) == ((0, 10, 0), (1, 4, 5), (0, 2, 8))
    with pytest.raises(ClassificationError):
        predicted_deleted_srg_quotient(SrgParams(10, 3, 1, 1))


def test_petersen_minus_u_mains_from_quotient():
    g = delete_vertex(petersen_graph(), 0)
    rs = refined_spectrum(g)
    assert rs.index == (2, 2)
    r3 = 3 ** 0.5
    assert np.allclose(rs.mains, [1 + r3, 1 - r3], atol=1e-9)
    # characteristic polynomial of [[0,2],[1,2]] is x^2 - 2x - 2
    assert np.allclose(sorted(np.roots([1, -2, -2]), reverse=True), rs.mains, atol=1e-9)
    assert [p for _, p in rs.plains] == [4, 3]
    assert np.allclose([v for v, _ in rs.plains], [1, -2], atol=1e-9)


# --- strong graphs ---------------------------------------------------------


def test_strong_examples():
    assert check_strong(petersen_graph()).verdict == BOTH
    k12 = check_strong(star_graph(2))
    assert k12.verdict == TWO_SEIDEL and k12.srg is None
    switched = seidel_switch(rook_graph(6), rook_row(6, 0))
    assert check_strong(switched).verdict == NOT_STRONG
    groups = [(round(v, 9), m) for v, m in seidel_spectrum(switched).groups]
    assert groups == [(15, 1), (3, 25), (-9, 10)]
    assert check_strong(path_graph(4)).verdict == NOT_STRONG
    # C_5 has Seidel spectrum {sqrt5^2, 0, -sqrt5^2}
    assert check_strong(cycle_graph(5)).verdict == STRONGLY_REGULAR


def test_strongly_regular_but_three_seidel_values():
    # rook(3) is SRG(9,4,1,2) with Seidel spectrum {3^4, 0, -3^4}
    g = rook_graph(3)
    assert [(round(v, 9) + 0.0, m) for v, m in seidel_spectrum(g).groups] == [(3, 4), (0, 1), (-3, 4)]
    assert check_strong(g).verdict == STRONGLY_REGULAR


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9, min_n=2))
def test_strong_verdict_matches_definitions(g):
    v = check_strong(g)
    two = len(seidel_spectrum(g).groups) == 2
    srg = nx.is_strongly_regular(nx_graph(g)) and 0 < g.degrees[0] < g.n - 1 if g.is_regular() else False
    assert v.is_strong == (two or srg)


def test_strongly_biregular_examples():
    assert check_strongly_biregular(star_graph(4))
    assert not check_strongly_biregular(petersen_graph())
    assert not check_strongly_biregular(delete_vertex(petersen_graph(), 0))
    with pytest.raises(ClassificationError):
        check_strongly_biregular(empty_graph(2))


def test_strong_main_eigenvalues_example():
    mu = strong_main_eigenvalues(-1.5, 0.0, 1, 2, 3, 2)
    assert np.allclose(mu, [2 ** 0.5, -(2 ** 0.5)], atol=1e-12)
    with pytest.raises(ValueError):
        strong_main_eigenvalues(-1.5, 0.0, 1, 1, 3, 2)
    with pytest.raises(ValueError):
        strong_main_eigenvalues(-3.0, 0.0, 2, 1, 3, 0)


def test_alpha_vector_examples():
    assert np.allclose(alpha_vector(petersen_graph()), np.ones(10))
    assert np.allclose(alpha_vector(star_graph(2)), [2 ** 0.5, 1, 1])
    assert alpha_vector(delete_vertex(petersen_graph(), 0)) is None


def test_rowlinson_examples():
    rep = check_rowlinson(star_graph(4))
    assert rep.main_count == 2 and rep.strongly_biregular and rep.consistent
    rep = check_rowlinson(petersen_graph())
    assert rep.main_count == 1 and not rep.strongly_biregular and rep.consistent
    with pytest.raises(ClassificationError):
        check_rowlinson(path_graph(5))


# --- disconnected (2,2) ----------------------------------------------------


def _classified(g):
    fam = classify_disconnected(g)
    assert verify_family_certificate(g, fam)
    return fam


def test_family_i_cliques():
    fam = _classified(cliques_union([3, 3, 2]))
    assert fam.tag == FAMILY_CLIQUES
    assert fam.certificate["sizes"] == [3, 3, 2]


def test_family_ii_isolated_plus_multipartite():
    g = disjoint_union(empty_graph(2), complete_multipartite([2, 2, 2]))
    assert refined_spectrum(g).index == (2, 2)
    assert _classified(g).tag == FAMILY_MULTIPARTITE


def test_family_iii_isolated_plus_srg():
    g = disjoint_union(empty_graph(1), petersen_graph())
    fam = _classified(g)
    assert fam.tag == FAMILY_ISOLATED_SRG
    assert fam.certificate["srg"] == [10, 3, 0, 1]


def test_family_iv_two_srgs():
    # Petersen (theta = 1, -2) and L(K_5) share nontrivial eigenvalues
    g = disjoint_union(petersen_graph(), triangular_graph(5))
    assert refined_spectrum(g).index == (2, 2)
    fam = _classified(g)
    assert fam.tag == FAMILY_TWO_SRG
    assert fam.certificate["srgs"] == [[10, 3, 0, 1], [10, 6, 3, 4]]
    assert fam.certificate["eigenvalues"] == [1.0, -2.0]


def test_disconnected_preconditions():
    with pytest.raises(ClassificationError):
        classify_disconnected(petersen_graph())
    with pytest.raises(ClassificationError):
        classify_disconnected(disjoint_union(star_graph(4), empty_graph(1)))


def test_forged_certificates_fail():
    g = cliques_union([3, 3, 2])
    fam = classify_disconnected(g)
    forged = DisconnectedFamily(FAMILY_CLIQUES, {**fam.certificate, "sizes": [3, 2, 2]})
    assert not verify_family_certificate(g, forged)
    assert not verify_family_certificate(g, DisconnectedFamily(FAMILY_NONE, fam.certificate))
    assert not verify_family_certificate(g, DisconnectedFamily(FAMILY_TWO_SRG, fam.certificate))
