from fractions import Fraction

import mpmath
import pytest

from eocount.cumulants import double_factorial
from eocount.errors import DomainError
from eocount.estimator import (covariance_sigma, default_w,
                               degree_sum_reference, edge_difference_cov,
                               eo_estimate, eo_hat_log, exact_inverse,
                               kappa1_f, kappa2_f, schrijver_bounds)
from eocount.exact import eo_count_bruteforce, rt_count
from eocount.graphs import (Graph, circulant_graph, complete_graph,
                            cycle_graph, laplacian, octahedron_graph)

TIGHT = mpmath.mpf(2) ** -200


def test_exact_inverse_oracle():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = exact_inverse(m)
    assert inv == [[1, -1], [-1, 2]]
    with pytest.raises(DomainError):
        exact_inverse([[0, 0], [0, 0]])


def test_covariance_matches_exact_inverse():
    with mpmath.workprec(256):
        for g, w in ((complete_graph(3), default_w(complete_graph(3))),
                     (cycle_graph(4), Fraction(1))):
            L = laplacian(g)
            M = [[Fraction(L[i][j]) + w for j in range(g.n)] for i in range(g.n)]
            inv = exact_inverse(M)
            sigma, norm = covariance_sigma(g, w)
            for i in range(g.n):
                for j in range(g.n):
                    expect = mpmath.mpf(inv[i][j].numerator) / inv[i][j].denominator
                    assert abs(sigma[i, j] - expect) < TIGHT
            exact_norm = max(sum(abs(x) for x in row) for row in inv)
            assert abs(norm - mpmath.mpf(exact_norm.numerator) / exact_norm.denominator) < TIGHT


def test_covariance_complete_graph_symmetry():
    g = complete_graph(5)
    with mpmath.workprec(256):
        sigma, _ = covariance_sigma(g, Fraction(2))
        diag = {mpmath.nstr(sigma[i, i], 25) for i in range(5)}
        off = {mpmath.nstr(sigma[i, j], 25) for i in range(5) for j in range(5) if i != j}
        assert len(diag) == 1 and len(off) == 1


def test_covariance_requires_connected():
    with pytest.raises(DomainError):
        covariance_sigma(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_edge_covariance_w_invariance():
    g = complete_graph(4)
    with mpmath.workprec(256):
        s1, _ = covariance_sigma(g, Fraction(1))
        s2, _ = covariance_sigma(g, default_w(g))
        for e in ((0, 1), (1, 2)):
            for f in ((0, 1), (2, 3), (0, 2)):
                assert abs(edge_difference_cov(s1, e, f)
                           - edge_difference_cov(s2, e, f)) < TIGHT


def test_eo_hat_examples():
    ratio5 = mpmath.exp(eo_hat_log(complete_graph(5))) / 24
    assert 0.5 < ratio5 < 2
    ratio7 = mpmath.exp(eo_hat_log(complete_graph(7))) / 2640
    assert abs(mpmath.log(ratio7)) < abs(mpmath.log(ratio5))
    # C_4: sparse, recorded only; just require a finite positive value
    assert mpmath.isfinite(eo_hat_log(cycle_graph(4)))
    with pytest.raises(DomainError):
        eo_hat_log(complete_graph(4))


def test_kappa1_single_edge_formula():
    # one edge: kappa_1 = sum_l c_2l (2l-1)!! sigma_ee^l; check K=2 term shape
    g = Graph.from_edges(2, [(0, 1)])
    with mpmath.workprec(256):
        sigma, _ = covariance_sigma(g, Fraction(1))
        see = edge_difference_cov(sigma, (0, 1), (0, 1))
        k1, ref = kappa1_f(g, sigma, 2)
        assert abs(k1 - Fraction(-1, 12) * 3 * see**2) < TIGHT
        assert ref == degree_sum_reference(g) == -Fraction(1)


def test_kappa1_w_invariance():
    g = complete_graph(6)
    with mpmath.workprec(256):
        s1, _ = covariance_sigma(g, Fraction(1))
        s2, _ = covariance_sigma(g, Fraction(3))
        a, _ = kappa1_f(g, s1, 4)
        b, _ = kappa1_f(g, s2, 4)
        assert abs(a - b) < TIGHT


def test_kappa1_consistency_envelope():
    # kappa_1 approaches -1/4 sum (1/d_j + 1/d_k)^2 within the covariance
    # -norm envelope, K capped at delta/2
    for n in range(4, 16):
        g = complete_graph(n)
        sigma, norm = covariance_sigma(g)
        K = max(2, min(4, g.min_degree() // 2))
        k1, ref = kappa1_f(g, sigma, K)
        d, delta = g.max_degree(), g.min_degree()
        envelope = (mpmath.mpf(n) / delta * norm
                    + mpmath.mpf(n) * d / delta**2 * norm**2)
        gap = abs(k1 - mpmath.mpf(ref.numerator) / ref.denominator)
        assert gap <= 2 * envelope, (n, float(gap), float(envelope))


def test_kappa2_disconnected_edges_contribute_zero():
    # independent edge differences: joint part cancels exactly
    suu = mpmath.mpf(1) / 3
    from eocount.estimator import _bivariate_even_moment
    joint = _bivariate_even_moment(4, 6, suu, suu, mpmath.mpf(0))
    assert abs(joint - (3 * suu**2) * (15 * suu**3)) < TIGHT


def test_kappa2_diagonal_matches_univariate():
    # e = f: kappa(X^2l1, X^2l2) = E X^(2l1+2l2) - E X^2l1 E X^2l2
    from eocount.estimator import _bivariate_even_moment
    with mpmath.workprec(256):
        s = mpmath.mpf(2) / 5
        for l1 in (2, 3):
            for l2 in (2, 4):
                joint = _bivariate_even_moment(2 * l1, 2 * l2, s, s, s)
                expect = double_factorial(2 * (l1 + l2) - 1) * s ** (l1 + l2)
                assert abs(joint - expect) < TIGHT


def test_kappa2_within_second_order_bound():
    for n in (5, 7, 9):
        g = complete_graph(n)
        sigma, norm = covariance_sigma(g)
        k2 = kappa2_f(g, sigma, 4)
        d, delta, r = g.max_degree(), g.min_degree(), 2
        bound = (mpmath.mpf(n) / (2 * delta) * (mpmath.mpf(5 * d) / delta) ** r
                 * norm ** (r - 1) * double_factorial(4 * r - 1))
        assert abs(k2) <= bound


def test_schrijver_bounds_bracket_exact_counts():
    for g in (complete_graph(5), complete_graph(7), cycle_graph(4),
              cycle_graph(6), octahedron_graph(), circulant_graph(8, (1, 2))):
        eo = eo_count_bruteforce(g)
        lower, upper_sq = schrijver_bounds(g)
        assert lower <= eo
        assert eo * eo <= upper_sq
    with pytest.raises(DomainError):
        schrijver_bounds(complete_graph(4))


def test_estimate_report_k5():
    rep = eo_estimate(complete_graph(5), M=2, K=4, graph_id="k5")
    assert rep.schrijver_lower < 24
    assert 24 * 24 < rep.schrijver_upper_sq
    assert rep.in_hypothesis
    assert rep.cheeger_ratio == Fraction(3, 4)
    js = rep.to_json()
    assert js["graph"] == "k5"
    assert set(js["kappa"]) == {"1", "2"}


def test_estimate_octahedron_vs_bruteforce():
    g = octahedron_graph()
    exact = eo_count_bruteforce(g)
    rep = eo_estimate(g, M=1, K=2, graph_id="octahedron")
    est = mpmath.exp(rep.log_estimate(1))
    assert exact == 38
    # moderate agreement at this size; the value is recorded in the report
    assert 0.25 < float(est) / exact < 4


def test_estimate_dense_family_convergence():
    prev = None
    for n in (5, 7, 9, 11):
        rep = eo_estimate(complete_graph(n), M=2, K=4)
        dist = abs(mpmath.log(mpmath.mpf(rt_count(n))) - rep.log_estimate(2))
        if prev is not None:
            assert dist <= prev
        prev = dist


def test_estimate_m1_improves_on_closed_form_for_k7():
    rep = eo_estimate(complete_graph(7), M=1, K=2)
    exact = mpmath.log(mpmath.mpf(2640))
    assert abs(exact - rep.log_estimate(1)) < abs(exact - rep.log_eo_hat)


def test_estimate_w_invariance():
    g = circulant_graph(8, (1, 2))
    a = eo_estimate(g, M=2, K=4, w=Fraction(1))
    b = eo_estimate(g, M=2, K=4, w=default_w(g))
    for r in (1, 2):
        rel = abs(a.log_corrected[r] - b.log_corrected[r]) / abs(a.log_corrected[r])
        assert rel < 1e-9


def test_estimate_preconditions():
    with pytest.raises(DomainError):
        eo_estimate(complete_graph(4))
    with pytest.raises(DomainError):
        eo_estimate(Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(DomainError):
        eo_estimate(complete_graph(5), M=3)
