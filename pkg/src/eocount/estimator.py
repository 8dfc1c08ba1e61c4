"""General-graph estimates of the Eulerian orientation count: the spanning
-tree/Gaussian closed form, cumulant corrections of order one and two, and the
classical sandwich bounds from central binomial coefficients.

All floating computation is mpmath at a caller-chosen precision (>= 128 bits);
the Gaussian covariance is the inverse of L + wJ, whose edge-difference
covariances do not depend on w (any w > 0 gives the same estimates).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath

from .errors import DomainError, SizeLimitError
from .expansion import log_cos_coeffs
from .graphs import Graph, cheeger_constant, laplacian, spanning_tree_count
from .cumulants import double_factorial

DEFAULT_BITS = 256
KAPPA2_MAX_K = 6
KAPPA2_MAX_EDGE_PAIRS = 10**6


# ---------------------------------------------------------------------------
# linear algebra

def exact_inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over exact rationals; raises on singular input.

    Intended as a small-n oracle (n <= 12) against the floating route.
    """
    n = len(matrix)
    if n > 12:
        raise SizeLimitError("exact inverse capped at n=12")
    a = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DomainError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def default_w(g: Graph) -> Fraction:
    """2 d / n, the shift under which the estimator's analysis inverts the
    matrix; any positive w is equivalent for the results."""
    return Fraction(2 * g.max_degree(), g.n)


def covariance_sigma(g: Graph, w=None, bits: int = DEFAULT_BITS):
    """(Sigma, norm) with Sigma = (L + w J)^(-1) and norm = ||Sigma||_inf.

    The infinity norm feeds the estimate's validity diagnostics (the cumulant
    bounds assume it is at most 1/2).
    """
    if not g.is_connected():
        raise DomainError("covariance needs a connected graph (L + wJ singular)")
    wf = default_w(g) if w is None else Fraction(w)
    if wf <= 0:
        raise DomainError("w must be positive")
    with mpmath.workprec(bits):
        n = g.n
        L = laplacian(g)
        wm = mpmath.mpf(wf.numerator) / mpmath.mpf(wf.denominator)
        A = mpmath.matrix(n)
        for i in range(n):
            for j in range(n):
                A[i, j] = L[i][j] + wm
        sigma = A**-1
        norm = max(sum(abs(sigma[i, j]) for j in range(n)) for i in range(n))
        return sigma, norm


def edge_difference_cov(sigma, e: tuple[int, int], f: tuple[int, int]):
    """Cov(X_j - X_k, X_s - X_t) = sigma_js - sigma_jt - sigma_ks + sigma_kt."""
    j, k = e
    s, t = f
    return sigma[j, s] - sigma[j, t] - sigma[k, s] + sigma[k, t]


# ---------------------------------------------------------------------------
# sandwich bounds

def schrijver_bounds(g: Graph) -> tuple[Fraction, int]:
    """(lower, B) with lower = prod C(d_i, d_i/2) / 2^|E| (also the Pauling
    estimate) and upper = sqrt(B), B = prod C(d_i, d_i/2) kept exact."""
    if not all(d % 2 == 0 for d in g.degrees):
        raise DomainError("bounds need all degrees even")
    B = 1
    for d in g.degrees:
        B *= comb(d, d // 2)
    return Fraction(B, 2 ** g.edge_count), B


# ---------------------------------------------------------------------------
# first-order closed form

def eo_hat_log(g: Graph, bits: int = DEFAULT_BITS):
    """log of the closed-form estimate
    2^|E| / sqrt(tau) * (2/pi)^((n-1)/2) * exp(-1/4 sum (1/d_j + 1/d_k)^2)."""
    if not g.is_connected():
        raise DomainError("estimate needs a connected graph")
    if not all(d % 2 == 0 for d in g.degrees):
        raise DomainError("estimate needs all degrees even")
    tau = spanning_tree_count(g)
    corr = degree_sum_reference(g)
    with mpmath.workprec(bits):
        val = g.edge_count * mpmath.log(2)
        val -= mpmath.log(tau) / 2
        val += (g.n - 1) / mpmath.mpf(2) * mpmath.log(2 / mpmath.pi)
        val += mpmath.mpf(corr.numerator) / mpmath.mpf(corr.denominator)
        return val


def degree_sum_reference(g: Graph) -> Fraction:
    """-1/4 sum_{jk in E} (1/d_j + 1/d_k)^2, the first-order exponent."""
    total = Fraction(0)
    for u, v in g.edges:
        total += (Fraction(1, g.degrees[u]) + Fraction(1, g.degrees[v])) ** 2
    return -total / 4


# ---------------------------------------------------------------------------
# cumulant corrections

def kappa1_f(g: Graph, sigma, K: int, bits: int = DEFAULT_BITS):
    """(kappa_1, reference): the exact first cumulant
    sum_{l=2}^K c_{2l} (2l-1)!! sum_{jk} sigma_{jk,jk}^l, and the degree-sum
    value it approaches for well-conditioned graphs."""
    if K < 2:
        raise DomainError("K must be >= 2")
    cs = log_cos_coeffs(K)
    with mpmath.workprec(bits):
        total = mpmath.mpf(0)
        for e in sorted(g.edges):
            s = edge_difference_cov(sigma, e, e)
            sp = s * s
            for l in range(2, K + 1):
                c = cs[l - 1]
                total += (mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                          * double_factorial(2 * l - 1) * sp)
                sp *= s
        return total, degree_sum_reference(g)


def _bivariate_even_moment(p: int, q: int, suu, svv, suv):
    """E[U^p V^q] for centered jointly Gaussian (U, V), p + q even."""
    total = mpmath.mpf(0)
    jstart = (p % 2)
    for j in range(jstart, min(p, q) + 1, 2):
        term = (comb(p, j) * comb(q, j) * mpmath.factorial(j)
                * double_factorial(p - j - 1) * double_factorial(q - j - 1))
        total += (term * suu ** ((p - j) // 2) * svv ** ((q - j) // 2)
                  * suv ** j)
    return total


def kappa2_f(g: Graph, sigma, K: int, bits: int = DEFAULT_BITS):
    """Second cumulant of f_K: sum over ordered edge pairs and orders of
    c_{2l1} c_{2l2} [E[X_e^{2l1} X_f^{2l2}] - E[X_e^{2l1}] E[X_f^{2l2}]]."""
    if K < 2:
        raise DomainError("K must be >= 2")
    if K > KAPPA2_MAX_K:
        raise SizeLimitError(f"kappa2 capped at K={KAPPA2_MAX_K}")
    edges = sorted(g.edges)
    if len(edges) ** 2 > KAPPA2_MAX_EDGE_PAIRS:
        raise SizeLimitError("edge-pair cap exceeded")
    cs = log_cos_coeffs(K)
    with mpmath.workprec(bits):
        cvals = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in cs]
        var = [edge_difference_cov(sigma, e, e) for e in edges]
        # univariate moments E[X_e^{2l}]
        mom = [[double_factorial(2 * l - 1) * var[i] ** l for l in range(2, K + 1)]
               for i in range(len(edges))]
        total = mpmath.mpf(0)
        for i in range(len(edges)):
            for j in range(i, len(edges)):
                suv = edge_difference_cov(sigma, edges[i], edges[j])
                pair = mpmath.mpf(0)
                for l1 in range(2, K + 1):
                    for l2 in range(2, K + 1):
                        joint = _bivariate_even_moment(2 * l1, 2 * l2,
                                                       var[i], var[j], suv)
                        disc = joint - mom[i][l1 - 2] * mom[j][l2 - 2]
                        pair += cvals[l1 - 1] * cvals[l2 - 1] * disc
                total += pair if i == j else 2 * pair
        return total


# ---------------------------------------------------------------------------
# reports

@dataclass
class EstimateReport:
    graph_id: str
    n: int
    edge_count: int
    w: Fraction
    bits: int
    sigma_norm_inf: object          # mpf
    in_hypothesis: bool             # ||Sigma_w||_inf <= 1/2
    log_eo_hat: object              # mpf
    kappa: dict[int, object]        # r -> mpf correction
    log_corrected: dict[int, object]  # r -> mpf, cumulative through order r
    schrijver_lower: Fraction
    schrijver_upper_sq: int         # exact square of the upper bound
    pauling: Fraction
    cheeger: Fraction | None
    cheeger_ratio: Fraction | None  # h(G)/d

    def log_estimate(self, M: int | None = None):
        if M is None or M == max(self.log_corrected, default=0):
            if self.log_corrected:
                return self.log_corrected[max(self.log_corrected)]
            return self.log_eo_hat
        if M == 0:
            return self.log_eo_hat
        return self.log_corrected[M]

    def to_json(self) -> dict:
        def fstr(x):
            return mpmath.nstr(x, 30) if x is not None else None

        return {
            "graph": self.graph_id,
            "n": self.n,
            "edges": self.edge_count,
            "w": str(self.w),
            "precision_bits": self.bits,
            "sigma_norm_inf": fstr(self.sigma_norm_inf),
            "in_hypothesis": self.in_hypothesis,
            "log_eo_hat": fstr(self.log_eo_hat),
            "eo_hat": fstr(mpmath.exp(self.log_eo_hat)),
            "kappa": {str(r): fstr(v) for r, v in self.kappa.items()},
            "log_corrected": {str(r): fstr(v) for r, v in self.log_corrected.items()},
            "corrected": {str(r): fstr(mpmath.exp(v))
                          for r, v in self.log_corrected.items()},
            "schrijver_lower": fstr(mpmath.mpf(self.schrijver_lower.numerator)
                                    / self.schrijver_lower.denominator),
            "schrijver_upper": fstr(mpmath.sqrt(mpmath.mpf(self.schrijver_upper_sq))),
            "pauling": fstr(mpmath.mpf(self.pauling.numerator) / self.pauling.denominator),
            "cheeger": str(self.cheeger) if self.cheeger is not None else None,
            "cheeger_over_max_degree": (str(self.cheeger_ratio)
                                        if self.cheeger_ratio is not None else None),
        }


def eo_estimate(g: Graph, M: int = 2, K: int = 4, w=None,
                bits: int = DEFAULT_BITS, graph_id: str = "") -> EstimateReport:
    """Estimate with up to two cumulant corrections.

    M = 0 reports just the closed form; M = 1 replaces its exponent with the
    exact kappa_1; M = 2 adds kappa_2/2.  Corrections beyond 2 cost
    |E|^r edge tuples and are out of scope here.
    """
    if M not in (0, 1, 2):
        raise DomainError("M must be 0, 1 or 2")
    if not g.is_connected():
        raise DomainError("estimate needs a connected graph")
    if not all(d % 2 == 0 for d in g.degrees):
        raise DomainError("estimate needs all degrees even")
    wf = default_w(g) if w is None else Fraction(w)
    lower, upper_sq = schrijver_bounds(g)
    try:
        h = cheeger_constant(g)
        ratio = h / g.max_degree()
    except SizeLimitError:
        h = None
        ratio = None
    sigma, norm = covariance_sigma(g, wf, bits)
    with mpmath.workprec(bits):
        tau = spanning_tree_count(g)
        base = (g.edge_count * mpmath.log(2) - mpmath.log(tau) / 2
                + (g.n - 1) / mpmath.mpf(2) * mpmath.log(2 / mpmath.pi))
        kappa: dict[int, object] = {}
        log_corr: dict[int, object] = {}
        if M >= 1:
            k1, _ref = kappa1_f(g, sigma, K, bits)
            kappa[1] = k1
            log_corr[1] = base + k1
        if M >= 2:
            k2 = kappa2_f(g, sigma, min(K, KAPPA2_MAX_K), bits)
            kappa[2] = k2
            log_corr[2] = base + kappa[1] + k2 / 2
        report = EstimateReport(
            graph_id=graph_id or f"graph(n={g.n}, m={g.edge_count})",
            n=g.n, edge_count=g.edge_count, w=wf, bits=bits,
            sigma_norm_inf=norm,
            in_hypothesis=bool(norm <= mpmath.mpf(1) / 2),
            log_eo_hat=eo_hat_log(g, bits),
            kappa=kappa, log_corrected=log_corr,
            schrijver_lower=lower, schrijver_upper_sq=upper_sq,
            pauling=lower, cheeger=h, cheeger_ratio=ratio,
        )
    return report
