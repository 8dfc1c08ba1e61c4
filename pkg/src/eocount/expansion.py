"""Asymptotic expansions for the counts of regular tournaments (RT), Eulerian
digraphs (ED) and Eulerian oriented graphs (EOG).

Each family is the weighted orientation count of the complete graph with
per-pair factor a + b cos(theta_j - theta_k).  After the Gaussian reduction
the exponent correction is sum_{r<=M} kappa_r(f_K(X))/r! where X has i.i.d.
components of variance v/n and

    f_K(x) = sum_{l=2}^{K} e_{2l} sum_{j<k} (x_j - x_k)^{2l},

with e_{2l} the Taylor coefficients of log(a + b cos x).  Everything is exact:
moments of f_K^r are assembled from power-sum moments as truncated Laurent
series in 1/n, cumulants are extracted by a formal logarithm, and the closed
-form prefactors are attached symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Mapping

import mpmath

from .errors import DomainError, SizeLimitError
from .laurent import LaurentSeries
from .cumulants import moments_to_cumulants
from .powersums import monomial_order_bound, mu_moment_dict

MAX_ORDER = 12
MAX_K = 16

FAMILY_WEIGHTS = {
    "RT": (Fraction(0), Fraction(1)),
    "ED": (Fraction(1, 2), Fraction(1, 2)),
    "EOG": (Fraction(1, 3), Fraction(2, 3)),
}


@dataclass(frozen=True)
class WeightSpec:
    """Per-edge factor a + b cos(theta_j - theta_k); a + b = 1, b > 0."""

    a: Fraction
    b: Fraction
    family: str = "custom"

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a + b != 1 or b <= 0 or a < 0:
            raise DomainError("need a + b = 1, b > 0, a >= 0")

    @classmethod
    def for_family(cls, family: str) -> "WeightSpec":
        key = family.upper()
        if key not in FAMILY_WEIGHTS:
            raise DomainError(f"unknown family {family!r} (RT, ED or EOG)")
        a, b = FAMILY_WEIGHTS[key]
        return cls(a, b, key)


# ---------------------------------------------------------------------------
# log cos and log(a + b cos) Taylor coefficients

def bernoulli_numbers(m: int) -> list[Fraction]:
    """B_0..B_m by the defining recurrence (B_1 = -1/2)."""
    B = [Fraction(1)]
    for j in range(1, m + 1):
        acc = Fraction(0)
        for k in range(j):
            acc += comb(j + 1, k) * B[k]
        B.append(-acc / (j + 1))
    return B


def log_cos_coeffs(L: int) -> list[Fraction]:
    """c_2, c_4, ..., c_{2L}: Taylor coefficients of log cos x at 0, from the
    Bernoulli closed form c_{2l} = -4^l (4^l - 1) |B_{2l}| / (2l (2l)!)."""
    if L > 64:
        raise SizeLimitError("log cos coefficients capped at L=64")
    B = bernoulli_numbers(2 * L)
    return [-Fraction(4**l * (4**l - 1) * abs(B[2 * l]), 2 * l * factorial(2 * l))
            for l in range(1, L + 1)]


def log_cos_coeffs_series(L: int) -> list[Fraction]:
    """Same coefficients by a direct formal log of the cosine series; used to
    cross-validate the Bernoulli route."""
    return weight_log_coeffs(WeightSpec(Fraction(0), Fraction(1), "RT"), L)


def weight_log_coeffs(w: WeightSpec, L: int) -> list[Fraction]:
    """e_2, e_4, ..., e_{2L}: Taylor coefficients of log(a + b cos x) at 0
    (odd coefficients vanish).  Formal log of 1 + b(cos x - 1), exact."""
    a, b = w.a, w.b
    if a + b != 1:
        raise DomainError("representation requires value 1 at x = 0")
    # u[k] = coefficient of x^{2k} in b (cos x - 1)
    u = [Fraction(0)] * (L + 1)
    for k in range(1, L + 1):
        u[k] = b * Fraction((-1) ** k, factorial(2 * k))
    out = [Fraction(0)] * (L + 1)
    upow = u[:]
    sign = 1
    for j in range(1, L + 1):
        for k in range(j, L + 1):
            out[k] += Fraction(sign, j) * upow[k]
        new = [Fraction(0)] * (L + 1)
        for i in range(j, L + 1):
            if upow[i] == 0:
                continue
            for k in range(1, L + 1 - i):
                new[i + k] += upow[i] * u[k]
        upow = new
        sign = -sign
    return out[1:]


def family_variance(w: WeightSpec) -> Fraction:
    """Component variance of the reduced i.i.d. Gaussian, as a multiple of
    1/n: 1/(2 |e_2|) = 1/b."""
    return 1 / w.b


# ---------------------------------------------------------------------------
# f_K as a polynomial in power sums

def f_as_mu_polynomial(w: WeightSpec, K: int,
                       variance_scale: Fraction | None = None
                       ) -> dict[tuple[int, ...], LaurentSeries]:
    """f_K over the complete graph in the power-sum basis.

    Uses sum_{j<k}(x_j-x_k)^{2l} = (1/2) sum_t (-1)^t C(2l,t) mu_t mu_{2l-t}
    with mu_0 replaced by the literal n (carried in the coefficient series).
    ``variance_scale`` v rescales x -> sqrt(v) x so that downstream moments
    can assume component variance exactly 1/n.
    """
    if not 2 <= K <= MAX_K:
        raise DomainError(f"K must be in 2..{MAX_K}")
    v = Fraction(1) if variance_scale is None else Fraction(variance_scale)
    e = weight_log_coeffs(w, K)
    poly: dict[tuple[int, ...], LaurentSeries] = {}
    for l in range(2, K + 1):
        cl = e[l - 1] * v**l
        for t in range(0, l + 1):
            if t == l:
                coef = cl * Fraction((-1) ** l * comb(2 * l, l), 2)
            else:
                # t and 2l - t give identical monomials; fold the half in
                coef = cl * Fraction((-1) ** t * comb(2 * l, t))
            if t == 0:
                mono, npow = (2 * l,), 1
            else:
                mono, npow = tuple(sorted((t, 2 * l - t))), 0
            term = LaurentSeries({-npow: coef})
            poly[mono] = poly.get(mono, LaurentSeries.zero()) + term
    return {m: s for m, s in poly.items() if s}


def evaluate_mu_polynomial(poly: Mapping[tuple[int, ...], LaurentSeries],
                           xs: list[Fraction]) -> Fraction:
    """Exact evaluation at a rational point (n = len(xs)); test hook."""
    n = len(xs)
    total = Fraction(0)
    for mono, coeff in poly.items():
        val = coeff.evaluate(n)
        for k in mono:
            val *= sum(Fraction(x) ** k for x in xs)
        total += val
    return total


def f_direct(w: WeightSpec, K: int, xs: list[Fraction],
             variance_scale: Fraction | None = None) -> Fraction:
    """Edge-sum definition of f_K on the complete graph, for cross-checks."""
    v = Fraction(1) if variance_scale is None else Fraction(variance_scale)
    e = weight_log_coeffs(w, K)
    n = len(xs)
    total = Fraction(0)
    for l in range(2, K + 1):
        s = Fraction(0)
        for j in range(n):
            for k in range(j + 1, n):
                s += (Fraction(xs[j]) - Fraction(xs[k])) ** (2 * l)
        total += e[l - 1] * v**l * s
    return total


# ---------------------------------------------------------------------------
# order selection

def orders_for_precision(n: float, d: float, c: float) -> tuple[int, int]:
    """Moment order M and Taylor order K needed for a target error n^(-c):
    M = floor((c+1) log n / (log d - 2 log log n)),
    K = floor((c+1) log n / (log d - log log n))."""
    ln = mpmath.log(n)
    lld = mpmath.log(d)
    lll = mpmath.log(ln)
    dM = lld - 2 * lll
    dK = lld - lll
    if dM <= 0 or dK <= 0:
        raise DomainError("order formulas need d > (log n)^2")
    M = int(mpmath.floor((c + 1) * ln / dM))
    K = int(mpmath.floor((c + 1) * ln / dK))
    return M, K


def family_orders(c: int) -> tuple[int, int]:
    """For the dense families the error target n^(-c) is met with
    M = K = c + 1 (c = 12 gives 13, 13)."""
    return c + 1, c + 1


# ---------------------------------------------------------------------------
# the expansion itself

@dataclass(frozen=True)
class ExpansionResult:
    family: str
    order: int                      # series exact through n^-(order-1)
    weight: WeightSpec
    variance: Fraction              # component variance times n
    M: int
    K: int
    prefactor: str                  # formula tag, see log_prefactor()
    coeffs: dict[int, Fraction]     # p -> coefficient of n^-p, p in 0..order-1
    cumulants: tuple[LaurentSeries, ...] = field(default=(), compare=False)

    def exponent_series(self) -> LaurentSeries:
        return LaurentSeries(self.coeffs, self.order - 1)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "order": self.order,
            "prefactor": self.prefactor,
            "coeffs": {str(p): str(c) for p, c in sorted(self.coeffs.items())},
        }


PREFACTORS = {
    "RT": "n^(1/2) * (2^(n+1)/(pi n))^((n-1)/2)",
    "ED": "n^(1/2) * (4^n/(pi n))^((n-1)/2)",
    "EOG": "n^(1/2) * (3^(n+1)/(4 pi n))^((n-1)/2)",
    "custom": "",
}


def _moments_of_f(poly, M: int, p_max: int):
    """E[f^r] for r = 1..M as truncated coefficient dicts, by expanding
    products of the base monomials with order-bound pruning."""
    items = []
    for mono, coeff in poly.items():
        for npow, c in ((-p, v) for p, v in coeff.coeffs.items()):
            bound = monomial_order_bound(mono) - npow
            items.append((mono, npow, c, bound))
    items.sort(key=lambda it: it[3])

    moments = []
    P: dict[tuple[tuple[int, ...], int], Fraction] = {((), 0): Fraction(1)}
    for _r in range(1, M + 1):
        nxt: dict[tuple[tuple[int, ...], int], Fraction] = {}
        for (mono, npow), c in P.items():
            base_bound = monomial_order_bound(mono) - npow
            for m2, npow2, c2, bound2 in items:
                if base_bound + bound2 > p_max:
                    break
                key = (tuple(sorted(mono + m2)), npow + npow2)
                val = c * c2
                if key in nxt:
                    nxt[key] += val
                else:
                    nxt[key] = val
        P = {k: v for k, v in nxt.items() if v != 0}

        mr: dict[int, Fraction] = {}
        for (mono, npow), c in P.items():
            for p, mc in mu_moment_dict(mono, p_max + npow).items():
                pp = p - npow
                if pp <= p_max:
                    mr[pp] = mr.get(pp, Fraction(0)) + c * mc
        mr = {p: c for p, c in mr.items() if c != 0}
        if any(p < 0 for p in mr):
            raise AssertionError("moment of f has a positive power of n")
        moments.append(LaurentSeries(mr, p_max))
    return moments


def expansion_series(family: str | WeightSpec, c: int = 12) -> ExpansionResult:
    """Exponent-series coefficients through n^-(c-1), exact rationals.

    The moments E[f_K^r], r <= M, are computed in the power-sum basis with
    truncation pruning, converted to cumulants by the formal logarithm over
    the series ring, and summed as sum_r kappa_r / r!.
    """
    if c > MAX_ORDER:
        raise SizeLimitError(f"expansion order capped at c={MAX_ORDER}")
    if c < 1:
        raise DomainError("order must be >= 1")
    w = WeightSpec.for_family(family) if isinstance(family, str) else family
    M, K = family_orders(c)
    p_max = c - 1
    v = family_variance(w)
    poly = f_as_mu_polynomial(w, K, variance_scale=v)
    moments = _moments_of_f(poly, M, p_max)
    kappas = moments_to_cumulants(moments)
    total = LaurentSeries.zero(p_max)
    for r, kap in enumerate(kappas, start=1):
        total = total + kap / factorial(r)
    coeffs = {p: total[p] for p in range(0, p_max + 1) if total[p] != 0}
    return ExpansionResult(
        family=w.family, order=c, weight=w, variance=v, M=M, K=K,
        prefactor=PREFACTORS.get(w.family, ""), coeffs=coeffs,
        cumulants=tuple(kappas),
    )


# ---------------------------------------------------------------------------
# numeric evaluation

def log_prefactor(family: str, n: int) -> mpmath.mpf:
    """Natural log of the closed-form prefactor at a concrete n."""
    nf = mpmath.mpf(n)
    half = (nf - 1) / 2
    if family == "RT":
        return mpmath.log(nf) / 2 + half * ((n + 1) * mpmath.log(2)
                                            - mpmath.log(mpmath.pi) - mpmath.log(nf))
    if family == "ED":
        return mpmath.log(nf) / 2 + half * (n * mpmath.log(4)
                                            - mpmath.log(mpmath.pi) - mpmath.log(nf))
    if family == "EOG":
        return mpmath.log(nf) / 2 + half * ((n + 1) * mpmath.log(3) - mpmath.log(4)
                                            - mpmath.log(mpmath.pi) - mpmath.log(nf))
    raise DomainError("no closed-form prefactor for a custom weight")


def evaluate_expansion(result: ExpansionResult, n: int, bits: int = 256,
                       max_power: int | None = None):
    """(value, log_value) of prefactor * exp(truncated series) at this n.

    ``max_power`` restricts the series to powers n^0..n^-max_power so the
    effect of successive terms can be observed.
    """
    if bits < 128:
        raise DomainError("bits must be >= 128")
    if result.family == "RT" and n % 2 == 0:
        raise DomainError("regular tournaments need odd n")
    if result.family == "custom":
        raise DomainError("custom weights expose only the exponent series")
    with mpmath.workprec(bits):
        log_val = log_prefactor(result.family, n)
        nf = mpmath.mpf(n)
        for p, coeff in sorted(result.coeffs.items()):
            if max_power is not None and p > max_power:
                continue
            log_val += (mpmath.mpf(coeff.numerator)
                        / mpmath.mpf(coeff.denominator)) / nf**p
        return mpmath.exp(log_val), log_val
