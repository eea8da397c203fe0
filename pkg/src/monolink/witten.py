"""Series aggregation and the low-degree conjecture verifier.

Builds the two formal series from basic-class data, computes invariant
moments through the level-one range, and compares them degree by degree:
both must vanish below degree c-2 and agree through degree c+1, where
c = -(7 chi + 11 sigma)/4.  All comparisons are exact rational equalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .combinatorics import JacobiParams, jacobi_at_zero
from .errors import (
    BoundTooHigh,
    HypothesisViolated,
    NonIntegralExponent,
    NonIntegralSign,
    NotCongruent,
)
from .lattice import CohomologyClass, is_characteristic, pair, square
from .manifold import (
    FourManifoldData,
    c1_squared,
    c_of_X,
    degree_parity_ok,
    dim_sw,
    r_and_i,
    require_odd_b_plus,
)
from . import polyring
from .polyring import TruncatedPolynomial, linear_form, quadratic_form

__all__ = [
    "WittenReport",
    "sw_series",
    "sw_vanishing_check",
    "donaldson_moment",
    "assemble_donaldson_series",
    "verify_witten",
    "sign_change_check",
]


def _half(n: int, what: str) -> int:
    if n % 2 != 0:
        raise NonIntegralSign(f"{what} = {n}/2 is not an integer")
    return n // 2


def _sign_pow(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _two_pow(exponent: int) -> Fraction:
    return Fraction(2**exponent) if exponent >= 0 else Fraction(1, 2**-exponent)


def sw_series(X: FourManifoldData, w: CohomologyClass, bound: int) -> TruncatedPolynomial:
    """sum_s (-1)^((w^2 + c1(s).w)/2) SW(s) exp(<c1(s), h>), truncated."""
    Q = X.form
    out = polyring.zero(Q.rank, bound)
    w2 = square(Q, w)
    for s in X.basic_classes:
        if s.sw == 0:
            continue
        eps = _half(w2 + pair(Q, s.c1, w), "w^2 + c1.w")
        term = linear_form(s.c1, Q, bound).exp_series()
        out = out + (_sign_pow(eps) * s.sw) * term
    return out


def sw_vanishing_check(X: FourManifoldData, v: CohomologyClass, d: int) -> bool:
    """True iff sum_s (-1)^((v^2+v.c1)/2) SW(s) <c1(s), h>^d is the zero
    polynomial.

    The vanishing law holds for v characteristic (or congruent
    to characteristic mod the invariant's support annihilator) when
    d < c(X)-2 or d has the wrong parity; this returns the actual truth so
    fixtures violating those hypotheses are detectable.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    Q = X.form
    total = polyring.zero(Q.rank, d)
    v2 = square(Q, v)
    for s in X.basic_classes:
        if s.sw == 0:
            continue
        eps = _half(v2 + pair(Q, v, s.c1), "v^2 + v.c1")
        total = total + (_sign_pow(eps) * s.sw) * linear_form(s.c1, Q, d) ** d
    return total.is_zero()


def _moment_prefactor(
    X: FourManifoldData, w: CohomologyClass, lam: CohomologyClass, delta: int, m: int
) -> Fraction:
    """2^(1 - i(lam)/4 - 3 delta/4) (-1)^(m + (sigma - w^2)/2), validated integral."""
    info = r_and_i(X, lam, X.basic_classes)
    if (info.i_value - delta) % 4 != 0:
        raise NonIntegralExponent(
            f"i(lam) - delta = {info.i_value - delta} not divisible by 4"
        )
    n_a = (info.i_value - delta) // 4
    exponent = 1 - n_a - delta  # equals 1 - i/4 - 3 delta/4
    w2 = square(X.form, w)
    if (X.sigma - w2) % 2 != 0:
        raise NonIntegralExponent(f"(sigma - w^2)/2 not integral for w^2 = {w2}")
    sign = _sign_pow(m + (X.sigma - w2) // 2)
    return sign * _two_pow(exponent)


def donaldson_moment(
    X: FourManifoldData,
    w: CohomologyClass,
    lam: CohomologyClass,
    delta: int,
    m: int,
) -> TruncatedPolynomial:
    """Invariant of h^(delta-2m) x^m at the level-one degree delta = r(lam)+4.

    Zero when the mod-8 degree rule fails.  Splits the basic classes by
    r(lam, c1): classes at r = delta contribute through the top-level
    coefficient, classes at r = delta-4 through the three-term bracket;
    other classes bound no stratum and contribute nothing.
    """
    if delta < 0 or m < 0 or 2 * m > delta:
        raise HypothesisViolated("need 0 <= 2m <= delta")
    Q = X.form
    if not is_characteristic(Q, w - lam):
        raise HypothesisViolated("w - lam is not characteristic")
    n = delta - 2 * m
    if not degree_parity_ok(X, w, 2 * delta):
        return polyring.zero(Q.rank, n)
    info = r_and_i(X, lam, X.basic_classes)
    if delta != info.r_min + 4:
        raise HypothesisViolated(
            f"delta = {delta} but the level-one formula needs r(lam)+4 = {info.r_min + 4}"
        )
    if delta >= info.i_value:
        raise HypothesisViolated(
            f"delta = {delta} must stay below i(lam) = {info.i_value}"
        )
    prefactor = _moment_prefactor(X, w, lam, delta, m)
    w2 = square(Q, w)
    quarter = (X.chi + X.sigma) // 4
    out = polyring.zero(Q.rank, n)
    qf = quadratic_form(Q, n) if n >= 2 else None
    lt = linear_form(lam, Q, n) if n >= 1 else None
    for s, r_s in zip(X.basic_classes, info.per_class):
        if s.sw == 0 or r_s not in (delta, delta - 4):
            continue
        d_s = dim_sw(X, s)
        if d_s % 2 != 0:
            raise HypothesisViolated(f"odd d_s = {d_s} for {s.c1.coords}")
        d = d_s // 2
        eps = _half(w2 + pair(Q, s.c1, w - lam), "w^2 + c1.(w-lam)")
        a = (info.i_value - delta) // 4 - d
        b = -d - quarter
        scale = _sign_pow(eps) * Fraction((-2) ** d) * s.sw
        bf = linear_form(s.c1 - lam, Q, n)
        if r_s == delta:
            P_top = jacobi_at_zero(JacobiParams(a - 1, b, d))
            out = out + (scale * P_top) * bf**n
        else:
            P = jacobi_at_zero(JacobiParams(a, b, d))
            P1 = jacobi_at_zero(JacobiParams(a - 1, b + 1, d))
            cross = pair(Q, s.c1 - lam, lam)
            a0_plain = 3 * square(Q, s.c1 - lam) + c1_squared(X) + 4 * delta - 12 * m
            bracket = (a0_plain * P + 2 * cross * P1) * bf**n
            if n >= 1:
                bracket = bracket + (2 * n * P1) * (bf ** (n - 1) * lt)
            if n >= 2:
                bracket = bracket + (4 * math.comb(n, 2) * P) * (bf ** (n - 2) * qf)
            out = out + scale * bracket
    return prefactor * out


def _moment_top_level(
    X: FourManifoldData,
    w: CohomologyClass,
    lam: CohomologyClass,
    delta: int,
    m: int,
) -> TruncatedPolynomial:
    """Invariant at the lowest contributing degree delta = r(lam):

    2^(2-c) (-1)^(m+1) sum_s (-1)^((w^2+c1.w)/2) SW(s) <c1-lam, h>^(delta-2m),
    valid for simple-type data with lam orthogonal to the support.
    """
    Q = X.form
    n = delta - 2 * m
    if n < 0:
        raise HypothesisViolated("need 0 <= 2m <= delta")
    if not degree_parity_ok(X, w, 2 * delta):
        return polyring.zero(Q.rank, n)
    if not X.is_simple_type():
        raise HypothesisViolated("top-level moment formula needs simple type")
    c = c_of_X(X)
    w2 = square(Q, w)
    out = polyring.zero(Q.rank, n)
    for s in X.basic_classes:
        if s.sw == 0:
            continue
        eps = _half(w2 + pair(Q, s.c1, w), "w^2 + c1.w")
        out = out + (_sign_pow(eps) * s.sw) * linear_form(s.c1 - lam, Q, n) ** n
    return (_sign_pow(m + 1) * _two_pow(2 - c)) * out


def _series_moment(
    X: FourManifoldData,
    w: CohomologyClass,
    lam: CohomologyClass,
    delta: int,
    m: int,
    r_min: int,
) -> TruncatedPolynomial:
    """Moment dispatch for series assembly over the computable range."""
    n = delta - 2 * m
    if not degree_parity_ok(X, w, 2 * delta):
        return polyring.zero(X.form.rank, n)
    if delta < r_min:
        return polyring.zero(X.form.rank, n)
    if delta == r_min:
        return _moment_top_level(X, w, lam, delta, m)
    if delta == r_min + 4:
        return donaldson_moment(X, w, lam, delta, m)
    raise BoundTooHigh(
        f"moment at delta = {delta} needs level-{(delta - r_min + 3) // 4} data; "
        "only levels zero and one are computable"
    )


def assemble_donaldson_series(
    X: FourManifoldData,
    w: CohomologyClass,
    lam: CohomologyClass,
    bound: int,
) -> TruncatedPolynomial:
    """Series with degree-e part D(h^e)/e! + D(h^e x)/(2 e!), e <= bound.

    Raises BoundTooHigh when bound exceeds c(X)+1: those coefficients need
    strata beyond level one and a silent zero would be unjustified.
    """
    c = c_of_X(X)
    if bound > c + 1:
        raise BoundTooHigh(
            f"bound {bound} exceeds c(X)+1 = {c + 1}, the level-one range"
        )
    if bound < 0:
        raise ValueError("bound must be non-negative")
    info = r_and_i(X, lam, X.basic_classes)
    out = polyring.zero(X.form.rank, bound)
    for e in range(bound + 1):
        inv_fact = Fraction(1, math.factorial(e))
        plain = _series_moment(X, w, lam, e, 0, info.r_min)
        out = out + inv_fact * plain.truncate(bound)
        pointed = _series_moment(X, w, lam, e + 2, 1, info.r_min)
        out = out + (inv_fact / 2) * pointed.truncate(bound)
    return out


def _render_part(p: TruncatedPolynomial) -> str:
    if len(p.terms) <= 6:
        return p.render()
    return f"<{len(p.terms)} terms; digest {p.digest()}>"


@dataclass(frozen=True)
class DegreeRow:
    degree: int
    donaldson: TruncatedPolynomial
    reference: TruncatedPolynomial

    @property
    def equal(self) -> bool:
        return self.donaldson == self.reference


@dataclass(frozen=True)
class VanishingRow:
    degree: int
    expected: bool
    actual: bool

    @property
    def consistent(self) -> bool:
        return self.actual or not self.expected


@dataclass(frozen=True)
class WittenReport:
    """Structured outcome of a full series comparison on one manifold."""

    manifold: str
    w: CohomologyClass
    lam: CohomologyClass
    c: int
    table: tuple[DegreeRow, ...]
    vanishing: tuple[VanishingRow, ...]
    dinvar_point_ok: bool
    dinvar_ok: bool

    @property
    def congruence_low(self) -> bool:
        """Both series vanish in every degree below c-2."""
        return all(
            row.donaldson.is_zero() and row.reference.is_zero()
            for row in self.table
            if row.degree < self.c - 2
        )

    @property
    def congruence_main(self) -> bool:
        """Degree-by-degree equality through degree c+1."""
        return all(row.equal for row in self.table)

    @property
    def vanishing_ok(self) -> bool:
        return all(row.consistent for row in self.vanishing)

    @property
    def passed(self) -> bool:
        return (
            self.congruence_low
            and self.congruence_main
            and self.dinvar_point_ok
            and self.dinvar_ok
            and self.vanishing_ok
        )

    def as_dict(self) -> dict:
        """JSON-ready deterministic summary."""
        return {
            "manifold": self.manifold,
            "w": list(self.w.coords),
            "lambda": list(self.lam.coords),
            "c": self.c,
            "table": [
                {
                    "degree": row.degree,
                    "donaldson": row.donaldson.render(),
                    "reference": row.reference.render(),
                    "equal": row.equal,
                }
                for row in self.table
            ],
            "vanishing": [
                {
                    "degree": row.degree,
                    "expected": row.expected,
                    "actual": row.actual,
                    "consistent": row.consistent,
                }
                for row in self.vanishing
            ],
            "congruence_low": self.congruence_low,
            "congruence_main": self.congruence_main,
            "dinvar_point_ok": self.dinvar_point_ok,
            "dinvar_ok": self.dinvar_ok,
            "passed": self.passed,
        }

    def check_lines(self) -> list[tuple[str, bool, str]]:
        """(check id, pass/fail, detail) triples in deterministic order."""
        lines: list[tuple[str, bool, str]] = []
        lines.append(
            (
                "congruence.low_degree",
                self.congruence_low,
                f"both series vanish below degree {self.c - 2}",
            )
        )
        for row in self.table:
            lines.append(
                (
                    f"degree.{row.degree}",
                    row.equal,
                    f"lhs={_render_part(row.donaldson)} rhs={_render_part(row.reference)}",
                )
            )
        lines.append(
            (
                "congruence.witten",
                self.congruence_main,
                f"series agree through degree {self.c + 1}",
            )
        )
        lines.append(
            ("coefficient.point_class", self.dinvar_point_ok, "degree c-2 moment identity")
        )
        lines.append(("coefficient.top", self.dinvar_ok, "degree c moment identity"))
        for row in self.vanishing:
            detail = f"expected_zero={row.expected} actual_zero={row.actual}"
            lines.append((f"vanishing.d{row.degree}", row.consistent, detail))
        return lines


def verify_witten(
    X: FourManifoldData,
    w: CohomologyClass,
    lam: CohomologyClass,
    attributes: Optional[Mapping[str, bool]] = None,
) -> WittenReport:
    """Full low-degree comparison of the two series on one manifold.

    Checks the hypotheses by name, assembles the invariant series through
    degree c+1, compares it with 2^(2-c) e^(Q/2) times the monopole series,
    and runs the two named coefficient identities at degrees c-2 and c.
    """
    require_odd_b_plus(X)
    if attributes:
        for key in ("simple_type", "abundant", "effective"):
            if key in attributes and not attributes[key]:
                raise HypothesisViolated(f"fixture declares {key} = false")
    if not X.support():
        raise HypothesisViolated("no basic classes with nonzero invariant")
    if not X.is_simple_type():
        raise HypothesisViolated("manifold is not of simple type")
    Q = X.form
    for s in X.support():
        if pair(Q, lam, s.c1) != 0:
            raise HypothesisViolated(
                f"lam is not orthogonal to basic class {s.c1.coords}"
            )
    if square(Q, lam) != 4 - (X.chi + X.sigma):
        raise HypothesisViolated(
            f"lam^2 = {square(Q, lam)} but 4-(chi+sigma) = {4 - (X.chi + X.sigma)}"
        )
    if not is_characteristic(Q, w - lam):
        raise HypothesisViolated("w - lam is not characteristic")
    c = c_of_X(X)
    if c < 2:
        raise HypothesisViolated(f"c(X) = {c} < 2 is outside the verified range")

    bound = c + 1
    lhs = assemble_donaldson_series(X, w, lam, bound)
    rhs = (
        _two_pow(2 - c)
        * ((Fraction(1, 2) * quadratic_form(Q, bound)).exp_series()
           * sw_series(X, w, bound))
    )
    table = tuple(
        DegreeRow(e, lhs.homogeneous_part(e), rhs.homogeneous_part(e))
        for e in range(bound + 1)
    )
    vanishing = tuple(
        VanishingRow(
            d,
            expected=(d < c - 2) or ((d - c) % 2 != 0),
            actual=sw_vanishing_check(X, w, d),
        )
        for d in range(bound + 1)
    )

    w2 = square(Q, w)
    point_lhs = donaldson_moment(X, w, lam, c, 1)
    point_rhs = polyring.zero(Q.rank, c - 2)
    top_rhs = polyring.zero(Q.rank, c)
    for s in X.support():
        eps = _half(w2 + pair(Q, s.c1, w), "w^2 + c1.w")
        lf = linear_form(s.c1, Q, c)
        point_rhs = point_rhs + (_sign_pow(eps) * s.sw) * (
            linear_form(s.c1, Q, c - 2) ** (c - 2)
        )
        top_rhs = top_rhs + (_sign_pow(eps) * s.sw) * (
            lf**c + math.comb(c, 2) * (lf ** (c - 2) * quadratic_form(Q, c))
        )
    point_rhs = _two_pow(3 - c) * point_rhs
    top_rhs = _two_pow(2 - c) * top_rhs
    top_lhs = donaldson_moment(X, w, lam, c, 0)

    return WittenReport(
        manifold=X.name,
        w=w,
        lam=lam,
        c=c,
        table=table,
        vanishing=vanishing,
        dinvar_point_ok=(point_lhs == point_rhs),
        dinvar_ok=(top_lhs == top_rhs),
    )


def sign_change_check(
    X: FourManifoldData,
    w: CohomologyClass,
    w_prime: CohomologyClass,
    lam: CohomologyClass,
    bound: Optional[int] = None,
) -> bool:
    """Verify the sign-change law between the two assembled series:
    the w' series equals (-1)^((w'-w)^2/4) times the w series."""
    diff = w_prime - w
    if any(coord % 2 != 0 for coord in diff.coords):
        raise NotCongruent("w' and w differ by an odd class")
    half_diff = CohomologyClass(coord // 2 for coord in diff.coords)
    factor = _sign_pow(square(X.form, half_diff))
    if bound is None:
        bound = c_of_X(X) + 1
    lhs = assemble_donaldson_series(X, w_prime, lam, bound)
    rhs = factor * assemble_donaldson_series(X, w, lam, bound)
    return lhs == rhs
