"""Link pairings with the codimension-one stratum boundaries.

Segre-class coefficients of the virtual normal bundle, the instanton-link
pairing table, the level-one link pairing in closed form and as a literal
nested-sum oracle, and the blow-up pairing with its polarization oracle.

The two independent evaluation routes (closed vs raw, closed-blow-up vs
polarized) must agree exactly on every admissible input; the test suite
enforces this.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .combinatorics import JacobiParams, ext_binomial, jacobi_at_zero
from .errors import (
    HypothesisViolated,
    JacobiZeroDivide,
    MissingMoment,
    NotDivisible,
)
from .lattice import CohomologyClass, IntersectionForm, pair, square
from .manifold import (
    FourManifoldData,
    SpincData,
    SpinuData,
    blow_up_manifold,
    blow_up_spinc,
    blow_up_spinu,
    c1_squared,
    dim_sw,
    dims_asd,
    level,
    normal_indices,
    orientation_sign,
)
from . import polyring
from .polyring import TruncatedPolynomial, constant, linear_form, quadratic_form

__all__ = [
    "SegreInput",
    "PairingInput",
    "PairingValue",
    "segre_coefficient",
    "s_constants",
    "segre_coefficient_by_inversion",
    "instanton_pairing",
    "link_pairing_closed",
    "link_pairing_raw",
    "b0_coefficient",
    "blow_up_pairing_closed",
    "blow_up_pairing_polarized",
]


# ---------------------------------------------------------------------------
# Segre coefficients of the virtual normal bundle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SegreInput:
    """Index pair (n', n'') of the normal operator and the class degree p."""

    n_prime: int
    n_dblprime: int
    p: int

    def __post_init__(self) -> None:
        if self.p < 0:
            raise ValueError("Segre degree p must be non-negative")


def s_constants(n_prime: int, n_dblprime: int, j: int) -> int:
    """S_j = sum_k 2^k C(-n', k) C(-n'', j-k)."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return sum(
        (ext_binomial(-n_prime, k) * ext_binomial(-n_dblprime, j - k)) << k
        for k in range(j + 1)
    )


def segre_coefficient(inp: SegreInput) -> int:
    """Coefficient of mu^p in the p-th Segre class of the normal bundle."""
    return s_constants(inp.n_prime, inp.n_dblprime, inp.p)


def segre_coefficient_by_inversion(n_prime: int, n_dblprime: int, p: int) -> Fraction:
    """Independent oracle: mu^p coefficient of the truncated series inverse
    of the total Chern class (1+2mu)^n' (1+mu)^n''."""
    if p < 0:
        raise ValueError("p must be non-negative")
    bound = p
    mu = polyring.variable(0, 1, bound)
    one = constant(1, 1, bound)
    chern = ((one + 2 * mu) ** n_prime) * ((one + mu) ** n_dblprime)
    return chern.inverse().coefficient((p,))


# ---------------------------------------------------------------------------
# Instanton-link pairings
# ---------------------------------------------------------------------------

INSTANTON_KINDS = ("nu_x", "nu2_h", "nu3", "nu_alpha_h")


def instanton_pairing(
    kind: str,
    X: FourManifoldData,
    t_prime: SpinuData,
    s: SpincData,
    alpha: Optional[CohomologyClass] = None,
    bound: int = 4,
) -> TruncatedPolynomial:
    """Pairing of a monomial in the boundary class with the gluing-data link.

    nu_x -> 2;  nu2_h -> -4<c1(s)-c1(t'), h>;
    nu3 -> 6(c1(s)-c1(t'))^2 + 2 c1^2(X);  nu_alpha_h -> 2<alpha, h>.

    Constant values are returned as degree-zero polynomials so all four
    table entries compose uniformly.
    """
    n = X.form.rank
    diff = s.c1 - t_prime.c1
    if kind == "nu_x":
        return constant(2, n, bound)
    if kind == "nu2_h":
        return -4 * linear_form(diff, X.form, bound)
    if kind == "nu3":
        return constant(6 * square(X.form, diff) + 2 * c1_squared(X), n, bound)
    if kind == "nu_alpha_h":
        if alpha is None:
            raise ValueError("nu_alpha_h needs the class alpha")
        return 2 * linear_form(alpha, X.form, bound)
    raise ValueError(f"unknown pairing kind {kind!r}; expected one of {INSTANTON_KINDS}")


# ---------------------------------------------------------------------------
# Level-one link pairings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairingInput:
    """Everything a level-one link pairing consumes.

    The spin-u structure t_prime is the ambient one (the stratum of s sits
    at level one in it); delta, m, eta satisfy the degree bookkeeping
    2(delta+eta) = dim(ambient moduli / circle) - 1, checked on build.
    """

    X: FourManifoldData
    t_prime: SpinuData
    s: SpincData
    delta: int
    m: int
    eta: int
    h: CohomologyClass

    def __post_init__(self) -> None:
        if self.delta < 0 or self.eta < 0:
            raise HypothesisViolated("delta and eta must be non-negative")
        if not 0 <= self.m <= self.delta // 2:
            raise HypothesisViolated(f"m = {self.m} outside 0..delta/2")
        if level(self.X, self.t_prime, self.s) != 1:
            raise HypothesisViolated(
                "spin-c stratum is not at level one of the ambient structure"
            )
        d_a, n_a = dims_asd(self.X, self.t_prime)
        if 2 * (self.delta + self.eta) != d_a + 2 * n_a - 2:
            raise HypothesisViolated(
                "2(delta+eta) != dim(ambient moduli / circle) - 1"
            )
        ds = dim_sw(self.X, self.s)
        if ds < 0 or ds % 2 != 0:
            raise HypothesisViolated(f"d_s = {ds} must be even and non-negative")
        self.X.form._require_rank(self.h)

    @property
    def d(self) -> int:
        """Half the dimension of the embedded monopole space."""
        return dim_sw(self.X, self.s) // 2

    def moment(self) -> int:
        """<mu^d, [M_s]>: the recorded moment, or the invariant when d = 0."""
        if self.d == 0:
            return self.s.sw
        if self.s.moment is None:
            raise MissingMoment(
                f"class {self.s.c1.coords} has d_s > 0 but no moment value"
            )
        return self.s.moment


@dataclass(frozen=True)
class PairingValue:
    """A pairing as a homogeneous polynomial in h plus its value at the
    fixture's chosen h."""

    polynomial: TruncatedPolynomial
    at_h: Fraction


def _jacobi_pair(inp: PairingInput) -> tuple[int, int, int]:
    """(a, b, d) for the pairing, computed two ways and cross-checked."""
    d = inp.d
    d_a, _ = dims_asd(inp.X, inp.t_prime)
    a = inp.eta - d + 1
    two_b = 2 * inp.delta - d_a - 2 * d - (inp.X.chi + inp.X.sigma) // 2
    if two_b % 2 != 0:
        raise NotDivisible("Jacobi parameter b is not an integer")
    b = two_b // 2
    # Independent route through the split structure's normal indices.
    t_split = SpinuData(c1=inp.t_prime.c1, p1=inp.t_prime.p1 + 4, w=inp.t_prime.w)
    n1, n2 = normal_indices(inp.X, t_split, inp.s)
    if a != 3 + n1 + n2 - inp.delta or b != inp.delta - n1 - 4 - d:
        raise HypothesisViolated(
            "inconsistent input: degree bookkeeping and normal indices disagree"
        )
    return a, b, d


def _bracket_closed(
    inp: PairingInput, k: int, use_sw: bool
) -> TruncatedPolynomial:
    """The three-term bracket of the closed formula, k exceptional slots.

    Ratio-free: every coefficient is multiplied through by the Jacobi value
    P^{a,b}, with the obstruction term and the lattice cross term carrying
    the shifted value P^{a-1,b+1}.  Terms whose power of the leading linear
    form would be negative are omitted.
    """
    a, b, d = _jacobi_pair(inp)
    P = jacobi_at_zero(JacobiParams(a, b, d))
    P1 = jacobi_at_zero(JacobiParams(a - 1, b + 1, d))
    X, Q = inp.X, inp.X.form
    diff = inp.s.c1 - inp.t_prime.c1
    n = inp.delta - 2 * inp.m
    deg = max(n - k, 0)
    bound = max(deg, 2)
    nv = Q.rank
    out = polyring.zero(nv, bound)
    if n - k < 0:
        return out.truncate(deg)
    bf = linear_form(diff, Q, bound)
    cross = pair(Q, diff, inp.t_prime.c1)
    a0_plain = (
        3 * square(Q, diff) + c1_squared(X) + 4 * n - 4 * inp.m - 4 * comb(k + 1, 2)
    )
    out = out + (a0_plain * P + 2 * cross * P1) * bf ** (n - k)
    if n - k >= 1:
        lt = linear_form(inp.t_prime.c1, Q, bound)
        out = out + (2 * (n - k) * P1) * (bf ** (n - k - 1) * lt)
    if n - k >= 2:
        qf = quadratic_form(Q, bound)
        out = out + (4 * comb(n - k, 2) * P) * (bf ** (n - k - 2) * qf)
    sign = -1 if (inp.m + 1 + d) % 2 else 1
    mom = inp.s.sw if use_sw else inp.moment()
    scale = Fraction(sign * mom) * Fraction(2**d, 2**inp.delta)
    return (scale * out).truncate(deg)


def link_pairing_closed(inp: PairingInput) -> PairingValue:
    """Closed-form level-one link pairing.

    Sign (-1)^(m+1+d), prefactor 2^(d-delta) P^{a,b}(0) times the moment,
    times the bracket with coefficients a0, b0, a1; the b0 term and the
    lattice cross term inside a0 are evaluated ratio-free through
    P^{a-1,b+1}, which keeps the value finite when P^{a,b}(0) = 0 and makes
    the closed route agree exactly with the literal nested sum.
    """
    poly = _bracket_closed(inp, k=0, use_sw=False)
    return PairingValue(poly, poly.evaluate(inp.h.coords))


def b0_coefficient(inp: PairingInput) -> Fraction:
    """The standalone ratio coefficient 2(delta-2m) P^{a-1,b+1}/P^{a,b}.

    Only for direct coefficient queries; raises JacobiZeroDivide when the
    denominator value vanishes.  The pairing evaluators never divide.
    """
    a, b, d = _jacobi_pair(inp)
    P = jacobi_at_zero(JacobiParams(a, b, d))
    if P == 0:
        raise JacobiZeroDivide(f"P^({a},{b})_{d}(0) = 0")
    P1 = jacobi_at_zero(JacobiParams(a - 1, b + 1, d))
    return 2 * (inp.delta - 2 * inp.m) * P1 / P


def link_pairing_raw(inp: PairingInput) -> PairingValue:
    """Literal nested-sum evaluation of the same link pairing.

    Overall sign (-1)^(m+1+d) (the rank-free collapse of the orientation
    bookkeeping), factor 2^(-delta-1), double sum over i <= d, j <= d-i
    with Segre constants S_j, the v-shifted binomial pattern of the six
    term families, and the four instanton pairing values substituted.
    """
    _, _, d = _jacobi_pair(inp)  # validates the degree bookkeeping
    X, Q = inp.X, inp.X.form
    delta, m, n = inp.delta, inp.m, inp.delta - 2 * inp.m
    t_split = SpinuData(c1=inp.t_prime.c1, p1=inp.t_prime.p1 + 4, w=inp.t_prime.w)
    n1, n2 = normal_indices(X, t_split, inp.s)

    # Combinatorial weights, one accumulator per term family.
    w_nu3 = w_nu2c = w_nu2h = w_nuhc = w_nuq = w_nux = 0
    for i in range(d + 1):
        for j in range(d - i + 1):
            Sj = s_constants(n1, n2, j)
            if not Sj:
                continue
            base = Sj << (d - j)
            if (i + j) & 1:
                base = -base
            c_top = ext_binomial(d + 3 - i - j, d - i - j)
            c_mid = ext_binomial(d + 2 - i - j, d - i - j)
            c_low = ext_binomial(d + 1 - i - j, d - i - j)
            b_d0 = ext_binomial(delta, i)
            b_d1 = ext_binomial(delta - 1, i)
            b_d2 = ext_binomial(delta - 2, i)
            w_nu3 += base * b_d0 * c_top
            w_nu2c -= base * b_d0 * c_mid
            w_nu2h -= base * 2 * n * b_d1 * c_mid
            w_nuhc += base * 2 * n * b_d1 * c_low
            w_nuq += base * 4 * comb(n, 2) * b_d2 * c_low
            w_nux -= base * 4 * m * b_d2 * c_low

    deg = max(n, 0)
    bound = max(deg, 2)
    nv = Q.rank
    bf = linear_form(inp.s.c1 - inp.t_prime.c1, Q, bound)
    qf = quadratic_form(Q, bound)
    nu3 = instanton_pairing("nu3", X, inp.t_prime, inp.s, bound=bound)
    nu2c = constant(
        -4 * pair(Q, inp.s.c1 - inp.t_prime.c1, inp.t_prime.c1), nv, bound
    )
    nu2h = instanton_pairing("nu2_h", X, inp.t_prime, inp.s, bound=bound)
    nuhc = instanton_pairing(
        "nu_alpha_h", X, inp.t_prime, inp.s, alpha=inp.t_prime.c1, bound=bound
    )
    nux = instanton_pairing("nu_x", X, inp.t_prime, inp.s, bound=bound)

    total = polyring.zero(nv, bound)
    bf_n = bf**n
    total = total + w_nu3 * (bf_n * nu3)
    total = total + w_nu2c * (bf_n * nu2c)
    if n >= 1:
        bf_n1 = bf ** (n - 1)
        total = total + w_nu2h * (bf_n1 * nu2h)
        total = total + w_nuhc * (bf_n1 * nuhc)
    if n >= 2:
        total = total + w_nuq * (bf ** (n - 2) * qf * nux)
    total = total + w_nux * (bf_n * nux)

    sign = -1 if (m + 1 + d) % 2 else 1
    scale = Fraction(sign * inp.moment(), 2 ** (delta + 1))
    poly = (scale * total).truncate(deg)
    return PairingValue(poly, poly.evaluate(inp.h.coords))


# ---------------------------------------------------------------------------
# Blow-up pairings
# ---------------------------------------------------------------------------


def blow_up_pairing_closed(inp: PairingInput, k: int) -> PairingValue:
    """Closed blow-up pairing: zero for odd k; for even k the base bracket
    with a0 shifted by -4 C(k+1,2), the obstruction coefficient dropping to
    2(delta-2m-k), and the quadratic coefficient 4 C(delta-2m-k, 2), all
    scaled by the orientation sign and the invariant of the un-blown class.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    deg = max(inp.delta - 2 * inp.m - k, 0)
    if k % 2 == 1:
        zero_poly = polyring.zero(inp.X.form.rank, deg)
        return PairingValue(zero_poly, Fraction(0))
    o_sign = orientation_sign(inp.X, inp.t_prime.w, inp.t_prime, inp.s)
    poly = o_sign * _bracket_closed(inp, k=k, use_sw=True)
    return PairingValue(poly, poly.evaluate(inp.h.coords))


def _restricted_linear_form(
    cls_on_blowup: CohomologyClass,
    blown_form: IntersectionForm,
    base_rank: int,
    bound: int,
) -> TruncatedPolynomial:
    """<beta, h> for h ranging over the un-blown lattice only."""
    row = blown_form.apply(cls_on_blowup)[:base_rank]
    terms = {}
    for i, c in enumerate(row):
        if c:
            expo = tuple(1 if j == i else 0 for j in range(base_rank))
            terms[expo] = Fraction(c)
    return TruncatedPolynomial(base_rank, bound, terms)


def blow_up_pairing_polarized(inp: PairingInput, k: int) -> PairingValue:
    """Polarization oracle for the blow-up pairing.

    Splices the two companion spin-c structures onto the blow-up, expands
    the closed formula multilinearly over the argument list (h repeated
    delta-2m-k times, the exceptional class k+1 times), applies the two
    orientation signs, and adds.  Must agree with blow_up_pairing_closed
    for even k and vanish identically for odd k.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n_args = inp.delta + 1 - 2 * inp.m
    n_h = inp.delta - 2 * inp.m - k
    deg = max(n_h, 0)
    nv = inp.X.form.rank
    if n_h < 0:
        return PairingValue(polyring.zero(nv, deg), Fraction(0))

    X_blown, e = blow_up_manifold(inp.X)
    t_blown = blow_up_spinu(inp.t_prime)
    a, b, d = _jacobi_pair(inp)
    P = jacobi_at_zero(JacobiParams(a, b, d))
    P1 = jacobi_at_zero(JacobiParams(a - 1, b + 1, d))

    bound = max(deg, 2)
    qf = quadratic_form(inp.X.form, bound)
    total = polyring.zero(nv, bound)
    # w on the blow-up is the lift carried by the blown-up spin-u structure.
    w_blown = t_blown.w

    for k_choice in (1, 0):
        s_pm = blow_up_spinc(inp.s, k_choice, inp.X, X_blown)
        if level(X_blown, t_blown, s_pm) != 1:
            raise HypothesisViolated("blow-up did not preserve the stratum level")
        beta = s_pm.c1 - t_blown.c1
        # Slot values over the blow-up lattice.
        beta_h = _restricted_linear_form(beta, X_blown.form, nv, bound)
        beta_e = pair(X_blown.form, beta, e)
        lt_h = _restricted_linear_form(t_blown.c1, X_blown.form, nv, bound)
        lt_e = pair(X_blown.form, t_blown.c1, e)
        q_ee = pair(X_blown.form, e, e)
        slot_is_e = [i >= n_h for i in range(n_args)]

        def slot_beta(i: int) -> TruncatedPolynomial:
            return constant(beta_e, nv, bound) if slot_is_e[i] else beta_h

        def slot_lt(i: int) -> TruncatedPolynomial:
            return constant(lt_e, nv, bound) if slot_is_e[i] else lt_h

        def product_except(skip: set[int]) -> TruncatedPolynomial:
            out = constant(1, nv, bound)
            for i in range(n_args):
                if i not in skip:
                    out = out * slot_beta(i)
            return out

        a0_plain = (
            3 * square(X_blown.form, beta)
            + c1_squared(X_blown)
            + 4 * n_args
            - 4 * inp.m
        )
        cross = pair(X_blown.form, beta, t_blown.c1)
        bracket = (a0_plain * P + 2 * cross * P1) * product_except(set())
        for j in range(n_args):
            bracket = bracket + (2 * P1) * (product_except({j}) * slot_lt(j))
        for j in range(n_args):
            for l in range(j + 1, n_args):
                if slot_is_e[j] and slot_is_e[l]:
                    q_jl = constant(q_ee, nv, bound)
                elif slot_is_e[j] != slot_is_e[l]:
                    q_jl = _restricted_linear_form(e, X_blown.form, nv, bound)
                else:
                    q_jl = qf
                bracket = bracket + (4 * P) * (product_except({j, l}) * q_jl)

        o_sign = orientation_sign(X_blown, w_blown, t_blown, s_pm)
        sign = -1 if (inp.m + 1 + d) % 2 else 1
        moment_pm = inp.s.sw  # <mu^d, [M_{s+-}]> is the invariant by definition
        scale = Fraction(o_sign * sign * moment_pm * 2**d, 2 ** (inp.delta + 1))
        total = total + scale * bracket

    poly = total.truncate(deg)
    return PairingValue(poly, poly.evaluate(inp.h.coords))
