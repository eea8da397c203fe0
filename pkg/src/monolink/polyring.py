"""Truncated multivariate polynomials over exact rationals.

The carrier for all series work: sparse terms keyed by exponent tuples,
truncated at a total-degree bound.  Arithmetic between operands requires
equal variable counts and takes the smaller bound.  Rendering is
deterministic (graded lexicographic order, coefficients as p/q).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from operator import add as _add
from typing import Mapping, Sequence, Union

from .errors import DimensionMismatch, NonzeroConstantTerm
from .lattice import CohomologyClass, IntersectionForm

Scalar = Union[int, Fraction]

__all__ = [
    "TruncatedPolynomial",
    "zero",
    "constant",
    "variable",
    "linear_form",
    "quadratic_form",
]


@dataclass(frozen=True)
class TruncatedPolynomial:
    """Polynomial with rational coefficients, truncated in total degree."""

    nvars: int
    bound: int
    terms: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError("degree bound must be non-negative")
        clean = {}
        for expo, coeff in self.terms.items():
            if sum(expo) > self.bound:
                continue
            c = Fraction(coeff)
            if c != 0:
                if len(expo) != self.nvars:
                    raise DimensionMismatch("exponent length != variable count")
                clean[tuple(expo)] = c
        object.__setattr__(self, "terms", clean)

    # -- ring structure -------------------------------------------------

    @classmethod
    def _fast(cls, nvars: int, bound: int, clean_terms: dict) -> "TruncatedPolynomial":
        """Constructor bypassing validation; callers guarantee clean terms."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "bound", bound)
        object.__setattr__(obj, "terms", clean_terms)
        return obj

    def _align(self, other: "TruncatedPolynomial") -> int:
        if self.nvars != other.nvars:
            raise DimensionMismatch(
                f"variable counts differ: {self.nvars} vs {other.nvars}"
            )
        return min(self.bound, other.bound)

    def __add__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        bound = self._align(other)
        if bound == self.bound == other.bound:
            terms = dict(self.terms)
            for expo, c in other.terms.items():
                acc = terms.get(expo)
                total = c if acc is None else acc + c
                if total:
                    terms[expo] = total
                elif acc is not None:
                    del terms[expo]
            return TruncatedPolynomial._fast(self.nvars, bound, terms)
        terms = {e: c for e, c in self.terms.items() if sum(e) <= bound}
        for expo, c in other.terms.items():
            if sum(expo) > bound:
                continue
            acc = terms.get(expo)
            total = c if acc is None else acc + c
            if total:
                terms[expo] = total
            elif acc is not None:
                del terms[expo]
        return TruncatedPolynomial._fast(self.nvars, bound, terms)

    def __sub__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        return self + (-1) * other

    def __neg__(self) -> "TruncatedPolynomial":
        return (-1) * self

    def __rmul__(self, k: Scalar) -> "TruncatedPolynomial":
        k = Fraction(k)
        if k == 0:
            return TruncatedPolynomial._fast(self.nvars, self.bound, {})
        return TruncatedPolynomial._fast(
            self.nvars, self.bound, {e: k * c for e, c in self.terms.items()}
        )

    def __mul__(self, other) -> "TruncatedPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.__rmul__(other)
        bound = self._align(other)
        if self.nvars == 1:
            # dense convolution: much less dict/tuple churn for series work
            a = [0] * (bound + 1)
            b = [0] * (bound + 1)
            for (e,), c in self.terms.items():
                if e <= bound:
                    a[e] = c
            for (e,), c in other.terms.items():
                if e <= bound:
                    b[e] = c
            out1: dict[tuple[int, ...], Fraction] = {}
            for i, ca in enumerate(a):
                if not ca:
                    continue
                for j in range(bound + 1 - i):
                    cb = b[j]
                    if cb:
                        key = (i + j,)
                        acc = out1.get(key)
                        out1[key] = ca * cb if acc is None else acc + ca * cb
            for key in [k for k, v in out1.items() if not v]:
                del out1[key]
            return TruncatedPolynomial._fast(1, bound, out1)
        left = sorted(
            ((sum(e), e, c) for e, c in self.terms.items()), key=lambda t: t[0]
        )
        right = sorted(
            ((sum(e), e, c) for e, c in other.terms.items()), key=lambda t: t[0]
        )
        out: dict[tuple[int, ...], Fraction] = {}
        get = out.get
        for d1, e1, c1 in left:
            if right and d1 + right[0][0] > bound:
                break
            for d2, e2, c2 in right:
                if d1 + d2 > bound:
                    break
                key = tuple(map(_add, e1, e2))
                acc = get(key)
                out[key] = c1 * c2 if acc is None else acc + c1 * c2
        for key in [k for k, v in out.items() if not v]:
            del out[key]
        return TruncatedPolynomial._fast(self.nvars, bound, out)

    def __pow__(self, n: int) -> "TruncatedPolynomial":
        if n < 0:
            return self.inverse() ** (-n)
        out = constant(1, self.nvars, self.bound)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- series operations ----------------------------------------------

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def exp_series(self) -> "TruncatedPolynomial":
        """sum_k self^k / k!, requiring a zero constant term."""
        if self.constant_term() != 0:
            raise NonzeroConstantTerm("exp needs zero constant term")
        out = constant(1, self.nvars, self.bound)
        term = constant(1, self.nvars, self.bound)
        for k in range(1, self.bound + 1):
            term = Fraction(1, k) * (term * self)
            if term.is_zero():
                break
            out = out + term
        return out

    def inverse(self) -> "TruncatedPolynomial":
        """Multiplicative inverse, requiring a nonzero constant term."""
        c0 = self.constant_term()
        if c0 == 0:
            raise ZeroDivisionError("inverse needs nonzero constant term")
        if self.nvars == 1:
            # direct coefficient recurrence
            f = [Fraction(0)] * (self.bound + 1)
            for (e,), c in self.terms.items():
                f[e] = c
            inv = [1 / c0]
            for k in range(1, self.bound + 1):
                acc = Fraction(0)
                for j in range(1, k + 1):
                    if f[j]:
                        acc += f[j] * inv[k - j]
                inv.append(-acc / c0)
            return TruncatedPolynomial._fast(
                1, self.bound, {(k,): c for k, c in enumerate(inv) if c}
            )
        # self = c0 (1 - u);  1/self = (1/c0) sum u^k
        u = constant(1, self.nvars, self.bound) - Fraction(1, 1) / c0 * self
        out = constant(1, self.nvars, self.bound)
        term = constant(1, self.nvars, self.bound)
        for _ in range(self.bound):
            term = term * u
            if term.is_zero():
                break
            out = out + term
        return Fraction(1, 1) / c0 * out

    # -- structure queries ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def homogeneous_part(self, d: int) -> "TruncatedPolynomial":
        if d < 0:
            raise ValueError("degree must be non-negative")
        return TruncatedPolynomial._fast(
            self.nvars,
            self.bound,
            {e: c for e, c in self.terms.items() if sum(e) == d},
        )

    def truncate(self, bound: int) -> "TruncatedPolynomial":
        if bound < 0:
            raise ValueError("degree bound must be non-negative")
        return TruncatedPolynomial._fast(
            self.nvars,
            bound,
            {e: c for e, c in self.terms.items() if sum(e) <= bound},
        )

    def coefficient(self, expo: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(expo), Fraction(0))

    def evaluate(self, values: Sequence[Scalar]) -> Fraction:
        if len(values) != self.nvars:
            raise DimensionMismatch("evaluation point has wrong length")
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for expo, coeff in sorted(self.terms.items()):
            prod = coeff
            for v, e in zip(vals, expo):
                if e:
                    prod *= v**e
            total += prod
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- deterministic text form ------------------------------------------

    def render(self) -> str:
        """Graded-lex sorted text form, e.g. '1 + 2*h1*h2 - 1/2*h3^2'."""
        if not self.terms:
            return "0"
        pieces = []
        for expo, coeff in sorted(
            self.terms.items(),
            key=lambda ec: (sum(ec[0]), tuple(-x for x in ec[0])),
        ):
            mono = "*".join(
                f"h{i + 1}" if e == 1 else f"h{i + 1}^{e}"
                for i, e in enumerate(expo)
                if e
            )
            if mono:
                body = mono if abs(coeff) == 1 else f"{abs(coeff)}*{mono}"
            else:
                body = str(abs(coeff))
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def digest(self) -> str:
        """Short stable hash of the exact content."""
        h = hashlib.sha256(self.render().encode("utf-8")).hexdigest()
        return h[:12]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"TruncatedPolynomial({self.render()!r}, bound={self.bound})"


def zero(nvars: int, bound: int) -> TruncatedPolynomial:
    return TruncatedPolynomial(nvars, bound, {})


def constant(value: Scalar, nvars: int, bound: int) -> TruncatedPolynomial:
    return TruncatedPolynomial(nvars, bound, {(0,) * nvars: Fraction(value)})


def variable(i: int, nvars: int, bound: int) -> TruncatedPolynomial:
    expo = tuple(1 if j == i else 0 for j in range(nvars))
    return TruncatedPolynomial(nvars, bound, {expo: Fraction(1)})


def linear_form(
    K: CohomologyClass, Q: IntersectionForm, bound: int
) -> TruncatedPolynomial:
    """Degree-one polynomial <K, h> = sum_i (K^T gram)_i h_i."""
    Q._require_rank(K)
    row = Q.apply(K)
    n = Q.rank
    terms = {}
    for i, c in enumerate(row):
        if c:
            expo = tuple(1 if j == i else 0 for j in range(n))
            terms[expo] = Fraction(c)
    return TruncatedPolynomial(n, bound, terms)


def quadratic_form(Q: IntersectionForm, bound: int) -> TruncatedPolynomial:
    """Degree-two polynomial Q(h, h) = h^T gram h."""
    n = Q.rank
    terms: dict[tuple[int, ...], Fraction] = {}
    for i in range(n):
        for j in range(i, n):
            g = Q.gram[i][j]
            if not g:
                continue
            expo = [0] * n
            expo[i] += 1
            expo[j] += 1
            coeff = Fraction(g if i == j else 2 * g)
            key = tuple(expo)
            terms[key] = terms.get(key, Fraction(0)) + coeff
    return TruncatedPolynomial(n, bound, terms)
