"""Exact expansion of the Poincare polynomial of the rank-r SL(2,C) quotient.

All arithmetic is over ``fractions.Fraction``; floating point is forbidden
here because the final step is an exact polynomial division whose remainder
must vanish identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class NonPolynomial(ValueError):
    """Exact division left a remainder or a non-integer coefficient."""


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coefficients[d] is the degree-d coefficient."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for d, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            elif d == 1:
                terms.append(f"{c}t" if c != 1 else "t")
            else:
                terms.append(f"{c}t^{d}" if c != 1 else f"t^{d}")
        return " + ".join(terms) if terms else "0"


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _padd(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _pscale(a, s):
    return _trim([c * s for c in a])


def _ppow(a, k):
    out = [Fraction(1)]
    for _ in range(k):
        out = _pmul(out, a)
    return out


def _pdivmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        coeff = num[i + len(den) - 1] / lead
        q[i] = coeff
        if coeff:
            for j, c in enumerate(den):
                num[i + j] -= coeff * c
    return _trim(q), _trim(num)


def _F(*ints):
    return [Fraction(v) for v in ints]


def baird_poly(r: int) -> IntPolynomial:
    """Poincare polynomial of the rank-r SL(2,C) quotient, expanded exactly.

    1 + t - t(1+t^3)^r/(1-t^4) + (t^3/2)((1+t)^r/(1-t^2) - (1-t)^r/(1+t^2)),
    combined over the common denominator 2(1-t^4) and divided exactly.
    Raises NonPolynomial if the division leaves a remainder (a transcription
    error, not a math fact).
    """
    if r < 1:
        raise ValueError("rank must be >= 1")
    one_plus_t = _F(1, 1)
    one_minus_t = _F(1, -1)
    one_plus_t2 = _F(1, 0, 1)
    one_minus_t2 = _F(1, 0, -1)
    one_minus_t4 = _F(1, 0, 0, 0, -1)
    t1 = _F(0, 1)
    t3 = _F(0, 0, 0, 1)

    # numerator of P over D = 2 (1 - t^4):
    num = _pscale(_pmul(one_plus_t, one_minus_t4), 2)              # 2(1+t)(1-t^4)
    num = _padd(num, _pscale(_pmul(t1, _ppow(_F(1, 0, 0, 1), r)), -2))  # -2t(1+t^3)^r
    num = _padd(num, _pmul(t3, _pmul(_ppow(one_plus_t, r), one_plus_t2)))
    num = _padd(num, _pscale(_pmul(t3, _pmul(_ppow(one_minus_t, r), one_minus_t2)), -1))
    den = _pscale(one_minus_t4, 2)

    q, rem = _pdivmod(num, den)
    if any(c != 0 for c in rem):
        raise NonPolynomial(f"division remainder {rem} for r={r}")
    coeffs = []
    for c in q:
        if c.denominator != 1:
            raise NonPolynomial(f"non-integer coefficient {c} for r={r}")
        coeffs.append(int(c))
    return IntPolynomial(tuple(coeffs) if coeffs else (0,))


def surface_counterexample_polys():
    """The genus-2 odd-degree Poincare polynomials of the two moduli spaces.

    Rank-2 fixed-determinant vector bundles vs Higgs bundles; they differ,
    which is what rules out a deformation retraction for twisted surface
    groups.
    """
    bundles = IntPolynomial((1, 0, 1, 4, 1, 0, 1))
    higgs = IntPolynomial((1, 0, 1, 4, 2, 34, 2))
    return bundles, higgs, bundles.coefficients != higgs.coefficients
