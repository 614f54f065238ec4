"""Scalars of the coefficient ring: polynomials in graded generators b1, b2, ...

A monomial ``b1^e1 * b2^e2 * ...`` is keyed by its exponent tuple with trailing
zeros trimmed, so coefficients built under laws with different generator counts
interoperate.  The generator ``b_i`` carries cohomological degree ``-i``; the
*weight* of a monomial is ``sum(i * e_i)``, so degree = -weight.

Coefficient values are exact: Python ints, or Fractions in rational mode.
Values that are integral are always normalised back to int, which keeps the
representation canonical regardless of mode.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CoeffDivisionError

BExp = tuple[int, ...]


def trim(exp) -> BExp:
    exp = tuple(exp)
    while exp and exp[-1] == 0:
        exp = exp[:-1]
    return exp


def monomial_weight(exp: BExp) -> int:
    return sum((i + 1) * e for i, e in enumerate(exp))


def _mul_exp(a: BExp, b: BExp) -> BExp:
    if not b:
        return a
    if not a:
        return b
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def _norm_value(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


class Coeff:
    """An element of the coefficient ring, as a sparse b-monomial -> value map."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        # The constructor trusts its input to be canonical (trimmed keys, no
        # zero values, normalised values); use from_value/from_terms otherwise.
        self.terms = terms

    @staticmethod
    def from_value(v) -> "Coeff":
        v = _norm_value(Fraction(v) if not isinstance(v, int) else v)
        return Coeff({(): v}) if v else Coeff({})

    @staticmethod
    def from_terms(items) -> "Coeff":
        terms: dict = {}
        for exp, v in items:
            key = trim(exp)
            v = _norm_value(v)
            if v:
                s = terms.get(key, 0) + v
                s = _norm_value(s)
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return Coeff(terms)

    @staticmethod
    def monomial(exp, v=1) -> "Coeff":
        v = _norm_value(v)
        return Coeff({trim(exp): v}) if v else Coeff({})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Coeff") -> "Coeff":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = _norm_value(out.get(k, 0) + v)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Coeff(out)

    def __neg__(self) -> "Coeff":
        return Coeff({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Coeff") -> "Coeff":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if len(self.terms) == 1 and () in self.terms:
            return other.scale(self.terms[()])
        if len(other.terms) == 1 and () in other.terms:
            return self.scale(other.terms[()])
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _mul_exp(k1, k2)
                s = _norm_value(out.get(k, 0) + v1 * v2)
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Coeff(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Coeff":
        if c == 0:
            return ZERO
        if c == 1:
            return self
        return Coeff({k: _norm_value(v * c) for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Coeff):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {(): _norm_value(other)}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def key(self):
        return tuple(sorted(self.terms.items()))

    def constant(self):
        """The b-free part, as an int or Fraction."""
        return self.terms.get((), 0)

    def max_weight(self) -> int:
        return max((monomial_weight(k) for k in self.terms), default=0)

    def weights(self) -> set:
        return {monomial_weight(k) for k in self.terms}

    def specialize_b_zero(self) -> "Coeff":
        """Kill every positive-weight monomial (the additive specialization)."""
        c = self.terms.get((), 0)
        return Coeff({(): c}) if c else ZERO

    def divide_exact(self, den: "Coeff", rational: bool) -> "Coeff":
        """Exact division in the coefficient ring.

        Long division by leading terms under lex order on exponent tuples; in
        a domain this succeeds iff the division is exact.  In integer mode the
        leading-value divisions must be exact as well.
        """
        if not den.terms:
            raise CoeffDivisionError("division by zero coefficient")
        if not self.terms:
            return ZERO
        lead_d = max(den.terms)
        lc_d = den.terms[lead_d]
        rem = dict(self.terms)
        out: dict = {}
        while rem:
            lead_n = max(rem)
            if len(lead_n) < len(lead_d) or any(
                a < b for a, b in zip(lead_n, lead_d)
            ):
                raise CoeffDivisionError("leading monomial not divisible")
            lc_n = rem[lead_n]
            if rational:
                q = _norm_value(Fraction(lc_n) / lc_d)
            else:
                q, r = divmod(lc_n, lc_d)
                if r:
                    raise CoeffDivisionError("leading value not divisible")
            kq = trim(
                tuple(a - b for a, b in zip(lead_n, lead_d)) + lead_n[len(lead_d):]
            )
            out[kq] = _norm_value(out.get(kq, 0) + q)
            if not out[kq]:
                del out[kq]
            for kd, vd in den.terms.items():
                k = _mul_exp(kq, kd)
                s = _norm_value(rem.get(k, 0) - q * vd)
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return Coeff(out)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            v = self.terms[k]
            mono = "*".join(
                f"b{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(k)
                if e
            )
            bits.append(f"{v}" if not mono else f"{v}*{mono}" if v != 1 else mono)
        return " + ".join(bits)


ZERO = Coeff({})
ONE = Coeff({(): 1})
