"""Truncated graded power series with explicit precision tracking.

A :class:`GradedSeries` is a finite sum of terms ``c * t1^f1 ... tn^fn`` with
``c`` a :class:`~cobcalc.coeffs.Coeff`; only terms of total t-degree at most
``precision`` are stored, and ``precision`` records through which degree the
stored terms agree with the untruncated object.  All operations are pure and
every output precision is a fixed function of the input precisions:

==================  ======================================
add / sub           min of the inputs
mul                 min of the inputs
substitute          min over the series and all images
divide_exact(f, g)  min(prec f, prec g) - order(g)
==================  ======================================

Comparing two series of different precision raises
:class:`PrecisionMismatchError`; truncate explicitly first.  This is what
keeps degree loss in long operator chains visible instead of silently
producing false equalities.

A series is homogeneous of (cohomological) degree ``m`` when every term
satisfies ``t-degree - weight(b-part) == m``.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import Coeff, ONE, ZERO, monomial_weight
from .errors import (
    CoeffDivisionError,
    ConstantTermError,
    IndexOutOfRangeError,
    NotDivisibleError,
    NVarsMismatchError,
    PrecisionExhaustedError,
    PrecisionMismatchError,
)

TExp = tuple[int, ...]


def _as_coeff(c) -> Coeff:
    return c if isinstance(c, Coeff) else Coeff.from_value(c)


class GradedSeries:
    __slots__ = ("nvars", "precision", "terms", "_key")

    def __init__(self, nvars: int, precision: int, terms: dict):
        # Trusts canonical input: no zero coefficients, degrees <= precision.
        self.nvars = nvars
        self.precision = precision
        self.terms = terms
        self._key = None

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(nvars: int, precision: int) -> "GradedSeries":
        return GradedSeries(nvars, precision, {})

    @staticmethod
    def constant(c, nvars: int, precision: int) -> "GradedSeries":
        c = _as_coeff(c)
        return GradedSeries(nvars, precision, {(0,) * nvars: c} if c else {})

    @staticmethod
    def variable(i: int, nvars: int, precision: int) -> "GradedSeries":
        """The series ``t_{i+1}`` (zero-based index ``i``)."""
        if not 0 <= i < nvars:
            raise IndexOutOfRangeError(f"variable index {i} out of range")
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return GradedSeries(nvars, precision, {exp: ONE})

    @staticmethod
    def from_terms(nvars: int, precision: int, items) -> "GradedSeries":
        terms: dict = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != nvars:
                raise NVarsMismatchError("exponent length != nvars")
            if sum(exp) > precision:
                continue
            c = _as_coeff(c)
            s = terms.get(exp, ZERO) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return GradedSeries(nvars, precision, terms)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int | None:
        """Lowest t-degree of a nonzero term, or None for the zero series."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def t_component(self, k: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == k}

    def homogeneous_degree(self) -> int | None:
        """The common cohomological degree of all terms, or None if mixed.

        The zero series reports degree 0 by convention.
        """
        degs = {
            sum(e) - monomial_weight(b)
            for e, c in self.terms.items()
            for b in c.terms
        }
        if not degs:
            return 0
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self, degree: int | None = None) -> bool:
        d = self.homogeneous_degree()
        if d is None:
            return False
        return degree is None or not self.terms or d == degree

    def key(self):
        if self._key is None:
            self._key = (
                self.nvars,
                self.precision,
                tuple(sorted((e, c.key()) for e, c in self.terms.items())),
            )
        return self._key

    # -- equality ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        if self.nvars != other.nvars:
            raise NVarsMismatchError(
                f"cannot compare series in {self.nvars} and {other.nvars} variables"
            )
        if self.precision != other.precision:
            raise PrecisionMismatchError(
                f"comparison at mismatched precision {self.precision} != "
                f"{other.precision}; truncate explicitly first"
            )
        return self.terms == other.terms

    __hash__ = None

    def equals_truncated(self, other: "GradedSeries", d: int | None = None) -> bool:
        """Compare at the overlap precision (or an explicit ``d``)."""
        if d is None:
            d = min(self.precision, other.precision)
        return self.truncate(d) == other.truncate(d)

    # -- ring operations ---------------------------------------------------

    def truncate(self, d: int) -> "GradedSeries":
        d = min(d, self.precision)
        if d == self.precision:
            return self
        return GradedSeries(
            self.nvars, d, {e: c for e, c in self.terms.items() if sum(e) <= d}
        )

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        if self.nvars != other.nvars:
            raise NVarsMismatchError("add: nvars mismatch")
        p = min(self.precision, other.precision)
        out = {e: c for e, c in self.terms.items() if sum(e) <= p}
        for e, c in other.terms.items():
            if sum(e) > p:
                continue
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return GradedSeries(self.nvars, p, out)

    def __neg__(self) -> "GradedSeries":
        return GradedSeries(
            self.nvars, self.precision, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + (-other)

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        if self.nvars != other.nvars:
            raise NVarsMismatchError("mul: nvars mismatch")
        p = min(self.precision, other.precision)
        out: dict = {}
        bdeg = [(sum(e), e, c) for e, c in other.terms.items()]
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > p:
                continue
            for d2, e2, c2 in bdeg:
                if d1 + d2 > p:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return GradedSeries(self.nvars, p, out)

    def scale(self, c) -> "GradedSeries":
        c = _as_coeff(c)
        if not c:
            return GradedSeries.zero(self.nvars, self.precision)
        if c == 1:
            return self
        out: dict = {}
        for e, v in self.terms.items():
            s = v * c
            if s:
                out[e] = s
        return GradedSeries(self.nvars, self.precision, out)

    def __pow__(self, n: int) -> "GradedSeries":
        if n < 0:
            raise ValueError("negative power of a series")
        acc = GradedSeries.constant(1, self.nvars, self.precision)
        for _ in range(n):
            acc = acc * self
        return acc

    def specialize_b_zero(self) -> "GradedSeries":
        """Set every coefficient generator to zero (additive specialization)."""
        out: dict = {}
        for e, c in self.terms.items():
            s = c.specialize_b_zero()
            if s:
                out[e] = s
        return GradedSeries(self.nvars, self.precision, out)

    # -- substitution --------------------------------------------------------

    def substitute(self, images: list["GradedSeries"]) -> "GradedSeries":
        return Substitution(images).apply(self)

    # -- wire format ---------------------------------------------------------

    def to_json(self, ngens: int | None = None) -> dict:
        if ngens is None:
            ngens = max(
                (len(b) for c in self.terms.values() for b in c.terms), default=0
            )
        rows = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            for b in sorted(c.terms):
                v = c.terms[b]
                rows.append(
                    {
                        "b": list(b) + [0] * (ngens - len(b)),
                        "t": list(e),
                        "c": str(v),
                    }
                )
        return {"nvars": self.nvars, "precision": self.precision, "terms": rows}

    @staticmethod
    def from_json(obj: dict) -> "GradedSeries":
        nvars = obj["nvars"]
        precision = obj["precision"]
        terms: dict = {}
        for row in obj["terms"]:
            e = tuple(row["t"])
            c = row["c"]
            v = Fraction(c) if "/" in c else int(c)
            cur = terms.get(e, ZERO) + Coeff.monomial(row["b"], v)
            if cur:
                terms[e] = cur
            else:
                terms.pop(e, None)
        return GradedSeries(nvars, precision, terms)

    def __repr__(self):
        if not self.terms:
            return f"<0 (nvars={self.nvars}, prec={self.precision})>"
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = "*".join(
                f"t{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            c = repr(self.terms[e])
            cs = c if "+" not in c else f"({c})"
            bits.append(cs if not mono else f"{cs}*{mono}" if c != "1" else mono)
        return f"<{' + '.join(bits)} + O(deg {self.precision + 1})>"


class Substitution:
    """Simultaneous substitution ``t_i -> images[i]``.

    Every image must have positive order so that degree-``d`` output terms
    only depend on degree-``<= d`` input terms.  Monomial images are memoised,
    so reusing one Substitution across many series amortises the series
    products.
    """

    def __init__(self, images: list[GradedSeries]):
        if not images:
            raise NVarsMismatchError("substitution needs at least one image")
        m = images[0].nvars
        for img in images:
            if img.nvars != m:
                raise NVarsMismatchError("substitution images disagree on nvars")
            if (0,) * m in img.terms:
                raise ConstantTermError("substitution image has a constant term")
        self.images = list(images)
        self.nvars_in = len(images)
        self.nvars_out = m
        self.precision = min(img.precision for img in images)
        self._memo: dict[TExp, GradedSeries] = {
            (0,) * self.nvars_in: GradedSeries.constant(1, m, self.precision)
        }

    def _monomial_image(self, exp: TExp) -> GradedSeries:
        got = self._memo.get(exp)
        if got is not None:
            return got
        i = next(j for j, e in enumerate(exp) if e)
        prev = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
        img = self._monomial_image(prev) * self.images[i]
        self._memo[exp] = img
        return img

    def apply(self, f: GradedSeries) -> GradedSeries:
        if f.nvars != self.nvars_in:
            raise NVarsMismatchError(
                f"series has {f.nvars} variables, substitution expects {self.nvars_in}"
            )
        p = min(f.precision, self.precision)
        acc: dict = {}
        for e, c in f.terms.items():
            if sum(e) > p:
                continue
            for ei, ci in self._monomial_image(e).terms.items():
                if sum(ei) > p:
                    continue
                s = acc.get(ei, ZERO) + ci * c
                if s:
                    acc[ei] = s
                else:
                    acc.pop(ei, None)
        return GradedSeries(self.nvars_out, p, acc)


# -- exact division ----------------------------------------------------------


def _divide_homogeneous(num: dict, den: dict, rational: bool, degree: int) -> dict:
    """Exact division of homogeneous t-forms with Coeff coefficients.

    Long division by the lex-leading term; over a domain this succeeds iff the
    division is exact, and the first failing step certifies non-divisibility.
    """
    lead_d = max(den)
    lc_d = den[lead_d]
    rem = dict(num)
    out: dict = {}
    while rem:
        lead_n = max(rem)
        if any(a < b for a, b in zip(lead_n, lead_d)):
            raise NotDivisibleError(
                f"nonzero remainder at degree {degree}", degree=degree
            )
        try:
            q = rem[lead_n].divide_exact(lc_d, rational)
        except CoeffDivisionError as exc:
            raise NotDivisibleError(
                f"coefficient not divisible at degree {degree}: {exc}",
                degree=degree,
            ) from exc
        mono = tuple(a - b for a, b in zip(lead_n, lead_d))
        cur = out.get(mono, ZERO) + q
        if cur:
            out[mono] = cur
        else:
            out.pop(mono, None)
        for ed, cd in den.items():
            e = tuple(a + b for a, b in zip(mono, ed))
            s = rem.get(e, ZERO) - q * cd
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return out


def divide_exact(
    f: GradedSeries, g: GradedSeries, rational: bool = False
) -> GradedSeries:
    """Return q with ``q * g == f`` through degree ``min(prec f, prec g) - order(g)``.

    Raises :class:`NotDivisibleError` (carrying the lowest offending degree)
    when no such q exists within the precision window.
    """
    if f.nvars != g.nvars:
        raise NVarsMismatchError("divide: nvars mismatch")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero series")
    m = g.order()
    horizon = min(f.precision, g.precision)
    out_prec = horizon - m
    if out_prec < 0:
        raise PrecisionExhaustedError(
            "no precision left to divide by an order-%d series" % m
        )
    if f.is_zero():
        return GradedSeries.zero(f.nvars, out_prec)
    if f.order() < m:
        raise NotDivisibleError(
            f"order of numerator {f.order()} below order of divisor {m}",
            degree=f.order(),
        )
    g_low = g.t_component(m)
    rem = {e: c for e, c in f.terms.items() if sum(e) <= horizon}
    q_terms: dict = {}
    for k in range(0, out_prec + 1):
        num_k = {e: c for e, c in rem.items() if sum(e) == m + k}
        if not num_k:
            continue
        qk = _divide_homogeneous(num_k, g_low, rational, degree=m + k)
        for eq, cq in qk.items():
            cur = q_terms.get(eq, ZERO) + cq
            if cur:
                q_terms[eq] = cur
            else:
                q_terms.pop(eq, None)
        # knock q_k * g out of the remainder
        for eq, cq in qk.items():
            for eg, cg in g.terms.items():
                e = tuple(a + b for a, b in zip(eq, eg))
                if sum(e) > horizon:
                    continue
                s = rem.get(e, ZERO) - cq * cg
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
    return GradedSeries(f.nvars, out_prec, q_terms)


# -- symmetric functions -------------------------------------------------------


def elementary_symmetric(i: int, vars: list[GradedSeries]) -> GradedSeries:
    """The i-th elementary symmetric function of the given series, 1 <= i <= n."""
    n = len(vars)
    if not 1 <= i <= n:
        raise IndexOutOfRangeError(f"elementary symmetric index {i} not in 1..{n}")
    nv, p = vars[0].nvars, min(v.precision for v in vars)
    # e_i via the product generating function, one variable at a time:
    # layer[k] = e_k(v_1..v_j) after processing j variables.
    layer = [GradedSeries.constant(1, nv, p)] + [
        GradedSeries.zero(nv, p) for _ in range(i)
    ]
    for v in vars:
        for k in range(min(i, n), 0, -1):
            layer[k] = layer[k] + layer[k - 1] * v
    return layer[i]


def complete_homogeneous(k: int, vars: list[GradedSeries]) -> GradedSeries:
    """The sum of all degree-k monomials in the given series (h_k)."""
    if k < 0:
        raise IndexOutOfRangeError("complete homogeneous index must be >= 0")
    nv, p = vars[0].nvars, min(v.precision for v in vars)
    if k == 0:
        return GradedSeries.constant(1, nv, p)
    if not vars:
        return GradedSeries.zero(nv, p)
    # h_k(v1..vm) = sum_j v1^j h_{k-j}(v2..vm)
    out = GradedSeries.zero(nv, p)
    head, tail = vars[0], vars[1:]
    if not tail:
        return head ** k
    power = GradedSeries.constant(1, nv, p)
    for j in range(0, k + 1):
        out = out + power * complete_homogeneous(k - j, tail)
        power = power * head
    return out
