"""Formal group law contexts: the law itself, its inverse series, k-series,
and the kappa series, all truncated to a working degree.

The universal law over N generators is realised inside ``Z[b1..bN]`` as
``F = B(Binv(x) + Binv(y))`` for ``B(u) = u + b1 u^2 + ... + bN u^(N+1)``;
this embedding is faithful through t-degree ``N + 1``, hence the requirement
``N >= D - 1``.  Identities proved in this image hold for the universal law.

Univariate caches are computed at internal precision ``D + 1`` so that kappa
(a quotient by an order-2 series) is trusted through degree ``D - 1``, which
is exactly what one application of a Demazure operator consumes.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass

from .coeffs import Coeff
from .errors import (
    ConfigError,
    InsufficientGeneratorsError,
    InternalConsistencyError,
    NotDivisibleError,
    NVarsMismatchError,
    PrecisionExhaustedError,
    PrecisionTooSmallError,
)
from .linalg import mat_inverse_int, unimodular_with_first_column
from .series import GradedSeries, Substitution, divide_exact

CACHE_FORMAT = 1


@dataclass(frozen=True)
class LawSpec:
    kind: str  # "additive" | "multiplicative" | "universal"
    ngens: int = 0
    scale: int = 1  # multiplicative only: F = x + y - scale*b1*x*y

    @staticmethod
    def additive() -> "LawSpec":
        return LawSpec("additive", 0)

    @staticmethod
    def multiplicative(scale: int = 1) -> "LawSpec":
        return LawSpec("multiplicative", 1, scale)

    @staticmethod
    def universal(n: int) -> "LawSpec":
        return LawSpec("universal", n)

    @staticmethod
    def parse(text: str) -> "LawSpec":
        name, _, arg = text.strip().partition(":")
        try:
            if name == "additive":
                if arg:
                    raise ConfigError("additive law takes no parameter")
                return LawSpec.additive()
            if name == "multiplicative":
                return LawSpec.multiplicative(int(arg) if arg else 1)
            if name == "universal":
                if not arg:
                    raise ConfigError(
                        "universal law needs a generator count, e.g. universal:4"
                    )
                return LawSpec.universal(int(arg))
        except ValueError:
            raise ConfigError(f"cannot parse law parameter in {text!r}") from None
        raise ConfigError(f"unknown law {text!r}")

    def canonical(self) -> str:
        if self.kind == "additive":
            return "additive"
        if self.kind == "multiplicative":
            return f"multiplicative:{self.scale}"
        return f"universal:{self.ngens}"


def _uvar(precision: int) -> GradedSeries:
    return GradedSeries.variable(0, 1, precision)


def _solve_fixed_point(equation, start: GradedSeries, precision: int) -> GradedSeries:
    """Solve equation(s) == 0 for s by degreewise correction.

    ``equation`` must have unit sensitivity in the sense that adding a
    homogeneous degree-d term h to s changes equation(s) by h + O(>d).
    """
    s = start
    for d in range(2, precision + 1):
        residual = equation(s)
        rd = residual.t_component(d)
        if rd:
            s = s - GradedSeries(1, precision, rd)
    return s


class FGLContext:
    """A formal group law with cached series, immutable after construction."""

    def __init__(self, law: LawSpec, precision: int, rational: bool = False):
        if precision < 1:
            raise PrecisionTooSmallError("precision must be at least 1")
        if law.kind == "universal" and law.ngens < precision - 1:
            raise InsufficientGeneratorsError(
                f"universal law with {law.ngens} generators is not faithful at "
                f"precision {precision}; need at least {precision - 1}"
            )
        self.law = law
        self.precision = precision
        self.ngens = law.ngens
        self.rational = rational
        self._internal = precision + 1
        self._build()
        self._k_cache: dict[int, GradedSeries] = {}
        self._fsum_cache: dict = {}
        self._subst_cache: dict = {}
        self._char_cache: dict = {}

    # -- construction -------------------------------------------------------

    def _build(self):
        p = self._internal
        x = GradedSeries.variable(0, 2, p)
        y = GradedSeries.variable(1, 2, p)
        law = self.law
        if law.kind == "additive":
            f_int = x + y
        elif law.kind == "multiplicative":
            beta = Coeff.monomial((1,), law.scale)
            f_int = x + y - (x * y).scale(beta)
        else:
            b = _uvar(p)
            for i in range(1, law.ngens + 1):
                b = b + (_uvar(p) ** (i + 1)).scale(Coeff.monomial((0,) * (i - 1) + (1,)))
            binv = _solve_fixed_point(
                lambda s: b.substitute([s]) - _uvar(p), _uvar(p), p
            )
            if not (b.substitute([binv]) - _uvar(p)).is_zero():
                raise InternalConsistencyError("compositional inverse failed")
            self._b_series = b
            self._b_inverse = binv
            bx = binv.substitute([x])
            by = binv.substitute([y])
            f_int = b.substitute([bx + by])
        self._law_int = f_int
        self.group_law = f_int.truncate(self.precision)

        # inverse: the unique series with F(x, inv(x)) = 0
        u = _uvar(p)
        if law.kind == "additive":
            inv_int = -u
        elif law.kind == "universal":
            inv_int = self._b_series.substitute([-self._b_inverse])
        else:
            inv_int = _solve_fixed_point(
                lambda s: f_int.substitute([u, s]), -u, p
            )
        if not f_int.substitute([u, inv_int]).is_zero():
            raise InternalConsistencyError("inverse series does not invert")
        self._inverse_int = inv_int
        self.inverse = inv_int.truncate(self.precision)

        # kappa = (x + inv(x)) / (x * inv(x)); exact by construction
        num = u + inv_int
        den = u * inv_int
        try:
            self.kappa = divide_exact(num, den)
        except NotDivisibleError as exc:  # pragma: no cover - defect signal
            raise InternalConsistencyError(
                "kappa division not exact"
            ) from exc
        check = (self.kappa * den).truncate(self.kappa.precision)
        if check != num.truncate(self.kappa.precision):
            raise InternalConsistencyError("kappa identity failed")

    # -- series accessors -----------------------------------------------------

    def k_series(self, k: int) -> GradedSeries:
        got = self._k_cache.get(k)
        if got is not None:
            return got
        p = self.precision
        if k == 0:
            out = GradedSeries.zero(1, p)
        elif k == 1:
            out = _uvar(p)
        elif k > 1:
            out = self.group_law.substitute([self.k_series(k - 1), _uvar(p)])
        else:
            out = self.inverse.substitute([self.k_series(-k)])
        self._k_cache[k] = out
        return out

    def formal_sum(self, coeffs) -> GradedSeries:
        """The first Chern class x_chi of the character with these coordinates."""
        coeffs = tuple(int(c) for c in coeffs)
        got = self._fsum_cache.get(coeffs)
        if got is not None:
            return got
        n = len(coeffs)
        p = self.precision
        acc = GradedSeries.zero(n, p)
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            xi = self.k_series(c).substitute([GradedSeries.variable(i, n, p)])
            acc = xi if acc.is_zero() else self.group_law.substitute([acc, xi])
        self._fsum_cache[coeffs] = acc
        return acc

    def substitution(self, images: list[GradedSeries]) -> Substitution:
        key = tuple(img.key() for img in images)
        got = self._subst_cache.get(key)
        if got is None:
            got = Substitution(images)
            self._subst_cache[key] = got
        return got

    # -- division by a character class ----------------------------------------

    def character_transform(self, chi: tuple):
        got = self._char_cache.get(chi)
        if got is not None:
            return got
        n = len(chi)
        u = unimodular_with_first_column(list(chi))
        uinv = mat_inverse_int(u)
        fwd = self.substitution(
            [self.formal_sum([uinv[j][i] for j in range(n)]) for i in range(n)]
        )
        back = self.substitution(
            [self.formal_sum([u[i][j] for i in range(n)]) for j in range(n)]
        )
        self._char_cache[chi] = (fwd, back)
        return fwd, back

    def divide_by_character(self, f: GradedSeries, chi) -> GradedSeries:
        """Exact division of f by x_chi for a primitive character chi.

        Changes lattice basis so chi becomes the first basis character; in the
        new coordinates x_chi is the plain variable t1', so divisibility is a
        support condition and needs no coefficient divisions at all.
        """
        chi = tuple(int(c) for c in chi)
        if f.nvars != len(chi):
            raise NVarsMismatchError("character rank != series nvars")
        if f.precision < 1:
            raise PrecisionExhaustedError("no precision left for the division")
        if f.is_zero():
            return GradedSeries.zero(f.nvars, f.precision - 1)
        fwd, back = self.character_transform(chi)
        g = fwd.apply(f)
        bad = [sum(e) for e in g.terms if e[0] == 0]
        if bad:
            raise NotDivisibleError(
                f"not divisible by the class of {chi}", degree=min(bad)
            )
        shifted = GradedSeries(
            g.nvars,
            g.precision - 1,
            {(e[0] - 1,) + e[1:]: c for e, c in g.terms.items()},
        )
        return back.apply(shifted)

    # -- cache file support -----------------------------------------------------

    def cache_key(self) -> str:
        text = f"cobcalc-fgl|{CACHE_FORMAT}|{self.law.canonical()}|{self.precision}"
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def to_cache_json(self) -> dict:
        series = {
            "F": self._law_int.to_json(self.ngens),
            "iota": self._inverse_int.to_json(self.ngens),
            "kappa": self.kappa.to_json(self.ngens),
        }
        for k, s in sorted(self._k_cache.items()):
            series[f"k_{k}"] = s.to_json(self.ngens)
        return {
            "format": CACHE_FORMAT,
            "law": self.law.canonical(),
            "precision": self.precision,
            "series": series,
        }

    def save_cache(self, cache_dir: str) -> str:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, self.cache_key() + ".json")
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(self.to_cache_json(), fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
        os.replace(tmp, path)
        return path

    def _adopt_cache(self, obj: dict) -> bool:
        if obj.get("format") != CACHE_FORMAT:
            return False
        if obj.get("law") != self.law.canonical():
            return False
        if obj.get("precision") != self.precision:
            return False
        series = obj["series"]
        for name, data in series.items():
            if name.startswith("k_"):
                self._k_cache[int(name[2:])] = GradedSeries.from_json(data)
        return True


def build_law(
    spec: LawSpec | str,
    precision: int,
    rational: bool = False,
    cache_dir: str | None = None,
) -> FGLContext:
    """Construct (or load from cache and revalidate) a formal group law context.

    Caches are advisory: a stale or mismatched file is regenerated, never
    trusted across law or precision changes.
    """
    if isinstance(spec, str):
        spec = LawSpec.parse(spec)
    ctx = FGLContext(spec, precision, rational=rational)
    if cache_dir:
        path = os.path.join(cache_dir, ctx.cache_key() + ".json")
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    ctx._adopt_cache(json.load(fh))
            except (OSError, ValueError, KeyError):
                pass
        ctx.save_cache(cache_dir)
    return ctx


def inverse_series(ctx: FGLContext) -> GradedSeries:
    """The series ι with F(x, ι(x)) = 0; ι = -x + higher order."""
    return ctx.inverse


def k_series(ctx: FGLContext, k: int) -> GradedSeries:
    """The k-fold formal sum [k](x); [-k] = ι([k](x)), [0] = 0."""
    return ctx.k_series(k)


def kappa_series(ctx: FGLContext) -> GradedSeries:
    """κ = (x + ι(x)) / (x ι(x)), an honest series trusted through D - 1."""
    return ctx.kappa


def formal_sum(ctx: FGLContext, coeffs) -> GradedSeries:
    return ctx.formal_sum(coeffs)


def fgl_axiom_report(ctx: FGLContext) -> list[dict]:
    """Check the defining identities of the cached law at working precision."""
    d = ctx.precision
    x = GradedSeries.variable(0, 2, d)
    y = GradedSeries.variable(1, 2, d)
    zero2 = GradedSeries.zero(2, d)
    f = ctx.group_law
    checks = []

    def add(name, ok):
        checks.append({"name": name, "pass": bool(ok)})

    add("unit_left", f.substitute([x, zero2]) == x)
    add("unit_right", f.substitute([zero2, y]) == y)
    add("commutative", f.substitute([y, x]) == f)
    t1 = GradedSeries.variable(0, 3, d)
    t2 = GradedSeries.variable(1, 3, d)
    t3 = GradedSeries.variable(2, 3, d)
    f12 = f.substitute([t1, t2])
    f23 = f.substitute([t2, t3])
    add(
        "associative",
        f.substitute([f12, t3]) == f.substitute([t1, f23]),
    )
    u = _uvar(d)
    add("inverse", f.substitute([u, ctx.inverse]).is_zero())
    kap = ctx.kappa
    lhs = kap * u.truncate(kap.precision) * ctx.inverse.truncate(kap.precision)
    rhs = (u + ctx.inverse).truncate(kap.precision)
    add("kappa_identity", lhs == rhs)
    ok = True
    for k, m in [(1, 1), (2, 1), (-1, 2), (3, -2), (-3, -1), (4, 4)]:
        lhs = ctx.k_series(k + m)
        rhs = f.substitute([ctx.k_series(k), ctx.k_series(m)])
        ok = ok and lhs == rhs
    add("k_series_additive", ok)
    if ctx.law.kind == "universal":
        addctx = FGLContext(LawSpec.additive(), ctx.precision)
        add(
            "specializes_to_additive",
            f.specialize_b_zero() == addctx.group_law
            and ctx.inverse.specialize_b_zero() == addctx.inverse
            and ctx.kappa.specialize_b_zero() == addctx.kappa,
        )
    return checks
