"""Moment-graph models: fixed points with character-labelled edges, the
congruence (membership) test, line bundle classes, graded basis solvers, and
the tensor-product model with its comparison map.

A class on a graph is a tuple of series, one per vertex; it is a member of
the model ring when for every edge (v, w, chi) the difference of the two
entries is exactly divisible by the character class x_chi.
"""

from __future__ import annotations

from .coeffs import Coeff, ZERO
from .errors import (
    NotDivisibleError,
    NVarsMismatchError,
    PrecisionExhaustedError,
    UnsupportedTypeError,
)
from .linalg import canonical_sign, kernel_int
from .roots import RootDatum, WeylElement, _mat_mul, weyl_act
from .series import GradedSeries, complete_homogeneous, elementary_symmetric

# When true, every produced class is membership-checked (slow; used in tests).
DEBUG_VALIDATE = False


class GKMGraph:
    """Vertices, labelled edges, and the bound law context.

    ``weyl_vertices`` (when present) identifies vertices with Weyl cosets so
    the group can act; ``element_to_vertex`` sends *every* Weyl matrix to the
    vertex of its coset.
    """

    def __init__(
        self,
        ctx,
        ids,
        edges,
        base: int = 0,
        datum: RootDatum | None = None,
        weyl_vertices=None,
        element_to_vertex=None,
        nvars: int | None = None,
        kind: str = "generic",
    ):
        self.ctx = ctx
        self.precision = ctx.precision
        self.ids = tuple(ids)
        self.edges = tuple(
            (i, j, tuple(chi)) for (i, j, chi) in edges
        )
        self.base = base
        self.datum = datum
        self.weyl_vertices = tuple(weyl_vertices) if weyl_vertices else None
        self.element_to_vertex = element_to_vertex
        self.nvars = nvars if nvars is not None else (datum.rank if datum else 0)
        self.kind = kind
        for (i, j, chi) in self.edges:
            assert any(chi), "edge character must be nonzero"

    @property
    def nvertices(self) -> int:
        return len(self.ids)

    def act_vertex(self, w: WeylElement, i: int) -> int:
        """Left translation: the vertex of w * (coset of vertex i)."""
        if self.element_to_vertex is None or self.weyl_vertices is None:
            raise UnsupportedTypeError("graph has no Weyl vertex action")
        return self.element_to_vertex[_mat_mul(w.matrix, self.weyl_vertices[i].matrix)]

    def act_vertex_right(self, i: int, s: WeylElement) -> int:
        """Right multiplication, used for the {w, w s_alpha} edge pairing."""
        if self.element_to_vertex is None or self.weyl_vertices is None:
            raise UnsupportedTypeError("graph has no Weyl vertex action")
        return self.element_to_vertex[_mat_mul(self.weyl_vertices[i].matrix, s.matrix)]

    def to_json(self) -> dict:
        return {
            "vertices": list(self.ids),
            "base": self.ids[self.base],
            "edges": [
                {"v": self.ids[i], "w": self.ids[j], "chi": list(chi)}
                for (i, j, chi) in self.edges
            ],
        }


class GKMClass:
    __slots__ = ("graph", "values", "precision")

    def __init__(self, graph: GKMGraph, values):
        values = tuple(values)
        if len(values) != graph.nvertices:
            raise NVarsMismatchError("one series per vertex required")
        p = min(v.precision for v in values)
        self.graph = graph
        self.values = tuple(v.truncate(p) for v in values)
        self.precision = p

    def __add__(self, other: "GKMClass") -> "GKMClass":
        return GKMClass(self.graph, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "GKMClass") -> "GKMClass":
        return GKMClass(self.graph, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "GKMClass":
        return GKMClass(self.graph, [-a for a in self.values])

    def __mul__(self, other: "GKMClass") -> "GKMClass":
        return GKMClass(self.graph, [a * b for a, b in zip(self.values, other.values)])

    def scale_series(self, g: GradedSeries) -> "GKMClass":
        return GKMClass(self.graph, [a * g for a in self.values])

    def truncate(self, d: int) -> "GKMClass":
        return GKMClass(self.graph, [a.truncate(d) for a in self.values])

    def specialize_b_zero(self) -> "GKMClass":
        return GKMClass(self.graph, [a.specialize_b_zero() for a in self.values])

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def restrict(self, i: int) -> GradedSeries:
        return self.values[i]

    def __eq__(self, other):
        if not isinstance(other, GKMClass):
            return NotImplemented
        if self.graph is not other.graph:
            raise NVarsMismatchError("classes live on different graphs")
        return all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None

    def to_json(self, ngens: int | None = None) -> dict:
        if ngens is None:
            ngens = self.graph.ctx.ngens
        return {
            vid: v.to_json(ngens) for vid, v in zip(self.graph.ids, self.values)
        }

    def __repr__(self):
        return f"GKMClass({dict(zip(self.graph.ids, self.values))!r})"


def constant_class(graph: GKMGraph, f) -> GKMClass:
    if not isinstance(f, GradedSeries):
        f = GradedSeries.constant(f, graph.nvars, graph.precision)
    return GKMClass(graph, [f] * graph.nvertices)


def _validate(cls: GKMClass) -> GKMClass:
    if DEBUG_VALIDATE:
        ok, witness = membership(cls, cls.graph)
        assert ok, f"produced class violates congruences: {witness}"
    return cls


# -- graphs ------------------------------------------------------------------------


def flag_gkm(datum: RootDatum, ctx, precision: int | None = None) -> GKMGraph:
    """The flag moment graph: vertices are Weyl elements, one edge {w, w s_beta}
    per positive root beta, labelled by w(beta)."""
    if precision is not None and precision != ctx.precision:
        raise PrecisionExhaustedError(
            "graph precision is fixed by the law context"
        )
    weyl = datum.weyl()
    index = {w.matrix: i for i, w in enumerate(weyl)}
    edges = {}
    for i, w in enumerate(weyl):
        for beta in datum.positive_roots:
            m2 = _mat_mul(
                w.matrix, datum._reflection_from(beta, datum.coroot_of[beta])
            )
            j = index[m2]
            if i < j:
                chi = canonical_sign(w.act(beta))
                prev = edges.get((i, j))
                if prev is None:
                    edges[(i, j)] = chi
                else:
                    assert prev == chi, "conflicting edge characters"
    edge_list = [(i, j, chi) for (i, j), chi in sorted(edges.items())]
    return GKMGraph(
        ctx,
        ids=[w.id_string() for w in weyl],
        edges=edge_list,
        base=0,
        datum=datum,
        weyl_vertices=weyl,
        element_to_vertex=index,
        kind="flag",
    )


def line_bundle_class(chi, graph: GKMGraph) -> GKMClass:
    """The class restricting at w to x_{w(chi)}."""
    if graph.weyl_vertices is None:
        raise UnsupportedTypeError("line bundle classes need a Weyl-labelled graph")
    chi = tuple(chi)
    values = [
        graph.ctx.formal_sum(w.act(chi)) for w in graph.weyl_vertices
    ]
    return _validate(GKMClass(graph, values))


def membership(c, graph: GKMGraph):
    """Check every edge congruence; returns (ok, witness-or-None)."""
    values = c.values if isinstance(c, GKMClass) else tuple(c)
    for (i, j, chi) in graph.edges:
        diff = values[i] - values[j]
        try:
            graph.ctx.divide_by_character(diff, chi)
        except NotDivisibleError as exc:
            return False, {
                "edge": [graph.ids[i], graph.ids[j]],
                "chi": list(chi),
                "degree": exc.degree,
            }
    return True, None


def class_elementary_symmetric(i: int, classes: list[GKMClass]) -> GKMClass:
    graph = classes[0].graph
    values = [
        elementary_symmetric(i, [c.values[v] for c in classes])
        for v in range(graph.nvertices)
    ]
    return GKMClass(graph, values)


def gln_relations(n: int, graph: GKMGraph) -> dict:
    """Check that e_i(line bundles) - e_i(t) restricts to zero everywhere."""
    if graph.datum is None or not graph.datum.label.startswith("gl"):
        raise UnsupportedTypeError("relations check needs a gl_n flag graph")
    if graph.datum.rank != n:
        raise NVarsMismatchError("rank mismatch")
    bundles = [
        line_bundle_class(tuple(1 if j == i else 0 for j in range(n)), graph)
        for i in range(n)
    ]
    variables = [
        GradedSeries.variable(i, n, graph.precision) for i in range(n)
    ]
    relations = []
    for i in range(1, n + 1):
        lhs = class_elementary_symmetric(i, bundles)
        rhs = constant_class(graph, elementary_symmetric(i, variables))
        relations.append({"i": i, "zero": (lhs - rhs).is_zero()})
    return {"relations": relations, "pass": all(r["zero"] for r in relations)}


# -- graded solvers ------------------------------------------------------------------


def t_monomials(nvars: int, degree: int) -> list[tuple]:
    """All exponent tuples of the given total degree, deglex order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        out.extend((first,) + rest for rest in t_monomials(nvars - 1, degree - first))
    return sorted(out, key=lambda e: (sum(e), e))


def b_monomials_of_weight(weight: int, ngens: int) -> list[tuple]:
    """Trimmed exponent tuples of b-monomials of the given weight."""
    if weight == 0:
        return [()]
    out = []

    def rec(remaining, max_gen, acc):
        if remaining == 0:
            exp = [0] * ngens
            for g in acc:
                exp[g - 1] += 1
            trimmed = tuple(exp)
            while trimmed and trimmed[-1] == 0:
                trimmed = trimmed[:-1]
            out.append(trimmed)
            return
        for g in range(min(remaining, max_gen), 0, -1):
            rec(remaining - g, g, acc + [g])

    rec(weight, min(weight, ngens), [])
    return sorted(out)


def ambient_monomials(ctx, nvars: int, coh_degree: int) -> list[tuple]:
    """(t-exponent, b-exponent) pairs of homogeneous cohomological degree."""
    out = []
    for tdeg in range(coh_degree, ctx.precision + 1):
        w = tdeg - coh_degree
        if w < 0:
            continue
        bmonos = b_monomials_of_weight(w, ctx.ngens)
        if not bmonos:
            continue
        for texp in t_monomials(nvars, tdeg):
            for bexp in bmonos:
                out.append((texp, bexp))
    return out


def _remainder_rows(graph: GKMGraph, chi, monomials):
    """For each monomial (as a series), the coordinates of its remainder after
    the basis change carrying chi to the first variable.

    Returns {monomial index: {(t'-exp, b-exp): value}}.
    """
    ctx = graph.ctx
    fwd, _ = ctx.character_transform(tuple(chi))
    out = {}
    for k, mono in enumerate(monomials):
        if isinstance(mono, GradedSeries):
            series = mono
        else:
            texp, bexp = mono
            series = GradedSeries(
                graph.nvars, graph.precision, {texp: Coeff.monomial(bexp)}
            )
        img = fwd.apply(series)
        coords = {}
        for e, c in img.terms.items():
            if e[0] != 0:
                continue
            for bexp2, val in c.terms.items():
                coords[(e, bexp2)] = val
        if coords:
            out[k] = coords
    return out


def subring_basis(graph: GKMGraph, d: int) -> list[GKMClass]:
    """Integer-lattice basis of degree-d congruence tuples whose entries are
    forms of t-degree d.

    Exact linear algebra on the finite monomial basis: one unknown per
    (vertex, monomial), one equation per (edge, remainder coordinate).
    """
    if d > graph.precision:
        raise PrecisionExhaustedError("degree exceeds graph precision")
    n = graph.nvars
    monos = t_monomials(n, d)
    nm = len(monos)
    ncols = graph.nvertices * nm

    def col(v, k):
        return v * nm + k

    mono_series = [
        GradedSeries(n, graph.precision, {m: Coeff.from_value(1)}) for m in monos
    ]
    rows = []
    for (i, j, chi) in graph.edges:
        rem = _remainder_rows(graph, chi, mono_series)
        coords = sorted({key for r in rem.values() for key in r})
        for key in coords:
            row = [0] * ncols
            hit = False
            for k, r in rem.items():
                val = r.get(key, 0)
                if val:
                    row[col(i, k)] += val
                    row[col(j, k)] -= val
                    hit = True
            if hit:
                rows.append(row)
    basis = kernel_int(rows, ncols)
    out = []
    for vec in basis:
        values = []
        for v in range(graph.nvertices):
            terms = {}
            for k, m in enumerate(monos):
                coef = vec[col(v, k)]
                if coef:
                    terms[m] = Coeff.from_value(coef)
            values.append(GradedSeries(n, graph.precision, terms))
        out.append(_validate(GKMClass(graph, values)))
    return out


def invariants_basis(datum: RootDatum, ctx, d: int) -> list[GradedSeries]:
    """Generators of the Weyl-invariant series of homogeneous degree <= d,
    found by an exact kernel computation degree by degree.

    Invariance under the simple reflections suffices since they generate."""
    if d > ctx.precision:
        raise PrecisionExhaustedError("degree exceeds working precision")
    n = datum.rank
    gens = [
        WeylElement(datum.simple_reflection(i), (i,)) for i in range(datum.nsimple)
    ]
    out = []
    for m in range(0, d + 1):
        amb = ambient_monomials(ctx, n, m)
        if not amb:
            continue
        diffs = []
        for g in gens:
            for k, (texp, bexp) in enumerate(amb):
                series = GradedSeries(n, ctx.precision, {texp: Coeff.monomial(bexp)})
                diff = weyl_act(g, series, ctx, datum) - series
                if not diff.is_zero():
                    diffs.append((k, diff))
        coords = sorted(
            {
                (e, b2)
                for (_, diff) in diffs
                for e, c in diff.terms.items()
                for b2 in c.terms
            }
        )
        coord_index = {c: i for i, c in enumerate(coords)}
        mat = [[0] * len(amb) for _ in coords]
        for (k, diff) in diffs:
            for e, c in diff.terms.items():
                for b2, val in c.terms.items():
                    mat[coord_index[(e, b2)]][k] += val
        eqn_rows = [r for r in mat if any(r)]
        for vec in kernel_int(eqn_rows, len(amb)):
            terms: dict = {}
            for k, (texp, bexp) in enumerate(amb):
                if vec[k]:
                    cur = terms.get(texp, ZERO) + Coeff.monomial(bexp, vec[k])
                    if cur:
                        terms[texp] = cur
                    else:
                        terms.pop(texp, None)
            out.append(GradedSeries(n, ctx.precision, terms))
    return out


# -- tensor model ----------------------------------------------------------------------


class TensorClass:
    """A finite sum of a (x) b pairs; equality is decided via the GKM image."""

    def __init__(self, pairs):
        self.pairs = [(a, b) for (a, b) in pairs]

    @staticmethod
    def of(a: GradedSeries, b: GradedSeries) -> "TensorClass":
        return TensorClass([(a, b)])

    def __add__(self, other: "TensorClass") -> "TensorClass":
        return TensorClass(self.pairs + other.pairs)

    def __neg__(self) -> "TensorClass":
        return TensorClass([(-a, b) for (a, b) in self.pairs])

    def __sub__(self, other: "TensorClass") -> "TensorClass":
        return self + (-other)

    def __mul__(self, other: "TensorClass") -> "TensorClass":
        return TensorClass(
            [
                (a1 * a2, b1 * b2)
                for (a1, b1) in self.pairs
                for (a2, b2) in other.pairs
            ]
        )

    def to_gkm(self, graph: GKMGraph) -> GKMClass:
        return tensor_to_gkm(self, graph)


def tensor_to_gkm(tc: TensorClass, graph: GKMGraph) -> GKMClass:
    """The comparison map: a (x) b restricts at w to w(a) * b."""
    if graph.weyl_vertices is None:
        raise UnsupportedTypeError("tensor model needs a Weyl-labelled graph")
    ctx = graph.ctx
    datum = graph.datum
    values = [
        GradedSeries.zero(graph.nvars, graph.precision)
        for _ in range(graph.nvertices)
    ]
    for (a, b) in tc.pairs:
        for i, w in enumerate(graph.weyl_vertices):
            values[i] = values[i] + weyl_act(w, a, ctx, datum) * b
    return _validate(GKMClass(graph, values))


def _class_coordinates(classes: list[GKMClass]):
    """Common sparse coordinates for a family of classes (union of support)."""
    keys = sorted(
        {
            (v, e, b)
            for c in classes
            for v, s in enumerate(c.values)
            for e, coeff in s.terms.items()
            for b in coeff.terms
        }
    )
    index = {k: i for i, k in enumerate(keys)}
    vectors = []
    for c in classes:
        vec = [0] * len(keys)
        for v, s in enumerate(c.values):
            for e, coeff in s.terms.items():
                for b, val in coeff.terms.items():
                    vec[index[(v, e, b)]] = val
        vectors.append(tuple(vec))
    return vectors, keys


def surjectivity_probe(graph: GKMGraph, d: int, over: str = "Z") -> dict:
    """Degreewise comparison of the span of tensor-model images of monomial
    tensors against the congruence-tuple basis.

    Meaningful for gl-type data, where Weyl restriction of a monomial is again
    a monomial so both spans consist of forms.
    """
    from .linalg import span_equal_int, span_equal_rational

    if graph.datum is None or not graph.datum.label.startswith("gl"):
        raise UnsupportedTypeError("surjectivity probe supports gl_n graphs")
    n = graph.nvars
    report = {"degrees": [], "pass": True, "over": over}
    for delta in range(0, d + 1):
        images = []
        for p in range(0, delta + 1):
            for ea in t_monomials(n, p):
                for eb in t_monomials(n, delta - p):
                    a = GradedSeries(n, graph.precision, {ea: Coeff.from_value(1)})
                    b = GradedSeries(n, graph.precision, {eb: Coeff.from_value(1)})
                    images.append(tensor_to_gkm(TensorClass.of(a, b), graph))
        basis = subring_basis(graph, delta)
        vecs, keys = _class_coordinates(images + basis)
        img_vecs = vecs[: len(images)]
        bas_vecs = vecs[len(images):]
        if over == "Z":
            same = span_equal_int(img_vecs, bas_vecs, len(keys))
        else:
            same = span_equal_rational(img_vecs, bas_vecs, len(keys))
        report["degrees"].append(
            {
                "degree": delta,
                "image_count": len(images),
                "basis_rank": len(basis),
                "spans_agree": bool(same),
            }
        )
        report["pass"] = report["pass"] and same
    return report


# -- truncated flag-variety quotient ---------------------------------------------------


class FlagRingApprox:
    """Normal-form reduction modulo the triangular ideal
    (h_N(t_n), h_{N-1}(t_{n-1}, t_n), ..., h_{N-n+1}(t_1..t_n)).

    Leading terms are the pure powers t_j^(N-n+j), which are pairwise coprime,
    so the relations form a Groebner basis and the reduction is confluent.
    """

    def __init__(self, N: int, n: int, ctx):
        if N <= n:
            raise UnsupportedTypeError("flag ring approximation needs N > n")
        self.N = N
        self.n = n
        self.ctx = ctx
        self.bounds = [N - n + j for j in range(1, n + 1)]
        self.rules = []
        for j in range(1, n + 1):
            bound = self.bounds[j - 1]
            variables = [
                GradedSeries.variable(i, n, N + 1) for i in range(j - 1, n)
            ]
            h = complete_homogeneous(bound, variables)
            lead = tuple(bound if i == j - 1 else 0 for i in range(n))
            rest = {e: -c for e, c in h.terms.items() if e != lead}
            assert h.terms.get(lead) == 1
            self.rules.append((lead, rest))

    def reduce(self, f: GradedSeries) -> GradedSeries:
        if f.nvars != self.n:
            raise NVarsMismatchError("wrong number of variables")
        agenda = dict(f.terms)
        out: dict = {}
        while agenda:
            e = min(agenda)
            c = agenda.pop(e)
            j = next(
                (j for j in range(self.n) if e[j] >= self.bounds[j]), None
            )
            if j is None:
                cur = out.get(e, ZERO) + c
                if cur:
                    out[e] = cur
                else:
                    out.pop(e, None)
                continue
            lead, rest = self.rules[j]
            cof = tuple(a - b for a, b in zip(e, lead))
            for er, cr in rest.items():
                e2 = tuple(a + b for a, b in zip(cof, er))
                cur = agenda.get(e2, ZERO) + c * cr
                if cur:
                    agenda[e2] = cur
                else:
                    agenda.pop(e2, None)
        return GradedSeries(self.n, f.precision, out)

    def is_zero(self, f: GradedSeries) -> bool:
        return self.reduce(f).is_zero()


def approx_flag_ring(N: int, n: int, ctx) -> FlagRingApprox:
    return FlagRingApprox(N, n, ctx)
