"""Moment graphs of wonderful compactifications of minimal-rank symmetric
spaces, the two invariant subrings attached to them, and the projective-space
model of the rank-one group case.

The fixed points are the cosets w * z over W/W_L.  Curves come in two
species: translates of the root curves (character w(alpha) for alpha a
positive root outside the Levi) joining w z to w s_alpha z, and translates of
the restricted curves (character w(gamma), gamma = alpha - theta(alpha))
joining w z to w s_alpha s_{theta(alpha)} z.  The toric subvariety sees only
the restricted curves.
"""

from __future__ import annotations

from .coeffs import Coeff, ZERO
from .errors import (
    CoefficientModeError,
    PrecisionExhaustedError,
    RepeatedWeightError,
    UnsupportedTypeError,
)
from .gkm import (
    GKMClass,
    GKMGraph,
    ambient_monomials,
    membership,
)
from .linalg import canonical_sign, kernel_int, span_equal_rational, vneg, vsub
from .roots import SymmetricDatum, WeylElement, _mat_mul, weyl_act
from .series import GradedSeries


class WonderfulModel:
    """The X- and Y-graphs of one wonderful compactification, with coset data."""

    def __init__(self, sd: SymmetricDatum, ctx):
        self.sd = sd
        self.ctx = ctx
        self.precision = ctx.precision
        datum = sd.datum
        weyl = datum.weyl()
        wl = set(sd.w_L)

        # cosets of W/W_L, represented by their least-BFS-index element
        index_of = {w.matrix: i for i, w in enumerate(weyl)}
        rep_of: dict = {}
        reps: list[int] = []
        for i, w in enumerate(weyl):
            if w.matrix in rep_of:
                continue
            members = sorted(index_of[_mat_mul(w.matrix, l)] for l in wl)
            rep = members[0]
            if rep == i:
                reps.append(i)
            for k in members:
                rep_of[weyl[k].matrix] = rep
        vertex_of_rep = {rep: v for v, rep in enumerate(reps)}
        element_to_vertex = {
            m: vertex_of_rep[rep] for m, rep in rep_of.items()
        }
        vertices = [weyl[rep] for rep in reps]

        sigma_plus_outside = [
            beta
            for beta in datum.positive_roots
            if beta not in set(sd.sigma_L_pos)
        ]
        edges: dict = {}

        def add_edge(i, j, chi):
            if i == j:
                return
            key = (min(i, j), max(i, j), canonical_sign(chi))
            edges[key] = True

        root_edge_count = 0
        for w in weyl:
            wi = element_to_vertex[w.matrix]
            for beta in sigma_plus_outside:
                refl = datum._reflection_from(beta, datum.coroot_of[beta])
                wj = element_to_vertex[_mat_mul(w.matrix, refl)]
                add_edge(wi, wj, w.act(beta))
        root_edge_count = len(edges)
        for w in weyl:
            wi = element_to_vertex[w.matrix]
            for k in range(len(sd.restricted)):
                r = sd.restricted_reflection(k)
                wj = element_to_vertex[_mat_mul(w.matrix, r.matrix)]
                gamma = sd.restricted[k][0]
                add_edge(wi, wj, w.act(gamma))
        self.root_edge_count = root_edge_count
        self.restricted_edge_count = len(edges) - root_edge_count

        self.x_graph = GKMGraph(
            ctx,
            ids=[v.id_string() for v in vertices],
            edges=[(i, j, chi) for (i, j, chi) in sorted(edges)],
            base=0,
            datum=datum,
            weyl_vertices=vertices,
            element_to_vertex=element_to_vertex,
            kind="wonderful",
        )

        # toric subgraph: the W^theta-orbit of the base point, restricted curves
        y_vertex_set = sorted(
            {element_to_vertex[w.matrix] for w in sd.w_theta}
        )
        y_index = {v: i for i, v in enumerate(y_vertex_set)}
        y_edges: dict = {}
        for w in sd.w_theta:
            wi = element_to_vertex[w.matrix]
            for k in range(len(sd.restricted)):
                r = sd.restricted_reflection(k)
                wj = element_to_vertex[_mat_mul(w.matrix, r.matrix)]
                gamma = sd.restricted[k][0]
                key = (
                    min(y_index[wi], y_index[wj]),
                    max(y_index[wi], y_index[wj]),
                    canonical_sign(w.act(gamma)),
                )
                y_edges[key] = True
        y_element_to_vertex = {
            w.matrix: y_index[element_to_vertex[w.matrix]] for w in sd.w_theta
        }
        self.y_graph = GKMGraph(
            ctx,
            ids=[self.x_graph.ids[v] for v in y_vertex_set],
            edges=[(i, j, chi) for (i, j, chi) in sorted(y_edges)],
            base=0,
            datum=datum,
            weyl_vertices=[vertices[v] for v in y_vertex_set],
            element_to_vertex=y_element_to_vertex,
            kind="toric",
        )
        self.y_vertex_set = y_vertex_set

    def counts(self) -> dict:
        out = self.sd.counts()
        out.update(
            {
                "x_vertices": self.x_graph.nvertices,
                "x_edges": len(self.x_graph.edges),
                "x_root_edges": self.root_edge_count,
                "x_restricted_edges": self.restricted_edge_count,
                "y_vertices": self.y_graph.nvertices,
                "y_edges": len(self.y_graph.edges),
            }
        )
        return out


def build_wonderful_graph(sd: SymmetricDatum, ctx) -> WonderfulModel:
    # graphs are integral objects; only the subring solvers insist on Q
    return WonderfulModel(sd, ctx)


# -- linear conditions ------------------------------------------------------------


def _mono_series(nvars, precision, mono):
    texp, bexp = mono
    return GradedSeries(nvars, precision, {texp: Coeff.monomial(bexp)})


def _series_coords(s: GradedSeries):
    return {
        (e, b): val for e, c in s.terms.items() for b, val in c.terms.items()
    }


def _weyl_action_rows(datum, ctx, generators, monos, index):
    """Rows expressing w(f) = f for each generator, in ambient coordinates."""
    n = datum.rank
    rows = []
    for g in generators:
        coords: dict = {}
        for k, mono in enumerate(monos):
            diff = weyl_act(g, _mono_series(n, ctx.precision, mono), ctx, datum)
            for key, val in _series_coords(diff).items():
                coords.setdefault(key, {})[k] = val
        for key in sorted(coords):
            row = [0] * len(monos)
            for k, val in coords[key].items():
                row[k] += val
            k0 = index.get(key)
            if k0 is not None:
                row[k0] -= 1
            if any(row):
                rows.append(row)
    return rows


def _congruence_rows(datum, ctx, pairs, monos):
    """Rows for f = w(f) mod x_chi conditions, one per remainder coordinate.

    ``pairs`` is a list of (w, chi).
    """
    n = datum.rank
    rows = []
    for (w, chi) in pairs:
        fwd, _ = ctx.character_transform(tuple(chi))
        coords: dict = {}
        for k, mono in enumerate(monos):
            f = _mono_series(n, ctx.precision, mono)
            diff = f - weyl_act(w, f, ctx, datum)
            img = fwd.apply(diff)
            for e, c in img.terms.items():
                if e[0] != 0:
                    continue
                for b, val in c.terms.items():
                    coords.setdefault((e, b), {})[k] = val
        for key in sorted(coords):
            row = [0] * len(monos)
            for k, val in coords[key].items():
                row[k] = val
            if any(row):
                rows.append(row)
    return rows


def _vectors_to_series(datum, ctx, monos, vectors):
    out = []
    for vec in vectors:
        terms: dict = {}
        for k, (texp, bexp) in enumerate(monos):
            if vec[k]:
                cur = terms.get(texp, ZERO) + Coeff.monomial(bexp, vec[k])
                if cur:
                    terms[texp] = cur
                else:
                    terms.pop(texp, None)
        out.append(GradedSeries(datum.rank, ctx.precision, terms))
    return out


def invariant_subring_X(
    model: WonderfulModel, degree: int, impose_root_edges: bool = False
) -> list[GradedSeries]:
    """Basis of the degree-``degree`` piece of the invariant subring, in its
    reduced description: Levi-invariant f with f = s_alpha s_{theta alpha}(f)
    mod x_gamma for every restricted basis root.

    Root-curve congruences are *not* imposed (they hold automatically; pass
    ``impose_root_edges=True`` to check that imposing them changes nothing).
    """
    ctx = model.ctx
    if not ctx.rational:
        raise CoefficientModeError("invariant subrings are computed rationally")
    if degree > ctx.precision:
        raise PrecisionExhaustedError("degree exceeds working precision")
    sd = model.sd
    datum = sd.datum
    monos = ambient_monomials(ctx, datum.rank, degree)
    if not monos:
        return []
    index = {m: k for k, m in enumerate(monos)}
    levi_gens = [
        WeylElement(datum.simple_reflection(i), (i,)) for i in sd.delta_L
    ]
    rows = _weyl_action_rows(datum, ctx, levi_gens, monos, index)
    pairs = [
        (sd.restricted_reflection(k), gamma)
        for k, (gamma, _, _) in enumerate(sd.restricted)
    ]
    rows += _congruence_rows(datum, ctx, pairs, monos)
    if impose_root_edges:
        extra = []
        for beta in datum.positive_roots:
            if beta in set(sd.sigma_L_pos):
                continue
            s = datum.reflection_element(beta)
            extra.append((s, beta))
        rows += _congruence_rows(datum, ctx, extra, monos)
    return _vectors_to_series(datum, ctx, monos, kernel_int(rows, len(monos)))


def invariant_tuple_basis(
    graph: GKMGraph, generators: list[WeylElement], degree: int
) -> list[GKMClass]:
    """Basis of degree-``degree`` classes on the graph invariant under the
    group generated by ``generators`` acting by (w f)_v = w(f at w^{-1} v)."""
    ctx = graph.ctx
    datum = graph.datum
    n = graph.nvars
    monos = ambient_monomials(ctx, n, degree)
    if not monos:
        return []
    nm = len(monos)
    ncols = graph.nvertices * nm

    def col(v, k):
        return v * nm + k

    mono_series = [_mono_series(n, ctx.precision, m) for m in monos]
    mono_index = {m: k for k, m in enumerate(monos)}
    rows = []
    # edge congruences
    for (i, j, chi) in graph.edges:
        fwd, _ = ctx.character_transform(tuple(chi))
        coords: dict = {}
        for k, ms in enumerate(mono_series):
            img = fwd.apply(ms)
            for e, c in img.terms.items():
                if e[0] != 0:
                    continue
                for b, val in c.terms.items():
                    coords.setdefault((e, b), {})[k] = val
        for key in sorted(coords):
            row = [0] * ncols
            hit = False
            for k, val in coords[key].items():
                row[col(i, k)] += val
                row[col(j, k)] -= val
                hit = True
            if hit:
                rows.append(row)
    # invariance under each generator
    for g in generators:
        perm = [graph.act_vertex(g, v) for v in range(graph.nvertices)]
        images = [
            _series_coords(weyl_act(g, ms, ctx, datum)) for ms in mono_series
        ]
        for u in range(graph.nvertices):
            v = perm[u]
            coords: dict = {}
            for k, img in enumerate(images):
                for key, val in img.items():
                    coords.setdefault(key, {})[k] = val
            for key in sorted(coords):
                row = [0] * ncols
                for k, val in coords[key].items():
                    row[col(u, k)] += val
                k0 = mono_index.get(key)
                if k0 is not None:
                    row[col(v, k0)] -= 1
                if any(row):
                    rows.append(row)
    basis = kernel_int(rows, ncols)
    out = []
    for vec in basis:
        values = []
        for v in range(graph.nvertices):
            chunk = [vec[col(v, k)] for k in range(nm)]
            values.append(
                _vectors_to_series(datum, ctx, monos, [chunk])[0]
            )
        out.append(GKMClass(graph, values))
    return out


def _w_theta_generators(sd: SymmetricDatum) -> list[WeylElement]:
    gens = [
        WeylElement(sd.datum.simple_reflection(i), (i,)) for i in sd.delta_L
    ]
    gens += [sd.restricted_reflection(k) for k in range(len(sd.restricted))]
    return gens


def invariant_subring_Y(model: WonderfulModel, degree: int) -> list[GradedSeries]:
    """Invariant classes on the toric subgraph, restricted at the base point."""
    ctx = model.ctx
    if not ctx.rational:
        raise CoefficientModeError("invariant subrings are computed rationally")
    if degree > ctx.precision:
        raise PrecisionExhaustedError("degree exceeds working precision")
    basis = invariant_tuple_basis(
        model.y_graph, _w_theta_generators(model.sd), degree
    )
    return [c.values[model.y_graph.base] for c in basis]


def _series_span_equal(a: list[GradedSeries], b: list[GradedSeries]) -> bool:
    keys = sorted(
        {
            (e, bb)
            for s in list(a) + list(b)
            for e, c in s.terms.items()
            for bb in c.terms
        }
    )
    index = {k: i for i, k in enumerate(keys)}

    def coords(s):
        vec = [0] * len(keys)
        for e, c in s.terms.items():
            for bb, val in c.terms.items():
                vec[index[(e, bb)]] = val
        return tuple(vec)

    va = [coords(s) for s in a]
    vb = [coords(s) for s in b]
    return span_equal_rational(va, vb, len(keys))


def verify_esph(model: WonderfulModel, degree: int) -> dict:
    """Compare, degree by degree, four routes to the invariant subring:

    * the reduced description (Levi invariance + restricted congruences),
    * the same with the automatic root congruences imposed as well,
    * full invariant tuples on the X-graph restricted at the base point,
    * invariant tuples on the toric subgraph restricted at the base point.
    """
    ctx = model.ctx
    if not ctx.rational:
        raise CoefficientModeError("the comparison is a rational statement")
    sd = model.sd
    datum = sd.datum
    w_gens = [
        WeylElement(datum.simple_reflection(i), (i,)) for i in range(datum.nsimple)
    ]
    report = {"degrees": [], "pass": True}
    for m in range(0, degree + 1):
        reduced = invariant_subring_X(model, m)
        with_root_edges = invariant_subring_X(model, m, impose_root_edges=True)
        x_tuples = invariant_tuple_basis(model.x_graph, w_gens, m)
        x_restricted = [c.values[model.x_graph.base] for c in x_tuples]
        y_restricted = invariant_subring_Y(model, m)
        agree_root = _series_span_equal(reduced, with_root_edges)
        agree_x = _series_span_equal(reduced, x_restricted)
        agree_y = _series_span_equal(reduced, y_restricted)
        entry = {
            "degree": m,
            "rank": len(reduced),
            "x_tuple_rank": len(x_tuples),
            "y_rank": len(y_restricted),
            "root_congruences_automatic": bool(agree_root),
            "x_route_agrees": bool(agree_x),
            "y_route_agrees": bool(agree_y),
        }
        report["degrees"].append(entry)
        report["pass"] = report["pass"] and agree_root and agree_x and agree_y
    return report


# -- projective space models ---------------------------------------------------------


def projective_space_model(weights, ctx, weyl_vertices=None, element_to_vertex=None,
                           datum=None, ids=None):
    """The moment graph of P(V) for a torus module with the given (pairwise
    distinct) weights: one vertex per weight, edges labelled by differences.

    Returns (graph, report); the report records that the projective-bundle
    relation prod_i (zeta +_F x_{chi_i}) vanishes on the tautological tuple
    zeta|_j = x_{-chi_j}, and that this tuple satisfies the congruences.
    """
    weights = [tuple(w) for w in weights]
    if len(set(weights)) != len(weights):
        raise RepeatedWeightError("projective model needs pairwise distinct weights")
    n = len(weights[0])
    edges = []
    for i in range(len(weights)):
        for j in range(i + 1, len(weights)):
            edges.append((i, j, canonical_sign(vsub(weights[i], weights[j]))))
    graph = GKMGraph(
        ctx,
        ids=ids or [f"p{i}" for i in range(len(weights))],
        edges=edges,
        base=0,
        datum=datum,
        weyl_vertices=weyl_vertices,
        element_to_vertex=element_to_vertex,
        nvars=n,
        kind="projective",
    )
    zeta = GKMClass(graph, [ctx.formal_sum(vneg(w)) for w in weights])
    ok, witness = membership(zeta, graph)
    relation = GKMClass(
        graph,
        [GradedSeries.constant(1, n, ctx.precision)] * len(weights),
    )
    for chi in weights:
        x_chi = ctx.formal_sum(chi)
        factor = GKMClass(
            graph,
            [
                ctx.group_law.substitute([zeta.values[v], x_chi])
                for v in range(len(weights))
            ],
        )
        relation = relation * factor
    report = {
        "zeta_is_member": bool(ok),
        "zeta_witness": witness,
        "relation_vanishes": relation.is_zero(),
    }
    return graph, zeta, report


_GROUP_A1_WEIGHTS = {
    # coset id -> weight of the corresponding fixed point of P(End(k^2)),
    # shifted into the lattice (differences are what matter)
    "e": (1, 0),
    "1": (0, 0),
    "2": (1, 1),
    "12": (0, 1),
}


def group_psl2_projective_model(model: WonderfulModel):
    """The direct projective-space route for the rank-one group case.

    The wonderful compactification is the projectivised endomorphism space;
    its four fixed points are matched to the Weyl cosets, and the graph built
    from weight differences must agree edge for edge with the abstract one.
    """
    sd = model.sd
    if sd.datum.rank != 2 or len(sd.restricted) != 1:
        raise UnsupportedTypeError(
            "the projective model is wired for the rank-one group case"
        )
    x = model.x_graph
    try:
        weights = [_GROUP_A1_WEIGHTS[vid] for vid in x.ids]
    except KeyError:
        raise UnsupportedTypeError("unexpected coset labels") from None
    graph, zeta, report = projective_space_model(
        weights,
        model.ctx,
        weyl_vertices=x.weyl_vertices,
        element_to_vertex=x.element_to_vertex,
        datum=x.datum,
        ids=x.ids,
    )
    report["edges_match_wonderful"] = set(graph.edges) == set(x.edges)
    return graph, zeta, report


def naive_presentation_report(model: WonderfulModel) -> dict:
    """Record (without asserting) whether the literal polynomial relations of
    the rank-one worked example vanish on the moment-graph tuples: on X the
    square of x^2 - t1^2 t2^2 and on Y the square of x - t1 t2, with x read as
    the tautological hyperplane tuple and t_i as constants."""
    graph, zeta, _ = group_psl2_projective_model(model)
    ctx = model.ctx
    n = graph.nvars
    p = ctx.precision
    t1 = GradedSeries.variable(0, n, p)
    t2 = GradedSeries.variable(1, n, p)
    t1sq_t2sq = t1 * t1 * t2 * t2
    from .gkm import constant_class

    x_expr = zeta * zeta - constant_class(graph, t1sq_t2sq)
    x_rel = x_expr * x_expr
    y_vertices = [graph.ids.index(model.y_graph.ids[i])
                  for i in range(model.y_graph.nvertices)]
    y_vals = []
    for v in y_vertices:
        expr = zeta.values[v] - t1 * t2
        y_vals.append(expr * expr)
    return {
        "x_relation_literal_zero": x_rel.is_zero(),
        "y_relation_literal_zero": all(s.is_zero() for s in y_vals),
    }
