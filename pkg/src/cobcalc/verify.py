"""The machine-checkable verification suites behind ``cobcalc verify``.

Each suite returns a JSON-ready report: a ``checks`` list with one pass/fail
entry per named check (witnesses attached on failure) and a top-level
``pass``.  Randomised checks draw from a seeded generator recorded in the
config, so reports are deterministic byte for byte.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from random import Random

from .errors import ConfigError, NotDivisibleError, UnsupportedTypeError
from .fgl import LawSpec, build_law, fgl_axiom_report
from .gkm import (
    TensorClass,
    constant_class,
    flag_gkm,
    gln_relations,
    line_bundle_class,
    membership,
    surjectivity_probe,
    tensor_to_gkm,
)
from .roots import (
    WeylElement,
    build_root_datum,
    build_symmetric_datum,
    weyl_act,
)
from .sampling import random_homogeneous, random_monomial_series
from .schubert import (
    bott_samelson,
    demazure,
    demazure_gkm,
    kappa_of_character,
    point_class,
    sw_linearity_check,
)
from .series import GradedSeries
from .wonderful import (
    build_wonderful_graph,
    group_psl2_projective_model,
    naive_presentation_report,
    verify_esph,
)

SUITES = ("lemma-div", "demazure", "gln", "tensor-iso", "bott-samelson", "esph")


@dataclass
class RunConfig:
    law: str = "universal:4"
    degree: int = 5
    type_tag: str = "gl2"
    case: str = "group:psl2"
    rational: bool = False
    seed: int = 0
    cache_dir: str | None = None
    threads: int = 1
    word: tuple = ()
    count: int = 200
    probe_degree: int | None = None

    def law_spec(self) -> LawSpec:
        return LawSpec.parse(self.law)

    def context(self, rational: bool | None = None):
        return build_law(
            self.law_spec(),
            self.degree,
            rational=self.rational if rational is None else rational,
            cache_dir=self.cache_dir,
        )

    def to_json(self) -> dict:
        return {
            "law": self.law_spec().canonical(),
            "degree": self.degree,
            "type": self.type_tag,
            "case": self.case,
            "rational": self.rational,
            "seed": self.seed,
            "threads": self.threads,
            "word": list(self.word),
            "count": self.count,
        }


def parallel_map(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _report(suite: str, cfg: RunConfig, checks: list[dict]) -> dict:
    return {
        "suite": suite,
        "config": cfg.to_json(),
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


# -- suites ---------------------------------------------------------------------


def suite_fgl_check(cfg: RunConfig) -> dict:
    ctx = cfg.context()
    return _report("fgl-check", cfg, fgl_axiom_report(ctx))


def suite_lemma_div(cfg: RunConfig) -> dict:
    """Divisibility of f - s_beta(f) by the class of beta, for seeded random
    homogeneous f and every positive root; each quotient is certified by
    multiplying back."""
    datum = build_root_datum(cfg.type_tag)
    ctx = cfg.context()
    rng = Random(cfg.seed)
    max_deg = min(5, ctx.precision)
    samples = [
        random_homogeneous(rng, ctx, datum.rank, rng.randint(1, max_deg))
        for _ in range(cfg.count)
    ]
    reflections = [
        (beta, datum.reflection_element(beta)) for beta in datum.positive_roots
    ]

    def run(f: GradedSeries):
        failures = []
        for beta, s in reflections:
            diff = f - weyl_act(s, f, ctx, datum)
            try:
                q = ctx.divide_by_character(diff, beta)
            except NotDivisibleError as exc:
                failures.append({"root": list(beta), "degree": exc.degree})
                continue
            x_beta = ctx.formal_sum(beta)
            if not (q * x_beta).equals_truncated(diff, q.precision):
                failures.append({"root": list(beta), "certificate": "failed"})
        return failures

    all_failures = [f for fs in parallel_map(run, samples, cfg.threads) for f in fs]
    checks = [
        {
            "name": "divisibility",
            "pass": not all_failures,
            "samples": len(samples),
            "roots": len(reflections),
            "witnesses": all_failures[:5],
        }
    ]
    return _report("lemma-div", cfg, checks)


def suite_demazure(cfg: RunConfig) -> dict:
    datum = build_root_datum(cfg.type_tag)
    ctx = cfg.context()
    rng = Random(cfg.seed)
    n = datum.rank
    max_deg = min(5, ctx.precision - 1)
    checks = []

    bad_invariance = []
    bad_degree = []
    for k in range(cfg.count):
        f = random_homogeneous(rng, ctx, n, rng.randint(1, max_deg))
        i = rng.randrange(datum.nsimple)
        df = demazure(f, i, ctx, datum)
        s = WeylElement(datum.simple_reflection(i), (i,))
        if not weyl_act(s, df, ctx, datum).equals_truncated(df):
            bad_invariance.append(k)
        m = f.homogeneous_degree()
        if not (df.is_zero() or df.homogeneous_degree() == m - 1):
            bad_degree.append(k)
    checks.append(
        {
            "name": "invariance",
            "pass": not bad_invariance,
            "samples": cfg.count,
            "witnesses": bad_invariance[:5],
        }
    )
    checks.append(
        {
            "name": "degree_lowering",
            "pass": not bad_degree,
            "witnesses": bad_degree[:5],
        }
    )

    one = GradedSeries.constant(1, n, ctx.precision)
    ok = True
    for i in range(datum.nsimple):
        alpha = datum.simple_roots[i]
        if not demazure(one, i, ctx, datum).equals_truncated(
            kappa_of_character(ctx, alpha)
        ):
            ok = False
    checks.append({"name": "unit_maps_to_kappa", "pass": ok})

    bad_linear = []
    npairs = max(1, cfg.count // 4)
    weyl = datum.weyl()
    for k in range(npairs):
        f = random_homogeneous(rng, ctx, n, rng.randint(1, max_deg))
        mono = random_monomial_series(rng, n, rng.randint(1, 2), ctx.precision)
        g = GradedSeries.zero(n, ctx.precision)
        for w in weyl:
            g = g + weyl_act(w, mono, ctx, datum)
        i = rng.randrange(datum.nsimple)
        if not sw_linearity_check(f, g, i, ctx, datum):
            bad_linear.append(k)
    checks.append(
        {
            "name": "invariant_linearity",
            "pass": not bad_linear,
            "pairs": npairs,
            "witnesses": bad_linear[:5],
        }
    )

    # frozen additive values: del(t1) = -1 and del(x_alpha) = -2 for gl2-like data
    addctx = build_law(LawSpec.additive(), cfg.degree)
    gl2 = build_root_datum("gl2")
    t1 = GradedSeries.variable(0, 2, addctx.precision)
    neg_one = GradedSeries.constant(-1, 2, addctx.precision - 1)
    neg_two = GradedSeries.constant(-2, 2, addctx.precision - 1)
    x_alpha = addctx.formal_sum((1, -1))
    checks.append(
        {
            "name": "additive_sign_convention",
            "pass": demazure(t1, 0, addctx, gl2) == neg_one
            and demazure(x_alpha, 0, addctx, gl2) == neg_two,
        }
    )
    return _report("demazure", cfg, checks)


def suite_gln(cfg: RunConfig) -> dict:
    datum = build_root_datum(cfg.type_tag)
    if not datum.label.startswith("gl"):
        raise UnsupportedTypeError("the relations suite needs a gl_n type")
    ctx = cfg.context()
    graph = flag_gkm(datum, ctx)
    n = datum.rank
    checks = []
    rel = gln_relations(n, graph)
    checks.append({"name": "symmetric_relations_vanish", "pass": rel["pass"],
                   "relations": rel["relations"]})
    probe_degree = cfg.probe_degree if cfg.probe_degree is not None else (
        3 if n == 2 else 2
    )
    probe = surjectivity_probe(graph, probe_degree, over="Z")
    checks.append(
        {
            "name": "tensor_image_spans_basis_over_Z",
            "pass": probe["pass"],
            "degrees": probe["degrees"],
        }
    )
    return _report("gln", cfg, checks)


def suite_tensor_iso(cfg: RunConfig) -> dict:
    datum = build_root_datum(cfg.type_tag)
    if not datum.label.startswith("gl"):
        raise UnsupportedTypeError("the tensor suite needs a gl_n type")
    ctx = cfg.context()
    graph = flag_gkm(datum, ctx)
    rng = Random(cfg.seed)
    n = datum.rank
    checks = []

    probe = surjectivity_probe(graph, cfg.probe_degree or 2, over="Z")
    checks.append({"name": "surjectivity_probe", "pass": probe["pass"],
                   "degrees": probe["degrees"]})

    ok = True
    for _ in range(10):
        a1 = random_homogeneous(rng, ctx, n, rng.randint(1, 2), b_free=True)
        b1 = random_homogeneous(rng, ctx, n, rng.randint(1, 2), b_free=True)
        a2 = random_homogeneous(rng, ctx, n, 1, b_free=True)
        b2 = random_homogeneous(rng, ctx, n, 1, b_free=True)
        tc1, tc2 = TensorClass.of(a1, b1), TensorClass.of(a2, b2)
        lhs = tensor_to_gkm(tc1 * tc2, graph)
        rhs = tensor_to_gkm(tc1, graph) * tensor_to_gkm(tc2, graph)
        if not (lhs - rhs).is_zero():
            ok = False
    checks.append({"name": "ring_homomorphism", "pass": ok})

    ok = True
    one = GradedSeries.constant(1, n, ctx.precision)
    for i in range(n):
        chi = tuple(1 if j == i else 0 for j in range(n))
        img = tensor_to_gkm(TensorClass.of(ctx.formal_sum(chi), one), graph)
        if not (img - line_bundle_class(chi, graph)).is_zero():
            ok = False
    chi = tuple(rng.randint(-2, 2) for _ in range(n))
    if any(chi):
        img = tensor_to_gkm(TensorClass.of(ctx.formal_sum(chi), one), graph)
        if not (img - line_bundle_class(chi, graph)).is_zero():
            ok = False
    checks.append({"name": "first_factor_restricts_as_line_bundle", "pass": ok})

    b = random_homogeneous(rng, ctx, n, 2, b_free=True)
    img = tensor_to_gkm(TensorClass.of(one, b), graph)
    checks.append(
        {
            "name": "second_factor_is_constant",
            "pass": (img - constant_class(graph, b)).is_zero(),
        }
    )
    return _report("tensor-iso", cfg, checks)


def suite_bott_samelson(cfg: RunConfig) -> dict:
    datum = build_root_datum(cfg.type_tag)
    ctx = cfg.context()
    graph = flag_gkm(datum, ctx)
    rng = Random(cfg.seed)
    n = datum.rank
    checks = []

    pt = point_class(graph)
    checks.append(
        {"name": "empty_word_is_point_class",
         "pass": bott_samelson((), graph) == pt}
    )
    ok_member, witness = membership(pt, graph)
    checks.append({"name": "point_class_congruences", "pass": ok_member,
                   "witness": witness})

    if datum.label == "gl2":
        bs = bott_samelson((0,), graph)
        one = constant_class(graph, 1).truncate(bs.precision)
        checks.append({"name": "rank_one_word_is_unit", "pass": bs == one})

    word = tuple(cfg.word) or tuple(
        rng.randrange(datum.nsimple) for _ in range(2)
    )
    if graph.precision >= len(word) + len(datum.positive_roots):
        c = bott_samelson(word, graph)
        ok_member, witness = membership(c, graph)
        checks.append(
            {"name": "word_class_congruences", "pass": ok_member,
             "word": [i + 1 for i in word], "witness": witness}
        )
        ok_pairs = True
        for i in word:
            s = WeylElement(datum.simple_reflection(i), (i,))
            d = demazure_gkm(c, i)
            for v in range(graph.nvertices):
                j = graph.act_vertex_right(v, s)
                if not d.values[v].equals_truncated(d.values[j]):
                    ok_pairs = False
        checks.append({"name": "edge_pair_constancy_after_step", "pass": ok_pairs})

    ok = True
    for _ in range(5):
        a = random_homogeneous(rng, ctx, n, rng.randint(1, 2), b_free=True)
        i = rng.randrange(datum.nsimple)
        lhs = demazure_gkm(
            tensor_to_gkm(
                TensorClass.of(a, GradedSeries.constant(1, n, ctx.precision)), graph
            ),
            i,
        )
        rhs = tensor_to_gkm(
            TensorClass.of(
                demazure(a, i, ctx, datum),
                GradedSeries.constant(1, n, ctx.precision),
            ),
            graph,
        )
        if not (lhs - rhs.truncate(lhs.precision)).is_zero():
            ok = False
    checks.append({"name": "compatible_with_tensor_model", "pass": ok})
    return _report("bott-samelson", cfg, checks)


def suite_esph(cfg: RunConfig) -> dict:
    sd = build_symmetric_datum(cfg.case)
    ctx = cfg.context(rational=True)
    model = build_wonderful_graph(sd, ctx)
    checks = []
    counts = model.counts()
    checks.append({"name": "structure_counts", "pass": True, "counts": counts})
    rep = verify_esph(model, min(cfg.degree, ctx.precision))
    checks.append(
        {"name": "invariant_subrings_coincide", "pass": rep["pass"],
         "degrees": rep["degrees"]}
    )
    if sd.datum.rank == 2 and len(sd.restricted) == 1:
        graph, zeta, prep = group_psl2_projective_model(model)
        checks.append(
            {
                "name": "projective_model",
                "pass": prep["edges_match_wonderful"]
                and prep["zeta_is_member"]
                and prep["relation_vanishes"],
                "detail": prep,
            }
        )
        from .wonderful import (
            _series_span_equal,
            invariant_subring_X,
            invariant_tuple_basis,
        )

        datum = sd.datum
        w_gens = [
            WeylElement(datum.simple_reflection(i), (i,))
            for i in range(datum.nsimple)
        ]
        ok = True
        detail = []
        for m in range(0, min(cfg.degree, ctx.precision) + 1):
            via_p = [
                c.values[graph.base]
                for c in invariant_tuple_basis(graph, w_gens, m)
            ]
            via_x = invariant_subring_X(model, m)
            same = _series_span_equal(via_p, via_x)
            detail.append({"degree": m, "agree": bool(same), "rank": len(via_x)})
            ok = ok and same
        checks.append(
            {"name": "projective_route_agrees", "pass": ok, "degrees": detail}
        )
        naive = naive_presentation_report(model)
        naive["note"] = (
            "recorded only; the displayed presentations are not asserted"
        )
        checks.append({"name": "naive_presentations", "pass": True,
                       "recorded": naive})
    return _report("esph", cfg, checks)


_SUITE_FUNCS = {
    "lemma-div": suite_lemma_div,
    "demazure": suite_demazure,
    "gln": suite_gln,
    "tensor-iso": suite_tensor_iso,
    "bott-samelson": suite_bott_samelson,
    "esph": suite_esph,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    fn = _SUITE_FUNCS.get(name)
    if fn is None:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return fn(cfg)
