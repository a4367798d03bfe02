"""Degrees, homogenization, dimension bounds, the annulus algebra."""

import random

import pytest

from skeinlab.category import Entry, GradingGroup
from skeinlab.diagrams import SlicedDiagram, closure_right, coupon, eval_rt, ident
from skeinlab.instances import (GroupInstance, build_sweedler_instance,
                                build_tl_instance, build_z2_group_algebra_instance)
from skeinlab.instances.hopf import (HopfInstance, ModuleSpec,
                                     group_algebra_z2_data)
from skeinlab.linalg import ExactMatrix, nullspace
from skeinlab.mtrace import (BOTH, IdealDescriptor, default_testset,
                             eval_disk_skein, normalize_trace,
                             solve_cyclic_traces, solve_mtrace_space)
from skeinlab.sampling import random_morphism
from skeinlab.skein_dim import (GradedSkeinReport, degree, dehn_twist_annulus,
                                dim_bound_closed, group_frame_transform,
                                homogenize, is_homogeneous,
                                normalize_to_ideal_colors,
                                pair_with_cyclic_trace, skein_bound,
                                spanning_bound_boundary, subgroup_GI_contains)
from skeinlab.skein_dim import stack_product
from skeinlab.surfaces import (SkeinElement, annulus_graph_from_endo,
                               annulus_model, disk_graph, disk_model,
                               genus2_model, sphere_model, torus_bouquet,
                               torus_model)

TL = build_tl_instance()
SW = build_sweedler_instance()
CG2 = GroupInstance(GradingGroup((2,)))
Z2H = build_z2_group_algebra_instance()
E = TL.strand_entry()
P = Entry("H", True)


def cg_trace():
    return normalize_trace(
        solve_mtrace_space(CG2, IdealDescriptor.whole_category(), sides=BOTH,
                           simple_names=[h.name for h in CG2.handles()])[0],
        (), CG2.field.one())


def test_degree_contractible_loop_is_trivial():
    g1 = CG2.element_entry((1,))
    d = closure_right(CG2, SlicedDiagram.make((g1,), [[ident(g1)]]))
    from skeinlab.surfaces import disk_graph
    assert degree(CG2, disk_graph(d)) == ()


def test_degree_annulus_core():
    g1 = CG2.element_entry((1,))
    g = annulus_graph_from_endo(CG2, SlicedDiagram.make((g1,), [[ident(g1)]]))
    assert degree(CG2, g) == ((1,),)


def test_degree_torus_bouquet():
    e0 = CG2.element_entry((0,))
    e1 = CG2.element_entry((1,))
    x = CG2.hom_basis((), (e1, e0, e1.flip(), e0.flip()))[0]
    g = torus_bouquet(CG2, x)
    assert degree(CG2, g) == ((1,), (0,))


def test_degree_invariant_under_moves():
    from skeinlab.diagrams import apply_move, find_moves
    g1 = CG2.element_entry((1,))
    f = CG2.identity((g1,))
    d = SlicedDiagram.make((g1,), [[coupon(f)], [coupon(f)]])
    g = annulus_graph_from_endo(CG2, d)
    base = degree(CG2, g)
    for mv, loc in find_moves(g.diagram):
        from skeinlab.surfaces import SurfaceGraph
        d2 = apply_move(CG2, g.diagram, mv, loc)
        g2 = SurfaceGraph(g.surface, d2, g.walls)
        assert degree(CG2, g2) == base


def test_homogenize_already_homogeneous():
    g1 = CG2.element_entry((1,))
    g = annulus_graph_from_endo(CG2, SlicedDiagram.make((g1,), [[ident(g1)]]))
    out = homogenize(CG2, g)
    assert len(out.terms) == 1 and out.terms[0][0] == CG2.field.one()


def test_homogenize_regular_annulus_core():
    h = Entry("H", True)
    g = annulus_graph_from_endo(Z2H, SlicedDiagram.make((h,), [[ident(h)]]))
    assert not is_homogeneous(Z2H, g)
    out = homogenize(Z2H, g)
    assert len(out.terms) == 2
    degs = sorted(degree(Z2H, gg) for _, gg in out.terms)
    assert degs == [((0,),), ((1,),)]


def test_homogenize_internal_edge_pairing_preserved():
    """Splitting an internal edge keeps every disk pairing value."""
    h = Entry("H", True)
    rng = random.Random(41)
    t = normalize_trace(
        solve_mtrace_space(Z2H, IdealDescriptor.whole_category(), sides=BOTH,
                           simple_names=["triv", "sign"])[0],
        (), Z2H.field.one())
    f = random_morphism(Z2H, (h,), (h,), rng)
    g2 = random_morphism(Z2H, (h,), (h,), rng)
    d = closure_right(Z2H, SlicedDiagram.make(
        (h,), [[coupon(f)], [coupon(g2)]]))
    g = disk_graph(d)
    out = homogenize(Z2H, g)
    assert len(out.terms) >= 2
    total = Z2H.field.zero()
    for c, gg in out.terms:
        assert is_homogeneous(Z2H, gg)
        total = total + c * eval_disk_skein(Z2H, t, gg)
    assert total == eval_disk_skein(Z2H, t, g)


def test_normalize_to_ideal_colors_unchanged_when_ideal():
    ideal = IdealDescriptor.whole_category()
    g1 = CG2.element_entry((1,))
    g = annulus_graph_from_endo(CG2, SlicedDiagram.make((g1,), [[ident(g1)]]))
    out = normalize_to_ideal_colors(CG2, g, ideal)
    assert len(out.terms) == 1 and out.terms[0][1] is g


def test_normalize_to_ideal_colors_fuses_parallel_pair():
    """The figure rewrite: a non-ideal edge next to an ideal edge fuses."""
    s = Entry("sign", True)
    ideal = IdealDescriptor.generated_by([P])
    rng = random.Random(42)
    bot = random_morphism(SW, (), (s, P), rng)      # coupon below
    top = random_morphism(SW, (s, P), (), rng)      # coupon above
    d = SlicedDiagram.make((), [[coupon(bot)], [ident(s), ident(P)],
                                [coupon(top)]])
    g = disk_graph(d)
    out = normalize_to_ideal_colors(SW, g, ideal)
    assert len(out.terms) == 1
    g2 = out.terms[0][1]
    for i, w in enumerate(g2.diagram.interfaces()):
        if i in (0, len(g2.diagram.interfaces()) - 1):
            continue
        for e in w:
            assert ideal.contains_entry(SW, e), (i, e)
    # pairing equality against the whole-category quantum trace
    ts = default_testset(SW, (), ["triv", "sign"])
    t = normalize_trace(solve_mtrace_space(
        SW, IdealDescriptor.whole_category(), testset=ts, sides=BOTH)[0],
        (), SW.field.one())
    assert eval_disk_skein(SW, t, g) == eval_disk_skein(SW, t, g2)


def _cg_ideal():
    gens = {}
    for el in CG2.grading.elements():
        gens[el] = CG2.element_entry(el)
    return IdealDescriptor.generated_by([CG2.element_entry((0,))], gens)


def test_bounds_group_category():
    ideal = _cg_ideal()
    # disk: no curves, the unit pairing only
    rep = skein_bound(CG2, disk_model(), [], ideal)
    assert rep.bound == 1
    # annulus: every class is one-dimensional
    for el in CG2.grading.elements():
        rep = spanning_bound_boundary(CG2, annulus_model(), [el], ideal)
        assert rep.bound == 1
        assert len(rep.spanning) == 1
    # torus: every class is one-dimensional
    for e1 in CG2.grading.elements():
        for e2 in CG2.grading.elements():
            rep = dim_bound_closed(CG2, torus_model(), [e1, e2], ideal)
            assert rep.bound == 1
            assert degree(CG2, rep.spanning[0]) == (e1, e2)


def test_bounds_sweedler_proj_with_commutant_oracle():
    ideal = IdealDescriptor.generated_by([P], {(): P})

    def oracle_hom_dim_unit_to(word):
        """Independent: invariants of the word module by direct nullspace."""
        acts = SW.word_action(word)
        f = SW.field
        dim = SW.word_dim(word)
        rows = []
        eps = SW.data.counit
        for i in SW.generators:
            m = acts[i] - ExactMatrix.identity(f, dim).scale(eps[i])
            rows.extend(list(m.row(r)) for r in range(dim))
        return len(nullspace(ExactMatrix.from_rows(f, rows, cols=dim)))

    rep = spanning_bound_boundary(SW, annulus_model(), [()], ideal)
    assert rep.word == (P, P.flip())
    assert rep.bound == oracle_hom_dim_unit_to(rep.word) == 4

    rep2 = dim_bound_closed(SW, torus_model(), [(), ()], ideal)
    assert rep2.word == (P, P, P.flip(), P.flip())
    assert rep2.bound == oracle_hom_dim_unit_to(rep2.word) == 64


def test_bounds_genus2_z2hopf():
    gens = {(0,): Entry("triv", True), (1,): Entry("sign", True)}
    ideal = IdealDescriptor.generated_by([Entry("triv", True)], gens)
    rep = dim_bound_closed(Z2H, genus2_model(), [(0,), (1,), (1,), (0,)], ideal)
    assert len(rep.word) == 8
    assert rep.bound == 1   # all objects are invertible


def test_missing_generator_errors():
    ideal = IdealDescriptor.generated_by([P], {(): P})
    sw_graded = Z2H
    gens = {(0,): Entry("triv", True)}
    ideal2 = IdealDescriptor.generated_by([Entry("triv", True)], gens)
    with pytest.raises(KeyError):
        spanning_bound_boundary(Z2H, annulus_model(), [(1,)], ideal2)


def test_stack_product_group_category():
    t = cg_trace()
    ideal = _cg_ideal()
    g1 = CG2.element_entry((1,))
    loop1 = SkeinElement.single(
        annulus_graph_from_endo(CG2, SlicedDiagram.make((g1,), [[ident(g1)]])),
        CG2.field.one())
    prod = stack_product(CG2, loop1, loop1)
    assert degree(CG2, prod.terms[0][1]) == ((0,),)   # classes multiply


def test_stack_product_pairing_and_associativity():
    rng = random.Random(43)
    words = [(E,), (E, E), (E, E, E), (E, E, E, E)]
    basis = solve_cyclic_traces(TL, words)
    f = random_morphism(TL, (E,), (E,), rng)
    g = random_morphism(TL, (E, E), (E, E), rng)
    h = random_morphism(TL, (E,), (E,), rng)
    af = SkeinElement.single(annulus_graph_from_endo(
        TL, SlicedDiagram.make((E,), [[coupon(f)]])), TL.field.one())
    ag = SkeinElement.single(annulus_graph_from_endo(
        TL, SlicedDiagram.make((E, E), [[coupon(g)]])), TL.field.one())
    ah = SkeinElement.single(annulus_graph_from_endo(
        TL, SlicedDiagram.make((E,), [[coupon(h)]])), TL.field.one())
    prod = stack_product(TL, af, ag)
    for hh in basis:
        want = hh.eval((E, E, E), TL.tensor(g, f))
        assert pair_with_cyclic_trace(TL, hh, prod) == want
    lhs = stack_product(TL, stack_product(TL, af, ag), ah)
    rhs = stack_product(TL, af, stack_product(TL, ag, ah))
    for hh in basis:
        assert pair_with_cyclic_trace(TL, hh, lhs) == \
            pair_with_cyclic_trace(TL, hh, rhs)


def test_dehn_twist_annulus():
    rng = random.Random(44)
    words = [(E,), (E, E)]
    basis = solve_cyclic_traces(TL, words)
    f = random_morphism(TL, (E,), (E,), rng)
    alpha = SkeinElement.single(annulus_graph_from_endo(
        TL, SlicedDiagram.make((E,), [[coupon(f)]])), TL.field.one())
    tw = dehn_twist_annulus(TL, alpha)
    # the single-strand twist acts by the framing scalar -A^3
    a = TL.a_param
    for hh in basis:
        assert pair_with_cyclic_trace(TL, hh, tw) == \
            (-(a ** 3)) * pair_with_cyclic_trace(TL, hh, alpha)
    back = dehn_twist_annulus(TL, tw, inverse=True)
    for hh in basis:
        assert pair_with_cyclic_trace(TL, hh, back) == \
            pair_with_cyclic_trace(TL, hh, alpha)


def test_dehn_twist_trivial_for_group_category():
    g1 = CG2.element_entry((1,))
    alpha = SkeinElement.single(annulus_graph_from_endo(
        CG2, SlicedDiagram.make((g1,), [[ident(g1)]])), CG2.field.one())
    tw = dehn_twist_annulus(CG2, alpha)
    words = [(g1,)]
    for hh in solve_cyclic_traces(CG2, words):
        assert pair_with_cyclic_trace(CG2, hh, tw) == \
            pair_with_cyclic_trace(CG2, hh, alpha)


def test_subgroup_gi_criterion():
    ideal = _cg_ideal()
    assert subgroup_GI_contains(CG2, (0,), ideal)[0] == "yes"
    assert subgroup_GI_contains(CG2, (1,), ideal)[0] == "yes"
    # an instance whose only degree-(1,) object is zero-dimensional
    f = Z2H.field
    triv = ModuleSpec("triv", 1, [ExactMatrix.identity(f, 1)] * 2, degree=(0,))
    zero = ModuleSpec("zero", 0, [ExactMatrix.zeros(f, 0, 0)] * 2, degree=(1,))
    inst = HopfInstance(group_algebra_z2_data(), [triv, zero],
                        grading=GradingGroup((2,)), label="z2-degenerate")
    ideal3 = IdealDescriptor.generated_by([Entry("triv", True)])
    assert subgroup_GI_contains(inst, (1,), ideal3)[0] == "unknown"


def test_graduation_pairing_kills_other_degrees():
    """Annulus functionals of one class vanish on the other class."""
    g0 = CG2.element_entry((0,))
    g1 = CG2.element_entry((1,))
    basis = solve_cyclic_traces(CG2, [(g0,), (g1,)])
    a0 = SkeinElement.single(annulus_graph_from_endo(
        CG2, SlicedDiagram.make((g0,), [[ident(g0)]])), CG2.field.one())
    a1 = SkeinElement.single(annulus_graph_from_endo(
        CG2, SlicedDiagram.make((g1,), [[ident(g1)]])), CG2.field.one())
    mat = [[pair_with_cyclic_trace(CG2, hh, a) for a in (a0, a1)]
           for hh in basis]
    from skeinlab.linalg import rank as mrank
    m = ExactMatrix.from_rows(CG2.field, mat, cols=2)
    assert mrank(m) == 2
    for hh in basis:
        v0 = pair_with_cyclic_trace(CG2, hh, a0)
        v1 = pair_with_cyclic_trace(CG2, hh, a1)
        assert v0.is_zero() or v1.is_zero()


def test_group_frame_transform():
    e0 = CG2.element_entry((0,))
    e1 = CG2.element_entry((1,))
    x = CG2.hom_basis((), (e1, e1, e1.flip(), e1.flip()))[0]
    g = torus_bouquet(CG2, x)
    sheared = group_frame_transform(CG2, g, [[1, 1], [0, 1]])
    assert degree(CG2, sheared) == ((0,), (1,))
