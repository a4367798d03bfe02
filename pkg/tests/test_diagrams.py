"""Evaluation functor, moves, rotation and serialization of sliced diagrams."""

import random

import pytest

from skeinlab.category import Entry, GradingGroup, word_dual
from skeinlab.diagrams import (Atom, CAP_L, CAP_R, CROSS_NEG, CROSS_POS, CUP_L,
                               CUP_R, SlicedDiagram, apply_move, closure_right,
                               coupon, diagram_from_json, diagram_to_json,
                               eval_rt, find_moves, ident, rotate_pi)
from skeinlab.instances import GroupInstance, build_sweedler_instance, build_tl_instance
from skeinlab.sampling import random_closed_graph, random_morphism
from skeinlab.mtrace import IdealDescriptor

TL = build_tl_instance()
SW = build_sweedler_instance()
CG = GroupInstance(GradingGroup((2,)))
E = TL.strand_entry()


def test_single_id_slice():
    d = SlicedDiagram.make((E,), [[ident(E)]])
    assert TL.equal(eval_rt(TL, d), TL.identity((E,)))


def test_tl_closed_loop_is_delta():
    d = SlicedDiagram.make((), [[Atom(CUP_L, (E,))], [Atom(CAP_R, (E,))]])
    assert TL.scalar_of(eval_rt(TL, d)) == TL.delta


def test_group_like_closed_diagram_is_identity():
    g = CG.element_entry((1,))
    d = SlicedDiagram.make((), [[Atom(CUP_L, (g,))], [Atom(CAP_R, (g,))]])
    f = eval_rt(CG, d)
    assert CG.scalar_of(f) == CG.field.one()
    big = closure_right(CG, SlicedDiagram.make((g, g), [[ident(g), ident(g)]]))
    assert CG.scalar_of(eval_rt(CG, big)) == CG.field.one()


def test_interface_mismatch_rejected():
    with pytest.raises(ValueError):
        SlicedDiagram.make((E,), [[Atom(CAP_R, (E,))]])


def test_crossing_needs_braided_instance():
    class Unbraided(type(CG)):
        braided = False
    ub = Unbraided(GradingGroup((2,)))
    g = ub.element_entry((1,))
    d = SlicedDiagram.make((g, g), [[Atom(CROSS_POS, (g, g))]])
    with pytest.raises(ValueError):
        eval_rt(ub, d)


def test_functoriality_stack_and_beside():
    rng = random.Random(11)
    w = (E, E)
    for _ in range(10):
        f = random_morphism(TL, w, w, rng)
        g = random_morphism(TL, w, w, rng)
        d1 = SlicedDiagram.make(w, [[coupon(f)]])
        d2 = SlicedDiagram.make(w, [[coupon(g)]])
        stacked = d1.stack(d2)
        assert TL.equal(eval_rt(TL, stacked),
                        TL.compose(eval_rt(TL, d2), eval_rt(TL, d1)))
        side = d1.beside(d2)
        assert TL.equal(eval_rt(TL, side),
                        TL.tensor(eval_rt(TL, d1), eval_rt(TL, d2)))


def test_rotation_gives_dual():
    rng = random.Random(12)
    for cat, w in ((TL, (E, E)), (SW, (Entry("H", True),))):
        for _ in range(5):
            f = random_morphism(cat, w, w, rng)
            d = SlicedDiagram.make(w, [[coupon(f)]])
            rot = rotate_pi(cat, d)
            assert rot.bottom == word_dual(w)
            assert cat.equal(eval_rt(cat, rot), cat.dual_morphism(f))


def _random_move_diagrams(rng):
    """Diagrams rich in applicable moves."""
    out = []
    f = TL.hom_basis((E, E), (E, E))[1]
    idm = TL.identity((E,))
    out.append(SlicedDiagram.make((E, E), [[Atom(CROSS_POS, (E, E))],
                                           [Atom(CROSS_NEG, (E, E))]]))
    out.append(SlicedDiagram.make((E,), [[ident(E), Atom(CUP_R, (E,))],
                                         [Atom(CAP_R, (E,)), ident(E)]]))
    out.append(SlicedDiagram.make((E,), [[Atom(CUP_L, (E,)), ident(E)],
                                         [ident(E), Atom(CAP_L, (E,))]]))
    out.append(SlicedDiagram.make((E, E), [[coupon(f)], [coupon(f)]]))
    g1 = TL.hom_basis((E,), (E,))[0]
    out.append(SlicedDiagram.make((E, E), [[coupon(g1), ident(E)],
                                           [ident(E), coupon(g1)]]))
    out.append(SlicedDiagram.make(
        (E, E), [[coupon(f), Atom(CUP_L, (E,))],
                 [ident(E), ident(E), Atom(CAP_R, (E,))]]))
    out.append(SlicedDiagram.make(
        (E, E, E), [[Atom(CROSS_POS, (E, E)), ident(E)],
                    [ident(E), Atom(CROSS_POS, (E, E))],
                    [Atom(CROSS_POS, (E, E)), ident(E)]]))
    out.append(SlicedDiagram.make((E,), [[Atom("twist", (E,))],
                                         [Atom("twist_inv", (E,))]]))
    return out


def test_every_move_preserves_evaluation():
    rng = random.Random(13)
    checked = {}
    for d in _random_move_diagrams(rng):
        for mv, loc in find_moves(d):
            d2 = apply_move(TL, d, mv, loc)
            assert TL.equal(eval_rt(TL, d), eval_rt(TL, d2)), f"{mv} at {loc}"
            checked[mv] = checked.get(mv, 0) + 1
    assert set(checked) >= {"slide", "zigzag-cancel", "coupon-push", "R2",
                            "R3", "twist-cancel"}


def test_move_invariance_many_random_locations():
    rng = random.Random(14)
    ideal = IdealDescriptor.whole_category()
    pool = [(E,), (E, E)]
    total = 0
    sources = list(_random_move_diagrams(rng))
    for _ in range(100):
        sources.append(random_closed_graph(TL, ideal, rng, pool, depth=3).diagram)
    for d in sources:
        for mv, loc in find_moves(d):
            d2 = apply_move(TL, d, mv, loc)
            assert TL.equal(eval_rt(TL, d), eval_rt(TL, d2))
            total += 1
        if total > 200:
            break
    assert total >= 100


def test_inapplicable_move_rejected():
    d = SlicedDiagram.make((E, E), [[Atom(CROSS_POS, (E, E))],
                                    [Atom(CROSS_POS, (E, E))]])
    with pytest.raises(ValueError):
        apply_move(TL, d, "R2", (0, 0, 0))


def test_json_round_trip_lossless():
    f = TL.hom_basis((E, E), (E, E))[1]
    d = SlicedDiagram.make(
        (E, E, E), [[Atom(CROSS_POS, (E, E)), ident(E)],
                    [coupon(f), Atom("twist", (E,))],
                    [ident(E), ident(E), Atom("twist_inv", (E,))]])
    doc = diagram_to_json(d)
    import json
    doc2 = json.loads(json.dumps(doc))
    assert diagram_from_json(TL, doc2) == d


def test_json_version_check():
    with pytest.raises(ValueError):
        diagram_from_json(TL, {"version": 99, "bottom": [], "top": [], "slices": []})
