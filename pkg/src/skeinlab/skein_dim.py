"""Graded skein computations: degrees, homogenization, dimension bounds.

The degree of a homogeneous graph is the per-curve signed product of the
degrees of its wall-crossing colors.  Dimension bounds come from fusing
every curve crossing into one generator-colored edge and gathering the
rest into a single coupon: the bound is the dimension of the hom space
of the resulting boundary word, realized by an explicit spanning set of
single-coupon graphs.

Also here: the radial stacking product and the Dehn twist of annulus
skeins, and the tensor-unit retract criterion for degrees acting on an
ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .category import CategoryInstance, Entry, Morphism, Word, word_dual
from .diagrams import SlicedDiagram, coupon, ident, eval_rt
from .fields import Scalar
from .mtrace import CyclicTrace, IdealDescriptor, MTrace
from .surfaces import (SkeinElement, SurfaceGraph, SurfaceModel, WallRecord,
                       annulus_core_endo, annulus_graph_from_endo,
                       annulus_model, annulus_spanning_graph, torus_bouquet)

HomologyClass = tuple


def degree(cat: CategoryInstance, g: SurfaceGraph) -> HomologyClass:
    """Per-curve signed product of crossing degrees; needs homogeneity."""
    k = g.surface.curve_count()
    out = [cat.grading.identity() for _ in range(k)]
    for w in g.walls:
        d = cat.entry_degree(g.diagram.top[w.out_pos])
        if d is None:
            raise ValueError("degree of a non-homogeneous graph; homogenize first")
        if w.sign < 0:
            d = cat.grading.inv(d)
        out[w.curve] = cat.grading.mul(out[w.curve], d)
    for e in g.diagram.atom_colors():
        if cat.entry_degree(e) is None:
            raise ValueError("degree of a non-homogeneous graph; homogenize first")
    return tuple(out)


def is_homogeneous(cat: CategoryInstance, g: SurfaceGraph) -> bool:
    return all(cat.entry_degree(e) is not None for e in g.colors())


def homogenize(cat: CategoryInstance, g: SurfaceGraph) -> SkeinElement:
    """Split every non-homogeneous edge along registered summand projectors."""
    one = cat.field.one()
    pending = [(one, g)]
    done: list[tuple[Scalar, SurfaceGraph]] = []
    guard = 0
    while pending:
        guard += 1
        if guard > 10000:
            raise RuntimeError("homogenize failed to terminate")
        c, cur = pending.pop()
        spot = _first_inhomogeneous_spot(cat, cur)
        if spot is None:
            done.append((c, cur))
            continue
        for c2, nxt in _split_at_spot(cat, cur, spot):
            pending.append((c * c2, nxt))
    return SkeinElement(g.surface, done)


def _first_inhomogeneous_spot(cat: CategoryInstance, g: SurfaceGraph):
    # wall entries first, then internal interface slots
    for w in g.walls:
        if cat.entry_degree(g.diagram.top[w.out_pos]) is None:
            return ("wall", w)
    words = g.diagram.interfaces()
    for i in range(1, len(words) - 1):
        for j, e in enumerate(words[i]):
            if cat.entry_degree(e) is None:
                return ("slot", i, j)
    return None


def _summands(cat: CategoryInstance, name: str):
    parts = getattr(cat, "summands", {}).get(name)
    if not parts:
        raise ValueError(f"no summand projectors registered for {name!r}")
    return parts


def _split_at_spot(cat: CategoryInstance, g: SurfaceGraph, spot):
    out = []
    one = cat.field.one()
    if spot[0] == "wall":
        w: WallRecord = spot[1]
        e_out = g.diagram.top[w.out_pos]
        parts = _summands(cat, e_out.obj)
        for part in parts:
            # p on the outgoing leg, dual of the inclusion on the return leg
            p = part.proj if e_out.up else cat.dual_morphism(part.inj)
            jdual = cat.dual_morphism(part.inj) if e_out.up else part.proj
            row = []
            for pos, e in enumerate(g.diagram.top):
                if pos == w.out_pos:
                    row.append(coupon(p if e_out.up else _retype(cat, p, e)))
                elif pos == w.in_pos:
                    row.append(coupon(jdual if e_out.up else _retype(cat, jdual, e)))
                else:
                    row.append(ident(e))
            new_d = SlicedDiagram.make((), list(g.diagram.slices) + [row])
            out.append((one, SurfaceGraph(g.surface, new_d, g.walls)))
        return out
    _, i, j = spot
    e = g.diagram.interfaces()[i][j]
    parts = _summands(cat, e.obj)
    for part in parts:
        p = part.proj if e.up else cat.dual_morphism(part.inj)
        jj = part.inj if e.up else cat.dual_morphism(part.proj)
        word_i = g.diagram.interfaces()[i]
        row_p = [ident(x) for x in word_i[:j]] + [coupon(p)] + \
            [ident(x) for x in word_i[j + 1:]]
        row_j = [ident(x) for x in word_i[:j]] + [coupon(jj)] + \
            [ident(x) for x in word_i[j + 1:]]
        new_slices = list(g.diagram.slices[:i]) + [row_p, row_j] + \
            list(g.diagram.slices[i:])
        new_d = SlicedDiagram.make((), new_slices)
        out.append((one, SurfaceGraph(g.surface, new_d, g.walls)))
    return out


def _retype(cat: CategoryInstance, f: Morphism, e: Entry) -> Morphism:
    raise ValueError("down-oriented non-homogeneous wall entries are not supported")


# ---------------------------------------------------------------------------
# recoloring toward ideal colors (the parallel-edge fusion rewrite)


def normalize_to_ideal_colors(cat: CategoryInstance, g: SurfaceGraph,
                              ideal: IdealDescriptor) -> SkeinElement:
    """Recolor edges into the ideal by fusing with a parallel ideal edge.

    Supported configuration: a non-ideal strand slot whose right neighbor
    is ideal-colored, both running in parallel through identity atoms
    between two coupons.  The pair is fused into one word-object edge and
    the coupons absorb the retyping (the evaluation pairing is
    unchanged: the inserted retypes are mutually inverse).
    """
    one = cat.field.one()
    cur = g
    guard = 0
    while True:
        guard += 1
        if guard > 1000:
            raise RuntimeError("normalize_to_ideal_colors failed to terminate")
        bad = _first_non_ideal_slot(cat, cur, ideal)
        if bad is None:
            return SkeinElement(cur.surface, [(one, cur)])
        cur = _fuse_with_right_neighbor(cat, cur, ideal, bad)


def _first_non_ideal_slot(cat, g: SurfaceGraph, ideal):
    words = g.diagram.interfaces()
    for i in range(1, len(words) - 1):
        for j, e in enumerate(words[i]):
            if not ideal.contains_entry(cat, e):
                return (i, j)
    for w in g.walls:
        if not ideal.contains_entry(cat, g.diagram.top[w.out_pos]):
            raise ValueError("non-ideal wall colors are not handled; fuse walls first")
    return None


def _fuse_with_right_neighbor(cat, g: SurfaceGraph, ideal, bad) -> SurfaceGraph:
    i, j = bad
    words = g.diagram.interfaces()
    w_i = words[i]
    if j + 1 >= len(w_i) or not ideal.contains_entry(cat, w_i[j + 1]):
        raise ValueError(
            "no ideal-colored edge immediately right of the non-ideal edge")
    # find the maximal run of slices where both slots pass through identities
    lo = i
    while lo > 0 and _is_id_pair(g.diagram.slices[lo - 1], words[lo - 1], j):
        lo -= 1
    hi = i
    while hi < len(g.diagram.slices) and _is_id_pair(g.diagram.slices[hi], words[hi], j):
        hi += 1
    if lo == 0 or hi == len(g.diagram.slices):
        raise ValueError("the parallel pair must be bounded by coupons")
    pair: Word = (w_i[j], w_i[j + 1])
    fuse = cat.retype_word_to_object(pair)      # pair -> (F)
    unfuse = cat.invert_endo_like(fuse)
    fused_entry = fuse.cod[0]
    if not ideal.contains_entry(cat, fused_entry):
        raise ValueError("fused object did not land in the ideal")
    new_slices = [list(s) for s in g.diagram.slices]
    # insert the fuse coupon just above interface lo, the unfuse below hi;
    # middle rows get the two identity atoms replaced by one fused identity
    row_f = [ident(x) for x in words[lo][:j]] + [coupon(fuse)] + \
        [ident(x) for x in words[lo][j + 2:]]
    row_u = [ident(x) for x in words[hi][:j]] + [coupon(unfuse)] + \
        [ident(x) for x in words[hi][j + 2:]]
    rebuilt = new_slices[:lo] + [row_f]
    for s_idx in range(lo, hi):
        s = new_slices[s_idx]
        row = []
        bcol = 0
        skip_next = 0
        for a in s:
            if bcol == j and a.kind == "id":
                row.append(ident(fused_entry))
                bcol += 1
                skip_next = 1
                continue
            if skip_next and a.kind == "id" and bcol == j + 1:
                skip_next = 0
                bcol += 1
                continue
            row.append(a)
            bcol += len(a.bottom())
        rebuilt.append(row)
    rebuilt.append(row_u)
    rebuilt.extend(new_slices[hi:])
    new_d = SlicedDiagram.make((), rebuilt)
    return SurfaceGraph(g.surface, new_d, g.walls)


def _is_id_pair(s, word, j) -> bool:
    bcol = 0
    found = 0
    for a in s:
        if bcol in (j, j + 1):
            if a.kind != "id":
                return False
            found += 1
        bcol += len(a.bottom())
    return found == 2


# ---------------------------------------------------------------------------
# dimension bounds


@dataclass
class GradedSkeinReport:
    surface: SurfaceModel
    degree_class: HomologyClass
    bound: int
    word: Word
    spanning: list[SurfaceGraph]

    def to_json(self, cat: CategoryInstance) -> dict:
        return {
            "class": [cat.grading.format(h) for h in self.degree_class],
            "bound": self.bound,
            "word": [str(e) for e in self.word],
            "spanning_size": len(self.spanning),
        }


def skein_bound(cat: CategoryInstance, surface: SurfaceModel,
                degree_class: Sequence, ideal: IdealDescriptor) -> GradedSkeinReport:
    """Upper bound for the graded piece: hom dimension of the fused word.

    After fusing each curve crossing into a single generator edge the
    whole graph gathers into one coupon whose type is the polygon
    boundary word; the spanning set is one graph per hom-basis element.
    """
    surface.validate()
    k = surface.curve_count()
    if len(degree_class) != k:
        raise ValueError("degree class length must match the curve count")
    gens: dict[int, Entry] = {}
    for i in range(k):
        gens[i] = ideal.generator_for_degree(tuple(degree_class[i]))
    word: list[Entry] = []
    slot_curve: list[tuple[int, int]] = []   # (curve, sign) per boundary slot
    for t in surface.sides:
        if t[0] != "curve":
            continue
        i, sign = t[1], t[2]
        e = gens[i]
        word.append(e if sign > 0 else e.flip())
        slot_curve.append((i, sign))
    word_t = tuple(word)
    basis = cat.hom_basis((), word_t)
    spanning = []
    walls = []
    by_curve: dict[int, dict[int, int]] = {}
    for pos, (i, sign) in enumerate(slot_curve):
        by_curve.setdefault(i, {})[sign] = pos
    for i, ps in sorted(by_curve.items()):
        walls.append(WallRecord(i, 1, ps[1], ps[-1]))
    for x in basis:
        d = SlicedDiagram.make((), [[coupon(x)]])
        spanning.append(SurfaceGraph(surface, d, tuple(walls)))
    return GradedSkeinReport(surface, tuple(tuple(h) for h in degree_class),
                             len(basis), word_t, spanning)


def spanning_bound_boundary(cat, surface, degree_class, ideal) -> GradedSkeinReport:
    if surface.boundary == 0 and surface.sides:
        raise ValueError("use dim_bound_closed for closed surfaces")
    return skein_bound(cat, surface, degree_class, ideal)


def dim_bound_closed(cat, surface, degree_class, ideal) -> GradedSkeinReport:
    if surface.boundary != 0:
        raise ValueError("use spanning_bound_boundary for bounded surfaces")
    if not cat.grading.orders and surface.genus > 0:
        pass  # trivial group: fine (everything in one degree)
    return skein_bound(cat, surface, degree_class, ideal)


# ---------------------------------------------------------------------------
# annulus algebra: stacking product and Dehn twist


def stack_product(cat: CategoryInstance, alpha: SkeinElement,
                  beta: SkeinElement) -> SkeinElement:
    """Radially nested product: beta on the inner annulus, alpha outside."""
    if not cat.braided:
        raise ValueError("the stacking product needs a braided instance")
    if alpha.surface != annulus_model() or beta.surface != annulus_model():
        raise ValueError("stack_product acts on annulus skeins")
    terms = []
    for ca, ga in alpha.terms:
        fa = annulus_core_endo(cat, ga)
        for cb, gb in beta.terms:
            fb = annulus_core_endo(cat, gb)
            f = cat.tensor(fb, fa)
            d = SlicedDiagram.make(f.dom, [[coupon(f)]])
            terms.append((ca * cb, annulus_graph_from_endo(cat, d)))
    return SkeinElement(annulus_model(), terms)


def dehn_twist_annulus(cat: CategoryInstance, alpha: SkeinElement,
                       inverse: bool = False) -> SkeinElement:
    """Insert one full twist of the crossing cable at a radius."""
    if not cat.ribbon:
        raise ValueError("the Dehn twist needs a ribbon instance")
    terms = []
    for c, g in alpha.terms:
        f = annulus_core_endo(cat, g)
        tw = cat.twist_inverse(f.dom) if inverse else cat.twist(f.dom)
        f2 = cat.compose(f, tw)
        d = SlicedDiagram.make(f2.dom, [[coupon(f2)]])
        terms.append((c, annulus_graph_from_endo(cat, d)))
    return SkeinElement(annulus_model(), terms)


def pair_with_cyclic_trace(cat: CategoryInstance, h: CyclicTrace,
                           alpha: SkeinElement) -> Scalar:
    out = cat.field.zero()
    for c, g in alpha.terms:
        f = annulus_core_endo(cat, g)
        out = out + c * h.eval(f.dom, f)
    return out


# ---------------------------------------------------------------------------
# the subgroup of degrees acting trivially on an ideal


def subgroup_GI_contains(cat: CategoryInstance, element,
                         ideal: IdealDescriptor):
    """Sufficient retract criterion: ("yes", witness) or ("unknown",).

    Answers yes when some registered degree-`element` object W has a
    nonzero one-sided quantum dimension: every V is then a retract of
    (V (x) W*) (x) W through the scaled (co)evaluations.
    """
    element = tuple(element)
    if element == cat.grading.identity():
        return ("yes", {"object": None, "scalar": cat.field.one()})
    for h in cat.handles():
        if h.degree != element:
            continue
        w: Word = (Entry(h.name, True),)
        s = cat.quantum_dim_left(w)
        if not s.is_zero():
            return ("yes", {"object": h.name, "scalar": s})
        s = cat.quantum_dim_right(w)
        if not s.is_zero():
            return ("yes", {"object": h.name, "scalar": s, "side": "right"})
    return ("unknown",)


def group_frame_transform(cat: CategoryInstance, g: SurfaceGraph,
                          frame: Sequence[Sequence[int]]) -> SurfaceGraph:
    """Re-read a group-instance torus bouquet in a new homology frame.

    For the group category all structural data is scalar, so the mapping
    torus transformation acts on the class (g1, g2) by the integer matrix
    and fixes the coupon scalar.  This realizes handlebody functionals
    whose meridian is a (p, q)-curve.
    """
    from .instances.groupcat import GroupInstance
    if not isinstance(cat, GroupInstance):
        raise ValueError("frame transforms are implemented for group instances")
    cls = degree(cat, g)
    if len(cls) != 2:
        raise ValueError("frame transforms act on torus graphs")
    (a, b), (c, d) = frame
    g1, g2 = cls
    new1 = cat.grading.mul(_pow(cat, g1, a), _pow(cat, g2, b))
    new2 = cat.grading.mul(_pow(cat, g1, c), _pow(cat, g2, d))
    scalar = eval_rt(cat, g.diagram).payload.get(0, 0)
    e1, e2 = cat.element_entry(new1), cat.element_entry(new2)
    x = cat.hom_basis((), (e1, e2, e1.flip(), e2.flip()))[0]
    x = cat.scale(scalar, x)
    return torus_bouquet(cat, x)


def _pow(cat: CategoryInstance, element, n: int):
    out = cat.grading.identity()
    step = element if n >= 0 else cat.grading.inv(element)
    for _ in range(abs(n)):
        out = cat.grading.mul(out, step)
    return out


def gi_retract_witness(cat: CategoryInstance, target: Word, wname: str):
    """The explicit retract of V inside (V (x) W*) (x) W from the criterion."""
    w: Word = (Entry(wname, True),)
    s = cat.quantum_dim_left(w)
    if s.is_zero():
        raise ValueError("criterion scalar vanishes")
    inj = cat.tensor(cat.identity(target), cat.ev_word(w, "coev-right"))
    proj = cat.scale(s.inverse(),
                     cat.tensor(cat.identity(target), cat.ev_word(w, "ev-left")))
    return inj, proj
