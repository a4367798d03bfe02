"""Surfaces as polygon models, graphs on them, and skein elements.

A surface is presented by its cut-open polygon: a cyclic list of sides,
each either free boundary or one side of a curve of the cutting system
(every curve has a + and a - side, glued with reversed orientation).
A graph on the surface is a sliced diagram living in the polygon whose
top word lists the wall-crossing strand ends in polygon-boundary order;
wall records pair the exit and re-entry slots of each crossing edge.

Closed graphs on the disk and the sphere are plain closed diagrams; the
planar faces needed for cutting paths and infinity-point choices are
computed from the diagram's interface gaps by a sweep.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from .category import CategoryInstance, Entry, Morphism, Word, word_dual
from .diagrams import (Atom, CAP_R, COUPON, CUP_L, SlicedDiagram, _atom_spans,
                       _coev_cascade_slices, _ev_cascade_slices, atom_from_json,
                       atom_to_json, coupon, diagram_from_json, diagram_to_json,
                       entry_from_json, entry_to_json, eval_rt, ident)
from .fields import Scalar

DISK = "disk"
SPHERE = "sphere"
POLYGON = "polygon"


@dataclass(frozen=True)
class SurfaceModel:
    """Genus, boundary count and the polygon-side word of the curve system.

    ``sides`` lists tokens in boundary order: ("curve", i, +1/-1) for the
    two sides of curve i, or ("free", j) for an arc of genuine boundary.
    The disk (no curves, one free side) and the sphere (no sides at all)
    are the closed-diagram cases.
    """

    genus: int
    boundary: int
    sides: tuple[tuple, ...] = ()

    def kind(self) -> str:
        if not self.sides:
            return SPHERE if self.boundary == 0 else DISK
        return POLYGON

    def curve_count(self) -> int:
        return len({t[1] for t in self.sides if t[0] == "curve"})

    def validate(self) -> None:
        curves: dict[int, list[int]] = {}
        for t in self.sides:
            if t[0] == "curve":
                curves.setdefault(t[1], []).append(t[2])
            elif t[0] != "free":
                raise ValueError(f"bad side token {t!r}")
        for i, signs in curves.items():
            if sorted(signs) != [-1, 1]:
                raise ValueError(f"curve {i} must appear once with each sign")
        free = sum(1 for t in self.sides if t[0] == "free")
        k = len(curves)
        if self.boundary == 0 and self.sides and k != 2 * self.genus:
            raise ValueError("closed one-vertex model needs 2*genus curves")
        # Euler characteristic of the glued polygon must match (genus, boundary)
        chi = self._euler(free, k)
        if chi != 2 - 2 * self.genus - self.boundary:
            raise ValueError(
                f"polygon model is inconsistent: chi={chi}, "
                f"expected {2 - 2 * self.genus - self.boundary}")

    def _euler(self, free: int, k: int) -> int:
        n = len(self.sides)
        if n == 0:
            return 2 - self.boundary  # sphere or disk-as-no-sides
        # corner orbits under the side gluings; corner c sits between side
        # c-1 and side c.  Each side has endpoints (start, end) = (c, c+1).
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        pos: dict[tuple[int, int], int] = {}
        for idx, t in enumerate(self.sides):
            if t[0] == "curve":
                pos[(t[1], t[2])] = idx
        for i in {t[1] for t in self.sides if t[0] == "curve"}:
            a, b = pos[(i, 1)], pos[(i, -1)]
            # orientation-reversing gluing: start of + side ~ end of - side
            union(a, (b + 1) % n)
            union((a + 1) % n, b)
        vertices = len({find(c) for c in range(n)})
        edges = k + free
        return vertices - edges + 1


def disk_model() -> SurfaceModel:
    return SurfaceModel(0, 1, ())


def sphere_model() -> SurfaceModel:
    return SurfaceModel(0, 0, ())


def annulus_model() -> SurfaceModel:
    return SurfaceModel(0, 2, (("curve", 0, 1), ("free", 0), ("curve", 0, -1), ("free", 1)))


def torus_model() -> SurfaceModel:
    return SurfaceModel(1, 0, (("curve", 0, 1), ("curve", 1, 1),
                               ("curve", 0, -1), ("curve", 1, -1)))


def genus2_model() -> SurfaceModel:
    return SurfaceModel(2, 0, (("curve", 0, 1), ("curve", 1, 1),
                               ("curve", 0, -1), ("curve", 1, -1),
                               ("curve", 2, 1), ("curve", 3, 1),
                               ("curve", 2, -1), ("curve", 3, -1)))


@dataclass(frozen=True)
class WallRecord:
    """One edge crossing one curve: exit slot then re-entry slot."""

    curve: int
    sign: int          # +1 when the exit happens through the + side
    out_pos: int       # index into the diagram's top word
    in_pos: int


@dataclass(frozen=True)
class SurfaceGraph:
    surface: SurfaceModel
    diagram: SlicedDiagram          # bottom = (), top = boundary word
    walls: tuple[WallRecord, ...] = ()

    def validate(self, cat: CategoryInstance) -> None:
        self.surface.validate()
        if self.diagram.bottom != ():
            raise ValueError("surface graphs are closed: bottom word must be empty")
        used = sorted([w.out_pos for w in self.walls] + [w.in_pos for w in self.walls])
        if used != list(range(len(self.diagram.top))):
            raise ValueError("wall records must partition the boundary word")
        for w in self.walls:
            a = self.diagram.top[w.out_pos]
            b = self.diagram.top[w.in_pos]
            if a.flip() != b:
                raise ValueError(
                    f"wall colors must match across curve {w.curve}: {a} vs {b}")
        if self.surface.kind() in (DISK, SPHERE) and self.walls:
            raise ValueError("disk/sphere graphs cannot cross curves")

    def colors(self) -> list[Entry]:
        return self.diagram.atom_colors()


# ---------------------------------------------------------------------------
# skein elements: formal linear combinations of graphs on one surface


@dataclass
class SkeinElement:
    surface: SurfaceModel
    terms: list[tuple[Scalar, SurfaceGraph]]

    def __post_init__(self):
        self.terms = [(c, g) for c, g in self.terms if not c.is_zero()]
        for _, g in self.terms:
            if g.surface != self.surface:
                raise ValueError("all graphs of a skein element share one surface")

    @staticmethod
    def single(g: SurfaceGraph, one: Scalar) -> "SkeinElement":
        return SkeinElement(g.surface, [(one, g)])

    def scaled(self, c: Scalar) -> "SkeinElement":
        return SkeinElement(self.surface, [(c * a, g) for a, g in self.terms])

    def plus(self, other: "SkeinElement") -> "SkeinElement":
        if self.surface != other.surface:
            raise ValueError("skein elements live on different surfaces")
        return SkeinElement(self.surface, list(self.terms) + list(other.terms))


# ---------------------------------------------------------------------------
# planar faces of a closed diagram (gap sweep)


def faces_of_closed(d: SlicedDiagram) -> tuple[dict[tuple[int, int], int], int]:
    """Map (interface, gap) -> face id for a closed diagram; outer face id.

    Gap j at interface i is the region slot between strands j-1 and j.
    """
    if d.bottom or d.top:
        raise ValueError("face sweep needs a closed diagram")
    words = d.interfaces()
    nodes: list[tuple[int, int]] = []
    for i, w in enumerate(words):
        for j in range(len(w) + 1):
            nodes.append((i, j))
    index = {n: k for k, n in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(index[a])] = find(index[b])

    for i, s in enumerate(d.slices):
        pb = pt = 0
        union((i, 0), (i + 1, 0))
        for a in s:
            union((i, pb), (i + 1, pt))  # column left of the atom
            pb += len(a.bottom())
            pt += len(a.top())
        union((i, pb), (i + 1, pt))      # rightmost column
    gap_face = {}
    roots: dict[int, int] = {}
    for n in nodes:
        r = find(index[n])
        if r not in roots:
            roots[r] = len(roots)
        gap_face[n] = roots[r]
    outer = gap_face[(0, 0)]
    return gap_face, outer


# ---------------------------------------------------------------------------
# straight cutting paths


@dataclass(frozen=True)
class StraightCut:
    """A cutting path entering horizontally at an interface.

    Entering from the left at interface i and crossing the first p
    strands; or from the right crossing the last p strands (evaluated by
    rotating the diagram).  The end face is where the path stops.
    """

    interface: int
    side: str        # "left" | "right"
    count: int

    def describe(self) -> str:
        return f"{self.side}@{self.interface}x{self.count}"


def enumerate_straight_cuts(d: SlicedDiagram, *, sides=("left", "right")) -> list[StraightCut]:
    out = []
    words = d.interfaces()
    for i, w in enumerate(words):
        for p in range(1, len(w) + 1):
            for side in sides:
                out.append(StraightCut(i, side, p))
    return out


def cut_word(d: SlicedDiagram, cut: StraightCut) -> Word:
    w = d.interfaces()[cut.interface]
    if cut.side == "left":
        return w[:cut.count]
    return word_dual(w[len(w) - cut.count:])


def cut_end_gap(cut: StraightCut, word_len: int) -> int:
    return cut.count if cut.side == "left" else word_len - cut.count


def split_at_interface(d: SlicedDiagram, i: int) -> tuple[SlicedDiagram, SlicedDiagram]:
    words = d.interfaces()
    lower = SlicedDiagram(d.bottom, words[i], d.slices[:i])
    upper = SlicedDiagram(words[i], d.top, d.slices[i:])
    return lower, upper


def cut_morphism(cat: CategoryInstance, d: SlicedDiagram, cut: StraightCut) -> Morphism:
    """The endomorphism read along a straight cutting path of a closed diagram.

    Left cuts: with lower part L: I -> w and upper part U: w -> I and the
    split w = a (x) b (a the crossed prefix),

        f = [ (Id_a (x) ev_R_b)(L (x) Id_dual(b)) ]  after
            [ (U (x) Id_dual(b))(Id_a (x) coev_L_b) ]   in End(a).

    Right cuts evaluate the pi-rotated diagram with a left cut, which is
    the boxed graph seen from the other side of the path.
    """
    from .diagrams import rotate_pi
    if cut.side == "right":
        rot = rotate_pi(cat, d)
        mirror = StraightCut(len(d.slices) - cut.interface, "left", cut.count)
        return cut_morphism(cat, rot, mirror)
    lower, upper = split_at_interface(d, cut.interface)
    w = lower.top
    a, b = w[:cut.count], w[cut.count:]
    bd = word_dual(b)
    lmor = eval_rt(cat, lower)
    umor = eval_rt(cat, upper)
    u_flat = cat.compose(cat.tensor(umor, cat.identity(bd)),
                         cat.tensor(cat.identity(a), cat.ev_word(b, "coev-left")))
    l_sharp = cat.compose(cat.tensor(cat.identity(a), cat.ev_word(b, "ev-right")),
                          cat.tensor(lmor, cat.identity(bd)))
    return cat.compose(l_sharp, u_flat)


# ---------------------------------------------------------------------------
# admissibility and skein relations


def admissible_check(cat: CategoryInstance, g: SurfaceGraph, ideal) -> tuple[bool, Optional[Entry]]:
    """Is some edge of the (connected) ambient surface colored in the ideal?

    Returns the verdict and one witness edge color when admissible.
    """
    for e in g.colors():
        if ideal.contains_entry(cat, e):
            return True, e
    return False, None


@dataclass(frozen=True)
class BoxRegion:
    """A contiguous slice range x strand-column range of the diagram."""

    slice_lo: int
    slice_hi: int    # exclusive
    col_lo: int
    col_hi: int      # exclusive, in bottom columns of slice_lo


def _atom_inside(b0: int, b1: int, lo: int, hi: int) -> bool:
    """Box membership for an atom with bottom span [b0, b1)."""
    if b1 > b0:
        return b0 >= lo and b1 <= hi
    # zero bottom width (cups, bottomless coupons): by column, open range
    return lo < hi and lo <= b0 <= hi and not (b0 == lo == hi)


def _box_rows(d: SlicedDiagram, box: BoxRegion):
    """Per slice in range: (inside atoms, outside (col, atom) pairs, new range)."""
    words = d.interfaces()
    if box.col_hi > len(words[box.slice_lo]) or box.col_lo < 0 or \
            box.col_lo > box.col_hi or box.slice_hi > len(d.slices) or \
            box.slice_lo < 0 or box.slice_lo > box.slice_hi:
        raise ValueError("box out of range")
    rows = []
    cur_lo, cur_hi = box.col_lo, box.col_hi
    col_ranges = {box.slice_lo: (cur_lo, cur_hi)}
    for i in range(box.slice_lo, box.slice_hi):
        s = d.slices[i]
        spans = _atom_spans(s)
        inside_atoms = []
        outside_atoms = []
        top_lo = None
        top_hi = None
        for a, (b0, t0) in zip(s, spans):
            b1 = b0 + len(a.bottom())
            t1 = t0 + len(a.top())
            if _atom_inside(b0, b1, cur_lo, cur_hi):
                if top_lo is None:
                    top_lo = t0
                top_hi = t1
                inside_atoms.append(a)
            else:
                if b1 > b0 and not (b1 <= cur_lo or b0 >= cur_hi):
                    raise ValueError("an atom straddles the box wall")
                outside_atoms.append((b0, a))
        if top_lo is None:
            top_lo = top_hi = _top_col_for(s, cur_lo)
        rows.append((inside_atoms, outside_atoms))
        cur_lo, cur_hi = top_lo, top_hi
        col_ranges[i + 1] = (cur_lo, cur_hi)
    return rows, col_ranges


def _top_col_for(s: Sequence[Atom], col: int) -> int:
    b = t = 0
    for a in s:
        if b >= col:
            break
        b += len(a.bottom())
        t += len(a.top())
    return t


def subdiagram_in_box(d: SlicedDiagram, box: BoxRegion) -> SlicedDiagram:
    """The part of d inside the box; atoms must not straddle its walls."""
    rows, _ = _box_rows(d, box)
    bot = d.interfaces()[box.slice_lo][box.col_lo:box.col_hi]
    return SlicedDiagram.make(bot, [r[0] for r in rows])


def outside_data(d: SlicedDiagram, box: BoxRegion):
    """A comparable fingerprint of everything outside the box."""
    rows, _ = _box_rows(d, box)
    out = []
    for i, s in enumerate(d.slices):
        if i < box.slice_lo or i >= box.slice_hi:
            out.append(("slice", i, tuple(s)))
        else:
            out.append(("partial", i, tuple(rows[i - box.slice_lo][1])))
    return tuple(out)


def is_skein_relation(cat: CategoryInstance, combo: Sequence[tuple[Scalar, SurfaceGraph]],
                      box: BoxRegion, ideal) -> bool:
    """Exact test of the two defining conditions of an admissible relation.

    (1) the coefficient-weighted in-box evaluations cancel, and
    (2) every graph keeps an ideal-colored edge outside the box.
    Graphs must agree outside the box (error otherwise).
    """
    if not combo:
        return False
    ref = None
    total: Optional[Morphism] = None
    for c, g in combo:
        fp = outside_data(g.diagram, box)
        if ref is None:
            ref = fp
        elif fp != ref:
            raise ValueError("graphs differ outside the box")
        sub = subdiagram_in_box(g.diagram, box)
        val = cat.scale(c, eval_rt(cat, sub))
        total = val if total is None else cat.add(total, val)
    if not cat.is_zero_morphism(total):
        return False
    for _, g in combo:
        if not _has_outside_ideal_edge(cat, g, box, ideal):
            return False
    return True


def _has_outside_ideal_edge(cat: CategoryInstance, g: SurfaceGraph,
                            box: BoxRegion, ideal) -> bool:
    # wall-crossing strands are never inside a box
    for w in g.walls:
        if ideal.contains_entry(cat, g.diagram.top[w.out_pos]):
            return True
    _, col_ranges = _box_rows(g.diagram, box)
    for i, w in enumerate(g.diagram.interfaces()):
        rng = col_ranges.get(i)
        for j, e in enumerate(w):
            inside = rng is not None and rng[0] <= j < rng[1]
            if not inside and ideal.contains_entry(cat, e):
                return True
    return False


# ---------------------------------------------------------------------------
# graph constructors on the standard surfaces


def disk_graph(d: SlicedDiagram) -> SurfaceGraph:
    return SurfaceGraph(disk_model(), d, ())


def sphere_graph(d: SlicedDiagram) -> SurfaceGraph:
    return SurfaceGraph(sphere_model(), d, ())


def annulus_graph_from_endo(cat: CategoryInstance, d: SlicedDiagram) -> SurfaceGraph:
    """Wrap an endomorphism diagram (w -> w) around the annulus core."""
    if d.bottom != d.top:
        raise ValueError("annulus wrapping needs an endomorphism diagram")
    w = d.bottom
    wd = word_dual(w)
    cups = _coev_cascade_slices(w)
    mid = [list(s) + [ident(e) for e in wd] for s in d.slices]
    boundary = SlicedDiagram.make((), list(cups) + mid)
    m = len(w)
    walls = tuple(WallRecord(0, 1, j, 2 * m - 1 - j) for j in range(m))
    return SurfaceGraph(annulus_model(), boundary, walls)


def annulus_core_endo(cat: CategoryInstance, g: SurfaceGraph) -> Morphism:
    """Read an annulus graph back as an endomorphism along a radius."""
    if g.surface != annulus_model():
        raise ValueError("not an annulus graph")
    w = tuple(g.diagram.top[wr.out_pos] for wr in sorted(g.walls, key=lambda r: r.out_pos))
    delta = eval_rt(cat, g.diagram)
    bend = cat.compose(cat.tensor(cat.identity(w), cat.ev_word(w, "ev-left")),
                       cat.tensor(delta, cat.identity(w)))
    return bend


def torus_bouquet(cat: CategoryInstance, x: Morphism) -> SurfaceGraph:
    """Single-coupon torus graph with x: I -> V1 (x) V2 (x) V1* (x) V2*.

    The coupon legs cross curve 0, curve 1, curve 0, curve 1 in polygon
    order (each leg once, the starred legs with negative sign).
    """
    n = len(x.cod)
    if n % 4:
        raise ValueError("bouquet codomain must split into four blocks")
    q = n // 4
    a, b, ad, bd = x.cod[:q], x.cod[q:2 * q], x.cod[2 * q:3 * q], x.cod[3 * q:]
    if ad != word_dual(a) or bd != word_dual(b):
        raise ValueError("bouquet codomain is not of the form A,B,dual A,dual B")
    d = SlicedDiagram.make((), [[coupon(x)]])
    walls = tuple(
        [WallRecord(0, 1, j, 3 * q - 1 - j) for j in range(q)] +
        [WallRecord(1, 1, q + j, 4 * q - 1 - (j)) for j in range(q)]
    )
    return SurfaceGraph(torus_model(), d, walls)


def annulus_spanning_graph(cat: CategoryInstance, x: Morphism) -> SurfaceGraph:
    """Single-coupon annulus graph with x: I -> V (x) V*; V crosses the core curve."""
    n = len(x.cod)
    q = n // 2
    a, ad = x.cod[:q], x.cod[q:]
    if ad != word_dual(a):
        raise ValueError("spanning coupon codomain is not of the form V, dual V")
    d = SlicedDiagram.make((), [[coupon(x)]])
    walls = tuple(WallRecord(0, 1, j, 2 * q - 1 - j) for j in range(q))
    return SurfaceGraph(annulus_model(), d, walls)


# ---------------------------------------------------------------------------
# JSON


def surface_to_json(s: SurfaceModel) -> dict:
    return {"genus": s.genus, "boundary": s.boundary,
            "sides": [list(t) for t in s.sides]}


def surface_from_json(doc: dict) -> SurfaceModel:
    return SurfaceModel(doc["genus"], doc["boundary"],
                        tuple(tuple(t) for t in doc.get("sides", [])))


def graph_to_json(g: SurfaceGraph) -> dict:
    out = diagram_to_json(g.diagram)
    out["surface"] = surface_to_json(g.surface)
    out["walls"] = [{"curve": w.curve, "sign": w.sign,
                     "out": w.out_pos, "in": w.in_pos} for w in g.walls]
    return out


def graph_from_json(cat: CategoryInstance, doc: dict) -> SurfaceGraph:
    d = diagram_from_json(cat, {k: doc[k] for k in ("version", "bottom", "top", "slices")})
    surface = surface_from_json(doc["surface"])
    walls = tuple(WallRecord(w["curve"], w["sign"], w["out"], w["in"])
                  for w in doc.get("walls", []))
    return SurfaceGraph(surface, d, walls)
