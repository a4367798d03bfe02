"""Seeded random generators for property suites and the verify command.

Everything flows from one `random.Random(seed)`, so runs are fully
reproducible; scalars are small integers to keep exact arithmetic fast.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .category import CategoryInstance, Entry, Morphism, Word
from .diagrams import SlicedDiagram, coupon, ident
from .fields import Scalar
from .mtrace import IdealDescriptor
from .surfaces import BoxRegion, SurfaceGraph, disk_graph, sphere_graph


def random_scalar(cat: CategoryInstance, rng: random.Random,
                  lo: int = -3, hi: int = 3) -> Scalar:
    while True:
        n = rng.randint(lo, hi)
        if n:
            return cat.field.from_int(n)


def random_morphism(cat: CategoryInstance, dom: Word, cod: Word,
                    rng: random.Random) -> Morphism:
    basis = cat.hom_basis(dom, cod)
    out = cat.zero_morphism(dom, cod)
    if not basis:
        return out
    for b in basis:
        c = rng.randint(-2, 2)
        if c:
            out = cat.add(out, cat.scale(cat.field.from_int(c), b))
    if cat.is_zero_morphism(out):
        out = basis[rng.randrange(len(basis))]
    return out


def random_endo_diagram(cat: CategoryInstance, w: Word, rng: random.Random,
                        depth: int = 2,
                        word_pool: Optional[Sequence[Word]] = None) -> SlicedDiagram:
    """A coupon chain w -> w1 -> ... -> w through nonzero hom spaces."""
    pool = [tuple(x) for x in (word_pool or [w])]
    slices = []
    cur = tuple(w)
    hops = []
    for _ in range(depth - 1):
        cands = [x for x in pool
                 if cat.hom_basis(cur, x) and cat.hom_basis(x, tuple(w))]
        if not cands:
            break
        nxt = cands[rng.randrange(len(cands))]
        hops.append(nxt)
        cur = nxt
    chain = [tuple(w)] + hops + [tuple(w)]
    for a, b in zip(chain, chain[1:]):
        f = random_morphism(cat, a, b, rng)
        slices.append([coupon(f)])
    if not slices:
        slices.append([ident(e) for e in w])
    return SlicedDiagram.make(tuple(w), slices)


def random_ideal_word(cat: CategoryInstance, ideal: IdealDescriptor,
                      rng: random.Random, pool: Sequence[Word]) -> Word:
    cands = [tuple(w) for w in pool if ideal.contains_word(cat, tuple(w)) and w]
    if not cands:
        raise ValueError("no admissible words in the pool")
    return cands[rng.randrange(len(cands))]


def random_closed_graph(cat: CategoryInstance, ideal: IdealDescriptor,
                        rng: random.Random, pool: Sequence[Word],
                        sphere: bool = False, depth: int = 2) -> SurfaceGraph:
    """An admissible closed graph: the closure of a random coupon chain."""
    from .diagrams import closure_right
    w = random_ideal_word(cat, ideal, rng, pool)
    d = random_endo_diagram(cat, w, rng, depth=depth, word_pool=pool)
    clo = closure_right(cat, d)
    return sphere_graph(clo) if sphere else disk_graph(clo)


def random_skein_relation(cat: CategoryInstance, ideal: IdealDescriptor,
                          rng: random.Random, pool: Sequence[Word],
                          sphere: bool = False):
    """A verified relation: expand one coupon of a random graph in a basis.

    Returns (combo, box): combo = [(1, G), (-c_i, G_i)] where the G_i
    replace the boxed coupon by basis elements and c_i are the exact
    coordinates, so the in-box sum cancels; every graph keeps the
    ideal-colored closure strands outside the box.
    """
    g = random_closed_graph(cat, ideal, rng, pool, sphere=sphere, depth=2)
    d = g.diagram
    # find a coupon slice produced by the chain (inside the closure padding)
    spots = []
    for i, s in enumerate(d.slices):
        for j, a in enumerate(s):
            if a.kind == "coupon" and a.coupon.dom and a.coupon.cod:
                spots.append((i, j))
    if not spots:
        raise ValueError("no coupon to expand")
    i, j = spots[rng.randrange(len(spots))]
    atom = d.slices[i][j]
    f = atom.coupon
    before = sum(len(a.bottom()) for a in d.slices[i][:j])
    box = BoxRegion(i, i + 1, before, before + len(f.dom))
    coords = cat.coordinates(f)
    basis = cat.hom_basis(f.dom, f.cod)
    combo = [(cat.field.one(), g)]
    for c, b in zip(coords, basis):
        if c.is_zero():
            continue
        slices = [list(s) for s in d.slices]
        slices[i][j] = coupon(b)
        d2 = SlicedDiagram.make(d.bottom, slices)
        combo.append((-c, SurfaceGraph(g.surface, d2, g.walls)))
    return combo, box


def tl_kauffman_relation(cat, rng: random.Random):
    """The defining crossing relation inside a box, with a spectator strand."""
    from .diagrams import Atom, CROSS_POS, closure_right
    e = cat.strand_entry()
    a = cat.a_param
    one = cat.field.one()
    hook = next(b for b in cat.hom_basis((e, e), (e, e))
                if not cat.equal(b, cat.identity((e, e))))
    idm = cat.identity((e, e))

    def base(mid) -> SurfaceGraph:
        if mid == "cross":
            mid_atoms = [Atom(CROSS_POS, (e, e))]
        else:
            mid_atoms = [coupon(mid)]
        d = SlicedDiagram.make((e, e, e), [mid_atoms + [ident(e)]])
        return disk_graph(closure_right(cat, d))

    combo = [(one, base("cross")), (-a, base(idm)), (-(a ** -1), base(hook))]
    # the box encloses the two crossing strands of the middle slice; after
    # the closure padding the crossing sits three slices up, columns 0..2
    n_cups = 3
    box = BoxRegion(n_cups, n_cups + 1, 0, 2)
    return combo, box
