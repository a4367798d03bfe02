"""Ideals, modified-trace solving, and renormalized evaluation of skeins.

A trace functional is stored by its restriction to End(P) for a single
generator object P; evaluation anywhere in the ideal peels tensor factors
with partial traces and reaches P through retract witnesses.  The solver
assembles the cyclicity and partial-trace constraints over a finite test
set of objects and returns an exact basis of the solution space; the
result is a space of traces *relative to the test set* (the library
re-verifies the axioms on fresh samples, see the test suite).

Disk and sphere skeins evaluate through straight cutting paths; all
enumerated paths of one graph must give one scalar, which realizes the
duality between skeins of the disk/sphere and right/two-sided traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .category import CategoryInstance, Entry, Morphism, Word, word_dual
from .diagrams import SlicedDiagram, eval_rt, rotate_pi
from .fields import Scalar
from .linalg import ExactMatrix, inverse, nullspace, rank
from .surfaces import (DISK, SPHERE, StraightCut, SurfaceGraph, cut_morphism,
                       cut_end_gap, cut_word, enumerate_straight_cuts,
                       faces_of_closed)


@dataclass(frozen=True)
class RetractWitness:
    """V presented inside an ambient word through i: V -> U, p: U -> V."""

    target: Word
    ambient: Word
    inj: Morphism
    proj: Morphism

    def check(self, cat: CategoryInstance) -> None:
        if not cat.equal(cat.compose(self.proj, self.inj), cat.identity(self.target)):
            raise ValueError("retract witness fails p∘i = id")


class IdealDescriptor:
    """An ideal of objects: the whole category or one generated by objects.

    In generated mode membership answers are *sound but conservative*: an
    entry is recognized when it is a generator (or its dual with a
    registered witness), or a fused word object containing one.
    """

    def __init__(self, mode: str, generators: Sequence[Entry] = (),
                 graded_generators: Optional[dict] = None):
        if mode not in ("all", "generated"):
            raise ValueError("ideal mode must be 'all' or 'generated'")
        self.mode = mode
        self.generators = tuple(generators)
        self.graded_generators = dict(graded_generators or {})
        self._witnesses: dict[Word, RetractWitness] = {}

    @staticmethod
    def whole_category() -> "IdealDescriptor":
        return IdealDescriptor("all")

    @staticmethod
    def generated_by(entries: Iterable[Entry],
                     graded_generators: Optional[dict] = None) -> "IdealDescriptor":
        return IdealDescriptor("generated", tuple(entries), graded_generators)

    # -- membership ---------------------------------------------------------------
    def contains_entry(self, cat: CategoryInstance, e: Entry) -> bool:
        if self.mode == "all":
            return True
        if e in self.generators:
            return True
        if e.flip() in self.generators:
            # duals of generators: in the ideal exactly when a witness exists
            if (e,) in self._witnesses:
                return True
            try:
                return self.find_witness(cat, (e,)) is not None
            except (ValueError, ArithmeticError):
                return False
        w = cat.word_object_word(e.obj)
        if w is not None:
            return any(self.contains_entry(cat, x) for x in w)
        return False

    def contains_word(self, cat: CategoryInstance, w: Word) -> bool:
        if self.mode == "all":
            return True
        return any(self.contains_entry(cat, e) for e in w)

    def generator_word(self) -> Word:
        if self.mode == "all":
            return ()
        return (self.generators[0],)

    def generator_for_degree(self, degree) -> Entry:
        try:
            return self.graded_generators[tuple(degree)]
        except KeyError:
            raise KeyError(f"no registered generator in degree {degree}") from None

    # -- retract witnesses -----------------------------------------------------------
    def register_witness(self, w: RetractWitness) -> None:
        self._witnesses[w.target] = w

    def find_witness(self, cat: CategoryInstance, target: Word) -> Optional[RetractWitness]:
        """A witness presenting `target` inside P (x) W for the generator P.

        Strategies: cached registrations; the trivial witness when the
        target starts with the generator; an invertible hom onto a word
        starting with the generator (searched over small basis combos).
        """
        target = tuple(target)
        if target in self._witnesses:
            return self._witnesses[target]
        if self.mode == "all":
            raise ValueError("whole-category ideals evaluate by full partial trace")
        p = self.generators[0]
        if target and target[0] == p:
            w = RetractWitness(target, target, cat.identity(target), cat.identity(target))
            self._witnesses[target] = w
            return w
        # try an isomorphism target -> (P,) (x) rest for rest in a small pool
        pools: list[Word] = [(p,)]
        if len(target) > 1:
            pools.append((p,) + target[1:])
        for ambient in pools:
            if cat.word_dim(ambient) != cat.word_dim(target) and \
                    not _same_hom_profile(cat, target, ambient):
                continue
            basis = cat.hom_basis(target, ambient)
            for b in basis:
                try:
                    binv = cat.invert_endo_like(b)
                except ArithmeticError:
                    continue
                w = RetractWitness(target, ambient, b, binv)
                self._witnesses[target] = w
                return w
            # small sums of two basis elements
            for i in range(len(basis)):
                for j in range(i + 1, len(basis)):
                    cand = cat.add(basis[i], basis[j])
                    try:
                        binv = cat.invert_endo_like(cand)
                    except ArithmeticError:
                        continue
                    w = RetractWitness(target, ambient, cand, binv)
                    self._witnesses[target] = w
                    return w
        return None


def _same_hom_profile(cat: CategoryInstance, a: Word, b: Word) -> bool:
    return len(cat.hom_basis(a, b)) > 0 and len(cat.hom_basis(b, a)) > 0


RIGHT, LEFT, BOTH = "right", "left", "both"


@dataclass
class MTrace:
    """A trace functional stored on End(P), P the ideal generator word."""

    cat: CategoryInstance
    ideal: IdealDescriptor
    generator: Word
    coeffs: tuple[Scalar, ...]        # against hom_basis(P, P)
    side: str                         # right / left / both
    nondegenerate: Optional[bool] = None

    def on_generator(self, f: Morphism) -> Scalar:
        coords = self.cat.coordinates(f)
        out = self.cat.field.zero()
        for c, t in zip(coords, self.coeffs):
            out = out + c * t
        return out

    # -- evaluation anywhere in the ideal ------------------------------------------
    def eval(self, w: Word, f: Morphism, witness: Optional[RetractWitness] = None) -> Scalar:
        """t_w(f) for an endomorphism f of an ideal word w."""
        cat = self.cat
        if f.dom != w or f.cod != w:
            raise ValueError("trace evaluation needs an endomorphism of the word")
        if witness is not None:
            witness.check(cat)
            return self.eval(witness.ambient,
                             cat.compose(witness.inj, cat.compose(f, witness.proj)))
        if self.ideal.mode == "all":
            # generator is the unit: peel everything
            scal = cat.scalar_of(cat.ptr_right(f, len(w))) if self.side != LEFT \
                else cat.scalar_of(cat.ptr_left(f, len(w)))
            return scal * self.coeffs[0]
        if w == self.generator:
            return self.on_generator(f)
        if len(w) > 1:
            idxs = [i for i, e in enumerate(w)
                    if self.ideal.contains_entry(cat, e)]
            if idxs:
                if self.side in (RIGHT, BOTH) and idxs[0] < len(w) - 1:
                    return self.eval(w[:-1], cat.ptr_right(f, 1))
                if self.side in (LEFT, BOTH) and idxs[-1] > 0:
                    return self.eval(w[1:], cat.ptr_left(f, 1))
        # peeling unavailable: reduce through a retract witness
        wit = self.ideal.find_witness(cat, w)
        if wit is None:
            raise ValueError(f"no retract witness found for {w}")
        if wit.ambient == w:
            raise ValueError("witness loop; cannot reduce to the generator")
        return self.eval(w, f, wit)

    def modified_dim(self, w: Word) -> Scalar:
        return self.eval(w, self.cat.identity(w))

    def serialize(self) -> dict:
        return {
            "generator": [str(e) for e in self.generator],
            "side": self.side,
            "coeffs": [str(c) for c in self.coeffs],
        }


# ---------------------------------------------------------------------------
# solver


def default_testset(cat: CategoryInstance, generator: Word,
                    simple_names: Sequence[str] = (),
                    include_square: Optional[bool] = None) -> list[Word]:
    """The default constraint test set: unit, simples, P, and P (x) P when small."""
    out: list[Word] = [()]
    for n in simple_names:
        out.append((Entry(n, True),))
    out.append(tuple(generator))
    square = tuple(generator) + tuple(generator)
    if include_square is None:
        include_square = cat.word_dim(square) <= 8
    if include_square:
        out.append(square)
    seen = set()
    uniq = []
    for w in out:
        if w not in seen:
            seen.add(w)
            uniq.append(w)
    return uniq


def solve_mtrace_space(cat: CategoryInstance, ideal: IdealDescriptor,
                       testset: Optional[Sequence[Word]] = None,
                       sides: str = BOTH,
                       simple_names: Sequence[str] = ()) -> list[MTrace]:
    """Exact basis of trace functionals on End(P) cut by the trace axioms.

    Constraints: (a) cyclicity on End(P); (b) for every W in the test set
    and hom bases a: P -> P (x) W, b: P (x) W -> P, the identity
    t(b a) = t(ptr_R^W(a b)); (c) the mirrored left constraints when
    requested.  Dimensions are reported relative to the test set.
    """
    p = ideal.generator_word()
    basis = cat.hom_basis(p, p)
    if not basis:
        raise ValueError("empty End(P); no trace space")
    d = len(basis)
    if testset is None:
        testset = default_testset(cat, p, simple_names)
    rows: list[list[Scalar]] = []

    def coords_of(f: Morphism) -> list[Scalar]:
        return cat.coordinates(f)

    # (a) cyclicity on End(P)
    for i in range(d):
        for j in range(i + 1, d):
            fg = cat.compose(basis[i], basis[j])
            gf = cat.compose(basis[j], basis[i])
            rows.append([x - y for x, y in zip(coords_of(fg), coords_of(gf))])

    # (b)/(c) partial trace properties
    for w in testset:
        if not w:
            continue
        pw = tuple(p) + tuple(w)
        a_basis = cat.hom_basis(p, pw)
        b_basis = cat.hom_basis(pw, p)
        for a in a_basis:
            for b in b_basis:
                ba = cat.compose(b, a)
                ab = cat.compose(a, b)
                if sides in (RIGHT, BOTH):
                    red = cat.ptr_right(ab, len(w))
                    rows.append([x - y for x, y in
                                 zip(coords_of(ba), coords_of(red))])
        if sides in (LEFT, BOTH):
            wp = tuple(w) + tuple(p)
            a_basis = cat.hom_basis(p, wp)
            b_basis = cat.hom_basis(wp, p)
            for a in a_basis:
                for b in b_basis:
                    ba = cat.compose(b, a)
                    ab = cat.compose(a, b)
                    red = cat.ptr_left(ab, len(w))
                    rows.append([x - y for x, y in
                                 zip(coords_of(ba), coords_of(red))])

    if rows:
        m = ExactMatrix.from_rows(cat.field, rows, cols=d)
    else:
        m = ExactMatrix.zeros(cat.field, 0, d)
    out = []
    for vec in nullspace(m):
        out.append(MTrace(cat, ideal, p, tuple(vec.entries), sides))
    return out


def normalize_trace(t: MTrace, w: Word, value: Scalar) -> MTrace:
    """Rescale so that the modified dimension of `w` equals `value`."""
    cur = t.modified_dim(w)
    if cur.is_zero():
        raise ValueError("cannot normalize: modified dimension vanishes")
    c = value / cur
    return MTrace(t.cat, t.ideal, t.generator,
                  tuple(c * x for x in t.coeffs), t.side, t.nondegenerate)


# ---------------------------------------------------------------------------
# renormalized invariant of (1,1)-diagram closures


def renormalized_invariant(cat: CategoryInstance, t: MTrace, d: SlicedDiagram) -> Scalar:
    """t applied to the evaluation of a (1,1)-diagram with ideal-colored ends."""
    if len(d.bottom) != 1 or d.bottom != d.top:
        raise ValueError("renormalized invariant needs a (1,1) diagram")
    if not t.ideal.contains_word(cat, d.bottom):
        raise ValueError("open edge color is not in the ideal")
    return t.eval(d.bottom, eval_rt(cat, d))


# ---------------------------------------------------------------------------
# disk and sphere skein evaluation via cutting paths


def _cut_admissible(cat: CategoryInstance, t: MTrace, word: Word) -> bool:
    if not t.ideal.contains_word(cat, word):
        return False
    try:
        t.eval(word, cat.identity(word))
    except (ValueError, ArithmeticError):
        return False
    return True


def enumerate_admissible_cuts(cat: CategoryInstance, t: MTrace,
                              g: SurfaceGraph) -> list[StraightCut]:
    """All straight cuts of a closed disk/sphere graph the trace can evaluate."""
    sides = ("left",) if t.side == RIGHT else \
        (("right",) if t.side == LEFT else ("left", "right"))
    if g.surface.kind() == SPHERE and t.side != BOTH:
        raise ValueError("sphere evaluation needs a two-sided trace")
    out = []
    for cut in enumerate_straight_cuts(g.diagram, sides=sides):
        word = cut_word(g.diagram, cut)
        if _cut_admissible(cat, t, word):
            out.append(cut)
    return out


def eval_cut(cat: CategoryInstance, t: MTrace, g: SurfaceGraph,
             cut: StraightCut) -> Scalar:
    word = cut_word(g.diagram, cut)
    f = cut_morphism(cat, g.diagram, cut)
    return t.eval(word, f)


def eval_disk_skein(cat: CategoryInstance, t: MTrace, g: SurfaceGraph,
                    cut: Optional[StraightCut] = None) -> Scalar:
    """Evaluate an admissible closed graph on the disk against a trace."""
    if g.surface.kind() not in (DISK, SPHERE):
        raise ValueError("eval_disk_skein needs a disk (or sphere) graph")
    if cut is None:
        cuts = enumerate_admissible_cuts(cat, t, g)
        if not cuts:
            raise ValueError("no admissible cutting path (graph not admissible?)")
        cut = cuts[0]
    return eval_cut(cat, t, g, cut)


def eval_sphere_skein(cat: CategoryInstance, t: MTrace, g: SurfaceGraph,
                      infinity_face: Optional[int] = None) -> Scalar:
    """Evaluate a sphere graph with a chosen face at infinity.

    The default face is the outer one.  Any other face p is reached by a
    straight cutting path from the outer face ending in p; seen from p
    the boxed graph is the pi rotation, so the value is t of the dual cut
    morphism on the dual word.
    """
    if t.side != BOTH:
        raise ValueError("sphere evaluation needs a two-sided trace "
                         "(a one-sided trace only pairs with disk skeins)")
    if g.surface.kind() != SPHERE:
        raise ValueError("eval_sphere_skein needs a sphere graph")
    gap_face, outer = faces_of_closed(g.diagram)
    if infinity_face is None or infinity_face == outer:
        return eval_disk_skein(cat, t, g)
    words = g.diagram.interfaces()
    for cut in enumerate_admissible_cuts(cat, t, g):
        gap = (cut.interface, cut_end_gap(cut, len(words[cut.interface])))
        if gap_face[gap] != infinity_face:
            continue
        word = cut_word(g.diagram, cut)
        f = cut_morphism(cat, g.diagram, cut)
        return t.eval(word_dual(word), cat.dual_morphism(f))
    raise ValueError(f"no admissible cutting path reaches face {infinity_face}")


def sphere_faces(g: SurfaceGraph) -> tuple[dict, int]:
    return faces_of_closed(g.diagram)


def eval_skein_element(cat: CategoryInstance, t: MTrace, elem,
                       evaluator=eval_disk_skein) -> Scalar:
    out = cat.field.zero()
    for c, g in elem.terms:
        out = out + c * evaluator(cat, t, g)
    return out


# ---------------------------------------------------------------------------
# cyclic traces (annulus functionals)


@dataclass
class CyclicTrace:
    cat: CategoryInstance
    words: tuple[Word, ...]
    functionals: dict[Word, tuple[Scalar, ...]]   # against hom_basis(w, w)

    def eval(self, w: Word, f: Morphism) -> Scalar:
        if w not in self.functionals:
            raise KeyError(f"cyclic trace not defined on {w}")
        coords = self.cat.coordinates(f)
        out = self.cat.field.zero()
        for c, t in zip(coords, self.functionals[w]):
            out = out + c * t
        return out


def solve_cyclic_traces(cat: CategoryInstance, words: Sequence[Word]) -> list[CyclicTrace]:
    """Exact basis of families h with h_V(g f) = h_U(f g) on the given words."""
    words = [tuple(w) for w in words]
    offsets = {}
    total = 0
    end_bases = {}
    for w in words:
        end_bases[w] = cat.hom_basis(w, w)
        offsets[w] = total
        total += len(end_bases[w])
    rows: list[list[Scalar]] = []
    z = cat.field.zero()
    for v in words:
        for u in words:
            fs = cat.hom_basis(v, u)
            gs = cat.hom_basis(u, v)
            for f in fs:
                for g in gs:
                    gf = cat.compose(g, f)   # End(v)
                    fg = cat.compose(f, g)   # End(u)
                    row = [z] * total
                    for c, idx in zip(cat.coordinates(gf), range(len(end_bases[v]))):
                        row[offsets[v] + idx] = row[offsets[v] + idx] + c
                    for c, idx in zip(cat.coordinates(fg), range(len(end_bases[u]))):
                        row[offsets[u] + idx] = row[offsets[u] + idx] - c
                    rows.append(row)
    m = ExactMatrix.from_rows(cat.field, rows, cols=total) if rows else \
        ExactMatrix.zeros(cat.field, 0, total)
    out = []
    for vec in nullspace(m):
        fns = {}
        for w in words:
            o = offsets[w]
            fns[w] = tuple(vec.entries[o:o + len(end_bases[w])])
        out.append(CyclicTrace(cat, tuple(words), fns))
    return out


def restrict_mtrace_to_cyclic(t: MTrace, words: Sequence[Word]) -> CyclicTrace:
    fns = {}
    for w in words:
        w = tuple(w)
        vals = []
        for b in t.cat.hom_basis(w, w):
            vals.append(t.eval(w, b))
        fns[w] = tuple(vals)
    return CyclicTrace(t.cat, tuple(tuple(w) for w in words), fns)


# ---------------------------------------------------------------------------
# dual bases of the (Hom(I,P), Hom(P,I)) pairing


def trace_pairing_gram(cat: CategoryInstance, t: MTrace, w: Word) -> ExactMatrix:
    xs = cat.hom_basis((), w)
    ys = cat.hom_basis(w, ())
    entries = []
    for x in xs:
        for y in ys:
            entries.append(t.eval(w, cat.compose(x, y)))
    return ExactMatrix(cat.field, len(xs), len(ys), tuple(entries))


def dual_bases(cat: CategoryInstance, t: MTrace, w: Word):
    """Bases {x_i} of Hom(I, w) and {y_i} of Hom(w, I) with t(x_i y_j) = delta_ij."""
    xs = cat.hom_basis((), w)
    ys = cat.hom_basis(w, ())
    if len(xs) != len(ys):
        raise ArithmeticError("pairing spaces have different dimensions")
    if not xs:
        return [], []
    gram = trace_pairing_gram(cat, t, w)
    if rank(gram) != gram.rows:
        raise ArithmeticError(
            "degenerate trace pairing; purification is required first")
    ginv = inverse(gram)
    out_ys = []
    for j in range(len(ys)):
        acc = cat.zero_morphism(w, ())
        for k in range(len(ys)):
            acc = cat.add(acc, cat.scale(ginv.get(k, j), ys[k]))
        out_ys.append(acc)
    return xs, out_ys
