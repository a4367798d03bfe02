"""Trace kernels, quotient categories, and the induced non-degenerate trace.

The kernel of a trace is computed per hom pair as the nullspace of the
evaluation rows t(g1 . f . g2) over hom bases through a finite set of
ideal objects; the quotient category keeps the same objects and reduces
every payload to a canonical representative modulo the kernel subspace,
so equality in the quotient is decidable.  The induced trace reads the
original functional on representatives and becomes non-degenerate there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .category import CategoryInstance, Entry, Morphism, ObjectHandle, Word
from .fields import Scalar
from .linalg import ExactMatrix, nullspace, rank, rref
from .mtrace import IdealDescriptor, MTrace


class TraceKernel:
    """The tensor ideal of morphisms killed by a trace, per hom pair."""

    def __init__(self, cat: CategoryInstance, t: MTrace,
                 probe_words: Optional[Sequence[Word]] = None):
        self.cat = cat
        self.trace = t
        if probe_words is None:
            if t.ideal.mode == "all":
                probe_words = []
            else:
                probe_words = [t.ideal.generator_word()]
        self.probe_words = [tuple(w) for w in probe_words]
        self._cache: dict[tuple[Word, Word], list[ExactMatrix]] = {}

    def _probes_for(self, dom: Word, cod: Word) -> list[Word]:
        out = list(self.probe_words)
        if self.trace.ideal.mode == "all":
            for w in (dom, cod):
                if tuple(w) not in out:
                    out.append(tuple(w))
        return out

    def subspace(self, dom: Word, cod: Word) -> list[ExactMatrix]:
        """Basis (as payload-shaped matrices) of N(dom, cod)."""
        key = (tuple(dom), tuple(cod))
        if key in self._cache:
            return self._cache[key]
        cat = self.cat
        basis = cat.hom_basis(dom, cod)
        if not basis:
            self._cache[key] = []
            return []
        rows = []
        for u in self._probes_for(dom, cod):
            g1s = cat.hom_basis(cod, u)
            g2s = cat.hom_basis(u, dom)
            for g1 in g1s:
                for g2 in g2s:
                    row = []
                    for b in basis:
                        val = self.trace.eval(
                            u, cat.compose(g1, cat.compose(b, g2)))
                        row.append(val)
                    rows.append(row)
        m = ExactMatrix.from_rows(cat.field, rows, cols=len(basis)) if rows else \
            ExactMatrix.zeros(cat.field, 0, len(basis))
        out = []
        for vec in nullspace(m):
            f = cat.from_coordinates(dom, cod, list(vec.entries))
            out.append(f.payload)
        self._cache[key] = out
        return out

    def contains(self, f: Morphism) -> bool:
        sub = self.subspace(f.dom, f.cod)
        if not sub:
            return self.cat.is_zero_morphism(f)
        from .linalg import hstack, solve
        cols = [ExactMatrix(self.cat.field, len(s.entries), 1, s.entries)
                for s in sub]
        m = hstack(cols)
        vec = ExactMatrix(self.cat.field, len(f.payload.entries), 1,
                          f.payload.entries)
        return solve(m, vec) is not None


def kernel_of_trace(cat: CategoryInstance, t: MTrace,
                    hom_pairs: Iterable[tuple[Word, Word]] = (),
                    probe_words: Optional[Sequence[Word]] = None) -> TraceKernel:
    k = TraceKernel(cat, t, probe_words)
    for dom, cod in hom_pairs:
        k.subspace(tuple(dom), tuple(cod))
    return k


# ---------------------------------------------------------------------------
# the quotient category


class QuotientInstance(CategoryInstance):
    """C/N for a trace kernel N: same objects, reduced morphism payloads."""

    def __init__(self, base: CategoryInstance, kernel: TraceKernel):
        super().__init__(base.field, base.grading)
        self.base = base
        self.kernel = kernel
        self.name = base.name + "/N"
        self.braided = base.braided
        self.ribbon = base.ribbon
        self._handles = base._handles          # same object registry
        self._reducer_cache: dict[tuple[Word, Word], tuple] = {}
        unit_n = kernel.subspace((), ())
        if unit_n:
            raise ValueError("kernel meets End(I): the quotient would not be "
                             "a category over the same field")

    # -- reduction ---------------------------------------------------------------
    def _reducer(self, dom: Word, cod: Word):
        key = (tuple(dom), tuple(cod))
        if key not in self._reducer_cache:
            sub = self.kernel.subspace(dom, cod)
            if sub:
                flat = [list(s.entries) for s in sub]
                m = ExactMatrix.from_rows(self.field, flat, cols=len(flat[0]))
                red, pivots = rref(m)
                self._reducer_cache[key] = (red, pivots)
            else:
                self._reducer_cache[key] = (None, [])
        return self._reducer_cache[key]

    def reduce(self, f: Morphism) -> Morphism:
        red, pivots = self._reducer(f.dom, f.cod)
        if red is None:
            return f
        vec = list(f.payload.entries)
        for r, p in enumerate(pivots):
            c = vec[p]
            if not c.is_zero():
                row = red.row(r)
                vec = [v - c * x for v, x in zip(vec, row)]
        return Morphism(f.dom, f.cod,
                        ExactMatrix(self.field, f.payload.rows, f.payload.cols,
                                    tuple(vec)))

    def project(self, f: Morphism) -> Morphism:
        """The strict pivotal projection functor on morphisms."""
        return self.reduce(f)

    # -- payload semantics: delegate to the base, then reduce -----------------------
    def identity(self, w: Word) -> Morphism:
        return self.reduce(self.base.identity(w))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        return self.reduce(self.base.compose(f, g))

    def tensor(self, f: Morphism, g: Morphism) -> Morphism:
        return self.reduce(self.base.tensor(f, g))

    def zero_morphism(self, dom: Word, cod: Word) -> Morphism:
        return self.base.zero_morphism(dom, cod)

    def ev_handle(self, name: str, kind: str) -> Morphism:
        return self.reduce(self.base.ev_handle(name, kind))

    def braiding(self, a: Word, b: Word) -> Morphism:
        return self.reduce(self.base.braiding(a, b))

    def braiding_inverse(self, a: Word, b: Word) -> Morphism:
        return self.reduce(self.base.braiding_inverse(a, b))

    def twist(self, w: Word) -> Morphism:
        return self.reduce(self.base.twist(w))

    def twist_inverse(self, w: Word) -> Morphism:
        return self.reduce(self.base.twist_inverse(w))

    def register_word_object(self, w: Word) -> ObjectHandle:
        return self.base.register_word_object(w)

    def word_object_word(self, handle_name: str):
        return self.base.word_object_word(handle_name)

    def retype_word_to_object(self, w: Word) -> Morphism:
        return self.reduce(self.base.retype_word_to_object(w))

    def hom_basis_raw(self, dom: Word, cod: Word):
        red, pivots = self._reducer(dom, cod)
        base_basis = self.base.hom_basis(dom, cod)
        if red is None:
            return [Morphism(b.dom, b.cod, b.payload) for b in base_basis]
        out = []
        seen_rows: list[list[Scalar]] = []
        seen_matrix = None
        from .linalg import hstack, solve
        for b in base_basis:
            rb = self.reduce(b)
            if self.base.is_zero_morphism(rb):
                continue
            vec = ExactMatrix(self.field, len(rb.payload.entries), 1,
                              rb.payload.entries)
            if seen_matrix is not None and solve(seen_matrix, vec) is not None:
                continue
            out.append(rb)
            cols = [ExactMatrix(self.field, len(m.payload.entries), 1,
                                m.payload.entries) for m in out]
            seen_matrix = hstack(cols)
        return out


def quotient_category(cat: CategoryInstance, kernel: TraceKernel) -> QuotientInstance:
    return QuotientInstance(cat, kernel)


# ---------------------------------------------------------------------------
# the induced trace on the quotient


def induced_trace(q: QuotientInstance, t: MTrace) -> MTrace:
    """The unique trace on the quotient with t = t_bar after projection."""
    p = t.generator
    ideal2 = IdealDescriptor(t.ideal.mode, t.ideal.generators,
                             t.ideal.graded_generators)
    coeffs = [t.eval(p, b) for b in q.hom_basis(p, p)]
    return MTrace(q, ideal2, p, tuple(coeffs), t.side)


def check_factorization(q: QuotientInstance, t: MTrace, t_bar: MTrace,
                        samples: Iterable[tuple[Word, Morphism]]) -> bool:
    """t == t_bar after projection, exactly, on the given endomorphisms."""
    for w, f in samples:
        a = t.eval(w, f)
        b = t_bar.eval(w, q.project(f))
        if a != b:
            return False
    return True


def pushforward_graph(q: QuotientInstance, g) -> object:
    """Graphs push forward as-is: coupon payloads reduce during evaluation."""
    return g


def negligible_objects(cat: CategoryInstance, kernel: TraceKernel,
                       names: Optional[Sequence[str]] = None) -> list[str]:
    out = []
    for h in (cat.handles() if names is None else
              [cat.handle(n) for n in names]):
        w: Word = (Entry(h.name, True),)
        if kernel.contains(cat.identity(w)):
            out.append(h.name)
    return out


def factors_through(cat: CategoryInstance, f: Morphism, mid: Word) -> bool:
    """Does f lie in the span of Hom(mid, cod) . Hom(dom, mid)?"""
    from .linalg import hstack, solve
    products = []
    for a in cat.hom_basis(mid, f.cod):
        for b in cat.hom_basis(f.dom, mid):
            products.append(cat.compose(a, b))
    if not products:
        return cat.is_zero_morphism(f)
    cols = [ExactMatrix(cat.field, len(p.payload.entries), 1, p.payload.entries)
            for p in products]
    vec = ExactMatrix(cat.field, len(f.payload.entries), 1, f.payload.entries)
    return solve(hstack(cols), vec) is not None
