"""The Temperley-Lieb category with the Kauffman bracket parameter.

Objects are strand counts; Hom(m, n) is the free module on crossingless
matchings of m bottom and n top points, and composition removes each
closed loop at a factor delta = -A^2 - A^(-2).  This diagrammatic model
is exact at any specialization of A, including roots of unity where a
matrix model of the category stops being faithful.

A morphism payload here is a column vector of coefficients over the
canonical enumeration of matchings of its type (the unit object's
endomorphism space is 1x1, spanned by the empty matching).  Crossings
are the Kauffman substitution A*id + A^(-1)*cup-cap, extended to cables
strand by strand, which makes the instance ribbon.
"""

from __future__ import annotations

from functools import lru_cache

from ..category import (COEV_L, COEV_R, EV_L, EV_R, CategoryInstance, Entry,
                        Morphism, ObjectHandle, TRIVIAL_GROUP, Word)
from ..fields import FieldSpec, Scalar, cyclotomic_field, rational_function_field
from ..linalg import ExactMatrix

Matching = tuple[int, ...]


def _noncrossing(points: tuple[int, ...]) -> list[list[tuple[int, int]]]:
    """Non-crossing perfect matchings of points listed in circle order."""
    if not points:
        return [[]]
    if len(points) % 2:
        return []
    out = []
    a = points[0]
    for k in range(1, len(points), 2):
        b = points[k]
        for inner in _noncrossing(points[1:k]):
            for outer in _noncrossing(points[k + 1:]):
                out.append([(a, b)] + inner + outer)
    return out


@lru_cache(maxsize=None)
def matchings(bottom: int, top: int) -> tuple[Matching, ...]:
    """All crossingless matchings of a (bottom, top) rectangle, sorted.

    Points are numbered 0..bottom-1 along the bottom (left to right) then
    bottom..bottom+top-1 along the top (left to right).  Planarity is
    decided on the boundary circle: bottom left-to-right, then top
    right-to-left.
    """
    total = bottom + top
    if total % 2:
        return ()
    circle = tuple(range(bottom)) + tuple(bottom + top - 1 - j for j in range(top))
    out = []
    for pairs in _noncrossing(circle):
        m = [-1] * total
        for a, b in pairs:
            m[a], m[b] = b, a
        out.append(tuple(m))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def matching_index(bottom: int, top: int) -> dict[Matching, int]:
    return {m: i for i, m in enumerate(matchings(bottom, top))}


def identity_matching(n: int) -> Matching:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def nested_matching(n: int) -> Matching:
    """2n points all on one side, matched i <-> 2n-1-i (nested cups/caps)."""
    return tuple(2 * n - 1 - i for i in range(2 * n))


def tensor_matchings(m1: Matching, b1: int, t1: int,
                     m2: Matching, b2: int, t2: int) -> Matching:
    """Place m2 to the right of m1."""
    def enc1(p: int) -> int:
        return p if p < b1 else p + b2

    def enc2(p: int) -> int:
        return b1 + p if p < b2 else b1 + t1 + p

    out = [-1] * (b1 + b2 + t1 + t2)
    for p in range(b1 + t1):
        out[enc1(p)] = enc1(m1[p])
    for p in range(b2 + t2):
        out[enc2(p)] = enc2(m2[p])
    return tuple(out)


def compose_matchings(lower: Matching, a: int, b: int,
                      upper: Matching, c: int) -> tuple[Matching, int]:
    """Stack `upper` (b bottom, c top points) on `lower` (a bottom, b top).

    Returns the resulting matching on (a, c) and the number of closed
    loops created in the middle row.
    """
    result = [-1] * (a + c)
    seen_mid = [False] * b
    for start in range(a + c):
        if result[start] != -1:
            continue
        if start < a:
            side, p = 0, start          # in lower, point index
        else:
            side, p = 1, b + (start - a)  # in upper
        while True:
            if side == 0:
                q = lower[p]
                if q < a:
                    end = q
                    break
                seen_mid[q - a] = True
                side, p = 1, q - a
            else:
                q = upper[p]
                if q >= b:
                    end = a + (q - b)
                    break
                seen_mid[q] = True
                side, p = 0, a + q
        result[start] = end
        result[end] = start
    loops = 0
    for m0 in range(b):
        if seen_mid[m0]:
            continue
        loops += 1
        cur = m0
        while True:
            seen_mid[cur] = True
            nxt = lower[a + cur] - a     # lower arc: top point to top point
            seen_mid[nxt] = True
            cur = upper[nxt]             # upper arc: bottom point to bottom point
            if cur == m0:
                break
    return tuple(result), loops


class TLInstance(CategoryInstance):
    """Diagrammatic Temperley-Lieb category over Q(A) or Q(zeta_N)."""

    name = "tl"
    braided = True
    ribbon = True

    def __init__(self, cyclotomic_order: int | None = None, max_strands: int = 12):
        if cyclotomic_order is None:
            field = rational_function_field()
            self.a_param = field.generator()
            self.name = "tl"
        else:
            field = cyclotomic_field(cyclotomic_order)
            self.a_param = field.generator()
            self.name = f"tl@{cyclotomic_order}"
        super().__init__(field, TRIVIAL_GROUP)
        self.max_strands = max_strands
        self.delta = -(self.a_param ** 2) - (self.a_param ** -2)
        for n in range(max_strands + 1):
            self.register(ObjectHandle(str(n), 2 ** n, (), str(n)))
        self._braid_cache: dict[tuple[int, int, int], Morphism] = {}

    # -- word bookkeeping --------------------------------------------------------
    def strands(self, w: Word) -> int:
        return sum(int(e.obj) for e in w)

    def strand_entry(self, n: int = 1) -> Entry:
        return Entry(str(n), True)

    def strand_word(self, n: int) -> Word:
        return (Entry(str(n), True),) if n else ()

    def _basis(self, dom: Word, cod: Word) -> tuple[Matching, ...]:
        return matchings(self.strands(dom), self.strands(cod))

    def _vector(self, dom: Word, cod: Word, coeffs: dict[Matching, Scalar]) -> Morphism:
        basis = self._basis(dom, cod)
        idx = matching_index(self.strands(dom), self.strands(cod))
        z = self.field.zero()
        col = [z] * len(basis)
        for m, c in coeffs.items():
            col[idx[m]] = col[idx[m]] + c
        return Morphism(dom, cod, ExactMatrix(self.field, len(basis), 1, tuple(col)))

    def _terms(self, f: Morphism) -> list[tuple[Matching, Scalar]]:
        basis = self._basis(f.dom, f.cod)
        return [(m, c) for m, c in zip(basis, f.payload.entries) if not c.is_zero()]

    # -- payload semantics ---------------------------------------------------------
    def identity(self, w: Word) -> Morphism:
        n = self.strands(w)
        return self._vector(w, w, {identity_matching(n): self.field.one()})

    def zero_morphism(self, dom: Word, cod: Word) -> Morphism:
        basis = self._basis(dom, cod)
        return Morphism(dom, cod,
                        ExactMatrix.zeros(self.field, len(basis), 1))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if f.dom != g.cod:
            raise ValueError(f"cannot compose: {f} after {g}")
        a, b, c = self.strands(g.dom), self.strands(g.cod), self.strands(f.cod)
        out: dict[Matching, Scalar] = {}
        for mg, cg in self._terms(g):
            for mf, cf in self._terms(f):
                m, loops = compose_matchings(mg, a, b, mf, c)
                coeff = cg * cf * (self.delta ** loops)
                out[m] = out.get(m, self.field.zero()) + coeff
        return self._vector(g.dom, f.cod, out)

    def tensor(self, f: Morphism, g: Morphism) -> Morphism:
        b1, t1 = self.strands(f.dom), self.strands(f.cod)
        b2, t2 = self.strands(g.dom), self.strands(g.cod)
        out: dict[Matching, Scalar] = {}
        for m1, c1 in self._terms(f):
            for m2, c2 in self._terms(g):
                m = tensor_matchings(m1, b1, t1, m2, b2, t2)
                out[m] = out.get(m, self.field.zero()) + c1 * c2
        return self._vector(f.dom + g.dom, f.cod + g.cod, out)

    def ev_handle(self, name: str, kind: str) -> Morphism:
        n = int(name)
        e = Entry(name, True)
        nest = nested_matching(n)
        one = self.field.one()
        if kind == EV_L:
            return self._vector((e.flip(), e), (), {nest: one})
        if kind == EV_R:
            return self._vector((e, e.flip()), (), {nest: one})
        if kind == COEV_L:
            return self._vector((), (e, e.flip()), {nest: one})
        if kind == COEV_R:
            return self._vector((), (e.flip(), e), {nest: one})
        raise ValueError(f"unknown kind {kind!r}")

    def hom_basis_raw(self, dom: Word, cod: Word):
        basis = self._basis(dom, cod)
        out = []
        z, o = self.field.zero(), self.field.one()
        for i in range(len(basis)):
            col = [z] * len(basis)
            col[i] = o
            out.append(Morphism(dom, cod, ExactMatrix(self.field, len(basis), 1, tuple(col))))
        return out

    # -- braiding -------------------------------------------------------------------
    def _elementary_crossing(self, positive: bool) -> Morphism:
        e = self.strand_entry()
        w = (e, e)
        idm = {identity_matching(2): self.a_param if positive else self.a_param ** -1}
        hook = {(1, 0, 3, 2): self.a_param ** -1 if positive else self.a_param}
        coeffs = dict(idm)
        for m, c in hook.items():
            coeffs[m] = c
        return self._vector(w, w, coeffs)

    def _cable_crossing(self, a: int, b: int, sign: int) -> Morphism:
        key = (a, b, sign)
        if key in self._braid_cache:
            return self._braid_cache[key]
        e1 = self.strand_entry()
        if a == 0 or b == 0:
            out = self.identity(self.strand_word(a + b))
        elif a == 1 and b == 1:
            c = self._elementary_crossing(sign > 0)
            out = Morphism((e1, e1), (e1, e1), c.payload)
        elif a == 1:
            # c_{1,b} = (id_{b-1} (x) c_{1,1}) after (c_{1,b-1} (x) id_1)
            lower = self.tensor(self._cable_crossing(1, b - 1, sign),
                                self.identity(self.strand_word(1)))
            upper = self.tensor(self.identity(self.strand_word(b - 1)),
                                self._cable_crossing(1, 1, sign))
            out = self.compose(upper, lower)
        else:
            # c_{a,b} = (c_{a-1,b} (x) id_1-cable) after (id (x) c_{1,b}) on split 1+(a-1)
            lower = self.tensor(self.identity(self.strand_word(a - 1)),
                                self._cable_crossing(1, b, sign))
            upper = self.tensor(self._cable_crossing(a - 1, b, sign),
                                self.identity(self.strand_word(1)))
            out = self.compose(upper, lower)
        self._braid_cache[key] = out
        return out

    def braiding(self, a: Word, b: Word) -> Morphism:
        na, nb = self.strands(a), self.strands(b)
        c = self._cable_crossing(na, nb, +1)
        return Morphism(a + b, b + a, c.payload)

    def braiding_inverse(self, a: Word, b: Word) -> Morphism:
        na, nb = self.strands(a), self.strands(b)
        c = self._cable_crossing(na, nb, -1)
        return Morphism(a + b, b + a, c.payload)

    # -- fused word objects ------------------------------------------------------------
    def register_word_object(self, w: Word) -> ObjectHandle:
        n = self.strands(w)
        if n > self.max_strands:
            raise ValueError("word exceeds the registered strand bound")
        return self.handle(str(n))

    def retype_word_to_object(self, w: Word) -> Morphism:
        h = self.register_word_object(w)
        n = self.strands(w)
        return Morphism(w, (Entry(h.name, True),),
                        self.identity(self.strand_word(n)).payload)

    def dual_retype(self, name: str) -> Morphism | None:
        n = int(name)
        return Morphism((Entry(name, False),), (Entry(name, True),),
                        self.identity(self.strand_word(n)).payload)

    # -- diagrammatic closure (independent quantum-trace route) --------------------------
    def markov_closure(self, f: Morphism) -> Scalar:
        """Close all strands of an endomorphism around the right, directly.

        Loop counting on the matching itself; used as an oracle against
        evaluation through (co)evaluation composites.
        """
        if f.dom != f.cod:
            raise ValueError("closure needs an endomorphism")
        n = self.strands(f.dom)
        out = self.field.zero()
        for m, c in self._terms(f):
            # close bottom i with top n+i; count resulting loops
            seen = [False] * (2 * n)
            loops = 0
            for start in range(2 * n):
                if seen[start]:
                    continue
                loops += 1
                p = start
                while not seen[p]:
                    seen[p] = True
                    q = m[p]
                    seen[q] = True
                    p = q + n if q < n else q - n  # closure arc
            out = out + c * (self.delta ** loops)
        return out


def build_tl_instance(cyclotomic_order: int | None = None,
                      max_strands: int = 12) -> TLInstance:
    """Generic parameter when `cyclotomic_order` is None, else A = zeta_N."""
    return TLInstance(cyclotomic_order, max_strands)
