"""Base class for categories whose morphisms are honest linear maps.

A word denotes the tensor product of the underlying spaces of its entries
(down entries use the dual space); payloads are (dim cod) x (dim dom)
matrices in row-major Kronecker bases, so composition is matrix product
and the tensor product of morphisms is the Kronecker product.
"""

from __future__ import annotations

from ..category import CategoryInstance, Morphism, Word
from ..linalg import ExactMatrix


class LinearInstance(CategoryInstance):
    name = "linear"

    def identity(self, w: Word) -> Morphism:
        return Morphism(w, w, ExactMatrix.identity(self.field, self.word_dim(w)))

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if f.dom != g.cod:
            raise ValueError(f"cannot compose: {f} after {g}")
        return Morphism(g.dom, f.cod, f.payload @ g.payload)

    def tensor(self, f: Morphism, g: Morphism) -> Morphism:
        return Morphism(f.dom + g.dom, f.cod + g.cod, f.payload.kron(g.payload))

    def zero_morphism(self, dom: Word, cod: Word) -> Morphism:
        return Morphism(dom, cod,
                        ExactMatrix.zeros(self.field, self.word_dim(cod), self.word_dim(dom)))

    # -- direct-contraction partial traces (identical to the structural
    #    formulas, without materializing Kronecker factors) ------------------
    def _closure_kernel(self, w: Word, right: bool) -> ExactMatrix:
        """K[s',s] contracting the traced block: K = E . C over the dual index.

        Right traces: C from coev_L (column over w (x) dual w), E from ev_R.
        Left traces: C from coev_R (column over dual w (x) w), E from ev_L.
        Computed straight from the structural matrices, so any pivot
        convention is inherited rather than re-derived.
        """
        key = ("ptrk", w, right)
        cache = self.__dict__.setdefault("_kernel_cache", {})
        if key in cache:
            return cache[key]
        dw = self.word_dim(w)
        if right:
            c = self.ev_word(w, "coev-left").payload    # (dw*dw) x 1, index (s, t)
            e = self.ev_word(w, "ev-right").payload     # 1 x (dw*dw), index (s', t)
            ent = []
            for sp in range(dw):
                for s in range(dw):
                    acc = self.field.zero()
                    for t in range(dw):
                        cv = c.get(s * dw + t, 0)
                        if not cv.is_zero():
                            evv = e.get(0, sp * dw + t)
                            if not evv.is_zero():
                                acc = acc + evv * cv
                    ent.append(acc)
        else:
            c = self.ev_word(w, "coev-right").payload   # index (t, s)
            e = self.ev_word(w, "ev-left").payload      # index (t, s')
            ent = []
            for sp in range(dw):
                for s in range(dw):
                    acc = self.field.zero()
                    for t in range(dw):
                        cv = c.get(t * dw + s, 0)
                        if not cv.is_zero():
                            evv = e.get(0, t * dw + sp)
                            if not evv.is_zero():
                                acc = acc + evv * cv
                    ent.append(acc)
        out = ExactMatrix(self.field, dw, dw, tuple(ent))
        cache[key] = out
        return out

    def ptr_right(self, f: Morphism, k: int = 1) -> Morphism:
        if f.dom != f.cod:
            raise ValueError("partial trace needs an endomorphism")
        if k < 0 or k > len(f.dom):
            raise ValueError("split index out of range")
        if k == 0:
            return f
        u, w = f.dom[:-k], f.dom[-k:]
        du, dw = self.word_dim(u), self.word_dim(w)
        kern = self._closure_kernel(w, right=True)
        z = self.field.zero()
        out = []
        for a in range(du):
            for b in range(du):
                acc = z
                for sp in range(dw):
                    for s in range(dw):
                        v = f.payload.get(a * dw + sp, b * dw + s)
                        if not v.is_zero():
                            kk = kern.get(sp, s)
                            if not kk.is_zero():
                                acc = acc + v * kk
                out.append(acc)
        return Morphism(u, u, ExactMatrix(self.field, du, du, tuple(out)))

    def ptr_left(self, f: Morphism, k: int = 1) -> Morphism:
        if f.dom != f.cod:
            raise ValueError("partial trace needs an endomorphism")
        if k < 0 or k > len(f.dom):
            raise ValueError("split index out of range")
        if k == 0:
            return f
        w, u = f.dom[:k], f.dom[k:]
        du, dw = self.word_dim(u), self.word_dim(w)
        kern = self._closure_kernel(w, right=False)
        z = self.field.zero()
        out = []
        for a in range(du):
            for b in range(du):
                acc = z
                for sp in range(dw):
                    for s in range(dw):
                        v = f.payload.get(sp * du + a, s * du + b)
                        if not v.is_zero():
                            kk = kern.get(sp, s)
                            if not kk.is_zero():
                                acc = acc + v * kk
                out.append(acc)
        return Morphism(u, u, ExactMatrix(self.field, du, du, tuple(out)))
