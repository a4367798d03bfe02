"""The group category C_G of a finite abelian group G.

One object per group element, all of them one-dimensional and invertible:
g (x) h = gh, g* = g^{-1}, every structural morphism is the canonical
identification, and the symmetric braiding makes the instance ribbon with
trivial twist.
"""

from __future__ import annotations

from ..category import Entry, GradingGroup, Morphism, ObjectHandle, Word
from ..fields import FieldSpec, rational_function_field
from ..linalg import ExactMatrix
from .linear import LinearInstance


def element_name(grading: GradingGroup, e) -> str:
    return "g[" + grading.format(e) + "]"


class GroupInstance(LinearInstance):
    name = "groupcat"
    braided = True
    ribbon = True

    def __init__(self, grading: GradingGroup, field: FieldSpec | None = None):
        if not grading.is_finite():
            raise ValueError("group instance needs a finite abelian group")
        super().__init__(field or rational_function_field(), grading)
        for e in grading.elements():
            self.register(ObjectHandle(
                name=element_name(grading, e),
                dim=1,
                degree=e,
                dual_name=element_name(grading, grading.inv(e)),
            ))

    # -- helpers ---------------------------------------------------------------
    def element_entry(self, e) -> Entry:
        return Entry(element_name(self.grading, e), True)

    def _one_matrix(self, rows: int = 1, cols: int = 1) -> ExactMatrix:
        one = self.field.one()
        return ExactMatrix(self.field, rows, cols, (one,) * (rows * cols))

    # -- payload semantics -------------------------------------------------------
    def ev_handle(self, name: str, kind: str) -> Morphism:
        self.handle(name)
        e = Entry(name, True)
        one = self._one_matrix()
        from ..category import COEV_L, COEV_R, EV_L, EV_R
        if kind == EV_L:
            return Morphism((e.flip(), e), (), one)
        if kind == EV_R:
            return Morphism((e, e.flip()), (), one)
        if kind == COEV_L:
            return Morphism((), (e, e.flip()), one)
        if kind == COEV_R:
            return Morphism((), (e.flip(), e), one)
        raise ValueError(f"unknown kind {kind!r}")

    def hom_basis_raw(self, dom: Word, cod: Word):
        if self.word_degree(dom) == self.word_degree(cod):
            return [Morphism(dom, cod, self._one_matrix())]
        return []

    def braiding(self, a: Word, b: Word) -> Morphism:
        return Morphism(a + b, b + a, self._one_matrix())

    def braiding_inverse(self, a: Word, b: Word) -> Morphism:
        return Morphism(a + b, b + a, self._one_matrix())

    def register_word_object(self, w: Word) -> ObjectHandle:
        return self.handle(element_name(self.grading, self.word_degree(w)))

    def retype_word_to_object(self, w: Word) -> Morphism:
        h = self.register_word_object(w)
        return Morphism(w, (Entry(h.name, True),), self._one_matrix())

    def dual_retype(self, name: str) -> Morphism | None:
        """Identity-payload iso (V, down) -> (V*, up); always exists here."""
        h = self.handle(name)
        return Morphism((Entry(name, False),), (Entry(h.dual_name, True),),
                        self._one_matrix())
