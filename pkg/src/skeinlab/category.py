"""Pivotal category kernel: graded objects, tensor words, exact morphisms.

Objects are registered handles; a tensor word is a sequence of oriented
entries, where a down-oriented entry stands for the dual object.  Taking
the dual of a word reverses it and flips orientations, which makes the
double dual literally the identity: the pivotal structure is strict and
``f** == f`` holds on the nose for every morphism our instances produce.

Each concrete category decides what the payload matrix of a morphism
means (linear instances use honest matrices of linear maps; the
Temperley-Lieb instance uses coefficient vectors over planar matchings).
All structural operations here -- duals of morphisms, partial traces,
word-level (co)evaluations -- are built generically from the handle-level
data an instance supplies.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from .fields import FieldSpec, Scalar
from .linalg import ExactMatrix, hstack, nullspace, rref, solve

# (co)evaluation kinds
EV_L = "ev-left"      # V* (x) V -> I
EV_R = "ev-right"     # V (x) V* -> I
COEV_L = "coev-left"  # I -> V (x) V*
COEV_R = "coev-right"  # I -> V* (x) V


@dataclass(frozen=True)
class GradingGroup:
    """Finitely generated abelian group as a product of cyclic factors.

    ``orders[i] == 0`` means an infinite cyclic factor.  Elements are
    integer tuples; the trivial group is the empty product.
    """

    orders: tuple[int, ...] = ()

    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def _norm(self, e: Sequence[int]) -> tuple[int, ...]:
        if len(e) != len(self.orders):
            raise ValueError("element length does not match group rank")
        return tuple(x % o if o else x for x, o in zip(e, self.orders))

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self._norm(tuple(x + y for x, y in zip(a, b)))

    def inv(self, a: Sequence[int]) -> tuple[int, ...]:
        return self._norm(tuple(-x for x in a))

    def is_finite(self) -> bool:
        return all(o > 0 for o in self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        if not self.is_finite():
            raise ValueError("infinite grading group")
        out = [()]
        for o in self.orders:
            out = [e + (k,) for e in out for k in range(o)]
        return [self._norm(e) for e in out]

    def format(self, e: Sequence[int]) -> str:
        return ",".join(str(x) for x in self._norm(e)) if self.orders else "e"

    def parse(self, text: str) -> tuple[int, ...]:
        text = text.strip()
        if not self.orders:
            if text in ("", "e", "0"):
                return ()
            raise ValueError("trivial group has only the identity element")
        return self._norm(tuple(int(t) for t in text.split(",")))


TRIVIAL_GROUP = GradingGroup(())


@dataclass(frozen=True)
class ObjectHandle:
    name: str
    dim: int
    degree: Optional[tuple[int, ...]]  # None = not homogeneous
    dual_name: str  # name of a registered handle isomorphic to the dual


@dataclass(frozen=True)
class Entry:
    """One strand color: a handle plus an orientation (down = dual)."""

    obj: str
    up: bool = True

    def flip(self) -> "Entry":
        return Entry(self.obj, not self.up)

    def __str__(self) -> str:
        return self.obj if self.up else f"{self.obj}^"


Word = tuple[Entry, ...]


def word(*entries) -> Word:
    out = []
    for e in entries:
        if isinstance(e, Entry):
            out.append(e)
        elif isinstance(e, str):
            out.append(Entry(e, True))
        else:
            raise TypeError(f"bad word entry {e!r}")
    return tuple(out)


def word_dual(w: Word) -> Word:
    return tuple(e.flip() for e in reversed(w))


def format_word(w: Word) -> str:
    return "(" + ", ".join(str(e) for e in w) + ")"


@dataclass(frozen=True)
class Morphism:
    dom: Word
    cod: Word
    payload: ExactMatrix

    def __str__(self) -> str:
        return f"Morphism {format_word(self.dom)} -> {format_word(self.cod)}"


class CategoryInstance:
    """Abstract pivotal k-category with exact morphism payloads.

    Subclasses implement the payload semantics: identity, composition,
    tensor, the four handle-level duality morphisms, hom-space bases and
    (for braided/ribbon instances) braidings and twists.  Instances are
    immutable after construction and every operation is pure.
    """

    name = "abstract"

    def __init__(self, field: FieldSpec, grading: GradingGroup = TRIVIAL_GROUP):
        self.field = field
        self.grading = grading
        self._handles: dict[str, ObjectHandle] = {}
        self._hom_cache: dict[tuple[Word, Word], list[Morphism]] = {}
        self._coord_cache: dict[tuple[Word, Word], tuple[ExactMatrix, list[int]]] = {}

    # -- registry -------------------------------------------------------------
    def register(self, handle: ObjectHandle) -> ObjectHandle:
        existing = self._handles.get(handle.name)
        if existing is not None:
            if existing != handle:
                raise ValueError(f"conflicting registration for {handle.name!r}")
            return existing
        self._handles[handle.name] = handle
        return handle

    def handle(self, name: str) -> ObjectHandle:
        try:
            return self._handles[name]
        except KeyError:
            raise KeyError(f"unregistered object {name!r}") from None

    def handles(self) -> list[ObjectHandle]:
        return list(self._handles.values())

    def entry_degree(self, e: Entry) -> Optional[tuple[int, ...]]:
        d = self.handle(e.obj).degree
        if d is None:
            return None
        return d if e.up else self.grading.inv(d)

    def word_degree(self, w: Word) -> Optional[tuple[int, ...]]:
        out = self.grading.identity()
        for e in w:
            d = self.entry_degree(e)
            if d is None:
                return None
            out = self.grading.mul(out, d)
        return out

    def entry_dim(self, e: Entry) -> int:
        return self.handle(e.obj).dim

    def word_dim(self, w: Word) -> int:
        out = 1
        for e in w:
            out *= self.entry_dim(e)
        return out

    # -- payload semantics (implemented by subclasses) -------------------------
    def identity(self, w: Word) -> Morphism:
        raise NotImplementedError

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        """f after g (domain of f must equal codomain of g)."""
        raise NotImplementedError

    def tensor(self, f: Morphism, g: Morphism) -> Morphism:
        raise NotImplementedError

    def zero_morphism(self, dom: Word, cod: Word) -> Morphism:
        raise NotImplementedError

    def add(self, f: Morphism, g: Morphism) -> Morphism:
        if f.dom != g.dom or f.cod != g.cod:
            raise ValueError("adding morphisms with different types")
        return Morphism(f.dom, f.cod, f.payload + g.payload)

    def scale(self, c: Scalar, f: Morphism) -> Morphism:
        return Morphism(f.dom, f.cod, f.payload.scale(c))

    def equal(self, f: Morphism, g: Morphism) -> bool:
        return f.dom == g.dom and f.cod == g.cod and (f.payload - g.payload).is_zero()

    def is_zero_morphism(self, f: Morphism) -> bool:
        return f.payload.is_zero()

    def ev_handle(self, name: str, kind: str) -> Morphism:
        """One of the four duality morphisms of a registered object."""
        raise NotImplementedError

    def hom_basis_raw(self, dom: Word, cod: Word) -> list[Morphism]:
        raise NotImplementedError

    def register_word_object(self, w: Word) -> ObjectHandle:
        """Register the tensor product of a word as a single object."""
        raise NotImplementedError

    def word_object_word(self, handle_name: str) -> Word | None:
        """If the handle was produced by register_word_object, its word."""
        return None

    # braided / ribbon structure (optional)
    braided = False
    ribbon = False

    def braiding(self, a: Word, b: Word) -> Morphism:
        raise NotImplementedError(f"{self.name} is not braided")

    def braiding_inverse(self, a: Word, b: Word) -> Morphism:
        c = self.braiding(b, a)
        return self.invert_endo_like(c)

    def twist(self, w: Word) -> Morphism:
        if not self.ribbon:
            raise NotImplementedError(f"{self.name} is not ribbon")
        return self.ptr_right(self.braiding(w, w), len(w))

    def twist_inverse(self, w: Word) -> Morphism:
        if not self.ribbon:
            raise NotImplementedError(f"{self.name} is not ribbon")
        return self.ptr_right(self.braiding_inverse(w, w), len(w))

    # -- scalars <-> End(I) -----------------------------------------------------
    def scalar_of(self, f: Morphism) -> Scalar:
        if f.dom or f.cod:
            raise ValueError("not an endomorphism of the unit")
        if f.payload.rows != 1 or f.payload.cols != 1:
            raise ValueError("unit endomorphism payload must be 1x1")
        return f.payload.get(0, 0)

    def from_scalar(self, c: Scalar) -> Morphism:
        return self.scale(c, self.identity(()))

    # -- generic duality machinery ----------------------------------------------
    def ev_entry(self, e: Entry, kind: str) -> Morphism:
        """Duality morphisms of an oriented entry.

        For a down entry the roles of the left and right structure maps
        swap, which is exactly what makes the orientation calculus strict.
        """
        if e.up:
            return self.ev_handle(e.obj, kind)
        swap = {EV_L: EV_R, EV_R: EV_L, COEV_L: COEV_R, COEV_R: COEV_L}
        m = self.ev_handle(e.obj, swap[kind])
        # retype: the matrices coincide, the words are the flipped ones
        if kind == EV_L:
            return Morphism((e.flip(), e), (), m.payload)
        if kind == EV_R:
            return Morphism((e, e.flip()), (), m.payload)
        if kind == COEV_L:
            return Morphism((), (e, e.flip()), m.payload)
        return Morphism((), (e.flip(), e), m.payload)

    def ev_word(self, w: Word, kind: str) -> Morphism:
        """Word-level duality morphisms, built by nesting entry-level ones."""
        cache = self.__dict__.setdefault("_ev_cache", {})
        key = (tuple(w), kind)
        if key not in cache:
            cache[key] = self._ev_word_raw(tuple(w), kind)
        return cache[key]

    def _ev_word_raw(self, w: Word, kind: str) -> Morphism:
        if not w:
            return self.identity(())
        e, rest = w[0], w[1:]
        if kind == EV_L:
            # dual(w) (x) w -> I:  evaluate the innermost pair first
            inner = self.ev_entry(e, EV_L)
            mid = self.tensor(self.tensor(self.identity(word_dual(rest)), inner),
                              self.identity(rest))
            return self.compose(self.ev_word(rest, EV_L), mid)
        if kind == EV_R:
            inner = self.ev_word(rest, EV_R)
            mid = self.tensor(self.tensor(self.identity((e,)), inner),
                              self.identity((e.flip(),)))
            return self.compose(self.ev_entry(e, EV_R), mid)
        if kind == COEV_L:
            outer = self.ev_entry(e, COEV_L)
            mid = self.tensor(self.tensor(self.identity((e,)), self.ev_word(rest, COEV_L)),
                              self.identity((e.flip(),)))
            return self.compose(mid, outer)
        if kind == COEV_R:
            outer = self.ev_word(rest, COEV_R)
            mid = self.tensor(self.tensor(self.identity(word_dual(rest)),
                                          self.ev_entry(e, COEV_R)),
                              self.identity(rest))
            return self.compose(mid, outer)
        raise ValueError(f"unknown (co)evaluation kind {kind!r}")

    def dual_morphism(self, f: Morphism, use_right: bool = False) -> Morphism:
        """The dual f*: cod* -> dom*, by the left (default) or right formula."""
        v, w = f.dom, f.cod
        vd, wd = word_dual(v), word_dual(w)
        if not use_right:
            top = self.tensor(self.ev_word(w, EV_L), self.identity(vd))
            mid = self.tensor(self.tensor(self.identity(wd), f), self.identity(vd))
            bot = self.tensor(self.identity(wd), self.ev_word(v, COEV_L))
            return self.compose(top, self.compose(mid, bot))
        top = self.tensor(self.identity(vd), self.ev_word(w, EV_R))
        mid = self.tensor(self.tensor(self.identity(vd), f), self.identity(wd))
        bot = self.tensor(self.ev_word(v, COEV_R), self.identity(wd))
        return self.compose(top, self.compose(mid, bot))

    def ptr_right(self, f: Morphism, k: int = 1) -> Morphism:
        """Right partial trace over the last k entries of an endomorphism."""
        if f.dom != f.cod:
            raise ValueError("partial trace needs an endomorphism")
        if k < 0 or k > len(f.dom):
            raise ValueError("split index out of range")
        if k == 0:
            return f
        u, w = f.dom[:-k], f.dom[-k:]
        wd = word_dual(w)
        top = self.tensor(self.identity(u), self.ev_word(w, EV_R))
        mid = self.tensor(f, self.identity(wd))
        bot = self.tensor(self.identity(u), self.ev_word(w, COEV_L))
        return self.compose(top, self.compose(mid, bot))

    def ptr_left(self, f: Morphism, k: int = 1) -> Morphism:
        """Left partial trace over the first k entries of an endomorphism."""
        if f.dom != f.cod:
            raise ValueError("partial trace needs an endomorphism")
        if k < 0 or k > len(f.dom):
            raise ValueError("split index out of range")
        if k == 0:
            return f
        w, u = f.dom[:k], f.dom[k:]
        wd = word_dual(w)
        top = self.tensor(self.ev_word(w, EV_L), self.identity(u))
        mid = self.tensor(self.identity(wd), f)
        bot = self.tensor(self.ev_word(w, COEV_R), self.identity(u))
        return self.compose(top, self.compose(mid, bot))

    def partial_trace(self, f: Morphism, split: int, side: str) -> Morphism:
        """Spec-level partial trace with a caller-given split index."""
        if side == "right":
            return self.ptr_right(f, len(f.dom) - split)
        if side == "left":
            return self.ptr_left(f, split)
        raise ValueError(f"unknown side {side!r}")

    def quantum_dim_right(self, w: Word) -> Scalar:
        return self.scalar_of(self.compose(self.ev_word(w, EV_R), self.ev_word(w, COEV_L)))

    def quantum_dim_left(self, w: Word) -> Scalar:
        return self.scalar_of(self.compose(self.ev_word(w, EV_L), self.ev_word(w, COEV_R)))

    # -- hom spaces and coordinates ----------------------------------------------
    def hom_basis(self, dom: Word, cod: Word) -> list[Morphism]:
        key = (tuple(dom), tuple(cod))
        if key not in self._hom_cache:
            dd, dc = self.word_degree(dom), self.word_degree(cod)
            if self.grading.orders and dd is not None and dc is not None and dd != dc:
                self._hom_cache[key] = []
            else:
                self._hom_cache[key] = self.hom_basis_raw(tuple(dom), tuple(cod))
        return list(self._hom_cache[key])

    def _coord_data(self, dom: Word, cod: Word):
        key = (tuple(dom), tuple(cod))
        if key not in self._coord_cache:
            basis = self.hom_basis(dom, cod)
            if basis:
                m = hstack([ExactMatrix(self.field, len(b.payload.entries), 1,
                                        b.payload.entries) for b in basis])
            else:
                probe = self.zero_morphism(dom, cod)
                m = ExactMatrix.zeros(self.field, len(probe.payload.entries), 0)
            self._coord_cache[key] = m
        return self._coord_cache[key]

    def coordinates(self, f: Morphism) -> list[Scalar]:
        """Coordinates of f in the hom_basis of its type (exact solve)."""
        m = self._coord_data(f.dom, f.cod)
        vec = ExactMatrix(self.field, len(f.payload.entries), 1, f.payload.entries)
        sol = solve(m, vec)
        if sol is None:
            raise ArithmeticError("morphism lies outside the hom space basis span")
        return list(sol.entries)

    def from_coordinates(self, dom: Word, cod: Word, coeffs: Sequence[Scalar]) -> Morphism:
        basis = self.hom_basis(dom, cod)
        if len(coeffs) != len(basis):
            raise ValueError("coefficient count does not match hom dimension")
        out = self.zero_morphism(dom, cod)
        for c, b in zip(coeffs, basis):
            if not c.is_zero():
                out = self.add(out, self.scale(c, b))
        return out

    def invert_endo_like(self, f: Morphism) -> Morphism:
        """Inverse of f: V -> W inside Hom(W, V), via an exact linear solve."""
        basis = self.hom_basis(f.cod, f.dom)
        idm = self.identity(f.dom)
        cols = []
        for b in basis:
            comp = self.compose(b, f)
            cols.append(ExactMatrix(self.field, len(comp.payload.entries), 1,
                                    comp.payload.entries))
        m = hstack(cols) if cols else ExactMatrix.zeros(
            self.field, len(idm.payload.entries), 0)
        target = ExactMatrix(self.field, len(idm.payload.entries), 1, idm.payload.entries)
        sol = solve(m, target)
        if sol is None:
            raise ArithmeticError("morphism is not invertible")
        g = self.from_coordinates(f.cod, f.dom, list(sol.entries))
        if not self.equal(self.compose(self.compose(g, f), self.identity(f.dom)),
                          self.identity(f.dom)) or \
           not self.equal(self.compose(f, g), self.identity(f.cod)):
            raise ArithmeticError("morphism is not two-sided invertible")
        return g

    # -- validation ----------------------------------------------------------------
    def check_zigzags(self, name: str) -> None:
        """All four zigzag identities for one registered object, exactly."""
        for e in (Entry(name, True), Entry(name, False)):
            w = (e,)
            i = self.identity(w)
            z1 = self.compose(self.tensor(i, self.ev_word(w, EV_L)),
                              self.tensor(self.ev_word(w, COEV_L), i))
            z2 = self.compose(self.tensor(self.ev_word(w, EV_L), self.identity(word_dual(w))),
                              self.tensor(self.identity(word_dual(w)), self.ev_word(w, COEV_L)))
            z3 = self.compose(self.tensor(self.ev_word(w, EV_R), i),
                              self.tensor(i, self.ev_word(w, COEV_R)))
            z4 = self.compose(self.tensor(self.identity(word_dual(w)), self.ev_word(w, EV_R)),
                              self.tensor(self.ev_word(w, COEV_R), self.identity(word_dual(w))))
            for tag, zz, idm in (("z1", z1, i), ("z2", z2, self.identity(word_dual(w))),
                                 ("z3", z3, i), ("z4", z4, self.identity(word_dual(w)))):
                if not self.equal(zz, idm):
                    raise AssertionError(f"zigzag {tag} fails for {name!r} ({e})")
