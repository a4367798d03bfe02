"""Independent Kauffman bracket oracle and braid-word link builders.

The oracle expands every crossing of a braid-closure presentation into
its two smoothings (positive crossing = A * pass-through + A^(-1) *
hook), counts the resulting closed loops with a union-find over strand
segments, and sums A-powers times delta^loops with delta = -A^2 - A^(-2)
and the empty-diagram normalization <empty> = 1 (so the 0-crossing
unknot evaluates to delta).

It shares nothing with the category machinery: no matchings, no matrix
evaluation; only segment bookkeeping.  Builders produce the matching
sliced-diagram presentations so both evaluation routes see the same
framed link.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .category import Entry, Word
from .diagrams import (Atom, CAP_R, CROSS_NEG, CROSS_POS, CUP_L, SlicedDiagram,
                       ident)
from .fields import FieldSpec, Scalar


@dataclass(frozen=True)
class BraidLink:
    """A link as the closure of a braid: strand count and signed word.

    Generator +k crosses strands (k-1, k) positively, -k negatively
    (1-indexed k, columns 0-based).
    """

    strands: int
    word: tuple[int, ...]
    name: str = ""

    def crossing_count(self) -> int:
        return len(self.word)

    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)


BUILTIN_LINKS = {
    "unknot": BraidLink(1, (), "unknot"),
    "unknot2": BraidLink(2, (1,), "unknot2"),
    "hopf": BraidLink(2, (1, 1), "hopf"),
    "hopf-neg": BraidLink(2, (-1, -1), "hopf-neg"),
    "trefoil": BraidLink(2, (1, 1, 1), "trefoil"),
    "trefoil-neg": BraidLink(2, (-1, -1, -1), "trefoil-neg"),
    "figure8": BraidLink(3, (1, -2, 1, -2), "figure8"),
}


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        self.add(a)
        self.add(b)
        self.parent[self.find(a)] = self.find(b)


def bracket_state_sum(field: FieldSpec, link: BraidLink) -> Scalar:
    """The Kauffman bracket of the braid closure by full state expansion."""
    a = field.generator()
    delta = -(a ** 2) - (a ** -2)
    n = link.strands
    c = len(link.word)
    total = field.zero()
    for state in range(1 << c):
        uf = _UnionFind()
        fresh = n
        cur = list(range(n))
        for s in cur:
            uf.add(s)
        apow = 0
        for idx, gen in enumerate(link.word):
            col = abs(gen) - 1
            hook = bool((state >> idx) & 1)
            positive = gen > 0
            if hook:
                apow += -1 if positive else 1
                uf.union(cur[col], cur[col + 1])
                z = fresh
                fresh += 1
                uf.add(z)
                cur[col] = z
                cur[col + 1] = z
            else:
                apow += 1 if positive else -1
        for s in range(n):
            uf.union(cur[s], s)
        loops = len({uf.find(x) for x in uf.parent})
        total = total + (a ** apow) * (delta ** loops)
    return total


# ---------------------------------------------------------------------------
# sliced-diagram presentations of the same braid closures


def braid_tangle(strand: Entry, link: BraidLink) -> SlicedDiagram:
    """The open braid as a sliced diagram on `strands` parallel strands."""
    w: Word = (strand,) * link.strands
    slices = []
    for gen in link.word:
        col = abs(gen) - 1
        kind = CROSS_POS if gen > 0 else CROSS_NEG
        row = [ident(strand)] * col + [Atom(kind, (strand, strand))] + \
            [ident(strand)] * (link.strands - col - 2)
        slices.append(row)
    if not slices:
        slices.append([ident(strand)] * link.strands)
    return SlicedDiagram.make(w, slices)


def braid_one_one_tangle(strand: Entry, link: BraidLink) -> SlicedDiagram:
    """Close all strands but the first, leaving a (1,1) tangle."""
    from .diagrams import _coev_cascade_slices, _ev_cascade_slices
    b = braid_tangle(strand, link)
    rest: Word = (strand,) * (link.strands - 1)
    if not rest:
        return b
    cups = [[ident(strand)] + list(s) for s in _coev_cascade_slices(rest)]
    from .category import word_dual
    mid = [list(s) + [ident(e) for e in word_dual(rest)] for s in b.slices]
    caps = [[ident(strand)] + list(s) for s in _ev_cascade_slices(rest)]
    return SlicedDiagram.make((strand,), cups + mid + caps)


def braid_closure_diagram(cat, link: BraidLink, strand: Entry) -> SlicedDiagram:
    from .diagrams import closure_right
    return closure_right(cat, braid_tangle(strand, link))
