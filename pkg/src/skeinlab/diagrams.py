"""Sliced ribbon-diagram IR and its evaluation functor.

A diagram is a stack of slices, each a horizontal row of atoms (identity
strands, caps/cups of the four duality flavors, coupons, crossings,
twists).  Consecutive slices must agree on their interface words.
Evaluation tensors each slice and composes upward; it is functorial by
construction and the move set below never changes the evaluation.

JSON layout (version 1):
    {"version": 1, "bottom": [entry...], "top": [entry...],
     "slices": [[atom...], ...]}
    entry = {"obj": name, "orient": "up"|"down"}
    atom  = {"kind": ..., ...}   (see atom_to_json)
Coupon payloads serialize as row-major scalar strings, so round-trips
are lossless.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .category import CategoryInstance, Entry, Morphism, Word, word_dual
from .linalg import ExactMatrix

ID = "id"
CAP_L = "cap_l"    # ev_L:  V* (x) V -> I
CAP_R = "cap_r"    # ev_R:  V (x) V* -> I
CUP_L = "cup_l"    # coev_L: I -> V (x) V*
CUP_R = "cup_r"    # coev_R: I -> V* (x) V
COUPON = "coupon"
CROSS_POS = "cross_pos"
CROSS_NEG = "cross_neg"
TWIST = "twist"
TWIST_INV = "twist_inv"


@dataclass(frozen=True)
class Atom:
    kind: str
    entries: tuple[Entry, ...] = ()      # colors parameterizing the atom
    coupon: Optional[Morphism] = None

    def __post_init__(self):
        if self.kind == COUPON and self.coupon is None:
            raise ValueError("coupon atom needs a morphism")

    def bottom(self) -> Word:
        e = self.entries
        if self.kind == ID:
            return (e[0],)
        if self.kind == CAP_L:
            return (e[0].flip(), e[0])
        if self.kind == CAP_R:
            return (e[0], e[0].flip())
        if self.kind in (CUP_L, CUP_R):
            return ()
        if self.kind == COUPON:
            return self.coupon.dom
        if self.kind in (CROSS_POS, CROSS_NEG):
            return (e[0], e[1])
        if self.kind in (TWIST, TWIST_INV):
            return (e[0],)
        raise ValueError(f"unknown atom kind {self.kind!r}")

    def top(self) -> Word:
        e = self.entries
        if self.kind == ID:
            return (e[0],)
        if self.kind in (CAP_L, CAP_R):
            return ()
        if self.kind == CUP_L:
            return (e[0], e[0].flip())
        if self.kind == CUP_R:
            return (e[0].flip(), e[0])
        if self.kind == COUPON:
            return self.coupon.cod
        if self.kind in (CROSS_POS, CROSS_NEG):
            return (e[1], e[0])
        if self.kind in (TWIST, TWIST_INV):
            return (e[0],)
        raise ValueError(f"unknown atom kind {self.kind!r}")


def ident(e: Entry) -> Atom:
    return Atom(ID, (e,))


def coupon(f: Morphism) -> Atom:
    return Atom(COUPON, (), f)


@dataclass(frozen=True)
class SlicedDiagram:
    bottom: Word
    top: Word
    slices: tuple[tuple[Atom, ...], ...]

    @staticmethod
    def make(bottom: Iterable[Entry], slices: Iterable[Iterable[Atom]]) -> "SlicedDiagram":
        bot = tuple(bottom)
        sls = tuple(tuple(s) for s in slices)
        cur = bot
        for s in sls:
            need = tuple(x for a in s for x in a.bottom())
            if need != cur:
                raise ValueError(f"slice interface mismatch: expected {cur}, got {need}")
            cur = tuple(x for a in s for x in a.top())
        return SlicedDiagram(bot, cur, sls)

    def interfaces(self) -> list[Word]:
        words = [self.bottom]
        for s in self.slices:
            words.append(tuple(x for a in s for x in a.top()))
        return words

    def stack(self, other: "SlicedDiagram") -> "SlicedDiagram":
        """other drawn above self."""
        if other.bottom != self.top:
            raise ValueError("stack interface mismatch")
        return SlicedDiagram(self.bottom, other.top, self.slices + other.slices)

    def beside(self, other: "SlicedDiagram") -> "SlicedDiagram":
        """other drawn to the right of self (slices padded with identities)."""
        ns, no = len(self.slices), len(other.slices)
        n = max(ns, no)
        out = []
        for i in range(n):
            left = self.slices[i] if i < ns else tuple(ident(e) for e in self.top)
            right = other.slices[i] if i < no else tuple(ident(e) for e in other.top)
            out.append(left + right)
        return SlicedDiagram.make(self.bottom + other.bottom, out)

    def atom_colors(self) -> list[Entry]:
        out = []
        for s in self.slices:
            for a in s:
                if a.kind == COUPON:
                    out.extend(a.coupon.dom)
                    out.extend(a.coupon.cod)
                else:
                    out.extend(a.bottom())
                    out.extend(a.top())
        out.extend(self.bottom)
        out.extend(self.top)
        return out


def eval_atom(cat: CategoryInstance, a: Atom) -> Morphism:
    from .category import COEV_L, COEV_R, EV_L, EV_R
    if a.kind == ID:
        return cat.identity((a.entries[0],))
    if a.kind == CAP_L:
        return cat.ev_entry(a.entries[0], EV_L)
    if a.kind == CAP_R:
        return cat.ev_entry(a.entries[0], EV_R)
    if a.kind == CUP_L:
        return cat.ev_entry(a.entries[0], COEV_L)
    if a.kind == CUP_R:
        return cat.ev_entry(a.entries[0], COEV_R)
    if a.kind == COUPON:
        return a.coupon
    if a.kind == CROSS_POS:
        if not cat.braided:
            raise ValueError("crossing atom in a non-braided instance")
        return cat.braiding((a.entries[0],), (a.entries[1],))
    if a.kind == CROSS_NEG:
        if not cat.braided:
            raise ValueError("crossing atom in a non-braided instance")
        return cat.braiding_inverse((a.entries[0],), (a.entries[1],))
    if a.kind == TWIST:
        if not cat.ribbon:
            raise ValueError("twist atom in a non-ribbon instance")
        return cat.twist((a.entries[0],))
    if a.kind == TWIST_INV:
        if not cat.ribbon:
            raise ValueError("twist atom in a non-ribbon instance")
        return cat.twist_inverse((a.entries[0],))
    raise ValueError(f"unknown atom kind {a.kind!r}")


def eval_rt(cat: CategoryInstance, d: SlicedDiagram) -> Morphism:
    """Evaluate a sliced diagram: tensor within slices, compose upward."""
    out = cat.identity(d.bottom)
    for s in d.slices:
        row = cat.identity(())
        for a in s:
            row = cat.tensor(row, eval_atom(cat, a))
        out = cat.compose(row, out)
    if out.cod != d.top:
        raise ValueError("diagram top word mismatch after evaluation")
    return out


# ---------------------------------------------------------------------------
# rotation by pi (used for sphere faces and right-entering cuts)


def rotate_atom(cat: CategoryInstance, a: Atom) -> Atom:
    if a.kind == ID:
        return ident(a.entries[0].flip())
    if a.kind == CAP_L:
        return Atom(CUP_R, a.entries)
    if a.kind == CAP_R:
        return Atom(CUP_L, a.entries)
    if a.kind == CUP_L:
        return Atom(CAP_R, a.entries)
    if a.kind == CUP_R:
        return Atom(CAP_L, a.entries)
    if a.kind == COUPON:
        return coupon(cat.dual_morphism(a.coupon))
    if a.kind in (CROSS_POS, CROSS_NEG):
        return Atom(a.kind, (a.entries[0].flip(), a.entries[1].flip()))
    if a.kind in (TWIST, TWIST_INV):
        return Atom(a.kind, (a.entries[0].flip(),))
    raise ValueError(f"unknown atom kind {a.kind!r}")


def rotate_pi(cat: CategoryInstance, d: SlicedDiagram) -> SlicedDiagram:
    """Rotate the whole diagram by pi; evaluation becomes the dual morphism."""
    slices = tuple(tuple(rotate_atom(cat, a) for a in reversed(s))
                   for s in reversed(d.slices))
    return SlicedDiagram.make(word_dual(d.top), slices)


# ---------------------------------------------------------------------------
# moves


MOVES = ("slide", "zigzag-cancel", "coupon-push", "R2", "R3", "twist-cancel")


def _atom_spans(s: Sequence[Atom]) -> list[tuple[int, int]]:
    """(bottom offset, top offset) of each atom in a slice."""
    out = []
    b = t = 0
    for a in s:
        out.append((b, t))
        b += len(a.bottom())
        t += len(a.top())
    return out


def find_moves(d: SlicedDiagram) -> list[tuple[str, tuple]]:
    """All applicable (move, location) pairs of the supported move set."""
    out: list[tuple[str, tuple]] = []
    for i in range(len(d.slices) - 1):
        lo, hi = d.slices[i], d.slices[i + 1]
        spans_lo, spans_hi = _atom_spans(lo), _atom_spans(hi)
        # pairwise patterns across the two slices
        for j, a in enumerate(lo):
            for k, b in enumerate(hi):
                bot_off = spans_hi[k][0]
                top_off = spans_lo[j][1]
                aligned = bot_off == top_off and len(a.top()) and \
                    bot_off + len(b.bottom()) == top_off + len(a.top())
                if aligned:
                    if a.kind == COUPON and b.kind == COUPON:
                        out.append(("coupon-push", (i, j, k)))
                    if a.kind == CROSS_POS and b.kind == CROSS_NEG:
                        out.append(("R2", (i, j, k)))
                    if a.kind == CROSS_NEG and b.kind == CROSS_POS:
                        out.append(("R2", (i, j, k)))
                    if a.kind == TWIST and b.kind == TWIST_INV:
                        out.append(("twist-cancel", (i, j, k)))
                    if a.kind == TWIST_INV and b.kind == TWIST:
                        out.append(("twist-cancel", (i, j, k)))
                if a.kind in (CUP_L, CUP_R) and b.kind in (CAP_L, CAP_R):
                    # S-bend: the cap covers one cup leg plus the adjacent
                    # through strand (offset one column either way)
                    if bot_off in (top_off - 1, top_off + 1):
                        try:
                            _apply_zigzag(d, (i, j, k))
                        except ValueError:
                            pass
                        else:
                            out.append(("zigzag-cancel", (i, j, k)))
        # slides: a in slice i strictly left of b in slice i+1 (or vice versa),
        # with only identity strands in the way of the swap
        for j, a in enumerate(lo):
            if a.kind == ID:
                continue
            for k, b in enumerate(hi):
                if b.kind == ID:
                    continue
                a_top = (spans_lo[j][1], spans_lo[j][1] + len(a.top()))
                b_bot = (spans_hi[k][0], spans_hi[k][0] + len(b.bottom()))
                if a_top[1] <= b_bot[0] or b_bot[1] <= a_top[0]:
                    try:
                        _slide(None, d, i, j, k)
                    except ValueError:
                        continue
                    out.append(("slide", (i, j, k)))
    # R3 on three consecutive slices of elementary crossings
    for i in range(len(d.slices) - 2):
        s0, s1, s2 = d.slices[i], d.slices[i + 1], d.slices[i + 2]
        for j in range(len(s0)):
            pat = _r3_pattern(d, i, j)
            if pat is not None:
                out.append(("R3", (i, j, pat)))
    return out


def _r3_pattern(d: SlicedDiagram, i: int, j: int) -> Optional[str]:
    """Detect (c x 1)(1 x c)(c x 1) or (1 x c)(c x 1)(1 x c) at slice i, atom j.

    Requires each of the three slices to consist of exactly one crossing
    plus one identity in the expected positions; returns which variant.
    """
    try:
        s0, s1, s2 = d.slices[i], d.slices[i + 1], d.slices[i + 2]
    except IndexError:
        return None
    if j + 1 >= len(s0):
        return None

    def shape(s):
        kinds = [a.kind for a in s]
        return kinds

    k0, k1, k2 = shape(s0), shape(s1), shape(s2)
    if len(k0) < 2 or len(k1) < 2 or len(k2) < 2:
        return None
    # variant A: crossing at (j, j+1) in slices i and i+2, at (j+1, j+2)... we
    # only handle slices whose atoms are exactly [cross, id] / [id, cross].
    if (k0[j] == CROSS_POS and k1[j] == ID and len(k1) > j + 1
            and k1[j + 1] == CROSS_POS and k2[j] == CROSS_POS
            and k0[j + 1] == ID and len(k2) > j + 1 and k2[j + 1] == ID):
        return "left"
    if (k0[j] == ID and k0[j + 1] == CROSS_POS and k1[j] == CROSS_POS
            and len(k1) > j + 1 and k1[j + 1] == ID
            and k2[j] == ID and len(k2) > j + 1 and k2[j + 1] == CROSS_POS):
        return "right"
    return None


def apply_move(cat: CategoryInstance, d: SlicedDiagram, move: str,
               loc: tuple) -> SlicedDiagram:
    """Apply a local isotopy move; the evaluation is unchanged."""
    slices = [list(s) for s in d.slices]
    if move == "slide":
        i, j, k = loc
        spans_lo, spans_hi = _atom_spans(slices[i]), _atom_spans(slices[i + 1])
        a, b = slices[i][j], slices[i + 1][k]
        a_top = (spans_lo[j][1], spans_lo[j][1] + len(a.top()))
        b_bot = (spans_hi[k][0], spans_hi[k][0] + len(b.bottom()))
        if not (a_top[1] <= b_bot[0] or b_bot[1] <= a_top[0]):
            raise ValueError("slide not applicable: atoms overlap")
        return _slide(cat, d, i, j, k)
    if move == "zigzag-cancel":
        return _apply_zigzag(d, loc)
    if move == "coupon-push":
        i, j, k = loc
        a, b = slices[i][j], slices[i + 1][k]
        if not (a.kind == COUPON and b.kind == COUPON and
                b.coupon.dom == a.coupon.cod):
            raise ValueError("coupon-push not applicable here")
        spans_lo, spans_hi = _atom_spans(slices[i]), _atom_spans(slices[i + 1])
        if spans_lo[j][1] != spans_hi[k][0]:
            raise ValueError("coupon-push: coupons are not vertically aligned")
        merged = coupon(cat.compose(b.coupon, a.coupon))
        lo = slices[i][:j] + [merged] + slices[i][j + 1:]
        hi = slices[i + 1][:k] + [ident(e) for e in merged.coupon.cod] + slices[i + 1][k + 1:]
        new_slices = slices[:i] + [lo, hi] + slices[i + 2:]
        return SlicedDiagram.make(d.bottom, new_slices)
    if move == "R2":
        i, j, k = loc
        a, b = slices[i][j], slices[i + 1][k]
        pairs = {(CROSS_POS, CROSS_NEG), (CROSS_NEG, CROSS_POS)}
        if (a.kind, b.kind) not in pairs:
            raise ValueError("R2 not applicable here")
        if b.bottom() != a.top():
            raise ValueError("R2: crossings do not cancel")
        lo = slices[i][:j] + [ident(e) for e in a.bottom()] + slices[i][j + 1:]
        hi = slices[i + 1][:k] + [ident(e) for e in a.bottom()] + slices[i + 1][k + 1:]
        new_slices = slices[:i] + [lo, hi] + slices[i + 2:]
        return SlicedDiagram.make(d.bottom, new_slices)
    if move == "twist-cancel":
        i, j, k = loc
        a, b = slices[i][j], slices[i + 1][k]
        if {a.kind, b.kind} != {TWIST, TWIST_INV} or a.entries != b.entries:
            raise ValueError("twist-cancel not applicable here")
        lo = slices[i][:j] + [ident(a.entries[0])] + slices[i][j + 1:]
        hi = slices[i + 1][:k] + [ident(a.entries[0])] + slices[i + 1][k + 1:]
        new_slices = slices[:i] + [lo, hi] + slices[i + 2:]
        return SlicedDiagram.make(d.bottom, new_slices)
    if move == "R3":
        i, j, variant = loc
        return _apply_r3(d, i, j, variant)
    raise ValueError(f"unknown move {move!r}")


def _slide(cat: CategoryInstance, d: SlicedDiagram, i: int, j: int, k: int) -> SlicedDiagram:
    """Exchange slice membership of two horizontally disjoint atoms."""
    lo, hi = list(d.slices[i]), list(d.slices[i + 1])
    a, b = lo[j], hi[k]
    spans_lo, spans_hi = _atom_spans(lo), _atom_spans(hi)
    a_cols = (spans_lo[j][1], spans_lo[j][1] + len(a.top()))
    b_cols = (spans_hi[k][0], spans_hi[k][0] + len(b.bottom()))
    a_left = a_cols[1] <= b_cols[0]
    # build new slices: a moves up, b moves down.  The columns strictly
    # between them must be identities in the other slice for a clean swap;
    # we verify by reconstructing interfaces via SlicedDiagram.make.
    lo_new: list[Atom] = []
    hi_new: list[Atom] = []
    # lower slice: replace a by identities on its bottom, insert b at its column
    for t, x in enumerate(lo):
        if t == j:
            lo_new.extend(ident(e) for e in a.bottom())
        else:
            lo_new.append(x)
    for t, x in enumerate(hi):
        if t == k:
            hi_new.extend(ident(e) for e in b.top())
        else:
            hi_new.append(x)
    # now place b into the lower slice and a into the upper one, by columns
    lo2 = _replace_ids_with_atom(lo_new, b, b_cols[0])
    hi2 = _replace_ids_with_atom(hi_new, a, a_cols[0])
    if lo2 is None or hi2 is None:
        raise ValueError("slide blocked: interleaving atoms are not identities")
    new_slices = [list(s) for s in d.slices]
    new_slices[i] = lo2
    new_slices[i + 1] = hi2
    return SlicedDiagram.make(d.bottom, new_slices)


def _replace_ids_with_atom(slice_atoms: list[Atom], atom: Atom, col: int):
    """Replace len(atom.bottom()) identity atoms starting at bottom column col."""
    need = len(atom.bottom())
    out: list[Atom] = []
    b = 0
    placed = False
    idx = 0
    while idx < len(slice_atoms):
        x = slice_atoms[idx]
        if not placed and b == col:
            grab = slice_atoms[idx:idx + need]
            if len(grab) != need or any(g.kind != ID for g in grab):
                return None
            if tuple(g.entries[0] for g in grab) != atom.bottom():
                return None
            out.append(atom)
            idx += need
            b += need
            placed = True
            continue
        out.append(x)
        b += len(x.bottom())
        idx += 1
    if not placed and b == col and need == 0:
        out.append(atom)
        placed = True
    return out if placed else None


def _apply_zigzag(d: SlicedDiagram, loc: tuple) -> SlicedDiagram:
    """Cancel an S-bend: delete a cup and the offset cap absorbing one leg.

    loc = (i, j, k): the cup is atom j of slice i, the cap atom k of
    slice i+1, with the cap shifted one column so that it consumes one
    cup leg together with the adjacent through strand.  Deleting both
    atoms straightens the strand; interface validation rejects anything
    that is not a genuine S-bend (in particular closed cup/cap loops).
    """
    i, j, k = loc
    lo, hi = list(d.slices[i]), list(d.slices[i + 1])
    a, b = lo[j], hi[k]
    if a.kind not in (CUP_L, CUP_R) or b.kind not in (CAP_L, CAP_R):
        raise ValueError("zigzag-cancel: not a cup/cap pair")
    if a.entries[0].obj != b.entries[0].obj:
        raise ValueError("zigzag-cancel: colors differ")
    cup_cols = _atom_spans(lo)[j][1]
    cap_cols = _atom_spans(hi)[k][0]
    if cap_cols not in (cup_cols - 1, cup_cols + 1):
        raise ValueError("zigzag-cancel: cap is not offset by one column")
    new_slices = [list(s) for s in d.slices]
    new_slices[i] = lo[:j] + lo[j + 1:]
    new_slices[i + 1] = hi[:k] + hi[k + 1:]
    try:
        return SlicedDiagram.make(d.bottom, new_slices)
    except ValueError as exc:
        raise ValueError(f"zigzag-cancel blocked: {exc}") from exc


def _apply_r3(d: SlicedDiagram, i: int, j: int, variant: str) -> SlicedDiagram:
    slices = [list(s) for s in d.slices]
    s0, s1, s2 = slices[i], slices[i + 1], slices[i + 2]
    if variant == "left":
        # sigma1 sigma2 sigma1 -> sigma2 sigma1 sigma2 (colors e0, e1, e2)
        a, b = s0[j], s1[j + 1]
        e0, e1 = a.entries
        e2 = b.entries[1]
        s0n = s0[:j] + [ident(e0), Atom(CROSS_POS, (e1, e2))] + s0[j + 2:]
        s1n = s1[:j] + [Atom(CROSS_POS, (e0, e2)), ident(e1)] + s1[j + 2:]
        s2n = s2[:j] + [ident(e2), Atom(CROSS_POS, (e0, e1))] + s2[j + 2:]
        slices[i], slices[i + 1], slices[i + 2] = s0n, s1n, s2n
        return SlicedDiagram.make(d.bottom, slices)
    a, b = s0[j + 1], s1[j]
    e1, e2 = a.entries
    e0 = b.entries[0]
    s0n = s0[:j] + [Atom(CROSS_POS, (e0, e1)), ident(e2)] + s0[j + 2:]
    s1n = s1[:j] + [ident(e1), Atom(CROSS_POS, (e0, e2))] + s1[j + 2:]
    s2n = s2[:j] + [Atom(CROSS_POS, (e1, e2)), ident(e0)] + s2[j + 2:]
    slices[i], slices[i + 1], slices[i + 2] = s0n, s1n, s2n
    return SlicedDiagram.make(d.bottom, slices)


# ---------------------------------------------------------------------------
# closures and bends


def closure_right(cat: CategoryInstance, d: SlicedDiagram) -> SlicedDiagram:
    """The right braid closure of an endomorphism diagram (w -> w)."""
    if d.bottom != d.top:
        raise ValueError("closure needs an endomorphism diagram")
    w = d.bottom
    wd = word_dual(w)
    cups = _coev_cascade_slices(w)
    mid = [list(s) + [ident(e) for e in wd] for s in d.slices]
    caps = _ev_cascade_slices(w)
    return SlicedDiagram.make((), list(cups) + mid + list(caps))


def _coev_cascade_slices(w: Word) -> list[list[Atom]]:
    """Slices building coev_L of a word: I -> w (x) dual(w), nested cups."""
    out: list[list[Atom]] = []
    built: list[Entry] = []
    for e in w:
        half = len(built) // 2
        row = [ident(x) for x in built[:half]]
        row.append(Atom(CUP_L, (e,)))
        row.extend(ident(x) for x in built[half:])
        out.append(row)
        built = built[:half] + [e, e.flip()] + built[half:]
    return out


def _ev_cascade_slices(w: Word) -> list[list[Atom]]:
    """Slices evaluating ev_R of w (x) dual(w): nested caps, innermost first."""
    out: list[list[Atom]] = []
    remaining = list(w) + [e.flip() for e in reversed(w)]
    while remaining:
        half = len(remaining) // 2
        row = [ident(x) for x in remaining[:half - 1]]
        row.append(Atom(CAP_R, (remaining[half - 1],)))
        row.extend(ident(x) for x in remaining[half + 1:])
        out.append(row)
        remaining = remaining[:half - 1] + remaining[half + 1:]
    return out


# ---------------------------------------------------------------------------
# JSON serialization


def entry_to_json(e: Entry) -> dict:
    return {"obj": e.obj, "orient": "up" if e.up else "down"}


def entry_from_json(doc: dict) -> Entry:
    return Entry(doc["obj"], doc.get("orient", "up") == "up")


def morphism_to_json(f: Morphism) -> dict:
    return {
        "dom": [entry_to_json(e) for e in f.dom],
        "cod": [entry_to_json(e) for e in f.cod],
        "rows": f.payload.rows,
        "cols": f.payload.cols,
        "payload": [str(x) for x in f.payload.entries],
    }


def morphism_from_json(cat: CategoryInstance, doc: dict) -> Morphism:
    dom = tuple(entry_from_json(e) for e in doc["dom"])
    cod = tuple(entry_from_json(e) for e in doc["cod"])
    entries = tuple(cat.field.parse(t) for t in doc["payload"])
    return Morphism(dom, cod, ExactMatrix(cat.field, doc["rows"], doc["cols"], entries))


def atom_to_json(a: Atom) -> dict:
    out: dict = {"kind": a.kind}
    if a.kind == COUPON:
        out["coupon"] = morphism_to_json(a.coupon)
    else:
        out["entries"] = [entry_to_json(e) for e in a.entries]
    return out


def atom_from_json(cat: CategoryInstance, doc: dict) -> Atom:
    kind = doc["kind"]
    if kind == COUPON:
        return coupon(morphism_from_json(cat, doc["coupon"]))
    return Atom(kind, tuple(entry_from_json(e) for e in doc.get("entries", [])))


def diagram_to_json(d: SlicedDiagram) -> dict:
    return {
        "version": 1,
        "bottom": [entry_to_json(e) for e in d.bottom],
        "top": [entry_to_json(e) for e in d.top],
        "slices": [[atom_to_json(a) for a in s] for s in d.slices],
    }


def diagram_from_json(cat: CategoryInstance, doc: dict) -> SlicedDiagram:
    if doc.get("version") != 1:
        raise ValueError("unsupported diagram format version")
    bottom = tuple(entry_from_json(e) for e in doc["bottom"])
    slices = [[atom_from_json(cat, a) for a in s] for s in doc["slices"]]
    d = SlicedDiagram.make(bottom, slices)
    want_top = tuple(entry_from_json(e) for e in doc["top"])
    if d.top != want_top:
        raise ValueError("diagram top word does not match declared top")
    return d
