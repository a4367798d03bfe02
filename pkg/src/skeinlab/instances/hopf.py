"""Module categories of finite-dimensional pivotal Hopf algebras.

Structure constants are validated exactly at load time (each failing
identity is reported by name).  Objects are finite-dimensional modules;
duals act through the transposed antipode, right (co)evaluations are
twisted by the pivot, left ones are untwisted.  When an R-matrix is
present the flip-composed R action gives the braiding.

The left regular representation is always registered: it generates the
ideal of projectives and is the canonical m-trace generator.  Hom spaces
are intertwiner nullspaces; words starting with the regular object are
solved through the free-module untwisting isomorphism, which keeps the
large tensor words that appear in skein dimension bounds tractable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..category import (COEV_L, COEV_R, EV_L, EV_R, Entry, GradingGroup, Morphism,
                        ObjectHandle, TRIVIAL_GROUP, Word)
from ..fields import FieldSpec, Scalar, cyclotomic_field, rational_function_field
from ..linalg import ExactMatrix, nullspace
from .linear import LinearInstance

REGULAR = "H"


class HopfAxiomError(ValueError):
    """A named Hopf/module axiom failed exact verification."""

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"axiom {axiom!r} failed" + (f": {detail}" if detail else ""))


@dataclass
class HopfData:
    """Structure constants of a finite-dimensional pivotal Hopf algebra.

    mult[i][j] is the coefficient vector of e_i * e_j; comult[i] the
    n^2-vector of Delta(e_i) in the e_j (x) e_k basis (row-major); the
    optional r_matrix is the n x n coefficient array of an element
    R = sum R[i][j] e_i (x) e_j of H (x) H.
    """

    field: FieldSpec
    dim: int
    mult: list[list[list[Scalar]]]
    comult: list[list[Scalar]]
    unit: list[Scalar]
    counit: list[Scalar]
    antipode: list[list[Scalar]]  # columns = images of basis vectors
    pivot: list[Scalar]
    r_matrix: Optional[list[list[Scalar]]] = None
    ribbon: Optional[list[Scalar]] = None
    generators: Optional[list[int]] = None  # algebra generators (indices)

    # -- derived matrices -----------------------------------------------------
    def mult_matrix(self) -> ExactMatrix:
        n = self.dim
        return ExactMatrix.build(self.field, n, n * n,
                                 lambda k, ij: self.mult[ij // n][ij % n][k])

    def comult_matrix(self) -> ExactMatrix:
        n = self.dim
        return ExactMatrix.build(self.field, n * n, n,
                                 lambda jk, i: self.comult[i][jk])

    def unit_vector(self) -> ExactMatrix:
        return ExactMatrix(self.field, self.dim, 1, tuple(self.unit))

    def counit_vector(self) -> ExactMatrix:
        return ExactMatrix(self.field, 1, self.dim, tuple(self.counit))

    def antipode_matrix(self) -> ExactMatrix:
        n = self.dim
        return ExactMatrix.build(self.field, n, n, lambda i, j: self.antipode[i][j])

    def left_mult(self, x: Sequence[Scalar]) -> ExactMatrix:
        """Matrix of a |-> x*a."""
        n = self.dim
        z = self.field.zero()
        out = [[z] * n for _ in range(n)]
        for i, ci in enumerate(x):
            if ci.is_zero():
                continue
            for j in range(n):
                for k in range(n):
                    c = self.mult[i][j][k]
                    if not c.is_zero():
                        out[k][j] = out[k][j] + ci * c
        return ExactMatrix.from_rows(self.field, out)

    def right_mult(self, x: Sequence[Scalar]) -> ExactMatrix:
        """Matrix of a |-> a*x."""
        n = self.dim
        z = self.field.zero()
        out = [[z] * n for _ in range(n)]
        for j, cj in enumerate(x):
            if cj.is_zero():
                continue
            for i in range(n):
                for k in range(n):
                    c = self.mult[i][j][k]
                    if not c.is_zero():
                        out[k][i] = out[k][i] + cj * c
        return ExactMatrix.from_rows(self.field, out)

    # -- validation -------------------------------------------------------------
    def validate(self) -> None:
        n = self.dim
        f = self.field
        M = self.mult_matrix()
        D = self.comult_matrix()
        S = self.antipode_matrix()
        eta = self.unit_vector()
        eps = self.counit_vector()
        idn = ExactMatrix.identity(f, n)

        if not (M @ M.kron(idn) - M @ idn.kron(M)).is_zero():
            raise HopfAxiomError("associativity")
        if not (M @ eta.kron(idn) - idn).is_zero() or not (M @ idn.kron(eta) - idn).is_zero():
            raise HopfAxiomError("unit")
        if not (D.kron(idn) @ D - idn.kron(D) @ D).is_zero():
            raise HopfAxiomError("coassociativity")
        if not (eps.kron(idn) @ D - idn).is_zero() or not (idn.kron(eps) @ D - idn).is_zero():
            raise HopfAxiomError("counit")
        flip = ExactMatrix.build(f, n * n, n * n,
                                 lambda a, b: f.one() if (a // n == b % n and a % n == b // n)
                                 else f.zero())
        mm = M.kron(M) @ idn.kron(flip).kron(idn) @ D.kron(D)
        if not (D @ M - mm).is_zero():
            raise HopfAxiomError("bialgebra-compatibility")
        if not (M @ S.kron(idn) @ D - eta @ eps).is_zero():
            raise HopfAxiomError("antipode-left")
        if not (M @ idn.kron(S) @ D - eta @ eps).is_zero():
            raise HopfAxiomError("antipode-right")

        g = ExactMatrix(f, n, 1, tuple(self.pivot))
        gg = D @ g
        if not (gg - ExactMatrix(f, n * n, 1, tuple(g.kron(g).entries))).is_zero():
            raise HopfAxiomError("pivot-grouplike", "comultiplication")
        if (eps @ g).get(0, 0) != f.one():
            raise HopfAxiomError("pivot-grouplike", "counit")
        ginv = S @ g
        if not (self.left_mult(g.column(0)) @ ginv - eta).is_zero():
            raise HopfAxiomError("pivot-grouplike", "inverse")
        s2 = S @ S
        conj = self.left_mult(g.column(0)) @ self.right_mult(ginv.column(0))
        if not (s2 - conj).is_zero():
            raise HopfAxiomError("pivot-S2")

        if self.r_matrix is not None:
            self._validate_r()
        if self.ribbon is not None and self.r_matrix is None:
            raise HopfAxiomError("ribbon-without-R")

    def _validate_r(self) -> None:
        n = self.dim
        f = self.field
        r = [self.r_matrix[i][j] for i in range(n) for j in range(n)]

        def t2_mult(x, y):
            z = f.zero()
            out = [z] * (n * n)
            for a in range(n * n):
                if x[a].is_zero():
                    continue
                a1, a2 = divmod(a, n)
                for b in range(n * n):
                    if y[b].is_zero():
                        continue
                    b1, b2 = divmod(b, n)
                    c = x[a] * y[b]
                    for k1 in range(n):
                        m1 = self.mult[a1][b1][k1]
                        if m1.is_zero():
                            continue
                        for k2 in range(n):
                            m2 = self.mult[a2][b2][k2]
                            if not m2.is_zero():
                                out[k1 * n + k2] = out[k1 * n + k2] + c * m1 * m2
            return out

        S = self.antipode_matrix()
        r_inv = [f.zero()] * (n * n)
        for a in range(n * n):
            if r[a].is_zero():
                continue
            a1, a2 = divmod(a, n)
            for k in range(n):
                s = S.get(k, a1)
                if not s.is_zero():
                    r_inv[k * n + a2] = r_inv[k * n + a2] + r[a] * s
        unit2 = [self.unit[i] * self.unit[j] for i in range(n) for j in range(n)]
        prod = t2_mult(r, r_inv)
        if any(not (prod[a] - unit2[a]).is_zero() for a in range(n * n)):
            raise HopfAxiomError("R-invertibility")

        D = self.comult_matrix()
        for i in range(n):
            delta = D.column(i)
            delta_op = [delta[(a % n) * n + (a // n)] for a in range(n * n)]
            lhs = t2_mult(r, list(delta))
            rhs = t2_mult(list(delta_op), r)
            if any(not (lhs[a] - rhs[a]).is_zero() for a in range(n * n)):
                raise HopfAxiomError("R-quasi-cocommutativity", f"basis element {i}")

        def t3_from(positions, x):
            z = f.zero()
            out = [z] * (n ** 3)
            for a in range(n * n):
                if x[a].is_zero():
                    continue
                a1, a2 = divmod(a, n)
                idx = [0, 0, 0]
                idx[positions[0]] = a1
                idx[positions[1]] = a2
                for u in range(n):
                    if self.unit[u].is_zero():
                        continue
                    idx[positions[2]] = u
                    out[(idx[0] * n + idx[1]) * n + idx[2]] = \
                        out[(idx[0] * n + idx[1]) * n + idx[2]] + x[a] * self.unit[u]
            return out

        def t3_mult(x, y):
            z = f.zero()
            out = [z] * (n ** 3)
            nz_x = [a for a in range(n ** 3) if not x[a].is_zero()]
            nz_y = [b for b in range(n ** 3) if not y[b].is_zero()]
            for a in nz_x:
                a1, r1 = divmod(a, n * n)
                a2, a3 = divmod(r1, n)
                for b in nz_y:
                    b1, r2 = divmod(b, n * n)
                    b2, b3 = divmod(r2, n)
                    c = x[a] * y[b]
                    for k1 in range(n):
                        m1 = self.mult[a1][b1][k1]
                        if m1.is_zero():
                            continue
                        for k2 in range(n):
                            m2 = self.mult[a2][b2][k2]
                            if m2.is_zero():
                                continue
                            for k3 in range(n):
                                m3 = self.mult[a3][b3][k3]
                                if not m3.is_zero():
                                    out[(k1 * n + k2) * n + k3] = \
                                        out[(k1 * n + k2) * n + k3] + c * m1 * m2 * m3
            return out

        r13 = t3_from((0, 2, 1), r)
        r23 = t3_from((1, 2, 0), r)
        r12 = t3_from((0, 1, 2), r)
        # (Delta (x) id)(R) and (id (x) Delta)(R)
        d_r_left = [f.zero()] * (n ** 3)
        d_r_right = [f.zero()] * (n ** 3)
        for a in range(n * n):
            a1, a2 = divmod(a, n)
            c = self.r_matrix[a1][a2]
            if c.is_zero():
                continue
            col = self.comult[a1]
            for jk in range(n * n):
                if not col[jk].is_zero():
                    j, k = divmod(jk, n)
                    d_r_left[(j * n + k) * n + a2] = d_r_left[(j * n + k) * n + a2] + c * col[jk]
            col2 = self.comult[a2]
            for jk in range(n * n):
                if not col2[jk].is_zero():
                    j, k = divmod(jk, n)
                    d_r_right[(a1 * n + j) * n + k] = d_r_right[(a1 * n + j) * n + k] + c * col2[jk]
        want_left = t3_mult(r13, r23)
        want_right = t3_mult(r13, r12)
        if any(not (d_r_left[a] - want_left[a]).is_zero() for a in range(n ** 3)):
            raise HopfAxiomError("R-hexagon-left")
        if any(not (d_r_right[a] - want_right[a]).is_zero() for a in range(n ** 3)):
            raise HopfAxiomError("R-hexagon-right")


@dataclass
class ModuleSpec:
    name: str
    dim: int
    action: list[ExactMatrix]  # one matrix per algebra basis element
    degree: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class SummandData:
    """A direct-summand projector pair j: V_i -> V, p: V -> V_i."""

    degree: tuple[int, ...]
    inj: Morphism
    proj: Morphism


class HopfInstance(LinearInstance):
    name = "hopf"

    def __init__(self, data: HopfData, modules: Sequence[ModuleSpec],
                 grading: GradingGroup = TRIVIAL_GROUP, label: str = "hopf"):
        data.validate()
        super().__init__(data.field, grading)
        self.name = label
        self.data = data
        self.braided = data.r_matrix is not None
        self._action: dict[str, tuple[ExactMatrix, ...]] = {}
        self._word_of_handle: dict[str, Word] = {}
        self.summands: dict[str, list[SummandData]] = {}
        self.generators = data.generators or list(range(data.dim))

        n = data.dim
        # left regular representation and its dual, then user modules; in a
        # nontrivial grading the regular object is not homogeneous
        reg = ModuleSpec(REGULAR, n,
                         [data.left_mult(self._basis_vec(i)) for i in range(n)],
                         degree=None if grading.orders else ())
        self._register_module(reg)
        for spec in modules:
            self._register_module(spec)

    # -- registration -----------------------------------------------------------
    def _basis_vec(self, i: int) -> list[Scalar]:
        return [self.field.one() if j == i else self.field.zero()
                for j in range(self.data.dim)]

    def _register_module(self, spec: ModuleSpec) -> ObjectHandle:
        self._validate_module(spec)
        degree = spec.degree if self.grading.orders else ()
        dual = spec.name + "*"
        h = self.register(ObjectHandle(spec.name, spec.dim, degree, dual))
        self._action[spec.name] = tuple(spec.action)
        # the literal dual module: dual space with transposed antipode action
        s_cols = self.data.antipode_matrix()
        dual_action = []
        for i in range(self.data.dim):
            acc = ExactMatrix.zeros(self.field, spec.dim, spec.dim)
            for k in range(self.data.dim):
                c = s_cols.get(k, i)
                if not c.is_zero():
                    acc = acc + spec.action[k].scale(c)
            dual_action.append(acc.transpose())
        ddeg = self.grading.inv(degree) if degree is not None else None
        self.register(ObjectHandle(dual, spec.dim, ddeg, spec.name))
        self._action[dual] = tuple(dual_action)
        return h

    def _validate_module(self, spec: ModuleSpec) -> None:
        n = self.data.dim
        if len(spec.action) != n:
            raise HopfAxiomError("module-action", f"{spec.name}: wrong action count")
        for m in spec.action:
            if m.rows != spec.dim or m.cols != spec.dim:
                raise HopfAxiomError("module-action", f"{spec.name}: wrong action shape")
        unit_act = ExactMatrix.zeros(self.field, spec.dim, spec.dim)
        for i, c in enumerate(self.data.unit):
            if not c.is_zero():
                unit_act = unit_act + spec.action[i].scale(c)
        if not (unit_act - ExactMatrix.identity(self.field, spec.dim)).is_zero():
            raise HopfAxiomError("module-unit", spec.name)
        for i in range(n):
            for j in range(n):
                lhs = spec.action[i] @ spec.action[j]
                rhs = ExactMatrix.zeros(self.field, spec.dim, spec.dim)
                for k, c in enumerate(self.data.mult[i][j]):
                    if not c.is_zero():
                        rhs = rhs + spec.action[k].scale(c)
                if not (lhs - rhs).is_zero():
                    raise HopfAxiomError("module-action", f"{spec.name}: e_{i} * e_{j}")

    def register_summands(self, name: str, parts: list[SummandData]) -> None:
        """Record a homogeneous-summand decomposition Id_V = sum j_i p_i."""
        total = self.zero_morphism((Entry(name, True),), (Entry(name, True),))
        for part in parts:
            if not self.equal(self.compose(part.proj, part.inj),
                              self.identity(part.inj.dom)):
                raise ValueError(f"summand of {name!r}: p∘j is not the identity")
            total = self.add(total, self.compose(part.inj, part.proj))
        if not self.equal(total, self.identity((Entry(name, True),))):
            raise ValueError(f"summands of {name!r} do not resolve the identity")
        self.summands[name] = list(parts)

    # -- actions on entries and words ---------------------------------------------
    def entry_action(self, e: Entry) -> tuple[ExactMatrix, ...]:
        acts = self._action[e.obj]
        if e.up:
            return acts
        # down entry: the dual handle's matrices are exactly the dual action
        return self._action[self.handle(e.obj).dual_name]

    def word_action(self, w: Word) -> tuple[ExactMatrix, ...]:
        """Matrices of every algebra basis element on the word module."""
        key = ("wact", w)
        cache = self.__dict__.setdefault("_wact_cache", {})
        if key in cache:
            return cache[key]
        n = self.data.dim
        if not w:
            out = tuple(ExactMatrix(self.field, 1, 1, (c,)) for c in self.data.counit)
        elif len(w) == 1:
            out = self.entry_action(w[0])
        else:
            head, rest = w[:1], w[1:]
            ha = self.word_action(head)
            ra = self.word_action(rest)
            outs = []
            for i in range(n):
                acc = ExactMatrix.zeros(self.field, self.word_dim(w), self.word_dim(w))
                col = self.data.comult[i]
                for jk in range(n * n):
                    c = col[jk]
                    if not c.is_zero():
                        j, k = divmod(jk, n)
                        acc = acc + ha[j].kron(ra[k]).scale(c)
                outs.append(acc)
            out = tuple(outs)
        cache[key] = out
        return out

    # -- duality morphisms ----------------------------------------------------------
    def _pivot_matrices(self, e: Entry) -> tuple[ExactMatrix, ExactMatrix]:
        acts = self.entry_action(e)
        g = ExactMatrix.zeros(self.field, acts[0].rows, acts[0].cols)
        gi = ExactMatrix.zeros(self.field, acts[0].rows, acts[0].cols)
        ginv_vec = self.data.antipode_matrix() @ ExactMatrix(
            self.field, self.data.dim, 1, tuple(self.data.pivot))
        for i in range(self.data.dim):
            c = self.data.pivot[i]
            if not c.is_zero():
                g = g + acts[i].scale(c)
            ci = ginv_vec.get(i, 0)
            if not ci.is_zero():
                gi = gi + acts[i].scale(ci)
        return g, gi

    def ev_handle(self, name: str, kind: str) -> Morphism:
        e = Entry(name, True)
        d = self.handle(name).dim
        f = self.field
        z, o = f.zero(), f.one()
        if kind == EV_L:
            m = ExactMatrix.build(f, 1, d * d,
                                  lambda _, ij: o if ij // d == ij % d else z)
            return Morphism((e.flip(), e), (), m)
        if kind == COEV_L:
            m = ExactMatrix.build(f, d * d, 1,
                                  lambda ij, _: o if ij // d == ij % d else z)
            return Morphism((), (e, e.flip()), m)
        g, gi = self._pivot_matrices(e)
        if kind == EV_R:
            m = ExactMatrix.build(f, 1, d * d, lambda _, ij: g.get(ij % d, ij // d))
            return Morphism((e, e.flip()), (), m)
        if kind == COEV_R:
            m = ExactMatrix.build(f, d * d, 1, lambda ij, _: gi.get(ij % d, ij // d))
            return Morphism((), (e.flip(), e), m)
        raise ValueError(f"unknown kind {kind!r}")

    # -- hom spaces -------------------------------------------------------------------
    def hom_basis_raw(self, dom: Word, cod: Word):
        if len(cod) > 1 and cod[0] == Entry(REGULAR, True):
            return self._hom_free_cod(dom, cod)
        if len(dom) > 1 and dom[0] == Entry(REGULAR, True):
            return self._hom_free_dom(dom, cod)
        return self._hom_direct(dom, cod)

    def _hom_direct(self, dom: Word, cod: Word):
        dd, dc = self.word_dim(dom), self.word_dim(cod)
        da, ca = self.word_action(dom), self.word_action(cod)
        rows = []
        z = self.field.zero()
        for i in self.generators:
            x, y = da[i], ca[i]
            for a in range(dc):
                for c in range(dd):
                    row = [z] * (dc * dd)
                    for b in range(dd):
                        v = x.get(b, c)
                        if not v.is_zero():
                            row[a * dd + b] = row[a * dd + b] + v
                    for b in range(dc):
                        v = y.get(a, b)
                        if not v.is_zero():
                            row[b * dd + c] = row[b * dd + c] - v
                    rows.append(row)
        if not rows:
            mat = ExactMatrix.zeros(self.field, 0, dc * dd)
        else:
            mat = ExactMatrix.from_rows(self.field, rows, cols=dc * dd)
        out = []
        for vec in nullspace(mat):
            out.append(Morphism(dom, cod, ExactMatrix(self.field, dc, dd, vec.entries)))
        return out

    def _untwist_pair(self, w: Word) -> tuple[ExactMatrix, ExactMatrix]:
        """u: H (x) M -> H (x) M0 and its inverse, for w = (H, ...M)."""
        rest = w[1:]
        n = self.data.dim
        dm = self.word_dim(rest)
        ra = self.word_action(rest)
        s_mat = self.data.antipode_matrix()
        z = self.field.zero()

        def build(twist_antipode: bool) -> ExactMatrix:
            ent = [z] * (n * dm * n * dm)
            for i in range(n):
                col = self.data.comult[i]
                for pq in range(n * n):
                    c = col[pq]
                    if c.is_zero():
                        continue
                    p, q = divmod(pq, n)
                    if twist_antipode:
                        act = ExactMatrix.zeros(self.field, dm, dm)
                        for k in range(n):
                            s = s_mat.get(k, q)
                            if not s.is_zero():
                                act = act + ra[k].scale(s)
                    else:
                        act = ra[q]
                    for l in range(dm):
                        for j in range(dm):
                            v = act.get(l, j)
                            if not v.is_zero():
                                idx = (p * dm + l) * (n * dm) + (i * dm + j)
                                ent[idx] = ent[idx] + c * v
            return ExactMatrix(self.field, n * dm, n * dm, tuple(ent))

        return build(True), build(False)

    def _hom_free_cod(self, dom: Word, cod: Word):
        rest = cod[1:]
        n = self.data.dim
        dm = self.word_dim(rest)
        _, u_inv = self._untwist_pair(cod)
        base = self.hom_basis(dom, (Entry(REGULAR, True),))
        dd = self.word_dim(dom)
        out = []
        z = self.field.zero()
        for j in range(dm):
            for b in base:
                emb = [z] * (n * dm * dd)
                for i in range(n):
                    for v in range(dd):
                        c = b.payload.get(i, v)
                        if not c.is_zero():
                            emb[(i * dm + j) * dd + v] = c
                payload = u_inv @ ExactMatrix(self.field, n * dm, dd, tuple(emb))
                out.append(Morphism(dom, cod, payload))
        return out

    def _hom_free_dom(self, dom: Word, cod: Word):
        rest = dom[1:]
        n = self.data.dim
        dm = self.word_dim(rest)
        u, _ = self._untwist_pair(dom)
        base = self.hom_basis((Entry(REGULAR, True),), cod)
        dc = self.word_dim(cod)
        out = []
        z = self.field.zero()
        for j in range(dm):
            for b in base:
                proj = [z] * (dc * n * dm)
                for v in range(dc):
                    for i in range(n):
                        c = b.payload.get(v, i)
                        if not c.is_zero():
                            proj[v * (n * dm) + (i * dm + j)] = c
                payload = ExactMatrix(self.field, dc, n * dm, tuple(proj)) @ u
                out.append(Morphism(dom, cod, payload))
        return out

    # -- braiding ------------------------------------------------------------------
    def braiding(self, a: Word, b: Word) -> Morphism:
        if not self.braided:
            raise NotImplementedError(f"{self.name} carries no R-matrix")
        da, db = self.word_dim(a), self.word_dim(b)
        aa, ba = self.word_action(a), self.word_action(b)
        n = self.data.dim
        z = self.field.zero()
        ent = [z] * (db * da * da * db)
        for i in range(n):
            for j in range(n):
                c = self.data.r_matrix[i][j]
                if c.is_zero():
                    continue
                ra, rb = aa[i], ba[j]
                for p in range(da):
                    for q in range(da):
                        va = ra.get(p, q)
                        if va.is_zero():
                            continue
                        for s in range(db):
                            for t in range(db):
                                vb = rb.get(s, t)
                                if not vb.is_zero():
                                    row = s * da + p
                                    col = q * db + t
                                    ent[row * (da * db) + col] = \
                                        ent[row * (da * db) + col] + c * va * vb
        return Morphism(a + b, b + a, ExactMatrix(self.field, db * da, da * db, tuple(ent)))

    # -- fused word objects -----------------------------------------------------------
    def register_word_object(self, w: Word) -> ObjectHandle:
        name = "(" + "*".join(str(e) for e in w) + ")"
        if name in self._handles:
            return self._handles[name]
        dual = "(" + "*".join(str(e) for e in word_dual_local(w)) + ")"
        deg = self.word_degree(w)
        h = self.register(ObjectHandle(name, self.word_dim(w), deg, dual))
        self._action[name] = self.word_action(w)
        self._word_of_handle[name] = w
        dw = word_dual_local(w)
        self.register(ObjectHandle(dual, self.word_dim(dw), self.word_degree(dw), name))
        self._action[dual] = self.word_action(dw)
        self._word_of_handle[dual] = dw
        return h

    def word_object_word(self, handle_name: str) -> Word | None:
        return self._word_of_handle.get(handle_name)

    def retype_word_to_object(self, w: Word) -> Morphism:
        """Identity-payload morphism w -> (fused handle), same underlying space."""
        h = self.register_word_object(w)
        return Morphism(w, (Entry(h.name, True),),
                        ExactMatrix.identity(self.field, self.word_dim(w)))

    def dual_retype(self, name: str) -> Morphism | None:
        h = self.handle(name)
        if name in self._word_of_handle:
            return None  # fused duals are isomorphic, not equal on the nose
        return Morphism((Entry(name, False),), (Entry(h.dual_name, True),),
                        ExactMatrix.identity(self.field, h.dim))


def word_dual_local(w: Word) -> Word:
    return tuple(e.flip() for e in reversed(w))


# ---------------------------------------------------------------------------
# built-in algebras


def _scal(f: FieldSpec, q) -> Scalar:
    return f.from_fraction(Fraction(q))


def sweedler_data() -> HopfData:
    """The 4-dimensional Sweedler algebra over Q, basis (1, g, x, gx)."""
    f = rational_function_field()
    # use plain rationals inside Q(A); nothing here depends on A
    n = 4
    z, o = f.zero(), f.one()

    def vec(*cs):
        return [_scal(f, c) for c in cs]

    mult = [[None] * n for _ in range(n)]
    # order: e0=1, e1=g, e2=x, e3=gx
    table = {
        (0, 0): vec(1, 0, 0, 0), (0, 1): vec(0, 1, 0, 0),
        (0, 2): vec(0, 0, 1, 0), (0, 3): vec(0, 0, 0, 1),
        (1, 0): vec(0, 1, 0, 0), (1, 1): vec(1, 0, 0, 0),
        (1, 2): vec(0, 0, 0, 1), (1, 3): vec(0, 0, 1, 0),
        (2, 0): vec(0, 0, 1, 0), (2, 1): vec(0, 0, 0, -1),
        (2, 2): vec(0, 0, 0, 0), (2, 3): vec(0, 0, 0, 0),
        (3, 0): vec(0, 0, 0, 1), (3, 1): vec(0, 0, -1, 0),
        (3, 2): vec(0, 0, 0, 0), (3, 3): vec(0, 0, 0, 0),
    }
    for (i, j), v in table.items():
        mult[i][j] = v

    def tens(pairs):
        out = [z] * (n * n)
        for (a, b), c in pairs:
            out[a * n + b] = out[a * n + b] + _scal(f, c)
        return out

    comult = [
        tens([((0, 0), 1)]),                       # 1
        tens([((1, 1), 1)]),                       # g
        tens([((2, 0), 1), ((1, 2), 1)]),          # x
        tens([((3, 1), 1), ((0, 3), 1)]),          # gx
    ]
    unit = vec(1, 0, 0, 0)
    counit = vec(1, 1, 0, 0)
    # columns: S(1)=1, S(g)=g, S(x)=-gx, S(gx)=x
    antipode = [
        [o, z, z, z],
        [z, o, z, z],
        [z, z, z, o],
        [z, z, -o, z],
    ]
    pivot = vec(0, 1, 0, 0)
    half = f.from_fraction(Fraction(1, 2))
    rmat = [[z] * n for _ in range(n)]
    rmat[0][0] = half
    rmat[0][1] = half
    rmat[1][0] = half
    rmat[1][1] = -half
    return HopfData(field=f, dim=n, mult=mult, comult=comult, unit=unit,
                    counit=counit, antipode=antipode, pivot=pivot,
                    r_matrix=rmat, generators=[1, 2])


def sweedler_modules() -> list[ModuleSpec]:
    f = rational_function_field()
    one = ExactMatrix.identity(f, 1)
    zero1 = ExactMatrix.zeros(f, 1, 1)
    neg1 = one.scale(-f.one())
    # trivial: g -> 1, x -> 0 ; sign: g -> -1, x -> 0
    triv = ModuleSpec("triv", 1, [one, one, zero1, zero1], degree=())
    sign = ModuleSpec("sign", 1, [one, neg1, zero1, zero1], degree=())
    return [triv, sign]


def build_sweedler_instance() -> HopfInstance:
    return HopfInstance(sweedler_data(), sweedler_modules(), label="sweedler")


def group_algebra_z2_data() -> HopfData:
    """k[Z/2] over Q, basis (1, g); cocommutative, R = 1 (x) 1, pivot 1."""
    f = rational_function_field()
    z, o = f.zero(), f.one()
    n = 2
    mult = [[[o, z], [z, o]], [[z, o], [o, z]]]
    comult = [
        [o, z, z, z],   # Delta(1) = 1 (x) 1
        [z, z, z, o],   # Delta(g) = g (x) g
    ]
    unit = [o, z]
    counit = [o, o]
    antipode = [[o, z], [z, o]]
    pivot = [o, z]
    rmat = [[o, z], [z, z]]
    return HopfData(field=f, dim=n, mult=mult, comult=comult, unit=unit,
                    counit=counit, antipode=antipode, pivot=pivot,
                    r_matrix=rmat, generators=[1])


def build_z2_group_algebra_instance() -> HopfInstance:
    f = rational_function_field()
    one = ExactMatrix.identity(f, 1)
    neg1 = one.scale(-f.one())
    triv = ModuleSpec("triv", 1, [one, one], degree=(0,))
    sign = ModuleSpec("sign", 1, [one, neg1], degree=(1,))
    inst = HopfInstance(group_algebra_z2_data(), [triv, sign],
                        grading=GradingGroup((2,)), label="z2hopf")
    inst.ribbon = True
    # character projectors split the regular representation
    half = f.from_fraction(Fraction(1, 2))
    e_t = Entry("triv", True)
    e_s = Entry("sign", True)
    e_h = Entry(REGULAR, True)
    j_t = Morphism((e_t,), (e_h,), ExactMatrix(f, 2, 1, (f.one(), f.one())))
    p_t = Morphism((e_h,), (e_t,), ExactMatrix(f, 1, 2, (half, half)))
    j_s = Morphism((e_s,), (e_h,), ExactMatrix(f, 2, 1, (f.one(), -f.one())))
    p_s = Morphism((e_h,), (e_s,), ExactMatrix(f, 1, 2, (half, -half)))
    inst.register_summands(REGULAR, [
        SummandData((0,), j_t, p_t),
        SummandData((1,), j_s, p_s),
    ])
    return inst


# ---------------------------------------------------------------------------
# JSON loading per the documented structure-constant file format


def load_hopf_json(doc: dict) -> HopfInstance:
    fkind = doc.get("field", {"kind": "rational-function"})
    if fkind.get("kind") == "cyclotomic":
        f = cyclotomic_field(int(fkind["order"]))
    else:
        f = rational_function_field()
    n = int(doc["dim"])

    def s(txt) -> Scalar:
        return f.parse(str(txt))

    mult = [[[s(c) for c in doc["mult"][i][j]] for j in range(n)] for i in range(n)]
    comult = [[s(c) for c in doc["comult"][i]] for i in range(n)]
    unit = [s(c) for c in doc["unit"]]
    counit = [s(c) for c in doc["counit"]]
    antipode = [[s(c) for c in row] for row in doc["antipode"]]
    pivot = [s(c) for c in doc["pivot"]]
    rmat = None
    if "R" in doc and doc["R"] is not None:
        rmat = [[s(c) for c in row] for row in doc["R"]]
    grading = GradingGroup(tuple(doc.get("grading", {}).get("orders", ())))
    data = HopfData(field=f, dim=n, mult=mult, comult=comult, unit=unit,
                    counit=counit, antipode=antipode, pivot=pivot,
                    r_matrix=rmat, generators=doc.get("generators"))
    modules = []
    for m in doc.get("modules", []):
        dim = int(m["dim"])
        action = [ExactMatrix.from_rows(f, [[s(c) for c in row] for row in mat],
                                        cols=dim)
                  for mat in m["action"]]
        deg = tuple(m["degree"]) if m.get("degree") is not None else None
        modules.append(ModuleSpec(m["name"], dim, action, degree=deg))
    return HopfInstance(data, modules, grading=grading,
                        label=doc.get("name", "hopf-file"))


def load_hopf_file(path: str) -> HopfInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return load_hopf_json(json.load(fh))
