"""Exact ground fields: rational functions over Q and cyclotomic fields.

Two field kinds are supported:

* ``Q(A)`` -- rational functions in one indeterminate with rational
  coefficients (the generic Kauffman-bracket parameter lives here);
* ``Q(zeta_N)`` -- the cyclotomic field of order N, elements reduced
  modulo the N-th cyclotomic polynomial.

Scalars are immutable and kept in a unique canonical form (coprime
numerator/denominator with monic denominator, resp. reduced coefficient
vector), so equality and zero tests are exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

# ---------------------------------------------------------------------------
# dense univariate polynomials over Fraction, little-endian coefficient lists


def _trim(cs: list[Fraction]) -> tuple[Fraction, ...]:
    n = len(cs)
    while n > 0 and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b) -> tuple[Fraction, ...]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
                  for i in range(n)])


def _pneg(a) -> tuple[Fraction, ...]:
    return tuple(-c for c in a)


def _psub(a, b) -> tuple[Fraction, ...]:
    return _padd(a, _pneg(b))


def _pmul(a, b) -> tuple[Fraction, ...]:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            if cb != 0:
                out[i + j] += ca * cb
    return _trim(out)


def _pdivmod(a, b) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv_lead
        if c != 0:
            quo[k] = c
            for j in range(len(b)):
                rem[k + j] -= c * b[j]
    return _trim(quo), _trim(rem)


def _pgcd(a, b) -> tuple[Fraction, ...]:
    # monic gcd via Euclid
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


def _pxgcd(a, b):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
        t0, t1 = t1, _psub(t0, _pmul(q, t1))
    if not r0:
        return (), s0, t0
    lead = r0[-1]
    inv = 1 / lead
    return tuple(c * inv for c in r0), tuple(c * inv for c in s0), tuple(c * inv for c in t0)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """The n-th cyclotomic polynomial, computed by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    num = [Fraction(0)] * (n + 1)
    num[0], num[n] = Fraction(-1), Fraction(1)
    poly = _trim(num)
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _pdivmod(poly, cyclotomic_polynomial(d))
            assert not rem
    return poly


# ---------------------------------------------------------------------------
# field specifications


RATFUNC = "rational-function"
CYCLOTOMIC = "cyclotomic"


@dataclass(frozen=True)
class FieldSpec:
    """Ground field description: Q(A) or Q(zeta_N)."""

    kind: str
    order: int = 0  # N, cyclotomic case only

    def __post_init__(self):
        if self.kind not in (RATFUNC, CYCLOTOMIC):
            raise ValueError(f"unknown field kind: {self.kind!r}")
        if self.kind == CYCLOTOMIC and self.order < 1:
            raise ValueError("cyclotomic order must be a positive integer")

    @property
    def var(self) -> str:
        return "A" if self.kind == RATFUNC else "z"

    @property
    def degree(self) -> int:
        if self.kind == CYCLOTOMIC:
            return len(cyclotomic_polynomial(self.order)) - 1
        raise ValueError("rational-function fields are infinite dimensional over Q")

    # -- constructors ------------------------------------------------------
    def zero(self) -> "Scalar":
        if self.kind == RATFUNC:
            return Scalar(self, (), (Fraction(1),))
        return Scalar(self, (), None)

    def one(self) -> "Scalar":
        return self.from_fraction(Fraction(1))

    def from_int(self, n: int) -> "Scalar":
        return self.from_fraction(Fraction(n))

    def from_fraction(self, q: Fraction) -> "Scalar":
        if q == 0:
            return self.zero()
        if self.kind == RATFUNC:
            return Scalar(self, (Fraction(q),), (Fraction(1),))
        return Scalar(self, (Fraction(q),), None)

    def generator(self) -> "Scalar":
        """A for Q(A); zeta_N for Q(zeta_N)."""
        if self.kind == RATFUNC:
            return Scalar(self, (Fraction(0), Fraction(1)), (Fraction(1),))
        if self.order == 1:
            return self.one()
        coeffs = [Fraction(0)] * self.degree
        if self.degree >= 2:
            coeffs[1] = Fraction(1)
            return Scalar(self, _trim(coeffs), None)
        # N = 2: zeta = -1 reduces to a rational
        red = _pdivmod((Fraction(0), Fraction(1)), cyclotomic_polynomial(self.order))[1]
        return Scalar(self, red, None)

    def from_coeffs(self, coeffs: Iterable[Fraction]) -> "Scalar":
        """Element given by a polynomial in the generator (reduced here)."""
        cs = _trim([Fraction(c) for c in coeffs])
        if self.kind == RATFUNC:
            return Scalar(self, cs, (Fraction(1),)) if cs else self.zero()
        red = _pdivmod(cs, cyclotomic_polynomial(self.order))[1]
        return Scalar(self, red, None)

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(self, text)


def rational_function_field() -> FieldSpec:
    return FieldSpec(RATFUNC)


def cyclotomic_field(n: int) -> FieldSpec:
    return FieldSpec(CYCLOTOMIC, n)


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """Immutable element of a FieldSpec, always in canonical form."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: FieldSpec, num, den):
        # Internal constructor: callers must supply canonical data.
        # ratfunc: num/den coprime, den monic nonzero. cyclotomic: num reduced, den None.
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", tuple(den) if den is not None else None)
        object.__setattr__(self, "_hash", None)

    # -- canonicalization ---------------------------------------------------
    @staticmethod
    def _make_ratfunc(field, num, den) -> "Scalar":
        if not num:
            return Scalar(field, (), (Fraction(1),))
        if not den:
            raise ZeroDivisionError("division by zero scalar")
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        return Scalar(field, num, den)

    def _check(self, other: "Scalar"):
        if self.field != other.field:
            raise ValueError("scalar field mismatch")

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self == self.field.one()

    def as_fraction(self) -> Fraction:
        """The element as a rational number; raises if it is not one."""
        if self.field.kind == CYCLOTOMIC:
            if len(self.num) > 1:
                raise ValueError("scalar is not rational")
            return self.num[0] if self.num else Fraction(0)
        if len(self.num) > 1 or len(self.den) > 1:
            raise ValueError("scalar is not rational")
        if not self.num:
            return Fraction(0)
        return self.num[0] / self.den[0]

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if self.field.kind == RATFUNC:
            num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
            return Scalar._make_ratfunc(self.field, num, _pmul(self.den, other.den))
        return Scalar(self.field, _padd(self.num, other.num), None)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, _pneg(self.num), self.den)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        if self.field.kind == RATFUNC:
            return Scalar._make_ratfunc(self.field, _pmul(self.num, other.num),
                                        _pmul(self.den, other.den))
        prod = _pmul(self.num, other.num)
        red = _pdivmod(prod, cyclotomic_polynomial(self.field.order))[1]
        return Scalar(self.field, red, None)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.field.kind == RATFUNC:
            return Scalar._make_ratfunc(self.field, self.den, self.num)
        g, u, _ = _pxgcd(self.num, cyclotomic_polynomial(self.field.order))
        if len(g) != 1:
            raise ArithmeticError("non-invertible cyclotomic element")  # pragma: no cover
        inv = tuple(c / g[0] for c in u)
        red = _pdivmod(inv, cyclotomic_polynomial(self.field.order))[1]
        return Scalar(self.field, red, None)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- equality ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (isinstance(other, Scalar) and self.field == other.field
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.field, self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    # -- formatting ----------------------------------------------------------
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


# ---------------------------------------------------------------------------
# string format: "p/q", "1/2 + 3*z^2", "(A^2 + 1)/(A)"


def _format_poly(cs, var: str) -> str:
    if not cs:
        return "0"
    parts = []
    for k in range(len(cs) - 1, -1, -1):
        c = cs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else f"{mag}*"
            body = f"{head}{var}" if k == 1 else f"{head}{var}^{k}"
        parts.append((sign, body))
    out = ""
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


def format_scalar(s: Scalar) -> str:
    if s.field.kind == CYCLOTOMIC:
        return _format_poly(s.num, s.field.var)
    num = _format_poly(s.num, s.field.var)
    if s.den == (Fraction(1),):
        return num
    den = _format_poly(s.den, s.field.var)
    return f"({num})/({den})"


_TERM_RE = re.compile(
    r"""(?P<coeff>\d+(?:/\d+)?)?          # optional rational coefficient
        (?:(?(coeff)\*|)                  # '*' required only after a coefficient
           (?P<var>[A-Za-z])
           (?:\^(?P<exp>-?\d+))?
        )?""",
    re.VERBOSE,
)


def _parse_poly(field: FieldSpec, text: str):
    """Parse a sign-separated polynomial in the field variable.

    Returns a dict exponent -> Fraction; negative exponents are allowed
    (they are resolved by the caller for rational-function fields).
    """
    text = text.strip()
    if not text:
        raise ValueError("empty scalar text")
    out: dict[int, Fraction] = {}
    pos = 0
    sign = 1
    first = True
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+-":
            sign = sign * (1 if ch == "+" else -1)
            pos += 1
            continue
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar term at {text[pos:]!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        exp = 0
        if m.group("var"):
            if m.group("var") != field.var:
                raise ValueError(f"unexpected variable {m.group('var')!r}; "
                                 f"this field uses {field.var!r}")
            exp = int(m.group("exp")) if m.group("exp") else 1
        out[exp] = out.get(exp, Fraction(0)) + sign * coeff
        sign = 1
        first = False
        pos = m.end()
    return out


def _poly_dict_to_scalar(field: FieldSpec, d: dict[int, Fraction]) -> Scalar:
    shift = min((e for e in d), default=0)
    shift = min(shift, 0)
    if shift < 0 and field.kind == CYCLOTOMIC:
        gen_inv = field.generator().inverse()
        out = field.zero()
        for e, c in d.items():
            term = field.from_fraction(c) * (field.generator() ** e if e >= 0 else gen_inv ** (-e))
            out = out + term
        return out
    coeffs = [Fraction(0)] * (max((e for e in d), default=0) - shift + 1)
    for e, c in d.items():
        coeffs[e - shift] += c
    num = field.from_coeffs(coeffs)
    if shift == 0:
        return num
    den = field.generator() ** (-shift)
    return num / den


def parse_scalar(field: FieldSpec, text: str) -> Scalar:
    text = text.strip()
    if field.kind == RATFUNC and text.startswith("("):
        # (num)/(den)
        depth, split = 0, -1
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                split = i
                break
        if split >= 0:
            num_txt, den_txt = text[:split].strip(), text[split + 1:].strip()
            if not (num_txt.startswith("(") and num_txt.endswith(")")):
                raise ValueError(f"malformed rational function: {text!r}")
            if not (den_txt.startswith("(") and den_txt.endswith(")")):
                raise ValueError(f"malformed rational function: {text!r}")
            num = _poly_dict_to_scalar(field, _parse_poly(field, num_txt[1:-1]))
            den = _poly_dict_to_scalar(field, _parse_poly(field, den_txt[1:-1]))
            return num / den
        text = text[1:-1] if text.endswith(")") else text
    # plain polynomial / rational number (possibly with negative exponents)
    if re.fullmatch(r"-?\d+/\d+", text):
        return field.from_fraction(Fraction(text))
    return _poly_dict_to_scalar(field, _parse_poly(field, text))
