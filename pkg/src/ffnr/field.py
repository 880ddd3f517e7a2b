"""Exact arithmetic in the tower F_p ⊆ F_q ⊆ F_{q²}.

Elements of F_q are plain ints: the position of the element in the canonical
enumeration order (coefficient vectors compared lexicographically, constant
coefficient most significant).  For prime fields that position is simply the
residue.  Elements of F_{q²} = F_q[β] with β² = α are :class:`Fq2Elem`.
"""

from __future__ import annotations

import itertools
import os
from functools import cached_property
from typing import Iterator, Optional, Sequence, Union

from .errors import (
    AlphaIsSquare,
    BoundExceeded,
    DivisionByZero,
    ElementParseError,
    NotIrreducibleOverride,
    NotOddPrime,
)

DEFAULT_MAX_Q = 1024
MAX_Q_ENV = "FFNR_MAX_Q"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def max_q_bound() -> int:
    raw = os.environ.get(MAX_Q_ENV)
    return int(raw) if raw else DEFAULT_MAX_Q


# -- polynomials over F_p, little-endian coefficient lists ---------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    m = _poly_trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, deg: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of degree ``deg`` as high-first tuples, in lexicographic order."""
    for tail in itertools.product(range(p), repeat=deg):
        yield (1,) + tail


def is_irreducible(f_high: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(f_high) - 1
    if deg < 1 or f_high[0] % p == 0:
        return False
    if deg == 1:
        return True
    f_low = [c % p for c in reversed(f_high)]
    # cheap root test first
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(f_low)) % p == 0:
            return False
    for d in range(2, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(f_low, list(reversed(g)), p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for f in _monic_polys(p, k):
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


# -- the field ------------------------------------------------------------------


class FieldSpec:
    """The tower F_p ⊆ F_q = F_p[t]/(f) ⊆ F_{q²} = F_q[β], β² = alpha.

    Use :func:`make_field` rather than constructing directly; the constructor
    trusts its arguments.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int], alpha: int):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self.zero = 0
        if k == 1:
            self.one = 1
            self.add = self._add_p
            self.sub = self._sub_p
            self.neg = self._neg_p
            self.mul = self._mul_p
        else:
            self.one = p ** (k - 1)
            self._build_tables()
            self.add = self._add_t
            self.sub = self._sub_t
            self.neg = self._neg_t
            self.mul = self._mul_t
        self.alpha = alpha
        self.half = self.inv(self.from_int(2))

    # identity of a field is its defining data
    def _key(self):
        return (self.p, self.k, self.modulus, self.alpha)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k}, alpha={self.format(self.alpha)})"

    # -- coefficient vectors -------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (c0, ..., c_{k-1}) of an F_q element, little-endian in t."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(reversed(out))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.k:
            raise ElementParseError(f"expected {self.k} coefficients, got {len(coeffs)}")
        idx = 0
        for c in coeffs:
            idx = idx * self.p + c % self.p
        return idx

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p ⊆ F_q."""
        return (n % self.p) * self.one

    def elements(self) -> range:
        return range(self.q)

    # -- prime-field arithmetic ----------------------------------------------

    def _add_p(self, a, b):
        return (a + b) % self.p

    def _sub_p(self, a, b):
        return (a - b) % self.p

    def _neg_p(self, a):
        return -a % self.p

    def _mul_p(self, a, b):
        return a * b % self.p

    # -- extension-field arithmetic via tables --------------------------------

    def _poly_mulmod(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        p = self.p
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        r = _poly_mod(prod, list(reversed(self.modulus)), p)
        return r + [0] * (self.k - len(r))

    def _build_tables(self):
        q, p = self.q, self.p
        vecs = [self.coeffs(i) for i in range(q)]
        self._add_tab = [
            self.from_coeffs([(x + y) % p for x, y in zip(va, vb)]) for va in vecs for vb in vecs
        ]
        self._neg_tab = [self.from_coeffs([-x % p for x in va]) for va in vecs]
        # primitive element by brute force order computation
        one_vec = [1] + [0] * (self.k - 1)
        for g in range(1, q):
            gv = list(vecs[g])
            powers = []
            cur = one_vec
            for _ in range(q - 1):
                powers.append(self.from_coeffs(cur))
                cur = self._poly_mulmod(cur, gv)
                if cur == one_vec:
                    break
            if len(powers) == q - 1:
                break
        self._exp = powers
        self._log = [0] * q
        for e, x in enumerate(powers):
            self._log[x] = e

    def _add_t(self, a, b):
        return self._add_tab[a * self.q + b]

    def _sub_t(self, a, b):
        return self._add_tab[a * self.q + self._neg_tab[b]]

    def _neg_t(self, a):
        return self._neg_tab[a]

    def _mul_t(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    # -- shared F_q operations ------------------------------------------------

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return self.one if e == 0 else 0
        return self._exp[self._log[a] * e % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in F_q")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_square(self, a: int) -> bool:
        """Euler's criterion."""
        return a == 0 or self.pow(a, (self.q - 1) // 2) == self.one

    @cached_property
    def _sqrt_table(self) -> dict[int, int]:
        table: dict[int, int] = {}
        for r in range(self.q):
            table.setdefault(self.mul(r, r), r)
        return table

    def sqrt(self, a: int) -> Optional[int]:
        """Smallest (canonical order) square root of a in F_q, or None."""
        return self._sqrt_table.get(a)

    # -- F_{q²} ---------------------------------------------------------------

    def elem(self, re: int = 0, im: int = 0) -> "Fq2Elem":
        return Fq2Elem(self, re, im)

    def embed(self, n: int) -> "Fq2Elem":
        """Integer n as an element of F_{q²}."""
        return Fq2Elem(self, self.from_int(n), 0)

    @property
    def beta(self) -> "Fq2Elem":
        return Fq2Elem(self, 0, self.one)

    def fq2_elements(self) -> Iterator["Fq2Elem"]:
        """All of F_{q²} in canonical order: (re, im) lexicographic."""
        for re_ in range(self.q):
            for im_ in range(self.q):
                yield Fq2Elem(self, re_, im_)

    @cached_property
    def norm_fibers(self) -> dict[int, tuple["Fq2Elem", ...]]:
        """F_q value -> all z in F_{q²} of that norm, canonical order."""
        fibers: dict[int, list[Fq2Elem]] = {}
        for z in self.fq2_elements():
            fibers.setdefault(z.norm(), []).append(z)
        return {n: tuple(zs) for n, zs in fibers.items()}

    @cached_property
    def _fq2_sqrt_table(self) -> dict["Fq2Elem", "Fq2Elem"]:
        table: dict[Fq2Elem, Fq2Elem] = {}
        for w in self.fq2_elements():
            table.setdefault(w * w, w)
        return table

    # -- text formats ---------------------------------------------------------

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self.coeffs(a)) + "]"

    def parse(self, text: Union[str, int, Sequence[int]]) -> int:
        """Parse an F_q element: an integer (via F_p) or a coefficient list."""
        if isinstance(text, int):
            return self.from_int(text)
        if not isinstance(text, str):
            return self.from_coeffs(list(text))
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise ElementParseError(f"bad F_q element {text!r}")
            try:
                parts = [int(x) for x in s[1:-1].split(",")]
            except ValueError as exc:
                raise ElementParseError(f"bad F_q element {text!r}") from exc
            return self.from_coeffs(parts)
        try:
            return self.from_int(int(s))
        except ValueError as exc:
            raise ElementParseError(f"bad F_q element {text!r}") from exc

    def format2(self, z: "Fq2Elem") -> str:
        return f"{self.format(z.re)}+{self.format(z.im)}*B"

    def parse2(self, text: Union[str, int, "Fq2Elem"]) -> "Fq2Elem":
        """Parse 'a+b*B' style text.  Accepts '4+5B', '-B', '3', '[1,2]*B', ..."""
        if isinstance(text, Fq2Elem):
            return text
        if isinstance(text, int):
            return self.embed(text)
        s = text.replace(" ", "")
        if not s:
            raise ElementParseError("empty element")
        # split into signed terms at top level (outside brackets)
        terms, depth, start = [], 0, 0
        for i, ch in enumerate(s):
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            elif ch in "+-" and depth == 0 and i > start:
                terms.append(s[start:i])
                start = i
        terms.append(s[start:])
        re_, im_ = 0, 0
        for term in terms:
            sign = 1
            while term[:1] in ("+", "-"):
                if term[0] == "-":
                    sign = -sign
                term = term[1:]
            is_imag = term.endswith("B")
            if is_imag:
                term = term[:-1].rstrip("*")
            if term == "":
                if not is_imag:
                    raise ElementParseError(f"bad element {text!r}")
                val = self.one
            else:
                val = self.parse(term)
            if sign < 0:
                val = self.neg(val)
            if is_imag:
                im_ = self.add(im_, val)
            else:
                re_ = self.add(re_, val)
        return Fq2Elem(self, re_, im_)


_Scalar = Union["Fq2Elem", int]


class Fq2Elem:
    """re + β·im with re, im in F_q."""

    __slots__ = ("field", "re", "im")

    def __init__(self, field: FieldSpec, re: int, im: int = 0):
        self.field = field
        self.re = re
        self.im = im

    def _coerce(self, other: _Scalar) -> "Fq2Elem":
        if isinstance(other, Fq2Elem):
            return other
        if isinstance(other, int):
            return self.field.embed(other)
        return NotImplemented

    def key(self) -> tuple[int, int]:
        return (self.re, self.im)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.embed(other)
        if not isinstance(other, Fq2Elem):
            return NotImplemented
        return self.re == other.re and self.im == other.im and (
            self.field is other.field or self.field == other.field
        )

    def __hash__(self):
        return hash((self.re, self.im))

    def __lt__(self, other: "Fq2Elem"):
        return self.key() < other.key()

    def __bool__(self):
        return bool(self.re or self.im)

    def __repr__(self):
        return self.field.format2(self)

    def __add__(self, other: _Scalar) -> "Fq2Elem":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.field
        return Fq2Elem(F, F.add(self.re, o.re), F.add(self.im, o.im))

    __radd__ = __add__

    def __sub__(self, other: _Scalar) -> "Fq2Elem":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.field
        return Fq2Elem(F, F.sub(self.re, o.re), F.sub(self.im, o.im))

    def __rsub__(self, other: _Scalar) -> "Fq2Elem":
        return (-self) + other

    def __neg__(self) -> "Fq2Elem":
        F = self.field
        return Fq2Elem(F, F.neg(self.re), F.neg(self.im))

    def __mul__(self, other: _Scalar) -> "Fq2Elem":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.field
        a, b, c, d = self.re, self.im, o.re, o.im
        # (a+βb)(c+βd) = (ac + αbd) + β(ad + bc)
        re_ = F.add(F.mul(a, c), F.mul(F.alpha, F.mul(b, d)))
        im_ = F.add(F.mul(a, d), F.mul(b, c))
        return Fq2Elem(F, re_, im_)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Fq2Elem":
        """Multiply by an F_q element."""
        F = self.field
        return Fq2Elem(F, F.mul(self.re, c), F.mul(self.im, c))

    def conj(self) -> "Fq2Elem":
        return Fq2Elem(self.field, self.re, self.field.neg(self.im))

    def norm(self) -> int:
        F = self.field
        return F.sub(F.mul(self.re, self.re), F.mul(F.alpha, F.mul(self.im, self.im)))

    def inv(self) -> "Fq2Elem":
        if not self:
            raise DivisionByZero("inverse of zero in F_q²")
        return self.conj().scale(self.field.inv(self.norm()))

    def __truediv__(self, other: _Scalar) -> "Fq2Elem":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other: _Scalar) -> "Fq2Elem":
        return self._coerce(other) * self.inv()

    def __pow__(self, e: int) -> "Fq2Elem":
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.embed(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def in_base_field(self) -> bool:
        return self.im == 0


# -- construction ---------------------------------------------------------------


def make_field(
    p: int,
    k: int = 1,
    alpha: Union[None, int, str, Sequence[int]] = None,
    modulus: Optional[Sequence[int]] = None,
    max_q: Optional[int] = None,
) -> FieldSpec:
    """Build the tower for q = p**k.

    ``modulus`` is a monic degree-k polynomial over F_p, highest degree first;
    by default the lexicographically smallest irreducible one.  ``alpha``
    defaults to the smallest nonsquare of F_q in canonical order.
    """
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise NotOddPrime(f"p={p} is not an odd prime")
    if k < 1:
        raise NotOddPrime(f"extension degree k={k} must be positive")
    bound = max_q if max_q is not None else max_q_bound()
    if p**k > bound:
        raise BoundExceeded(f"q={p}^{k}={p**k} exceeds bound {bound}")

    if modulus is None:
        f = smallest_irreducible(p, k)
    else:
        f = tuple(c % p for c in modulus)
        if len(f) != k + 1 or f[0] != 1 or not is_irreducible(f, p):
            raise NotIrreducibleOverride(f"{tuple(modulus)} is not a monic irreducible of degree {k}")

    # alpha placeholder 0 until the nonsquare is known; nothing below uses it
    field = FieldSpec(p, k, f, 0)
    if alpha is None:
        a = next(x for x in field.elements() if not field.is_square(x))
    else:
        a = field.parse(alpha)
        if field.is_square(a):
            raise AlphaIsSquare(f"alpha={field.format(a)} is a square in F_{field.q}")
    field.alpha = a
    return field


# -- F_{q²} operations ------------------------------------------------------------


def frobenius_conj(z: Fq2Elem) -> Fq2Elem:
    return z.conj()


def norm(z: Fq2Elem) -> int:
    """|z|² = z·z̄ = re² − α·im², an element of F_q."""
    return z.norm()


def re_part(z: Fq2Elem) -> int:
    """(z + z̄)/2, as an F_q element."""
    w = (z + z.conj()).scale(z.field.half)
    assert w.im == 0
    return w.re


def im_part(z: Fq2Elem) -> int:
    """(z − z̄)/(2β), as an F_q element."""
    F = z.field
    w = (z - z.conj()) / (F.beta * 2)
    assert w.im == 0
    return w.re


def sqrt_fq2(z: Fq2Elem) -> Optional[Fq2Elem]:
    """A square root of z in F_{q²} (lexicographically smallest), or None."""
    return z.field._fq2_sqrt_table.get(z)


def solve_norm_equation(field: FieldSpec, c: int, k: int) -> tuple[int, int]:
    """Smallest (a, b) in canonical order with a² + c·b² = k.

    Always solvable for c != 0.  Pass ``c = -alpha`` to find e + βf of norm k.
    """
    if c == 0:
        raise ValueError("c must be nonzero")
    F = field
    inv_c = F.inv(c)
    for a in F.elements():
        rest = F.mul(F.sub(k, F.mul(a, a)), inv_c)
        b = F.sqrt(rest)
        if b is not None:
            return a, b
    raise AssertionError("unreachable: a² + c·b² = k is always solvable")
