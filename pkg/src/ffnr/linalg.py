"""2×2 matrices over F_{q²}: conjugate transpose, Hermitian parts, eigen-analysis, Schur."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import AllEigenvectorsIsotropic, NoEigenvalueInField, NotAQuadratic
from .field import FieldSpec, Fq2Elem, solve_norm_equation, sqrt_fq2

Vec2 = tuple[Fq2Elem, Fq2Elem]


class Mat2:
    """Immutable 2×2 matrix ((a, b), (c, d)) over F_{q²}."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[Fq2Elem]]):
        (a, b), (c, d) = entries
        self.entries = ((a, b), (c, d))

    @classmethod
    def of(cls, field: FieldSpec, rows) -> "Mat2":
        """Build from nested rows of ints, strings ('4+5B') or elements."""
        return cls([[field.parse2(x) for x in row] for row in rows])

    @classmethod
    def identity(cls, field: FieldSpec) -> "Mat2":
        return cls([[field.embed(1), field.embed(0)], [field.embed(0), field.embed(1)]])

    @classmethod
    def zero(cls, field: FieldSpec) -> "Mat2":
        z = field.embed(0)
        return cls([[z, z], [z, z]])

    @classmethod
    def from_columns(cls, u: Vec2, v: Vec2) -> "Mat2":
        return cls([[u[0], v[0]], [u[1], v[1]]])

    @property
    def field(self) -> FieldSpec:
        return self.entries[0][0].field

    def __getitem__(self, ij: tuple[int, int]) -> Fq2Elem:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Mat2(" + repr([list(r) for r in self.entries]) + ")"

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2([[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2([[x - y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __mul__(self, scalar: Union[Fq2Elem, int]) -> "Mat2":
        return Mat2([[x * scalar for x in r] for r in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        (a, b), (c, d) = self.entries
        if isinstance(other, Mat2):
            (e, f), (g, h) = other.entries
            return Mat2([[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]])
        x, y = other
        return (a * x + b * y, c * x + d * y)

    def ct(self) -> "Mat2":
        (a, b), (c, d) = self.entries
        return Mat2([[a.conj(), c.conj()], [b.conj(), d.conj()]])

    def trace(self) -> Fq2Elem:
        return self.entries[0][0] + self.entries[1][1]

    def det(self) -> Fq2Elem:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def shift(self, tau: Fq2Elem) -> "Mat2":
        """self + tau·I"""
        (a, b), (c, d) = self.entries
        return Mat2([[a + tau, b], [c, d + tau]])

    def is_hermitian(self) -> bool:
        return self.ct() == self

    def is_upper_triangular(self) -> bool:
        return not self.entries[1][0]


@dataclass(frozen=True)
class HermitianPair:
    h1: Mat2
    h2: Mat2


@dataclass(frozen=True)
class EigenData:
    eigenvalue: Fq2Elem
    algebraic_multiplicity: int
    eigenvector: Vec2
    isotropic: bool


def conj_transpose(A: Mat2) -> Mat2:
    return A.ct()


def hermitian_parts(A: Mat2) -> HermitianPair:
    """H1 = (A + A*)/2 and H2 = (A − A*)/(2β), so that A = H1 + β·H2."""
    F = A.field
    star = A.ct()
    h1 = (A + star) * F.embed(2).inv()
    h2 = (A - star) * (F.beta * 2).inv()
    return HermitianPair(h1, h2)


def inner_product(u: Vec2, v: Vec2) -> Fq2Elem:
    """⟨u, v⟩ = v*u"""
    return u[0] * v[0].conj() + u[1] * v[1].conj()


def is_unitary(U: Mat2) -> bool:
    return U.ct() @ U == Mat2.identity(U.field)


def quadratic_roots(a: Fq2Elem, b: Fq2Elem, c: Fq2Elem) -> list[tuple[Fq2Elem, int]]:
    """Roots of a·x² + b·x + c in F_{q²} as (root, multiplicity), canonical order."""
    if not a:
        raise NotAQuadratic("leading coefficient is zero")
    disc = b * b - a * c * 4
    two_a = a * 2
    if not disc:
        return [(-b / two_a, 2)]
    s = sqrt_fq2(disc)
    if s is None:
        return []
    roots = sorted([(-b + s) / two_a, (-b - s) / two_a])
    return [(r, 1) for r in roots]


def _normalized(v: Vec2) -> Vec2:
    """Scale so the first nonzero coordinate is 1."""
    lead = v[0] if v[0] else v[1]
    inv = lead.inv()
    return (v[0] * inv, v[1] * inv)


def kernel_vector(M: Mat2) -> Vec2 | None:
    """A canonical nonzero vector in ker(M), or None when M is invertible.

    For M = 0 the kernel is everything and e1 is returned.
    """
    (a, b), (c, d) = M.entries
    if M.det():
        return None
    if a or b:
        return _normalized((-b, a))
    if c or d:
        return _normalized((-d, c))
    F = M.field
    return (F.embed(1), F.embed(0))


def eigen_data(M: Mat2) -> list[EigenData]:
    """All eigenvalues of M that lie in F_{q²}, each with a canonical eigenvector."""
    F = M.field
    one = F.embed(1)
    roots = quadratic_roots(one, -M.trace(), M.det())
    out = []
    for lam, mult in roots:
        v = kernel_vector(M.shift(-lam))
        out.append(EigenData(lam, mult, v, not inner_product(v, v)))
    return out


def unit_normalize(v: Vec2) -> Vec2:
    """Scale v by e + βf so that ⟨v, v⟩ = 1.

    |e + βf|² = e² − αf², so we solve e² + (−α)f² = ⟨v, v⟩⁻¹.
    """
    F = v[0].field
    n = inner_product(v, v)
    if not n:
        raise AllEigenvectorsIsotropic("cannot normalize an isotropic vector")
    target = F.inv(n.re)
    e, f = solve_norm_equation(F, F.neg(F.alpha), target)
    s = F.elem(e, f)
    return (v[0] * s, v[1] * s)


def unitary_from_unit_vector(v: Vec2) -> Mat2:
    """Unitary with first column v (a unit vector) and second column [−v̄2, v̄1]."""
    w = (-v[1].conj(), v[0].conj())
    return Mat2.from_columns(v, w)


def schur_triangularize(A: Mat2) -> tuple[Mat2, Mat2]:
    """Return (U, T) with U unitary and T = U*AU upper triangular.

    An already upper-triangular A returns U = I.  Otherwise the first column of
    U is the unit-normalized eigenvector of the smallest eigenvalue that has a
    non-isotropic eigenvector.
    """
    F = A.field
    if A.is_upper_triangular():
        return Mat2.identity(F), A
    eigs = eigen_data(A)
    if not eigs:
        raise NoEigenvalueInField("characteristic polynomial has no root in F_q²")
    usable = [e for e in eigs if not e.isotropic]
    if not usable:
        raise AllEigenvectorsIsotropic("every eigenvector of A is isotropic")
    v = unit_normalize(usable[0].eigenvector)
    U = unitary_from_unit_vector(v)
    T = U.ct() @ A @ U
    assert T.is_upper_triangular()
    return U, T
