"""Reduction of 2×2 matrices to equivalence-class representatives.

Two matrices are equivalent when one is obtained from the other by unitary
similarity, multiplication by a nonzero scalar and translation by a scalar
multiple of I.  Representatives are 0, diag(1, 0), [[0, 1], [0, 0]] and
[[1, ζ], [0, 0]] for nonzero ζ.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import ZeroZeta
from .field import FieldSpec, Fq2Elem
from .linalg import Mat2, is_unitary, schur_triangularize


class ClassTag(str, enum.Enum):
    ZERO = "Zero"
    DIAG10 = "Diag10"
    NILPOTENT01 = "Nilpotent01"
    ONE_ZETA = "OneZeta"


class ZetaClass(str, enum.Enum):
    ELLIPSE = "EllipseClass"
    HYPERBOLA = "HyperbolaClass"
    SINGULAR_NORM_MINUS_ONE = "SingularNormMinusOne"
    SINGULAR_NORM_ZERO = "SingularNormZero"


@dataclass(frozen=True)
class EquivClass:
    tag: ClassTag
    zeta: Optional[Fq2Elem] = None

    def representative(self, field: FieldSpec) -> Mat2:
        if self.tag is ClassTag.ZERO:
            rows = [[0, 0], [0, 0]]
        elif self.tag is ClassTag.DIAG10:
            rows = [[1, 0], [0, 0]]
        elif self.tag is ClassTag.NILPOTENT01:
            rows = [[0, 1], [0, 0]]
        else:
            rows = [[1, self.zeta], [0, 0]]
        return Mat2.of(field, rows)

    def label(self) -> str:
        if self.tag is ClassTag.ONE_ZETA:
            return f"OneZeta({self.zeta!r})"
        return self.tag.value

    def to_json(self) -> dict:
        out = {"class": self.tag.value}
        if self.zeta is not None:
            out["zeta"] = {"re": self.zeta.field.format(self.zeta.re), "im": self.zeta.field.format(self.zeta.im)}
        return out


@dataclass(frozen=True)
class CanonicalDecomposition:
    """rho·(U* A U) + tau·I equals the class representative."""

    cls: EquivClass
    rho: Fq2Elem
    tau: Fq2Elem
    u: Mat2

    def apply(self, A: Mat2) -> Mat2:
        return (self.u.ct() @ A @ self.u) * self.rho + Mat2.identity(A.field) * self.tau

    def verify(self, A: Mat2) -> bool:
        return is_unitary(self.u) and self.apply(A) == self.cls.representative(A.field)

    def map_point(self, z: Fq2Elem) -> Fq2Elem:
        """Point of W(A) to the corresponding point of W(representative)."""
        return self.rho * z + self.tau

    def unmap_point(self, z: Fq2Elem) -> Fq2Elem:
        return (z - self.tau) / self.rho

    def to_json(self) -> dict:
        F = self.rho.field
        fmt = lambda z: {"re": F.format(z.re), "im": F.format(z.im)}  # noqa: E731
        out = self.cls.to_json()
        out.update(
            rho=fmt(self.rho),
            tau=fmt(self.tau),
            U=[[F.format2(x) for x in row] for row in self.u.entries],
        )
        return out


def canonicalize(A: Mat2) -> CanonicalDecomposition:
    """Schur-triangularize A and normalize the triangle to a representative.

    Raises NoEigenvalueInField / AllEigenvectorsIsotropic when A fails the
    eigen hypothesis.
    """
    F = A.field
    U, T = schur_triangularize(A)
    lam, s, mu = T[0, 0], T[0, 1], T[1, 1]
    one = F.embed(1)
    if lam == mu:
        if not s:
            cls, rho, tau = EquivClass(ClassTag.ZERO), one, -lam
        else:
            rho = s.inv()
            cls, tau = EquivClass(ClassTag.NILPOTENT01), -lam * rho
    else:
        rho = (lam - mu).inv()
        tau = -mu * rho
        if not s:
            cls = EquivClass(ClassTag.DIAG10)
        else:
            cls = EquivClass(ClassTag.ONE_ZETA, s * rho)
    dec = CanonicalDecomposition(cls, rho, tau, U)
    assert dec.verify(A)
    return dec


def class_enumeration(field: FieldSpec) -> list[EquivClass]:
    """The q²+2 classes: three special ones then OneZeta for each nonzero ζ."""
    out = [EquivClass(ClassTag.ZERO), EquivClass(ClassTag.DIAG10), EquivClass(ClassTag.NILPOTENT01)]
    out.extend(EquivClass(ClassTag.ONE_ZETA, z) for z in field.fq2_elements() if z)
    return out


def classify_zeta(zeta: Fq2Elem) -> ZetaClass:
    if not zeta:
        raise ZeroZeta("zeta must be nonzero")
    F = zeta.field
    n = zeta.norm()
    if n == F.neg(F.one):
        return ZetaClass.SINGULAR_NORM_MINUS_ONE
    if n == 0:
        return ZetaClass.SINGULAR_NORM_ZERO
    if F.is_square(F.mul(F.add(F.one, n), n)):
        return ZetaClass.ELLIPSE
    return ZetaClass.HYPERBOLA
