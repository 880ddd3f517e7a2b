"""Base polynomial F_A, its dual conic (the boundary generating curve) and the
scaling family of conics that tiles W([[1, ζ], [0, 0]])."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

from .canonical import ClassTag, canonicalize
from .errors import (
    AllEigenvectorsIsotropic,
    CoefficientNotInBaseField,
    DegenerateZeta,
    NoEigenvalueInField,
    SingularForm,
    UnclassifiedSingularForm,
)
from .field import FieldSpec, Fq2Elem
from .linalg import Mat2, Vec2, hermitian_parts

ProjPoint = tuple[int, int, int]


@dataclass(frozen=True)
class TernaryQuadraticForm:
    """F(x, y, t) = [x y t]·gram·[x y t]ᵀ over F_q."""

    field: FieldSpec
    gram: tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

    def __call__(self, x: int, y: int, t: int) -> int:
        F = self.field
        v = (x, y, t)
        gv = self.apply(v)
        total = 0
        for a, b in zip(v, gv):
            total = F.add(total, F.mul(a, b))
        return total

    def apply(self, v: Sequence[int]) -> tuple[int, int, int]:
        """gram·v (half the gradient) over F_q."""
        F = self.field
        out = []
        for row in self.gram:
            acc = 0
            for g, x in zip(row, v):
                acc = F.add(acc, F.mul(g, x))
            out.append(acc)
        return tuple(out)

    def apply_ext(self, v: Sequence[Fq2Elem]) -> tuple[Fq2Elem, Fq2Elem, Fq2Elem]:
        """gram·v for a point with coordinates in F_{q²}."""
        F = self.field
        return tuple(
            sum((F.elem(g) * x for g, x in zip(row, v)), F.embed(0)) for row in self.gram
        )

    def gradient(self, v: Sequence[int]) -> tuple[int, int, int]:
        F = self.field
        return tuple(F.add(c, c) for c in self.apply(v))

    def det(self) -> int:
        F = self.field
        g = self.gram
        m = F.mul

        def minor(a, b, c, d):
            return F.sub(m(a, d), m(b, c))

        t0 = m(g[0][0], minor(g[1][1], g[1][2], g[2][1], g[2][2]))
        t1 = m(g[0][1], minor(g[1][0], g[1][2], g[2][0], g[2][2]))
        t2 = m(g[0][2], minor(g[1][0], g[1][1], g[2][0], g[2][1]))
        return F.add(F.sub(t0, t1), t2)

    def adjugate(self) -> "TernaryQuadraticForm":
        F = self.field
        g = self.gram
        adj = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [x for x in range(3) if x != j]
                c = [x for x in range(3) if x != i]
                # cofactor of entry (j, i) goes to adj[i][j]
                mnr = F.sub(F.mul(g[r[0]][c[0]], g[r[1]][c[1]]), F.mul(g[r[0]][c[1]], g[r[1]][c[0]]))
                adj[i][j] = mnr if (i + j) % 2 == 0 else F.neg(mnr)
        return TernaryQuadraticForm(F, tuple(tuple(row) for row in adj))

    def scaled(self, c: int) -> "TernaryQuadraticForm":
        F = self.field
        return TernaryQuadraticForm(F, tuple(tuple(F.mul(c, x) for x in row) for row in self.gram))

    def to_json(self) -> dict:
        return {"gram": [[self.field.format(x) for x in row] for row in self.gram]}


class ConicKind(str, enum.Enum):
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ConicReport:
    kind: ConicKind
    affine_count: int
    infinite_count: int


@dataclass(frozen=True)
class ScalingFamily:
    zeta: Fq2Elem
    center: Fq2Elem
    m_values: tuple[int, ...]
    members: dict  # m -> frozenset of Fq2Elem


# -- projective plane helpers ------------------------------------------------------


def projective_points(field: FieldSpec) -> Iterator[ProjPoint]:
    """All points of P²(F_q), normalized so the last nonzero coordinate is 1."""
    one = field.one
    for x in field.elements():
        for y in field.elements():
            yield (x, y, one)
    for x in field.elements():
        yield (x, one, 0)
    yield (one, 0, 0)


def normalize_point(field: FieldSpec, v: Sequence[int]) -> ProjPoint:
    for c in reversed(v):
        if c:
            inv = field.inv(c)
            return tuple(field.mul(x, inv) for x in v)
    raise ValueError("the zero vector is not a projective point")


def affine_points(form: TernaryQuadraticForm) -> frozenset[Fq2Elem]:
    """Affine zeros (x:y:1), embedded as x + βy."""
    F = form.field
    return frozenset(
        F.elem(x, y) for x in F.elements() for y in F.elements() if form(x, y, F.one) == 0
    )


# -- operations ---------------------------------------------------------------------------


def _det_form_value(h1: Mat2, h2: Mat2, x: int, y: int, t: int) -> Fq2Elem:
    F = h1.field
    M = h1 * F.elem(x) + h2 * F.elem(y)
    return M.shift(F.elem(t)).det()


def base_form(A: Mat2) -> TernaryQuadraticForm:
    """F_A(x:y:t) = det(x·H1 + y·H2 + t·I), recovered by polarization."""
    F = A.field
    hp = hermitian_parts(A)
    one = F.one
    basis = [(one, 0, 0), (0, one, 0), (0, 0, one)]

    def val(v):
        z = _det_form_value(hp.h1, hp.h2, *v)
        if z.im != 0:
            raise CoefficientNotInBaseField(f"F_A{v} = {z!r} is not in F_q")
        return z.re

    diag = [val(e) for e in basis]
    gram = [[0] * 3 for _ in range(3)]
    for i in range(3):
        gram[i][i] = diag[i]
        for j in range(i + 1, 3):
            s = tuple(F.add(a, b) for a, b in zip(basis[i], basis[j]))
            off = F.mul(F.sub(F.sub(val(s), diag[i]), diag[j]), F.half)
            gram[i][j] = gram[j][i] = off
    return TernaryQuadraticForm(F, tuple(tuple(r) for r in gram))


def is_nonsingular(form: TernaryQuadraticForm) -> bool:
    return form.det() != 0


def singular_points(form: TernaryQuadraticForm) -> frozenset[ProjPoint]:
    """Projective F_q-points where F and all partials vanish (the radical of gram)."""
    return frozenset(P for P in projective_points(form.field) if form.apply(P) == (0, 0, 0))


def dual_form(form: TernaryQuadraticForm) -> TernaryQuadraticForm:
    if not is_nonsingular(form):
        raise SingularForm("dual of a singular conic is not a conic")
    return form.adjugate()


def _catalog_points(field: FieldSpec, tag: ClassTag, zeta) -> frozenset[Fq2Elem]:
    F = field
    if tag is ClassTag.ZERO:
        return frozenset([F.embed(0)])
    if tag is ClassTag.DIAG10:
        return frozenset(F.elem(x, 0) for x in F.elements())
    if tag is ClassTag.ONE_ZETA and zeta.norm() == F.neg(F.one):
        return frozenset(F.elem(F.half, y) for y in F.elements())
    raise UnclassifiedSingularForm(f"no catalogued curve for singular class {tag.value}")


def affine_dual_points(A: Mat2) -> frozenset[Fq2Elem]:
    """Affine points of the boundary generating curve of A, as elements of F_{q²}.

    Singular base forms are handled by reducing A to its class representative
    and transporting the catalogued curve of that representative back.
    """
    form = base_form(A)
    if is_nonsingular(form):
        return affine_points(form.adjugate())
    try:
        dec = canonicalize(A)
    except (NoEigenvalueInField, AllEigenvectorsIsotropic) as exc:
        raise UnclassifiedSingularForm(str(exc)) from exc
    pts = _catalog_points(A.field, dec.cls.tag, dec.cls.zeta)
    return frozenset(dec.unmap_point(z) for z in pts)


def classify_conic(form: TernaryQuadraticForm) -> ConicReport:
    """Type of a smooth conic by how it meets the line at infinity t = 0."""
    if not is_nonsingular(form):
        raise SingularForm("classification needs a nonsingular conic")
    F = form.field
    at_infinity = [(x, F.one, 0) for x in F.elements()] + [(F.one, 0, 0)]
    n_inf = sum(1 for P in at_infinity if form(*P) == 0)
    kind = {0: ConicKind.ELLIPSE, 1: ConicKind.PARABOLA, 2: ConicKind.HYPERBOLA}[n_inf]
    return ConicReport(kind, F.q + 1 - n_inf, n_inf)


def _check_zeta(zeta: Fq2Elem) -> int:
    F = zeta.field
    n = zeta.norm()
    if n == 0 or n == F.neg(F.one):
        raise DegenerateZeta(f"|zeta|² = {F.format(n)} gives a singular curve")
    return n


def scaling_value(z: Fq2Elem, zeta: Fq2Elem) -> int:
    """m such that z lies on C_m: (x−½)²/(1+|ζ|²) − αy²/|ζ|² = m/4."""
    F = z.field
    n = _check_zeta(zeta)
    dx = F.sub(z.re, F.half)
    lhs = F.sub(
        F.div(F.mul(dx, dx), F.add(F.one, n)),
        F.div(F.mul(F.alpha, F.mul(z.im, z.im)), n),
    )
    return F.mul(F.from_int(4), lhs)


def scaling_family(zeta: Fq2Elem, field: FieldSpec | None = None) -> ScalingFamily:
    """The (q+1)/2 conics C_m, m ∈ {1 − t²(|ζ|²+1)/|ζ|² : t ∈ F_q}."""
    F = field or zeta.field
    n = _check_zeta(zeta)
    ratio = F.div(F.add(n, F.one), n)
    m_values = sorted({F.sub(F.one, F.mul(F.mul(t, t), ratio)) for t in F.elements()})
    members: dict[int, set] = {m: set() for m in m_values}
    for z in F.fq2_elements():
        m = scaling_value(z, zeta)
        if m in members:
            members[m].add(z)
    return ScalingFamily(
        zeta=zeta,
        center=F.elem(F.half, 0),
        m_values=tuple(m_values),
        members={m: frozenset(s) for m, s in members.items()},
    )


def solvek_residual(z: Fq2Elem, k: int, zeta: Fq2Elem) -> int:
    """(x − k)² − αy² − k(1 − k)|ζ|², zero for the image of any unit vector with |a|² = k."""
    F = z.field
    dx = F.sub(z.re, k)
    return F.sub(
        F.sub(F.mul(dx, dx), F.mul(F.alpha, F.mul(z.im, z.im))),
        F.mul(F.mul(k, F.sub(F.one, k)), zeta.norm()),
    )


def scaling_index_of_vector(v: Vec2, zeta: Fq2Elem) -> int:
    """m for the image of unit vector v under z = ⟨Av, v⟩, A = [[1, ζ], [0, 0]].

    k = |a|², j solves ((|ζ|²+1)/2)(k + j) − |ζ|²/2 = x, and
    m = 1 − (j − k)²(|ζ|² + 1)/|ζ|².
    """
    F = zeta.field
    n = _check_zeta(zeta)
    a, b = v
    z = a.conj() * (a + zeta * b)
    k = a.norm()
    n1 = F.add(n, F.one)
    j = F.sub(F.div(F.add(F.add(z.re, z.re), n), n1), k)
    d = F.sub(j, k)
    return F.sub(F.one, F.mul(F.mul(d, d), F.div(n1, n)))
