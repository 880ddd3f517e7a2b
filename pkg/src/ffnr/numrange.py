"""Exhaustive numerical ranges: the unit sphere, fiber counts |S_z|, unitary scalars."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .errors import NotOrbitAligned
from .field import FieldSpec, Fq2Elem
from .linalg import Mat2, Vec2


class UnitSphere:
    """All v in F_{q²}² with ⟨v, v⟩ = 1, streamed via norm fibers.

    For each first coordinate a, the second coordinate ranges over the fiber
    of norm 1 − |a|², so the walk is O(q³) rather than O(q⁴).
    """

    def __init__(self, field: FieldSpec):
        self.field = field

    def __iter__(self) -> Iterator[Vec2]:
        F = self.field
        fibers = F.norm_fibers
        for a in F.fq2_elements():
            for b in fibers.get(F.sub(F.one, a.norm()), ()):
                yield (a, b)

    def __len__(self) -> int:
        F = self.field
        fibers = F.norm_fibers
        return sum(len(fibers.get(F.sub(F.one, a.norm()), ())) for a in F.fq2_elements())


def unit_sphere(field: FieldSpec) -> UnitSphere:
    return UnitSphere(field)


def unitary_scalars(field: FieldSpec) -> tuple[Fq2Elem, ...]:
    """The q+1 elements u with |u|² = 1, in canonical order."""
    return field.norm_fibers[field.one]


@dataclass
class DensityMap:
    field: FieldSpec
    counts: dict  # Fq2Elem -> |S_z|, only nonzero entries

    def __getitem__(self, z: Fq2Elem) -> int:
        return self.counts.get(z, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> frozenset:
        return frozenset(self.counts)

    def transformed(self, rho: Fq2Elem, tau: Fq2Elem) -> "DensityMap":
        """Push counts forward along z -> rho·z + tau (rho nonzero)."""
        return DensityMap(self.field, {rho * z + tau: c for z, c in self.counts.items()})

    def __eq__(self, other):
        return isinstance(other, DensityMap) and self.counts == other.counts

    def sorted_items(self) -> list[tuple[Fq2Elem, int]]:
        return sorted(self.counts.items(), key=lambda kv: kv[0].key())


@dataclass
class NumericalRange:
    points: frozenset
    density: DensityMap
    matrix: Mat2


def _image_kernel(A: Mat2):
    """Closure computing ⟨Av, v⟩ on raw (re, im) ints, avoiding object churn."""
    F = A.field
    add, mul, al = F.add, F.mul, F.alpha
    (a11, a12), (a21, a22) = [[(x.re, x.im) for x in row] for row in A.entries]

    def m2(x, y):
        # (x0 + βx1)(y0 + βy1)
        return (add(mul(x[0], y[0]), mul(al, mul(x[1], y[1]))), add(mul(x[0], y[1]), mul(x[1], y[0])))

    def a2(x, y):
        return (add(x[0], y[0]), add(x[1], y[1]))

    def image(a, b):
        # v*Av = ā(a11·a + a12·b) + b̄(a21·a + a22·b)
        ca = (a[0], F.neg(a[1]))
        cb = (b[0], F.neg(b[1]))
        return a2(m2(ca, a2(m2(a11, a), m2(a12, b))), m2(cb, a2(m2(a21, a), m2(a22, b))))

    return image


def density_map(A: Mat2) -> DensityMap:
    """counts[z] = #{v : ⟨v, v⟩ = 1, ⟨Av, v⟩ = z}, by exhaustive enumeration."""
    F = A.field
    image = _image_kernel(A)
    fibers = {n: [(z.re, z.im) for z in zs] for n, zs in F.norm_fibers.items()}
    raw: Counter = Counter()
    for n_a, firsts in fibers.items():
        seconds = fibers.get(F.sub(F.one, n_a), ())
        for a in firsts:
            for b in seconds:
                raw[image(a, b)] += 1
    return DensityMap(F, {F.elem(re, im): c for (re, im), c in raw.items()})


def numerical_range(A: Mat2) -> NumericalRange:
    d = density_map(A)
    return NumericalRange(d.support(), d, A)


def quotient_density(d: DensityMap) -> dict:
    """|S_z / U| = |S_z| / (q + 1) for every z in the support."""
    q1 = d.field.q + 1
    out = {}
    for z, c in d.counts.items():
        if c % q1:
            raise NotOrbitAligned(f"|S_z| = {c} at z = {z!r} is not a multiple of {q1}")
        out[z] = c // q1
    return out


def image_of(A: Mat2, v: Vec2) -> Fq2Elem:
    """⟨Av, v⟩ through the object API (used as a cross-check of the kernel)."""
    w = A @ v
    return w[0] * v[0].conj() + w[1] * v[1].conj()
