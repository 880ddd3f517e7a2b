import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ffnr.canonical import ZetaClass, classify_zeta
from ffnr.curve import (
    ConicKind,
    TernaryQuadraticForm,
    affine_dual_points,
    affine_points,
    base_form,
    classify_conic,
    dual_form,
    is_nonsingular,
    normalize_point,
    projective_points,
    scaling_family,
    scaling_index_of_vector,
    scaling_value,
    singular_points,
    solvek_residual,
)
from ffnr.errors import DegenerateZeta, SingularForm
from ffnr.field import make_field
from ffnr.linalg import Mat2, hermitian_parts
from ffnr.numrange import image_of, numerical_range, unit_sphere

F7 = make_field(7, alpha=6)


def det_value(A, x, y, t):
    hp = hermitian_parts(A)
    F = A.field
    return (hp.h1 * F.elem(x) + hp.h2 * F.elem(y)).shift(F.elem(t)).det()


def gram(F, rows):
    return TernaryQuadraticForm(F, tuple(tuple(F.parse(c) for c in r) for r in rows))


def tangent_dual_points(form):
    """Reference dual: the lines rx + sy + t = 0 tangent at some smooth point, via gradients."""
    F = form.field
    out = set()
    for P in projective_points(F):
        if form(*P) == 0:
            g = form.apply(P)
            if g[2]:
                r, s, _ = normalize_point(F, g)
                out.add(F.elem(r, s))
    return frozenset(out)


def test_base_form_circle(F7):
    F = F7
    quarter = F.inv(4)
    form = base_form(Mat2.of(F, [[0, 1], [0, 0]]))
    expected = gram(F, [[F.neg(quarter), 0, 0], [0, F.inv(F.mul(4, F.alpha)), 0], [0, 0, 1]])
    assert form == expected


def test_base_form_one_zeta(F7):
    F = F7
    zeta = F.parse2("2+B")
    n = zeta.norm()
    form = base_form(Mat2.of(F, [[1, zeta], [0, 0]]))
    # xt + t² − ¼|ζ|²x² + (1/(4α))|ζ|²y²
    a = F.neg(F.mul(F.inv(4), n))
    b = F.mul(F.inv(F.mul(4, F.alpha)), n)
    assert form.gram == ((a, 0, F.half), (0, b, 0), (F.half, 0, 1))


def test_base_form_zero(F7):
    assert base_form(Mat2.zero(F7)).gram == ((0, 0, 0), (0, 0, 0), (0, 0, 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 48), min_size=4, max_size=4), st.integers(0, 342))
def test_base_form_agrees_with_determinant(entries, pt):
    A = Mat2([[F7.elem(e // 7, e % 7) for e in entries[:2]], [F7.elem(e // 7, e % 7) for e in entries[2:]]])
    x, y, t = pt // 49, (pt // 7) % 7, pt % 7
    assert det_value(A, x, y, t) == F7.embed(base_form(A)(x, y, t))


def test_singularity_examples(F7):
    assert not is_nonsingular(base_form(Mat2.of(F7, [[1, "4+5B"], [0, 0]])))
    assert is_nonsingular(base_form(Mat2.of(F7, [[0, 1], [0, 0]])))
    assert not is_nonsingular(base_form(Mat2.of(F7, [[1, 0], [0, 0]])))


def test_singular_points(F7):
    assert singular_points(base_form(Mat2.of(F7, [[1, 0], [0, 0]]))) == {(0, 1, 0)}
    assert singular_points(base_form(Mat2.of(F7, [[1, "4+5B"], [0, 0]]))) == {(F7.from_int(-2), 0, 1)}
    assert singular_points(base_form(Mat2.of(F7, [[1, 1], [0, 0]]))) == frozenset()


@pytest.mark.parametrize("q", [3, 5, 7])
def test_gram_determinant_matches_gradient_scan(q):
    F = make_field(q)
    for i, entries in enumerate(itertools.product(range(q), repeat=4)):
        if i % 7:
            continue
        A = Mat2([[F.elem(entries[0], entries[1]), F.elem(entries[2], 0)], [F.elem(0, entries[3]), F.elem(1, 0)]])
        form = base_form(A)
        assert is_nonsingular(form) == (not singular_points(form))


def test_dual_circle(F7):
    A = Mat2.of(F7, [[0, 1], [0, 0]])
    pts = affine_dual_points(A)
    quarter = F7.inv(4)
    assert pts == {z for z in F7.fq2_elements() if z.norm() == quarter}
    assert len(pts) == 8


def test_dual_general_zeta(F7):
    zeta = F7.parse2("2+B")
    n = zeta.norm()
    pts = affine_dual_points(Mat2.of(F7, [[1, zeta], [0, 0]]))

    def on(z):
        dx = F7.sub(z.re, F7.half)
        lhs = F7.sub(F7.div(F7.mul(dx, dx), F7.add(1, n)), F7.div(F7.mul(F7.alpha, F7.mul(z.im, z.im)), n))
        return lhs == F7.inv(4)

    assert pts == {z for z in F7.fq2_elements() if on(z)}


def test_unit_circle_self_dual(F7):
    form = gram(F7, [[1, 0, 0], [0, F7.neg(F7.alpha), 0], [0, 0, -1]])
    dual = dual_form(form)
    ratio = None
    for a, b in zip(itertools.chain(*dual.gram), itertools.chain(*form.gram)):
        if b:
            r = F7.div(a, b)
            assert ratio in (None, r)
            ratio = r
        else:
            assert a == 0


@pytest.mark.parametrize("rows", [[[1, 1], [0, 0]], [[0, 1], [0, 0]], [[1, "2+B"], [0, 0]], [[2, "B"], ["1+B", 3]]])
def test_adjugate_dual_matches_tangents(rows):
    A = Mat2.of(F7, rows)
    form = base_form(A)
    assert is_nonsingular(form)
    assert affine_dual_points(A) == tangent_dual_points(form)


def test_dual_of_singular_rejected(F7):
    with pytest.raises(SingularForm):
        dual_form(base_form(Mat2.zero(F7)))


def test_catalog_curves(F7):
    assert affine_dual_points(Mat2.of(F7, [[1, "4+5B"], [0, 0]])) == {F7.elem(4, y) for y in range(7)}
    assert affine_dual_points(Mat2.zero(F7)) == {F7.embed(0)}
    assert affine_dual_points(Mat2.of(F7, [[1, 0], [0, 0]])) == {F7.elem(x, 0) for x in range(7)}
    # transported through ρ, τ
    assert affine_dual_points(Mat2.of(F7, [[2, 0], [0, 2]])) == {F7.embed(2)}


def test_classify_conic(F7):
    assert F7.is_square(F7.mul(2, 1))  # (1+|ζ|²)|ζ|² = 2 is a square mod 7
    report = classify_conic(dual_form(base_form(Mat2.of(F7, [[1, 1], [0, 0]]))))
    assert report.kind is ConicKind.ELLIPSE and report.affine_count == 8
    hyper = next(z for z in F7.fq2_elements() if z and classify_zeta(z) is ZetaClass.HYPERBOLA)
    report = classify_conic(dual_form(base_form(Mat2.of(F7, [[1, hyper], [0, 0]]))))
    assert report.kind is ConicKind.HYPERBOLA and report.affine_count == 6
    with pytest.raises(SingularForm):
        classify_conic(gram(F7, [[1, 0, 0], [0, F7.neg(F7.alpha), 0], [0, 0, 0]]))


@pytest.mark.parametrize("q", [3, 5, 7])
def test_remark_point_count(q):
    F = make_field(q)
    for z in F.fq2_elements():
        if not z or z.norm() == F.neg(1):
            continue
        form = dual_form(base_form(Mat2.of(F, [[1, z], [0, 0]])))
        report = classify_conic(form)
        assert report.affine_count + report.infinite_count == q + 1
        assert len(affine_points(form)) == report.affine_count


def test_scaling_family_ellipse(F7):
    fam = scaling_family(F7.embed(1))
    assert len(fam.m_values) == 4
    assert fam.members[0] == {F7.elem(F7.half, 0)}
    assert fam.members[F7.one] == affine_dual_points(Mat2.of(F7, [[1, 1], [0, 0]]))
    assert sorted(len(s) for s in fam.members.values()) == [1, 8, 8, 8]


def test_scaling_family_hyperbola(F7):
    hyper = next(z for z in F7.fq2_elements() if z and classify_zeta(z) is ZetaClass.HYPERBOLA)
    fam = scaling_family(hyper)
    assert 0 not in fam.m_values and 1 in fam.m_values
    assert [len(fam.members[m]) for m in fam.m_values] == [6, 6, 6, 6]


def test_scaling_family_rejects_degenerate(F7):
    with pytest.raises(DegenerateZeta):
        scaling_family(F7.parse2("4+5B"))


def test_scaling_index_basis_vectors(F7):
    zeta = F7.parse2("1+B")
    one, zero = F7.embed(1), F7.embed(0)
    A = Mat2.of(F7, [[1, zeta], [0, 0]])
    assert image_of(A, (one, zero)) == one
    m = scaling_index_of_vector((one, zero), zeta)
    assert scaling_value(one, zeta) == m
    assert image_of(A, (zero, one)) == zero
    assert scaling_value(zero, zeta) == scaling_index_of_vector((zero, one), zeta)


def test_scaling_index_exhaustive(F7):
    zeta = F7.parse2("1+B")
    A = Mat2.of(F7, [[1, zeta], [0, 0]])
    m_values = set(scaling_family(zeta).m_values)
    for v in unit_sphere(F7):
        z = image_of(A, v)
        m = scaling_index_of_vector(v, zeta)
        assert m in m_values
        assert scaling_value(z, zeta) == m
        assert solvek_residual(z, v[0].norm(), zeta) == 0


def test_family_tiles_range_prime_power():
    F = make_field(3, 2)
    for z in F.fq2_elements():
        if not z or classify_zeta(z) not in (ZetaClass.ELLIPSE, ZetaClass.HYPERBOLA):
            continue
        fam = scaling_family(z)
        union = frozenset().union(*fam.members.values())
        assert union == numerical_range(Mat2.of(F, [[1, z], [0, 0]])).points
        break
