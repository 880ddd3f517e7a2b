import json

import pytest

from ffnr import verify
from ffnr.errors import DegenerateZeta, SingularInput, WrongClass
from ffnr.field import make_field
from ffnr.linalg import Mat2

F7 = make_field(7, alpha=6)


def test_boundary_inclusion_examples():
    r = verify.check_boundary_inclusion(Mat2.of(F7, [[1, 1], [0, 0]]))
    assert r.passed and r.details["curve_points"] == 8
    F3 = make_field(3)
    assert verify.check_boundary_inclusion(Mat2.of(F3, [[0, 1], [0, 0]])).passed
    with pytest.raises(SingularInput):
        verify.check_boundary_inclusion(Mat2.of(F7, [[1, "4+5B"], [0, 0]]))


def test_scaling_decomposition_examples():
    r = verify.check_scaling_decomposition(F7.embed(1))
    assert r.passed and r.details["range_size"] == 25
    assert sorted(r.details["member_sizes"].values()) == [1, 8, 8, 8]
    assert verify.check_scaling_decomposition(make_field(3).embed(1)).passed
    with pytest.raises(DegenerateZeta):
        verify.check_scaling_decomposition(F7.parse2("4+5B"))


def test_density_examples():
    r = verify.check_density(Mat2.of(F7, [[1, 1], [0, 0]]))
    assert r.passed and r.details == {"on_curve": 8, "off_curve": 17}
    F5 = make_field(5)
    assert verify.check_density(Mat2.of(F5, [[0, 1], [0, 0]])).passed


def test_density_failure_has_witness(monkeypatch):
    A = Mat2.of(F7, [[0, 1], [0, 0]])
    monkeypatch.setattr(verify, "_density", lambda M: verify.numrange.DensityMap(F7, {F7.embed(0): 8}))
    r = verify.check_density(A)
    assert not r.passed
    assert r.witness["failures"][0] == {"z": "0+0*B", "count": 8, "expected": 16, "on_curve": False}


def test_circle_case():
    for q, circles in [(3, 1), (5, 2), (7, 3)]:
        r = verify.check_circle_case(make_field(q))
        assert r.passed and r.details["circles"] == circles
        assert r.details["range_size"] == (q * q + 1) // 2


def test_exceptional():
    r = verify.check_exceptional(F7.parse2("4+5B"))
    assert r.passed and r.details == {"range_size": 42, "curve_points": 7}
    F3 = make_field(3)
    zeta = next(z for z in F3.fq2_elements() if z and z.norm() == F3.neg(1))
    assert verify.check_exceptional(zeta).passed
    with pytest.raises(WrongClass):
        verify.check_exceptional(F7.embed(1))


def test_reducible():
    for q in (3, 5, 7):
        assert verify.check_reducible(make_field(q)).passed


def test_scaling_index_membership():
    assert verify.check_scaling_index(F7.embed(1)).passed


# -- eigenvalue / singularity link ----------------------------------------------


def test_isotropy_clause_fails_off_base_field():
    """[[1, 2], [0, 0]] over Z_7[√−1]: H1 has eigenvalues 4±2β, both simple with
    F_A nonsingular at (1:0:−ε), yet both eigenvectors are isotropic."""
    cases = verify.eigen_singularity_cases(Mat2.of(F7, [[1, 2], [0, 0]]))
    assert len(cases) == 2
    for c in cases:
        assert c["eigenvalue"].im
        assert c["simple"] and c["nonsingular"] and c["isotropic"]


def test_equivalence_fails_for_isotropic_double_eigenvalue():
    """H1 − εI nonzero nilpotent: ε is a double eigenvalue but F_A stays nonsingular at (1:0:−ε)."""
    F3 = make_field(3)
    A = Mat2.of(F3, [[0, 0], ["1+B", "1+B"]])
    h1 = verify.linalg.hermitian_parts(A).h1
    assert h1 == Mat2.of(F3, [[0, "2+B"], ["2+2B", 1]])
    (c,) = verify.eigen_singularity_cases(A)
    assert not c["eigenvalue"].im
    assert not c["simple"] and c["isotropic"] and c["nonsingular"]
    assert verify.curve.is_nonsingular(verify.curve.base_form(A))
    # independent of the Gram matrix: for a quadratic form F(P + e) − F(P) − F(e) is ∂_e F(P)
    hp = verify.linalg.hermitian_parts(A)

    def F(x, y, t):
        return (hp.h1 * F3.elem(x) + hp.h2 * F3.elem(y)).shift(F3.elem(t)).det()

    P = (1, 0, F3.neg(c["eigenvalue"].re))
    assert F(*P) == F3.embed(0)
    partials = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        Pe = tuple(F3.add(a, b) for a, b in zip(P, e))
        partials.append(F(*Pe) - F(*P) - F(*e))
    assert any(partials)


def test_restricted_statement_holds_exhaustively_q3():
    F3 = make_field(3)
    elems = list(F3.fq2_elements())
    for i, a in enumerate(elems):
        for b in elems[i % 3 :: 3]:
            for c in elems[::2]:
                for d in elems[i % 2 :: 2]:
                    assert verify._eigen_restricted_failures(Mat2([[a, b], [c, d]])) == []


# -- sweep ----------------------------------------------------------------------


def test_empty_sweep():
    report = verify.sweep([])
    assert report.results == [] and report.passed
    assert json.loads(report.dumps())["results"] == []


def test_sweep_records_failures_with_witnesses():
    report = verify.sweep([3], seed=1)
    ids = {r.check_id for r in report.results}
    assert {"counting", "density", "exceptional", "reducible", "circle_case"} <= ids
    assert {"lemma_linearity", "lemma_eigen_singularity", "scaling_index_membership"} <= ids
    for r in report.results:
        if not r.passed:
            assert r.witness and r.witness["failures"]
    failing = {r.check_id for r in report.failures()}
    assert failing == {"lemma_eigen_singularity"}


def test_sweep_is_deterministic():
    a = verify.sweep([5], classes="sampled", seed=3, samples=30).dumps()
    b = verify.sweep([5], classes="sampled", seed=3, samples=30).dumps()
    assert a == b
    assert "timings" not in json.loads(a)


def test_report_schema():
    data = json.loads(verify.sweep([3], samples=10).dumps())
    assert set(data) >= {"seed", "fields", "results", "summary"}
    r = data["results"][0]
    assert set(r) >= {"check_id", "q", "passed", "witness"}
    keys = [(r["check_id"], r["q"], r["subject"]) for r in data["results"]]
    assert keys == sorted(keys)
    assert data["measurements"]["3"]["zeta_signatures"]["distinct_signatures"] == 2


def test_resolve_field_rejects_even():
    with pytest.raises(ValueError):
        verify.resolve_field(4)
    assert verify.resolve_field(9).k == 2
