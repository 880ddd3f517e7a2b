"""Theorem harness: every checkable claim about W(A) and its boundary generating
curve, run against exhaustive enumeration.

Each check returns a :class:`CheckResult`; failures always carry a witness.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from . import curve, linalg, numrange
from .canonical import ClassTag, EquivClass, ZetaClass, class_enumeration, classify_zeta
from .errors import (
    DegenerateZeta,
    FFNRError,
    SingularInput,
    UnclassifiedSingularForm,
    WrongClass,
)
from .field import FieldSpec, Fq2Elem, make_field, prime_power
from .linalg import Mat2

DEFAULT_SAMPLES = 200
DEFAULT_CLASS_SAMPLES = 12


@dataclass
class CheckResult:
    check_id: str
    field: tuple  # (p, k, alpha as text)
    subject: str
    passed: bool
    details: dict = dc_field(default_factory=dict)
    witness: Optional[dict] = None

    @property
    def q(self) -> int:
        return self.field[0] ** self.field[1]

    def to_json(self) -> dict:
        p, k, alpha = self.field
        return {
            "check_id": self.check_id,
            "q": self.q,
            "p": p,
            "k": k,
            "alpha": alpha,
            "subject": self.subject,
            "passed": self.passed,
            "details": self.details,
            "witness": self.witness,
        }


@dataclass
class SweepReport:
    seed: int
    fields: list
    results: list
    measurements: dict = dc_field(default_factory=dict)  # q -> observations, not pass/fail
    timings: dict = dc_field(default_factory=dict)  # q -> seconds, never serialized

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def summary(self) -> dict:
        out: dict = {}
        for r in self.results:
            s = out.setdefault(r.check_id, {"passed": 0, "failed": 0})
            s["passed" if r.passed else "failed"] += 1
        return dict(sorted(out.items()))

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "fields": self.fields,
            "results": [r.to_json() for r in self.results],
            "summary": self.summary(),
            "measurements": {str(q): m for q, m in sorted(self.measurements.items())},
            "passed": self.passed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


# -- small helpers ------------------------------------------------------------------


def _fid(F: FieldSpec) -> tuple:
    return (F.p, F.k, F.format(F.alpha))


def _z(z: Fq2Elem) -> str:
    return z.field.format2(z)


def _mat(A: Mat2) -> str:
    return "[" + ",".join("[" + ",".join(_z(x) for x in row) + "]" for row in A.entries) + "]"


def _pts(points: Iterable[Fq2Elem], limit: int = 8) -> list:
    return [_z(z) for z in sorted(points)[:limit]]


@lru_cache(maxsize=8192)
def _density(A: Mat2) -> numrange.DensityMap:
    return numrange.density_map(A)


@lru_cache(maxsize=8192)
def _curve(A: Mat2) -> frozenset:
    return curve.affine_dual_points(A)


def _nonsingular(A: Mat2) -> bool:
    return curve.is_nonsingular(curve.base_form(A))


def _eigen_hypothesis(A: Mat2) -> bool:
    return any(not e.isotropic for e in linalg.eigen_data(A))


def _result(check_id, F, subject, failures: list, details: dict) -> CheckResult:
    witness = {"failures": failures[:5], "n_failures": len(failures)} if failures else None
    return CheckResult(check_id, _fid(F), subject, not failures, details, witness)


def all_unitaries(F: FieldSpec) -> list[Mat2]:
    """Every 2×2 unitary: first column any unit vector, second a unit multiple of its complement."""
    out = []
    for v in numrange.unit_sphere(F):
        base = linalg.unitary_from_unit_vector(v)
        for u in numrange.unitary_scalars(F):
            out.append(Mat2.from_columns(v, (base[0, 1] * u, base[1, 1] * u)))
    return out


def random_unitary(F: FieldSpec, rng: random.Random) -> Mat2:
    sphere = _sphere_list(F)
    v = sphere[rng.randrange(len(sphere))]
    u = rng.choice(numrange.unitary_scalars(F))
    base = linalg.unitary_from_unit_vector(v)
    return Mat2.from_columns(v, (base[0, 1] * u, base[1, 1] * u))


@lru_cache(maxsize=64)
def _sphere_list(F: FieldSpec) -> list:
    return list(numrange.unit_sphere(F))


def _random_elem(F: FieldSpec, rng: random.Random, nonzero: bool = False) -> Fq2Elem:
    while True:
        z = F.elem(rng.randrange(F.q), rng.randrange(F.q))
        if z or not nonzero:
            return z


def _random_matrix(F: FieldSpec, rng: random.Random) -> Mat2:
    return Mat2([[_random_elem(F, rng) for _ in range(2)] for _ in range(2)])


# -- individual checks --------------------------------------------------------------


def check_counting(F: FieldSpec) -> CheckResult:
    q = F.q
    sphere = sum(1 for _ in numrange.unit_sphere(F))
    units = numrange.unitary_scalars(F)
    unit_set = set(units)
    closed = all(u * w in unit_set for u in units for w in units) and all(u.conj() in unit_set for u in units)
    failures = []
    if sphere != q**3 - q:
        failures.append({"sphere": sphere, "expected": q**3 - q})
    if len(units) != q + 1:
        failures.append({"unitary_scalars": len(units), "expected": q + 1})
    if not closed:
        failures.append({"unitary_scalars_closed": False})
    return _result("counting", F, "field", failures, {"sphere": sphere, "unitary_scalars": len(units)})


def check_boundary_inclusion(A: Mat2) -> CheckResult:
    """Γ^∧ ⊆ W(A) for nonsingular F_A."""
    F = A.field
    if not _nonsingular(A):
        raise SingularInput("F_A is singular; use check_exceptional / check_reducible")
    pts = _curve(A)
    W = _density(A).support()
    missing = pts - W
    failures = [{"z": _z(z), "count": 0} for z in sorted(missing)]
    return _result(
        "boundary_inclusion", F, _mat(A), failures, {"curve_points": len(pts), "range_points": len(W)}
    )


def check_density(A: Mat2) -> CheckResult:
    """|S_z| = q+1 on the curve and 2q+2 elsewhere in W(A)."""
    F = A.field
    if not _nonsingular(A) or not _eigen_hypothesis(A):
        raise SingularInput("density theorem needs nonsingular F_A and a non-isotropic eigenvector")
    q = F.q
    d = _density(A)
    pts = _curve(A)
    failures = []
    for z, c in d.sorted_items():
        want = q + 1 if z in pts else 2 * q + 2
        if c != want:
            failures.append({"z": _z(z), "count": c, "expected": want, "on_curve": z in pts})
    for z in sorted(pts - d.support()):
        failures.append({"z": _z(z), "count": 0, "expected": q + 1, "on_curve": True})
    on = sum(1 for z in d.counts if z in pts)
    return _result("density", F, _mat(A), failures, {"on_curve": on, "off_curve": len(d.counts) - on})


def check_scaling_decomposition(zeta: Fq2Elem, field: Optional[FieldSpec] = None) -> CheckResult:
    """W([[1, ζ], [0, 0]]) is the disjoint union of the (q+1)/2 conics C_m."""
    F = field or zeta.field
    kind = classify_zeta(zeta)
    if kind not in (ZetaClass.ELLIPSE, ZetaClass.HYPERBOLA):
        raise DegenerateZeta(f"zeta={_z(zeta)} is {kind.value}")
    q = F.q
    A = Mat2.of(F, [[1, zeta], [0, 0]])
    W = _density(A).support()
    fam = curve.scaling_family(zeta, F)
    failures = []
    if len(fam.m_values) != (q + 1) // 2:
        failures.append({"m_values": len(fam.m_values), "expected": (q + 1) // 2})
    seen: set = set()
    for m, pts in fam.members.items():
        if seen & pts:
            failures.append({"overlap_at_m": F.format(m), "points": _pts(seen & pts)})
        seen |= pts
    if seen != W:
        failures.append({"union_minus_W": _pts(seen - W), "W_minus_union": _pts(W - seen)})
    sizes = {F.format(m): len(pts) for m, pts in fam.members.items()}
    for m, pts in fam.members.items():
        if kind is ZetaClass.ELLIPSE:
            want = 1 if m == 0 else q + 1
        else:
            want = q - 1
        if len(pts) != want:
            failures.append({"m": F.format(m), "size": len(pts), "expected": want})
    if kind is ZetaClass.ELLIPSE and 0 not in fam.members:
        failures.append({"missing_m": "0"})
    if kind is ZetaClass.HYPERBOLA and 0 in fam.members:
        failures.append({"unexpected_m": "0"})
    if fam.members.get(F.one) != _curve(A):
        failures.append({"C_1_differs_from_curve": True})
    want_w = (q * q + 1) // 2 if kind is ZetaClass.ELLIPSE else (q * q - 1) // 2
    if len(W) != want_w:
        failures.append({"range_size": len(W), "expected": want_w})
    return _result(
        "scaling_decomposition",
        F,
        EquivClass(ClassTag.ONE_ZETA, zeta).label(),
        failures,
        {"kind": kind.value, "range_size": len(W), "member_sizes": sizes},
    )


def check_scaling_index(zeta: Fq2Elem, field: Optional[FieldSpec] = None) -> CheckResult:
    """For every unit vector, the m from the (k, j) formulas matches the C_m its image lies on."""
    F = field or zeta.field
    A = Mat2.of(F, [[1, zeta], [0, 0]])
    m_values = set(curve.scaling_family(zeta, F).m_values)
    failures = []
    n = 0
    for v in numrange.unit_sphere(F):
        n += 1
        m = curve.scaling_index_of_vector(v, zeta)
        z = numrange.image_of(A, v)
        problems = {}
        if curve.scaling_value(z, zeta) != m:
            problems["on_C_m"] = False
        if m not in m_values:
            problems["m_in_family"] = False
        if curve.solvek_residual(z, v[0].norm(), zeta) != 0:
            problems["solvek"] = False
        if problems:
            failures.append({"v": [_z(v[0]), _z(v[1])], "z": _z(z), "m": F.format(m), **problems})
    return _result(
        "scaling_index_membership", F, EquivClass(ClassTag.ONE_ZETA, zeta).label(), failures, {"vectors": n}
    )


def check_circle_case(F: FieldSpec) -> CheckResult:
    """A = [[0, 1], [0, 0]]: W is the origin plus (q−1)/2 circles |z|² = k(1−k)."""
    q = F.q
    A = Mat2.of(F, [[0, 1], [0, 0]])
    d = _density(A)
    W = d.support()
    failures = []
    quarter = F.inv(F.from_int(4))
    circle = frozenset(F.norm_fibers[quarter])
    pts = _curve(A)
    if pts != circle:
        failures.append({"curve_is_quarter_circle": False, "curve": _pts(pts)})
    for v in numrange.unit_sphere(F):
        k = v[0].norm()
        z = numrange.image_of(A, v)
        if z.norm() != F.mul(k, F.sub(F.one, k)):
            failures.append({"v": [_z(v[0]), _z(v[1])], "z": _z(z), "k": F.format(k)})
            break
    radii = {F.mul(k, F.sub(F.one, k)) for k in F.elements()} - {0}
    expected = {F.embed(0)}
    for r in radii:
        expected |= set(F.norm_fibers[r])
    if len(radii) != (q - 1) // 2:
        failures.append({"circles": len(radii), "expected": (q - 1) // 2})
    if W != expected:
        failures.append({"W_minus_circles": _pts(W - expected), "circles_minus_W": _pts(expected - W)})
    if len(W) != (q * q + 1) // 2:
        failures.append({"range_size": len(W), "expected": (q * q + 1) // 2})
    return _result(
        "circle_case", F, "Nilpotent01", failures,
        {"range_size": len(W), "circles": len(radii), "curve_points": len(pts)},
    )


def check_exceptional(zeta: Fq2Elem, field: Optional[FieldSpec] = None) -> CheckResult:
    """|ζ|² = −1: W(A) and Γ^∧ (the line x = ½) partition F_{q²}; |S_z/U| = 1 on W."""
    F = field or zeta.field
    if zeta.norm() != F.neg(F.one):
        raise WrongClass(f"|zeta|² = {F.format(zeta.norm())}, expected -1")
    q = F.q
    A = Mat2.of(F, [[1, zeta], [0, 0]])
    d = _density(A)
    W = d.support()
    pts = _curve(A)
    failures = []
    if curve.is_nonsingular(curve.base_form(A)):
        failures.append({"base_form_singular": False})
    if W & pts:
        failures.append({"intersection": _pts(W & pts)})
    if len(W | pts) != q * q:
        failures.append({"union_size": len(W | pts), "expected": q * q})
    bad = [(z, c) for z, c in d.sorted_items() if c != q + 1]
    if bad:
        failures.append({"z": _z(bad[0][0]), "count": bad[0][1], "expected": q + 1})
    if len(W) != q * q - q:
        failures.append({"range_size": len(W), "expected": q * q - q})
    # every rotation-scaling has only isotropic eigenvectors in its Hermitian part
    for rho in F.fq2_elements():
        if not rho:
            continue
        h1 = linalg.hermitian_parts(A * rho).h1
        if any(not e.isotropic for e in linalg.eigen_data(h1)):
            failures.append({"rotation": _z(rho), "non_isotropic_eigenvector": True})
            break
    return _result(
        "exceptional", F, EquivClass(ClassTag.ONE_ZETA, zeta).label(), failures,
        {"range_size": len(W), "curve_points": len(pts)},
    )


def check_reducible(F: FieldSpec) -> CheckResult:
    """diag(1, 0): W = F_q with quotient density q+1 except 1 at 0, 1.  Zero matrix: q(q−1) at 0."""
    q = F.q
    failures = []
    D = Mat2.of(F, [[1, 0], [0, 0]])
    quot = numrange.quotient_density(_density(D))
    fq = {F.elem(x, 0) for x in F.elements()}
    if set(quot) != fq:
        failures.append({"diag_range_is_Fq": False, "range": _pts(quot)})
    for z, c in sorted(quot.items()):
        want = 1 if z in (F.embed(0), F.embed(1)) else q + 1
        if c != want:
            failures.append({"matrix": "diag(1,0)", "z": _z(z), "quotient": c, "expected": want})
    if _curve(D) != frozenset(fq):
        failures.append({"diag_curve_is_real_line": False})
    Z = Mat2.zero(F)
    zq = numrange.quotient_density(_density(Z))
    if zq != {F.embed(0): q * (q - 1)}:
        failures.append({"matrix": "zero", "quotient": {_z(z): c for z, c in zq.items()}, "expected": q * (q - 1)})
    if _curve(Z) != frozenset([F.embed(0)]):
        failures.append({"zero_curve_is_origin": False})
    return _result("reducible", F, "Diag10+Zero", failures, {"diag_range": len(quot)})


def _range_size_formula(F: FieldSpec, cls: EquivClass) -> int:
    q = F.q
    if cls.tag is ClassTag.ZERO:
        return 1
    if cls.tag is ClassTag.DIAG10:
        return q
    if cls.tag is ClassTag.NILPOTENT01:
        return (q * q + 1) // 2
    kind = classify_zeta(cls.zeta)
    return {
        ZetaClass.ELLIPSE: (q * q + 1) // 2,
        ZetaClass.HYPERBOLA: (q * q - 1) // 2,
        ZetaClass.SINGULAR_NORM_MINUS_ONE: q * q - q,
    }[kind]


def check_range_sizes(F: FieldSpec, classes: Sequence[EquivClass]) -> CheckResult:
    """Sum over classes of |W| matches the per-theorem formulas."""
    total, expected, failures = 0, 0, []
    for cls in classes:
        size = len(_density(cls.representative(F)).support())
        want = _range_size_formula(F, cls)
        total += size
        expected += want
        if size != want:
            failures.append({"class": cls.label(), "range_size": size, "expected": want})
    return _result("range_size_formulas", F, f"{len(classes)} classes", failures, {"total": total, "expected": expected})


# -- lemma battery ------------------------------------------------------------------


def _curve_or_none(A: Mat2):
    try:
        return _curve(A)
    except UnclassifiedSingularForm:
        return None


def _unitary_invariance_failures(A: Mat2, U: Mat2) -> list:
    B = U.ct() @ A @ U
    out = []
    if _density(B) != _density(A):
        out.append({"A": _mat(A), "U": _mat(U), "what": "density"})
    if curve.base_form(B) != curve.base_form(A):
        out.append({"A": _mat(A), "U": _mat(U), "what": "base_form"})
    ca, cb = _curve_or_none(A), _curve_or_none(B)
    if ca is not None and cb is not None and ca != cb:
        out.append({"A": _mat(A), "U": _mat(U), "what": "curve"})
    return out


def _linearity_failures(A: Mat2, rho: Fq2Elem, tau: Fq2Elem) -> list:
    B = (A * rho).shift(tau)
    if _density(B) != _density(A).transformed(rho, tau):
        return [{"A": _mat(A), "rho": _z(rho), "tau": _z(tau)}]
    return []


def _curve_scaling_failures(A: Mat2, rho: Fq2Elem) -> list:
    B = A * rho
    out = []
    if _nonsingular(A) != _nonsingular(B):
        out.append({"A": _mat(A), "rho": _z(rho), "what": "nonsingularity"})
    ca, cb = _curve_or_none(A), _curve_or_none(B)
    if ca is not None and cb is not None and cb != frozenset(rho * z for z in ca):
        out.append({"A": _mat(A), "rho": _z(rho), "what": "curve"})
    return out


def _curve_translation_failures(A: Mat2, tau: Fq2Elem) -> list:
    ca, cb = _curve_or_none(A), _curve_or_none(A.shift(tau))
    if ca is not None and cb is not None and cb != frozenset(z + tau for z in ca):
        return [{"A": _mat(A), "tau": _z(tau)}]
    return []


def eigen_singularity_cases(A: Mat2) -> list[dict]:
    """One record per eigenvalue ε of H1 (in F_{q²}): multiplicity, isotropy and
    whether F_A is nonsingular at (1:0:−ε) (gradient computed over F_{q²})."""
    F = A.field
    form = curve.base_form(A)
    h1 = linalg.hermitian_parts(A).h1
    out = []
    for e in linalg.eigen_data(h1):
        P = (F.embed(1), F.embed(0), -e.eigenvalue)
        out.append({
            "eigenvalue": e.eigenvalue,
            "simple": e.algebraic_multiplicity == 1,
            "nonsingular": any(form.apply_ext(P)),
            "isotropic": e.isotropic,
        })
    return out


def _eigen_literal_failures(A: Mat2) -> list:
    """Nonsingular at (1:0:−ε) iff ε simple; and nonsingular ⇒ eigenvector non-isotropic."""
    out = []
    for c in eigen_singularity_cases(A):
        bad = []
        if c["nonsingular"] != c["simple"]:
            bad.append("iff")
        if c["nonsingular"] and c["isotropic"]:
            bad.append("isotropy")
        if bad:
            out.append({"A": _mat(A), "eigenvalue": _z(c["eigenvalue"]), "violates": bad,
                        "simple": c["simple"], "isotropic": c["isotropic"]})
    return out


def _eigen_restricted_failures(A: Mat2) -> list:
    """The part that survives over F_q, for ε ∈ F_q: simple ⇒ nonsingular and
    non-isotropic; and for a non-isotropic eigenvector, nonsingular ⇔ simple."""
    out = []
    for c in eigen_singularity_cases(A):
        if c["eigenvalue"].im:
            continue
        ok = True
        if c["simple"] and (not c["nonsingular"] or c["isotropic"]):
            ok = False
        if not c["isotropic"] and c["nonsingular"] != c["simple"]:
            ok = False
        if not ok:
            out.append({"A": _mat(A), "eigenvalue": _z(c["eigenvalue"])})
    return out


LEMMA_IDS = (
    "lemma_unitary_invariance",
    "lemma_linearity",
    "lemma_curve_scaling",
    "lemma_curve_translation",
    "lemma_eigen_singularity",
    "lemma_eigen_singularity_restricted",
)


def check_algebraic_lemmas(
    F: FieldSpec,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    exhaustive: Optional[bool] = None,
) -> list[CheckResult]:
    """Randomized (or, at q = 3, exhaustive) battery over the algebraic lemmas.

    Exhaustive mode runs every class representative against every unitary and
    every (ρ ≠ 0, τ).  Returns one CheckResult per lemma.
    """
    if exhaustive is None:
        exhaustive = F.q == 3
    fails: dict[str, list] = {k: [] for k in LEMMA_IDS}
    cases = dict.fromkeys(LEMMA_IDS, 0)

    def run(A, U, rho, tau):
        fails["lemma_unitary_invariance"] += _unitary_invariance_failures(A, U)
        fails["lemma_linearity"] += _linearity_failures(A, rho, tau)
        fails["lemma_curve_scaling"] += _curve_scaling_failures(A, rho)
        fails["lemma_curve_translation"] += _curve_translation_failures(A, tau)
        for key in LEMMA_IDS:
            cases[key] += 1

    if exhaustive:
        reps = [c.representative(F) for c in class_enumeration(F)]
        unitaries = all_unitaries(F)
        scalars = [z for z in F.fq2_elements()]
        for R in reps:
            for U in unitaries:
                fails["lemma_unitary_invariance"] += _unitary_invariance_failures(R, U)
                cases["lemma_unitary_invariance"] += 1
            for rho in scalars:
                if not rho:
                    continue
                fails["lemma_curve_scaling"] += _curve_scaling_failures(R, rho)
                cases["lemma_curve_scaling"] += 1
                for tau in scalars:
                    fails["lemma_linearity"] += _linearity_failures(R, rho, tau)
                    cases["lemma_linearity"] += 1
                    M = (R * rho).shift(tau)
                    fails["lemma_eigen_singularity"] += _eigen_literal_failures(M)
                    fails["lemma_eigen_singularity_restricted"] += _eigen_restricted_failures(M)
                    cases["lemma_eigen_singularity"] += 1
                    cases["lemma_eigen_singularity_restricted"] += 1
            for tau in scalars:
                fails["lemma_curve_translation"] += _curve_translation_failures(R, tau)
                cases["lemma_curve_translation"] += 1
    else:
        rng = random.Random(seed * 1_000_003 + F.q)
        for _ in range(samples):
            A = _random_matrix(F, rng)
            U = random_unitary(F, rng)
            rho = _random_elem(F, rng, nonzero=True)
            tau = _random_elem(F, rng)
            run(A, U, rho, tau)
            fails["lemma_eigen_singularity"] += _eigen_literal_failures(A)
            fails["lemma_eigen_singularity_restricted"] += _eigen_restricted_failures(A)

    # the equivalence violations are the more informative witnesses
    fails["lemma_eigen_singularity"].sort(key=lambda f: "iff" not in f["violates"])
    mode = "exhaustive" if exhaustive else f"sampled(n={samples})"
    out = []
    for key in LEMMA_IDS:
        details = {"cases": cases[key]}
        if key == "lemma_eigen_singularity":
            for kind in ("iff", "isotropy"):
                details[f"violations_{kind}"] = sum(kind in f["violates"] for f in fails[key])
        out.append(_result(key, F, mode, fails[key], details))
    return out


def zeta_signatures(F: FieldSpec) -> dict:
    """How many distinct (W, density) signatures the OneZeta classes produce.

    [[1, ζ], [0, 0]] and [[1, uζ], [0, 0]] are unitarily similar via diag(1, u)
    for any unitary scalar u, so signatures can depend on |ζ|² at most.
    """
    groups: dict = {}
    for cls in class_enumeration(F)[3:]:
        d = _density(cls.representative(F))
        key = tuple(sorted((z.key(), c) for z, c in d.counts.items()))
        groups.setdefault(key, []).append(cls.zeta)
    norms_per_group = sorted(len({z.norm() for z in zs}) for zs in groups.values())
    return {
        "one_zeta_classes": sum(len(zs) for zs in groups.values()),
        "distinct_signatures": len(groups),
        "distinct_norms": len({z.norm() for zs in groups.values() for z in zs}),
        "max_norms_per_signature": norms_per_group[-1] if norms_per_group else 0,
    }


# -- sweep --------------------------------------------------------------------------------


FieldArg = Union[FieldSpec, int, tuple]


def resolve_field(arg: FieldArg) -> FieldSpec:
    """Accept a FieldSpec, a q, or a (p, k[, alpha]) tuple."""
    if isinstance(arg, FieldSpec):
        return arg
    if isinstance(arg, int):
        pk = prime_power(arg)
        if pk is None or arg % 2 == 0:
            raise ValueError(f"q={arg} is not an odd prime power")
        return make_field(*pk)
    p, k, *rest = arg
    return make_field(p, k, rest[0] if rest else None)


def _select_classes(F: FieldSpec, mode: str, rng: random.Random, n: int) -> list[EquivClass]:
    classes = class_enumeration(F)
    if mode == "all" or len(classes) <= n + 3:
        return classes
    zetas = classes[3:]
    picked = sorted(rng.sample(range(len(zetas)), n))
    return classes[:3] + [zetas[i] for i in picked]


def _witness_zetas(F: FieldSpec) -> list[Fq2Elem]:
    """ζ = 1 plus the first ellipse and first hyperbola ζ (canonical order)."""
    out = [F.embed(1)]
    for kind in (ZetaClass.ELLIPSE, ZetaClass.HYPERBOLA):
        for z in F.fq2_elements():
            if z and classify_zeta(z) is kind:
                if z not in out:
                    out.append(z)
                break
    return out


def field_checks(
    F: FieldSpec,
    classes: str = "all",
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    class_samples: int = DEFAULT_CLASS_SAMPLES,
) -> list[CheckResult]:
    """Every registered check for one field."""
    rng = random.Random(seed * 7919 + F.q)
    results = [
        check_counting(F),
        check_circle_case(F),
        check_reducible(F),
    ]
    chosen = _select_classes(F, classes, rng, class_samples)
    results.append(check_range_sizes(F, chosen))
    for cls in chosen:
        A = cls.representative(F)
        if cls.tag is ClassTag.ONE_ZETA:
            kind = classify_zeta(cls.zeta)
            if kind is ZetaClass.SINGULAR_NORM_MINUS_ONE:
                results.append(_guarded("exceptional", check_exceptional, F, cls.label(), cls.zeta, F))
                continue
            results.append(_guarded("scaling_decomposition", check_scaling_decomposition, F, cls.label(), cls.zeta, F))
        if _nonsingular(A):
            results.append(_guarded("boundary_inclusion", check_boundary_inclusion, F, cls.label(), A))
            if _eigen_hypothesis(A):
                results.append(_guarded("density", check_density, F, cls.label(), A))
    for zeta in _witness_zetas(F):
        results.append(_guarded("scaling_index_membership", check_scaling_index, F, f"OneZeta({_z(zeta)})", zeta, F))
    results.extend(check_algebraic_lemmas(F, samples=samples, seed=seed))
    return results


def _guarded(check_id: str, fn, F: FieldSpec, subject: str, *args) -> CheckResult:
    """Run a check; a raised library error becomes a failed result instead of aborting."""
    try:
        return fn(*args)
    except FFNRError as exc:
        return CheckResult(check_id, _fid(F), subject, False, {}, {"error": f"{type(exc).__name__}: {exc}"})


def sweep(
    fields: Sequence[FieldArg],
    classes: str = "all",
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    class_samples: int = DEFAULT_CLASS_SAMPLES,
) -> SweepReport:
    results: list[CheckResult] = []
    timings, measurements = {}, {}
    described = []
    for arg in fields:
        F = resolve_field(arg)
        described.append({"p": F.p, "k": F.k, "q": F.q, "alpha": F.format(F.alpha)})
        t0 = time.perf_counter()
        results.extend(field_checks(F, classes, seed, samples, class_samples))
        if classes == "all":
            measurements[F.q] = {"zeta_signatures": zeta_signatures(F)}
        timings[F.q] = time.perf_counter() - t0
    results.sort(key=lambda r: (r.check_id, r.q, r.field, r.subject))
    return SweepReport(seed=seed, fields=described, results=results, measurements=measurements, timings=timings)
