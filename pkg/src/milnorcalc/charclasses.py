"""Characteristic classes of hypersurfaces in products of projective
spaces: Fulton-Johnson classes, Milnor classes assembled from
vanishing-cycle data, CSM classes, and the Riemann-Roch-type identity
checks relating them.

Conventions.  For a hypersurface X of multidegree d in an ambient Y the
Fulton-Johnson class is c(TY) (1+dH)^{-1} (dH) cap [Y], the Milnor
class is M = (1+dH)^{-1} c_*(mu) with mu the vanishing-cycle function,
and the CSM class is their difference c_*(X) = c^FJ(X) - M.  With this
sign an isolated singular point p contributes (-1)^{dim Y - 1} mu_p
times the point class to M.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .chow import (
    AmbientSpace,
    ChowClass,
    divisor_class,
    factor_tangent_class,
    forget_factor,
    insert_factor,
    line_bundle_class,
    self_intersection_check,
    tangent_class,
    unit_inverse,
)
from .groebner import CancelCallback, MilnorResult, total_milnor_number
from .scenes import (
    SINGULAR_STRATUM,
    STRATUMWISE,
    ConstructibleFunction,
    StrataScene,
    Stratum,
    hypersurface_scene,
    place_vanishing_cycles,
    signed_milnor_total,
    unit_function,
    validate_scene,
)

Shape = tuple


class MissingCsmClassError(ValueError):
    """A stratum with nonzero vanishing cycles has no CSM class."""


def fulton_johnson(ambient: AmbientSpace, multidegrees: Sequence[Sequence[int]]) -> ChowClass:
    """Fulton-Johnson class of a smooth-model complete intersection.

    For each multidegree d the factor (1 + dH)^{-1} (dH) is applied to
    the ambient tangent class; a hypersurface is the one-degree case.
    """
    if not multidegrees:
        raise ValueError("at least one multidegree is required")
    result = tangent_class(ambient)
    for d in multidegrees:
        divisor = divisor_class(ambient, d)
        if divisor.is_zero():
            raise ValueError("zero multidegree")
        result = result * unit_inverse(ChowClass.unit(ambient) + divisor) * divisor
    return result


def csm_library(shape: Shape, ambient: AmbientSpace) -> ChowClass:
    """CSM classes of a few standard closed subvarieties.

    Shapes: ``("point",)``, ``("linear", k)`` for a linear P^k,
    ``("smooth_ci", multidegrees)``, and ``("product", s1, s2)`` where
    the first factor shape lives in the first ambient factor and the
    second in the rest.
    """
    kind = shape[0]
    if kind == "point":
        return ChowClass.point(ambient)
    if kind == "linear":
        k = int(shape[1])
        if len(ambient.factors) != 1:
            raise ValueError("linear shapes live in a single projective space")
        n = ambient.factors[0]
        if not 0 <= k <= n:
            raise ValueError(f"no linear P^{k} inside P^{n}")
        h = ChowClass.monomial(ambient, (1,))
        one = ChowClass.unit(ambient)
        return (one + h) ** (k + 1) * h ** (n - k)
    if kind == "smooth_ci":
        return fulton_johnson(ambient, shape[1])
    if kind == "product":
        if len(ambient.factors) < 2:
            raise ValueError("product shapes need at least two ambient factors")
        left = AmbientSpace(ambient.factors[:1])
        right = AmbientSpace(ambient.factors[1:])
        left_class = csm_library(shape[1], left)
        right_class = csm_library(shape[2], right)
        lifted_left = left_class
        for position, n in enumerate(ambient.factors[1:], start=1):
            lifted_left = insert_factor(lifted_left, n, position)
        lifted_right = insert_factor(right_class, ambient.factors[0], 0)
        return lifted_left * lifted_right
    raise ValueError(f"unknown shape {shape!r}")


def _single_multidegree(scene: StrataScene) -> tuple[int, ...]:
    if len(scene.multidegrees) != 1:
        raise ValueError("this operation needs a codimension-one scene")
    return scene.multidegrees[0]


def _closure_csm(scene: StrataScene, stratum: Stratum) -> ChowClass:
    if stratum.csm_class is not None:
        return stratum.csm_class
    if stratum.dim == 0:
        return ChowClass.point(scene.ambient)
    raise MissingCsmClassError(
        f"stratum {stratum.id!r} carries vanishing cycles but no csm class"
    )


def csm_of_function(scene: StrataScene, alpha: ConstructibleFunction) -> ChowClass:
    """MacPherson transformation of ``alpha`` from per-stratum CSM data.

    Expands ``alpha`` over indicator functions of stratum closures and
    sums the recorded closure classes with those coefficients.
    """
    total = ChowClass.zero(scene.ambient)
    for stratum_id, coefficient in alpha.as_indicator().values.items():
        stratum = scene.stratum(stratum_id)
        total = total + coefficient * _closure_csm(scene, stratum)
    return total


def milnor_class(scene: StrataScene, mu: ConstructibleFunction) -> ChowClass:
    """Milnor class (1 + dH)^{-1} cap c_*(mu) of a codim-1 scene."""
    if mu.is_zero():
        return ChowClass.zero(scene.ambient)
    degree = _single_multidegree(scene)
    normal = line_bundle_class(scene.ambient, degree)
    return unit_inverse(normal) * csm_of_function(scene, mu)


def localization(
    scene: StrataScene, mu: ConstructibleFunction
) -> list[tuple[str, ChowClass]]:
    """Split the Milnor class into per-stratum closed-support terms."""
    if mu.is_zero():
        return []
    degree = _single_multidegree(scene)
    inverse_normal = unit_inverse(line_bundle_class(scene.ambient, degree))
    terms = []
    for stratum_id, coefficient in sorted(mu.as_indicator().values.items()):
        stratum = scene.stratum(stratum_id)
        term = inverse_normal * (coefficient * _closure_csm(scene, stratum))
        terms.append((stratum_id, term))
    return terms


def csm_class(scene: StrataScene, mu: ConstructibleFunction) -> ChowClass:
    """CSM class of the scene: Fulton-Johnson minus the Milnor class."""
    fj = fulton_johnson(scene.ambient, scene.multidegrees)
    if mu.is_zero():
        return fj
    return fj - milnor_class(scene, mu)


def resolve_mu(
    scene: StrataScene,
    mu: Optional[ConstructibleFunction] = None,
    cancel: Optional[CancelCallback] = None,
) -> tuple[StrataScene, ConstructibleFunction, Optional[MilnorResult]]:
    """Obtain vanishing cycles for a scene.

    User-supplied values win; otherwise a defining polynomial is run
    through the Milnor-number engine (building the default two-stratum
    scene when the scene has no strata); otherwise the scene is taken
    to be smooth and mu is zero.
    """
    if mu is not None:
        if mu.scene != scene:
            raise ValueError("mu lives on a different scene")
        return scene, mu, None
    if scene.defining_polynomial is not None:
        if scene.strata:
            placed, result = place_vanishing_cycles(scene, cancel)
            return scene, placed, result
        F = scene.defining_polynomial
        chart = scene.chart if scene.chart is not None else F.variables[-1]
        result = total_milnor_number(F, chart, cancel)
        enriched = hypersurface_scene(
            scene.ambient,
            _single_multidegree(scene)[0],
            singular=result.total_milnor != 0,
            name=scene.name,
            defining_polynomial=F,
            chart=result.chart,
        )
        values = {}
        if result.total_milnor != 0:
            values[SINGULAR_STRATUM] = signed_milnor_total(result, scene.ambient)
        return enriched, ConstructibleFunction(enriched, STRATUMWISE, values), result
    return scene, ConstructibleFunction(scene, STRATUMWISE, {}), None


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity check; residual is zero exactly on pass."""

    name: str
    passed: bool
    residual: Optional[ChowClass] = None
    detail: str = ""


def _result(name: str, residual: ChowClass, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=residual.is_zero(), residual=residual, detail=detail)


def _product_setup(scene: StrataScene, m: int):
    if m < 1:
        raise ValueError("the product factor dimension must be at least 1")
    base = scene.ambient
    position = len(base.factors)
    product = base.extended(m)
    degree = _single_multidegree(scene) + (0,)
    return product, degree, position


def smooth_pullback_milnor(
    scene: StrataScene,
    m: int,
    mu: Optional[ConstructibleFunction] = None,
    cancel: Optional[CancelCallback] = None,
) -> ChowClass:
    """Milnor class of X x P^m inside (ambient) x P^m.

    Smooth pullback along the projection multiplies the base Milnor
    class by the total Chern class of the relative tangent bundle.
    """
    scene, mu, _ = resolve_mu(scene, mu, cancel)
    product, _, position = _product_setup(scene, m)
    base_milnor = milnor_class(scene, mu)
    return factor_tangent_class(product, position) * insert_factor(base_milnor, m, position)


def verdier_smooth_check(
    scene: StrataScene,
    m: int,
    mu: Optional[ConstructibleFunction] = None,
    cancel: Optional[CancelCallback] = None,
) -> CheckResult:
    """Compare the CSM class of X x P^m computed two ways.

    Route one assembles it from the product Fulton-Johnson class and
    the pulled-back Milnor class; route two multiplies the pulled-back
    CSM class of X by the Chern class of the projection's relative
    tangent bundle.  Agreement is the Verdier-Riemann-Roch property of
    the smooth projection.
    """
    scene, mu, _ = resolve_mu(scene, mu, cancel)
    product, degree, position = _product_setup(scene, m)
    lhs = fulton_johnson(product, [degree]) - smooth_pullback_milnor(scene, m, mu)
    rhs = factor_tangent_class(product, position) * insert_factor(
        csm_class(scene, mu), m, position
    )
    return _result(f"verdier_m{m}", lhs - rhs)


def proper_pushdown_check(
    scene: StrataScene,
    m: int,
    mu: Optional[ConstructibleFunction] = None,
    cancel: Optional[CancelCallback] = None,
) -> CheckResult:
    """Push the product Milnor class back down to the base.

    The projection X x P^m -> X has fiber Euler characteristic m + 1,
    so the pushforward must be (m + 1) times the base Milnor class.
    """
    scene, mu, _ = resolve_mu(scene, mu, cancel)
    _, _, position = _product_setup(scene, m)
    pushed = forget_factor(smooth_pullback_milnor(scene, m, mu), position)
    expected = (m + 1) * milnor_class(scene, mu)
    return _result(f"pushdown_m{m}", pushed - expected)


def defect_codim1_check(
    scene: StrataScene,
    mu: Optional[ConstructibleFunction] = None,
    cancel: Optional[CancelCallback] = None,
) -> CheckResult:
    """Check the divisor defect formula against the Milnor class.

    The twisted restriction (1+dH)^{-1} (dH) c(TY) minus the CSM class
    of X must equal (1+dH)^{-1} c_*(mu); the difference of the two
    sides is returned as the residual.
    """
    scene, mu, _ = resolve_mu(scene, mu, cancel)
    degree = _single_multidegree(scene)
    ambient = scene.ambient
    divisor = divisor_class(ambient, degree)
    inverse_normal = unit_inverse(ChowClass.unit(ambient) + divisor)
    restricted = inverse_normal * (divisor * tangent_class(ambient))
    lhs = restricted - csm_class(scene, mu)
    rhs = milnor_class(scene, mu)
    return _result("defect_codim1", lhs - rhs)


def lci_defect_check(
    scene: StrataScene,
    m: int,
    mu: Optional[ConstructibleFunction] = None,
    cancel: Optional[CancelCallback] = None,
) -> CheckResult:
    """Check the defect formula for X x P^m -> Y through the ambient product.

    The composite of the inclusion into (ambient) x P^m with the
    projection to the ambient is a local complete intersection
    morphism.  Its twisted pullback of c_*(1_Y), minus the CSM class of
    X x P^m, must match the normal-inverted MacPherson class of the
    product vanishing cycles, whose closure classes are built from the
    library product shapes.
    """
    scene, mu, _ = resolve_mu(scene, mu, cancel)
    product, degree, position = _product_setup(scene, m)
    normal_product = line_bundle_class(product, degree)
    inverse_normal = unit_inverse(normal_product)
    relative_tangent = factor_tangent_class(product, position) * inverse_normal
    ambient_csm = insert_factor(tangent_class(scene.ambient), m, position)
    pulled = relative_tangent * (divisor_class(product, degree) * ambient_csm)
    product_csm = fulton_johnson(product, [degree]) - smooth_pullback_milnor(scene, m, mu)
    lhs = pulled - product_csm
    fiber_tangent = factor_tangent_class(product, position)
    accumulated = ChowClass.zero(product)
    for stratum_id, coefficient in mu.as_indicator().values.items():
        closure = _closure_csm(scene, scene.stratum(stratum_id))
        product_closure = insert_factor(closure, m, position) * fiber_tangent
        accumulated = accumulated + coefficient * product_closure
    rhs = inverse_normal * accumulated
    return _result(f"lci_m{m}", lhs - rhs)


def subbundle_contribution(
    closure_csm: ChowClass,
    normal_chern: ChowClass,
    normal_rank: int,
    sub_chern: ChowClass,
    sub_rank: int,
) -> ChowClass:
    """Localized contribution of conical data supported in a subbundle.

    For a subbundle V of the restricted normal bundle N|S the indicator
    of V contributes c_d(N|S / V) c(V) cap c_*(closure of S), with d
    the corank; the top Chern class of the quotient is read off from
    c(N|S) c(V)^{-1}.
    """
    if sub_rank > normal_rank or sub_rank < 0:
        raise ValueError("inconsistent ranks")
    corank = normal_rank - sub_rank
    quotient = normal_chern * unit_inverse(sub_chern)
    top = quotient.graded_piece(corank)
    return top * sub_chern * closure_csm


@dataclass
class ClassReport:
    """All classes and checks computed for one scene."""

    scene: StrataScene
    mu: ConstructibleFunction
    fulton_johnson: ChowClass
    milnor_class: ChowClass
    csm: ChowClass
    euler: int
    localization: list[tuple[str, ChowClass]]
    checks: dict[str, CheckResult] = field(default_factory=dict)
    milnor_data: Optional[MilnorResult] = None


def build_report(
    scene: StrataScene,
    mu: Optional[ConstructibleFunction] = None,
    m_values: Sequence[int] = (1,),
    cancel: Optional[CancelCallback] = None,
) -> ClassReport:
    """Compute every class and run every identity check for a scene."""
    validate_scene(scene)
    scene, mu, milnor_data = resolve_mu(scene, mu, cancel)
    fj = fulton_johnson(scene.ambient, scene.multidegrees)
    codim_one = len(scene.multidegrees) == 1
    if codim_one and not mu.is_zero():
        milnor = milnor_class(scene, mu)
    else:
        milnor = ChowClass.zero(scene.ambient)
    csm = fj - milnor
    report = ClassReport(
        scene=scene,
        mu=mu,
        fulton_johnson=fj,
        milnor_class=milnor,
        csm=csm,
        euler=csm.degree(),
        localization=localization(scene, mu) if codim_one else [],
        milnor_data=milnor_data,
    )
    checks: dict[str, CheckResult] = {}
    if codim_one:
        degree = _single_multidegree(scene)
        checks["self_intersection"] = CheckResult(
            name="self_intersection",
            passed=self_intersection_check(scene.ambient, degree),
        )
        checks["defect_codim1"] = defect_codim1_check(scene, mu)
        for m in m_values:
            checks[f"verdier_m{m}"] = verdier_smooth_check(scene, m, mu)
            checks[f"pushdown_m{m}"] = proper_pushdown_check(scene, m, mu)
            checks[f"lci_m{m}"] = lci_defect_check(scene, m, mu)
        total = ChowClass.zero(scene.ambient)
        for _, term in report.localization:
            total = total + term
        checks["localization_sum"] = _result("localization_sum", total - milnor)
    if scene.strata and all(s.chi_c is not None for s in scene.strata):
        strata_euler = unit_function(scene).euler()
        checks["euler_strata"] = CheckResult(
            name="euler_strata",
            passed=strata_euler == report.euler,
            detail=f"strata give {strata_euler}, classes give {report.euler}",
        )
    report.checks = checks
    return report


# JSON serialization.  Keys are sorted and integers that do not fit in
# 64 bits are rendered as decimal strings, so emitted reports reload
# and re-serialize byte for byte.

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


def _json_int(value: int):
    if _INT64_MIN <= value <= _INT64_MAX:
        return value
    return str(value)


def chow_to_jsonable(x: ChowClass) -> dict:
    return {
        ",".join(str(e) for e in exp): _json_int(value)
        for exp, value in sorted(x.coefficients.items())
    }


def report_to_jsonable(report: ClassReport) -> dict:
    data = {
        "ambient": list(report.scene.ambient.factors),
        "degrees": [list(d) for d in report.scene.multidegrees],
        "fulton_johnson": chow_to_jsonable(report.fulton_johnson),
        "milnor_class": chow_to_jsonable(report.milnor_class),
        "csm": chow_to_jsonable(report.csm),
        "euler": _json_int(report.euler),
        "mu": {k: _json_int(v) for k, v in sorted(report.mu.as_stratumwise().values.items())},
        "localization": [
            {"stratum": stratum_id, "class": chow_to_jsonable(term)}
            for stratum_id, term in report.localization
        ],
        "checks": {},
    }
    if report.scene.name:
        data["name"] = report.scene.name
    if report.milnor_data is not None:
        data["total_milnor"] = _json_int(report.milnor_data.total_milnor)
        data["chart"] = report.milnor_data.chart
    for name, check in sorted(report.checks.items()):
        entry: dict = {"pass": check.passed}
        if not check.passed and check.residual is not None:
            entry["residual"] = chow_to_jsonable(check.residual)
        if check.detail:
            entry["detail"] = check.detail
        data["checks"][name] = entry
    return data


def canonical_json(data) -> str:
    """Serialize with sorted keys; reloading and re-dumping is stable."""
    return json.dumps(data, sort_keys=True, indent=2)
