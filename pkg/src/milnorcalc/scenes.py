"""Finite stratified scenes and the constructible-function calculus.

A scene records a closed subvariety of a product of projective spaces
as a finite poset of strata.  Each stratum may carry compactly
supported Euler characteristics (of itself and of its closure), the
pushed-forward CSM class of its closure, and the ids of the strata
whose closures contain it.  Constructible functions on a scene are
integer-valued and constant on strata; they can be written either
stratumwise (value on each stratum) or as combinations of indicator
functions of closures, and the two representations are exchanged by
Moebius inversion on the closure poset.

Euler-characteristic data is user input; values computed by the
polynomial engine (total Milnor numbers) only populate vanishing-cycle
functions, so ``chi_c``/``closure_chi`` may be absent on engine-built
strata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .chow import AmbientSpace, ChowClass
from .groebner import CancelCallback, MilnorResult, total_milnor_number
from .polynomials import Polynomial

STRATUMWISE = "stratumwise"
INDICATOR = "indicator"


class SceneValidationError(ValueError):
    """The scene data is structurally inconsistent."""


@dataclass(frozen=True)
class Stratum:
    """One locally closed stratum of a scene."""

    id: str
    dim: int
    chi_c: Optional[int] = None
    closure_chi: Optional[int] = None
    csm_class: Optional[ChowClass] = None
    parents: tuple[str, ...] = ()


@dataclass(frozen=True)
class StrataScene:
    """A stratified subvariety of a product of projective spaces."""

    ambient: AmbientSpace
    multidegrees: tuple[tuple[int, ...], ...]
    strata: tuple[Stratum, ...] = ()
    defining_polynomial: Optional[Polynomial] = None
    chart: Optional[str] = None
    name: str = ""

    def stratum(self, stratum_id: str) -> Stratum:
        for s in self.strata:
            if s.id == stratum_id:
                return s
        raise KeyError(f"no stratum named {stratum_id!r}")

    def ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.strata)


def upsets(scene: StrataScene) -> dict[str, frozenset[str]]:
    """Map each stratum to the strata whose closures contain it.

    The ``parents`` edges generate the relation; the result is its
    reflexive-transitive closure.
    """
    table = {s.id: set(s.parents) for s in scene.strata}
    out: dict[str, frozenset[str]] = {}
    for start in table:
        seen = {start}
        frontier = [start]
        while frontier:
            current = frontier.pop()
            for parent in table[current]:
                if parent not in seen:
                    seen.add(parent)
                    frontier.append(parent)
        out[start] = frozenset(seen)
    return out


def downsets(scene: StrataScene) -> dict[str, frozenset[str]]:
    """Map each stratum to the strata contained in its closure."""
    ups = upsets(scene)
    out: dict[str, set[str]] = {s.id: set() for s in scene.strata}
    for stratum_id, ancestors in ups.items():
        for ancestor in ancestors:
            out[ancestor].add(stratum_id)
    return {k: frozenset(v) for k, v in out.items()}


def validate_scene(scene: StrataScene) -> None:
    """Check poset shape and Euler data consistency; raise on failure."""
    ids = [s.id for s in scene.strata]
    if len(set(ids)) != len(ids):
        raise SceneValidationError("duplicate stratum ids")
    known = set(ids)
    for s in scene.strata:
        for p in s.parents:
            if p not in known:
                raise SceneValidationError(f"stratum {s.id!r} lists unknown parent {p!r}")
            if p == s.id:
                raise SceneValidationError(f"stratum {s.id!r} lists itself as a parent")
    # Cycle detection: every stratum must not appear among its own
    # proper ancestors.
    ups = upsets(scene)
    for s in scene.strata:
        for p in s.parents:
            if s.id in ups[p]:
                raise SceneValidationError(f"parent cycle through {s.id!r}")
    downs = downsets(scene)
    by_id = {s.id: s for s in scene.strata}
    has_children = {p for s in scene.strata for p in ups[s.id] if p != s.id}
    for s in scene.strata:
        if s.closure_chi is None:
            continue
        parts = [by_id[t].chi_c for t in downs[s.id]]
        if any(v is None for v in parts):
            continue
        total = sum(parts)
        if total != s.closure_chi:
            raise SceneValidationError(
                f"stratum {s.id!r}: closure_chi is {s.closure_chi} "
                f"but the closure strata sum to {total}"
            )
        if s.id not in has_children and s.chi_c is not None and s.chi_c != s.closure_chi:
            raise SceneValidationError(
                f"closed stratum {s.id!r} has chi_c {s.chi_c} != closure_chi {s.closure_chi}"
            )
    for multidegree in scene.multidegrees:
        if len(multidegree) != len(scene.ambient.factors):
            raise SceneValidationError("multidegree length does not match the ambient")
    for s in scene.strata:
        if s.csm_class is not None and s.csm_class.ambient != scene.ambient:
            raise SceneValidationError(f"stratum {s.id!r} csm class lives in a different ambient")


@dataclass
class ConstructibleFunction:
    """An integer constructible function on a scene.

    ``form`` is ``stratumwise`` (values of the function on strata) or
    ``indicator`` (coefficients of indicator functions of closures).
    Missing ids mean zero.
    """

    scene: StrataScene
    form: str
    values: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.form not in (STRATUMWISE, INDICATOR):
            raise ValueError(f"unknown representation {self.form!r}")
        known = set(self.scene.ids())
        for stratum_id in self.values:
            if stratum_id not in known:
                raise ValueError(f"value on unknown stratum {stratum_id!r}")
        self.values = {k: int(v) for k, v in self.values.items() if v != 0}

    def is_zero(self) -> bool:
        return not self.values

    def as_stratumwise(self) -> "ConstructibleFunction":
        if self.form == STRATUMWISE:
            return self
        ups = upsets(self.scene)
        out = {}
        for s in self.scene.strata:
            total = sum(self.values.get(t, 0) for t in ups[s.id])
            if total:
                out[s.id] = total
        return ConstructibleFunction(self.scene, STRATUMWISE, out)

    def as_indicator(self) -> "ConstructibleFunction":
        """Convert to indicator coefficients by Moebius inversion."""
        if self.form == INDICATOR:
            return self
        ups = upsets(self.scene)
        # Peel from the top: strata with larger up-sets are handled later,
        # so each step only needs already-known coefficients.
        order = sorted(self.scene.ids(), key=lambda i: len(ups[i]))
        coeffs: dict[str, int] = {}
        for stratum_id in order:
            above = sum(coeffs.get(t, 0) for t in ups[stratum_id] if t != stratum_id)
            value = self.values.get(stratum_id, 0) - above
            if value:
                coeffs[stratum_id] = value
        return ConstructibleFunction(self.scene, INDICATOR, coeffs)

    def value(self, stratum_id: str) -> int:
        return self.as_stratumwise().values.get(stratum_id, 0)

    def euler(self) -> int:
        """Integrate against the compactly supported Euler characteristic."""
        total = 0
        pointwise = self.as_stratumwise()
        for s in self.scene.strata:
            v = pointwise.values.get(s.id, 0)
            if v == 0:
                continue
            if s.chi_c is None:
                raise SceneValidationError(f"stratum {s.id!r} carries no chi_c data")
            total += v * s.chi_c
        return total

    def __add__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        if self.scene != other.scene:
            raise ValueError("constructible functions live on different scenes")
        a = self.as_stratumwise().values
        b = other.as_stratumwise().values
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) + v
        return ConstructibleFunction(self.scene, STRATUMWISE, out)

    def __neg__(self) -> "ConstructibleFunction":
        sw = self.as_stratumwise()
        return ConstructibleFunction(self.scene, STRATUMWISE, {k: -v for k, v in sw.values.items()})

    def __sub__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "ConstructibleFunction":
        if not isinstance(scalar, int):
            return NotImplemented
        sw = self.as_stratumwise()
        return ConstructibleFunction(
            self.scene, STRATUMWISE, {k: scalar * v for k, v in sw.values.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstructibleFunction):
            return NotImplemented
        if self.scene != other.scene:
            return False
        return self.as_stratumwise().values == other.as_stratumwise().values


def unit_function(scene: StrataScene) -> ConstructibleFunction:
    """The function 1 on all of the scene."""
    return ConstructibleFunction(scene, STRATUMWISE, {s.id: 1 for s in scene.strata})


def closure_indicator(scene: StrataScene, stratum_id: str, value: int = 1) -> ConstructibleFunction:
    """The function that is ``value`` on the closure of one stratum."""
    scene.stratum(stratum_id)
    return ConstructibleFunction(scene, INDICATOR, {stratum_id: value})


@dataclass(frozen=True)
class SceneMap:
    """A stratified map, recorded by images of strata and fiber data.

    ``fiber_chi`` holds, for each source stratum S, the compactly
    supported Euler characteristic of the fiber of the restriction
    S -> f(S); it is assumed constant along the target stratum.
    """

    source: StrataScene
    target: StrataScene
    strata_map: Mapping[str, str]
    fiber_chi: Mapping[str, int]

    def __post_init__(self):
        src = set(self.source.ids())
        tgt = set(self.target.ids())
        if set(self.strata_map) != src:
            raise SceneValidationError("strata_map must cover every source stratum")
        for s, t in self.strata_map.items():
            if t not in tgt:
                raise SceneValidationError(f"stratum {s!r} maps to unknown target {t!r}")
        if set(self.fiber_chi) != src:
            raise SceneValidationError("fiber_chi must cover every source stratum")


def pushforward(alpha: ConstructibleFunction, f: SceneMap) -> ConstructibleFunction:
    """Integrate ``alpha`` along the fibers of ``f``."""
    if alpha.scene != f.source:
        raise ValueError("the function does not live on the source scene")
    pointwise = alpha.as_stratumwise().values
    out: dict[str, int] = {}
    for s, t in f.strata_map.items():
        v = pointwise.get(s, 0)
        if v == 0:
            continue
        out[t] = out.get(t, 0) + v * f.fiber_chi[s]
    return ConstructibleFunction(f.target, STRATUMWISE, out)


def pullback(alpha: ConstructibleFunction, f: SceneMap) -> ConstructibleFunction:
    """Compose ``alpha`` with ``f``."""
    if alpha.scene != f.target:
        raise ValueError("the function does not live on the target scene")
    pointwise = alpha.as_stratumwise().values
    out = {}
    for s, t in f.strata_map.items():
        v = pointwise.get(t, 0)
        if v:
            out[s] = v
    return ConstructibleFunction(f.source, STRATUMWISE, out)


@dataclass(frozen=True)
class MonodromicFunction:
    """A conical function on the total space of a line bundle over a scene.

    The value over a point x is ``pullback_part(x)`` off the zero
    section and ``pullback_part(x) + zero_section_part(x)`` on it.
    """

    pullback_part: ConstructibleFunction
    zero_section_part: ConstructibleFunction

    def __post_init__(self):
        if self.pullback_part.scene != self.zero_section_part.scene:
            raise ValueError("the two parts live on different scenes")


def cone_vanishing_cycles(mu: ConstructibleFunction) -> MonodromicFunction:
    """Spread vanishing-cycle data over the normal bundle of a divisor.

    Off the zero section the nearby and ambient values agree, and on
    the zero section they cancel, so the defect is carried entirely by
    the complement.
    """
    return MonodromicFunction(pullback_part=mu, zero_section_part=-mu)


def restrict_to_vertex(phi: MonodromicFunction) -> ConstructibleFunction:
    """Restrict a conical function to the zero section."""
    return phi.pullback_part + phi.zero_section_part


SMOOTH_STRATUM = "smooth_locus"
SINGULAR_STRATUM = "singular_points"


def signed_milnor_total(result: MilnorResult, ambient: AmbientSpace) -> int:
    # Vanishing-cycle normalization: the value at an isolated singular
    # point is chi(Milnor fiber) - 1 = (-1)^(dim ambient - 1) * mu.
    sign = -1 if (ambient.dim - 1) % 2 else 1
    return sign * result.total_milnor


def hypersurface_scene(
    ambient: AmbientSpace,
    degree: int,
    singular: bool,
    name: str = "",
    defining_polynomial: Optional[Polynomial] = None,
    chart: Optional[str] = None,
) -> StrataScene:
    """Build the default one- or two-stratum scene of a hypersurface."""
    if len(ambient.factors) != 1:
        raise ValueError("hypersurface scenes live in a single projective space")
    strata = [Stratum(id=SMOOTH_STRATUM, dim=ambient.dim - 1)]
    if singular:
        strata.append(
            Stratum(
                id=SINGULAR_STRATUM,
                dim=0,
                csm_class=ChowClass.point(ambient),
                parents=(SMOOTH_STRATUM,),
            )
        )
    return StrataScene(
        ambient=ambient,
        multidegrees=((int(degree),),),
        strata=tuple(strata),
        defining_polynomial=defining_polynomial,
        chart=chart,
        name=name,
    )


def isolated_vanishing_cycles(
    F: Polynomial,
    ambient: AmbientSpace,
    chart: Union[int, str],
    cancel: Optional[CancelCallback] = None,
) -> ConstructibleFunction:
    """Compute the vanishing-cycle function of an isolated-singularity
    hypersurface, merging all singular points into one stratum.

    The returned function lives on a freshly built scene and takes the
    value chi(Milnor fiber) - 1 summed over the singular points.
    """
    if len(ambient.factors) != 1:
        raise ValueError("vanishing cycles need a single projective space")
    if len(F.variables) != ambient.dim + 1:
        raise ValueError("variable count does not match the ambient dimension")
    result = total_milnor_number(F, chart, cancel)
    scene = hypersurface_scene(
        ambient,
        F.total_degree(),
        singular=result.total_milnor != 0,
        defining_polynomial=F,
        chart=result.chart,
    )
    values = {}
    if result.total_milnor != 0:
        values[SINGULAR_STRATUM] = signed_milnor_total(result, ambient)
    return ConstructibleFunction(scene, STRATUMWISE, values)


def place_vanishing_cycles(
    scene: StrataScene, cancel: Optional[CancelCallback] = None
) -> tuple[ConstructibleFunction, MilnorResult]:
    """Run the polynomial engine and attach its total to scene strata.

    The merged total must land somewhere, so a nonzero total requires
    exactly one closed zero-dimensional stratum.
    """
    if scene.defining_polynomial is None or scene.chart is None:
        raise SceneValidationError("the scene has no defining polynomial and chart")
    if len(scene.ambient.factors) != 1:
        raise SceneValidationError("polynomial scenes live in a single projective space")
    result = total_milnor_number(scene.defining_polynomial, scene.chart, cancel)
    if result.total_milnor == 0:
        return ConstructibleFunction(scene, STRATUMWISE, {}), result
    parent_ids = {p for s in scene.strata for p in s.parents}
    candidates = [s for s in scene.strata if s.dim == 0 and s.id not in parent_ids]
    if len(candidates) != 1:
        raise SceneValidationError(
            "cannot place the computed vanishing cycles: need exactly one "
            "closed zero-dimensional stratum, or explicit mu values"
        )
    value = signed_milnor_total(result, scene.ambient)
    return (
        ConstructibleFunction(scene, STRATUMWISE, {candidates[0].id: value}),
        result,
    )
