"""Intersection arithmetic on products of projective spaces.

Homology classes pushed forward to P^{n_1} x ... x P^{n_k} are written
in the truncated polynomial ring Z[H_1..H_k]/(H_i^{n_i+1}), where H_i
is the hyperplane class of the i-th factor.  A monomial H^a stands for
the class H^a cap [ambient]; truncation is applied eagerly, so stored
exponents always satisfy 0 <= a_i <= n_i.  Coefficients are plain
Python integers and therefore exact at any size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class AmbientSpace:
    """A product of projective spaces, recorded by factor dimensions."""

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if not factors:
            raise ValueError("an ambient space needs at least one factor")
        if any(n < 0 for n in factors):
            raise ValueError("factor dimensions must be nonnegative")
        object.__setattr__(self, "factors", factors)

    @property
    def dim(self) -> int:
        return sum(self.factors)

    @property
    def top(self) -> Exponent:
        """Exponent of the class of a point."""
        return self.factors

    def extended(self, extra_dim: int) -> "AmbientSpace":
        return AmbientSpace(self.factors + (int(extra_dim),))

    def letters(self) -> tuple[str, ...]:
        k = len(self.factors)
        if k == 1:
            return ("H",)
        if k == 2:
            return ("H", "K")
        return tuple(f"H{i + 1}" for i in range(k))

    def box(self) -> Iterable[Exponent]:
        """Iterate over all monomial exponents of the truncated ring."""
        return itertools.product(*(range(n + 1) for n in self.factors))


class ChowClass:
    """An integer class in the truncated ring of an ambient space."""

    __slots__ = ("ambient", "coefficients")

    def __init__(self, ambient: AmbientSpace, coefficients: Mapping[Exponent, int] = ()):
        self.ambient = ambient
        box = ambient.factors
        clean: dict[Exponent, int] = {}
        for exp, value in dict(coefficients).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(box):
                raise ValueError(f"exponent {exp} has wrong length for {ambient}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError("coefficients must be integers")
            if value == 0:
                continue
            if any(e > n for e, n in zip(exp, box)):
                continue
            clean[exp] = value
        self.coefficients = clean

    @classmethod
    def zero(cls, ambient: AmbientSpace) -> "ChowClass":
        return cls(ambient, {})

    @classmethod
    def constant(cls, ambient: AmbientSpace, value: int) -> "ChowClass":
        return cls(ambient, {(0,) * len(ambient.factors): value})

    @classmethod
    def unit(cls, ambient: AmbientSpace) -> "ChowClass":
        return cls.constant(ambient, 1)

    @classmethod
    def monomial(cls, ambient: AmbientSpace, exp: Exponent, value: int = 1) -> "ChowClass":
        return cls(ambient, {tuple(exp): value})

    @classmethod
    def point(cls, ambient: AmbientSpace) -> "ChowClass":
        return cls.monomial(ambient, ambient.top)

    def _check_compatible(self, other: "ChowClass") -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def is_zero(self) -> bool:
        return not self.coefficients

    def constant_term(self) -> int:
        return self.coefficients.get((0,) * len(self.ambient.factors), 0)

    def degree(self) -> int:
        """Coefficient of the point class: the pushforward to a point."""
        return self.coefficients.get(self.ambient.top, 0)

    def graded_piece(self, d: int) -> "ChowClass":
        """Return the part of total codimension ``d``."""
        return ChowClass(
            self.ambient,
            {e: c for e, c in self.coefficients.items() if sum(e) == d},
        )

    def __add__(self, other: "ChowClass") -> "ChowClass":
        self._check_compatible(other)
        out = dict(self.coefficients)
        for exp, value in other.coefficients.items():
            acc = out.get(exp, 0) + value
            if acc:
                out[exp] = acc
            else:
                out.pop(exp, None)
        result = ChowClass.zero(self.ambient)
        result.coefficients = out
        return result

    def __neg__(self) -> "ChowClass":
        result = ChowClass.zero(self.ambient)
        result.coefficients = {e: -c for e, c in self.coefficients.items()}
        return result

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        return self + (-other)

    def __mul__(self, other) -> "ChowClass":
        if isinstance(other, int) and not isinstance(other, bool):
            result = ChowClass.zero(self.ambient)
            if other:
                result.coefficients = {e: c * other for e, c in self.coefficients.items()}
            return result
        if not isinstance(other, ChowClass):
            return NotImplemented
        self._check_compatible(other)
        box = self.ambient.factors
        out: dict[Exponent, int] = {}
        for ea, ca in self.coefficients.items():
            for eb, cb in other.coefficients.items():
                exp = tuple(a + b for a, b in zip(ea, eb))
                if any(e > n for e, n in zip(exp, box)):
                    continue
                acc = out.get(exp, 0) + ca * cb
                if acc:
                    out[exp] = acc
                else:
                    out.pop(exp, None)
        result = ChowClass.zero(self.ambient)
        result.coefficients = out
        return result

    def __rmul__(self, other) -> "ChowClass":
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __pow__(self, power: int) -> "ChowClass":
        if power < 0:
            raise ValueError("negative power")
        result = ChowClass.unit(self.ambient)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ChowClass)
            and self.ambient == other.ambient
            and self.coefficients == other.coefficients
        )

    def __repr__(self) -> str:
        return f"ChowClass({str(self)!r}, ambient={self.ambient.factors})"

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        letters = self.ambient.letters()
        items = sorted(self.coefficients.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        chunks: list[str] = []
        for position, (exp, value) in enumerate(items):
            negative = value < 0
            magnitude = -value if negative else value
            factors = []
            for name, e in zip(letters, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "".join(factors)
            else:
                body = str(magnitude) + "".join(factors)
            if position == 0:
                chunks.append(("-" if negative else "") + body)
            else:
                chunks.append((" - " if negative else " + ") + body)
        return "".join(chunks)


def hyperplane(ambient: AmbientSpace, factor: int = 0) -> ChowClass:
    """Return the hyperplane class of one factor."""
    exp = tuple(1 if i == factor else 0 for i in range(len(ambient.factors)))
    return ChowClass.monomial(ambient, exp)


def tangent_class(ambient: AmbientSpace) -> ChowClass:
    """Total Chern class of the tangent bundle, prod (1+H_i)^(n_i+1)."""
    result = ChowClass.unit(ambient)
    for i, n in enumerate(ambient.factors):
        result = result * (ChowClass.unit(ambient) + hyperplane(ambient, i)) ** (n + 1)
    return result


def factor_tangent_class(ambient: AmbientSpace, factor: int) -> ChowClass:
    """Total Chern class of the tangent bundle along one factor."""
    n = ambient.factors[factor]
    return (ChowClass.unit(ambient) + hyperplane(ambient, factor)) ** (n + 1)


def divisor_class(ambient: AmbientSpace, multidegree: Sequence[int]) -> ChowClass:
    """Return sum d_i H_i for a hypersurface of the given multidegree."""
    if len(multidegree) != len(ambient.factors):
        raise ValueError("multidegree length does not match the ambient factors")
    result = ChowClass.zero(ambient)
    for i, d in enumerate(multidegree):
        result = result + hyperplane(ambient, i) * int(d)
    return result


def line_bundle_class(ambient: AmbientSpace, multidegree: Sequence[int]) -> ChowClass:
    """Total Chern class 1 + sum d_i H_i of O(d_1,..,d_k)."""
    return ChowClass.unit(ambient) + divisor_class(ambient, multidegree)


def unit_inverse(u: ChowClass) -> ChowClass:
    """Invert a class with constant coefficient 1 by a geometric series.

    The positive-degree part is nilpotent, so the series stops after
    dim(ambient) steps.
    """
    if u.constant_term() != 1:
        raise ValueError("non-unit input: constant coefficient must be 1")
    nilpotent = ChowClass.unit(u.ambient) - u
    result = ChowClass.unit(u.ambient)
    power = ChowClass.unit(u.ambient)
    for _ in range(u.ambient.dim):
        power = power * nilpotent
        if power.is_zero():
            break
        result = result + power
    return result


def insert_factor(x: ChowClass, extra_dim: int, position: int) -> ChowClass:
    """Pull back along the projection that forgets a new factor.

    The new factor of dimension ``extra_dim`` is inserted at ``position``
    in the ambient factor list; coefficients are unchanged.
    """
    factors = x.ambient.factors
    if not 0 <= position <= len(factors):
        raise ValueError("position out of range")
    new_ambient = AmbientSpace(factors[:position] + (int(extra_dim),) + factors[position:])
    coeffs = {
        e[:position] + (0,) + e[position:]: c for e, c in x.coefficients.items()
    }
    return ChowClass(new_ambient, coeffs)


def forget_factor(x: ChowClass, position: int) -> ChowClass:
    """Push forward along the projection that forgets one factor.

    Only terms carrying the full power H_position^{n} of the forgotten
    P^n factor survive (the rest die for dimension reasons); the
    variable is stripped from the survivors.
    """
    factors = x.ambient.factors
    if not 0 <= position < len(factors):
        raise ValueError("position out of range")
    if len(factors) == 1:
        raise ValueError("cannot forget the only factor")
    full = factors[position]
    new_ambient = AmbientSpace(factors[:position] + factors[position + 1 :])
    coeffs = {
        e[:position] + e[position + 1 :]: c
        for e, c in x.coefficients.items()
        if e[position] == full
    }
    return ChowClass(new_ambient, coeffs)


def divisor_gysin(x: ChowClass, multidegree: Sequence[int]) -> ChowClass:
    """Gysin pullback to a multidegree-d divisor followed by pushforward."""
    return divisor_class(x.ambient, multidegree) * x


def self_intersection_check(ambient: AmbientSpace, multidegree: Sequence[int]) -> bool:
    """Check k^* k_* = c_1(N) cap on every monomial class.

    The two routes are the divisor Gysin composite and multiplication by
    the degree-one part of the normal line bundle class.
    """
    chern_one = line_bundle_class(ambient, multidegree).graded_piece(1)
    for exp in ambient.box():
        basis_class = ChowClass.monomial(ambient, exp)
        if divisor_gysin(basis_class, multidegree) != chern_one * basis_class:
            return False
    return True
