"""Exact multivariate polynomials over the rationals.

The representation is sparse: a map from exponent tuples to nonzero
Fraction coefficients, over a fixed ordered tuple of variable names.
The zero polynomial is the empty map.  All arithmetic is exact; floats
are rejected.

The text grammar accepted by ``parse_polynomial`` (and emitted by
``str``) is a sum of terms joined by ``+`` or ``-``, where a term is an
optional rational coefficient followed by ``*``-separated variable
powers, for example ``y^2*z - x^3 - 1/2*x^2*z + 4``.  Juxtaposition
(``2x``) is a syntax error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class PolyParseError(ValueError):
    """Malformed polynomial text; ``position`` is the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class VariableMismatchError(ValueError):
    """Operands live over different variable lists."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class Polynomial:
    """A sparse polynomial with Fraction coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponent, Scalar] = ()):
        self.variables: tuple[str, ...] = tuple(variables)
        nvars = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in dict(terms).items():
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            clean[exp] = coeff
        self.terms: dict[Exponent, Fraction] = clean

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Iterable[str], value: Scalar) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Iterable[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        idx = variables.index(name)
        exp = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {exp: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self) -> int:
        """Return the total degree, with -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.variables != other.variables:
            raise VariableMismatchError(
                f"variable lists differ: {self.variables} vs {other.variables}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            acc = out.get(exp, Fraction(0)) + coeff
            if acc:
                out[exp] = acc
            else:
                out.pop(exp, None)
        result = Polynomial.zero(self.variables)
        result.terms = out
        return result

    def __neg__(self) -> "Polynomial":
        result = Polynomial.zero(self.variables)
        result.terms = {exp: -coeff for exp, coeff in self.terms.items()}
        return result

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(a + b for a, b in zip(ea, eb))
                acc = out.get(exp, Fraction(0)) + ca * cb
                if acc:
                    out[exp] = acc
                else:
                    out.pop(exp, None)
        result = Polynomial.zero(self.variables)
        result.terms = out
        return result

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, power: int) -> "Polynomial":
        if power < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.variables, 1)
        for _ in range(power):
            result = result * self
        return result

    def scaled(self, scalar: Scalar) -> "Polynomial":
        scalar = _as_fraction(scalar)
        result = Polynomial.zero(self.variables)
        if scalar:
            result.terms = {exp: coeff * scalar for exp, coeff in self.terms.items()}
        return result

    def derivative(self, var: Union[int, str]) -> "Polynomial":
        """Return the partial derivative with respect to one variable."""
        idx = self.variables.index(var) if isinstance(var, str) else var
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            e = exp[idx]
            if e == 0:
                continue
            new = exp[:idx] + (e - 1,) + exp[idx + 1 :]
            out[new] = coeff * e
        result = Polynomial.zero(self.variables)
        result.terms = out
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, variables={self.variables})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        chunks: list[str] = []
        for position, (exp, coeff) in enumerate(items):
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            factors = []
            for name, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            if position == 0:
                chunks.append(("-" if negative else "") + body)
            else:
                chunks.append((" - " if negative else " + ") + body)
        return "".join(chunks)


class PolyIdeal:
    """An ideal given by a nonempty generator list over common variables."""

    __slots__ = ("variables", "generators")

    def __init__(self, generators: Iterable[Polynomial]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        variables = gens[0].variables
        for g in gens[1:]:
            if g.variables != variables:
                raise VariableMismatchError("ideal generators use different variable lists")
        self.variables = variables
        self.generators = gens

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyIdeal)
            and self.variables == other.variables
            and self.generators == other.generators
        )

    def __repr__(self) -> str:
        inner = ", ".join(str(g) for g in self.generators)
        return f"PolyIdeal({inner})"


def jacobian_ideal(f: Polynomial) -> PolyIdeal:
    """Return the ideal of all partial derivatives of ``f``."""
    if f.is_constant():
        raise ValueError("the Jacobian ideal of a constant is not defined")
    return PolyIdeal(tuple(f.derivative(i) for i in range(len(f.variables))))


# Parsing.  Tokens are single-character operators, unsigned integer
# literals, and identifiers; whitespace separates tokens but is never
# required.

_OPERATORS = "+-*/^"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPERATORS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = variables
        self.index = {name: i for i, name in enumerate(variables)}

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        result = Polynomial.zero(self.variables)
        sign = 1
        kind, _, _ = self.peek()
        if kind in "+-":
            sign = 1 if kind == "+" else -1
            self.advance()
        while True:
            result = result + self.parse_term().scaled(sign)
            kind, _, pos = self.peek()
            if kind == "end":
                return result
            if kind in "+-":
                sign = 1 if kind == "+" else -1
                self.advance()
                continue
            raise PolyParseError("expected '+' or '-' between terms", pos)

    def parse_coefficient(self) -> Fraction:
        _, text, _ = self.advance()
        numerator = int(text)
        kind, _, _ = self.peek()
        if kind != "/":
            return Fraction(numerator)
        self.advance()
        kind, dtext, dpos = self.peek()
        if kind != "int":
            raise PolyParseError("expected an integer denominator", dpos)
        self.advance()
        denominator = int(dtext)
        if denominator <= 0:
            raise PolyParseError("denominator must be a positive integer", dpos)
        return Fraction(numerator, denominator)

    def parse_term(self) -> Polynomial:
        coeff = Fraction(1)
        kind, _, pos = self.peek()
        if kind == "int":
            coeff = self.parse_coefficient()
            kind, _, pos = self.peek()
            if kind == "*":
                self.advance()
            elif kind in ("name", "int"):
                raise PolyParseError("implicit multiplication is not allowed", pos)
            else:
                return Polynomial.constant(self.variables, coeff)
        exponents = [0] * len(self.variables)
        while True:
            kind, name, pos = self.peek()
            if kind != "name":
                raise PolyParseError("expected a variable", pos)
            self.advance()
            if name not in self.index:
                raise PolyParseError(f"unknown variable {name!r}", pos)
            power = 1
            kind, _, _ = self.peek()
            if kind == "^":
                self.advance()
                kind, etext, epos = self.peek()
                if kind == "-":
                    raise PolyParseError("negative exponent", epos)
                if kind != "int":
                    raise PolyParseError("expected a positive integer exponent", epos)
                self.advance()
                power = int(etext)
                if power <= 0:
                    raise PolyParseError("exponent must be a positive integer", epos)
            exponents[self.index[name]] += power
            kind, _, pos = self.peek()
            if kind == "*":
                self.advance()
                continue
            if kind in ("name", "int"):
                raise PolyParseError("implicit multiplication is not allowed", pos)
            break
        return Polynomial(self.variables, {tuple(exponents): coeff})


def parse_polynomial(text: str, variables: Iterable[str]) -> Polynomial:
    """Parse polynomial text over the given variables."""
    return _Parser(text, tuple(variables)).parse()
