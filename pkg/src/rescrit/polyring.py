"""Sparse multivariate polynomials over the rationals, exact throughout.

A polynomial is a mapping from exponent tuples to nonzero Fraction
coefficients, tied to a Ring that fixes the ordered variable names.  The
zero polynomial is the empty mapping.  Monomials are compared in graded
reverse lexicographic order with ties between variables broken by
ascending variable index; this fixes the canonical printed form, the
leading-term conventions, and the default order of the Groebner layer.

Coefficients are Fractions and never floats, so every operation in this
module (and everything built on it) is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]
ScalarLike = "int | str | Fraction"


class RingMismatchError(ValueError):
    """An operation mixed polynomials attached to different rings."""


class ExactDivisionError(ArithmeticError):
    """A division that was required to be exact left a remainder."""


def grevlex_key(exponent: Exponent):
    """Sort key for graded reverse lexicographic order.

    Larger key means larger monomial: compare total degree first, then
    reversed exponents negated, so the monomial with the smaller exponent
    in the last differing variable wins.
    """
    return (sum(exponent), tuple(-e for e in reversed(exponent)))


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class Ring:
    """A commutative polynomial ring over Q, identified by variable names."""

    variables: tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.variables, tuple):
            object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for name in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"bad variable name {name!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, value) -> Polynomial:
        c = _as_fraction(value)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, which) -> Polynomial:
        """The variable given by index or name, as a polynomial."""
        i = which if isinstance(which, int) else self.index(which)
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): Fraction(1)})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, exponent: Sequence[int], coefficient=1) -> Polynomial:
        c = _as_fraction(coefficient)
        exp = tuple(int(e) for e in exponent)
        if len(exp) != self.nvars or any(e < 0 for e in exp):
            raise ValueError(f"bad exponent {exponent!r} for {self}")
        if c == 0:
            return self.zero()
        return Polynomial(self, {exp: c})

    def polynomial(self, terms: Mapping[Exponent, object]) -> Polynomial:
        data: dict[Exponent, Fraction] = {}
        for exp, coeff in terms.items():
            c = _as_fraction(coeff)
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp!r} for {self}")
            if c != 0:
                data[exp] = data.get(exp, Fraction(0)) + c
        return Polynomial(self, {e: c for e, c in data.items() if c != 0})

    def linear_form(self, coefficients: Sequence[object], constant=0) -> Polynomial:
        """Build sum(c_i * x_i) + constant from a coefficient row."""
        if len(coefficients) != self.nvars:
            raise ValueError("coefficient row has wrong length")
        terms: dict[Exponent, object] = {}
        for i, c in enumerate(coefficients):
            exp = [0] * self.nvars
            exp[i] = 1
            terms[tuple(exp)] = c
        terms[(0,) * self.nvars] = constant
        return self.polynomial(terms)

    def extend(self, extra_names: Sequence[str]) -> Ring:
        return Ring(self.variables + tuple(extra_names))

    def __repr__(self) -> str:
        return f"Ring({', '.join(self.variables)})"


class Polynomial:
    """Immutable sparse polynomial.  Build through Ring factory methods."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- basic structure ------------------------------------------------

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in descending grevlex order."""
        for exp in sorted(self._terms, key=grevlex_key, reverse=True):
            yield exp, self._terms[exp]

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Max term degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, var: int) -> int:
        if not self._terms:
            return -1
        return max(e[var] for e in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self._terms}
        return len(degrees) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def leading_exponent(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=grevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_exponent()]

    def homogeneous_component(self, degree: int) -> Polynomial:
        return Polynomial(
            self.ring,
            {e: c for e, c in self._terms.items() if sum(e) == degree},
        )

    # -- arithmetic ------------------------------------------------------

    def _check_ring(self, other: Polynomial):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"mixed rings {self.ring!r} and {other.ring!r}"
            )

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        return self.ring.const(other)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        data = dict(self._terms)
        for exp, c in other._terms.items():
            s = data.get(exp, Fraction(0)) + c
            if s == 0:
                data.pop(exp, None)
            else:
                data[exp] = s
        return Polynomial(self.ring, data)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = _as_fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {e: k * c for e, k in self._terms.items()})
        self._check_ring(other)
        if len(self._terms) > len(other._terms):
            big, small = self._terms, other._terms
        else:
            big, small = other._terms, self._terms
        data: dict[Exponent, Fraction] = {}
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = data.get(exp, Fraction(0)) + c1 * c2
                if s == 0:
                    data.pop(exp, None)
                else:
                    data[exp] = s
        return Polynomial(self.ring, data)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> Polynomial:
        c = _as_fraction(scalar)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self * (Fraction(1) / c)

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ----------------------------------------

    def partial_derivative(self, var: int) -> Polynomial:
        data: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            e = exp[var]
            if e == 0:
                continue
            new = list(exp)
            new[var] = e - 1
            data[tuple(new)] = c * e
        return Polynomial(self.ring, data)

    def evaluate(self, point: Sequence[object]) -> Fraction:
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong length")
        values = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(values, exp):
                if e:
                    term *= v**e
            total += term
        return total

    def substitute(self, replacements: Mapping[int, Polynomial]) -> Polynomial:
        """Replace variables (by index) with polynomials of the same ring.

        Unlisted variables are kept.  Powers of each replacement are
        cached, so repeated exponents stay cheap.
        """
        if not replacements:
            return self
        ring = self.ring
        powers: dict[int, list[Polynomial]] = {
            i: [ring.one()] for i in replacements
        }
        result = ring.zero()
        for exp, c in self._terms.items():
            residual = [0] * ring.nvars
            factor = ring.const(c)
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                if i in replacements:
                    cache = powers[i]
                    while len(cache) <= e:
                        cache.append(cache[-1] * replacements[i])
                    factor = factor * cache[e]
                else:
                    residual[i] = e
            if any(residual):
                factor = factor * ring.monomial(residual)
            result = result + factor
        return result

    def map_to_ring(self, ring: Ring) -> Polynomial:
        """Reinterpret in a ring whose variables contain this ring's by name."""
        positions = [ring.index(name) for name in self.ring.variables]
        data: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            new = [0] * ring.nvars
            for pos, e in zip(positions, exp):
                new[pos] = e
            data[tuple(new)] = c
        return Polynomial(ring, data)

    # -- printing ----------------------------------------------------------

    def _term_string(self, exp: Exponent, coeff: Fraction) -> str:
        factors = []
        for name, e in zip(self.ring.variables, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            return str(coeff)
        body = "*".join(factors)
        if coeff == 1:
            return body
        if coeff == -1:
            return f"-{body}"
        return f"{coeff}*{body}"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in self.items():
            text = self._term_string(exp, coeff)
            if not parts:
                parts.append(text)
            elif text.startswith("-"):
                parts.append(f"- {text[1:]}")
            else:
                parts.append(f"+ {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# -- exact division ---------------------------------------------------------


def try_exact_divide(numerator: Polynomial, divisor: Polynomial):
    """Return numerator / divisor if the division is exact, else None."""
    if numerator.ring != divisor.ring:
        raise RingMismatchError("division across different rings")
    if divisor.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    ring = numerator.ring
    remainder = dict(numerator._terms)
    quotient: dict[Exponent, Fraction] = {}
    lead = max(divisor._terms, key=grevlex_key)
    lead_coeff = divisor._terms[lead]
    while remainder:
        exp = max(remainder, key=grevlex_key)
        delta = tuple(a - b for a, b in zip(exp, lead))
        if any(d < 0 for d in delta):
            return None
        coeff = remainder[exp] / lead_coeff
        quotient[delta] = coeff
        for dexp, dcoeff in divisor._terms.items():
            target = tuple(a + b for a, b in zip(delta, dexp))
            s = remainder.get(target, Fraction(0)) - coeff * dcoeff
            if s == 0:
                remainder.pop(target, None)
            else:
                remainder[target] = s
    return Polynomial(ring, quotient)


def exact_divide(numerator: Polynomial, divisor: Polynomial) -> Polynomial:
    """Divide exactly; raise ExactDivisionError if a remainder survives."""
    result = try_exact_divide(numerator, divisor)
    if result is None:
        raise ExactDivisionError(
            f"({numerator}) is not divisible by ({divisor})"
        )
    return result


def divides(divisor: Polynomial, multiple: Polynomial) -> bool:
    return try_exact_divide(multiple, divisor) is not None


def product(ring: Ring, factors: Iterable[Polynomial]) -> Polynomial:
    result = ring.one()
    for f in factors:
        result = result * f
    return result


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot tokenize {text[pos:pos + 10]!r}")
        pos = match.end()
        if match.lastgroup == "op" and match.group("op") == "**":
            tokens.append(("op", "^"))
        else:
            tokens.append((match.lastgroup, match.group(match.lastgroup)))
    return tokens


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse `2*x^2*y - 3/4*z + 1` style syntax into a polynomial.

    Grammar: sums/differences of products of factors; a factor is a
    rational literal `p` or `p/q`, a variable, or a parenthesized
    expression, optionally raised to a nonnegative integer with `^`
    (or `**`).  Multiplication is always explicit.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(expected=None):
        nonlocal pos
        kind, value = peek()
        if kind is None:
            raise ValueError("unexpected end of polynomial text")
        if expected is not None and value != expected:
            raise ValueError(f"expected {expected!r}, found {value!r}")
        pos += 1
        return kind, value

    def parse_sum() -> Polynomial:
        sign = Fraction(1)
        kind, value = peek()
        while kind == "op" and value in "+-":
            take()
            if value == "-":
                sign = -sign
            kind, value = peek()
        result = parse_product() * sign
        while True:
            kind, value = peek()
            if kind == "op" and value in "+-":
                take()
                sign = Fraction(1) if value == "+" else Fraction(-1)
                kind, value = peek()
                while kind == "op" and value in "+-":
                    take()
                    if value == "-":
                        sign = -sign
                    kind, value = peek()
                result = result + parse_product() * sign
            else:
                return result

    def parse_product() -> Polynomial:
        result = parse_factor()
        while True:
            kind, value = peek()
            if kind == "op" and value == "*":
                take()
                result = result * parse_factor()
            else:
                return result

    def parse_factor() -> Polynomial:
        kind, value = take()
        if kind == "number":
            base = ring.const(Fraction(value))
        elif kind == "name":
            if value not in ring.variables:
                raise ValueError(f"unknown variable {value!r}")
            base = ring.var(value)
        elif kind == "op" and value == "(":
            base = parse_sum()
            take(")")
        else:
            raise ValueError(f"unexpected token {value!r}")
        kind, value = peek()
        if kind == "op" and value == "^":
            take()
            ekind, evalue = take()
            if ekind != "number" or "/" in evalue:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(evalue)
        return base

    result = parse_sum()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens near {tokens[pos][1]!r}")
    return result
