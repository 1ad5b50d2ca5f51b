"""Exact algebra of one-variable linear differential operators.

The carrier is a finite sum of terms ``c * x^p * d^m/dx^m`` where the power
``p`` may be negative (Laurent monomials in x) and every coefficient ``c``
is a Laurent polynomial over exact rationals in a fixed, ordered tuple of
symbolic parameters.  Products are normal ordered with the Leibniz rule --
all powers of x pushed left of all derivatives -- so each operator has a
unique canonical form and equality is decidable by comparing term lists.

No floating point enters this module; everything is ``fractions.Fraction``
over arbitrary-precision integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Union

__all__ = [
    "AlgebraError",
    "ParameterMismatch",
    "UnknownParameter",
    "ParameterSet",
    "Coefficient",
    "OperatorTerm",
    "DiffOperator",
    "normalize",
    "multiply",
    "commutator",
    "substitute",
    "format_coefficient",
    "format_operator",
]

Rational = Union[int, Fraction]


class AlgebraError(ValueError):
    """Structural misuse of the operator algebra."""


class ParameterMismatch(AlgebraError):
    """Operands were built over different parameter sets."""


class UnknownParameter(AlgebraError):
    """A symbol name that is not part of the parameter set."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise AlgebraError(f"expected an exact rational, got {type(value).__name__}")


def falling_factorial(p: int, k: int) -> int:
    """p*(p-1)*...*(p-k+1); valid for negative p, k >= 0."""
    out = 1
    for i in range(k):
        out *= p - i
    return out


class ParameterSet:
    """Ordered, immutable collection of distinct symbol names.

    Exponent vectors of :class:`Coefficient` index into this ordering, so it
    is fixed at construction.
    """

    __slots__ = ("names", "_pos")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise AlgebraError("parameter names must be unique")
        for name in names:
            if not name or not isinstance(name, str):
                raise AlgebraError(f"bad parameter name: {name!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_pos", {n: i for i, n in enumerate(names)})

    def __setattr__(self, key, value):
        raise AttributeError("ParameterSet is immutable")

    def index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise UnknownParameter(f"unknown parameter {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._pos

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, ParameterSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"ParameterSet({', '.join(self.names)})"

    @property
    def zero_exponents(self) -> tuple:
        return (0,) * len(self.names)


class Coefficient:
    """Laurent polynomial over exact rationals in a fixed parameter set.

    Stored as a map from integer exponent vectors (one slot per parameter,
    negative exponents allowed) to nonzero ``Fraction`` values; the empty map
    is the canonical zero.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params: ParameterSet, terms: Mapping[tuple, Rational] = ()):
        cleaned = {}
        width = len(params)
        for exps, value in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != width or not all(isinstance(e, int) for e in exps):
                raise AlgebraError(f"bad exponent vector {exps!r} for {params!r}")
            q = _as_fraction(value)
            if q:
                q = cleaned.get(exps, Fraction(0)) + q
                if q:
                    cleaned[exps] = q
                else:
                    del cleaned[exps]
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, key, value):
        raise AttributeError("Coefficient is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, params: ParameterSet) -> "Coefficient":
        return cls(params, {})

    @classmethod
    def rational(cls, params: ParameterSet, value: Rational) -> "Coefficient":
        return cls(params, {params.zero_exponents: _as_fraction(value)})

    @classmethod
    def one(cls, params: ParameterSet) -> "Coefficient":
        return cls.rational(params, 1)

    @classmethod
    def monomial(cls, params: ParameterSet, value: Rational,
                 powers: Mapping[str, int] = ()) -> "Coefficient":
        exps = list(params.zero_exponents)
        for name, power in dict(powers).items():
            exps[params.index(name)] += int(power)
        return cls(params, {tuple(exps): _as_fraction(value)})

    @classmethod
    def symbol(cls, params: ParameterSet, name: str, power: int = 1,
               scale: Rational = 1) -> "Coefficient":
        return cls.monomial(params, scale, {name: power})

    # -- queries -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant:
            names = sorted(self.free_symbols())
            raise AlgebraError(f"coefficient is not constant; contains {names}")
        return next(iter(self.terms.values()))

    def free_symbols(self) -> set:
        out = set()
        for exps in self.terms:
            for name, e in zip(self.params.names, exps):
                if e != 0:
                    out.add(name)
        return out

    def as_monomial(self) -> Optional[tuple]:
        """(exponents, value) when the coefficient is a single monomial."""
        if len(self.terms) != 1:
            return None
        return next(iter(self.terms.items()))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Coefficient"):
        if self.params != other.params:
            raise ParameterMismatch(
                f"cannot combine coefficients over {self.params!r} and {other.params!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.rational(self.params, other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for exps, q in other.terms.items():
            s = out.get(exps, Fraction(0)) + q
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Coefficient(self.params, out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient(self.params, {e: -q for e, q in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.rational(self.params, other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            return Coefficient(self.params, {e: v * q for e, v in self.terms.items()})
        if not isinstance(other, Coefficient):
            return NotImplemented
        self._check(other)
        out = {}
        for e1, q1 in self.terms.items():
            for e2, q2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exps, Fraction(0)) + q1 * q2
                if s:
                    out[exps] = s
                else:
                    del out[exps]
        return Coefficient(self.params, out)

    __rmul__ = __mul__

    def inverse(self) -> "Coefficient":
        """Reciprocal of a single-monomial coefficient."""
        mono = self.as_monomial()
        if mono is None:
            raise AlgebraError("only single-monomial coefficients are invertible")
        exps, value = mono
        return Coefficient(self.params, {tuple(-e for e in exps): Fraction(1) / value})

    def monomial_sqrt(self) -> Optional["Coefficient"]:
        """Principal square root of a perfect-square monomial, else None."""
        mono = self.as_monomial()
        if mono is None:
            return None
        exps, value = mono
        if value <= 0 or any(e % 2 for e in exps):
            return None
        num, den = value.numerator, value.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            return None
        root = tuple(e // 2 for e in exps)
        return Coefficient(self.params, {root: Fraction(rn, rd)})

    def substitute(self, bindings: Mapping[str, Rational]) -> "Coefficient":
        """Bind a subset of parameters to exact rationals."""
        slots = {}
        for name, value in dict(bindings).items():
            slots[self.params.index(name)] = _as_fraction(value)
        out = {}
        for exps, q in self.terms.items():
            value = q
            new = list(exps)
            dead = False
            for slot, bound in slots.items():
                e = new[slot]
                if e == 0:
                    continue
                if bound == 0:
                    if e < 0:
                        raise AlgebraError(
                            f"binding {self.params.names[slot]}=0 hits a negative power")
                    dead = True
                    break
                value *= bound ** e
                new[slot] = 0
            if dead or not value:
                continue
            key = tuple(new)
            s = out.get(key, Fraction(0)) + value
            if s:
                out[key] = s
            else:
                del out[key]
        return Coefficient(self.params, out)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Coefficient.rational(self.params, other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.params, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        return f"Coefficient({format_coefficient(self)})"


class OperatorTerm(NamedTuple):
    """One canonical term ``coeff * x^xpow * d^dorder``."""

    coeff: Coefficient
    xpow: int
    dorder: int


class DiffOperator:
    """Canonical finite sum of terms ``c(params) * x^p * d^m``.

    Terms are kept sorted by ``(dorder, xpow)`` with at most one term per
    ``(xpow, dorder)`` pair and no zero coefficients, so two operators are
    equal exactly when their term lists are.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params: ParameterSet, terms: Iterable[OperatorTerm] = ()):
        acc = {}
        for term in terms:
            coeff, xpow, dorder = term
            if not isinstance(coeff, Coefficient):
                raise AlgebraError("term coefficient must be a Coefficient")
            if coeff.params != params:
                raise ParameterMismatch(
                    f"term over {coeff.params!r} cannot join operator over {params!r}")
            if not isinstance(xpow, int) or not isinstance(dorder, int) or dorder < 0:
                raise AlgebraError(f"bad term shape ({xpow!r}, {dorder!r})")
            key = (xpow, dorder)
            held = acc.get(key)
            acc[key] = coeff if held is None else held + coeff
        cleaned = [OperatorTerm(c, x, d) for (x, d), c in acc.items() if c]
        cleaned.sort(key=lambda t: (t.dorder, t.xpow))
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "terms", tuple(cleaned))

    def __setattr__(self, key, value):
        raise AttributeError("DiffOperator is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, params: ParameterSet) -> "DiffOperator":
        return cls(params, ())

    @classmethod
    def identity(cls, params: ParameterSet) -> "DiffOperator":
        return cls.term(Coefficient.one(params), 0, 0)

    @classmethod
    def x_power(cls, params: ParameterSet, power: int = 1) -> "DiffOperator":
        return cls.term(Coefficient.one(params), power, 0)

    @classmethod
    def derivative(cls, params: ParameterSet, order: int = 1) -> "DiffOperator":
        return cls.term(Coefficient.one(params), 0, order)

    @classmethod
    def term(cls, coeff: Coefficient, xpow: int = 0, dorder: int = 0) -> "DiffOperator":
        return cls(coeff.params, [OperatorTerm(coeff, xpow, dorder)])

    @classmethod
    def from_coefficient(cls, coeff: Coefficient) -> "DiffOperator":
        return cls.term(coeff, 0, 0)

    # -- queries -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_dorder(self) -> int:
        return max((t.dorder for t in self.terms), default=0)

    def coefficient_at(self, xpow: int, dorder: int) -> Coefficient:
        for term in self.terms:
            if term.xpow == xpow and term.dorder == dorder:
                return term.coeff
        return Coefficient.zero(self.params)

    def constant_multiple_of_identity(self) -> Optional[Coefficient]:
        """The coefficient c when the operator is exactly c*Id, else None."""
        if not self.terms:
            return Coefficient.zero(self.params)
        if len(self.terms) == 1 and self.terms[0].xpow == 0 and self.terms[0].dorder == 0:
            return self.terms[0].coeff
        return None

    def free_symbols(self) -> set:
        out = set()
        for term in self.terms:
            out |= term.coeff.free_symbols()
        return out

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "DiffOperator"):
        if self.params != other.params:
            raise ParameterMismatch(
                f"cannot combine operators over {self.params!r} and {other.params!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffOperator.from_coefficient(Coefficient.rational(self.params, other))
        if isinstance(other, Coefficient):
            other = DiffOperator.from_coefficient(other)
        if not isinstance(other, DiffOperator):
            return NotImplemented
        self._check(other)
        return DiffOperator(self.params, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator(
            self.params, [OperatorTerm(-t.coeff, t.xpow, t.dorder) for t in self.terms])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self + (-DiffOperator.from_coefficient(
                other if isinstance(other, Coefficient)
                else Coefficient.rational(self.params, other)))
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "DiffOperator":
        if isinstance(factor, (int, Fraction)):
            factor = Coefficient.rational(self.params, factor)
        return DiffOperator(
            self.params,
            [OperatorTerm(factor * t.coeff, t.xpow, t.dorder) for t in self.terms])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.scale(other)
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "DiffOperator":
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("operator powers must be non-negative integers")
        out = DiffOperator.identity(self.params)
        for _ in range(n):
            out = multiply(out, self)
        return out

    def inverse_monomial(self) -> "DiffOperator":
        """Inverse of an operator of shape c*x^p with monomial c (no derivative)."""
        if len(self.terms) != 1 or self.terms[0].dorder != 0:
            raise AlgebraError("only multiplication monomials c*x^p are invertible")
        term = self.terms[0]
        return DiffOperator.term(term.coeff.inverse(), -term.xpow, 0)

    def substitute(self, bindings: Mapping[str, Rational]) -> "DiffOperator":
        return DiffOperator(
            self.params,
            [OperatorTerm(t.coeff.substitute(bindings), t.xpow, t.dorder)
             for t in self.terms])

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.params, self.terms))

    def __repr__(self) -> str:
        return f"DiffOperator({format_operator(self)})"

    def __str__(self) -> str:
        return format_operator(self)


# -- module-level operations ------------------------------------------------


def normalize(raw: Iterable[OperatorTerm],
              params: Optional[ParameterSet] = None) -> DiffOperator:
    """Collect raw terms into canonical form (merge, drop zeros, sort)."""
    raw = list(raw)
    if params is None:
        if not raw:
            raise AlgebraError("cannot infer the parameter set of an empty term list")
        params = raw[0].coeff.params
    return DiffOperator(params, raw)


def multiply(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Operator composition a∘b, normal ordered via the Leibniz rule.

    Uses d^m ∘ x^p = sum_k C(m,k) * p(p-1)...(p-k+1) * x^(p-k) * d^(m-k),
    exact for negative p as well.
    """
    a._check(b)
    acc = {}
    for t1 in a.terms:
        for t2 in b.terms:
            base = t1.coeff * t2.coeff
            for k in range(t1.dorder + 1):
                ff = falling_factorial(t2.xpow, k)
                if ff == 0:
                    continue
                coeff = base * (math.comb(t1.dorder, k) * ff)
                key = (t1.xpow + t2.xpow - k, t1.dorder + t2.dorder - k)
                held = acc.get(key)
                acc[key] = coeff if held is None else held + coeff
    return DiffOperator(
        a.params, [OperatorTerm(c, x, d) for (x, d), c in acc.items()])


def commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """[a, b] = a∘b − b∘a in canonical form."""
    return multiply(a, b) - multiply(b, a)


def substitute(op: DiffOperator, bindings: Mapping[str, Rational]) -> DiffOperator:
    """Bind a subset of parameters to exact rationals; the rest stay symbolic."""
    return op.substitute(bindings)


# -- canonical text rendering ------------------------------------------------
#
# The printer emits exactly the surface syntax the expression parser accepts,
# so parse(format_operator(op)) == op for every canonical operator.


def _format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_monomial(params: ParameterSet, exps: tuple, value: Fraction) -> str:
    symbols = []
    for name, e in zip(params.names, exps):
        if e == 0:
            continue
        symbols.append(name if e == 1 else f"{name}^{e}")
    if not symbols:
        return _format_rational(value)
    body = "*".join(symbols)
    if value == 1:
        return body
    if value == -1:
        return "-" + body
    return f"{_format_rational(value)}*{body}"


def format_coefficient(coeff: Coefficient) -> str:
    """Render a coefficient as a sum of monomials (no outer parentheses)."""
    if not coeff.terms:
        return "0"
    parts = []
    for exps in sorted(coeff.terms):
        text = _format_monomial(coeff.params, exps, coeff.terms[exps])
        if not parts:
            parts.append(text)
        elif text.startswith("-"):
            parts.append(f" - {text[1:]}")
        else:
            parts.append(f" + {text}")
    return "".join(parts)


def _format_term(term: OperatorTerm) -> str:
    body = []
    if term.xpow != 0:
        body.append("x" if term.xpow == 1 else f"x^{term.xpow}")
    if term.dorder != 0:
        body.append("D" if term.dorder == 1 else f"D^{term.dorder}")
    body_text = "*".join(body)
    mono = term.coeff.as_monomial()
    if mono is None:
        coeff_text = f"({format_coefficient(term.coeff)})"
        return f"{coeff_text}*{body_text}" if body_text else coeff_text
    exps, value = mono
    coeff_text = _format_monomial(term.coeff.params, exps, value)
    if not body_text:
        return coeff_text
    if coeff_text == "1":
        return body_text
    if coeff_text == "-1":
        return f"-{body_text}"
    return f"{coeff_text}*{body_text}"


def format_operator(op: DiffOperator) -> str:
    """Render an operator canonically; parseable back to the same operator."""
    if op.is_zero:
        return "0"
    parts = []
    for term in op.terms:
        text = _format_term(term)
        if not parts:
            parts.append(text)
        elif text.startswith("-"):
            parts.append(f" - {text[1:]}")
        else:
            parts.append(f" + {text}")
    return "".join(parts)
