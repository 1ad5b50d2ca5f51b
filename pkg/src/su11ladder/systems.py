"""The four radial systems and their su(1,1) generator algebra.

Each system reduces to a dimensionless second-order operator on the half
line whose eigenvalue problem factorizes into a pair of first-order ladder
operators.  This module builds those operators symbolically (exact
coefficients over the shared parameter set), solves the factorization
ansatz by coefficient matching, and exposes the closed-form level data the
numeric layer verifies independently.

Units: hbar = m = 1 throughout; the oscillator additionally uses omega = 1
and hydrogen e = 1, so the default couplings are xi = zeta = 1.  Physical
energies are recovered through :class:`LevelParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .opalg import (
    Coefficient,
    DiffOperator,
    ParameterSet,
    commutator,
    multiply,
)

__all__ = [
    "SystemKind",
    "SystemSpec",
    "LevelParams",
    "AngularIndex",
    "GeneratorTriple",
    "FactorizationSolution",
    "NoFactorizationError",
    "UnsupportedGenerator",
    "DomainError",
    "SYMBOLS",
    "angular_index",
    "level",
    "build_hamiltonian_form",
    "schrodinger_factorize",
    "factorize_system",
    "verify_factorization_identity",
    "build_generators",
    "generator_triple",
    "casimir",
    "expected_casimir_constant",
    "ladder_coefficient",
]

Rational = Union[int, Fraction]

#: Shared symbol table for every operator in the package.  ``k2``/``b2``/``g2``
#: are the squared angular indices (only squares appear in the operators);
#: ``lam``/``Lam``/``K``/``Sig`` are the level parameters; ``xi``/``zeta`` the
#: couplings; ``N`` the dimension.
SYMBOLS = ParameterSet(("k2", "b2", "g2", "lam", "Lam", "K", "Sig", "xi", "zeta", "N"))


class NoFactorizationError(Exception):
    """The matching system of the first-order ansatz has no solution."""


class UnsupportedGenerator(ValueError):
    """Requested a (system, variable) generator combination that does not exist."""


class DomainError(ValueError):
    """System constants outside the bound-state domain."""


class SystemKind(str, Enum):
    OSCILLATOR = "oscillator"
    HYDROGEN = "hydrogen"
    PSEUDO_HARMONIC = "pseudo-harmonic"
    MIE = "mie"

    @classmethod
    def parse(cls, text: str) -> "SystemKind":
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "oscillator": cls.OSCILLATOR,
            "osc": cls.OSCILLATOR,
            "harmonic": cls.OSCILLATOR,
            "hydrogen": cls.HYDROGEN,
            "coulomb": cls.HYDROGEN,
            "pseudo-harmonic": cls.PSEUDO_HARMONIC,
            "pseudoharmonic": cls.PSEUDO_HARMONIC,
            "pseudo": cls.PSEUDO_HARMONIC,
            "mie": cls.MIE,
            "mie-type": cls.MIE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown system kind {text!r}") from None

    @property
    def oscillator_like(self) -> bool:
        return self in (SystemKind.OSCILLATOR, SystemKind.PSEUDO_HARMONIC)

    @property
    def hydrogen_like(self) -> bool:
        return self in (SystemKind.HYDROGEN, SystemKind.MIE)


_INDEX_SYMBOL = {
    SystemKind.OSCILLATOR: "k2",
    SystemKind.HYDROGEN: "k2",
    SystemKind.PSEUDO_HARMONIC: "b2",
    SystemKind.MIE: "g2",
}

_LEVEL_SYMBOL = {
    SystemKind.OSCILLATOR: "lam",
    SystemKind.HYDROGEN: "K",
    SystemKind.PSEUDO_HARMONIC: "Lam",
    SystemKind.MIE: "Sig",
}

_COUPLING_SYMBOL = {
    SystemKind.HYDROGEN: "xi",
    SystemKind.MIE: "zeta",
}


def _frac(value, what: str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    raise DomainError(f"{what} must be an exact rational, got {value!r}")


@dataclass(frozen=True)
class SystemSpec:
    """One concrete radial problem: kind, dimension N >= 2, angular momentum
    ell >= 0 and the potential constants the kind needs.

    PseudoHarmonic reads strength/inverse_square/shift as the (A, B, C) of
    A r^2 + B/r^2 + C with A > 0; Mie reads them as the (A', B', C') of
    A'/r + B'/r^2 + C' with A' < 0 (attractive).  Oscillator and hydrogen
    carry no constants; hydrogen's coupling xi defaults to 1.
    """

    kind: SystemKind
    dim: int
    ell: int
    strength: Optional[Fraction] = None
    inverse_square: Fraction = field(default=Fraction(0))
    shift: Fraction = field(default=Fraction(0))
    coupling: Fraction = field(default=Fraction(1))

    def __post_init__(self):
        problems = []
        if not isinstance(self.dim, int) or self.dim < 2:
            problems.append(f"dimension must be an integer >= 2, got {self.dim!r}")
        if not isinstance(self.ell, int) or self.ell < 0:
            problems.append(f"angular momentum must be an integer >= 0, got {self.ell!r}")
        object.__setattr__(self, "inverse_square", _frac(self.inverse_square, "B"))
        object.__setattr__(self, "shift", _frac(self.shift, "C"))
        object.__setattr__(self, "coupling", _frac(self.coupling, "coupling"))
        if self.strength is not None:
            object.__setattr__(self, "strength", _frac(self.strength, "A"))
        if self.kind is SystemKind.PSEUDO_HARMONIC:
            if self.strength is None or self.strength <= 0:
                problems.append("pseudo-harmonic needs A > 0")
        elif self.kind is SystemKind.MIE:
            if self.strength is None or self.strength >= 0:
                problems.append("mie needs an attractive A' < 0")
        elif self.strength is not None:
            problems.append(f"{self.kind.value} takes no r^2 / 1/r strength constant")
        if self.inverse_square < 0:
            problems.append("inverse-square strength B must be >= 0")
        if self.coupling <= 0:
            problems.append("coupling must be positive")
        if problems:
            raise DomainError("; ".join(problems))

    # -- convenience constructors ------------------------------------------

    @classmethod
    def oscillator(cls, dim: int, ell: int) -> "SystemSpec":
        return cls(SystemKind.OSCILLATOR, dim, ell)

    @classmethod
    def hydrogen(cls, dim: int, ell: int, xi: Rational = 1) -> "SystemSpec":
        return cls(SystemKind.HYDROGEN, dim, ell, coupling=_frac(xi, "xi"))

    @classmethod
    def pseudo_harmonic(cls, dim: int, ell: int, A: Rational = Fraction(1, 2),
                        B: Rational = 0, C: Rational = 0) -> "SystemSpec":
        return cls(SystemKind.PSEUDO_HARMONIC, dim, ell, strength=_frac(A, "A"),
                   inverse_square=_frac(B, "B"), shift=_frac(C, "C"))

    @classmethod
    def mie(cls, dim: int, ell: int, A: Rational = -1, B: Rational = 0,
            C: Rational = 0) -> "SystemSpec":
        a = _frac(A, "A'")
        return cls(SystemKind.MIE, dim, ell, strength=a, inverse_square=_frac(B, "B'"),
                   shift=_frac(C, "C'"), coupling=-a)

    # -- derived symbols ----------------------------------------------------

    @property
    def index_symbol(self) -> str:
        return _INDEX_SYMBOL[self.kind]

    @property
    def level_symbol(self) -> str:
        return _LEVEL_SYMBOL[self.kind]

    @property
    def coupling_symbol(self) -> Optional[str]:
        return _COUPLING_SYMBOL.get(self.kind)

    def numeric_bindings(self) -> dict:
        """Exact bindings that specialize this system's symbolic generators."""
        out = {self.index_symbol: angular_index(self).squared}
        if self.coupling_symbol is not None:
            out[self.coupling_symbol] = self.coupling
        return out

    def case_id(self) -> str:
        base = f"{self.kind.value}-N{self.dim}-l{self.ell}"
        if self.kind in (SystemKind.PSEUDO_HARMONIC, SystemKind.MIE) and self.inverse_square:
            base += f"-B{self.inverse_square}"
        return base


@dataclass(frozen=True)
class AngularIndex:
    """Derived angular index kappa / beta / gamma.

    ``squared`` is always exact; ``exact`` is set when the index itself is
    rational (perfect-square radicand), which covers the oscillator and
    hydrogen always and the B = 0 reductions.
    """

    value: float
    squared: Fraction
    symbol: str
    exact: Optional[Fraction] = None


@dataclass(frozen=True)
class LevelParams:
    """Level n data: the dimensionless level value and the physical energy."""

    n: int
    index: float
    value: float
    energy: float

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("level number n must be >= 0")
        if not self.value > self.index:
            raise DomainError(
                f"level value {self.value} must exceed the angular index {self.index}")


@dataclass(frozen=True)
class GeneratorTriple:
    """su(1,1) triple (g3, g+, g-) in the x or r variable.

    The defining relations are [g+-, g3] = -+ g+- and [g+, g-] = -2 g3,
    verified exactly by :meth:`commutator_residuals`.
    """

    g3: DiffOperator
    gplus: DiffOperator
    gminus: DiffOperator
    variable: str

    def commutator_residuals(self) -> dict:
        return {
            "[G+,G3]+G+": commutator(self.gplus, self.g3) + self.gplus,
            "[G-,G3]-G-": commutator(self.gminus, self.g3) - self.gminus,
            "[G+,G-]+2*G3": commutator(self.gplus, self.gminus) + self.g3.scale(2),
        }

    def closes_algebra(self) -> bool:
        return all(r.is_zero for r in self.commutator_residuals().values())


@dataclass(frozen=True)
class FactorizationSolution:
    """Constants (a, b, c, f, g) of one branch of the first-order ansatz
    (x d/dx + a x^s + b)(-x d/dx + c x^s + f) = g on eigenfunctions."""

    a: Coefficient
    b: Coefficient
    c: Coefficient
    f: Coefficient
    g: Coefficient
    branch: str
    ansatz_xpow: int


# -- small builders over the shared symbol table ------------------------------


def _c(value: Rational) -> Coefficient:
    return Coefficient.rational(SYMBOLS, value)


def _sym(name: str, power: int = 1, scale: Rational = 1) -> Coefficient:
    return Coefficient.symbol(SYMBOLS, name, power, scale)


def _t(coeff: Coefficient, xpow: int = 0, dorder: int = 0) -> DiffOperator:
    return DiffOperator.term(coeff, xpow, dorder)


def _id(value: Rational = 1) -> DiffOperator:
    return DiffOperator.from_coefficient(_c(value))


_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


def _dim_poly(scale: Rational = 1, const: Rational = 0) -> Coefficient:
    """scale*N + const as a coefficient."""
    return _sym("N", 1, scale) + _c(const)


def _centrifugal_numerator(index_symbol: str) -> Coefficient:
    """index^2 - 1/4, the universal centrifugal combination."""
    return _sym(index_symbol) - _QUARTER


def _orbital_numerator(index_symbol: str) -> Coefficient:
    """index^2 - ((N-2)/2)^2 = ell*(ell+N-2), the r-variable centrifugal term."""
    nn = _sym("N")
    return _sym(index_symbol) - (_QUARTER * nn * nn - nn + 1)


# -- angular index and levels -------------------------------------------------


def angular_index(spec: SystemSpec) -> AngularIndex:
    """kappa = ell + (N-2)/2 for oscillator/hydrogen; beta/gamma pick up the
    inverse-square strength: half the square root of (2 ell + N - 2)^2 + 8B."""
    base = 2 * spec.ell + spec.dim - 2
    radicand = Fraction(base * base) + 8 * spec.inverse_square
    if radicand < 0:
        raise DomainError(
            f"over-attractive inverse-square term: (2l+N-2)^2 + 8B = {radicand} < 0")
    squared = radicand / 4
    num, den = squared.numerator, squared.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    exact = Fraction(rn, rd) if (rn * rn == num and rd * rd == den) else None
    value = float(exact) if exact is not None else math.sqrt(squared)
    return AngularIndex(value=value, squared=squared,
                        symbol=spec.index_symbol, exact=exact)


def level(spec: SystemSpec, n: int) -> LevelParams:
    """Closed-form level parameters, pinned by ground-state annihilation and
    unit ladder spacing; the finite-difference oracle confirms them."""
    if n < 0:
        raise DomainError("level number n must be >= 0")
    idx = angular_index(spec).value
    if spec.kind.oscillator_like:
        value = 2 * n + idx + 1
    else:
        value = n + idx + 0.5
    xi = float(spec.coupling)
    if spec.kind is SystemKind.OSCILLATOR:
        energy = value
    elif spec.kind is SystemKind.HYDROGEN:
        energy = -xi * xi / (2 * value * value)
    elif spec.kind is SystemKind.PSEUDO_HARMONIC:
        omega = math.sqrt(2 * float(spec.strength))
        energy = value * omega + float(spec.shift)
    else:
        energy = -xi * xi / (2 * value * value) + float(spec.shift)
    return LevelParams(n=n, index=idx, value=value, energy=energy)


# -- dimensionless Hamiltonian forms ------------------------------------------


def build_hamiltonian_form(spec: SystemSpec, symbolic_level: bool = True,
                           n: Optional[int] = None) -> DiffOperator:
    """The operator L with L U = -(index^2 - 1/4) U.

    Oscillator-like: -x^2 D^2 + x^4 - 2*level*x^2; hydrogen-like:
    -x^2 D^2 - 2*coupling*level*x + coupling^2 x^2.  The level parameter is
    the symbol ``lam``/``Lam``/``K``/``Sig`` unless ``symbolic_level`` is
    False, in which case level n is substituted exactly (which requires a
    rational index; otherwise a DomainError explains the failure).
    """
    lv = _sym(spec.level_symbol)
    if spec.kind.oscillator_like:
        op = _t(_c(-1), 2, 2) + _t(_c(1), 4, 0) + _t(lv * -2, 2, 0)
    else:
        cp = _sym(spec.coupling_symbol)
        op = _t(_c(-1), 2, 2) + _t(cp * lv * -2, 1, 0) + _t(cp * cp, 2, 0)
    if symbolic_level:
        return op
    if n is None:
        raise DomainError("a concrete level n is required when symbolic_level=False")
    idx = angular_index(spec)
    if idx.exact is None:
        raise DomainError(
            "the level parameter is irrational for this spec; keep it symbolic")
    if spec.kind.oscillator_like:
        lv_value = 2 * n + idx.exact + 1
    else:
        lv_value = n + idx.exact + _HALF
    return op.substitute({spec.level_symbol: lv_value})


# -- Schroedinger factorization ------------------------------------------------


def schrodinger_factorize(L: DiffOperator, ansatz_xpow: int,
                          index_symbol: str = "k2") -> list:
    """Solve (x d/dx + a x^s + b)(-x d/dx + c x^s + f) = g on eigenfunctions.

    Expands the ansatz, matches canonical coefficients against L (whose
    eigenvalue relation is L U = -(index^2 - 1/4) U) and solves the small
    matching system exactly.  Returns both sign branches; raises
    :class:`NoFactorizationError` when L has terms the ansatz cannot produce
    or the system is inconsistent.
    """
    s = ansatz_xpow
    if s not in (1, 2):
        raise NoFactorizationError(f"ansatz power must be 1 or 2, got {s}")
    params = L.params
    allowed = {(2, 2), (2 * s, 0), (s, 0), (0, 0)}
    extra = [t for t in L.terms if (t.xpow, t.dorder) not in allowed]
    if extra:
        shapes = ", ".join(f"x^{t.xpow}*D^{t.dorder}" for t in extra)
        raise NoFactorizationError(f"operator has unmatched terms: {shapes}")
    if L.coefficient_at(2, 2) != Coefficient.rational(params, -1):
        raise NoFactorizationError("leading term must be exactly -x^2*D^2")

    e_top = L.coefficient_at(2 * s, 0)   # must equal a*c
    e_mid = L.coefficient_at(s, 0)       # must equal c*s + a*f + b*c
    e_const = L.coefficient_at(0, 0)
    root = e_top.monomial_sqrt()
    if root is None:
        raise NoFactorizationError(
            "x^(2s) coefficient is not a perfect-square monomial; a*c has no solution")
    centrifugal = Coefficient.symbol(params, index_symbol) - Fraction(1, 4)

    solutions = []
    for branch, a in (("upper", -root), ("lower", root)):
        c = a
        # from the x^s match with b = f - 1:  f*(a+c) = e_mid - c*(s-1)
        f = (e_mid - c * (s - 1)) * (a + a).inverse()
        b = f - 1
        g = b * f - e_const - centrifugal
        left = _ansatz_factor(params, 1, a, b, s)
        right = _ansatz_factor(params, -1, c, f, s)
        residual = multiply(left, right) - L \
            - DiffOperator.from_coefficient(g + centrifugal + e_const)
        if not residual.is_zero:
            raise NoFactorizationError(
                f"matching system inconsistent on the {branch} branch: "
                f"residual {residual}")
        solutions.append(FactorizationSolution(a=a, b=b, c=c, f=f, g=g,
                                               branch=branch, ansatz_xpow=s))
    return solutions


def _ansatz_factor(params: ParameterSet, euler_sign: int, amp: Coefficient,
                   const: Coefficient, s: int) -> DiffOperator:
    """euler_sign * x d/dx + amp * x^s + const."""
    return (DiffOperator.term(Coefficient.rational(params, euler_sign), 1, 1)
            + DiffOperator.term(amp, s, 0)
            + DiffOperator.from_coefficient(const))


def factorize_system(spec: SystemSpec) -> list:
    """Both factorization branches of the system's Hamiltonian form."""
    s = 2 if spec.kind.oscillator_like else 1
    return schrodinger_factorize(build_hamiltonian_form(spec), s, spec.index_symbol)


def _level_shift_operators(spec: SystemSpec) -> tuple:
    """The level-dependent first-order pair (A+, A-) of the factorization.

    Oscillator-like: A+- = (−+ x d/dx + x^2 - level -+ 1/2)/2;
    hydrogen-like:   A+- = −+ x d/dx + coupling*x - level.
    """
    lv = _sym(spec.level_symbol)
    if spec.kind.oscillator_like:
        def op(sign):
            return (_t(_c(-sign), 1, 1) + _t(_c(1), 2, 0)
                    - DiffOperator.from_coefficient(lv + Fraction(sign, 2))).scale(_HALF)
    else:
        cp = _sym(spec.coupling_symbol)

        def op(sign):
            return (_t(_c(-sign), 1, 1) + _t(cp, 1, 0)
                    - DiffOperator.from_coefficient(lv))
    return op(1), op(-1)


def verify_factorization_identity(spec: SystemSpec, branch: str = "raise") -> DiffOperator:
    """Residual of the exact operator identity behind the factorization.

    ``raise`` checks (A- - 1) A+ - const - scale*L and ``lower`` checks
    (A+ + 1) A- - const - scale*L, where const and scale are the closed
    forms of the matching; the contract is a zero operator with the level
    fully symbolic.
    """
    if branch not in ("raise", "lower"):
        raise ValueError(f"branch must be 'raise' or 'lower', got {branch!r}")
    plus, minus = _level_shift_operators(spec)
    L = build_hamiltonian_form(spec)
    lv = _sym(spec.level_symbol)
    if spec.kind.oscillator_like:
        if branch == "raise":
            product = multiply(minus - _id(), plus)
            const = (lv + _HALF) * (lv + Fraction(3, 2)) * _QUARTER
        else:
            product = multiply(plus + _id(), minus)
            const = (lv - _HALF) * (lv - Fraction(3, 2)) * _QUARTER
        return product - DiffOperator.from_coefficient(const) - L.scale(_QUARTER)
    if branch == "raise":
        product = multiply(minus - _id(), plus)
        const = lv * (lv + 1)
    else:
        product = multiply(plus + _id(), minus)
        const = lv * (lv - 1)
    return product - DiffOperator.from_coefficient(const) - L


# -- generator triples ---------------------------------------------------------


def _oscillator_like_triple(index_symbol: str) -> GeneratorTriple:
    """g3 = (-D^2 + x^2 + (idx^2-1/4)/x^2)/4 and its level-free partners."""
    cent = _centrifugal_numerator(index_symbol)
    g3 = (_t(_c(-1), 0, 2) + _t(_c(1), 2, 0) + _t(cent, -2, 0)).scale(_QUARTER)

    def pm(sign: int) -> DiffOperator:
        return (_t(_c(-sign), 1, 1) + _t(_c(1), 2, 0) - g3.scale(2)
                - _id(Fraction(sign, 2))).scale(_HALF)

    return GeneratorTriple(g3=g3, gplus=pm(1), gminus=pm(-1), variable="x")


def _hydrogen_like_triple(index_symbol: str, coupling_symbol: str) -> GeneratorTriple:
    """g3 = (-x D^2 + c^2 x + (idx^2-1/4)/x)/(2c) and its partners."""
    cp = _sym(coupling_symbol)
    half_inv = _sym(coupling_symbol, -1, _HALF)
    cent = _centrifugal_numerator(index_symbol)
    g3 = (_t(half_inv * -1, 1, 2) + _t(half_inv * cp * cp, 1, 0)
          + _t(half_inv * cent, -1, 0))

    def pm(sign: int) -> DiffOperator:
        return _t(_c(-sign), 1, 1) + _t(cp, 1, 0) - g3

    return GeneratorTriple(g3=g3, gplus=pm(1), gminus=pm(-1), variable="x")


def _hydrogen_r_triple() -> GeneratorTriple:
    """Hydrogen generators in the physical radius, acting on the reduced
    radial functions; picks up the (N-1) first-derivative term."""
    pref = _sym("K") * _sym("xi", -1) * _HALF          # K/(2 xi)
    ratio = _sym("xi") * _sym("K", -1)                 # xi/K
    g3 = (_t(pref * -1, 1, 2)
          + _t(pref * -1 * _dim_poly(1, -1), 0, 1)
          + _t(pref * ratio * ratio, 1, 0)
          + _t(pref * _orbital_numerator("k2"), -1, 0))

    def pm(sign: int) -> DiffOperator:
        return (_t(_c(-sign), 1, 1) + _t(ratio, 1, 0)
                - DiffOperator.from_coefficient(_dim_poly(Fraction(sign, 2),
                                                          Fraction(-sign, 2)))
                - g3)

    return GeneratorTriple(g3=g3, gplus=pm(1), gminus=pm(-1), variable="r")


def _oscillator_r_triple() -> GeneratorTriple:
    """Oscillator generators in the physical radius (alpha = 1 units)."""
    g3 = (_t(_c(-1), 0, 2)
          + _t(_dim_poly(-1, 1), -1, 1)
          + _t(_c(1), 2, 0)
          + _t(_orbital_numerator("k2"), -2, 0)).scale(_QUARTER)

    def pm(sign: int) -> DiffOperator:
        return (_t(_c(-sign), 1, 1) + _t(_c(1), 2, 0)
                - DiffOperator.from_coefficient(_dim_poly(Fraction(sign, 2),
                                                          Fraction(-sign, 2)))
                - _id(Fraction(sign, 2))).scale(_HALF) - g3

    return GeneratorTriple(g3=g3, gplus=pm(1), gminus=pm(-1), variable="r")


def generator_triple(kind: SystemKind, variable: str = "x") -> GeneratorTriple:
    """Symbolic su(1,1) triple for a system kind in the given variable."""
    if variable not in ("x", "r"):
        raise UnsupportedGenerator(f"variable must be 'x' or 'r', got {variable!r}")
    if variable == "x":
        if kind is SystemKind.OSCILLATOR:
            return _oscillator_like_triple("k2")
        if kind is SystemKind.PSEUDO_HARMONIC:
            return _oscillator_like_triple("b2")
        if kind is SystemKind.HYDROGEN:
            return _hydrogen_like_triple("k2", "xi")
        return _hydrogen_like_triple("g2", "zeta")
    if kind is SystemKind.HYDROGEN:
        return _hydrogen_r_triple()
    if kind is SystemKind.OSCILLATOR:
        return _oscillator_r_triple()
    raise UnsupportedGenerator(
        f"r-variable generators exist only for oscillator and hydrogen, not {kind.value}")


def build_generators(spec: SystemSpec, variable: str = "x") -> GeneratorTriple:
    """Generator triple of a concrete spec (symbols stay free; bind them with
    :meth:`SystemSpec.numeric_bindings` for numeric work)."""
    return generator_triple(spec.kind, variable)


# -- Casimir -------------------------------------------------------------------


def casimir(spec: SystemSpec, sign: int = 1) -> DiffOperator:
    """-G(sign) G(-sign) + G3^2 - sign*G3; both signs give the same constant
    multiple of the identity."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    triple = build_generators(spec, "x")
    first, second = ((triple.gplus, triple.gminus) if sign == 1
                     else (triple.gminus, triple.gplus))
    return (-multiply(first, second) + multiply(triple.g3, triple.g3)
            - triple.g3.scale(sign))


def expected_casimir_constant(spec: SystemSpec) -> Coefficient:
    """(idx^2-1)/4 for oscillator-like systems, idx^2-1/4 for hydrogen-like."""
    idx = _sym(spec.index_symbol)
    if spec.kind.oscillator_like:
        return (idx - 1) * _QUARTER
    return idx - _QUARTER


# -- ladder coefficients --------------------------------------------------------


def ladder_coefficient(spec: SystemSpec, n: int, direction: int) -> float:
    """Matrix element of the raising (+1) / lowering (-1) generator between
    normalized eigenstates n and n +- 1.

    Oscillator-like: sqrt((v -+ idx +- 1)(v +- idx +- 1))/2 with v the level
    value, which reduces to sqrt((n+1)(n+idx+1)) raising and
    sqrt(n(n+idx)) lowering; hydrogen-like analogues use half-integer
    shifts and reduce to sqrt((n+1)(n+2*idx+1)) and sqrt(n(n+2*idx)).
    The reduced forms are used so the n = 0 lowering coefficient is exactly
    zero even for irrational indices.
    """
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction!r}")
    if n < 0:
        raise DomainError("level number n must be >= 0")
    idx = angular_index(spec).value
    if spec.kind.oscillator_like:
        if direction == 1:
            radicand = (n + 1) * (n + idx + 1)
        else:
            radicand = n * (n + idx)
    else:
        if direction == 1:
            radicand = (n + 1) * (n + 2 * idx + 1)
        else:
            radicand = n * (n + 2 * idx)
    if radicand < 0:
        raise RuntimeError(
            f"negative ladder radicand {radicand} violates the level invariant")
    return math.sqrt(radicand)
