"""Tests for the system catalog: indices, levels, factorization, generators."""

import math
from fractions import Fraction

import pytest

from su11ladder.opalg import Coefficient, DiffOperator, OperatorTerm, commutator, multiply
from su11ladder.systems import (
    SYMBOLS,
    DomainError,
    NoFactorizationError,
    SystemKind,
    SystemSpec,
    UnsupportedGenerator,
    angular_index,
    build_generators,
    build_hamiltonian_form,
    casimir,
    expected_casimir_constant,
    factorize_system,
    generator_triple,
    ladder_coefficient,
    level,
    schrodinger_factorize,
    verify_factorization_identity,
)


def rat(q):
    return Coefficient.rational(SYMBOLS, Fraction(q))


def sym(name, power=1, scale=1):
    return Coefficient.symbol(SYMBOLS, name, power, Fraction(scale))


def op(*terms):
    return DiffOperator(SYMBOLS, [OperatorTerm(c, x, d) for c, x, d in terms])


ALL_KINDS = list(SystemKind)


class TestSpecValidation:
    def test_dimension_and_momentum_bounds(self):
        with pytest.raises(DomainError):
            SystemSpec.oscillator(1, 0)
        with pytest.raises(DomainError):
            SystemSpec.oscillator(3, -1)

    def test_pseudo_needs_positive_strength(self):
        with pytest.raises(DomainError):
            SystemSpec.pseudo_harmonic(3, 0, A=0)
        with pytest.raises(DomainError):
            SystemSpec.pseudo_harmonic(3, 0, A=-1)

    def test_mie_needs_attractive_strength(self):
        with pytest.raises(DomainError):
            SystemSpec.mie(3, 0, A=1)
        # the coupling is the attractive strength with its sign flipped
        assert SystemSpec.mie(3, 0, A=-2).coupling == 2

    def test_inverse_square_must_be_nonnegative(self):
        with pytest.raises(DomainError):
            SystemSpec.pseudo_harmonic(3, 0, B=-1)

    def test_plain_kinds_take_no_strength(self):
        with pytest.raises(DomainError):
            SystemSpec(SystemKind.OSCILLATOR, 3, 0, strength=Fraction(1))


class TestAngularIndex:
    def test_oscillator_examples(self):
        assert angular_index(SystemSpec.oscillator(3, 0)).exact == Fraction(1, 2)
        assert angular_index(SystemSpec.oscillator(2, 0)).exact == 0
        assert angular_index(SystemSpec.hydrogen(10, 2)).exact == 6

    def test_pseudo_reduces_to_oscillator_at_zero_strength(self):
        assert angular_index(SystemSpec.pseudo_harmonic(3, 1, B=0)).exact == Fraction(3, 2)

    def test_corrected_half_factor(self):
        # oracle: the index must satisfy
        # idx^2 - 1/4 = (N-1)(N-3)/4 + l(l+N-2) + 2B for every (N, l, B)
        for dim, ell, b in [(2, 0, Fraction(3, 8)), (3, 2, Fraction(1)),
                            (5, 1, Fraction(7, 3)), (10, 2, Fraction(2))]:
            idx = angular_index(SystemSpec.pseudo_harmonic(dim, ell, B=b))
            rhs = (Fraction((dim - 1) * (dim - 3), 4)
                   + ell * (ell + dim - 2) + 2 * b)
            assert idx.squared - Fraction(1, 4) == rhs

    def test_derived_example(self):
        idx = angular_index(SystemSpec.pseudo_harmonic(2, 0, B=Fraction(3, 8)))
        assert idx.exact is None
        assert idx.value == pytest.approx(math.sqrt(3) / 2, abs=1e-15)


class TestLevels:
    def test_oscillator_ground_and_excited(self):
        spec = SystemSpec.oscillator(3, 0)
        assert level(spec, 0).value == 1.5
        assert level(spec, 2).value == 5.5  # equals 2n + l + N/2
        assert level(spec, 2).value == 2 * 2 + 0 + 3 / 2

    def test_hydrogen_ground(self):
        assert level(SystemSpec.hydrogen(3, 0), 0).value == 1.0

    def test_energies(self):
        assert level(SystemSpec.hydrogen(3, 0), 0).energy == -0.5
        assert level(SystemSpec.oscillator(3, 0), 1).energy == 3.5
        # pseudo-harmonic with A = 1/2 has omega = 1 and shifted energy
        spec = SystemSpec.pseudo_harmonic(3, 0, A=Fraction(1, 2), C=Fraction(2))
        assert level(spec, 0).energy == pytest.approx(1.5 + 2.0)
        mie = SystemSpec.mie(3, 0, A=-1, C=Fraction(1))
        assert level(mie, 0).energy == pytest.approx(-0.5 + 1.0)

    def test_unit_ladder_spacing_shifts_principal_number_by_two(self):
        # raising n by one moves 2n + l by exactly two at fixed l
        spec = SystemSpec.oscillator(5, 2)
        for n in range(6):
            assert level(spec, n + 1).value - level(spec, n).value == 2.0
            nu = 2 * n + spec.ell
            assert (2 * (n + 1) + spec.ell) - nu == 2

    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            level(SystemSpec.oscillator(3, 0), -1)


class TestHamiltonianForm:
    def test_oscillator_terms(self):
        got = build_hamiltonian_form(SystemSpec.oscillator(3, 0))
        expected = op((rat(-1), 2, 2), (rat(1), 4, 0), (sym("lam", scale=-2), 2, 0))
        assert got == expected

    def test_hydrogen_with_unit_coupling(self):
        got = build_hamiltonian_form(SystemSpec.hydrogen(3, 0)).substitute({"xi": 1})
        expected = op((rat(-1), 2, 2), (sym("K", scale=-2), 1, 0), (rat(1), 2, 0))
        assert got == expected

    def test_mie_reduces_to_hydrogen_under_symbol_identification(self):
        mie = build_hamiltonian_form(SystemSpec.mie(3, 0, B=0))
        hyd = build_hamiltonian_form(SystemSpec.hydrogen(3, 0))
        binding = {"zeta": Fraction(3), "Sig": Fraction(7, 2)}
        other = {"xi": Fraction(3), "K": Fraction(7, 2)}
        assert mie.substitute(binding) == hyd.substitute(other)

    def test_concrete_level_substitution(self):
        got = build_hamiltonian_form(SystemSpec.oscillator(3, 0),
                                     symbolic_level=False, n=0)
        expected = op((rat(-1), 2, 2), (rat(1), 4, 0), (rat(-3), 2, 0))
        assert got == expected

    def test_irrational_level_refuses_numeric_substitution(self):
        spec = SystemSpec.pseudo_harmonic(2, 0, B=1)
        with pytest.raises(DomainError):
            build_hamiltonian_form(spec, symbolic_level=False, n=0)


class TestFactorization:
    def test_oscillator_branch_constants(self):
        upper, lower = factorize_system(SystemSpec.oscillator(3, 0))
        lam = sym("lam")
        assert upper.branch == "upper"
        assert upper.a == rat(-1) and upper.c == rat(-1)
        assert upper.f == lam - Fraction(1, 2)
        assert upper.b == lam - Fraction(3, 2)
        assert upper.g == upper.f * (upper.f - 1) - (sym("k2") - Fraction(1, 4))
        assert lower.a == rat(1)
        assert lower.f == -lam - Fraction(1, 2)
        assert lower.b == lower.f - 1

    def test_hydrogen_branch_constants(self):
        # cross-checked by expanding (A- - 1) A+ against the closed identity
        upper, lower = factorize_system(SystemSpec.hydrogen(3, 0))
        K = sym("K")
        assert upper.a == -sym("xi") and upper.c == upper.a
        assert upper.f == K and upper.b == K - 1
        assert upper.g == K * (K - 1) - (sym("k2") - Fraction(1, 4))
        assert lower.f == -K and lower.b == -K - 1
        assert lower.g == K * (K + 1) - (sym("k2") - Fraction(1, 4))

    def test_every_kind_factorizes(self):
        for kind in ALL_KINDS:
            spec = _spec_of(kind)
            assert len(factorize_system(spec)) == 2

    def test_unmatchable_operator(self):
        bad = op((rat(-1), 2, 2), (rat(1), 6, 0))
        with pytest.raises(NoFactorizationError):
            schrodinger_factorize(bad, 2)

    def test_wrong_leading_term(self):
        bad = op((rat(-2), 2, 2), (rat(1), 4, 0))
        with pytest.raises(NoFactorizationError):
            schrodinger_factorize(bad, 2)

    def test_identity_residuals_vanish(self):
        for kind in ALL_KINDS:
            for branch in ("raise", "lower"):
                assert verify_factorization_identity(_spec_of(kind), branch).is_zero

    def test_perturbed_constant_breaks_identity(self):
        # shift f by one inside the raising product and the residual shows it
        spec = SystemSpec.oscillator(3, 0)
        lam = sym("lam")
        half = Fraction(1, 2)
        plus_bad = (op((rat(-1), 1, 1), (rat(1), 2, 0))
                    - DiffOperator.from_coefficient(lam + half - 1)).scale(half)
        minus = (op((rat(1), 1, 1), (rat(1), 2, 0))
                 - DiffOperator.from_coefficient(lam - half)).scale(half)
        L = build_hamiltonian_form(spec)
        residual = (multiply(minus - DiffOperator.identity(SYMBOLS), plus_bad)
                    - DiffOperator.from_coefficient(
                        (lam + half) * (lam + Fraction(3, 2)) * Fraction(1, 4))
                    - L.scale(Fraction(1, 4)))
        assert not residual.is_zero


def _spec_of(kind):
    if kind is SystemKind.PSEUDO_HARMONIC:
        return SystemSpec.pseudo_harmonic(3, 0, B=1)
    if kind is SystemKind.MIE:
        return SystemSpec.mie(3, 0, B=1)
    return SystemSpec(kind, 3, 0)


class TestGenerators:
    def test_oscillator_g3_term_content(self):
        triple = generator_triple(SystemKind.OSCILLATOR)
        quarter = Fraction(1, 4)
        expected = op((rat(-quarter), 0, 2), (rat(quarter), 2, 0),
                      ((sym("k2") - quarter) * quarter, -2, 0))
        assert triple.g3 == expected

    def test_hydrogen_g3_term_content(self):
        triple = generator_triple(SystemKind.HYDROGEN)
        half_inv = sym("xi", -1, Fraction(1, 2))
        expected = op((half_inv * -1, 1, 2), (sym("xi", scale=Fraction(1, 2)), 1, 0),
                      (half_inv * (sym("k2") - Fraction(1, 4)), -1, 0))
        assert triple.g3 == expected

    def test_radial_centrifugal_numerator_is_orbital_term(self):
        # kappa^2 - ((N-2)/2)^2 must equal l(l+N-2) once bound to a spec
        triple = generator_triple(SystemKind.HYDROGEN, "r")
        for dim, ell in [(2, 0), (3, 1), (5, 2), (10, 1)]:
            spec = SystemSpec.hydrogen(dim, ell)
            bound = triple.g3.substitute(
                {"k2": angular_index(spec).squared, "N": dim,
                 "xi": 1, "K": Fraction(7, 3)})
            coeff = bound.coefficient_at(-1, 0).constant_value()
            orbital = Fraction(ell * (ell + dim - 2))
            assert coeff == Fraction(7, 3) / 2 * orbital

    def test_all_triples_close(self):
        for kind in ALL_KINDS:
            assert generator_triple(kind, "x").closes_algebra()
        assert generator_triple(SystemKind.HYDROGEN, "r").closes_algebra()
        assert generator_triple(SystemKind.OSCILLATOR, "r").closes_algebra()

    def test_ladder_relation_signs_match_su11(self):
        # [G+, G3] = -G+ exactly (raising shifts the g3 eigenvalue up by one)
        triple = generator_triple(SystemKind.OSCILLATOR)
        assert commutator(triple.gplus, triple.g3) == -triple.gplus
        assert commutator(triple.gminus, triple.g3) == triple.gminus

    def test_unsupported_variable_combinations(self):
        with pytest.raises(UnsupportedGenerator):
            generator_triple(SystemKind.PSEUDO_HARMONIC, "r")
        with pytest.raises(UnsupportedGenerator):
            generator_triple(SystemKind.MIE, "r")
        with pytest.raises(UnsupportedGenerator):
            generator_triple(SystemKind.OSCILLATOR, "t")

    def test_build_generators_uses_spec_kind(self):
        spec = SystemSpec.mie(5, 1, B=1)
        triple = build_generators(spec)
        assert "g2" in triple.g3.free_symbols()


class TestCasimir:
    def test_constants(self):
        osc = casimir(SystemSpec.oscillator(3, 0), 1)
        assert osc.constant_multiple_of_identity() == \
            (sym("k2") - 1) * Fraction(1, 4)
        hyd = casimir(SystemSpec.hydrogen(3, 0), 1)
        assert hyd.constant_multiple_of_identity() == sym("k2") - Fraction(1, 4)

    def test_sign_independence(self):
        for kind in ALL_KINDS:
            spec = _spec_of(kind)
            assert casimir(spec, 1) == casimir(spec, -1)

    def test_matches_expected_constant(self):
        for kind in ALL_KINDS:
            spec = _spec_of(kind)
            got = casimir(spec, 1).constant_multiple_of_identity()
            assert got == expected_casimir_constant(spec)

    def test_radial_triples_share_the_constant(self):
        # conjugation to the r variable cannot change the Casimir
        for kind, expected in [(SystemKind.OSCILLATOR, (sym("k2") - 1) * Fraction(1, 4)),
                               (SystemKind.HYDROGEN, sym("k2") - Fraction(1, 4))]:
            triple = generator_triple(kind, "r")
            value = (-multiply(triple.gplus, triple.gminus)
                     + multiply(triple.g3, triple.g3) - triple.g3)
            assert value.constant_multiple_of_identity() == expected


class TestLadderCoefficients:
    def test_examples(self):
        spec = SystemSpec.oscillator(3, 0)
        assert ladder_coefficient(spec, 0, 1) == pytest.approx(
            0.5 * math.sqrt(6), abs=1e-15)
        assert ladder_coefficient(spec, 0, -1) == 0.0
        assert ladder_coefficient(SystemSpec.hydrogen(3, 0), 0, 1) == pytest.approx(
            math.sqrt(2), abs=1e-15)

    def test_reduced_form_agrees_with_level_form(self):
        # the implementation uses sqrt((n+1)(n+idx+1)) etc.; compare with the
        # (value, index) radicands they were reduced from
        for kind in ALL_KINDS:
            spec = _spec_of(kind)
            for n in range(1, 7):
                v = level(spec, n).value
                idx = level(spec, n).index
                if kind.oscillator_like:
                    up = 0.5 * math.sqrt((v - idx + 1) * (v + idx + 1))
                    down = 0.5 * math.sqrt((v - idx - 1) * (v + idx - 1))
                else:
                    up = math.sqrt((v - idx + 0.5) * (v + idx + 0.5))
                    down = math.sqrt((v - idx - 0.5) * (v + idx - 0.5))
                assert ladder_coefficient(spec, n, 1) == pytest.approx(up, rel=1e-12)
                assert ladder_coefficient(spec, n, -1) == pytest.approx(down, rel=1e-12)

    def test_raising_equals_next_lowering(self):
        for kind in ALL_KINDS:
            spec = _spec_of(kind)
            for n in range(6):
                assert ladder_coefficient(spec, n, 1) == pytest.approx(
                    ladder_coefficient(spec, n + 1, -1), rel=1e-14)

    def test_ground_lowering_is_exactly_zero_even_for_irrational_index(self):
        spec = SystemSpec.pseudo_harmonic(2, 0, B=1)
        assert angular_index(spec).exact is None
        assert ladder_coefficient(spec, 0, -1) == 0.0


class TestReductionConsistency:
    def test_indices_levels_and_coefficients(self):
        for dim in (2, 3, 5, 10):
            for ell in (0, 1, 2):
                osc = SystemSpec.oscillator(dim, ell)
                pseudo = SystemSpec.pseudo_harmonic(dim, ell, B=0)
                hyd = SystemSpec.hydrogen(dim, ell)
                mie = SystemSpec.mie(dim, ell, B=0)
                assert angular_index(pseudo).squared == angular_index(osc).squared
                assert angular_index(mie).squared == angular_index(hyd).squared
                for n in range(5):
                    assert level(pseudo, n).value == level(osc, n).value
                    assert level(mie, n).value == level(hyd, n).value
                    for d in (1, -1):
                        assert ladder_coefficient(pseudo, n, d) == \
                            ladder_coefficient(osc, n, d)
                        assert ladder_coefficient(mie, n, d) == \
                            ladder_coefficient(hyd, n, d)

    def test_generators_identical_after_binding(self):
        osc = SystemSpec.oscillator(5, 1)
        pseudo = SystemSpec.pseudo_harmonic(5, 1, B=0)
        to = build_generators(osc).g3.substitute(osc.numeric_bindings())
        tp = build_generators(pseudo).g3.substitute(pseudo.numeric_bindings())
        assert to == tp
        hyd = SystemSpec.hydrogen(5, 1)
        mie = SystemSpec.mie(5, 1, B=0)
        for attr in ("g3", "gplus", "gminus"):
            a = getattr(build_generators(hyd), attr).substitute(hyd.numeric_bindings())
            b = getattr(build_generators(mie), attr).substitute(mie.numeric_bindings())
            assert a == b
