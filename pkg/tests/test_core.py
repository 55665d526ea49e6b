import numpy as np
import pytest

from pdmorse import (
    AmbiguityParams,
    ConstantMass,
    DomainOverflowError,
    ExponentialMass,
    Grid,
    ParameterError,
    RationalMass,
    effective_potential,
    kinetic_correction,
)


def zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


class TestMassProfiles:
    def test_constant_positive_required(self):
        with pytest.raises(ParameterError):
            ConstantMass(-1.0)
        with pytest.raises(ParameterError):
            ConstantMass(0.0)

    def test_rational_kappa_positive_required(self):
        with pytest.raises(ParameterError):
            RationalMass(0.0)
        with pytest.raises(ParameterError):
            RationalMass(-0.5)

    @pytest.mark.parametrize(
        "mass",
        [ConstantMass(1.0), ConstantMass(2.5), ExponentialMass(), RationalMass(0.1), RationalMass(2.0)],
    )
    def test_positive_on_finite_x(self, mass):
        x = np.linspace(-5, 5, 101)
        m, _, _ = mass.evaluate(x)
        assert np.all(m > 0)

    @pytest.mark.parametrize("mass", [ExponentialMass(), RationalMass(0.1), RationalMass(1.3)])
    def test_derivatives_match_finite_differences(self, mass):
        # central differences with step 1e-5, relative 1e-6 on [-5, 5]
        x = np.linspace(-5, 5, 41)
        h = 1e-5
        m, m1, m2 = mass.evaluate(x)
        mp = mass.evaluate(x + h)[0]
        mm = mass.evaluate(x - h)[0]
        fd1 = (mp - mm) / (2 * h)
        fd2 = (mp - 2 * m + mm) / h**2
        assert np.max(np.abs(fd1 - m1) / np.maximum(np.abs(m1), 1e-30)) < 1e-6
        assert np.max(np.abs(fd2 - m2) / np.maximum(np.abs(m2), 1e-30)) < 1e-5

    def test_exponential_overflow_is_typed_error(self):
        with pytest.raises(DomainOverflowError) as err:
            ExponentialMass().evaluate(-400.0)
        assert err.value.where is not None


class TestEffectivePotential:
    def test_constant_mass_identity(self):
        # corrections vanish identically for any ordering parameters
        v = lambda x: np.sin(np.asarray(x)) + 3.0
        for alpha, beta in [(0.0, 0.0), (1.5, -0.3), (-2.0, 4.0)]:
            got = effective_potential(v, ConstantMass(1.0), AmbiguityParams(alpha, beta), 0.7)
            assert got == pytest.approx(float(v(0.7)), abs=0.0)

    def test_exponential_mass_correction_value(self):
        # M = e^{-2x}, alpha=beta=0, V=0: correction is -2 e^{2x}
        got = effective_potential(zero, ExponentialMass(), AmbiguityParams(), 0.0)
        assert got == pytest.approx(-2.0, rel=1e-14)

    def test_correction_against_finite_differences(self):
        # independent route: assemble the correction from numeric derivatives
        amb = AmbiguityParams(0.3, -0.2)
        mass = RationalMass(0.7)
        h = 1e-5
        for x in (-1.0, 0.0, 0.8, 2.0):
            m = mass.evaluate(x)[0]
            mp = mass.evaluate(x + h)[0]
            mm = mass.evaluate(x - h)[0]
            d1 = (mp - mm) / (2 * h)
            d2 = (mp - 2 * m + mm) / h**2
            expect = amb.half_beta_plus * d2 / m**2 - amb.cross_term * d1**2 / m**3
            got = effective_potential(zero, mass, amb, x)
            assert got == pytest.approx(expect, rel=1e-5)

    def test_rational_mass_matches_rescaled_morse(self):
        # V = B^2 e^{2x} - B(2A+1) e^x with the rational mass stays Morse
        # with couplings B'^2 = B^2 - 2[2a(a+b+1)+b+1] k^2,
        # B'(2A'+1) = B(2A+1) + (b+1) k
        kappa, a_c, b_c = 0.1, 2.0, 1.0
        amb = AmbiguityParams(0.0, 0.0)
        v = lambda x: b_c**2 * np.exp(2 * np.asarray(x, dtype=float)) - b_c * (2 * a_c + 1) * np.exp(
            np.asarray(x, dtype=float)
        )
        bp2 = b_c**2 - 2.0 * (2 * amb.alpha * (amb.alpha + amb.beta + 1) + amb.beta + 1) * kappa**2
        lin = b_c * (2 * a_c + 1) + (amb.beta + 1) * kappa
        got = effective_potential(v, RationalMass(kappa), amb, 0.0)
        expect = bp2 * 1.0 - lin * 1.0
        assert got == pytest.approx(expect, abs=1e-12)

    def test_overflow_reports_offending_coordinate(self):
        with pytest.raises(DomainOverflowError) as err:
            effective_potential(zero, ExponentialMass(), AmbiguityParams(), 360.0)
        assert err.value.where == pytest.approx(360.0)

    def test_ambiguity_combinations_give_bitwise_equal_potential(self):
        # (alpha, beta) and (-alpha-beta-1, beta) share both scalar
        # combinations, so V_eff must match bit for bit
        a, b = 0.3, 0.2
        amb1 = AmbiguityParams(a, b)
        amb2 = AmbiguityParams(-a - b - 1.0, b)
        assert amb1.half_beta_plus == amb2.half_beta_plus
        assert amb1.cross_term == amb2.cross_term
        x = np.linspace(-3, 3, 57)
        v1 = effective_potential(zero, RationalMass(0.4), amb1, x)
        v2 = effective_potential(zero, RationalMass(0.4), amb2, x)
        assert np.array_equal(v1, v2)


class TestKineticCorrection:
    def test_constant_mass_vanishes(self):
        for x in (-2.0, 0.0, 3.7):
            assert kinetic_correction(ConstantMass(4.0), x) == 0.0

    def test_exponential_mass_values(self):
        # (3/4) M'^2/M^3 - (1/2) M''/M^2 = e^{2x} for M = e^{-2x}
        assert kinetic_correction(ExponentialMass(), 0.0) == pytest.approx(1.0, rel=1e-14)
        assert kinetic_correction(ExponentialMass(), 1.0) == pytest.approx(np.exp(2.0), rel=1e-14)

    def test_matches_finite_differences(self):
        mass = RationalMass(0.5)
        h = 1e-5
        for x in (-1.5, 0.2, 1.1):
            m = mass.evaluate(x)[0]
            mp = mass.evaluate(x + h)[0]
            mm = mass.evaluate(x - h)[0]
            d1 = (mp - mm) / (2 * h)
            d2 = (mp - 2 * m + mm) / h**2
            expect = 0.75 * d1**2 / m**3 - 0.5 * d2 / m**2
            assert kinetic_correction(mass, x) == pytest.approx(expect, rel=1e-5, abs=1e-8)


class TestGrid:
    def test_spacing_and_interior(self):
        g = Grid(0.0, 1.0, 11)
        assert g.h == pytest.approx(0.1)
        assert g.interior().size == 9
        assert g.midpoints().size == 10
        assert g.points()[0] == 0.0 and g.points()[-1] == 1.0

    def test_validation(self):
        with pytest.raises(ParameterError):
            Grid(1.0, 0.0, 11)
        with pytest.raises(ParameterError):
            Grid(0.0, 1.0, 2)

    def test_refined_halves_spacing(self):
        g = Grid(-1.0, 1.0, 21)
        assert g.refined().h == pytest.approx(g.h / 2)
        assert g.refined().n_points == 41
