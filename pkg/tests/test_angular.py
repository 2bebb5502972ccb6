import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dunklmorse.angular import (
    DunklParams,
    ParityLabels,
    azimuthal_eigenvalue,
    azimuthal_inner_product,
    azimuthal_wavefunction,
    polar_eigenvalue,
    polar_inner_product,
    polar_wavefunction,
    verify_azimuthal_eigen,
    verify_polar_eigen,
)
from dunklmorse.errors import DomainError

# Frozen from an explicit binomial-sum Jacobi in mpmath, normalized by mpmath.quad
AZ_PP_M2 = -0.6205437757700216  # (+,+), m=2, mu=(0.3, 0.1, 0), phi=0.7
POLAR_L1_M1 = 0.68337259219034  # s3=+1, ell=1, m=1, mu_i=0.2, theta=1.0

mus = st.floats(-0.49, 3.0)


class TestParams:
    def test_bound(self):
        with pytest.raises(DomainError):
            DunklParams(-0.5, 0.0, 0.0)
        with pytest.raises(DomainError):
            DunklParams(0.0, 0.0, -0.7)

    @given(mus, mus, mus)
    def test_delta(self, a, b, c):
        p = DunklParams(a, b, c)
        assert p.delta == -(1 + a + b + c)
        assert p.centrifugal_shift == pytest.approx(p.delta * (p.delta + 1), rel=1e-12, abs=1e-12)

    def test_labels(self):
        with pytest.raises(DomainError):
            ParityLabels(2, 1, 1)


class TestEigenvalues:
    def test_azimuthal_values(self):
        assert azimuthal_eigenvalue(0, DunklParams()) == 0.0
        assert azimuthal_eigenvalue(1, DunklParams()) == 4.0
        assert azimuthal_eigenvalue(1, DunklParams.isotropic(-0.4)) == pytest.approx(0.8, rel=1e-14)

    def test_azimuthal_negative_m(self):
        with pytest.raises(DomainError):
            azimuthal_eigenvalue(-1, DunklParams())

    def test_azimuthal_can_be_negative_for_half_m(self):
        # m = 1/2 with mu1 + mu2 < -1/2 is an allowed sector
        assert azimuthal_eigenvalue(0.5, DunklParams.isotropic(-0.4)) < 0

    @given(st.integers(0, 20).map(lambda k: k / 2), mus, mus)
    def test_azimuthal_nonnegative_above_half(self, m, a, b):
        if m >= 1 or a + b >= -0.5:
            assert azimuthal_eigenvalue(m, DunklParams(a, b, 0)) >= 0

    def test_polar_values(self):
        assert polar_eigenvalue(0, 0, DunklParams()) == 0.0
        assert polar_eigenvalue(1, 1, DunklParams.isotropic(-0.4)) == pytest.approx(10.4, rel=1e-14)
        with pytest.raises(DomainError):
            polar_eigenvalue(-1, 0, DunklParams())

    @given(st.integers(0, 20), st.integers(0, 20))
    def test_undeformed_limit(self, twice_ell, twice_m):
        ell, m = twice_ell / 2, twice_m / 2
        big_l = 2 * (ell + m)
        assert polar_eigenvalue(ell, m, DunklParams()) == big_l * (big_l + 1)
        assert azimuthal_eigenvalue(m, DunklParams()) == 4 * m * m


class TestFamilies:
    def test_frozen_azimuthal(self):
        val = azimuthal_wavefunction(ParityLabels(1, 1, 1), 2, DunklParams(0.3, 0.1, 0.0), 0.7)
        assert val == pytest.approx(AZ_PP_M2, rel=1e-12)

    def test_frozen_polar(self):
        val = polar_wavefunction(1, 1, 1, DunklParams.isotropic(0.2), 1.0)
        assert val == pytest.approx(POLAR_L1_M1, rel=1e-12)

    def test_constant_ground_states(self):
        p = DunklParams(0.2, 0.1, 0.3)
        phi = np.linspace(0.1, 6.0, 9)
        az = azimuthal_wavefunction(ParityLabels(), 0, p, phi)
        assert np.ptp(az) == 0.0
        theta = np.linspace(0.1, 3.0, 9)
        pol = polar_wavefunction(1, 0, 0, p, theta)
        assert np.ptp(pol) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("s1,s2,m", [(1, 1, 2), (-1, -1, 1), (-1, -1, 3), (1, -1, 0.5), (-1, 1, 2.5)])
    def test_reflection_parity(self, s1, s2, m):
        p = DunklParams(0.3, -0.2, 0.1)
        labels = ParityLabels(s1, s2, 1)
        phi = np.linspace(0.05, 2 * math.pi - 0.05, 41)
        f = azimuthal_wavefunction(labels, m, p, phi)
        np.testing.assert_allclose(azimuthal_wavefunction(labels, m, p, math.pi - phi), s1 * f, atol=1e-13)
        np.testing.assert_allclose(azimuthal_wavefunction(labels, m, p, -phi), s2 * f, atol=1e-13)

    @pytest.mark.parametrize("s3,ell", [(1, 0), (1, 2), (-1, 0.5), (-1, 2.5)])
    def test_polar_parity(self, s3, ell):
        p = DunklParams(0.3, -0.2, 0.1)
        theta = np.linspace(0.05, math.pi - 0.05, 31)
        f = polar_wavefunction(s3, ell, 1, p, theta)
        np.testing.assert_allclose(polar_wavefunction(s3, ell, 1, p, math.pi - theta), s3 * f, atol=1e-13)

    @pytest.mark.parametrize(
        "labels,m",
        [(ParityLabels(1, 1, 1), 0.5), (ParityLabels(-1, -1, 1), 0), (ParityLabels(1, -1, 1), 1), (ParityLabels(-1, 1, 1), 2)],
    )
    def test_inconsistent_index(self, labels, m):
        with pytest.raises(DomainError):
            azimuthal_wavefunction(labels, m, DunklParams(), 0.3)

    def test_inconsistent_polar_index(self):
        with pytest.raises(DomainError):
            polar_wavefunction(1, 0.5, 0, DunklParams(), 0.3)
        with pytest.raises(DomainError):
            polar_wavefunction(-1, 1, 0, DunklParams(), 0.3)

    def test_scalar_in_scalar_out(self):
        assert isinstance(azimuthal_wavefunction(ParityLabels(), 1, DunklParams(), 0.4), float)
        assert isinstance(polar_wavefunction(1, 1, 0, DunklParams(), 0.4), float)


def _sector_states(s1, s2, top=4):
    labels = ParityLabels(s1, s2, 1)
    out = []
    for twice in range(0, 2 * top + 1):
        try:
            labels.check_m(twice / 2)
        except DomainError:
            continue
        out.append(twice / 2)
    return labels, out


class TestOrthonormality:
    @pytest.mark.parametrize("mu", [-0.4, 0.0, 0.4])
    @pytest.mark.parametrize("s1,s2", [(1, 1), (-1, -1), (1, -1), (-1, 1)])
    def test_azimuthal_within_sector(self, mu, s1, s2):
        p = DunklParams(mu, 0.5 * mu, 0.2)
        labels, ms = _sector_states(s1, s2)
        for m, mp in itertools.combinations_with_replacement(ms, 2):
            target = 1.0 if m == mp else 0.0
            assert azimuthal_inner_product(labels, m, labels, mp, p) == pytest.approx(target, abs=1e-8)

    @pytest.mark.parametrize("s3,ells", [(1, [0, 1, 2, 3]), (-1, [0.5, 1.5, 2.5])])
    def test_polar(self, s3, ells):
        p = DunklParams(-0.3, 0.25, 0.4)
        for ell, ellp in itertools.combinations_with_replacement(ells, 2):
            target = 1.0 if ell == ellp else 0.0
            assert polar_inner_product(s3, ell, ellp, 1, p) == pytest.approx(target, abs=1e-8)


class TestOperatorResiduals:
    def test_constant_state(self):
        # only stencil rounding, about eps / h^2, remains
        assert verify_azimuthal_eigen(ParityLabels(), 0, DunklParams.isotropic(0.3)) < 1e-9

    def test_examples(self):
        p = DunklParams.isotropic(0.3)
        assert verify_azimuthal_eigen(ParityLabels(1, 1, 1), 1, p) <= 1e-6
        assert verify_azimuthal_eigen(ParityLabels(-1, 1, 1), 0.5, p) <= 1e-6

    @pytest.mark.parametrize("s3,ell", [(1, 0), (1, 3), (-1, 0.5), (-1, 2.5)])
    def test_polar_examples(self, s3, ell):
        assert verify_polar_eigen(s3, ell, 1.5, DunklParams.isotropic(-0.4)) <= 1e-5

    def test_unfactored_odd_polar_fails(self):
        # without the cos(theta) factor the s3 = -1 profile is not an eigenfunction
        from dunklmorse.angular import apply_polar_operator
        from dunklmorse.specfun import jacobi

        p = DunklParams.isotropic(0.2)
        m, ell = 1, 1.5

        def bare(t):
            return np.sin(t) ** 2 * jacobi(1, 2 * m + p.mu1 + p.mu2, p.mu3 + 0.5, np.cos(2 * t))

        theta = (np.arange(512) + 0.5) * math.pi / 512
        h = math.pi / 512
        res = (
            apply_polar_operator(bare, p, theta, h)
            - azimuthal_eigenvalue(m, p) / np.sin(theta) ** 2 * bare(theta)
            + polar_eigenvalue(ell, m, p) * bare(theta)
        )
        assert np.max(np.abs(res)) > 1.0

    def test_grid_guard(self):
        with pytest.raises(DomainError):
            verify_azimuthal_eigen(ParityLabels(), 1, DunklParams(), grid_size=32)

    def test_refinement(self):
        p = DunklParams.isotropic(0.4)
        coarse = verify_azimuthal_eigen(ParityLabels(1, 1, 1), 3, p, grid_size=128)
        fine = verify_azimuthal_eigen(ParityLabels(1, 1, 1), 3, p, grid_size=256)
        assert fine < coarse / 50
