import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _helpers import (
    max_coeff_diff,
    rand_hermitian,
    rand_hermitian_time_ordered,
    rand_hp,
    rand_matrix,
)
from gaussqsde.coeffs import (
    HPParams,
    NormalOrderedCoeffs,
    TimeOrderedCoeffs,
    hp_to_normal,
    normal_to_hp,
    time_to_normal,
    unitarity_residual,
)
from gaussqsde.errors import NotUnitaryError, SingularityError, ValidationError
from gaussqsde.operator_core import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z

seeds = st.integers(min_value=0, max_value=2**32 - 1)
Z2 = np.zeros((2, 2))
I2 = np.eye(2)


class TestTimeToNormal:
    def test_zero(self):
        Lc = time_to_normal(TimeOrderedCoeffs(Z2, Z2, Z2, Z2, 0.5))
        assert max(np.abs(Lc[i, j]).max() for i in (0, 1) for j in (0, 1)) == 0
        assert Lc.gamma == 1.0

    def test_hamiltonian_form_matches_damping_operator(self, rng):
        # E11 = 0, E10 = C, E01 = C^+, E00 = F:  L00 = -iF - kappa C^+C = -G at n=m=alpha=0
        C, F = rand_matrix(rng, 3), rand_hermitian(rng, 3)
        kappa = complex(0.8, -0.3)
        Lc = time_to_normal(TimeOrderedCoeffs.from_hamiltonian(C, F, kappa))
        G = 1j * F + kappa * C.conj().T @ C
        np.testing.assert_allclose(Lc.L10, -1j * C, atol=1e-15)
        np.testing.assert_allclose(Lc.L01, -1j * C.conj().T, atol=1e-15)
        np.testing.assert_allclose(Lc.L00, -G, atol=1e-14)
        np.testing.assert_allclose(Lc.L11, 0, atol=0)

    def test_scalar_cayley(self):
        Lc = time_to_normal(TimeOrderedCoeffs([[2]], [[0]], [[0]], [[0]], 0.5))
        assert Lc.L11[0, 0] == pytest.approx(-1 - 1j)
        W = 1 + Lc.gamma * Lc.L11[0, 0]
        assert W == pytest.approx(-1j)
        assert abs(W) == pytest.approx(1)

    def test_sign_of_kappa_term_in_L00(self):
        # a +kappa sign would break unitarity for this Hermitian input
        E = TimeOrderedCoeffs(Z2, SIGMA_MINUS, SIGMA_PLUS, Z2, 0.5)
        Lc = time_to_normal(E)
        assert unitarity_residual(Lc) <= 1e-15
        flipped = NormalOrderedCoeffs(
            Lc.L11, Lc.L10, Lc.L01, -1j * E.E00 + E.kappa * E.E01 @ E.E10, Lc.gamma
        )
        assert unitarity_residual(flipped) > 0.5

    def test_singular(self):
        # 1 + i kappa E11 = 0 for kappa = 1/2, E11 = 2i
        with pytest.raises(SingularityError) as exc:
            time_to_normal(TimeOrderedCoeffs([[2j]], [[0]], [[0]], [[0]], 0.5))
        assert exc.value.condition_number > 1e12 or not np.isfinite(exc.value.condition_number)

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            TimeOrderedCoeffs(Z2, Z2, np.zeros((3, 3)), Z2, 0.5)

    @given(seed=seeds, d=st.sampled_from([1, 2, 4, 8]))
    def test_preserves_unitarity(self, seed, d):
        E = rand_hermitian_time_ordered(np.random.default_rng(seed), d)
        assert unitarity_residual(time_to_normal(E)) <= 1e-10

    @given(seed=seeds, d=st.integers(1, 5))
    def test_closed_form_without_scattering(self, seed, d):
        rng = np.random.default_rng(seed)
        E10, E01, E00 = (rand_matrix(rng, d) for _ in range(3))
        kappa = complex(rng.uniform(0.1, 2), rng.uniform(-1, 1))
        Lc = time_to_normal(TimeOrderedCoeffs(np.zeros((d, d)), E10, E01, E00, kappa))
        assert np.abs(Lc.L11).max() == 0
        np.testing.assert_allclose(Lc.L10, -1j * E10, atol=1e-14)
        np.testing.assert_allclose(Lc.L01, -1j * E01, atol=1e-14)
        np.testing.assert_allclose(Lc.L00, -1j * E00 - kappa * E01 @ E10, atol=1e-13)

    @given(seed=seeds, d=st.integers(1, 6))
    def test_cayley_property(self, seed, d):
        E = rand_hermitian_time_ordered(np.random.default_rng(seed), d)
        Lc = time_to_normal(E)
        W = np.eye(d) + Lc.gamma * Lc.L11
        k = E.kappa
        cayley = (np.eye(d) - 1j * np.conj(k) * E.E11) @ np.linalg.inv(np.eye(d) + 1j * k * E.E11)
        assert np.abs(W - cayley).max() <= 1e-10
        assert np.linalg.norm(W.conj().T @ W - np.eye(d), 2) <= 1e-10


class TestUnitarityResidual:
    def test_hp_coefficients(self, rng):
        for d in (1, 2, 5):
            assert unitarity_residual(hp_to_normal(rand_hp(rng, d))) <= 1e-12

    def test_perturbed(self, rng):
        Lc = hp_to_normal(HPParams(I2, Z2, SIGMA_MINUS, 1.0))
        bad = NormalOrderedCoeffs(Lc.L11, Lc.L10 + 0.1 * I2, Lc.L01, Lc.L00, Lc.gamma)
        assert unitarity_residual(bad) > 0.05

    def test_by_hand_values(self):
        # only the (1,1) block is violated: L11 + L11^+ + gamma |L11|^2 with L11 = 1, gamma = 1
        Lc = NormalOrderedCoeffs([[1]], [[0]], [[0]], [[0]], 1.0)
        assert unitarity_residual(Lc) == pytest.approx(3.0)


class TestHP:
    def test_trivial(self):
        Lc = hp_to_normal(HPParams(I2, Z2, Z2, 1.0))
        assert max(np.abs(Lc[i, j]).max() for i in (0, 1) for j in (0, 1)) == 0

    def test_sigma_minus(self):
        Lc = hp_to_normal(HPParams(I2, Z2, SIGMA_MINUS, 1.0))
        np.testing.assert_allclose(Lc.L11, 0)
        np.testing.assert_allclose(Lc.L10, SIGMA_MINUS)
        np.testing.assert_allclose(Lc.L01, -SIGMA_PLUS)
        np.testing.assert_allclose(Lc.L00, -0.5 * SIGMA_PLUS @ SIGMA_MINUS)

    def test_scalar_matches_time_ordered(self):
        Lc = hp_to_normal(HPParams([[-1j]], [[0]], [[0]], 1.0))
        assert Lc.L11[0, 0] == pytest.approx(-1 - 1j)

    def test_roundtrip_example(self):
        h = HPParams(I2, 0.3 * SIGMA_Z, SIGMA_MINUS, 2.0)
        back = normal_to_hp(hp_to_normal(h))
        for name in ("W", "H", "L"):
            assert np.abs(getattr(back, name) - getattr(h, name)).max() <= 1e-12
        assert back.gamma == 2.0

    def test_zero_coeffs(self):
        h = normal_to_hp(NormalOrderedCoeffs(Z2, Z2, Z2, Z2, 1.0))
        np.testing.assert_allclose(h.W, I2)
        np.testing.assert_allclose(h.H, 0)
        np.testing.assert_allclose(h.L, 0)

    def test_scalar_chain(self):
        h = normal_to_hp(time_to_normal(TimeOrderedCoeffs([[2]], [[0]], [[0]], [[0]], 0.5)))
        assert h.W[0, 0] == pytest.approx(-1j)
        assert abs(h.H[0, 0].imag) <= 1e-15

    @given(seed=seeds, d=st.integers(1, 6))
    def test_roundtrip(self, seed, d):
        Lc = hp_to_normal(rand_hp(np.random.default_rng(seed), d))
        assert max_coeff_diff(hp_to_normal(normal_to_hp(Lc)), Lc) <= 1e-8

    @given(seed=seeds, d=st.sampled_from([1, 2, 3]))
    def test_time_ordered_to_hp(self, seed, d):
        E = rand_hermitian_time_ordered(np.random.default_rng(seed), d)
        Lc = time_to_normal(E)
        assert max_coeff_diff(hp_to_normal(normal_to_hp(Lc)), Lc) <= 1e-8

    def test_not_unitary(self):
        with pytest.raises(NotUnitaryError):
            normal_to_hp(NormalOrderedCoeffs([[1]], [[0]], [[0]], [[0]], 1.0))

    def test_rejects_nonunitary_W(self):
        with pytest.raises(ValidationError):
            HPParams(2 * I2, Z2, Z2, 1.0)

    def test_rejects_nonhermitian_H(self):
        with pytest.raises(ValidationError):
            HPParams(I2, SIGMA_MINUS, Z2, 1.0)
