import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussdiscord.measurement import (
    LN_2PIE,
    JointMeasurement,
    LocalMeasurement,
    SingularityError,
    conditional_cov_joint,
    conditional_cov_local,
    conditional_entropy,
    conditional_state_cov,
    gaussian_entropy,
    joint_povm_cov,
    local_povm_cov,
    outcome_cov,
    outcome_entropies,
    schur_complement,
)
from gaussdiscord.symplectic import TwoModeCov, random_physical_state, rotation, symplectic_eigenvalues

seeds = st.integers(0, 2**32 - 1)
SQ99 = math.sqrt(99)


def symmetric_t(a, t):
    c = t * math.sqrt(a * a - 1)
    return TwoModeCov.from_standard_form(a, a, c, -c)


def literal_schur(sigma, mu):
    full = sigma + mu
    a, b, c = full[:2, :2], full[2:, 2:], full[:2, 2:]
    return a - c @ np.linalg.inv(b) @ c.T


def random_joint(rng, l_low=-2.0):
    def local():
        return LocalMeasurement(rng.uniform(0, np.pi), 10 ** rng.uniform(l_low, 0))

    return JointMeasurement(rng.uniform(0, np.pi), rng.uniform(0, np.pi), rng.uniform(0, 1), local(), local())


class TestLocalPovm:
    def test_heterodyne(self):
        assert np.allclose(local_povm_cov(LocalMeasurement.heterodyne()), np.eye(2))

    def test_squeezed(self):
        assert np.allclose(local_povm_cov(LocalMeasurement(0.0, 0.5)), np.diag([0.5, 2.0]))

    def test_rotated(self):
        assert np.allclose(local_povm_cov(LocalMeasurement(math.pi / 2, 0.5)), np.diag([2.0, 0.5]), atol=1e-15)

    def test_homodyne_has_no_finite_cov(self):
        with pytest.raises(ValueError):
            local_povm_cov(LocalMeasurement.homodyne())

    @pytest.mark.parametrize("l", [-0.1, 1.5])
    def test_l_out_of_range(self, l):
        with pytest.raises(ValueError):
            LocalMeasurement(0.0, l)

    def test_theta_reduced_mod_pi(self):
        assert LocalMeasurement(math.pi + 0.25, 0.5).theta == pytest.approx(0.25)

    @given(st.floats(0, 10), st.floats(1e-3, 1))
    def test_unit_determinant(self, theta, l):
        assert np.linalg.det(local_povm_cov(LocalMeasurement(theta, l))) == pytest.approx(1.0, abs=1e-9)

    @given(st.floats(0, 3), st.floats(1e-9, 1))
    def test_principal_frame(self, theta, l):
        # a determinant of entries near 1/l is not computable to 1e-9, so check the frame instead
        m = LocalMeasurement(theta, l)
        r = rotation(m.theta)
        back = r.T @ local_povm_cov(m) @ r
        assert back[0, 0] == pytest.approx(l, rel=1e-6, abs=1e-14 / l)
        assert back[1, 1] == pytest.approx(1 / l, rel=1e-12)


class TestJointPovm:
    def test_local_heterodynes(self):
        m = JointMeasurement.from_local(LocalMeasurement.heterodyne(), LocalMeasurement.heterodyne())
        assert np.allclose(joint_povm_cov(m), np.eye(4))

    def test_balanced_beamsplitter_on_vacua(self):
        m = JointMeasurement(0, 0, 0.5, LocalMeasurement.heterodyne(), LocalMeasurement.heterodyne())
        assert np.allclose(joint_povm_cov(m), np.eye(4))

    @pytest.mark.parametrize("l", [0.1, 0.37, 1.0])
    def test_two_mode_squeezed_form(self, l):
        m = JointMeasurement(0, 0, 0.5, LocalMeasurement(0, l), LocalMeasurement(math.pi / 2, l))
        mu = joint_povm_cov(m)
        diag = 0.5 * (1 / l + l)
        off = 0.5 * (1 / l - l)
        assert np.allclose(mu[:2, :2], diag * np.eye(2))
        assert np.allclose(mu[2:, 2:], diag * np.eye(2))
        assert np.allclose(mu[:2, 2:], np.diag([off, -off]))

    def test_local_embedding_is_direct_sum(self):
        ma, mb = LocalMeasurement(0.3, 0.2), LocalMeasurement(1.1, 0.7)
        mu = joint_povm_cov(JointMeasurement.from_local(ma, mb))
        assert np.allclose(mu[:2, :2], local_povm_cov(ma))
        assert np.allclose(mu[2:, 2:], local_povm_cov(mb))
        assert np.allclose(mu[:2, 2:], 0)

    @settings(max_examples=50)
    @given(seeds)
    def test_rank_one_purity(self, seed):
        mu = joint_povm_cov(random_joint(np.random.default_rng(seed), l_low=-3))
        assert np.allclose(mu, mu.T)
        assert np.min(np.linalg.eigvalsh(mu)) > 0
        assert np.allclose(symplectic_eigenvalues(mu), (1, 1), atol=1e-8)

    def test_vector_round_trip(self):
        m = JointMeasurement(0.1, 0.2, 0.3, LocalMeasurement(0.4, 0.5), LocalMeasurement(0.6, 0.7))
        assert np.allclose(JointMeasurement.from_vector(m.as_vector()).as_vector(), m.as_vector())


class TestOutcomeCov:
    def test_zero_povm(self):
        s = TwoModeCov.tmsv(0.4)
        assert outcome_cov(s, np.zeros((4, 4))) == s

    def test_vacuum_plus_identity(self):
        assert np.array_equal(outcome_cov(TwoModeCov.vacuum(), np.eye(4)).matrix, 2 * np.eye(4))

    def test_blockwise(self):
        out = outcome_cov(TwoModeCov.from_standard_form(10, 10, SQ99, -SQ99), np.eye(4))
        assert np.allclose(out.A, 11 * np.eye(2))
        assert np.allclose(out.B, 11 * np.eye(2))
        assert np.allclose(out.C, np.diag([SQ99, -SQ99]))


class TestConditionalCov:
    def test_product_state_reduces_to_local_on_a(self):
        rng = np.random.default_rng(3)
        state = random_physical_state(rng, product=True)
        m = random_joint(rng)
        mu = joint_povm_cov(m)
        mu_a = mu[:2, :2] - mu[:2, 2:] @ np.linalg.inv(state.B + mu[2:, 2:]) @ mu[:2, 2:].T
        assert np.allclose(conditional_cov_joint(state, m), state.A + mu_a, rtol=1e-10)

    def test_symmetric_entangled_optimum(self):
        a, t = 10.0, 0.96
        m = JointMeasurement(0, 0, 0.5, LocalMeasurement(0, 0.0), LocalMeasurement(math.pi / 2, 0.0))
        expected = 2 * (a - t * math.sqrt(a * a - 1))
        assert expected == pytest.approx(0.896241207552897, rel=1e-12)
        assert np.allclose(conditional_cov_joint(symmetric_t(a, t), m), expected * np.eye(2), rtol=1e-12)

    def test_symmetric_entangled_optimum_at_l_min(self):
        a, t = 10.0, 0.96
        m = JointMeasurement(0, 0, 0.5, LocalMeasurement(0, 1e-9), LocalMeasurement(math.pi / 2, 1e-9))
        expected = 2 * (a - t * math.sqrt(a * a - 1))
        assert np.allclose(conditional_cov_joint(symmetric_t(a, t), m), expected * np.eye(2), rtol=1e-7)

    def test_symmetric_separable_optimum(self):
        a, t = 10.0, 0.3
        root = math.sqrt(a * a - 1)
        l = (1 - a * t * t - a - t * t + 2 * t * root) / (1 + t * t - a * (1 - t * t))
        m = JointMeasurement(0, 0, 0.5, LocalMeasurement(0, l), LocalMeasurement(math.pi / 2, l))
        assert np.allclose(conditional_cov_joint(symmetric_t(a, t), m), 10.01 * np.eye(2), rtol=1e-10)

    def test_local_uncorrelated(self):
        state = TwoModeCov.from_standard_form(3, 2, 0, 0)
        ma, mb = LocalMeasurement(0.3, 0.4), LocalMeasurement(0.5, 0.6)
        assert np.allclose(conditional_cov_local(state, ma, mb), state.A + local_povm_cov(ma))

    def test_local_heterodyne_symmetric(self):
        het = LocalMeasurement.heterodyne()
        assert np.allclose(conditional_cov_local(symmetric_t(10, 0.5), het, het), 8.75 * np.eye(2))

    def test_local_heterodyne_asymmetric(self):
        b, v, s = 3, 1, -1
        state = TwoModeCov.from_standard_form(b + v, b, abs(s), s)
        het = LocalMeasurement.heterodyne()
        assert np.allclose(conditional_cov_local(state, het, het), 4.75 * np.eye(2))

    def test_homodyne_on_a_without_mixing_is_singular(self):
        m = JointMeasurement.from_local(LocalMeasurement.homodyne(), LocalMeasurement.heterodyne())
        with pytest.raises(SingularityError):
            conditional_cov_joint(TwoModeCov.tmsv(0.3), m)

    def test_literal_schur_flags_singular_block(self):
        m = np.eye(4)
        m[2:, 2:] = np.diag([1.0, 1e-16])
        with pytest.raises(SingularityError):
            schur_complement(m)

    @settings(max_examples=50)
    @given(seeds)
    def test_matches_literal_schur(self, seed):
        rng = np.random.default_rng(seed)
        state = random_physical_state(rng)
        m = random_joint(rng)
        expected = literal_schur(state.matrix, joint_povm_cov(m))
        assert np.allclose(conditional_cov_joint(state, m), expected, rtol=1e-9, atol=1e-12)

    @settings(max_examples=50)
    @given(seeds)
    def test_local_embedding_agrees(self, seed):
        rng = np.random.default_rng(seed)
        state = random_physical_state(rng)
        ma = LocalMeasurement(rng.uniform(0, np.pi), rng.uniform(0.01, 1))
        mb = LocalMeasurement(rng.uniform(0, np.pi), rng.uniform(0.01, 1))
        joint = conditional_cov_joint(state, JointMeasurement.from_local(ma, mb))
        mu = np.zeros((4, 4))
        mu[:2, :2] = local_povm_cov(ma)
        mu[2:, 2:] = local_povm_cov(mb)
        assert np.allclose(joint, conditional_cov_local(state, ma, mb), rtol=1e-12, atol=1e-12)
        assert np.allclose(joint, literal_schur(state.matrix, mu), rtol=1e-9)

    @settings(max_examples=30)
    @given(seeds, st.sampled_from([1e-3, 1e-1]))
    def test_added_noise_never_helps(self, seed, eps):
        rng = np.random.default_rng(seed)
        state = random_physical_state(rng)
        mu = joint_povm_cov(random_joint(rng))
        base = np.linalg.det(literal_schur(state.matrix, mu))
        noisy = np.linalg.det(literal_schur(state.matrix, mu + eps * np.eye(4)))
        assert noisy >= base * (1 - 1e-12)

    @settings(max_examples=30)
    @given(seeds)
    def test_reciprocal_squeezing_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        state = random_physical_state(rng)
        theta, l = rng.uniform(0, np.pi), rng.uniform(0.05, 1)
        other = LocalMeasurement(rng.uniform(0, np.pi), rng.uniform(0.05, 1))
        mu1 = np.zeros((4, 4))
        mu1[:2, :2] = local_povm_cov(LocalMeasurement(theta, l))
        mu1[2:, 2:] = local_povm_cov(other)
        r = rotation(theta + np.pi / 2)
        mu2 = mu1.copy()
        mu2[:2, :2] = r @ np.diag([1 / l, l]) @ r.T
        assert np.allclose(literal_schur(state.matrix, mu1), literal_schur(state.matrix, mu2), rtol=1e-10)

    def test_conditional_state_on_b_side(self):
        state = TwoModeCov.from_standard_form(3, 2, 1, 0.5)
        m = LocalMeasurement(0.4, 0.3)
        expected = state.A - state.C @ np.linalg.inv(state.B + local_povm_cov(m)) @ state.C.T
        assert np.allclose(conditional_state_cov(state, m), expected, rtol=1e-12)

    def test_conditional_state_homodyne_limit(self):
        state = TwoModeCov.from_standard_form(3, 2, 1, 0.5)
        near = conditional_state_cov(state, LocalMeasurement(0.4, 1e-12))
        exact = conditional_state_cov(state, LocalMeasurement.homodyne(0.4))
        assert np.allclose(near, exact, atol=1e-10)


class TestEntropy:
    def test_single_mode_vacuum(self):
        assert gaussian_entropy(np.eye(2)) == pytest.approx(LN_2PIE)
        assert LN_2PIE == pytest.approx(2.8379, abs=1e-4)

    def test_single_mode_scaled(self):
        assert gaussian_entropy(4 * np.eye(2)) == pytest.approx(math.log(4) + LN_2PIE)

    def test_two_mode_vacuum(self):
        assert gaussian_entropy(TwoModeCov.vacuum()) == pytest.approx(2 * LN_2PIE)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            gaussian_entropy(np.diag([1.0, -1.0]))

    def test_product_heterodyne(self):
        a = 3.0
        state = TwoModeCov.from_standard_form(a, 2, 0, 0)
        het = LocalMeasurement.heterodyne()
        assert conditional_entropy(state, (het, het)) == pytest.approx(math.log(a + 1) + LN_2PIE)

    def test_symmetric_local(self):
        het = LocalMeasurement.heterodyne()
        assert conditional_entropy(symmetric_t(10, 0.5), (het, het)) == pytest.approx(math.log(8.75) + LN_2PIE)

    @settings(max_examples=50)
    @given(seeds)
    def test_chain_rule(self, seed):
        rng = np.random.default_rng(seed)
        state = random_physical_state(rng)
        m = random_joint(rng)
        h_ab, h_b = outcome_entropies(state, m)
        assert conditional_entropy(state, m) == pytest.approx(h_ab - h_b, abs=1e-10)

    @settings(max_examples=30)
    @given(seeds)
    def test_product_additivity(self, seed):
        rng = np.random.default_rng(seed)
        state = random_physical_state(rng, product=True)
        ma = LocalMeasurement(rng.uniform(0, np.pi), rng.uniform(0.01, 1))
        mb = LocalMeasurement(rng.uniform(0, np.pi), rng.uniform(0.01, 1))
        h_ab, h_b = outcome_entropies(state, (ma, mb))
        h_a = gaussian_entropy(state.A + local_povm_cov(ma))
        assert h_ab == pytest.approx(h_a + h_b, abs=1e-12)
