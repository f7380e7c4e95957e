import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussdiscord import _kernels
from gaussdiscord.discord import (
    BSIDE_SPACE,
    LOCAL_SPACE,
    _state_data,
    classical_conditional_entropy,
    conditional_quantum_entropy,
    entropy_F,
    gqd,
    ogd,
    renyi2_discord,
)
from gaussdiscord.families import (
    CCCA,
    Asymmetric,
    FamilyDomainError,
    SymmetricT,
    asymmetric_conditional_vars,
    ccca_joint_det,
    ccca_joint_min,
    ccca_l_formula,
    ccca_local_det,
    closed_form_ogd,
    family_state,
    make_family,
)
from gaussdiscord.measurement import conditional_cov_joint, conditional_cov_local
from gaussdiscord.optimize import grid_oracle
from gaussdiscord.symplectic import TwoModeCov, UnphysicalStateError, random_physical_state, rotation, single_mode_squeezer


def local_symplectic(rng):
    s = np.zeros((4, 4))
    s[:2, :2] = rotation(rng.uniform(0, 6)) @ single_mode_squeezer(rng.uniform(-0.7, 0.7))
    s[2:, 2:] = rotation(rng.uniform(0, 6)) @ single_mode_squeezer(rng.uniform(-0.7, 0.7))
    return s


class TestEntropyF:
    def test_vacuum(self):
        assert entropy_F(1.0) == 0.0

    def test_values(self):
        assert entropy_F(3.0) == pytest.approx(2 * math.log(2), abs=1e-15)
        assert entropy_F(5.0) == pytest.approx(3 * math.log(3) - 2 * math.log(2), abs=1e-14)

    def test_below_vacuum(self):
        with pytest.raises(ValueError):
            entropy_F(0.5)


class TestOgdExamples:
    def test_product_is_zero(self):
        rep = ogd(TwoModeCov(np.diag([4.0, 4, 2, 2])))
        assert abs(rep.ogd) <= 1e-9
        assert abs(rep.gqd) <= 1e-9 and abs(rep.renyi2) <= 1e-9

    def test_tmsv_is_one(self):
        # pure state: OGD equals the two-mode squeezing parameter
        assert ogd(TwoModeCov.tmsv(0.5)).ogd == pytest.approx(1.0, abs=1e-6)

    def test_tmsv_a10(self):
        assert ogd(family_state(SymmetricT(10, 1))).ogd == pytest.approx(math.acosh(10), abs=1e-6)

    def test_ca_state(self):
        rep = ogd(family_state(CCCA(9, -1)))
        assert rep.ogd == pytest.approx(math.log(20 / 11), abs=1e-6)
        assert rep.det_joint == pytest.approx(4.0, rel=1e-6)
        assert rep.det_local == pytest.approx((40 / 11) ** 2, rel=1e-6)

    def test_cc_state_is_zero(self):
        assert abs(ogd(family_state(CCCA(9, 1))).ogd) <= 1e-9

    def test_report_invariants(self):
        rep = ogd(random_physical_state(np.random.default_rng(2)))
        assert rep.ogd == pytest.approx(rep.hmin_local - rep.hmin_joint, abs=1e-12)
        assert rep.det_local >= rep.det_joint
        assert rep.ogd >= 0.0

    def test_record_round_trip(self):
        rep = ogd(TwoModeCov.tmsv(0.3))
        rec = rep.as_record()
        assert rec["ogd"] == rep.ogd
        assert set(rec["opt_joint"]) == {"phi_A", "phi_B", "eta", "theta_A", "L_A", "theta_B", "L_B"}

    def test_optimum_reproduces_determinants(self):
        state = random_physical_state(np.random.default_rng(21))
        rep = ogd(state)
        ma, mb = rep.opt_local
        loc = np.linalg.det(conditional_cov_local(state, ma, mb))
        joint = np.linalg.det(conditional_cov_joint(state, rep.opt_joint))
        assert loc == pytest.approx(rep.det_local, rel=1e-9)
        assert joint == pytest.approx(rep.det_joint, rel=1e-9)

    def test_unphysical_rejected(self):
        with pytest.raises(UnphysicalStateError):
            ogd(TwoModeCov(np.diag([0.5, 0.5, 1.0, 1.0])))

    def test_deterministic(self):
        state = random_physical_state(np.random.default_rng(3))
        assert ogd(state, seed=4) == ogd(state, seed=4)


class TestOtherDiscords:
    def test_product_zero(self):
        state = TwoModeCov(np.diag([3.0, 3, 7, 7]))
        assert abs(gqd(state)) <= 1e-12
        assert abs(renyi2_discord(state)) <= 1e-12

    def test_cc_exceeds_ca_gqd(self):
        # CC has zero OGD yet larger GQD than CA
        cc, ca = family_state(CCCA(9, 1)), family_state(CCCA(9, -1))
        assert gqd(cc) > gqd(ca)

    def test_cc_ca_share_hmin(self):
        cc, _ = classical_conditional_entropy(family_state(CCCA(9, 1)))
        ca, _ = classical_conditional_entropy(family_state(CCCA(9, -1)))
        assert cc == pytest.approx(ca, abs=1e-9)

    def test_cc_ca_share_renyi2(self):
        assert renyi2_discord(family_state(CCCA(9, 1))) == pytest.approx(
            renyi2_discord(family_state(CCCA(9, -1))), abs=1e-9
        )

    def test_zero_d_renyi2(self):
        assert abs(renyi2_discord(TwoModeCov.from_standard_form(5, 4, 2, 0))) <= 1e-9

    def test_tmsv_gqd(self):
        # pure state: GQD is the entanglement entropy F(cosh 2r)
        r = 0.4
        assert gqd(TwoModeCov.tmsv(r)) == pytest.approx(entropy_F(math.cosh(2 * r)), abs=1e-9)

    def test_conditional_entropy_of_pure_state(self):
        r = 0.4
        expected = -entropy_F(math.cosh(2 * r))
        assert conditional_quantum_entropy(TwoModeCov.tmsv(r)) == pytest.approx(expected, abs=1e-9)

    def test_hmin_matches_grid(self):
        state = random_physical_state(np.random.default_rng(9))
        h, _ = classical_conditional_entropy(state)
        grid = grid_oracle(_kernels.bside_vn_entropy, BSIDE_SPACE, 201, args=_state_data(state))
        assert h <= grid.value + 1e-12
        assert grid.value - h <= 1e-3


class TestFamilies:
    @pytest.mark.parametrize(
        "build",
        [
            lambda: SymmetricT(0.5, 0.5),
            lambda: SymmetricT(10, 1.5),
            lambda: CCCA(0, 0.5),
            lambda: CCCA(9, -1.2),
            lambda: Asymmetric(0.5, 0, 0),
            lambda: Asymmetric(3, -1, 0),
            lambda: Asymmetric(3, 0, -2.5),
        ],
    )
    def test_domain(self, build):
        with pytest.raises(FamilyDomainError):
            build()

    def test_make_family(self):
        assert make_family("cc_ca", c=9, q=-1) == CCCA(9.0, -1.0)
        with pytest.raises(FamilyDomainError):
            make_family("cc_ca", c=9)
        with pytest.raises(FamilyDomainError):
            make_family("nope", c=9)

    def test_states_are_physical(self):
        for fam in (SymmetricT(10, 1), CCCA(9, -1), Asymmetric(3, 5, -2)):
            family_state(fam).require_physical()

    def test_symmetric_threshold(self):
        assert SymmetricT(10, 0).threshold == pytest.approx(math.sqrt(9 / 11))


class TestClosedForms:
    @pytest.mark.parametrize("a", [1.5, 3.0, 10.0, 100.0])
    def test_tmsv_is_arccosh(self, a):
        assert closed_form_ogd(SymmetricT(a, 1)).ogd == pytest.approx(math.acosh(a), rel=1e-12)

    def test_symmetric_zero_correlation(self):
        assert closed_form_ogd(SymmetricT(10, 0)).ogd == pytest.approx(0.0, abs=1e-15)

    def test_symmetric_branches_meet(self):
        f = SymmetricT(10, 0)
        lo = closed_form_ogd(SymmetricT(10, f.threshold - 1e-9)).ogd
        hi = closed_form_ogd(SymmetricT(10, f.threshold + 1e-9)).ogd
        assert lo == pytest.approx(hi, abs=1e-7)

    @pytest.mark.parametrize("s", [0.0, 0.5, 2.0])
    def test_asymmetric_nonnegative_s_is_zero(self, s):
        assert closed_form_ogd(Asymmetric(3, 1, s)).ogd == 0.0

    @pytest.mark.parametrize("v", [0.0, 1.0, 10.0])
    def test_asymmetric_log_ratio(self, v):
        # independent route through the isotropic conditional variances
        loc, joint = asymmetric_conditional_vars(3, v, -1)
        assert closed_form_ogd(Asymmetric(3, v, -1)).ogd == pytest.approx(math.log(loc / joint), rel=1e-12)

    def test_ca_value(self):
        cf = closed_form_ogd(CCCA(9, -1))
        assert cf.ogd == pytest.approx(math.log(20 / 11), abs=1e-12)
        assert cf.det_joint == pytest.approx(4.0, abs=1e-9)

    def test_ccca_zero_above_threshold(self):
        f = CCCA(9, 0)
        assert closed_form_ogd(CCCA(9, f.threshold)).ogd == 0.0
        assert closed_form_ogd(CCCA(9, 0.5)).ogd == 0.0

    def test_ccca_continuous_at_threshold(self):
        q0 = CCCA(9, 0).threshold
        assert closed_form_ogd(CCCA(9, q0 - 1e-7)).ogd == pytest.approx(0.0, abs=1e-5)

    @pytest.mark.parametrize("c", [1.0, 9.0, 30.0])
    def test_ccca_local_det_matches_search(self, c):
        for q in (-1.0, -0.5, 0.0, 0.5, 1.0):
            det, _, _ = ccca_local_det(c, q)
            rep_det = math.exp(2 * _search_local(family_state(CCCA(c, q))))
            assert det == pytest.approx(rep_det, rel=1e-8)

    def test_joint_l_formula_only_exact_at_endpoints(self):
        # the closed-form l reaches the joint minimum at q = -1 but not in the interior
        for c in (1.0, 9.0, 30.0):
            assert ccca_joint_det(c, -1, ccca_l_formula(c, -1)) == pytest.approx(ccca_joint_min(c, -1)[0], abs=1e-12)
            for q in (-0.5, 0.0):
                assert ccca_joint_det(c, q, ccca_l_formula(c, q)) - ccca_joint_min(c, q)[0] > 1e-6

    def test_ccca_joint_min_beats_endpoints(self):
        det, l = ccca_joint_min(9, -0.5)
        assert 0 < l < 1
        assert det <= min(ccca_joint_det(9, -0.5, 0), ccca_joint_det(9, -0.5, 1))


def _search_local(state):
    from gaussdiscord.optimize import minimize

    return minimize(_kernels.local_half_logdet, LOCAL_SPACE, args=_state_data(state)).value


class TestNumericAgainstClosedForm:
    @pytest.mark.parametrize("t", [0.0, 0.3, 0.9, 0.95, 1.0])
    def test_symmetric(self, t):
        fam = SymmetricT(10, t)
        assert ogd(family_state(fam)).ogd == pytest.approx(closed_form_ogd(fam).ogd, abs=1e-6)

    @pytest.mark.parametrize("q", [-1.0, -0.6, -0.2, 0.0, 0.3, 1.0])
    def test_ccca(self, q):
        fam = CCCA(9, q)
        assert ogd(family_state(fam)).ogd == pytest.approx(closed_form_ogd(fam).ogd, abs=1e-6)

    @pytest.mark.parametrize("v", [0.0, 2.0, 8.0])
    def test_asymmetric(self, v):
        fam = Asymmetric(3, v, -1.5)
        assert ogd(family_state(fam)).ogd == pytest.approx(closed_form_ogd(fam).ogd, abs=1e-6)

    def test_asymmetric_strategy_independent_of_v(self):
        picks = []
        for v in (0.0, 2.0, 8.0):
            j = ogd(family_state(Asymmetric(3, v, -1.5))).opt_joint
            picks.append((j.m_a.l, j.m_b.l, j.eta))
        for p in picks[1:]:
            assert np.allclose(p, picks[0], atol=1e-4)


class TestProperties:
    def test_ccca_monotone_in_q(self):
        vals = [ogd(family_state(CCCA(9, q))).ogd for q in np.linspace(-1, 0.3, 8)]
        assert all(b <= a + 1e-9 for a, b in zip(vals, vals[1:]))

    def test_gqd_below_ogd_on_symmetric_family(self):
        for t in (0.3, 0.7, 1.0):
            rep = ogd(family_state(SymmetricT(10, t)))
            assert rep.gqd <= rep.ogd + 1e-9

    @settings(max_examples=8, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_local_symplectic_invariance(self, seed):
        rng = np.random.default_rng(seed)
        state = random_physical_state(rng)
        moved = state.transformed(local_symplectic(rng))
        r1, r2 = ogd(state), ogd(moved)
        assert r1.ogd == pytest.approx(r2.ogd, abs=1e-6)
        assert r1.gqd == pytest.approx(r2.gqd, abs=1e-6)
        assert r1.renyi2 == pytest.approx(r2.renyi2, abs=1e-6)

    @settings(max_examples=8, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_local_never_below_joint(self, seed):
        rep = ogd(random_physical_state(np.random.default_rng(seed)))
        assert rep.det_local >= rep.det_joint * (1 - 1e-12)
        assert rep.ogd >= 0.0
