import numpy as np
import pytest

from fourqubit.cartan import CARTAN_SUPPORT, cartan_embed
from fourqubit.codes import (
    CodeError,
    CodeSubspace,
    build_six_qubit,
    cartan_code,
    five_qubit_code,
    get_pair,
    principal_angles,
    rains_chain,
    rains_reduce,
    registered_pairs,
    six_qubit_code,
    v_to_u,
    verify_pure_code,
)
from fourqubit.invariants import eval_F_cartan, fingerprint_cartan
from fourqubit.states import is_critical, is_r_uniform, ket, uniformity_deviation

PAIRS = registered_pairs()
NAMES = [p.name for p in PAIRS]


class TestVtoU:
    def test_v1(self):
        np.testing.assert_array_equal(v_to_u([1, 0, 0, 0]).z, [1, 1, 0, 0])

    def test_v3(self):
        np.testing.assert_array_equal(v_to_u([0, 0, 1, 0]).z, [0, 0, 1, 1])

    def test_pair4_phi0(self):
        z = get_pair("pair4").phi0.z
        np.testing.assert_allclose(z, [np.sqrt(2), 1j * np.sqrt(2), 0, 0], atol=1e-15)
        np.testing.assert_allclose(
            fingerprint_cartan(z).as_array(), fingerprint_cartan([1, 1j, 0, 0]).as_array(), atol=1e-12
        )

    def test_bad_shape(self):
        with pytest.raises(ValueError):
            v_to_u([1, 2, 3])


class TestPairs:
    def test_count_and_names(self):
        assert NAMES == ["pair1", "pair2", "pair3", "pair4", "pair5"]

    def test_pair2_phi0(self):
        s3 = np.sqrt(3)
        assert get_pair("pair2").v0 == pytest.approx((s3 + 1j, s3 - 1j, 2j, 0))

    def test_pair5_phi1(self):
        e = np.exp(1j * np.pi / 4)
        assert get_pair("pair5").v1 == pytest.approx((e, e.conjugate(), -1, 1j))

    def test_pair1_phi1(self):
        s2 = np.sqrt(2)
        assert get_pair("pair1").v1 == pytest.approx((-1j, 1j, s2 + 1j, -s2 + 1j))

    def test_unknown(self):
        with pytest.raises(KeyError):
            get_pair("pair6")

    @pytest.mark.parametrize("pair", PAIRS, ids=NAMES)
    def test_critical(self, pair):
        assert is_critical(cartan_embed(pair.phi0).normalize(), tol=1e-8)
        assert is_critical(cartan_embed(pair.phi1).normalize(), tol=1e-8)

    @pytest.mark.parametrize("pair", PAIRS, ids=NAMES)
    def test_f1_vanishes(self, pair):
        for p in (pair.phi0, pair.phi1):
            assert abs(eval_F_cartan(p.normalize())[0]) < 1e-10

    @pytest.mark.parametrize("name", ["pair1", "pair3", "pair4", "pair5"])
    def test_equal_fingerprints(self, name):
        pair = get_pair(name)
        np.testing.assert_allclose(
            fingerprint_cartan(pair.phi0).as_array(), fingerprint_cartan(pair.phi1).as_array(), atol=1e-8
        )

    def test_pair2_constituents_differ(self):
        # pair 2 mixes an HS-type point with an HD-type point
        pair = get_pair("pair2")
        f0, f1 = fingerprint_cartan(pair.phi0).f6, fingerprint_cartan(pair.phi1).f6
        assert f0 == pytest.approx(0.790, rel=5e-3)
        assert f1 == pytest.approx(3.01, rel=5e-3)


class TestSixQubit:
    @pytest.mark.parametrize("pair", PAIRS, ids=NAMES)
    def test_three_uniform(self, pair):
        s = build_six_qubit(pair)
        assert abs(s.norm - 1) < 1e-14
        assert max(uniformity_deviation(s, 3).values()) < 1e-10
        assert is_r_uniform(s, 3, tol=1e-10)

    @pytest.mark.parametrize("pair", PAIRS, ids=NAMES)
    def test_sparsity_and_support(self, pair):
        a = build_six_qubit(pair).amplitudes
        assert np.count_nonzero(a == 0) >= 32
        support = set(CARTAN_SUPPORT)
        for i in np.flatnonzero(a):
            assert (i & 0b1111) in support


class TestCodeSubspace:
    def test_not_orthogonal(self):
        v = ket("00")
        w = (ket("00") + ket("01")) / np.sqrt(2)
        with pytest.raises(CodeError):
            CodeSubspace(2, (v, w), 2)

    def test_not_unit(self):
        with pytest.raises(CodeError):
            CodeSubspace(2, (2 * ket("00"),), 2)

    def test_empty(self):
        with pytest.raises(CodeError):
            CodeSubspace(2, (), 2)

    def test_wrong_n(self):
        with pytest.raises(CodeError):
            CodeSubspace(3, (ket("00"),), 2)

    def test_projector(self):
        c = cartan_code()
        p = c.projector()
        np.testing.assert_allclose(p @ p, p, atol=1e-14)
        assert c.parameters == (4, 4, 2)


class TestFiveQubit:
    @pytest.mark.parametrize("pair", PAIRS, ids=NAMES)
    def test_orthogonal_and_pure(self, pair):
        code = five_qubit_code(pair)
        m = code.matrix()
        assert abs(np.vdot(m[:, 0], m[:, 1])) < 1e-12
        assert code.parameters == (5, 2, 3)
        assert verify_pure_code(code).passed

    @pytest.mark.parametrize("pair", PAIRS, ids=NAMES)
    def test_matches_reduction(self, pair):
        reduced = rains_reduce(six_qubit_code(pair))
        assert reduced.parameters == (5, 2, 3)
        assert principal_angles(reduced, five_qubit_code(pair)).max() < 1e-8


class TestRains:
    def test_non_pure_rank(self):
        with pytest.raises(CodeError):
            rains_reduce(CodeSubspace(5, (ket("00000"),), 3))

    def test_distance_too_small(self):
        with pytest.raises(CodeError):
            rains_reduce(CodeSubspace(2, (ket("00"),), 1))

    @pytest.mark.parametrize("pair", PAIRS, ids=NAMES)
    def test_chain(self, pair):
        chain = rains_chain(pair, n_random=10)
        assert [c.parameters for c, _ in chain] == [(6, 1, 4), (5, 2, 3), (4, 4, 2)]
        assert all(v.passed for _, v in chain)
        assert principal_angles(chain[-1][0], cartan_code()).max() < 1e-8


class TestVerifyPureCode:
    def test_cartan(self):
        rep = verify_pure_code(cartan_code())
        assert rep.passed and rep.n_vectors == 54

    def test_product_fails(self):
        rep = verify_pure_code(CodeSubspace(4, (ket("0000"),), 2))
        assert not rep.passed
        assert rep.worst_deviation == pytest.approx(0.5)

    def test_deterministic(self):
        a = verify_pure_code(five_qubit_code(get_pair("pair3")), seed=3).to_dict()
        b = verify_pure_code(five_qubit_code(get_pair("pair3")), seed=3).to_dict()
        assert a == b
        assert len(a["per_subset"]) == 10

    def test_distance_one(self):
        with pytest.raises(CodeError):
            verify_pure_code(CodeSubspace(2, (ket("00"),), 1))
