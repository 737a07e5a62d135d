import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fourqubit._validation import ZeroStateError
from fourqubit.cartan import cartan_embed, weyl_group, apply_symmetry
from fourqubit.invariants import (
    InvariantFingerprint,
    eval_E,
    eval_F_cartan,
    eval_F_full,
    eval_F_pairs,
    eval_G,
    eval_hdet_cartan,
    eval_hdet_from_generators,
    fingerprint,
    fingerprint_array,
    fingerprint_cartan,
)
from fourqubit.states import NAMED_STATES, PureState, apply_local, permute_qubits, random_local, random_state
from fourqubit._validation import all_permutations

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rand_z(rng, size=None):
    shape = (4,) if size is None else (size, 4)
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b)))


def separable(rng):
    v = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(4)]
    out = v[0]
    for w in v[1:]:
        out = np.kron(out, w)
    return PureState(out / np.linalg.norm(out))


class TestE:
    @pytest.mark.parametrize(
        "z,expected",
        [([1, 1, 0, 0], (0, 2, 2, 2)), ([1, 0, 0, 0], (0, 1, 1, 1)), ([1, 1j, 0, 0], (0, 0, 2, 0))],
    )
    def test_examples(self, z, expected):
        np.testing.assert_allclose(eval_E(z), expected, atol=1e-15)

    def test_restriction_identity(self, rng):
        for z in rand_z(rng, 1000):
            assert rel(eval_G(cartan_embed(z)), eval_E(z)) < 1e-10

    def test_weyl_invariance(self, rng):
        z = rand_z(rng)
        e0, f0 = np.array(eval_E(z)), np.array(eval_F_cartan(z))
        for g in weyl_group():
            w = apply_symmetry(g, z)
            assert rel(eval_E(w), e0) < 1e-12
            assert rel(eval_F_cartan(w), f0) < 1e-12


class TestG:
    def test_ghz(self):
        assert eval_G(NAMED_STATES["GHZ"])[1] == pytest.approx(1, abs=1e-14)

    def test_separable(self, rng):
        for _ in range(100):
            assert np.max(np.abs(eval_G(separable(rng)))) < 1e-12


class TestF:
    def test_ghz(self):
        np.testing.assert_allclose(np.abs(eval_F_cartan(np.array([1, 1, 0, 0]) / np.sqrt(2))), [6, 9, 16.5, 64.125])

    def test_mp(self):
        np.testing.assert_allclose(np.abs(eval_F_cartan([1, 0, 0, 0])), [6] * 4)

    def test_hs(self):
        f = np.abs(eval_F_cartan(np.array([np.sqrt(3), 1j, 1j, 1j]) / np.sqrt(6)))
        np.testing.assert_allclose(f[:3], [0, 8 / 3, 0], atol=1e-13)

    def test_bssb(self):
        f = np.abs(eval_F_full(NAMED_STATES["BSSB"]))
        np.testing.assert_allclose(f, [0, 0, 1.875, 0], atol=1e-12)

    def test_c1(self):
        f = np.abs(eval_F_full(NAMED_STATES["C1"]))
        assert f[2] == pytest.approx(2.5, abs=1e-12)
        assert f[3] == pytest.approx(1.875, abs=1e-12)

    def test_two_formulas(self, rng):
        for z in rand_z(rng, 1000):
            pairs = [eval_F_pairs(z, k) for k in (1, 3, 4, 6)]
            assert rel(eval_F_cartan(z), pairs) < 1e-10

    def test_full_matches_cartan(self, rng):
        for z in rand_z(rng, 200):
            assert rel(eval_F_full(cartan_embed(z)), eval_F_cartan(z)) < 1e-9

    def test_qubit_permutations(self, rng):
        s = random_state(4, rng)
        f0 = eval_F_full(s)
        for sigma in all_permutations(4):
            assert rel(eval_F_full(permute_qubits(sigma, s)), f0) < 1e-11


class TestSLOCC:
    @settings(max_examples=100, deadline=None)
    @given(seeds)
    def test_invariance(self, seed):
        rng = np.random.default_rng(seed)
        s = random_state(4, rng)
        g = random_local(4, rng)
        t = apply_local(g, s)
        assert rel(eval_G(t), eval_G(s)) < 1e-9
        assert rel(eval_F_full(t), eval_F_full(s)) < 1e-9
        a, b = eval_hdet_from_generators(t), eval_hdet_from_generators(s)
        assert abs(a - b) <= 1e-9 * max(abs(b), 1e-12)

    def test_ghz_f1_preserved(self, rng):
        t = apply_local(random_local(4, rng), NAMED_STATES["GHZ"])
        assert abs(eval_F_full(t)[0]) == pytest.approx(6, rel=1e-10)


class TestHdet:
    def test_hd(self):
        z = np.array([1, np.exp(1j * np.pi / 3), np.exp(2j * np.pi / 3), 0]) / np.sqrt(3)
        assert abs(eval_hdet_cartan(z)) == pytest.approx(1 / 19683, rel=1e-12)

    @pytest.mark.parametrize("z", [[1, 1, 0, 0], [1, 0, 0, 0]])
    def test_vanishing(self, z):
        assert eval_hdet_cartan(z) == 0

    def test_bssb(self):
        assert abs(eval_hdet_from_generators(NAMED_STATES["BSSB"])) == pytest.approx(1.53e-5, rel=0.01)

    def test_hs(self):
        assert abs(eval_hdet_from_generators(NAMED_STATES["HS"])) < 1e-10

    def test_two_formulas(self, rng):
        for z in rand_z(rng, 1000):
            z = z / np.linalg.norm(z)
            a, b = eval_hdet_from_generators(cartan_embed(z)), eval_hdet_cartan(z)
            assert abs(a - b) <= 1e-8 * abs(b)

    def test_float_path_agrees_roughly(self, rng):
        z = rand_z(rng)
        z /= np.linalg.norm(z)
        s = cartan_embed(z)
        assert abs(eval_hdet_from_generators(s, exact=False) - eval_hdet_from_generators(s)) < 1e-6 * abs(
            eval_hdet_cartan(z)
        ) + 1e-12


class TestHomogeneity:
    def test_degrees(self, rng):
        s = random_state(4, rng)
        t = PureState(2 * s.amplitudes)
        scale = np.array([2**2, 2**6, 2**8, 2**12])
        assert rel(np.array(eval_F_full(t)), scale * np.array(eval_F_full(s))) < 1e-10
        a, b = eval_hdet_from_generators(t), eval_hdet_from_generators(s)
        assert abs(a - 2**24 * b) <= 1e-10 * abs(2**24 * b)

    def test_separable_all_zero(self, rng):
        for _ in range(100):
            s = separable(rng)
            assert np.max(np.abs(eval_F_full(s))) < 1e-12
            assert abs(eval_hdet_from_generators(s)) < 1e-12


class TestFingerprint:
    def test_ghz(self):
        np.testing.assert_allclose(fingerprint(NAMED_STATES["GHZ"]).as_array(), [6, 9, 16.5, 64.125], atol=1e-12)

    def test_phi7(self):
        z = np.array([np.sqrt(2), 1j, 1j, 1j]) / np.sqrt(5)
        np.testing.assert_allclose(fingerprint(cartan_embed(z)).as_array(), [1.2, 2.64, 1.392, 0.912768], atol=1e-12)

    def test_phi3(self):
        f = fingerprint(cartan_embed(np.array([1, 1, 1, 0]) / np.sqrt(3))).as_array()
        np.testing.assert_allclose(f[:3], [6, 22 / 3, 86 / 9], atol=1e-12)
        assert f[3] == pytest.approx(16.9, rel=5e-3)

    def test_normalizes(self, rng):
        s = random_state(4, rng)
        assert fingerprint(PureState(3 * s.amplitudes)).isclose(fingerprint(s), tol=1e-12)

    def test_zero(self):
        with pytest.raises(ZeroStateError):
            fingerprint(PureState(np.zeros(16)))

    def test_hdet_and_dict(self):
        fp = fingerprint(NAMED_STATES["BSSB"], with_hdet=True)
        d = fp.to_dict()
        assert set(d) == {"F1", "F3", "F4", "F6", "Hdet"}
        assert d["Hdet"] == pytest.approx(1.53e-5, rel=0.01)
        assert fp.get("F4") == pytest.approx(1.875)

    def test_batched_matches(self, rng):
        z = rand_z(rng, 20)
        batch = fingerprint_array(z)
        for row, out in zip(z, batch):
            np.testing.assert_allclose(out, fingerprint_cartan(row).as_array(), rtol=1e-12, atol=1e-14)

    @settings(max_examples=50, deadline=None)
    @given(seeds)
    def test_state_symmetries(self, seed):
        rng = np.random.default_rng(seed)
        s = random_state(4, rng)
        f0 = fingerprint(s)
        g = random_local(4, rng, "SU2")
        assert fingerprint(apply_local(g, s)).isclose(f0, tol=1e-9)
        assert fingerprint(PureState(np.exp(0.4j) * s.amplitudes)).isclose(f0, tol=1e-9)
        assert fingerprint(PureState(s.amplitudes.conj())).isclose(f0, tol=1e-9)
        assert fingerprint(permute_qubits((3, 1, 4, 2), s)).isclose(f0, tol=1e-9)

    def test_frozen(self):
        fp = InvariantFingerprint(1, 2, 3, 4)
        with pytest.raises(AttributeError):
            fp.f1 = 0
