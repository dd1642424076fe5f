import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dlmq import oracle as o
from dlmq.circuit import GateSpec, reversed_cnot_circuit, shor_circuit

S = 1 / math.sqrt(2)


def brute_force_period_distribution(M, N=8):
    """Fourier-transform the uniform superposition over j grouped by j mod M."""
    probs = np.zeros(N)
    for r in range(M):
        a = np.array([1.0 if j % M == r else 0.0 for j in range(N)]) / math.sqrt(N)
        probs += np.abs(np.fft.fft(a, norm="ortho")) ** 2
    return probs


# reference table, except q=4, M=3 which the reference lists as 0.31250; the closed form,
# the brute-force transform and normalization all give 0.03125
TABLE = {
    1: (1, 0, 0, 0, 0, 0, 0, 0),
    2: (0.5, 0, 0, 0, 0.5, 0, 0, 0),
    3: (0.34375, 0.01451, 0.06250, 0.23549, 0.03125, 0.23549, 0.06250, 0.01451),
    4: (0.25, 0, 0.25, 0, 0.25, 0, 0.25, 0),
}


class TestGates:
    def test_h_on_zero(self):
        s = o.apply_gate(o.StateVector.basis(0, 1), GateSpec("H", (1,)))
        np.testing.assert_allclose(s.amplitudes, [S, S])

    def test_cnot_with_least_significant_control(self):
        a = np.array([0.1, 0.2 + 0.3j, 0.4j, 0.5])
        a /= np.linalg.norm(a)
        s = o.apply_gate(o.StateVector(a, 2), GateSpec("CNOT", (2, 1)))
        np.testing.assert_allclose(s.amplitudes, a[[0, 3, 2, 1]])

    @pytest.mark.parametrize("deg", range(0, 361, 30))
    def test_mzi_probabilities(self, deg):
        phi = math.radians(deg)
        b = o.X @ o.phase_shift(phi) @ o.X @ np.array([1, 0])
        assert abs(b[0]) ** 2 == pytest.approx(math.sin(phi / 2) ** 2, abs=1e-12)
        assert abs(b[1]) ** 2 == pytest.approx(math.cos(phi / 2) ** 2, abs=1e-12)

    def test_named_gates_are_rotations(self):
        np.testing.assert_allclose(o.rotation((math.pi / 2, 0, 0)), o.X, atol=1e-15)
        np.testing.assert_allclose(o.rotation((0, math.pi / 2, 0)), o.Y, atol=1e-15)
        phi = 0.7
        np.testing.assert_allclose(np.exp(0.5j * phi) * o.rotation((0, 0, -phi)), o.phase_shift(phi), atol=1e-15)

    def test_toffoli_truth_table(self):
        u = o.gate_unitary(GateSpec("TOFFOLI", (1, 2, 3)), 3)
        perm = np.arange(8)
        perm[[6, 7]] = [7, 6]
        np.testing.assert_array_equal(u, np.eye(8)[perm])
        np.testing.assert_allclose(u @ u, np.eye(8))

    def test_cphase_zero_is_identity(self):
        np.testing.assert_array_equal(o.gate_unitary(GateSpec("CPHASE", (1, 3), 0.0), 3), np.eye(8))

    def test_qubit_range(self):
        with pytest.raises(ValueError):
            o.gate_unitary(GateSpec("H", (3,)), 2)


gate_specs = st.one_of(
    st.builds(lambda k, q: GateSpec(k, (q,)), st.sampled_from(["H", "X", "Y"]), st.integers(1, 3)),
    st.builds(lambda q, t: GateSpec("R", (q,), t), st.integers(1, 3), st.floats(-7, 7)),
    st.builds(lambda p: GateSpec("CNOT", tuple(p[:2])), st.permutations([1, 2, 3])),
    st.builds(lambda p, t: GateSpec("CPHASE", tuple(p[:2]), t), st.permutations([1, 2, 3]), st.floats(-7, 7)),
    st.builds(lambda p: GateSpec("TOFFOLI", tuple(p)), st.permutations([1, 2, 3])),
)


@given(gate_specs, st.integers(0, 2**32 - 1))
def test_gate_preserves_norm_and_inverts(g, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=8) + 1j * rng.normal(size=8)
    s = o.StateVector(a / np.linalg.norm(a), 3)
    t = o.apply_gate(s, g)
    assert np.linalg.norm(t.amplitudes) == pytest.approx(1.0, abs=1e-10)
    u = o.gate_unitary(g, 3)
    np.testing.assert_allclose(u.conj().T @ t.amplitudes, s.amplitudes, atol=1e-10)


class TestProbabilities:
    def test_basis(self):
        np.testing.assert_array_equal(o.probabilities(o.StateVector.basis(0, 1)), [1, 0])

    def test_hadamard(self):
        s = o.apply_gate(o.StateVector.basis(0, 1), GateSpec("H", (1,)))
        np.testing.assert_allclose(o.probabilities(s), [0.5, 0.5])

    @pytest.mark.parametrize("bits, out", [((0, 0), (0, 0)), ((1, 0), (1, 0)), ((0, 1), (1, 1)), ((1, 1), (0, 1))])
    def test_reversed_cnot(self, bits, out):
        s = o.run_circuit(reversed_cnot_circuit(), o.StateVector.from_bits(bits))
        p = o.probabilities(s)
        assert p[o.bits_to_index(out)] == pytest.approx(1.0, abs=1e-12)

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            o.StateVector(np.array([1, 1]), 1)


class TestExpectations:
    def test_ground_state(self):
        np.testing.assert_array_equal(o.qubit_expectations(o.StateVector.basis(0, 3)), [0, 0, 0])

    @pytest.mark.parametrize("a, q", [(7, (0, 0.5, 0.5)), (11, (0, 0, 0.5))])
    def test_shor(self, a, q):
        s = o.run_circuit(shor_circuit(a), o.StateVector.from_bits([0, 0, 0, 0, 0, 0, 1]))
        np.testing.assert_allclose(o.qubit_expectations(s)[:3], q, atol=1e-10)

    @pytest.mark.parametrize("a", [7, 11])
    def test_shor_register_before_fourier(self, a):
        # stop before the six Fourier gates: register 2 must hold a^j mod 15
        c = shor_circuit(a)
        pre = type(c)(7, c.gates[:-6])
        p = o.probabilities(o.run_circuit(pre, o.StateVector.from_bits([0, 0, 0, 0, 0, 0, 1])))
        for k in np.flatnonzero(p > 1e-12):
            j, f = int(k) >> 4, int(k) & 0xF
            assert f == pow(a, j, 15)
            assert p[k] == pytest.approx(1 / 8)


class TestPeriodDistribution:
    @pytest.mark.parametrize("M", [1, 2, 3, 4])
    def test_table(self, M):
        np.testing.assert_allclose(o.period_distribution(M).probs, TABLE[M], atol=5e-6)

    @pytest.mark.parametrize("M", range(1, 9))
    def test_matches_brute_force(self, M):
        np.testing.assert_allclose(o.period_distribution(M).probs, brute_force_period_distribution(M), atol=1e-12)

    @pytest.mark.parametrize("N, M", [(16, 3), (16, 5), (32, 6), (32, 7)])
    def test_matches_brute_force_larger(self, N, M):
        np.testing.assert_allclose(o.period_distribution(M, N).probs, brute_force_period_distribution(M, N), atol=1e-12)

    @pytest.mark.parametrize("M", range(1, 9))
    def test_normalized(self, M):
        assert sum(o.period_distribution(M).probs) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("M", [1, 2, 3, 4])
    def test_expectation_triples(self, M):
        np.testing.assert_allclose(o.period_expectations(M), o.PERIOD_EXPECTATIONS[M], atol=1e-12)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            o.period_distribution(9)

    @pytest.mark.parametrize("M", [1, 2, 3, 4])
    def test_infer_period(self, M):
        assert o.infer_period(o.PERIOD_EXPECTATIONS[M]) == M
        assert o.infer_period(np.array(o.PERIOD_EXPECTATIONS[M]) + 0.04) == M


class TestShorArithmetic:
    @pytest.mark.parametrize("M, a", [(4, 7), (2, 11), (2, 4)])
    def test_postprocess(self, M, a):
        assert o.shor_postprocess(M, a, 15) == (3, 5)

    def test_odd_period(self):
        with pytest.raises(o.PeriodUnusableError):
            o.shor_postprocess(3, 7, 15)

    def test_minus_one(self):
        # 14^1 = -1 mod 15
        with pytest.raises(o.PeriodUnusableError):
            o.shor_postprocess(2, 14, 15)

    def test_modexp(self):
        assert o.modexp_table(11, 15, 3) == [1, 11] * 4
        assert o.modexp_table(7, 15, 3) == [1, 7, 4, 13] * 2
        assert o.find_period(11, 15) == 2
        assert o.find_period(7, 15) == 4

    @pytest.mark.parametrize("a", [2, 7, 8, 13])
    def test_squares_reach_one(self, a):
        assert all(pow(a, 2**k, 15) == 1 for k in range(2, 6))

    @pytest.mark.parametrize("a", [4, 11, 14])
    def test_squares_reach_one_early(self, a):
        assert all(pow(a, 2**k, 15) == 1 for k in range(1, 6))

    def test_modexp_rejects_common_factor(self):
        with pytest.raises(ValueError):
            o.modexp_table(5, 15, 3)
