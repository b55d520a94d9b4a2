import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qspectral import classical, encoding, qpea, readout
from qspectral.datasets import gaussian_blobs, random_psd_matrix, scrambled_indicators
from qspectral.registers import RegisterState


def random_unit(dim, seed, complex_=True):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim) + (1j * rng.normal(size=dim) if complex_ else 0.0)
    return v / np.linalg.norm(v)


class TestHouseholderSimilarity:
    def test_same_state(self):
        psi = random_unit(8, 0)
        assert readout.householder_similarity(psi, psi) == pytest.approx(1.0)

    def test_orthogonal(self):
        psi = np.array([1.0, 0.0], dtype=complex)
        y = np.array([0.0, 1.0], dtype=complex)
        assert readout.householder_similarity(psi, y) == pytest.approx(0.0, abs=1e-15)

    def test_half_overlap(self):
        y = np.array([1.0, 0.0], dtype=complex)
        psi = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
        assert readout.householder_similarity(psi, y) == pytest.approx(0.5)

    def test_dim_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            readout.householder_similarity(np.array([1.0, 0.0]), np.array([1.0, 0.0, 0.0]))

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 32), cplx=st.booleans())
    def test_reflection_route_equals_inner_product(self, seed, dim, cplx):
        psi = random_unit(dim, seed, cplx)
        y = random_unit(dim, seed + 1, cplx)
        measured = readout.householder_similarity(psi, y)
        assert abs(measured - abs(np.vdot(y, psi)) ** 2) <= 1e-12

    def test_verbatim_reflection_differs_in_general(self):
        psi = random_unit(6, 2)
        y = random_unit(6, 3)
        literal = readout.householder_similarity(psi, y, verbatim_reflection=True)
        intended = readout.householder_similarity(psi, y)
        assert abs(literal - intended) > 1e-3  # the printed operator is not the mapping one


class TestDirectSimilarity:
    def test_full_rank_gives_one(self):
        H = random_psd_matrix(6, 6, seed=1, eig_range=(0.5, 1.0))
        y = random_unit(6, 4, complex_=False)
        assert readout.direct_similarity(H, y) == pytest.approx(1.0)

    def test_null_eigenvector_gives_zero(self):
        H = np.diag([0.0, 1.0, 2.0])
        y = np.array([1.0, 0.0, 0.0])
        assert readout.direct_similarity(H, y) == pytest.approx(0.0, abs=1e-15)

    def test_matches_projection_norm(self):
        H = random_psd_matrix(16, 6, seed=5)
        y = random_unit(16, 6, complex_=False)
        w, V = np.linalg.eigh(H)
        keep = np.abs(w) > 1e-8
        expected = float(np.linalg.norm(V[:, keep].T @ y) ** 2)
        assert readout.direct_similarity(H, y) == pytest.approx(expected, abs=1e-10)


class TestXSumExponential:
    def test_single_qubit(self):
        U = readout.x_sum_exponential(1)
        expected = np.array(
            [[np.cos(1.0), 1j * np.sin(1.0)], [1j * np.sin(1.0), np.cos(1.0)]]
        )
        assert np.max(np.abs(U - expected)) <= 1e-15

    def test_two_qubits_is_kron(self):
        U1 = readout.x_sum_exponential(1)
        U2 = readout.x_sum_exponential(2)
        assert np.max(np.abs(U2 - np.kron(U1, U1))) <= 1e-15

    def test_unitary_up_to_eight_qubits(self):
        for n in range(1, 9):
            U = readout.x_sum_exponential(n)
            assert np.max(np.abs(U.conj().T @ U - np.eye(2**n))) <= 1e-12

    def test_commutes_with_qubit_permutation(self):
        U = readout.x_sum_exponential(3)
        # swap qubits 0 and 2 in the tensor index
        P = np.zeros((8, 8))
        for i in range(8):
            b = [(i >> 2) & 1, (i >> 1) & 1, i & 1]
            j = (b[2] << 2) | (b[1] << 1) | b[0]
            P[j, i] = 1.0
        assert np.max(np.abs(P @ U @ P.T - U)) <= 1e-12

    def test_matches_matrix_exponential(self):
        n = 3
        X = np.array([[0.0, 1.0], [1.0, 0.0]])
        Y = np.zeros((8, 8), dtype=complex)
        for i in range(n):
            term = np.array([[1.0]])
            for j in range(n):
                term = np.kron(term, X if j == i else np.eye(2))
            Y += term
        w, V = np.linalg.eigh(Y)
        expm = (V * np.exp(1j * w)) @ V.conj().T
        assert np.max(np.abs(readout.x_sum_exponential(n) - expm)) <= 1e-12


class TestApproxClusterReadout:
    def test_identity_pipeline_uniform(self):
        # pipeline that just loads the input on the system register
        def identity_pipeline(y):
            amps = np.zeros(2 * y.size, dtype=complex)
            amps[: y.size] = y
            return RegisterState(amps, 1, int(np.log2(y.size)))

        evo = encoding.make_evolution(np.zeros((8, 8)), m=1)
        cfg = qpea.PeaConfig(m=1, mode="biased", kappa=1.0)
        dist = readout.approx_cluster_readout(cfg, evo, run_pipeline=identity_pipeline)
        assert np.max(np.abs(dist - 1.0 / 8.0)) <= 1e-12

    def test_single_qubit_trivial_pipeline(self):
        def identity_pipeline(y):
            amps = np.zeros(2 * y.size, dtype=complex)
            amps[: y.size] = y
            return RegisterState(amps, 1, 1)

        evo = encoding.make_evolution(np.zeros((2, 2)), m=1)
        cfg = qpea.PeaConfig(m=1, mode="biased", kappa=1.0)
        dist = readout.approx_cluster_readout(cfg, evo, run_pipeline=identity_pipeline)
        assert np.allclose(dist, [0.5, 0.5], atol=1e-12)

    def test_block_diagonal_argmax_stable_across_seeds(self):
        # fixed two-cluster block structure, small seeded perturbations: the
        # readout's argmax reproduces (no specific index asserted)
        def block_diag_h(seed):
            rng = np.random.default_rng(seed)
            v1 = np.array([2.0, 1.5, 1.2, 1.0]) + 0.02 * rng.normal(size=4)
            v2 = np.array([1.0, 0.9, 0.8, 0.7]) + 0.02 * rng.normal(size=4)
            H = np.zeros((8, 8))
            H[:4, :4] = np.outer(v1, v1)
            H[4:, 4:] = 0.5 * np.outer(v2, v2)
            return H

        outcomes = set()
        for seed in range(4):
            evo = encoding.make_evolution(block_diag_h(seed), m=5)
            cfg = qpea.PeaConfig(m=5, kappa=1.0, mode="biased", standard_grover=True)
            dist = readout.approx_cluster_readout(cfg, evo, max_iter=30)
            outcomes.add(int(np.argmax(dist)))
        assert len(outcomes) == 1


class TestRegisterSimilarity:
    def test_matches_pure_state_value(self):
        y = random_unit(4, 9, complex_=False)
        amps = np.zeros(16, dtype=complex)
        amps[:4] = random_unit(4, 10, complex_=False)
        state = RegisterState(amps, 2, 2)
        expected = readout.householder_similarity(amps[:4], y)
        assert readout.register_similarity(state, y) == pytest.approx(expected, abs=1e-12)

    def test_oracle_gap_bounded_by_infidelity(self):
        H = random_psd_matrix(16, 6, seed=20)
        rng = np.random.default_rng(20)
        y = rng.normal(size=16)
        y /= np.linalg.norm(y)
        evo = encoding.make_evolution(H, m=6)
        cfg = qpea.PeaConfig(m=6, kappa=1.0, mode="biased", standard_grover=True)
        _, traj = qpea.amplify(cfg, evo, y, max_iter=60, stop_tol=None)
        peak = traj.peak_fidelity
        # measure at the peak-fidelity state by re-running to that iteration
        state_peak, _ = qpea.amplify(cfg, evo, y, max_iter=traj.peak_fidelity_iteration,
                                     stop_tol=None)
        measured = readout.register_similarity(state_peak, y)
        oracle = readout.direct_similarity(H, y)
        assert abs(measured - oracle) <= (1.0 - peak) + 1e-6


class TestRankIndicators:
    def test_eigenvector_candidates(self):
        H = np.diag([0.0, 0.0, 1.0, 2.0])
        cfg = qpea.PeaConfig(m=4, kappa=1.0, mode="biased", standard_grover=True)
        candidates = [
            classical.IndicatorVector((3,), 4),  # nonzero eigenvalue
            classical.IndicatorVector((0,), 4),  # zero eigenvalue
        ]
        # the zero-eigenvector candidate cannot be amplified at all
        with pytest.raises(Exception):
            readout.rank_indicators(H, candidates, cfg)
        ranked = readout.rank_indicators(H, candidates[:1], cfg)
        assert len(ranked) == 1
        assert ranked[0].rank == 1
        assert ranked[0].similarity == pytest.approx(1.0, abs=1e-6)

    def test_mixed_candidates_rank_by_overlap(self):
        H = np.diag([0.0, 0.0, 1.0, 2.0])
        cfg = qpea.PeaConfig(m=4, kappa=1.0, mode="biased", standard_grover=True)
        full = classical.IndicatorVector((2, 3), 4)  # inside the nonzero eigenspace
        half = classical.IndicatorVector((0, 2), 4)  # half in, half out
        ranked = readout.rank_indicators(H, [half, full], cfg)
        assert ranked[0].y_id == full.name
        assert ranked[0].similarity > ranked[1].similarity

    def test_two_blob_ranking_matches_oracle(self):
        pts, labels = gaussian_blobs((4, 4), ((1.0, 0.0), (0.0, 1.0)), 0.08, seed=3)
        H = encoding.points_gram(pts)
        true_inds = classical.indicators_from_labels(labels, 2)
        cands = true_inds + scrambled_indicators(true_inds, seed=4)
        cfg = qpea.PeaConfig(m=6, kappa=1.0, mode="biased", standard_grover=True)
        ranked = readout.rank_indicators(H, cands, cfg)
        by_name = {c.name: c.vector() for c in cands}
        oracle = sorted(
            by_name, key=lambda name: -readout.direct_similarity(H, by_name[name])
        )
        assert [r.y_id for r in ranked] == oracle
        top2 = {ranked[0].y_id, ranked[1].y_id}
        assert top2 == {ind.name for ind in true_inds}

    def test_named_vector_candidates(self):
        H = np.diag([0.0, 1.0])
        cfg = qpea.PeaConfig(m=3, kappa=1.0, mode="biased", standard_grover=True)
        ranked = readout.rank_indicators(H, [("probe", np.array([0.0, 1.0]))], cfg)
        assert ranked[0].y_id == "probe"


def test_similarity_report_validates_range():
    with pytest.raises(ValueError, match="outside"):
        readout.SimilarityReport("x", 1.5, "direct")
