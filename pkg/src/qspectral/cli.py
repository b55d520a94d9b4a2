"""Command line: dataset ingestion, pipeline orchestration, file emission.

Verbs: ``graph``, ``cluster-classical``, ``amplify-trace``, ``cluster-quantum``
and ``selftest``.  Every command is deterministic given the configuration and
seed; all outputs are flat CSV/text files in the chosen directory.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import classical, csvio, datasets, encoding, graph as graphmod, numerics, qpea, readout
from .config import ExperimentConfig, load_config
from .experiments import SUMMARY_HEADER, summary_rows, trace_suite

log = logging.getLogger("qspectral")


# ---------------------------------------------------------------------------
# dataset materialization


def build_points(cfg: ExperimentConfig):
    """Point set (and ground-truth labels where known) for the configured dataset."""
    ds = cfg.dataset
    if ds.kind == "blobs":
        return datasets.gaussian_blobs(ds.sizes, ds.centers, ds.noise, cfg.seed)
    if ds.kind == "moons":
        return datasets.two_moons(ds.n, ds.noise, cfg.seed)
    if ds.kind == "csv":
        return graphmod.load_points_csv(ds.path), None
    raise ValueError(f"dataset kind {ds.kind!r} does not provide points")


def build_graph(cfg: ExperimentConfig, points):
    g = cfg.graph
    if g.kind == "full":
        return graphmod.build_full_graph(points, g.sigma, g.squared_norm)
    if g.kind == "epsilon":
        return graphmod.build_epsilon_graph(points, g.eps)
    return graphmod.build_knn_graph(points, g.k)


def build_operator(cfg: ExperimentConfig):
    """Hermitian operator fed to phase estimation, per the configured target."""
    if cfg.target == "matrix":
        ds = cfg.dataset
        if ds.kind != "random_psd":
            raise ValueError("target 'matrix' requires the random_psd dataset")
        H = datasets.random_psd_matrix(ds.dim, ds.rank, cfg.seed, (ds.eig_min, ds.eig_max))
        return H, None, None
    points, labels = build_points(cfg)
    if cfg.target == "gram":
        return encoding.points_gram(points, centered=cfg.gram_centered), points, labels
    g = build_graph(cfg, points)
    if cfg.target == "laplacian":
        return graphmod.laplacian(g), points, labels
    return graphmod.normalized_laplacian(g), points, labels


def select_k(cfg: ExperimentConfig, eigenvalues) -> int:
    if cfg.k != "auto":
        return int(cfg.k)
    return classical.eigengap_select(eigenvalues, cfg.k_max)


# ---------------------------------------------------------------------------
# commands


def cmd_graph(cfg: ExperimentConfig) -> list[Path]:
    out = Path(cfg.out_dir)
    points, _ = build_points(cfg)
    g = build_graph(cfg, points)
    L = (
        graphmod.normalized_laplacian(g)
        if cfg.target == "normalized_laplacian"
        else graphmod.laplacian(g)
    )
    w, _ = numerics.hermitian_eig(L)
    k = select_k(cfg, w)
    out.mkdir(parents=True, exist_ok=True)
    csvio.write_matrix(out / "W.csv", g.weights)
    csvio.write_eigenvalues(out / "laplacian_eigs.csv", w)
    (out / "eigengap.txt").write_text(f"{k}\n")
    log.info("graph: N=%d kind=%s selected k=%d", g.n, g.kind, k)
    return [out / "W.csv", out / "laplacian_eigs.csv", out / "eigengap.txt"]


def cmd_cluster_classical(cfg: ExperimentConfig) -> list[Path]:
    out = Path(cfg.out_dir)
    points, _ = build_points(cfg)
    g = build_graph(cfg, points)
    L = (
        graphmod.normalized_laplacian(g)
        if cfg.variant in ("normalized", "row_normalized")
        else graphmod.laplacian(g)
    )
    w, V = numerics.hermitian_eig(L)
    k = select_k(cfg, w)
    assignment = classical.spectral_cluster(g, k, cfg.variant, init=cfg.seed)
    # clustering objective of the emitted labels on the input points
    centroids = np.vstack([points[assignment.labels == c].mean(axis=0) for c in range(k)])
    objective = float(np.sum((points - centroids[assignment.labels]) ** 2))
    indicators = classical.indicators_from_labels(assignment.labels, k)
    trace_val = classical.trace_objective(indicators, V[:, :k])
    out.mkdir(parents=True, exist_ok=True)
    csvio.write_labels(out / "labels_classical.csv", assignment.labels)
    (out / "objective.txt").write_text(f"{csvio.fmt(objective)}\n")
    (out / "trace_objective.txt").write_text(f"{csvio.fmt(trace_val)}\n")
    log.info("cluster-classical: k=%d objective=%.6g trace=%.6g", k, objective, trace_val)
    return [out / "labels_classical.csv", out / "objective.txt", out / "trace_objective.txt"]


def cmd_amplify_trace(cfg: ExperimentConfig) -> list[Path]:
    out = Path(cfg.out_dir)
    H, _, _ = build_operator(cfg)
    y = datasets.random_range_input(H, cfg.seed + 10_007, (cfg.overlap_min, cfg.overlap_max))
    results = trace_suite(
        H,
        y,
        m=cfg.pea.m,
        runs=cfg.runs,
        max_iter=cfg.amplify.max_iter,
        standard_grover=cfg.pea.standard_grover,
        stop_tol=cfg.amplify.stop_tol,
    )
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for res in results:
        path = out / f"trajectory_{res.label}.csv"
        csvio.write_trajectory(path, res.trajectory)
        paths.append(path)
        log.info(
            "amplify-trace %s: first peak %d, peak fidelity %.4f at %d",
            res.label,
            res.trajectory.first_fidelity_peak(),
            res.trajectory.peak_fidelity,
            res.trajectory.peak_fidelity_iteration,
        )
    summary = out / "summary.csv"
    csvio.write_rows(summary, SUMMARY_HEADER, summary_rows(results))
    paths.append(summary)
    return paths


def _best_ranked_containing(ranked, by_name, point: int) -> str | None:
    for report in sorted(ranked, key=lambda r: r.rank):
        if point in by_name[report.y_id].members:
            return report.y_id
    return None


def cmd_cluster_quantum(cfg: ExperimentConfig) -> list[Path]:
    out = Path(cfg.out_dir)
    if cfg.target == "matrix":
        raise ValueError("cluster-quantum requires a point dataset target (gram or laplacian)")
    H, points, _ = build_operator(cfg)
    n_points = points.shape[0]

    g = build_graph(cfg, points)
    L = (
        graphmod.normalized_laplacian(g)
        if cfg.variant in ("normalized", "row_normalized")
        else graphmod.laplacian(g)
    )
    w, _ = numerics.hermitian_eig(L)
    k = select_k(cfg, w)
    assignment = classical.spectral_cluster(g, k, cfg.variant, init=cfg.seed)

    if cfg.candidates == "auto":
        true_inds = classical.indicators_from_labels(assignment.labels, k)
        candidates = list(true_inds)
        for s in range(cfg.scrambled):
            candidates.extend(datasets.scrambled_indicators(true_inds, cfg.seed + 31 * (s + 1)))
    else:
        candidates = [classical.IndicatorVector(tuple(group), n_points) for group in cfg.candidates]

    pea_cfg = qpea.PeaConfig(
        m=cfg.pea.m,
        kappa=cfg.pea.kappa,
        mode=cfg.pea.mode,
        standard_grover=cfg.pea.standard_grover,
    )
    ranked = readout.rank_indicators(
        H, candidates, pea_cfg, max_iter=max(cfg.amplify.max_iter, 1),
        stop_tol=cfg.amplify.stop_tol if cfg.amplify.stop_tol is not None else 0.05,
    )
    direct = sorted(
        (
            readout.SimilarityReport(c.name, readout.direct_similarity(H, c.vector()), "direct")
            for c in candidates
        ),
        key=lambda r: -r.similarity,
    )
    direct = [
        readout.SimilarityReport(r.y_id, r.similarity, r.method, i + 1)
        for i, r in enumerate(direct)
    ]

    # best-ranked containing candidate per point
    by_name = {c.name: c for c in candidates}
    labels_q = np.full(n_points, -1, dtype=int)
    for report in sorted(ranked, key=lambda r: r.rank):
        members = by_name[report.y_id].members
        for p in members:
            if labels_q[p] < 0:
                labels_q[p] = report.rank - 1
    agreement = 0.0
    if cfg.candidates == "auto":
        true_names = [ind.name for ind in true_inds]
        hits = sum(
            1
            for p in range(n_points)
            if _best_ranked_containing(ranked, by_name, p) == true_names[assignment.labels[p]]
        )
        agreement = hits / n_points

    data = points - points.mean(axis=0) if cfg.gram_centered else points
    hsum = encoding.householder_decompose(data.T)  # feature columns build the N x N operator
    gates = encoding.gate_count_estimate(len(hsum), H.shape[0], cfg.pea.m)

    out.mkdir(parents=True, exist_ok=True)
    csvio.write_ranking(out / "similarity_ranking.csv", list(ranked) + direct)
    csvio.write_labels(out / "labels_quantum.csv", labels_q)
    (out / "comparison.txt").write_text(
        f"agreement_rate: {csvio.fmt(agreement)}\n"
        f"gate_count_estimate: {gates}\n"
        f"householder_terms: {len(hsum)}\n"
    )
    log.info("cluster-quantum: %d candidates, agreement %.3f", len(candidates), agreement)
    return [out / "similarity_ranking.csv", out / "labels_quantum.csv", out / "comparison.txt"]


# ---------------------------------------------------------------------------
# selftest


def _selftest_checks() -> list[tuple[str, bool, str]]:
    rng = np.random.default_rng(7)
    results = []

    def check(module: str, ok: bool, detail: str):
        results.append((module, bool(ok), detail))

    # numerics: reflection algebra and eigendecomposition round trip
    u = rng.normal(size=8) + 1j * rng.normal(size=8)
    u /= np.linalg.norm(u)
    R = numerics.proj_reflection(u)
    ok = (
        numerics.is_unitary(R)
        and numerics.is_hermitian(R, 1e-10)
        and np.max(np.abs(R @ R - np.eye(8))) < 1e-10
    )
    A = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    A = (A + A.conj().T) / 2
    w, V = numerics.hermitian_eig(A)
    ok = ok and np.max(np.abs((V * w) @ V.conj().T - A)) < 1e-10
    check("numerics", ok, "reflection algebra, eig reconstruction")

    # graph: Laplacian invariants and component counting
    pts = rng.normal(size=(10, 2))
    g = graphmod.build_full_graph(pts, sigma=1.0)
    L = graphmod.laplacian(g)
    wL, _ = numerics.hermitian_eig(L)
    ok = np.max(np.abs(L.sum(axis=1))) < 1e-12 and wL[0] > -1e-10
    W2 = np.zeros((4, 4))
    W2[0, 1] = W2[1, 0] = W2[2, 3] = W2[3, 2] = 1.0
    wc, _ = numerics.hermitian_eig(graphmod.laplacian(W2))
    ok = ok and np.sum(np.abs(wc) < 1e-10) == 2
    ok = ok and len(set(graphmod.connected_components(W2))) == 2
    check("graph", ok, "row sums, PSD, component multiplicity")

    # classical: k-means on separable data, trace identity
    pts = np.array([[0.0], [1.0], [10.0], [11.0]])
    asg = classical.kmeans(pts, 2, init=0)
    ok = abs(asg.objective - 1.0) < 1e-12
    ok = ok and all(b <= a + 1e-12 for a, b in zip(asg.objective_history, asg.objective_history[1:]))
    Q, _ = np.linalg.qr(rng.normal(size=(8, 3)))
    P, _ = np.linalg.qr(rng.normal(size=(8, 3)))
    lhs = np.linalg.norm(Q @ Q.T - P @ P.T, "fro") ** 2
    rhs = 2 * 3 - 2 * classical.trace_objective(P, Q)
    ok = ok and abs(lhs - rhs) < 1e-10
    check("classical", ok, "k-means objective, trace identity")

    # encoding: Householder round trip and linearization bound
    X = rng.normal(size=(6, 4))
    hs = encoding.householder_decompose(X)
    ok = np.max(np.abs(hs.reconstruct() - encoding.gram_matrix(X))) < 1e-10
    H = rng.normal(size=(8, 8))
    H = (H + H.T) / 2
    _, kdiv = encoding.linearize(H)
    ok = ok and np.max(np.abs(np.linalg.eigvalsh(H))) / kdiv <= 0.1 + 1e-12
    evo = encoding.make_evolution(datasets.random_psd_matrix(8, 3, 5), m=4)
    ok = ok and numerics.is_unitary(evo.unitary)
    check("encoding", ok, "round trip, linearize bound, unitarity")

    # qpea: exact phase read and iterate unitarity
    lam = 0.5
    Hd = np.diag([0.0, lam])
    evo = encoding.make_evolution(Hd, m=2, t=0.5)
    cfg = qpea.PeaConfig(m=2, mode="qft")
    state = qpea.phase_estimation(cfg, evo, np.array([0.0, 1.0]))
    ok = abs(state.phase_distribution()[1] - 1.0) < 1e-10
    H = datasets.random_psd_matrix(4, 2, 11)
    evo = encoding.make_evolution(H, m=3)
    y = datasets.random_range_input(H, 11, (0.2, 0.95))
    Qmat = qpea.iteration_matrix(
        qpea.PeaConfig(m=3, kappa=1.0, mode="biased", standard_grover=True), evo, y
    )
    ok = ok and numerics.is_unitary(Qmat, 1e-9)
    check("qpea", ok, "exact phase read, iterate unitarity")

    # readout: similarity equality and mixer structure
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    yv = rng.normal(size=8) + 1j * rng.normal(size=8)
    yv /= np.linalg.norm(yv)
    ok = abs(readout.householder_similarity(psi, yv) - abs(np.vdot(yv, psi)) ** 2) < 1e-12
    mix = readout.x_sum_exponential(3)
    ok = ok and numerics.is_unitary(mix, 1e-12)
    single = readout.x_sum_exponential(1)
    ok = ok and np.max(np.abs(mix - np.kron(np.kron(single, single), single))) < 1e-12
    check("readout", ok, "similarity identity, mixer separability")

    return results


def cmd_selftest(cfg: ExperimentConfig) -> int:
    results = _selftest_checks()
    failures = 0
    for module, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        print(f"{status} {module}: {detail}")
        failures += 0 if ok else 1
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="qspectral",
                                     description="spectral clustering via biased phase estimation")
    parser.add_argument("command", choices=[
        "graph", "cluster-classical", "amplify-trace", "cluster-quantum", "selftest",
    ])
    parser.add_argument("--config", type=str, default=None, help="YAML configuration file")
    parser.add_argument("--seed", type=int, default=None, help="override the configured seed")
    parser.add_argument("--out", type=str, default=None, help="output directory")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s %(levelname)s %(message)s",
    )
    try:
        cfg = load_config(args.config, seed=args.seed, out_dir=args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    commands = {
        "graph": cmd_graph,
        "cluster-classical": cmd_cluster_classical,
        "amplify-trace": cmd_amplify_trace,
        "cluster-quantum": cmd_cluster_quantum,
    }
    try:
        if args.command == "selftest":
            return cmd_selftest(cfg)
        paths = commands[args.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
