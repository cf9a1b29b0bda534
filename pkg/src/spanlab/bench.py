"""Acceptance grid: builds every construction over its parameter grid,
audits the stretch contracts with exact oracles, and tracks size ratios
and wall times.  The CLI `bench` subcommand and the acceptance test suite
both run these functions, so the grid lives in exactly one place.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .additive import (
    build_sourcewise_additive,
    build_sourcewise_additive4,
    build_sourcewise_emulator2,
)
from .graphs import Graph, Spanner, bfs_distances, hop_distance_matrix, random_graph
from .hybrid import build_hybrid
from .lowerbound import build_lb_graph, lb_audit
from .sourcewise import SourceSet, build_sourcewise_mult
from .util import ceil_int
from .verify import (
    additive_spec,
    hybrid_spec,
    size_report,
    sourcewise_mult_spec,
    verify_emulator,
    verify_spanner,
)

# soft size-ratio caps; a ratio above 5x the cap is a hard failure
RATIO_CAPS = {"hybrid": 100.0, "swmult": 100.0, "swadd": 200.0}


def degree8_p(n: int) -> float:
    """Edge probability giving average degree about 8."""
    return min(1.0, 8.0 / (n - 1))


def pick_sources(n: int, epsilon: float) -> list[int]:
    """Deterministic source choice: the lowest ceil(n**epsilon) ids."""
    return list(range(ceil_int(float(n) ** epsilon)))


@dataclass
class GridRow:
    construction: str
    n: int
    k: Optional[int]
    epsilon: Optional[float]
    seed: Optional[int]
    size: int
    ratio: Optional[float]
    max_mult: float
    max_add: float
    violations: int
    seconds: float
    extra: dict = field(default_factory=dict)


@dataclass
class CriterionOutcome:
    number: int
    name: str
    passed: bool
    detail: str
    rows: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def _fmt_eps(e) -> str:
    return "-" if e is None else f"{e:.3f}"


def format_rows(rows) -> str:
    head = (
        f"{'construction':>12} {'n':>5} {'k':>3} {'eps':>6} {'seed':>5} "
        f"{'size':>7} {'ratio':>8} {'max_mult':>9} {'max_add':>8} {'viol':>5} {'sec':>7}"
    )
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(
            f"{r.construction:>12} {r.n:>5} {str(r.k or '-'):>3} {_fmt_eps(r.epsilon):>6} "
            f"{str(r.seed if r.seed is not None else '-'):>5} {r.size:>7} "
            f"{('%.3f' % r.ratio) if r.ratio is not None else '-':>8} "
            f"{r.max_mult:>9.3f} {r.max_add:>8.1f} {r.violations:>5} {r.seconds:>7.2f}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# criteria 1, 2 and the hybrid slice of 8
# ---------------------------------------------------------------------------


def _center_pair_violations(g: Graph, sp: Spanner) -> int:
    """Exact-or-bounded distances between the recorded split-level centers."""
    low = sp.meta["centers_low"]
    high = sp.meta["centers_high"]
    if not low or not high:
        return 0
    ell = sp.meta["suffix_len"]
    t = sp.meta["t"]
    dg = hop_distance_matrix(g, low)[:, high].astype(np.int64)
    dh = hop_distance_matrix(sp.subgraph(), low)[:, high].astype(np.int64)
    reach = dg >= 0
    near = reach & (dg <= ell)
    far = reach & (dg > ell)
    bad_near = near & (dh != dg)
    bad_far = far & ((dh < 0) | (dh > 2 * t * (dg + 1) - ell))
    return int(bad_near.sum() + bad_far.sum())


def run_hybrid_grid(fast: bool = False):
    sizes = (64,) if fast else (128, 256, 512)
    ks = (2,) if fast else (2, 3, 4)
    seeds = (1,) if fast else (1, 2, 3)
    rows = []
    stretch_ok = True
    centers_ok = True
    for n in sizes:
        for k in ks:
            for seed in seeds:
                g = random_graph(n, degree8_p(n), seed)
                t0 = time.perf_counter()
                sp = build_hybrid(g, k, seed)
                rep = verify_spanner(g, sp, None, hybrid_spec(k))
                center_bad = _center_pair_violations(g, sp)
                dt = time.perf_counter() - t0
                ratio = size_report(sp, "hybrid", n, k=k)
                stretch_ok &= rep.ok
                centers_ok &= center_bad == 0
                rows.append(
                    GridRow(
                        "hybrid", n, k, None, seed, sp.size, ratio,
                        rep.max_mult(), rep.max_add(), rep.n_violations, dt,
                        extra={"center_pair_violations": center_bad},
                    )
                )
    return rows, stretch_ok, centers_ok


def criterion_hybrid(rows, stretch_ok) -> CriterionOutcome:
    total_viol = sum(r.violations for r in rows)
    return CriterionOutcome(
        1,
        "hybrid stretch (adjacent <= 2k-1, others <= k*d)",
        stretch_ok,
        f"{len(rows)} builds, {total_viol} violations",
        rows,
    )


def criterion_hybrid_centers(rows, centers_ok) -> CriterionOutcome:
    total = sum(r.extra["center_pair_violations"] for r in rows)
    return CriterionOutcome(
        2,
        "hybrid center pairs (exact within suffix budget, bounded beyond)",
        centers_ok,
        f"{len(rows)} builds, {total} center-pair violations",
        rows,
    )


# ---------------------------------------------------------------------------
# criterion 3 and the swmult slice of 8
# ---------------------------------------------------------------------------


def _source_center_violations(g: Graph, sp: Spanner) -> int:
    sources = sp.meta["sources"]
    centers = sp.meta["centers"]
    if not sources or not centers:
        return 0
    ell = sp.meta["suffix_len"]
    k = sp.meta["k"]
    dg = hop_distance_matrix(g, sources)[:, centers].astype(np.int64)
    dh = hop_distance_matrix(sp.subgraph(), sources)[:, centers].astype(np.int64)
    reach = dg >= 0
    near = reach & (dg <= ell)
    far = reach & (dg > ell)
    bad_near = near & (dh != dg)
    bad_far = far & ((dh < 0) | (dh > 2 * (k - 1) * (dg + 1) - ell))
    return int(bad_near.sum() + bad_far.sum())


def run_swmult_grid(fast: bool = False):
    sizes = (64,) if fast else (128, 256, 512)
    ks = (2,) if fast else (2, 3, 4)
    eps_targets = (0.5,) if fast else (0.25, 0.5)
    seeds = (1,) if fast else (1, 2, 3)
    rows = []
    ok = True
    centers_ok = True
    for n in sizes:
        for k in ks:
            for eps in eps_targets:
                for seed in seeds:
                    g = random_graph(n, degree8_p(n), seed)
                    src = SourceSet.from_ids(pick_sources(n, eps), n)
                    t0 = time.perf_counter()
                    sp = build_sourcewise_mult(g, src, k, seed)
                    rep = verify_spanner(g, sp, src.vertices, sourcewise_mult_spec(k))
                    bad_centers = _source_center_violations(g, sp)
                    dt = time.perf_counter() - t0
                    ratio = size_report(sp, "swmult", n, k=k, epsilon=src.epsilon)
                    ok &= rep.ok
                    centers_ok &= bad_centers == 0
                    rows.append(
                        GridRow(
                            "swmult", n, k, src.epsilon, seed, sp.size, ratio,
                            rep.max_mult(), rep.max_add(), rep.n_violations, dt,
                            extra={
                                "eps_target": eps,
                                "n_sources": len(src),
                                "center_pair_violations": bad_centers,
                            },
                        )
                    )
    return rows, ok, centers_ok


def criterion_swmult(rows, ok, centers_ok) -> CriterionOutcome:
    total = sum(r.violations for r in rows)
    bad_centers = sum(r.extra["center_pair_violations"] for r in rows)
    return CriterionOutcome(
        3,
        "sourcewise multiplicative stretch (adjacent <= 2k-1, others <= (2k-2)*d)",
        ok and centers_ok,
        f"{len(rows)} builds, {total} stretch violations, {bad_centers} center-pair violations",
        rows,
    )


# ---------------------------------------------------------------------------
# criterion 4 and the swadd slice of 8
# ---------------------------------------------------------------------------


def run_swadd_grid(fast: bool = False, retries: int = 2):
    sizes = (64,) if fast else (256, 512)
    ks = (1,) if fast else (1, 2)
    seeds = (1,) if fast else (1, 2, 3)
    eps = 0.5
    rows = []
    ok = True
    for n in sizes:
        for k in ks:
            for seed in seeds:
                g = random_graph(n, degree8_p(n), seed)
                src = SourceSet.from_ids(pick_sources(n, eps), n)
                t0 = time.perf_counter()
                sp = build_sourcewise_additive(g, src, k, seed, retries=retries)
                rep = verify_spanner(g, sp, src.vertices, additive_spec(2 * k))
                dt = time.perf_counter() - t0
                ratio = size_report(sp, "swadd", n, k=k, epsilon=src.epsilon)
                within_budget = sp.meta["attempts"] <= retries + 1
                ok &= rep.ok and within_budget and sp.meta["long_violations"] == 0
                rows.append(
                    GridRow(
                        "swadd", n, k, src.epsilon, seed, sp.size, ratio,
                        rep.max_mult(), rep.max_add(), rep.n_violations, dt,
                        extra={
                            "attempts": sp.meta["attempts"],
                            "long_pairs": sp.meta["long_pairs"],
                            "short_pairs": sp.meta["short_pairs"],
                        },
                    )
                )
    return rows, ok


def criterion_swadd(rows, ok, retries: int = 2) -> CriterionOutcome:
    total = sum(r.violations for r in rows)
    resamples = sum(r.extra["attempts"] - 1 for r in rows)
    return CriterionOutcome(
        4,
        f"additive sourcewise (+2k on all source pairs, <= {retries} resamples)",
        ok,
        f"{len(rows)} builds, {total} violations, {resamples} resamples used",
        rows,
    )


# ---------------------------------------------------------------------------
# criteria 5 and 6
# ---------------------------------------------------------------------------


def run_emulator_grid(fast: bool = False):
    sizes = (64,) if fast else (256, 512)
    seeds = (1,) if fast else (1, 2, 3)
    eps = 0.5
    rows = []
    ok = True
    for n in sizes:
        for seed in seeds:
            g = random_graph(n, degree8_p(n), seed)
            src = SourceSet.from_ids(pick_sources(n, eps), n)
            t0 = time.perf_counter()
            em = build_sourcewise_emulator2(g, src)
            rep = verify_emulator(g, em, src.vertices, beta=2)
            dt = time.perf_counter() - t0
            ratio = size_report(em, "emu2", n, epsilon=src.epsilon)
            ok &= rep.ok and ratio <= 20.0
            rows.append(
                GridRow(
                    "emulator2", n, None, src.epsilon, seed, em.size, ratio,
                    rep.max_mult(), rep.max_add(), rep.n_violations, dt,
                )
            )
    return rows, ok


def criterion_emulator(rows, ok) -> CriterionOutcome:
    total = sum(r.violations for r in rows)
    worst = max((r.ratio for r in rows), default=0.0)
    return CriterionOutcome(
        5,
        "+2 sourcewise emulator (sandwich bound, size ratio <= 20)",
        ok,
        f"{len(rows)} builds, {total} violations, worst ratio {worst:.3f}",
        rows,
    )


def run_sw4_grid(fast: bool = False):
    cases = [(64, 16)] if fast else [(512, 64)]
    seeds = (1,) if fast else (1, 2, 3)
    rows = []
    ok = True
    for n, n_sources in cases:
        for seed in seeds:
            g = random_graph(n, degree8_p(n), seed)
            src = SourceSet.from_ids(range(n_sources), n)
            t0 = time.perf_counter()
            sp = build_sourcewise_additive4(g, src)
            rep = verify_spanner(g, sp, src.vertices, additive_spec(4))
            dt = time.perf_counter() - t0
            ratio = size_report(sp, "sw4", n, epsilon=src.epsilon)
            ok &= rep.ok and ratio <= 20.0
            rows.append(
                GridRow(
                    "sw4", n, None, src.epsilon, seed, sp.size, ratio,
                    rep.max_mult(), rep.max_add(), rep.n_violations, dt,
                )
            )
    return rows, ok


def criterion_sw4(rows, ok) -> CriterionOutcome:
    total = sum(r.violations for r in rows)
    return CriterionOutcome(
        6,
        "+4 sourcewise spanner for large source sets (size ratio <= 20)",
        ok,
        f"{len(rows)} builds, {total} violations",
        rows,
    )


# ---------------------------------------------------------------------------
# criterion 7
# ---------------------------------------------------------------------------


def run_lowerbound_grid(candidates_per_instance: int = 20):
    import warnings as _warnings

    triples = [(16, 2, 1.0), (8, 3, 1.0), (16, 2, 0.5)]
    rows = []
    ok = True
    for r, k, eps in triples:
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore")
            lg = build_lb_graph(r, k, eps)
        n1, n2 = lg.width1, lg.width2
        expect_v = n1 ** k + k * n2 * n1 ** (k - 1)
        expect_e = k * (n1 ** k) * n2
        counts_ok = lg.graph.n == expect_v and lg.graph.m == expect_e
        ok &= counts_ok
        t0 = time.perf_counter()
        edge_list = lg.graph.sorted_edges()
        budget = expect_e // k - 1
        found = 0
        certified = 0
        rng = np.random.default_rng(20_000 + 97 * r + k)
        for _ in range(candidates_per_instance):
            keep_idx = rng.choice(len(edge_list), size=budget, replace=False)
            h = Spanner(lg.graph.n, frozenset(edge_list[i] for i in keep_idx), {})
            report = lb_audit(lg, h)
            if report["chain"] is not None:
                found += 1
            if report["certified"]:
                certified += 1
        dt = time.perf_counter() - t0
        ok &= found == candidates_per_instance and certified == candidates_per_instance
        rows.append(
            GridRow(
                "lowerbound", lg.graph.n, k, eps, None, lg.graph.m, None,
                0.0, 0.0, 0 if counts_ok else 1, dt,
                extra={
                    "r": r,
                    "counts_ok": counts_ok,
                    "chains_found": found,
                    "certified": certified,
                    "candidates": candidates_per_instance,
                },
            )
        )
    return rows, ok


def criterion_lowerbound(rows, ok) -> CriterionOutcome:
    return CriterionOutcome(
        7,
        "layered lower-bound family (exact counts; every sparse candidate refuted)",
        ok,
        "; ".join(
            f"r={r.extra['r']},k={r.k}: counts_ok={r.extra['counts_ok']}, "
            f"certified {r.extra['certified']}/{r.extra['candidates']}"
            for r in rows
        ),
        rows,
    )


# ---------------------------------------------------------------------------
# criterion 8: size-ratio soft caps over the rows of criteria 1, 3, 4
# ---------------------------------------------------------------------------


def criterion_ratios(hybrid_rows, swmult_rows, swadd_rows) -> CriterionOutcome:
    groups = [
        ("hybrid", hybrid_rows),
        ("swmult", swmult_rows),
        ("swadd", swadd_rows),
    ]
    hard_ok = True
    warnings = []
    details = []
    for name, rows in groups:
        cap = RATIO_CAPS[name]
        worst = max((r.ratio for r in rows), default=0.0)
        details.append(f"{name}: worst {worst:.3f} vs cap {cap:g}")
        if worst > 5 * cap:
            hard_ok = False
        elif worst > cap:
            warnings.append(
                f"{name} ratio {worst:.3f} exceeds soft cap {cap:g} (hard limit {5 * cap:g})"
            )
    return CriterionOutcome(
        8,
        "size-ratio soft caps (warn above cap, fail above 5x cap)",
        hard_ok,
        "; ".join(details),
        warnings=warnings,
    )


# ---------------------------------------------------------------------------
# criterion 9: BFS/SSSP against an independent cubic all-pairs oracle
# ---------------------------------------------------------------------------


def floyd_warshall_oracle(g: Graph) -> np.ndarray:
    """Cubic all-pairs recomputation, independent of the BFS code paths."""
    n = g.n
    big = np.iinfo(np.int64).max // 4
    dist = np.full((n, n), big, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    for u, v in g.edges:
        dist[u, v] = 1
        dist[v, u] = 1
    for mid in range(n):
        np.minimum(dist, dist[:, mid, None] + dist[None, mid, :], out=dist)
    out = np.where(dist >= big, -1, dist)
    return out


def oracle_suite_graphs() -> list[tuple[str, Graph]]:
    import warnings as _warnings

    path8 = Graph(8, [(i, i + 1) for i in range(7)])
    cycle5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    petersen = Graph(
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
    )
    two_parts = Graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)])  # disconnected
    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")
        layered = build_lb_graph(8, 3, 1.0).graph
    return [
        ("path8", path8),
        ("cycle5", cycle5),
        ("petersen", petersen),
        ("disconnected7", two_parts),
        ("gnp32", random_graph(32, 0.15, 3)),
        ("gnp64", random_graph(64, 0.1, 7)),
        ("layered32", layered),
    ]


def run_oracle_check():
    rows = []
    ok = True
    for name, g in oracle_suite_graphs():
        t0 = time.perf_counter()
        want = floyd_warshall_oracle(g)
        got_matrix = hop_distance_matrix(g)
        matrix_ok = bool(np.array_equal(want, got_matrix))
        bfs_ok = all(
            list(want[r]) == bfs_distances(g, [r]) for r in range(g.n)
        )
        dt = time.perf_counter() - t0
        ok &= matrix_ok and bfs_ok
        rows.append(
            GridRow(
                "oracle", g.n, None, None, None, g.m, None, 0.0, 0.0,
                0 if (matrix_ok and bfs_ok) else 1, dt,
                extra={"graph": name, "matrix_ok": matrix_ok, "bfs_ok": bfs_ok},
            )
        )
    return rows, ok


def criterion_oracle(rows, ok) -> CriterionOutcome:
    return CriterionOutcome(
        9,
        "oracle self-consistency (BFS == cubic all-pairs on every suite graph)",
        ok,
        f"{len(rows)} graphs checked",
        rows,
    )


# ---------------------------------------------------------------------------
# the whole grid
# ---------------------------------------------------------------------------


def run_all(fast: bool = False) -> tuple[list[CriterionOutcome], list[GridRow]]:
    hybrid_rows, c1_ok, c2_ok = run_hybrid_grid(fast)
    swmult_rows, c3_ok, c3_centers_ok = run_swmult_grid(fast)
    swadd_rows, c4_ok = run_swadd_grid(fast)
    emu_rows, c5_ok = run_emulator_grid(fast)
    sw4_rows, c6_ok = run_sw4_grid(fast)
    lb_rows, c7_ok = run_lowerbound_grid()
    oracle_rows, c9_ok = run_oracle_check()

    outcomes = [
        criterion_hybrid(hybrid_rows, c1_ok),
        criterion_hybrid_centers(hybrid_rows, c2_ok),
        criterion_swmult(swmult_rows, c3_ok, c3_centers_ok),
        criterion_swadd(swadd_rows, c4_ok),
        criterion_emulator(emu_rows, c5_ok),
        criterion_sw4(sw4_rows, c6_ok),
        criterion_lowerbound(lb_rows, c7_ok),
        criterion_ratios(hybrid_rows, swmult_rows, swadd_rows),
        criterion_oracle(oracle_rows, c9_ok),
    ]
    all_rows = hybrid_rows + swmult_rows + swadd_rows + emu_rows + sw4_rows + lb_rows + oracle_rows
    return outcomes, all_rows
