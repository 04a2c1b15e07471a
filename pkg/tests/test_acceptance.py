"""Exit criteria for the build; one test per criterion, tolerances pinned."""

import itertools
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from zukcheck.cli import build_parser, dump_json, main, run
from zukcheck.criterion import BELOW, BOUNDARY, HOLDS, evaluate
from zukcheck.exact import RationalPolynomial as P, char_poly, eval_sign, isolate_roots, rational_det
from zukcheck.graph import build_link_graph, connected_components, from_dot, from_edge_list, walk_data
from zukcheck.inputs import build_graph, parse_input
from zukcheck.spectral import analyze, full_report, laplacian_matrix

from conftest import FIXTURES

RUNTIME_LIMIT = 1.0
CROSS_TOL = 1e-9
ISOLATION_WIDTH = F(1, 10**12)

MATRIX_3 = (
    (1, F(-1, 2), F(-1, 2), 0),
    (-1, 1, 0, 0),
    (F(-1, 2), 0, 1, F(-1, 2)),
    (0, 0, -1, 1),
)


@pytest.fixture(scope="module", autouse=True)
def compiled_kernel():
    # runtime limits cover the pipeline, not the one-time JIT compile
    from zukcheck import _kernels

    _kernels.jacobi_eigenvalues(np.eye(2))


def _pipeline(name):
    """Fixture document -> graph, report, verdict, elapsed seconds."""
    t0 = time.perf_counter()
    spec = parse_input((FIXTURES / f"{name}.json").read_bytes())
    g = build_graph(spec)
    report = analyze(g)
    verdict = evaluate(report)
    return g, report, verdict, time.perf_counter() - t0


def _spectrum(report):
    return [(r.value, r.multiplicity) for r in report.eigenvalues]


def test_criterion_1_z_path_end_to_end():
    g, report, verdict, elapsed = _pipeline("z_pm1_pm2")
    assert g.labels == ("(1)", "(2)", "(-1)", "(-2)")
    assert sorted(g.degrees) == [1, 1, 2, 2]
    assert {frozenset(e) for e in g.edges()} == {frozenset((0, 1)), frozenset((0, 2)), frozenset((2, 3))}
    assert laplacian_matrix(g) == MATRIX_3
    assert _spectrum(report) == [(0, 1), (F(1, 2), 1), (F(3, 2), 1), (2, 1)]
    assert report.lambda1.is_exact and report.lambda1.value == F(1, 2)
    assert verdict.kind == BOUNDARY
    assert elapsed < RUNTIME_LIMIT


def test_criterion_2_sl2_drawn_figure():
    g, report, verdict, elapsed = _pipeline("sl2_drawn")
    assert g.n == 9 and len(g.edges()) == 12
    assert _spectrum(report) == [(0, 1), (F(1, 2), 3), (F(3, 2), 5)]
    assert sum(v * m for v, m in _spectrum(report)) == 9
    assert -report.char_poly.coeffs[8] == 9
    assert report.lambda1.value == F(1, 2) and verdict.kind == BOUNDARY
    # the eigenvalue list printed with the example is not a spectrum of this operator
    x, one = P.x(), P([1])
    printed = ((one - x) ** 2 - P([F(1, 4)])) ** 3 * (P([F(3, 2)]) - x) * (x**2 - x * F(5, 2))
    printed_roots = {r.value: r.multiplicity for r in isolate_roots(printed)}
    assert printed_roots == {0: 1, F(1, 2): 3, F(3, 2): 4, F(5, 2): 1}
    assert sum(v * m for v, m in printed_roots.items()) == 10 and max(printed_roots) > 2
    notes = " ".join(parse_input((FIXTURES / "sl2_drawn.json").read_bytes()).notes)
    assert "sums to 10" in notes and "5/2 exceeds the bound 2" in notes
    assert elapsed < RUNTIME_LIMIT


def test_criterion_3_sl2_definitional_graph():
    g, report, verdict, elapsed = _pipeline("sl2_listed")
    assert g.n == 9 and len(g.edges()) == 14
    edges = {frozenset((g.labels[i], g.labels[j])) for i, j in g.edges()}
    assert frozenset(("B", "B^-1")) in edges and frozenset(("-B", "-B^-1")) in edges
    x = P.x()
    expected = (
        x
        * (x - P([F(1, 2)]))
        * (x - P([1])) ** 2
        * (x - P([F(3, 2)])) ** 2
        * (x - P([F(5, 3)]))
        * (x**2 - x * F(11, 6) + P([F(7, 12)]))
    )
    assert report.char_poly == expected
    lam = report.lambda1
    assert not lam.is_exact
    assert F("0.409") < lam.lo < lam.hi < F("0.410")
    assert lam.width <= ISOLATION_WIDTH
    q = P([7, -22, 12])
    assert eval_sign(q, 0) == 1 and eval_sign(q, F(1, 2)) == -1
    assert q(lam.lo) * q(lam.hi) < 0
    assert report.lambda1_vs_half == "less" and verdict.kind == BELOW
    assert -report.char_poly.coeffs[8] == 9
    assert elapsed < RUNTIME_LIMIT


def test_criterion_4_positive_verdict(capsys):
    g, report, verdict, elapsed = _pipeline("cyclic4_k3")
    assert g.n == 3 and len(g.edges()) == 3
    assert _spectrum(report) == [(0, 1), (F(3, 2), 2)]
    assert verdict.kind == HOLDS
    assert main([str(FIXTURES / "cyclic4_k3.json"), "--assert-holds"]) == 0
    assert elapsed < RUNTIME_LIMIT


def _random_graph(rng, n):
    labels = [f"v{i}" for i in range(n)]
    p = rng.choice([0.15, 0.3, 0.5, 0.8])
    edges = {(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p}
    for v in range(n):
        if not any(v in e for e in edges):
            w = rng.choice([u for u in range(n) if u != v])
            edges.add((min(v, w), max(v, w)))
    return from_edge_list(labels, [(labels[i], labels[j]) for i, j in sorted(edges)])


def test_criterion_5_property_suite():
    rng = random.Random(20261015)
    t0 = time.perf_counter()
    cases = 0
    for _ in range(240):
        g = _random_graph(rng, rng.randint(2, 8))
        n = g.n
        w = walk_data(g)
        mu = w.kernel()
        for xv in range(n):
            assert sum(mu[xv]) == 1
            for yv in range(n):
                assert w.nu(xv) * mu[xv][yv] == w.nu(yv) * mu[yv][xv]
        lap = laplacian_matrix(g)
        weighted = [[w.nu(i) * lap[i][j] for j in range(n)] for i in range(n)]
        assert all(weighted[i][j] == weighted[j][i] for i in range(n) for j in range(n))
        assert all(sum(row) == 0 for row in lap)
        report = full_report(g, tolerance=CROSS_TOL)
        roots = report.eigenvalues.roots
        for r in roots:
            # dyadic bisection never straddles 0 or 2, so endpoints suffice
            lo, hi = (r.value, r.value) if r.is_exact else (r.lo, r.hi)
            assert 0 <= lo and hi <= 2
        assert sum(r.multiplicity for r in roots) == n
        assert -report.char_poly.coeffs[n - 1] == n
        zero = [r.multiplicity for r in roots if r.is_exact and r.value == 0]
        assert zero == [len(connected_components(g))]
        assert report.cross_check <= CROSS_TOL
        cases += 1
    assert cases >= 200
    assert time.perf_counter() - t0 < 30.0


def _leibniz(m):
    n = len(m)
    total = F(0)
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = F(sign)
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def test_criterion_6_char_poly_oracle():
    rng = random.Random(6)
    for trial in range(50):
        n = rng.randint(1, 6)
        m = [[F(rng.randint(-9, 9), rng.randint(1, 8)) for _ in range(n)] for _ in range(n)]
        p = char_poly(m)
        for k in rng.sample(range(-30, 31), 5):
            shifted = [[(k if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
            direct = rational_det(shifted)
            assert p(k) == direct
            if n <= 5:
                assert direct == _leibniz(shifted)


def test_criterion_7_determinism_and_round_trip(tmp_path, capsys):
    opts = build_parser().parse_args(["x"])
    for path in sorted(FIXTURES.glob("*.json")):
        outs = []
        for _ in range(3):
            res = run(parse_input(path.read_bytes()), opts)
            outs.append((res.text, dump_json(res.json_doc), res.dot, res.charpoly))
        assert outs[0] == outs[1] == outs[2]
    g, report, _, _ = _pipeline("z_pm1_pm2")
    again = from_dot(g.to_dot())
    assert again == g
    assert analyze(again) == report
    np.testing.assert_array_equal(analyze(again).numeric_eigenvalues, report.numeric_eigenvalues)
