"""Acceptance criteria, one test per criterion, each under its time budget."""

from fractions import Fraction
import random
import time

import pytest

from pitheorem import example_text, load_example
from pitheorem.analysis import run_analysis
from pitheorem.cli import main
from pitheorem.exact import IntMatrix
from pitheorem.model import AnalysisModel, parse_model
from pitheorem.partitions import DimTuple, is_independent, maximal_independent_subtuples, tuple_rank
from pitheorem.pi import NO_PARTITION_DIAGNOSTIC, catalog_solution, distinguished_exponents, kappa_multiple_check
from pitheorem.quantity import DimVector, LocalBasis, Quantity, expand, nu, q_inv, q_mul
from pitheorem.render import render

from oracles import brute_force_rows, maximal_subtuples_oracle, random_unimodular


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def analyze(name, **kw):
    """Parse, analyze and render text, as the CLI does."""
    report = run_analysis(parse_model(example_text(name)), **kw)
    return report, render(report, "text")


def equation_lines(text):
    return [line.strip() for line in text.splitlines() if line.startswith("    ") and " = " in line]


def strip_labels(lines):
    import re

    return {re.sub(r"Psi_\d+", "Psi", line) for line in lines}


@pytest.mark.criterion(1, "pendulum: one partition, t^2 = l g^-1 Psi(theta), golden match, < 50 ms")
def test_ac1_pendulum(corpus_dir):
    with Timer() as tm:
        report, text = analyze("pendulum", reduce=True)
    assert tm.elapsed < 0.050
    assert len(report.partitions) == 1
    (eq,) = report.system.equations
    assert eq.lhs_row.as_tuple() == (2, 1, 0, -1)
    assert [g.row.as_tuple() for g in eq.pi_groups] == [(1, 0, 0, 0)]
    assert equation_lines(text) == ["t^2 = l * g^-1 * Psi_1(theta)"]
    assert text.encode() == (corpus_dir / "golden" / "pendulum.txt").read_bytes()


@pytest.mark.criterion(2, "capacitor: two equations, rank 3, identical after L,F,Q,X basis change, < 50 ms")
def test_ac2_capacitor():
    with Timer() as tm:
        report, text = analyze("capacitor")
        report2, text2 = analyze("capacitor_lfqx")
    assert tm.elapsed < 0.050
    assert report.rank == 3 and report2.rank == 3
    assert equation_lines(text) == [
        "F = eps * phi^2 * Psi_1(z^2 / a)",
        "F = eps * phi^2 * Psi_2(a / z^2)",
    ]
    assert text2 == text
    assert render(report2, "latex") == render(report, "latex")


@pytest.mark.criterion(3, "masses: two equations; --reduce with symmetry (a,b) gives c = k(a+b), < 50 ms")
def test_ac3_masses(corpus_dir, capsys):
    with Timer() as tm:
        _, text = analyze("masses")
        rc = main(["analyze", str(corpus_dir / "masses.dim"), "--reduce"])
        out = capsys.readouterr().out
        rc_tex = main(["analyze", str(corpus_dir / "masses.dim"), "--reduce", "--format", "latex"])
        tex = capsys.readouterr().out
    assert tm.elapsed < 0.050
    assert equation_lines(text) == ["c = a * Psi_1(b / a)", "c = b * Psi_2(a / b)"]
    assert rc == rc_tex == 0
    assert "closed form: c = k * (a + b)" in out
    assert r"c = k(a+b)" in tex


@pytest.mark.criterion(4, "field energy: four equations, two after substitution; u = k(eps E^2 + mu H^2), < 100 ms")
def test_ac4_field_energy():
    with Timer() as tm:
        full, text = analyze("field_energy")
        sub, text_sub = analyze("field_energy_sub", reduce=True)
        tex = render(sub, "latex")
    assert tm.elapsed < 0.100
    assert full.rank == 3
    assert strip_labels(equation_lines(text)) == {
        "u = E^2 * eps * Psi(H^2 / (E^2 * eps * mu^-1))",
        "u = H^2 * mu * Psi(E^2 / (H^2 * eps^-1 * mu))",
        "u = E^2 * eps * Psi(mu / (E^2 * H^-2 * eps))",
        "u = H^2 * mu * Psi(eps / (E^-2 * H^2 * mu))",
    }
    assert len(equation_lines(text)) == 4
    assert equation_lines(text_sub) == ["u = Ep * Psi_1(Hp / Ep)", "u = Hp * Psi_2(Ep / Hp)"]
    assert "closed form: u = k * (eps * E^2 + mu * H^2)" in text_sub
    assert r"u = k(\epsilon E^{2}+\mu H^{2})" in tex


@pytest.mark.criterion(5, "two-body: no G -> empty + diagnostic; with G two equations; t^2 = k d^3 G^-1 (M+m)^-1, < 50 ms")
def test_ac5_two_body():
    with Timer() as tm:
        empty, text_empty = analyze("two_body")
        report, text = analyze("two_body_gravity", reduce=True)
        tex = render(report, "latex")
    assert tm.elapsed < 0.050
    assert empty.rank == 3 and len(empty.system) == 0
    assert empty.diagnostic == NO_PARTITION_DIAGNOSTIC
    assert "no adequate partition: dependent variable's dimension is not spanned" in text_empty
    rows = [eq.lhs_row.as_tuple() for eq in report.system.equations]
    assert rows == [(2, -1, 3, -1), (2, -1, 3, -1)]
    assert [eq.partition.names(report.tuple)[0] for eq in report.system.equations] == [
        ("M", "d", "G"),
        ("m", "d", "G"),
    ]
    assert equation_lines(text) == [
        "t^2 = M^-1 * d^3 * G^-1 * Psi_1(m / M)",
        "t^2 = m^-1 * d^3 * G^-1 * Psi_2(M / m)",
    ]
    assert "closed form: t^2 = k * d^3 * G^-1 * (M + m)^-1" in text
    assert r"t^{2} = k\,d^{3}G^{-1}(M+m)^{-1}" in tex


def _random_independent(rng, m, r):
    while True:
        cols = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(r)]
        if is_independent([DimVector(c) for c in cols]):
            return cols


@pytest.mark.criterion(6, "distinguished tuples match brute-force minimal search on >= 1000 instances, < 30 s")
def test_ac6_distinguished_oracle():
    rng = random.Random(20240601)
    checked = 0
    with Timer() as tm:
        while checked < 1000:
            r = rng.randint(1, 4)
            m = rng.randint(r, 4)
            cols = _random_independent(rng, m, r)
            coeffs = [rng.randint(-2, 2) for _ in range(r)]
            v = [sum(k * c[i] for k, c in zip(coeffs, cols)) for i in range(m)]
            # scale by p/q keeping the vector integral
            from math import gcd

            g = gcd(*v)
            q = rng.choice([d for d in range(1, 7) if g and g % d == 0] or [1])
            p = rng.choice([1, 2, 3]) * rng.choice([1, -1])
            y = [Fraction(x * p, q) for x in v]
            assert all(f.denominator == 1 for f in y)
            y = [int(f) for f in y]
            row = distinguished_exponents(DimVector(y), [DimVector(c) for c in cols])
            sols = brute_force_rows(y, cols, w0_max=12, wj_bound=12)
            assert sols, f"no brute-force solution for y={y}, basis={cols}"
            assert sols[0] == (row.w0, row.wj)
            assert all(kappa_multiple_check(row, s) for s in sols)
            checked += 1
    assert tm.elapsed < 30


@pytest.mark.criterion(7, "partition enumeration equals filter-all-subsets oracle on >= 500 tuples, < 30 s")
def test_ac7_partition_oracle():
    rng = random.Random(7)
    with Timer() as tm:
        for _ in range(500):
            m, n = rng.randint(1, 4), rng.randint(1, 6)
            cols = [tuple(rng.randint(-3, 3) for _ in range(m)) for _ in range(n)]
            if n > 2 and rng.random() < 0.3:
                cols[rng.randrange(n)] = cols[0]
            dep = rng.randrange(n)
            t = DimTuple.from_pairs([(f"v{i}", c) for i, c in enumerate(cols)], f"v{dep}")
            got = maximal_independent_subtuples(t, dep)
            assert got == maximal_subtuples_oracle(cols, dep)
            assert all(len(s) == tuple_rank(t) for s in got)
    assert tm.elapsed < 30


@pytest.mark.criterion(8, "rendered systems byte-identical under >= 200 random unimodular transforms, < 30 s")
def test_ac8_unimodular_invariance():
    rng = random.Random(8)
    with_equations = 0
    with Timer() as tm:
        for _ in range(200):
            m, n = rng.randint(1, 4), rng.randint(2, 6)
            rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
            names = [f"x{i}" for i in range(n)]
            model = AnalysisModel.from_matrix(rows, names, names[-1])
            u = IntMatrix.from_rows(random_unimodular(rng, m))
            moved = IntMatrix.from_rows(rows) if m == 0 else u.matmul(IntMatrix.from_rows(rows))
            model2 = AnalysisModel.from_matrix(moved.to_rows(), names, names[-1])
            for normalize in (False, True):
                a = render(run_analysis(model, normalize=normalize), "text")
                b = render(run_analysis(model2, normalize=normalize), "text")
                assert a.encode() == b.encode()
            with_equations += "adequate partitions: 0" not in a
    assert with_equations > 50
    assert tm.elapsed < 30


def _random_basis(rng, m, r):
    cols = _random_independent(rng, m, r)
    return cols, LocalBasis(
        [Quantity(Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)), c) for c in cols],
        m=m,
    )


def _spanned(rng, cols, m, zero_ok=True):
    k = [rng.randint(-3, 3) for _ in cols]
    dim = [sum(kj * c[i] for kj, c in zip(k, cols)) for i in range(m)]
    num = rng.randint(0 if zero_ok else 1, 9) * rng.choice([-1, 1])
    return Quantity(Fraction(num, rng.randint(1, 9)), dim)


@pytest.mark.criterion(9, "quantity-calculus identities on >= 1000 instances; example pi groups dimensionless, < 10 s")
def test_ac9_quantity_calculus():
    rng = random.Random(9)
    with Timer() as tm:
        for _ in range(1000):
            m = rng.randint(1, 4)
            r = rng.randint(0, m)
            cols, basis = _random_basis(rng, m, r)
            x, y = _spanned(rng, cols, m), _spanned(rng, cols, m)
            # (a) multiplicativity
            assert expand(q_mul(x, y), basis)[0] == expand(x, basis)[0] * expand(y, basis)[0]
            # (b) reciprocal
            xn = _spanned(rng, cols, m, zero_ok=False)
            assert expand(q_inv(xn), basis)[0] == 1 / expand(xn, basis)[0]
            # (c) dimensionless measures agree across three bases of the same span
            alt = []
            for _ in range(2):
                u = random_unimodular(rng, r) if r else []
                new_cols = [[sum(u[j][k] * cols[k][i] for k in range(r)) for i in range(m)] for j in range(r)]
                alt.append(LocalBasis(
                    [Quantity(Fraction(rng.randint(1, 9), rng.randint(1, 9)), c) for c in new_cols], m=m
                ))
            z = Quantity(Fraction(rng.randint(-9, 9), rng.randint(1, 9)), [0] * m)
            mus = {expand(z, b)[0] for b in [basis] + alt}
            assert len(mus) == 1
            # (d) nu is basis independent
            delta = Quantity(Fraction(rng.randint(1, 9), rng.randint(1, 9)), x.dim)
            assert len({nu(x, delta, b) for b in [basis] + alt}) == 1
        for name in ("pendulum", "capacitor", "capacitor_lfqx", "masses", "field_energy",
                     "field_energy_sub", "two_body_gravity", "constant"):
            report = run_analysis(load_example(name))
            t = report.tuple
            for eq in report.system.equations:
                for g in eq.pi_groups:
                    total = DimVector.identity(t.m)
                    for n, e in g.exponents(t, eq.partition):
                        total = total + t.dims[t.index(n)] * e
                    assert total.is_identity
    assert tm.elapsed < 10


@pytest.mark.criterion(10, "catalogued solutions satisfy their functional equations at 5 rational points, < 1 s")
def test_ac10_functional_equations():
    points = [Fraction(1, 2), Fraction(3), Fraction(-5, 7), Fraction(9, 4), Fraction(2, 11)]
    with Timer() as tm:
        for p in (1, -1):
            psi = catalog_solution(p)
            for k in (Fraction(1), Fraction(3, 8)):
                for x in points:
                    assert psi(x, k) == x ** p * psi(1 / x, k)
    assert tm.elapsed < 1
