"""Acceptance criteria 1-8.  Each test records one PASS/FAIL line (shown at the end of the run)."""

import subprocess
import sys
import textwrap
import time
from pathlib import Path

import pytest

from biratkit import families
from biratkit.cli import Options, Session
from biratkit.groebner import Ideal
from biratkit.random_source import RandomSource
from biratkit.ratmap import (
    DETERMINISTIC,
    PROBABILISTIC,
    check_inverse,
    degree_of_map,
    dominance_certificate,
    inverse_map,
    is_birational,
    is_dominant,
    projective_degrees,
)
from biratkit.script import parse_script
from biratkit.segre import segre_class, segre_class_in_variety

from conftest import ACCEPTANCE_LINES

ROOT = Path(__file__).resolve().parent.parent

O19 = [1, 3, 9, 17, 21, 15, 5]
O20 = "- 680*H^6 + 228*H^5 - 60*H^4 + 10*H^3"
O24 = ("+ 507384*H^11 - 137052*H^10 + 35532*H^9 - 9018*H^8 + 2340*H^7 - 658*H^6"
       " + 204*H^5 - 64*H^4 + 16*H^3")
O25 = ("+ 313568*H^11 - 101712*H^10 + 30636*H^9 - 8866*H^8 + 2532*H^7 - 720*H^6"
       " + 198*H^5 - 48*H^4 + 8*H^3")

EXAMPLE3_BUDGET = 3600.0


def report(n, ok, summary):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {summary}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_cremona():
    t0 = time.perf_counter()
    sigma = families.cremona()
    prob = projective_degrees(sigma, PROBABILISTIC, RandomSource(0))
    det = projective_degrees(sigma, DETERMINISTIC)
    bir = is_birational(sigma, PROBABILISTIC, RandomSource(0))
    psi = inverse_map(sigma)
    check_inverse(sigma, psi, both=True)
    secs = time.perf_counter() - t0
    ok = prob == det == [1, 2, 1] and bir and secs < 1.0
    report(1, ok, f"Cremona degrees {prob} (prob) / {det} (det), birational={bir}, "
                  f"inverse passes cross-product check, {secs:.2f} s < 1 s")


def test_criterion_2_veronese():
    nu = families.veronese()
    degs = projective_degrees(nu, PROBABILISTIC, RandomSource(0))
    dom = is_dominant(nu, DETERMINISTIC)
    d, cert = dominance_certificate(nu)
    pulled_back = all(nu.pullback(g).is_zero() for g in cert)
    deg = degree_of_map(nu, PROBABILISTIC, RandomSource(0))
    ok = degs == [1, 2, 4] and dom is False and (d, len(cert)) == (2, 6) and pulled_back and deg == 1
    report(2, ok, f"Veronese degrees {degs}, dominant={dom} with kernel certificate in degree {d} "
                  f"of dimension {len(cert)} (21 - 15 = 6), degree {deg}")


def test_criterion_3_cubo_cubic():
    t0 = time.perf_counter()
    phi = families.cubo_cubic(0)
    degs = projective_degrees(phi, PROBABILISTIC, RandomSource(0))
    psi = inverse_map(phi)
    check_inverse(phi, psi, both=True)
    inv_degs = projective_degrees(psi, PROBABILISTIC, RandomSource(0))
    secs = time.perf_counter() - t0
    ok = degs == [1, 3, 3, 1] and psi.delta == 3 and inv_degs == degs[::-1] and secs < 60
    report(3, ok, f"cubo-cubic degrees {degs}, inverse of degree {psi.delta} passes both composition checks, "
                  f"inverse degrees {inv_degs}, {secs:.1f} s < 60 s")


@pytest.fixture(scope="module")
def example2():
    return families.example2(0)


def test_criterion_4_example2_degrees(example2):
    t0 = time.perf_counter()
    degs = projective_degrees(example2, PROBABILISTIC, RandomSource(0))
    psi = inverse_map(example2)
    inv_degs = projective_degrees(psi, PROBABILISTIC, RandomSource(0))
    secs = time.perf_counter() - t0
    ok = degs == O19 and inv_degs == O19[::-1] and secs < 1800
    report(4, ok, f"P^6 --> G(2,4) degrees {degs}, inverse degrees {inv_degs}, {secs:.1f} s < 1800 s")


def test_criterion_5_example2_segre(example2):
    t0 = time.perf_counter()
    c = segre_class(Ideal(example2.source_ring, example2.forms), PROBABILISTIC, RandomSource(0))
    secs = time.perf_counter() - t0
    ok = str(c) == O20 and secs < 1800
    report(5, ok, f"Segre class of the base locus {c}, {secs:.1f} s < 1800 s")


EXAMPLE3_DETERMINISTIC = textwrap.dedent("""
    from biratkit.families import example3
    from biratkit.segre import segre_class, segre_class_in_variety
    Y, X = example3()
    print(segre_class(X, "deterministic"), flush=True)
    print(segre_class_in_variety(Y, X, "deterministic"), flush=True)
""")


def test_criterion_6_example3():
    t0 = time.perf_counter()
    try:
        proc = subprocess.run([sys.executable, "-c", EXAMPLE3_DETERMINISTIC], capture_output=True,
                              text=True, timeout=EXAMPLE3_BUDGET)
        lines = proc.stdout.splitlines()
        secs = time.perf_counter() - t0
        ok = proc.returncode == 0 and lines == [O25, O24]
        report(6, ok, f"deterministic Segre classes of the quartic's singular scheme over Z/16411: "
                      f"s(X, P^11) {'matches' if lines[:1] == [O25] else 'differs'}, "
                      f"s(X, Y) {'matches' if lines[1:2] == [O24] else 'differs'}, {secs:.0f} s < {EXAMPLE3_BUDGET:.0f} s")
        return
    except subprocess.TimeoutExpired:
        pass
    # stretch target missed: fall back to three seeds in probabilistic mode
    Y, X = families.example3()
    results = []
    for seed in (0, 1, 2):
        results.append((str(segre_class(X, PROBABILISTIC, RandomSource(seed))),
                        str(segre_class_in_variety(Y, X, PROBABILISTIC, RandomSource(seed)))))
    ok = all(r == (O25, O24) for r in results)
    report(6, ok, f"deterministic run exceeded {EXAMPLE3_BUDGET:.0f} s; downgraded: probabilistic "
                  f"s(X, P^11) and s(X, Y) match under seeds 0, 1, 2: {ok}")


def _trial_counts(script, seed, trials):
    session = Session(script, Options(seed=seed, trials=trials))
    records = session.run()
    return dict(records[-1].result)


def test_criterion_7_table1():
    ref = {}
    for p in (70001, 31):
        script = parse_script((ROOT / "sessions" / f"table1_{p}.brt").read_text())
        det = Session(script, Options(deterministic=True)).run()[-1].result
        ref[p] = (script, tuple(det))
    script, det = ref[70001]
    counts = _trial_counts(script, 0, 100)
    bad_70001 = 100 - counts.get(det, 0)
    script, det = ref[31]
    fractions = []
    for s in range(20):
        counts = _trial_counts(script, 100 * s, 100)
        fractions.append((100 - counts.get(det, 0)) / 100)
    in_band = sum(0.05 <= f <= 0.50 for f in fractions)
    mean = sum(fractions) / len(fractions)
    ok = bad_70001 == 0 and in_band >= 18
    report(7, ok, f"inverse of P^4 --> G(1,3): {bad_70001}/100 mismatches over Z/70001; over Z/31 "
                  f"{in_band}/20 seeds with mismatch fraction in [0.05, 0.50] (mean {mean:.3f}, "
                  f"range {min(fractions):.2f}-{max(fractions):.2f})")


def test_criterion_8_property_suites():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-m", "property", "-p", "no:cacheprovider",
                           str(ROOT / "tests")], capture_output=True, text=True, cwd=ROOT)
    secs = time.perf_counter() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr.strip()[-200:]
    ok = proc.returncode == 0 and secs < 300
    report(8, ok, f"property suites ({tail}) in {secs:.0f} s < 300 s")
