"""Acceptance gate: twelve criteria, each printing one pass/fail line.

Every numeric comparison is exact integer equality (tolerance zero).
Randomized criteria run at the default seed; runtime bounds are asserted
per criterion.  Run with ``pytest -s`` to see the lines as they print.
"""

import json
import subprocess
import sys
import time

import pytest

from chainspec.verify import SuiteConfig, run_suite

CFG = SuiteConfig()  # seed=0, trials=300, max_level=4, stab_bound=5

_SUITE_CACHE = {}


def _suite(name):
    """Run a suite once per session, returning (reports, elapsed seconds)."""
    if name not in _SUITE_CACHE:
        t0 = time.time()
        reports = run_suite(name, CFG)
        _SUITE_CACHE[name] = (reports, time.time() - t0)
    return _SUITE_CACHE[name]


def _report(reports, check):
    return next(r for r in reports if r.check == check)


def _criterion(number, label, ok, detail=""):
    line = "criterion %2d %s: %s%s" % (number, "PASS" if ok else "FAIL", label,
                                       (" [%s]" % detail) if detail else "")
    print(line)
    assert ok, line


def test_criterion_01_twist_signature():
    reports, dt = _suite("perm-laws")
    r = _report(reports, "twist-signature")
    _criterion(1, "twist signature (-1)^{mn} exhaustive for m,n <= 6",
               r.verdict == "pass" and r.trials == 49 and dt < 60,
               "%d cases" % r.trials)


def test_criterion_02_monoid_commutativity():
    reports, dt = _suite("monoid")
    r = _report(reports, "mu-commutative-exhaustive")
    _criterion(2, "mu o tau = mu on all Day generators with n+m <= 6",
               r.verdict == "pass" and dt < 5, "%d generators, %.1fs" % (r.trials, dt))


def test_criterion_03_naive_twist_counterexample():
    t0 = time.time()
    reports, dt = _suite("day-twist-naive")
    r = _report(reports, "counterexample-found")
    _criterion(3, "naive twist well-definedness counterexample found at levels (2,1)",
               r.verdict == "pass" and r.failures == 0 and dt < 5,
               r.witness or "")


def test_criterion_04_d_well_definedness_and_functoriality():
    reports_w, dt_w = _suite("d-well-definedness")
    reports_f, dt_f = _suite("d-functoriality")
    rw = _report(reports_w, "completion-independence")
    rf = _report(reports_f, "composition")
    ok = (rw.verdict == "pass" and rw.trials >= 500
          and rf.verdict == "pass" and rf.trials >= 500
          and dt_w + dt_f < 10)
    _criterion(4, "D well-definedness (>=500) and functoriality (>=500)",
               ok, "%d + %d trials, %.1fs" % (rw.trials, rf.trials, dt_w + dt_f))


def test_criterion_05_phi_well_definedness_and_chain_map():
    reports_w, dt_w = _suite("phi-well-definedness")
    reports_c, dt_c = _suite("phi-chain-map")
    ok = all(r.verdict == "pass" and r.trials >= 300 for r in reports_w)
    rc = _report(reports_c, "d-phi-equals-phi-d")
    ok = ok and rc.verdict == "pass" and rc.trials >= 300 and dt_w + dt_c < 30
    _criterion(5, "phi well-definedness (3 identities) and d phi = phi d, >=300 each",
               ok, "%.1fs" % (dt_w + dt_c))


def test_criterion_06_symmetric_square():
    reports, dt = _suite("symmetric-square")
    square = _report(reports, "phi-twist-square-exhaustive")
    sign = _report(reports, "expected-sign")
    ok = (square.verdict == "pass" and square.trials > 0
          and sign.verdict == "pass" and dt < 60)
    _criterion(6, "symmetric square: phi o tau = D(tau) o phi exhaustively; sign (-1)^{mi+ij}",
               ok, "%d generator pairs, %.1fs" % (square.trials, dt))


def test_criterion_07_psi():
    total_dt = 0.0
    ok = True
    counts = []
    for suite, check in [("psi-coequalizer", "relations-map-to-zero"),
                         ("psi-commutativity", "twist-square"),
                         ("psi-associativity", "reader-exercise")]:
        reports, dt = _suite(suite)
        r = _report(reports, check)
        ok = ok and r.verdict == "pass" and r.trials >= 300
        counts.append(r.trials)
        total_dt += dt
    ok = ok and total_dt < 30
    _criterion(7, "psi: coequalizer descent, R(tau) square, associativity, >=300 each",
               ok, "trials %s, %.1fs" % (counts, total_dt))


def test_criterion_08_adjunction_triangles():
    reports, dt = _suite("adjunction-triangles")
    ok = (all(r.verdict == "pass" for r in reports) and dt < 10)
    _criterion(8, "both adjunction triangles hold on all corpus generators",
               ok, "%.1fs" % dt)


def test_criterion_09_chi():
    reports_i, dt_i = _suite("chi-inverse")
    reports_c, dt_c = _suite("chi-composite-consistency")
    cp = _report(reports_i, "chi-phi-identity")
    pc = _report(reports_i, "phi-chi-identity")
    comp = _report(reports_c, "closed-formula-vs-composite")
    ok = (cp.verdict == "pass" and pc.verdict == "pass"
          and comp.verdict == "pass" and comp.trials >= 100
          and dt_i + dt_c < 30)
    _criterion(9, "chi phi = 1, phi chi = 1; closed formula matches composite (>=100)",
               ok, "%d+%d+%d checks, %.1fs" % (cp.trials, pc.trials, comp.trials, dt_i + dt_c))


def test_criterion_10_oracles():
    reports_e, dt_e = _suite("exactlin-oracles")
    reports_p, dt_p = _suite("perm-laws")
    mem = _report(reports_e, "membership-brute-force")
    dec = _report(reports_p, "shuffle-decompose-exhaustive")
    ok = (mem.verdict == "pass" and mem.trials >= 200
          and dec.verdict == "pass" and dt_e + dt_p < 10)
    _criterion(10, "lattice membership vs brute force (>=200); shuffle factorization exhaustive",
               ok, "%d + %d instances, %.1fs" % (mem.trials, dec.trials, dt_e + dt_p))


def test_criterion_11_determinism():
    cmd = [sys.executable, "-m", "chainspec.cli", "verify", "--seed", "7",
           "--format", "json", "--suite", "rho-sign", "--suite", "monoid",
           "--suite", "perm-laws", "--trials", "60"]
    out1 = subprocess.run(cmd, capture_output=True, check=True).stdout
    out2 = subprocess.run(cmd, capture_output=True, check=True).stdout
    json.loads(out1)  # must be valid JSON, not just equal bytes
    _criterion(11, "two runs of verify --seed 7 --format json are byte-identical",
               out1 == out2 and len(out1) > 0, "%d bytes" % len(out1))


def test_criterion_12_rho_diagnostic():
    reports, dt = _suite("rho-sign")
    r = _report(reports, "dual-evaluation")
    ok = (r.verdict == "expected-discrepancy" and r.witness is not None
          and "literal" in r.witness)
    _criterion(12, "rho diagnostic reports both values as expected-discrepancy, never silent pass",
               ok, r.verdict)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-v"]))
