"""Acceptance gate: nine end-to-end criteria, one printed verdict line each.

Run with `pytest -v` (test names carry the criterion numbers) or
`pytest -s tests/test_acceptance.py` to see the PASS/FAIL lines inline.
Each criterion computes its result first, prints an honest verdict with
the measured numbers, and only then asserts — so a red criterion still
reports what was actually observed.
"""

import json
import random
import time
from fractions import Fraction

from cubictwist import __version__
from cubictwist.admissible import (
    compute_s,
    empirical_density,
    enumerate_m,
    generate_Ma,
    generate_Qa,
    in_Ma,
    predicted_density,
)
from cubictwist.certify import (
    CertConclusion,
    certify,
    selmer_table_lookup,
    trivial_selmer_coefficients,
)
from cubictwist.cli import main as cli_main
from cubictwist.curve_count import fast_count, naive_count, torsion3_trivial
from cubictwist.eisenstein import solve_norm_equation
from cubictwist.ff_arith import is_prime
from cubictwist.local_kummer import KummerLocalType, classify_place, places_above

GOLDEN_QA_MINUS1_1000 = [
    19, 127, 163, 199, 271, 307, 379, 487, 523, 631, 739, 811, 883, 919, 991,
]

TRIVIAL_SELMER_A = [-17, -16, -14, -10, -9, -8, -6, -5, -1, 6, 7, 8, 13, 14, 20]

S_ONE_ROWS = {-14, 7, 13, 14}


def report(num, label, ok, detail=""):
    verdict = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {num} [{label}]: {verdict}"
    if detail:
        line += f" — {detail}"
    print(line)
    return ok


def run_cli_json(argv, capsys):
    code = cli_main(argv + ["--format", "json"])
    out, _ = capsys.readouterr()
    return code, json.loads(out)


def test_criterion_1_golden_prime_list(capsys):
    t0 = time.perf_counter()
    code, env = run_cli_json(["qa", "--a", "-1", "--limit", "1000"], capsys)
    elapsed = time.perf_counter() - t0
    got = [p["ell"] for p in env["result"]["primes"]]
    ok = code == 0 and got == GOLDEN_QA_MINUS1_1000 and elapsed < 1.0
    with capsys.disabled():
        report(1, "golden Q_a list, a=-1, limit 1000", ok,
               f"{len(got)} primes in {elapsed:.3f}s")
    assert got == GOLDEN_QA_MINUS1_1000
    assert elapsed < 1.0


def test_criterion_2_table_densities(capsys):
    t0 = time.perf_counter()
    mismatches = []
    for a in TRIVIAL_SELMER_A:
        row = selmer_table_lookup(a)
        want_s = 1 if a in S_ONE_ROWS else 0
        want_density = Fraction(1, 72) if a in S_ONE_ROWS else Fraction(1, 24)
        if compute_s(a) != row.s or row.s != want_s:
            mismatches.append((a, "s", compute_s(a), row.s))
        if predicted_density(a) != row.density or row.density != want_density:
            mismatches.append((a, "density", predicted_density(a), row.density))
    elapsed = time.perf_counter() - t0
    ok = not mismatches and elapsed < 1.0
    with capsys.disabled():
        report(2, "closed-form s and density match embedded table", ok,
               f"15 rows in {elapsed:.3f}s" + (f"; mismatches {mismatches}" if mismatches else ""))
    assert mismatches == []
    assert elapsed < 1.0


def test_criterion_3_vanishing_list(capsys):
    got = trivial_selmer_coefficients()
    ok = got == TRIVIAL_SELMER_A
    with capsys.disabled():
        report(3, "trivial-Selmer coefficient list", ok, f"{len(got)} values")
    assert got == TRIVIAL_SELMER_A


def test_criterion_4_density_convergence(capsys):
    t0 = time.perf_counter()
    results = []
    for a, target in ((-1, Fraction(1, 24)), (7, Fraction(1, 72))):
        rep = empirical_density(a, 10**6, threads=8)
        dev = abs(float(rep.empirical) - float(target))
        results.append((a, rep, target, dev))
    elapsed = time.perf_counter() - t0
    ok = all(dev < 0.01 for _, _, _, dev in results)
    detail = "; ".join(
        f"a={a}: {rep.primes_in_qa}/{rep.primes_total} = {float(rep.empirical):.5f} "
        f"vs {float(target):.5f} (dev {dev:.5f})"
        for a, rep, target, dev in results
    )
    with capsys.disabled():
        report(4, "empirical density within 0.01 of closed form at 10^6", ok,
               detail + f"; {elapsed:.1f}s")
    for a, rep, target, dev in results:
        assert dev < 0.01, (
            f"a={a}: empirical {rep.primes_in_qa}/{rep.primes_total} "
            f"= {float(rep.empirical):.5f} is not within 0.01 of {float(target):.5f}"
        )


def test_criterion_5_count_oracle_grid(capsys):
    t0 = time.perf_counter()
    primes = [p for p in range(5, 2000) if is_prime(p)]
    cases = 0
    bad = []
    for a in range(-20, 21):
        if a == 0:
            continue
        for ell in primes:
            if (6 * a) % ell == 0:
                continue
            cases += 1
            nv = naive_count(a, ell)
            fv = fast_count(a, ell)
            if fv.count != nv.count:
                bad.append(("count", a, ell, fv.count, nv.count))
            if torsion3_trivial(a, ell) != (nv.count % 3 != 0):
                bad.append(("torsion", a, ell))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60.0
    with capsys.disabled():
        report(5, "fast_count = naive_count and torsion criterion on grid", ok,
               f"{cases} cases in {elapsed:.1f}s" + (f"; first failures {bad[:3]}" if bad else ""))
    assert bad == []
    assert elapsed < 60.0


def test_criterion_6_norm_equation_oracle(capsys):
    t0 = time.perf_counter()
    checked = 0
    bad = []
    for ell in range(7, 100_000):
        if ell % 3 != 1 or not is_prime(ell):
            continue
        got = solve_norm_equation(ell)
        checked += 1
        if 4 * ell != got.L**2 + 27 * got.M**2 or got.L % 3 != 1 or got.M <= 0:
            bad.append((ell, got))
            continue
        if exhaustive_norm_pair(ell) != (got.L, got.M):
            bad.append((ell, got, "oracle-disagrees"))
    elapsed = time.perf_counter() - t0
    ok = not bad
    with capsys.disabled():
        report(6, "norm equation vs exhaustive oracle below 10^5", ok,
               f"{checked} primes in {elapsed:.1f}s")
    assert bad == []


def exhaustive_norm_pair(ell):
    M = 1
    hits = []
    while 27 * M * M < 4 * ell:
        rest = 4 * ell - 27 * M * M
        r = int(rest**0.5)
        for c in (r - 1, r, r + 1):
            if c > 0 and c * c == rest:
                hits.extend((s, M) for s in (c, -c) if s % 3 == 1)
        M += 1
    assert len(hits) == 1
    return hits[0]


def test_criterion_7_kummer_classifier(capsys):
    anchored = [
        (19, 19, KummerLocalType.RAMIFIED),
        (2, 19, KummerLocalType.SPLIT),
        (3, 10, KummerLocalType.SPLIT),
    ]
    bad = []
    for ell, m, want in anchored:
        for v in places_above(ell):
            got = classify_place(v, m)
            if got is not want:
                bad.append((ell, m, got))
    rng = random.Random(20260817)
    primes = [p for p in range(2, 1000) if is_prime(p)]
    triples = 0
    while triples < 1000:
        ell = rng.choice(primes)
        m = rng.randrange(2, 100_000)
        c = rng.randrange(2, 60)
        from cubictwist.factorint import cubefree_core

        if cubefree_core(m) == 1:
            continue
        triples += 1
        for v in places_above(ell):
            t1 = classify_place(v, m)
            t2 = classify_place(v, m * c**3)
            if t1 is not t2:
                bad.append(("invariance", ell, m, c, t1, t2))
            if t1 not in (
                KummerLocalType.SPLIT,
                KummerLocalType.INERT,
                KummerLocalType.RAMIFIED,
            ):
                bad.append(("trichotomy", ell, m))
    ok = not bad
    with capsys.disabled():
        report(7, "Kummer classifier anchors and cube-class invariance", ok,
               f"3 anchors + {triples} random triples" + (f"; {bad[:3]}" if bad else ""))
    assert bad == []


def test_criterion_8_certification_closure(capsys):
    t0 = time.perf_counter()
    bad = []
    certified_total = 0
    for a in TRIVIAL_SELMER_A:
        ms = enumerate_m(a, 5000)
        for m in ms:
            rep = certify(a, m)
            certified_total += 1
            if rep.conclusion is not CertConclusion.CERTIFIED:
                bad.append((a, m, rep.conclusion.value, rep.failed_checks))
        for label, mutant in mutations_for(a, ms):
            rep = certify(a, mutant)
            if rep.conclusion is not CertConclusion.NOT_CERTIFIED:
                bad.append((a, label, mutant, rep.conclusion.value))
    elapsed = time.perf_counter() - t0
    ok = not bad
    with capsys.disabled():
        report(8, "certification closure and mutation rejection", ok,
               f"{certified_total} certified pairs in {elapsed:.1f}s"
               + (f"; failures {bad[:3]}" if bad else ""))
    assert bad == []


def mutations_for(a, ms):
    """One mutant per violated hypothesis, leaving the others intact."""
    muts = []
    base = ms[0] if ms else 19
    # sign flip
    muts.append(("negative-m", -base))
    # congruence: a prime admissible for a but not 1 mod 9
    for p in range(7, 2000):
        if is_prime(p) and p % 9 != 1 and in_Ma(a, p):
            muts.append(("not-1-mod-9", p))
            break
    # membership: a prime = 1 mod 9 with good reduction that fails the
    # torsion condition
    for p in range(19, 5000):
        if is_prime(p) and p % 9 == 1 and (6 * a) % p != 0 and not in_Ma(a, p):
            muts.append(("factor-outside-Ma", p))
            break
    # cubefree: cube a Q_a prime into a certified m (keeps 1 mod 9 and
    # membership intact)
    qa_primes = [r.ell for r in generate_Qa(a, 1000)]
    spare = next((p for p in qa_primes if base % p != 0), None)
    if spare is not None:
        muts.append(("not-cubefree", base * spare**3))
    return muts


def test_criterion_9_thread_determinism(capsys):
    commands = [
        ["qa", "--a", "-1", "--limit", "1000", "--format", "json"],
        ["ma", "--a", "-14", "--limit", "2000", "--format", "csv"],
        ["density", "--a", "7", "--limit", "50000", "--format", "json"],
        ["enumerate-m", "--a", "-1", "--bound", "5000", "--format", "table"],
    ]
    bad = []
    for argv in commands:
        outs = []
        for threads in ("1", "8"):
            code = cli_main(argv + ["--threads", threads])
            out, _ = capsys.readouterr()
            outs.append((code, out))
        if outs[0] != outs[1]:
            bad.append(argv[0])
    ok = not bad
    with capsys.disabled():
        report(9, "byte-identical output for --threads 1 vs 8", ok,
               f"{len(commands)} commands" + (f"; differing: {bad}" if bad else ""))
    assert bad == []


def test_acceptance_summary_footer(capsys):
    with capsys.disabled():
        print(f"acceptance suite complete (cubictwist {__version__})")
