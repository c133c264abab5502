"""End-to-end acceptance checks.

Every test records a single ``criterion N: PASS|FAIL ...`` line; the lines
are printed together at the end of the pytest run (see conftest.py) and also
echoed to stdout, so ``pytest -s`` shows them in place.
"""
import itertools
import math
import random
import sys
import time

import pytest

from conftest import ACCEPTANCE
from resint.cache import DiskCache
from resint.groebner import Ideal, ideal_contains, radical_equal
from resint.invariants import depth_is_zero, height, hilbert_series
from resint.koszul import KoszulData
from resint.modules import betti_table, minimal_free_resolution, resolution_over_quotient
from resint.oracle import graded_monomials, oracle_determinant, oracle_hilbert, oracle_membership
from resint.polynomial import PolyRing, Polynomial
from resint.problem import load_problem
from resint.residual import (ResidualInput, f_complex_layout, general_elements,
                             hilbert_identity_check, kitt_chain, r_min_generated, random_form,
                             regularity_bound_check, residual_colon, tau)
from resint.runner import SECTIONS, Session, run


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE[n] = line
    print(line, file=sys.stdout)
    return ok


def analyze(pr, seed, analyses):
    pr.analyses = list(analyses)
    return run(pr, "analyze", seed=seed, cache=DiskCache(enabled=False)).data


def session(pr, seed=None):
    return Session(pr, seed, DiskCache(enabled=False))


@pytest.mark.slow
def test_criterion_1_example4_reproduction(fixture_path):
    want = {"ht J": 3, "dim": 2, "depth": 2, "e": 11, "e'": 14, "ericci": 14, "e <= ericci": True}
    good, notes = 0, []
    for seed in range(1, 6):
        t0 = time.perf_counter()
        rep = analyze(load_problem(fixture_path("example4.json")), seed, ["colon", "ericci", "invariants"])
        rep2 = analyze(load_problem(fixture_path("example4_prime.json")), seed, ["colon", "invariants"])
        dt = time.perf_counter() - t0
        res, inv = rep["results"], rep["results"]["invariants"]["R/J"]
        got = {"ht J": res["colon"]["height"]["value"], "dim": inv["dim"]["value"],
               "depth": inv["depth"]["value"], "e": inv["multiplicity"]["value"],
               "e'": rep2["results"]["invariants"]["R/J"]["multiplicity"]["value"],
               "ericci": res["ericci"]["ericci"]["value"],
               "e <= ericci": res["ericci"]["e(R/J) <= ericci"]}
        same_seed = rep["seed"]["used"] == seed and rep2["seed"]["used"] == seed
        ok = got == want and same_seed and dt < 120
        good += ok
        notes.append(f"seed {seed}: {'ok' if ok else got} {dt:.0f}s")
    assert record(1, good >= 3, f"{good}/5 seeds over Q; " + ", ".join(notes))


def test_criterion_2_example4_certificate(fixture_path):
    t0 = time.perf_counter()
    S = session(load_problem(fixture_path("example4.json")), 1)
    cert = SECTIONS["certify"](S)
    inp, J = S.inp, S.colon.J
    T = S.tau()
    det = oracle_determinant(inp.Phi, inp.ring)
    hyps = {c["name"]: c["passed"] for c in cert["hypotheses"]}
    facts = {
        "s = r = 3": inp.s == inp.r == 3,
        "r-minimal from height 2": hyps.get("r-minimality") is True,
        "tau = a + det(Phi)": T.tau == inp.A + Ideal(inp.ring, [det], inp.quotient),
        "mu(tau) <= 4": T.mu <= 4,
        "tau in J": ideal_contains(J, T.tau),
        "sqrt(tau) = sqrt(J)": radical_equal(T.tau, J),
        "certificate issued": cert["issued"],
    }
    dt = time.perf_counter() - t0
    bad = [k for k, v in facts.items() if not v]
    ok = not bad and dt < 120
    assert record(2, ok, f"mu(tau) = {T.mu}; {dt:.0f}s" + (f"; failed: {bad}" if bad else ""))


@pytest.mark.slow
def test_criterion_3_example5_reproduction(fixture_path):
    t0 = time.perf_counter()
    pr = load_problem(fixture_path("example5.json"))
    rep = analyze(pr, None, ["colon", "classify", "layout", "invariants"])
    R, Q, f = pr.build()
    Z1 = KoszulData(R, f, Q).cycle_module(1).presentation(over_quotient=True)
    res = rep["results"]
    amb = res["invariants"]["R"]
    q = res["layout"]["Q"]
    facts = {
        "R is S_3": amb["S_3"] is True,
        "R not CM": amb["cohen_macaulay"] is False,
        "Z_1 free of rank 2": Z1.target.rank == 2 and Z1.source.rank == 0,
        "ht(I+J) = 3": res["classify"]["heights"]["I+J"]["value"] == 3,
        "geometric": res["classify"]["geometric"],
        "ht J = 2": res["colon"]["height"]["value"] == 2,
        "R/J unmixed": res["invariants"]["R/J"]["unmixed"],
        "Q-layout identity n <= 15": q.get("available") and q["hilbert_identity_R/J"]["holds"]
                                      and q["hilbert_identity_R/J"]["n_max"] == 15,
    }
    dt = time.perf_counter() - t0
    bad = [k for k, v in facts.items() if not v]
    assert record(3, not bad and dt < 600,
                  f"Q = [{'; '.join(q.get('summary', []))}]; {dt:.0f}s" + (f"; failed: {bad}" if bad else ""))


@pytest.mark.slow
def test_criterion_4_example5_three_residual(fixture_path):
    good, notes = 0, []
    for seed in range(1, 6):
        t0 = time.perf_counter()
        S = session(load_problem(fixture_path("example5_s3.json")), seed)
        col = S.colon
        used = S.seed_record["used"]
        ok = used == seed and col.height >= 3 and depth_is_zero(col.J)
        good += ok
        notes.append(f"seed {seed}: ht {col.height}, {'ok' if ok else 'fail'} {time.perf_counter() - t0:.0f}s")
    assert record(4, good >= 3, f"{good}/5 seeds; " + ", ".join(notes))


def test_criterion_5_ex2ii_negative_control(fixture_path):
    pr = load_problem(fixture_path("ex2ii_s3.json"))
    R, Q, f = pr.build()
    I = Ideal(R, f, Q)
    pd_quotient, ranks = resolution_over_quotient(I, 4)
    H = pr.minors["matrix"]
    entries = Ideal(R, [R(s) for row in H for s in row], Q)
    rmin = r_min_generated(R, f, 3, Q)
    facts = {"codim I = 2": height(I) == 2,
             "pd_R(I) = 1": pd_quotient is not None and pd_quotient - 1 == 1,
             "not 3-minimal from height 3": not rmin.holds,
             "entries of H codim 4": height(entries) == 4}
    bad = [k for k, v in facts.items() if not v]
    assert record(5, not bad, f"R-resolution ranks of R/I {ranks}" + (f"; failed: {bad}" if bad else ""))


def test_criterion_6_linkage():
    t0 = time.perf_counter()
    R = PolyRing(("x", "y"))
    x, y = R.gens()
    inp = ResidualInput.explicit(R, [x, y], [x ** 2, y ** 2])
    J = residual_colon(inp).J
    target = Ideal(R, [x ** 2, x * y, y ** 2])
    T = tau(inp).tau
    kitt = kitt_chain(inp).kitt
    F = f_complex_layout(2, 2, [1, 1], [2, 2])
    from_layout = {}
    for i, twists in enumerate(F.terms):
        for a in twists:
            from_layout[(i, a)] = from_layout.get((i, a), 0) + 1
    rb = regularity_bound_check(inp, T)
    facts = {"J = (x^2, xy, y^2)": J == target, "tau = J": T == J, "Kitt = J": kitt == J,
             "F = [R; R(-2)^3; R(-3)^2]": F.describe() == ["R", "R(-2)^3", "R(-3)^2"],
             "F matches resolution": from_layout == betti_table(minimal_free_resolution(T)),
             "reg 1 = 1": (rb.lhs, rb.rhs, rb.holds) == (1, 1, True)}
    dt = time.perf_counter() - t0
    bad = [k for k, v in facts.items() if not v]
    assert record(6, not bad and dt < 1, f"{dt:.2f}s" + (f"; failed: {bad}" if bad else ""))


# -- criterion 7: randomized property suite ------------------------------------

P7 = 32003
N7 = 1000


def random_instance(k):
    rng = random.Random(k)
    n = rng.randint(2, 4)
    R = PolyRing(tuple("xyzw"[:n]), P7)
    r = rng.randint(1, 3)
    d = sorted(rng.randint(1, 2) for _ in range(r))
    f = []
    while len(f) < r:
        g = random_form(R, d[len(f)], rng)
        if not g.is_zero():
            f.append(g)
    s = rng.randint(1, 4)
    l = min(3, max(d) + rng.randint(0, 1))
    a, Phi = general_elements(R, f, s, l, rng.randrange(10 ** 6))
    return ResidualInput(R, tuple(f), tuple(a), Phi), rng


def changed_generators(inp, rng):
    """Unitriangular graded change of the generators of I and of a, then reversed."""
    R, f, a = inp.ring, list(inp.f), list(inp.a)
    f2 = list(f)
    for i in range(len(f)):
        for j in range(i):
            if f[j].degree() <= f[i].degree():
                f2[i] = f2[i] + random_form(R, f[i].degree() - f[j].degree(), rng) * f[j]
    a2 = [g + R.const(rng.randint(1, 5)) * a[i + 1] if i + 1 < len(a) else g for i, g in enumerate(a)]
    return ResidualInput.explicit(R, f2[::-1], a2[::-1])


@pytest.mark.slow
def test_criterion_7_property_suite():
    t0 = time.perf_counter()
    violations = {}
    residual = 0
    for k in range(N7):
        inp, rng = random_instance(k)
        col = residual_colon(inp)
        residual += col.is_residual
        ch = kitt_chain(inp)
        J, kitt = col.J, ch.kitt
        T = tau(inp)
        props = {
            "chain ascending": ch.is_ascending(),
            "a in Kitt": ideal_contains(kitt, inp.A),
            "Kitt in J": ideal_contains(J, kitt),
            "sqrt J = sqrt Kitt_1": radical_equal(J, ch.level(1)),
            "sqrt J = sqrt Kitt": radical_equal(J, kitt),
            "tau paths agree": T.paths_agree and T.tau == inp.A + ch.level(0),
            "mu bound": T.mu_ok,
            "generator invariance": kitt_chain(changed_generators(inp, rng)).kitt == kitt,
        }
        for name, ok in props.items():
            if not ok:
                violations.setdefault(name, []).append(k)
    dt = time.perf_counter() - t0
    ok = not violations and dt < 1800
    detail = f"{N7} instances over F_{P7}, {residual} residual, {dt:.0f}s"
    if violations:
        detail += "; violations: " + ", ".join(f"{k} at {v[:5]}" for k, v in violations.items())
    assert record(7, ok, detail)


# -- criterion 8: engine against oracles -----------------------------------------

D8 = 6


def forms_over_f2(R, deg):
    mons = graded_monomials(R.weights, deg)
    for mask in range(1, 2 ** len(mons)):
        yield Polynomial.from_terms(R, [(m, 1) for i, m in enumerate(mons) if mask >> i & 1])


def monomials_upto(R, top):
    return [Polynomial.from_terms(R, [(m, 1)]) for deg in range(1, top + 1)
            for m in graded_monomials(R.weights, deg)]


def sweep_families():
    """(label, ring, generator lists, membership targets)."""
    R = PolyRing(("x", "y"), 2)
    pool = [g for deg in (1, 2) for g in forms_over_f2(R, deg)]
    targets = [g for deg in range(1, 5) for g in forms_over_f2(R, deg)]
    yield "F_2 2 vars, all pairs of forms of degree <= 2", R, \
        [list(p) for p in itertools.combinations_with_replacement(pool, 2)], targets
    R = PolyRing(("x", "y", "z"), 2)
    pool = [g for deg in (1, 2) for g in forms_over_f2(R, deg)]
    yield "F_2 3 vars, all pairs of forms of degree <= 2", R, \
        [list(p) for p in itertools.combinations_with_replacement(pool, 2)], monomials_upto(R, D8)
    R = PolyRing(("x", "y", "z", "w"))
    pool = monomials_upto(R, 2)
    yield "Q 4 vars, all monomial ideals with <= 3 generators of degree <= 2", R, \
        [list(p) for m in (1, 2, 3) for p in itertools.combinations(pool, m)], monomials_upto(R, D8)


def random_family(count=300, p=101):
    R = PolyRing(("x", "y", "z", "w"), p)
    rng = random.Random(8)
    cases = []
    for _ in range(count):
        gens = [g for g in (random_form(R, rng.randint(1, 3), rng) for _ in range(rng.randint(1, 3)))
                if not g.is_zero()] or [R.var(0)]
        targets = []
        for _ in range(5):
            deg = rng.randint(3, D8)
            member = R.zero()
            for g in gens:
                if g.degree() <= deg:
                    member = member + random_form(R, deg - g.degree(), rng) * g
            targets.append(member)
            targets.append(random_form(R, rng.randint(1, D8), rng))
        cases.append((gens, targets))
    return R, cases


@pytest.mark.slow
def test_criterion_8_engine_oracles():
    t0 = time.perf_counter()
    counts = {"hilbert": 0, "membership": 0}
    bad = []

    def check(R, gens, targets):
        I = Ideal(R, gens)
        counts["hilbert"] += 1
        if hilbert_series(I).coefficients(D8) != oracle_hilbert(gens, D8, R):
            bad.append(("hilbert", gens))
        for t in targets:
            counts["membership"] += 1
            if I.contains(t) != oracle_membership(t, gens, D8):
                bad.append(("membership", gens, t))

    for _label, R, families, targets in sweep_families():
        for gens in families:
            check(R, gens, targets)
    R, cases = random_family()
    for gens, targets in cases:
        check(R, gens, targets)
    dt = time.perf_counter() - t0
    assert record(8, not bad, f"{counts['hilbert']} Hilbert functions to degree {D8}, "
                              f"{counts['membership']} memberships, {len(bad)} disagreements, {dt:.0f}s")


def test_criterion_9_excluded_with_substitutes(fixture_path):
    # the positive-characteristic cohomology statements and unconditional acyclicity
    # of the F and Q complexes are out of scope; these spot checks stand in for them
    pr = load_problem(fixture_path("example4_prime.json"))
    R, Q, f = pr.build()
    K = KoszulData(R, f, Q)
    koszul_ok = all(K.homology_vanishes(i) for i in (1, 2, 3)) and K.grade == 3
    S2 = PolyRing(("x", "y"))
    x, y = S2.gens()
    inp = ResidualInput.explicit(S2, [x, y], [x ** 2, y ** 2])
    identity_ok = bool(hilbert_identity_check(f_complex_layout(2, 2, [1, 1], [2, 2]), tau(inp).tau, 20))
    ok = koszul_ok and identity_ok
    record(9, ok, "excluded as not desk-checkable; substitutes: Koszul homology of (x2, x3, x4) "
                  f"vanishes in the quadric ring: {koszul_ok}; linkage F-layout Hilbert identity "
                  f"n <= 20: {identity_ok}; Hilbert identities of criteria 3 and 6")
    assert ok
