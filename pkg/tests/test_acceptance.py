"""Acceptance gate: the headline guarantees, one test and one summary line each.

Every check here is exact; there are no numeric tolerances anywhere.  The
stated runtime budgets are asserted, with generous margin on this hardware.
"""

import time

import pytest

from cleanforge import (
    Mat,
    SplitMix64,
    UnsupportedRing,
    brute_factor,
    brute_strongly_clean,
    charpoly,
    check_lemma_polyreduc,
    check_pi_regular,
    check_t5_condition,
    check_theorem_local_instance,
    hensel_lift,
    monic_polys,
    monic_residue_polys,
    nonclean_witness_quadratic,
    parse_ring_spec,
    poly_eval_matrix,
    poly_reduce_via_matrix,
    random_matrix,
    reduce_mod_p,
    residue_gcd,
    strongly_clean_decompose,
    verify_decomposition,
)
from cleanforge.poly import Poly

Z4 = parse_ring_spec("Z/4")
Z8 = parse_ring_spec("Z/8")
Z9 = parse_ring_spec("Z/9")
Z12 = parse_ring_spec("Z/12")
F2T = parse_ring_spec("F2[t]/t^2")
F3T = parse_ring_spec("F3[t]/t^2")


def record(log, label, ok, detail=""):
    suffix = f" ({detail})" if detail else ""
    log.append(f"[acceptance] {label}: {'PASS' if ok else 'FAIL'}{suffix}")


def all_matrices(spec, n):
    elems = list(spec.elements())
    size = len(elems)
    total = size ** (n * n)
    for code in range(total):
        c = code
        flat = []
        for _ in range(n * n):
            flat.append(elems[c % size])
            c //= size
        yield Mat(spec, [flat[i * n:(i + 1) * n] for i in range(n)])


def test_exhaustive_2x2_decomposition_over_all_small_local_rings(acceptance_log):
    cases = [(Z4, 256), (Z8, 4096), (Z9, 6561), (F2T, 256), (F3T, 6561)]
    t0 = time.perf_counter()
    counts = []
    ok = True
    for spec, expect in cases:
        rep = check_theorem_local_instance(spec, 2)
        ok = ok and rep.ok and rep.checked == expect
        counts.append(f"{spec.name()}:{rep.checked}")
    # the object layer must agree on the smallest rings, not just the kernel
    for spec in (Z4, F2T):
        rep = check_theorem_local_instance(spec, 2, engine="generic")
        ok = ok and rep.ok and rep.checked == 256
    elapsed = time.perf_counter() - t0
    record(acceptance_log, "exhaustive 2x2 decomposition on five local rings",
           ok and elapsed < 10.0, f"{', '.join(counts)}, {elapsed:.2f}s < 10s")
    assert ok
    assert elapsed < 10.0


def test_brute_force_oracle_agrees_on_all_z4_matrices(acceptance_log):
    disagreements = 0
    for A in all_matrices(Z4, 2):
        found = brute_strongly_clean(A)
        dec = strongly_clean_decompose(A)
        if found is None:
            disagreements += 1
            continue
        E, U = found
        if not verify_decomposition(A, E, U).ok:
            disagreements += 1
        if not verify_decomposition(A, dec.E, dec.U).ok:
            disagreements += 1
    record(acceptance_log, "brute-force oracle equivalence on 256 Z/4 matrices",
           disagreements == 0, f"{disagreements} disagreements")
    assert disagreements == 0


def test_sampled_3x3_decomposition(acceptance_log):
    t0 = time.perf_counter()
    ok = True
    for spec in (Z8, Z9):
        rep = check_theorem_local_instance(spec, 3, mode="sample",
                                           count=1000, seed=42)
        ok = ok and rep.ok and rep.checked == 1000
    # the generic path must handle a slice of the same stream
    for spec in (Z8, Z9):
        rep = check_theorem_local_instance(spec, 3, mode="sample",
                                           count=100, seed=42, engine="generic")
        ok = ok and rep.ok
    elapsed = time.perf_counter() - t0
    record(acceptance_log, "sampled 3x3 decomposition over Z/8 and Z/9",
           ok and elapsed < 30.0, f"1000 each, {elapsed:.2f}s < 30s")
    assert ok
    assert elapsed < 30.0


def test_lift_exactness_and_uniqueness_on_all_coprime_residue_splits(acceptance_log):
    checked = 0
    failures = 0
    for spec in (Z4, Z9):
        p = spec.residue_char()
        one = Poly.one(spec)
        # the coprime splits depend only on the residue image, so enumerate
        # them once per fbar instead of once per f
        split_cache = {}

        def splits_of(fbar, deg):
            key = str(fbar)
            if key not in split_cache:
                found = []
                for d in range(1, deg):
                    for gbar in monic_residue_polys(p, d):
                        if not gbar.divides(fbar):
                            continue
                        hbar = fbar // gbar
                        if residue_gcd(gbar, hbar).degree == 0:
                            found.append((gbar, hbar))
                split_cache[key] = found
            return split_cache[key]

        for deg in (2, 3, 4):
            split_cache.clear()
            for f in monic_polys(spec, deg):
                fbar = reduce_mod_p(f)
                for gbar, hbar in splits_of(fbar, deg):
                    checked += 1
                    first = hensel_lift(f, gbar, hbar)
                    again = hensel_lift(f, gbar, hbar)
                    if first != again:
                        failures += 1
                        continue
                    if first.g * first.h != f:
                        failures += 1
                        continue
                    if first.u * first.g + first.v * first.h != one:
                        failures += 1
    record(acceptance_log,
           "lift exactness and uniqueness, monic degree <= 4 over Z/4 and Z/9",
           failures == 0 and checked > 0, f"{checked} splits, {failures} failures")
    assert failures == 0
    assert checked > 0


def test_unit_point_factorization_sweep(acceptance_log):
    ok = True
    checked = 0
    for spec in (Z4, Z9, F2T):
        for deg in (2, 3):
            rep = check_lemma_polyreduc(spec, deg)
            ok = ok and rep.ok
            checked += rep.checked
    record(acceptance_log,
           "unit-point factorization with trial-division cross-check",
           ok, f"{checked} (f, a) pairs over three rings, degrees 2-3")
    assert ok
    assert checked > 0


def test_marked_polynomials_split_up_to_degree_five(acceptance_log):
    t0 = time.perf_counter()
    rep4 = check_t5_condition(Z4, [2, 3, 4, 5])
    rep9 = check_t5_condition(Z9, [2, 3])
    elapsed = time.perf_counter() - t0
    ok = rep4.ok and rep9.ok
    record(acceptance_log, "marked polynomials split, degrees 2-5 on Z/4 and 2-3 on Z/9",
           ok and elapsed < 5.0,
           f"{rep4.checked}+{rep9.checked} qualifying, {elapsed:.2f}s < 5s")
    assert ok
    assert elapsed < 5.0


def test_power_stabilization_with_q_bound(acceptance_log):
    ok = True
    max_q = 0
    for spec in (Z4, Z9):
        rep = check_pi_regular(spec, 2)
        ok = ok and rep.ok
        max_q = max(max_q, rep.details["max_q"])
    record(acceptance_log, "power stabilization witnesses, exhaustive 2x2",
           ok, f"q bound respected, max q observed = {max_q}")
    assert ok
    assert max_q == 4


def test_product_ring_decomposition_by_componentwise_glue(acceptance_log):
    rep = check_theorem_local_instance(Z12, 2, mode="sample", count=2000, seed=7)
    ok = rep.ok and rep.checked == 2000
    # spot-check that the route really is the componentwise one
    rng = SplitMix64(7)
    for _ in range(25):
        A = random_matrix(Z12, 2, rng)
        dec = strongly_clean_decompose(A)
        ok = ok and dec.case == "crt"
        ok = ok and verify_decomposition(A, dec.E, dec.U).ok
    record(acceptance_log, "product ring decomposition through component glue",
           ok, "2000 sampled 2x2 over Z/12")
    assert ok


def test_quadratic_witnesses_and_localized_refusal(acceptance_log):
    expected_disc = {2: -7, 3: -11, 5: -19, 7: -27, 11: -43}
    ok = True
    for p, disc in expected_disc.items():
        w = nonclean_witness_quadratic(p)
        checks = w.checks
        ok = ok and checks["f0_in_max_ideal"] and checks["f1_in_max_ideal"]
        ok = ok and checks["discriminant"] == disc
        ok = ok and not checks["discriminant_is_square"]
        zl = parse_ring_spec(f"Zloc({p})")
        A = Mat.from_ints(zl, [[0, -p], [1, 1]])
        try:
            strongly_clean_decompose(A)
            ok = False
        except UnsupportedRing:
            pass
    record(acceptance_log, "quadratic witnesses for p in {2,3,5,7,11} plus refusal",
           ok, "f(0), f(1) non-units, discriminant non-square")
    assert ok


def _cofactor_charpoly(A):
    # independent oracle: expand det(X*I - A) by first-row cofactors
    spec = A.spec
    n = A.n
    x = Poly.from_ints(spec, [0, 1])
    M = [[(x if i == j else Poly.zero(spec)) - Poly(spec, [A.rows[i][j]])
          for j in range(n)] for i in range(n)]

    def detp(rows):
        if len(rows) == 1:
            return rows[0][0]
        acc = Poly.zero(spec)
        for j, top in enumerate(rows[0]):
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = top * detp(minor)
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    return detp(M)


def test_cayley_hamilton_and_charpoly_oracle(acceptance_log):
    ok = True
    for A in all_matrices(Z4, 2):
        if not poly_eval_matrix(charpoly(A), A).is_zero():
            ok = False
    rng = SplitMix64(42)
    for _ in range(500):
        A = random_matrix(Z9, 3, rng)
        if not poly_eval_matrix(charpoly(A), A).is_zero():
            ok = False
    rng = SplitMix64(100)
    for _ in range(100):
        A = random_matrix(Z9, 3, rng)
        if charpoly(A) != _cofactor_charpoly(A):
            ok = False
    record(acceptance_log, "Cayley-Hamilton plus cofactor-expansion agreement",
           ok, "256 exhaustive 2x2, 500 sampled 3x3, 100 oracle comparisons")
    assert ok
