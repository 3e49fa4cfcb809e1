"""Matrix layer tests: arithmetic, charpoly, decomposition, power witnesses."""

import pytest

from cleanforge import (
    Mat,
    NotAUnit,
    NotIdempotent,
    SpecMismatch,
    UnsupportedRing,
    charpoly,
    companion,
    det,
    format_poly,
    idempotent_split_basis,
    mat_crt_combine,
    mat_crt_split,
    mat_invert,
    mat_pow,
    monic_polys,
    parse_poly,
    parse_ring_spec,
    pi_regular_witness,
    poly_eval_matrix,
    poly_reduce_via_matrix,
    strongly_clean_decompose,
    verify_decomposition,
)
from cleanforge.errors import PreconditionViolated

Z4 = parse_ring_spec("Z/4")
Z8 = parse_ring_spec("Z/8")
Z9 = parse_ring_spec("Z/9")
Z12 = parse_ring_spec("Z/12")
F2T = parse_ring_spec("F2[t]/t^2")


def test_mat_construction_and_round_trip():
    A = Mat.from_ints(Z4, [[0, 2], [1, 1]])
    assert A.n == 2 and A.spec == Z4
    assert A.to_strings() == [["0", "2"], ["1", "1"]]
    assert Mat.from_strings(Z4, A.to_strings()) == A
    assert Mat.identity(Z4, 2) + Mat.zeros(Z4, 2) == Mat.identity(Z4, 2)
    with pytest.raises(Exception):
        Mat.from_ints(Z4, [[1, 2, 3], [4, 5, 6]])


def test_mat_arithmetic():
    A = Mat.from_ints(Z4, [[0, 2], [1, 1]])
    B = Mat.from_ints(Z4, [[1, 0], [2, 3]])
    I = Mat.identity(Z4, 2)
    assert A + B == Mat.from_ints(Z4, [[1, 2], [3, 0]])
    assert A - A == Mat.zeros(Z4, 2) and (A - A).is_zero()
    assert A * I == A and I * A == A
    assert A * B == Mat.from_ints(Z4, [[4, 6], [3, 3]])
    assert -A + A == Mat.zeros(Z4, 2)
    assert A.scale(Z4.from_int(2)) == Mat.from_ints(Z4, [[0, 4], [2, 2]])
    assert A.add_scalar_diag(Z4.from_int(1)) == Mat.from_ints(Z4, [[1, 2], [1, 2]])
    assert mat_pow(A, 0) == I and mat_pow(A, 3) == A * A * A
    with pytest.raises(SpecMismatch):
        A + Mat.identity(Z8, 2)


def test_det_and_inverse():
    A = Mat.from_ints(Z4, [[1, 2], [1, 1]])
    assert det(A) == Z4.from_int(-1)
    Ainv = mat_invert(A)
    assert A * Ainv == Mat.identity(Z4, 2) and Ainv * A == Mat.identity(Z4, 2)
    singular = Mat.from_ints(Z4, [[2, 1], [0, 1]])
    assert not det(singular).is_unit()
    with pytest.raises(NotAUnit):
        mat_invert(singular)


def test_inverse_works_whenever_det_is_unit():
    # exhaustive over 2x2 Z/4: invertibility is decided by the determinant
    elems = list(Z4.elements())
    n_units = 0
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    A = Mat(Z4, [[a, b], [c, d]])
                    if det(A).is_unit():
                        n_units += 1
                        assert A * mat_invert(A) == Mat.identity(Z4, 2)
    assert n_units == 96


def test_product_ring_inverse_via_components():
    A = Mat.from_ints(Z12, [[7, 2], [1, 1]])
    assert det(A) == Z12.from_int(5) and det(A).is_unit()
    assert A * mat_invert(A) == Mat.identity(Z12, 2)
    B = Mat.from_ints(Z12, [[7, 2], [1, 5]])    # det 33 = 9, kills the 3-part
    assert not det(B).is_unit()
    with pytest.raises(NotAUnit):
        mat_invert(B)
    parts = mat_crt_split(B)
    assert [m.spec.name() for m in parts] == ["Z/4", "Z/3"]
    assert mat_crt_combine(parts, Z12) == B


def test_charpoly_frozen_example():
    A = Mat.from_ints(Z4, [[0, 2], [1, 1]])
    f = charpoly(A)
    assert format_poly(f) == "X^2+3*X+2"
    assert f.is_monic() and f.degree == 2


def test_charpoly_of_companion_recovers_polynomial():
    for spec in (Z4, Z9, F2T):
        for deg in (1, 2, 3):
            for f in monic_polys(spec, deg):
                assert charpoly(companion(f)) == f


def test_charpoly_constant_term_is_signed_det():
    # f(0) = det(-A)
    A = Mat.from_ints(Z9, [[1, 2, 3], [4, 5, 6], [7, 8, 1]])
    f = charpoly(A)
    assert f.coeff(0) == det(-A)


def test_cayley_hamilton_small():
    for ints in ([[0, 2], [1, 1]], [[1, 3], [2, 2]], [[3, 0], [1, 2]]):
        A = Mat.from_ints(Z4, ints)
        assert poly_eval_matrix(charpoly(A), A).is_zero()
    B = Mat.from_ints(Z9, [[1, 2, 0], [3, 4, 5], [6, 7, 8]])
    assert poly_eval_matrix(charpoly(B), B).is_zero()


def test_decompose_frozen_split_example():
    A = Mat.from_ints(Z4, [[0, 2], [1, 1]])
    dec = strongly_clean_decompose(A)
    assert dec.case == "split"
    assert dec.E == Mat.from_ints(Z4, [[3, 2], [3, 2]])
    assert dec.U == Mat.from_ints(Z4, [[1, 0], [2, 3]])
    g, h, u, v = dec.certificate
    assert format_poly(g) == "X+2" and format_poly(h) == "X+1"
    assert format_poly(u) == "1" and format_poly(v) == "3"
    assert verify_decomposition(A, dec.E, dec.U).ok


def test_decompose_trivial_cases():
    # invertible input: E = 0
    A = Mat.from_ints(Z4, [[1, 2], [1, 1]])
    dec = strongly_clean_decompose(A)
    assert dec.case == "unit" and dec.E.is_zero() and dec.U == A
    # nilpotent-at-zero input: E = I
    N = Mat.from_ints(Z4, [[2, 1], [0, 2]])
    dec = strongly_clean_decompose(N)
    assert dec.case == "unipotent-shift"
    assert dec.E == Mat.identity(Z4, 2)
    assert verify_decomposition(N, dec.E, dec.U).ok
    # 1x1 nilpotent scalar
    a = Mat.from_ints(Z4, [[2]])
    dec = strongly_clean_decompose(a)
    assert dec.case == "unipotent-shift"
    assert dec.E == Mat.from_ints(Z4, [[1]]) and dec.U == Mat.from_ints(Z4, [[1]])


def test_decompose_verifies_exhaustively_on_smallest_ring():
    elems = list(Z4.elements())
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    A = Mat(Z4, [[a, b], [c, d]])
                    dec = strongly_clean_decompose(A)
                    res = verify_decomposition(A, dec.E, dec.U)
                    assert res.ok, (A.to_strings(), res.reason)


def test_decompose_product_ring_routes_through_components():
    A = Mat.from_ints(Z12, [[7, 2], [1, 5]])
    dec = strongly_clean_decompose(A)
    assert dec.case == "crt"
    assert dec.E == Mat.from_ints(Z12, [[4, 0], [0, 4]])
    assert dec.U == Mat.from_ints(Z12, [[3, 2], [1, 1]])
    assert verify_decomposition(A, dec.E, dec.U).ok
    cases = [part.case for part in dec.certificate]
    assert len(cases) == 2


def test_decompose_refuses_localized_integers():
    zl = parse_ring_spec("Zloc(5)")
    A = Mat.from_ints(zl, [[1, 2], [3, 4]])
    with pytest.raises(UnsupportedRing):
        strongly_clean_decompose(A)


def test_verify_decomposition_reason_order():
    I = Mat.identity(Z4, 2)
    Z = Mat.zeros(Z4, 2)
    assert verify_decomposition(Z, I, Z).reason == "A != E+U"
    # E + U adds up but E is not idempotent
    E = Mat.from_ints(Z4, [[1, 1], [0, 1]])
    U = Mat.from_ints(Z4, [[1, 0], [0, 1]])
    assert verify_decomposition(E + U, E, U).reason == "E^2 != E"
    # idempotent E that fails to commute with U
    E = Mat.from_ints(Z4, [[1, 0], [0, 0]])
    U = Mat.from_ints(Z4, [[0, 1], [1, 0]])
    assert verify_decomposition(E + U, E, U).reason == "EU != UE"
    # everything commutes but U is singular
    U = Mat.from_ints(Z4, [[2, 0], [0, 2]])
    assert verify_decomposition(E + U, E, U).reason == "U not a unit"
    ok = verify_decomposition(I + I, I, I)
    assert ok.ok and ok.reason is None


def test_pi_regular_witness_frozen_example():
    A = Mat.from_ints(Z4, [[0, 2], [1, 1]])
    w = pi_regular_witness(A)
    assert (w.q, w.period) == (2, 2)
    assert mat_pow(A, w.q) == mat_pow(A, w.q + 1) * w.s
    assert w.s == Mat.from_ints(Z4, [[0, 2], [1, 1]])


def test_pi_regular_witness_degenerate_shapes():
    I = Mat.identity(Z4, 2)
    w = pi_regular_witness(I)
    assert w.q == 1 and w.period == 1 and w.s == I
    Z = Mat.zeros(Z4, 2)
    w = pi_regular_witness(Z)
    assert w.q >= 1 and mat_pow(Z, w.q) == mat_pow(Z, w.q + 1) * w.s
    E = Mat.from_ints(Z4, [[1, 0], [0, 0]])
    w = pi_regular_witness(E)
    assert w.q == 1 and w.period == 1
    assert mat_pow(E, 1) == mat_pow(E, 2) * w.s


def test_pi_regular_power_idempotent():
    # A^q * s^q is an idempotent commuting with A
    for ints in ([[0, 2], [1, 1]], [[2, 3], [1, 2]], [[3, 3], [0, 2]]):
        A = Mat.from_ints(Z4, ints)
        w = pi_regular_witness(A)
        P = mat_pow(A, w.q) * mat_pow(w.s, w.q)
        assert P * P == P
        assert P * A == A * P


def test_poly_reduce_via_matrix_frozen_example():
    f = parse_poly(Z4, "X^2+3*X+2")
    g, h = poly_reduce_via_matrix(f, Z4.from_int(1))
    assert format_poly(g) == "X+2" and format_poly(h) == "X+1"
    assert g * h == f


def test_poly_reduce_via_matrix_preconditions():
    f = parse_poly(Z4, "X^2+3*X+2")
    # a must be a unit
    with pytest.raises(PreconditionViolated):
        poly_reduce_via_matrix(f, Z4.from_int(2))
    # f(a) must be a non-unit
    with pytest.raises(PreconditionViolated):
        poly_reduce_via_matrix(parse_poly(Z4, "X^2+X+1"), Z4.from_int(1))
    # f(0) must be a non-unit
    with pytest.raises(PreconditionViolated):
        poly_reduce_via_matrix(parse_poly(Z4, "X^2+2*X+1"), Z4.from_int(1))


def test_poly_reduce_via_matrix_sweep():
    # every qualifying (f, a) pair over two rings yields a true factorization
    for spec in (Z4, Z9):
        units = [x for x in spec.elements() if x.is_unit()]
        for f in monic_polys(spec, 2):
            if f.coeff(0).is_unit():
                continue
            for a in units:
                if f(a).is_unit():
                    continue
                g, h = poly_reduce_via_matrix(f, a)
                assert g * h == f
                assert not g.coeff(0).is_unit()
                assert g.is_monic() and h.is_monic()


def test_idempotent_split_basis():
    E = Mat.from_ints(Z4, [[3, 2], [3, 2]])
    assert E * E == E
    Q, r = idempotent_split_basis(E)
    assert det(Q).is_unit()
    assert r == 1
    D = Q * E * mat_invert(Q)
    assert D == Mat.from_ints(Z4, [[1, 0], [0, 0]])
    with pytest.raises(NotIdempotent):
        idempotent_split_basis(Mat.from_ints(Z4, [[1, 1], [0, 1]]))


def test_idempotent_split_basis_all_idempotents():
    elems = list(Z4.elements())
    count = 0
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    E = Mat(Z4, [[a, b], [c, d]])
                    if E * E != E:
                        continue
                    count += 1
                    Q, r = idempotent_split_basis(E)
                    D = Q * E * mat_invert(Q)
                    rows = [[Z4.one() if (i == j and i < r) else Z4.zero()
                             for j in range(2)] for i in range(2)]
                    assert D == Mat(Z4, rows)
    # 0 and I plus four lifts of each of the six rank-1 residue idempotents
    assert count == 26


def test_companion_matrix_layout():
    f = parse_poly(Z4, "X^3+2*X^2+3*X+1")
    C = companion(f)
    assert C.n == 3
    # last column holds the negated coefficients
    assert C.to_strings() == [["0", "0", "3"], ["1", "0", "1"], ["0", "1", "2"]]
    assert charpoly(C) == f
