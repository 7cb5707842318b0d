import numpy as np
import pytest

from welchdesigns import (
    SquareClass,
    build_field,
    coordinate_points,
    square_class,
    trace,
)
from welchdesigns.gf import find_primitive_polynomials


def test_field_parameters(field5, field7):
    assert field5.q == 243
    assert field5.d == 19
    assert field5.d0 == (3 - 2 * 27) % 242
    assert field7.q == 2187
    assert field7.d == 55


def test_decimation_inverse_relation():
    for n in (5, 7, 9):
        fp = build_field(n)
        assert (fp.d * fp.d0) % (fp.q - 1) == fp.q - 2  # d * d0 = -1


def test_rejects_bad_degrees():
    with pytest.raises(ValueError):
        build_field(4)
    with pytest.raises(ValueError):
        build_field(1)
    with pytest.raises(ValueError):
        build_field(15)


def test_primitive_polynomial_choice(field5):
    # deterministic build: lexicographically smallest first, constant term first
    assert field5.prim_poly == (1, 0, 0, 0, 2, 1)
    first, second = find_primitive_polynomials(5, 2)
    assert first == field5.prim_poly
    assert second != first
    fp2 = build_field(5, poly_index=1)
    assert fp2.prim_poly == second


def test_log_antilog_roundtrip(field5):
    fp = field5
    # alpha powers enumerate every nonzero element exactly once
    assert sorted(fp.antilog.tolist()) == list(range(1, fp.q))
    assert (fp.logtab[fp.antilog] == np.arange(fp.q - 1)).all()
    assert fp.logtab[0] == -1


def test_trace_values(field5):
    fp = field5
    assert trace(fp.zero(), fp) == 0
    assert trace(fp.one(), fp) == 2  # n * 1 = 5 = 2 mod 3
    fibers = np.bincount(np.asarray(fp.trace_id), minlength=3)
    assert fibers.tolist() == [81, 81, 81]  # each fiber has size 3^(n-1)


def test_trace_linearity_and_frobenius(field5):
    fp = field5
    rng = np.random.default_rng(11)
    x = rng.integers(0, fp.q, 2000)
    y = rng.integers(0, fp.q, 2000)
    tr = np.asarray(fp.trace_id, dtype=np.int64)
    # GF(3)-linearity: trace(ax + by) for a, b in {0,1,2}
    for a in range(3):
        for b in range(3):
            ax = x
            for _ in range(1):
                pass
            ax = fp.ids_add(fp.ids_add(x if a else np.zeros_like(x), fp.neg_id[x] if a == 2 else np.zeros_like(x)), 0)
    # simpler: scalar multiples via repeated addition
    def scalar(ids, c):
        if c == 0:
            return np.zeros_like(ids)
        if c == 1:
            return ids
        return fp.neg_id[ids]

    for a in range(3):
        for b in range(3):
            lhs = tr[fp.ids_add(scalar(x, a), scalar(y, b))]
            rhs = (a * tr[x] + b * tr[y]) % 3
            assert (lhs == rhs).all()
    cube = fp.power_map(3)
    assert (tr[cube[x]] == tr[x]).all()  # trace is fixed by the Frobenius


def test_field_axioms_random_triples(field5):
    fp = field5
    rng = np.random.default_rng(7)
    x = rng.integers(0, fp.q, 10_000)
    y = rng.integers(0, fp.q, 10_000)
    z = rng.integers(0, fp.q, 10_000)
    assert (fp.ids_add(fp.ids_add(x, y), z) == fp.ids_add(x, fp.ids_add(y, z))).all()
    assert (fp.ids_mul(fp.ids_mul(x, y), z) == fp.ids_mul(x, fp.ids_mul(y, z))).all()
    assert (fp.ids_mul(x, fp.ids_add(y, z))
            == fp.ids_add(fp.ids_mul(x, y), fp.ids_mul(x, z))).all()
    nz = x[x != 0]
    one = int(fp.antilog[0])
    assert (fp.ids_mul(nz, fp.inv_id[nz]) == one).all()
    cube = fp.power_map(3)
    assert (cube[fp.ids_add(x, y)] == fp.ids_add(cube[x], cube[y])).all()


def test_square_classes(field5):
    fp = field5
    assert square_class(fp.from_log(2)) is SquareClass.SQUARE
    assert square_class(fp.zero()) is SquareClass.ZERO
    minus_one = fp.neg(fp.one())
    assert square_class(minus_one) is SquareClass.NONSQUARE  # (q-1)/2 odd
    squares = sum(1 for e in range(fp.q - 1) if square_class(fp.from_log(e)) is SquareClass.SQUARE)
    assert squares == (fp.q - 1) // 2 == 121


def test_square_class_multiplicative(field5):
    fp = field5
    rng = np.random.default_rng(3)
    for _ in range(200):
        x = fp.from_log(int(rng.integers(0, fp.q - 1)))
        y = fp.from_log(int(rng.integers(0, fp.q - 1)))
        assert square_class(fp.mul(x, y)) is square_class(x) * square_class(y)


def test_element_api(field5):
    fp = field5
    a = fp.alpha()
    assert fp.mul(a, fp.inv(a)) == fp.one()
    assert fp.add(a, fp.neg(a)) == fp.zero()
    assert fp.pow(a, fp.q - 1) == fp.one()
    x = fp.from_coeffs([1, 2, 0, 0, 1])
    assert fp.from_coeffs(x.coeffs) == x
    with pytest.raises(ZeroDivisionError):
        fp.inv(fp.zero())


def test_coordinate_points(field5):
    fp = field5
    pts = coordinate_points(fp)
    assert len(pts) == 121
    assert pts[0] == fp.one()
    assert len(set(pts)) == len(pts)
    assert all(square_class(p) is SquareClass.SQUARE for p in pts)
