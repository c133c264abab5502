import pytest
from hypothesis import given, strategies as st

from resint import config
from resint.errors import ResourceLimitError
from resint.groebner import (Ideal, colon_element, compute_basis, eliminate, ideal_colon,
                             ideal_contains, ideal_equal, ideal_intersection, ideal_membership,
                             ideal_saturation, lift_coefficients, normal_form, radical_contains,
                             radical_equal, radical_membership)
from resint.oracle import oracle_membership
from resint.polynomial import PolyRing, format_polynomial
from strategies import homogeneous_polys, polys

R = PolyRing(("x", "y"))
x, y = R.gens()
T = PolyRing(("t", "x", "y", "z"))
t, X, Y, Z = T.gens()


def ideal(*gens, ring=R, quotient=()):
    return Ideal(ring, list(gens), quotient)


def test_basis_closes_spair():
    G = ideal(x ** 2 + y ** 2, x * y).groebner_basis()
    assert sorted(format_polynomial(g) for g in G) == ["x*y", "x^2 + y^2", "y^3"]
    assert G.verify()


def test_trivial_bases():
    assert [format_polynomial(g) for g in ideal(x).groebner_basis()] == ["x"]
    assert ideal(x + 1, x).groebner_basis().is_unit()


def test_normal_forms():
    G = ideal(x ** 2 + y ** 2, x * y).groebner_basis()
    assert normal_form(y ** 3, G).is_zero()
    S = PolyRing(("x", "y", "z"))
    assert normal_form(S("z"), Ideal(S, [S("x"), S("y")]).groebner_basis()) == S("z")
    p = x ** 3 + 2 * y
    assert normal_form(p, ideal().groebner_basis()) == p


def test_membership_and_equality():
    assert ideal_membership(y ** 3, ideal(x ** 2 + y ** 2, x * y))
    assert not ideal_membership(x, ideal(x ** 2))
    assert ideal_equal(ideal(x, y), ideal(y, x + y))


def test_intersections():
    assert ideal_intersection(ideal(x), ideal(y)) == ideal(x * y)
    assert ideal_intersection(ideal(x), ideal(x)) == ideal(x)
    assert ideal_intersection(ideal(x ** 2, y), ideal(x)) == ideal(x ** 2, x * y)


def test_colons():
    assert ideal_colon(ideal(x ** 2, y ** 2), ideal(x, y)) == ideal(x ** 2, x * y, y ** 2)
    A = ideal(x ** 2, x * y + y ** 3)
    assert ideal_colon(A, ideal(R.one())) == A
    assert ideal_contains(ideal_colon(A, ideal(x)), A)


def test_saturations():
    # (x^2 y, x y^2) : (xy) = (x, y), and one more step reaches the unit ideal
    A = ideal(x ** 2 * y, x * y ** 2)
    assert colon_element(A, x * y) == ideal(x, y)
    assert ideal_saturation(A, ideal(x * y)).is_unit()
    assert ideal_saturation(A, ideal(R.one())) == A
    assert ideal_saturation(ideal(x ** 2), ideal(x)).is_unit()
    B = ideal(x ** 2 * y, y ** 3)
    sat = ideal_saturation(B, ideal(x, y))
    assert ideal_saturation(sat, ideal(x, y)) == sat


def test_elimination():
    assert eliminate(Ideal(T, [t * X - 1]), [t]).is_zero()
    assert eliminate(Ideal(T, [t - X, t - Y]), [t]) == Ideal(T, [X - Y])
    assert eliminate(Ideal(T, [t * X, t * Y, t - Z]), [t]) == Ideal(T, [Z * X, Z * Y])


def test_radicals():
    assert radical_membership(x + y, ideal((x + y) ** 3))
    assert radical_equal(ideal(x ** 2, y), ideal(x, y ** 3))
    J = ideal_colon(ideal(x ** 2, y ** 2), ideal(x, y))
    assert radical_equal(ideal(x ** 2, y ** 2, x * y), J)
    assert radical_contains(ideal(x), ideal(x ** 5))
    assert not radical_membership(y, ideal(x ** 2))


def test_quotient_ring_lifts():
    S = PolyRing(("x", "y", "z"))
    Q = [S("x*y")]
    A = Ideal(S, [S("x")], Q)
    # (x) : (y) over S/(xy) is computed on the lift (x, xy) : (y) = (x)
    C = ideal_colon(A, Ideal(S, [S("y")], Q))
    lifted = ideal_colon(Ideal(S, [S("x"), S("x*y")]), Ideal(S, [S("y")]))
    assert C.lift() == lifted + Ideal(S, Q)


def test_lift_coefficients():
    f = [x, y]
    c = lift_coefficients(x ** 2 + x * y + y ** 3, f)
    assert c[0] * x + c[1] * y == x ** 2 + x * y + y ** 3
    assert lift_coefficients(R.one(), f) is None


def test_degree_limit_raises():
    with config.limits(max_degree=2):
        with pytest.raises(ResourceLimitError):
            compute_basis(R, [x ** 2 + y ** 2, x * y ** 2])


@given(st.data())
def test_normal_form_is_linear_and_idempotent(data):
    S = PolyRing(("x", "y", "z"), 32003)
    G = Ideal(S, [data.draw(polys(S, 3, 2)) for _ in range(2)]).groebner_basis()
    p, q = data.draw(polys(S)), data.draw(polys(S))
    nf = lambda f: normal_form(f, G)
    assert nf(p + q) == nf(nf(p) + nf(q))
    assert nf(nf(p)) == nf(p)


@given(st.data())
def test_membership_matches_oracle(data):
    S = PolyRing(("x", "y", "z"), data.draw(st.sampled_from([0, 7, 32003])))
    gens = [data.draw(homogeneous_polys(S, data.draw(st.integers(1, 3)))) for _ in range(data.draw(st.integers(1, 3)))]
    d = data.draw(st.integers(1, 5))
    I = Ideal(S, gens)
    # combinations of generator multiples are members; random forms usually are not
    p = data.draw(homogeneous_polys(S, d))
    assert ideal_membership(p, I) == oracle_membership(p, gens, 6)


@given(st.data())
def test_colon_contains_and_saturation_stable(data):
    S = PolyRing(("x", "y", "z"), 32003)
    A = Ideal(S, [data.draw(homogeneous_polys(S, 2, 2)) for _ in range(2)])
    B = Ideal(S, [data.draw(homogeneous_polys(S, 1, 2))])
    assert ideal_contains(ideal_colon(A, B), A)
    sat = ideal_saturation(A, B)
    assert ideal_saturation(sat, B) == sat
