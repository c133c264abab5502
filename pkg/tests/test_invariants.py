import math

from hypothesis import given, strategies as st

from resint.groebner import Ideal
from resint.invariants import (HilbertSeries, depth_is_zero, depth_regularity, ext_dimensions,
                               grade_of, height, hilbert_function, hilbert_series, invariant_report,
                               is_cohen_macaulay, krull_dim, monomial_numerator, multiplicity,
                               serre_condition, unmixed_check)
from resint.modules import GradedFreeModule, SubquotientModule, minimal_free_resolution
from resint.oracle import oracle_hilbert
from resint.polynomial import PolyRing
from strategies import homogeneous_polys

R = PolyRing(("x", "y"))
x, y = R.gens()


def test_polynomial_ring_series():
    hs = hilbert_series(R)
    assert hs.num == {0: 1} and hs.dimension() == 2 and hs.multiplicity() == 1


def test_hilbert_function_of_embedded_ideal():
    I = Ideal(R, [x ** 2, x * y])
    assert [hilbert_function(I, n) for n in range(5)] == [1, 2, 1, 1, 1]


def test_hypersurface_series():
    P = PolyRing(tuple(f"x{i}" for i in range(6)))
    A = Ideal(P, [], [P("x0^2 + x1^2")])
    hs = hilbert_series(A)
    h, d = hs.reduced()
    assert h == {0: 1, 1: 1} and d == 5
    assert krull_dim(A) == 5 and multiplicity(A) == 2
    assert height(Ideal(P, [P("x0"), P("x1"), P("x2 + x3 + x4 + x5")], [P("x0^2 + x1^2")])) == 2


def test_field_and_height_conventions():
    k = Ideal(R, [x, y])
    assert krull_dim(k) == 0 and multiplicity(k) == 1
    S = PolyRing(("x", "y"))
    assert height(Ideal(S, [S("x")])) == 1
    assert height(Ideal(S, [S.one()])) == math.inf


def test_depth_pd_regularity():
    dd = depth_regularity(Ideal(R, [x ** 2, x * y, y ** 2]))
    assert (dd.depth, dd.pd, dd.regularity) == (0, 2, 1)
    F = SubquotientModule(GradedFreeModule(R, (0, 3)), [(R.one(), R.zero()), (R.zero(), R.one())])
    dd = depth_regularity(F)
    assert dd.depth == 2 and dd.regularity == 3


def test_depth_zero_detection():
    assert depth_is_zero(Ideal(R, [x ** 2, x * y]))
    assert not depth_is_zero(Ideal(R, [x]))


def test_grades():
    S = PolyRing(("x", "y", "z"))
    assert grade_of(Ideal(S, [S("x"), S("y")])) == 2
    assert grade_of(Ideal(S, [S("x*y"), S("x*z")])) == 1
    assert grade_of(Ideal(S, [S("x^2")])) == 1


def test_serre_and_unmixed():
    assert not unmixed_check(Ideal(R, [x ** 2, x * y]))
    assert unmixed_check(Ideal(R, [x ** 2]))
    S = PolyRing(("x", "y", "z"))
    ci = Ideal(S, [S("x*y"), S("z^2")])
    exts = ext_dimensions(ci)
    assert is_cohen_macaulay(ci, exts)
    assert all(serre_condition(ci, k, exts) for k in range(5))
    # two planes meeting in a point: S_1 but not S_2
    P = PolyRing(("a", "b", "c", "d"))
    two_planes = Ideal(P, [P("a*c"), P("a*d"), P("b*c"), P("b*d")])
    assert serre_condition(two_planes, 1) and not serre_condition(two_planes, 2)
    assert not is_cohen_macaulay(two_planes)


def test_invariant_report_fields():
    rep = invariant_report(Ideal(R, [x ** 2, x * y, y ** 2]))
    d = rep.as_dict()
    assert d["dim"] == 0 and d["multiplicity"] == 3 and d["depth"] == 0
    assert set(d["methods"]) >= {"dim", "depth", "pd"}


def test_series_arithmetic():
    a = HilbertSeries.make({0: 1}, (1, 1))
    assert (a - a).is_zero()
    assert a.shift(2).coefficients(3) == [0, 0, 1, 2]


def test_monomial_numerator_coprime_base_case():
    # (x^2, y^3) complete intersection: (1 - z^2)(1 - z^3)
    assert monomial_numerator([(2, 0), (0, 3)], (1, 1)) == {0: 1, 2: -1, 3: -1, 5: 1}


@given(st.data())
def test_hilbert_function_matches_oracle(data):
    S = PolyRing(("x", "y", "z"), data.draw(st.sampled_from([0, 32003])))
    gens = [data.draw(homogeneous_polys(S, data.draw(st.integers(1, 3)), 3))
            for _ in range(data.draw(st.integers(1, 3)))]
    I = Ideal(S, gens)
    assert hilbert_series(I).coefficients(7) == oracle_hilbert(gens, 7)


@given(st.data())
def test_multiplicity_equals_that_of_initial_ideal(data):
    S = PolyRing(("x", "y", "z"), 32003)
    gens = [data.draw(homogeneous_polys(S, 2, 3)) for _ in range(2)]
    I = Ideal(S, gens)
    lead = Ideal(S, [S.monomial(m) for m in I.groebner_basis().leading_monomials()])
    assert multiplicity(I) == multiplicity(lead) and krull_dim(I) == krull_dim(lead)


@given(st.data())
def test_auslander_buchsbaum_consistency(data):
    S = PolyRing(("x", "y", "z"), 32003)
    gens = [data.draw(homogeneous_polys(S, data.draw(st.integers(1, 2)), 3)) for _ in range(2)]
    I = Ideal(S, gens)
    res = minimal_free_resolution(I)
    dd = depth_regularity(I, res)
    assert dd.depth + dd.pd == 3
    assert dd.depth <= krull_dim(I)
    assert height(I) + krull_dim(I) == 3
