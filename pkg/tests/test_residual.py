import math

import pytest

from resint.errors import HypothesisError
from resint.groebner import Ideal, ideal_contains
from resint.invariants import multiplicity
from resint.polynomial import PolyRing
from resint.residual import (GradedComplexLayout, ResidualInput, classify_residual, ericci,
                             f_complex_layout, fitting_of_quotient, free_approach_certificate,
                             g_condition, general_elements, hilbert_identity_check, kitt_chain,
                             r_min_generated, regularity_bound_check, residual_colon, tau)

R2 = PolyRing(("x", "y"))
x, y = R2.gens()


@pytest.fixture(scope="module")
def linkage():
    return ResidualInput.explicit(R2, [x, y], [x ** 2, y ** 2])


def test_linkage_colon(linkage):
    col = residual_colon(linkage)
    assert col.proper and col.height == 2 and col.is_residual
    assert col.J == Ideal(R2, [x ** 2, x * y, y ** 2])
    assert col.flag() is None


def test_linkage_classification(linkage):
    c = classify_residual(linkage)
    # I + J and Fitt_1(I/a) + I + J both equal (x, y), of height s
    assert c.kind == "algebraic"
    assert c.height_I_plus_J == 2 and c.height_arith == 2


def test_linkage_kitt(linkage):
    ch = kitt_chain(linkage)
    assert ch.is_ascending()
    assert ch.level(0) == Ideal(R2, [x * y])
    assert ch.level(1) == fitting_of_quotient(linkage, 0)
    J = residual_colon(linkage).J
    assert ch.kitt == J


def test_linkage_tau(linkage):
    T = tau(linkage)
    assert T.paths_agree
    assert T.tau == Ideal(R2, [x ** 2, x * y, y ** 2])
    assert T.mu == 3 and T.bound == 3 and T.mu_ok


def test_linkage_certificate(linkage):
    cert = free_approach_certificate(linkage)
    assert cert.issued, cert.diagnostics()


def test_certificate_modes():
    R3 = PolyRing(("x", "y", "z"))
    X, Y, Z = R3.gens()
    inp = ResidualInput.explicit(R3, [X, Y], [X * Z + Y ** 2])
    full = free_approach_certificate(inp)
    assert not full.issued and full.diagnostics()[0].startswith("s >= r")
    assert any(c.name == "tau in J" for c in full.checks)
    early = free_approach_certificate(inp, stop_early=True)
    assert not early.issued and [c.name for c in early.checks] == ["remaining checks"]


def test_f_layout_of_linkage():
    lay = f_complex_layout(2, 2, [1, 1], [2, 2])
    assert lay.terms == [[0], [2, 2, 2], [3, 3]]
    assert lay.describe() == ["R", "R(-2)^3", "R(-3)^2"]


def test_f_layout_for_hypersurface():
    # r = s = 1: a = c*f, F is R <- R(-(l - d))
    assert f_complex_layout(1, 1, [2], [5]).terms == [[0], [3]]


def test_f_layout_rejects_bad_shapes():
    with pytest.raises(ValueError):
        f_complex_layout(2, 2, [1], [2, 2])


def test_hilbert_identity(linkage):
    T = tau(linkage).tau
    assert hilbert_identity_check(f_complex_layout(2, 2, [1, 1], [2, 2]), T, 20)
    bad = GradedComplexLayout([[0], [2, 2, 2], [3, 4]])
    res = hilbert_identity_check(bad, T, 20)
    assert not res and res.first_failure is not None


def test_regularity_bound(linkage):
    rb = regularity_bound_check(linkage)
    assert rb.lhs == 1 and rb.rhs == 1 and rb.holds


def test_ericci_of_link_of_two_lines():
    R3 = PolyRing(("x", "y", "z"))
    res = ericci(R3, [1, 1], [2, 2])
    assert res.value == 3 and res.generic == 3


def test_a_equal_to_i_is_flagged():
    inp = ResidualInput.explicit(R2, [x, y], [x, y])
    col = residual_colon(inp)
    assert not col.proper and "unit" in col.flag()


def test_small_s_gives_tau_equal_to_a():
    R3 = PolyRing(("x", "y", "z"))
    X, Y, Z = R3.gens()
    inp = ResidualInput.explicit(R3, [X, Y], [X * Z + Y ** 2])
    assert not kitt_chain(inp).level(0).gens
    assert tau(inp).tau == inp.A


def test_general_elements_are_seeded():
    f = [x, y]
    a1, P1 = general_elements(R2, f, 2, 2, seed=5)
    a2, P2 = general_elements(R2, f, 2, 2, seed=5)
    assert a1 == a2 and P1 == P2
    a3, _ = general_elements(R2, f, 2, 2, seed=6)
    assert a3 != a1
    with pytest.raises(ValueError):
        general_elements(PolyRing(("x", "y")), [x ** 2, y ** 2], 1, 1, seed=0)


def test_g_condition():
    R3 = PolyRing(("x", "y", "z"))
    X, Y, Z = R3.gens()
    assert g_condition(R3, [X, Y], 3)
    # cone over the twisted cubic: the maximal ideal is generated by 4 elements locally
    # at the height 2 vertex-free primes, which breaks G_3
    S = PolyRing(tuple("abcd"), 32003)
    a, b, c, d = S.gens()
    Q = [a * c - b * b, b * d - c * c, a * d - b * c]
    assert not g_condition(S, [a, b, c, d], 3, quotient=Q)


def test_r_min():
    R3 = PolyRing(("x", "y", "z"))
    X, Y, Z = R3.gens()
    assert r_min_generated(R3, [X, Y], 1)
    assert r_min_generated(R3, [X, Y, Z], 2)


def test_r_min_rejects_redundant_generators():
    with pytest.raises(HypothesisError):
        r_min_generated(R2, [x, y, x + y], 1)


def test_link_multiplicity_matches_ericci():
    R3 = PolyRing(("x", "y", "z"))
    X, Y, Z = R3.gens()
    inp = ResidualInput.explicit(R3, [X, Y], [X ** 2 + Y * Z, Y ** 2 - X * Z])
    J = residual_colon(inp).J
    assert multiplicity(J) == ericci(R3, [1, 1], [2, 2]).value
