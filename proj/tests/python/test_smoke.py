import math

import pytest

import pythreg


def test_multfunc_basics():
    lam = pythreg.MultFunc("liouville")
    assert lam(12) == -1
    assert lam.at_prime(7) == -1
    assert pythreg.MultFunc("modchar 5 2")(5) == 1
    assert "liouville" in lam.describe()


def test_distance_value():
    r = pythreg.distance(pythreg.MultFunc("liouville"), pythreg.MultFunc("one"), 1, 30)
    assert r["d_squared"] == pytest.approx(3.0668775437440634, rel=1e-14)


def test_concentration_is_exact():
    chi = pythreg.MultFunc("char 5 2")
    f = pythreg.modify_character(chi)
    assert pythreg.linear_concentration(f, chi, 0.0, 5, 30, 200)["lhs"] == 0.0
    assert pythreg.quadratic_concentration(f, chi, 0.0, 5, 30, 1, 0, 60)["lhs"] == 0.0


def test_counting_and_folner():
    assert pythreg.w_pair_closed_form(5, 5) == pytest.approx(0.256)
    assert 0.0 <= pythreg.w_pair(200, 7, 1, 0, 5, 13) <= 1.0
    assert pythreg.folner_average(pythreg.MultFunc("liouville"), 5).real == pytest.approx(0.008)


def test_triples_and_pairs():
    hits = pythreg.search_triples(pythreg.MultFunc("modchar 5 2"), 50)
    assert (16, 30, 34) in [tuple(h) for h in hits]
    assert pythreg.parametric_triple(1, 2, 1) == (3, 4, 5)


def test_pair_average_mass():
    r = pythreg.pair_average(pythreg.MultFunc("one"), 7, 1, 2, 0.1, 200)
    assert r["value"]["re"] == pytest.approx(r["weight_mass"], rel=1e-12)


def test_errors_map_to_python_exceptions():
    with pytest.raises(pythreg.InvalidArgument):
        pythreg.MultFunc("bogus")
    with pytest.raises(ValueError):
        pythreg.factorize(0)
    with pytest.raises(pythreg.ResourceLimit):
        pythreg.folner_set(100)
    assert issubclass(pythreg.Unsupported, pythreg.InvalidArgument)


def test_factorize_and_r2():
    assert pythreg.factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert pythreg.r2(25) == 12
    assert math.isclose(pythreg.weight_density(1, 2, 0.1, "hyperbolic", 200), pythreg.weight_density(1, 2, 0.1, "hyperbolic", 200))
