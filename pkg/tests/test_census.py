import pytest

from sqft.census import (
    boundary_hugging_system, catalan, disc_complex, enumerate_basic,
    enumerate_disc_sutures, matching_system, noncrossing_matchings,
    random_surface, random_sutures,
)
from sqft.engine import compile_script, suture_element
from sqft.regions import (
    confining_oracle, euler_class, is_confining, is_trivial,
)
from sqft.surface import invariants, validate_complex
from sqft.sutures import bypass_triples, normalize, validate_sutures


def test_disc_family_invariants():
    for n in range(2, 8):
        inv = invariants(disc_complex(n))
        assert (inv.index, inv.gluing_number) == (n - 1, n - 2)
        assert (inv.boundary_components, inv.chi, inv.n) == (1, 1, n)


def test_catalan_oracle():
    assert [catalan(k) for k in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_noncrossing_matching_counts():
    for n in range(1, 7):
        assert sum(1 for _ in noncrossing_matchings(2 * n)) == catalan(n)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_census_classes(n):
    c = disc_complex(n)
    systems = enumerate_disc_sutures(n)
    assert len(systems) == catalan(n)
    assert len(set(systems)) == catalan(n)
    for s in systems:
        assert validate_sutures(c, s).ok
        assert normalize(c, s) == s
        assert not is_trivial(c, s)
        assert is_confining(c, s) == confining_oracle(c, s) == False


def test_census_out_of_range():
    with pytest.raises(ValueError):
        enumerate_disc_sutures(8)


def test_enumerate_basic(square, hexagon, punctured_torus):
    for c, count in ((square, 2), (hexagon, 4), (punctured_torus, 4)):
        systems = enumerate_basic(c)
        assert len(systems) == count
        elements = {suture_element(c, s).words for s in systems}
        assert elements == {frozenset({w}) for w in range(count)}


def test_random_surface_reproducible():
    a = random_surface(7, 5)
    b = random_surface(7, 5)
    assert a == b
    c1 = compile_script(a).target
    assert validate_complex(c1).ok
    assert not c1.internal_vertices()
    assert invariants(c1).components <= 1


def test_random_sutures_valid_and_nontrivial():
    for seed in range(12):
        c = compile_script(random_surface(seed, 5)).target
        if c.square_count == 0:
            continue
        g = random_sutures(seed, c)
        assert validate_sutures(c, g).ok
        assert not is_trivial(c, g)
        assert g == random_sutures(seed, c)


def test_bypass_triples_empty_on_basic(hexagon):
    from sqft.sutures import basic_system
    assert bypass_triples(hexagon, basic_system(hexagon, 0b01)) == []


def test_bypass_triples_counting(hexagon, hexagon_superposition):
    trips = bypass_triples(hexagon, hexagon_superposition)
    assert trips == [(((0, 0), (1, 1)), 0)]


def test_route_representative_matches_elements():
    # the two extreme matchings of the square are its basic sutures
    c = disc_complex(2)
    matchings = list(noncrossing_matchings(4))
    elements = {suture_element(c, matching_system(2, m)).word_strings()[0]
                for m in matchings}
    assert elements == {"0", "1"}


def test_hugging_system_extremal(annulus, punctured_torus):
    for c in (annulus, punctured_torus):
        inv = invariants(c)
        g = boundary_hugging_system(c, +1)
        assert validate_sutures(c, g).ok
        assert euler_class(c, g) == inv.index
        assert not is_confining(c, g)
        gneg = boundary_hugging_system(c, -1)
        assert euler_class(c, gneg) == -inv.index
