import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import minimal_in_monoid
from torific.abelian import Cone
from torific.corpus import random_ideal, random_sharp_monoid
from torific.errors import NotMember, NotPrime, NotSaturatedParent, ZeroIdeal
from torific.ideal import (
    blowup_charts,
    blowups_equal,
    ideal_from,
    ideal_height,
    ideal_power,
    ideal_product,
    ideal_saturation,
    is_prime,
    order_subdivision,
    saturated_power,
    saturation_threshold,
    saturation_threshold_by_subdivision,
    saturation_threshold_report,
    unit_ideal,
    zero_ideal,
)
from torific.monoid import ToricMonoid, monoids_equal, saturate

N1 = ToricMonoid.orthant(1)
N2 = ToricMonoid.orthant(2)
N3 = ToricMonoid.orthant(3)
A1 = ToricMonoid.from_generators(2, [(2, 0), (1, 1), (0, 2)], saturated=True)
seeds = st.integers(0, 10**6)


def chart(p, gens, a, n=1):
    return ToricMonoid.from_generators(
        p.ambient_rank, list(p.generators) + [tuple(b - n * x for b, x in zip(g, a)) for g in gens]
    )


# --- examples ----------------------------------------------------------------


def test_ideal_from_examples():
    assert ideal_from(N2, [(1, 0), (2, 0)]).gens == ((1, 0),)
    assert set(ideal_from(N2, [(1, 0), (0, 1), (1, 1)]).gens) == {(1, 0), (0, 1)}
    assert set(ideal_from(A1, [(2, 0), (0, 2), (2, 2)]).gens) == {(2, 0), (0, 2)}
    with pytest.raises(NotMember):
        ideal_from(A1, [(1, 0)])


def test_product_and_power_examples():
    assert ideal_product(ideal_from(N2, [(1, 0)]), ideal_from(N2, [(0, 1)])).gens == ((1, 1),)
    i = ideal_from(A1, [(2, 0), (0, 2)])
    assert ideal_power(i, 0) == unit_ideal(A1)
    assert set(ideal_power(i, 2).gens) == {(4, 0), (2, 2), (0, 4)}


def test_saturation_examples():
    i = ideal_from(A1, [(2, 0), (0, 2)])
    assert set(ideal_saturation(i).gens) == {(2, 0), (1, 1), (0, 2)}
    assert ideal_saturation(ideal_from(N1, [(2,)])).gens == ((2,),)
    assert ideal_saturation(unit_ideal(N2)) == unit_ideal(N2)
    with pytest.raises(NotSaturatedParent):
        ideal_saturation(ideal_from(ToricMonoid.from_generators(1, [(2,), (3,)]), [(2,)]))


def test_prime_examples():
    e1 = ideal_from(N2, [(1, 0)])
    assert is_prime(e1) and ideal_height(e1) == 1
    plus = ideal_from(N2, [(1, 0), (0, 1)])
    assert is_prime(plus) and ideal_height(plus) == 2
    i = ideal_from(A1, [(2, 0), (0, 2)])
    assert not is_prime(i)
    with pytest.raises(NotPrime):
        ideal_height(i)


def test_order_subdivision_examples():
    sub = order_subdivision(ideal_from(N2, [(1, 0), (0, 1)]))
    assert sub.cell_set() == {
        Cone.from_inequalities(2, [(1, 0), (0, 1), (-1, 1)]),
        Cone.from_inequalities(2, [(1, 0), (0, 1), (1, -1)]),
    }
    assert len(order_subdivision(ideal_from(A1, [(1, 1)])).cells) == 1
    cut = order_subdivision(ideal_from(A1, [(2, 0), (0, 2)]))
    assert len(cut.cells) == 2
    for c in cut.cells:
        assert any(v[0] == v[1] for v in c.rays)
    with pytest.raises(ZeroIdeal):
        order_subdivision(zero_ideal(N2))


def test_blowup_chart_examples():
    charts = blowup_charts(N2, ideal_from(N2, [(1, 0), (0, 1)]))
    got = {c.generator: set(c.monoid.generators) for c in charts}
    assert got == {(1, 0): {(1, 0), (-1, 1)}, (0, 1): {(0, 1), (1, -1)}}
    assert [c.monoid for c in blowup_charts(A1, ideal_from(A1, [(1, 1)]))] == [A1]
    at = {c.generator: c.monoid for c in blowup_charts(A1, ideal_from(A1, [(2, 0), (0, 2)]))}
    expected = saturate(ToricMonoid.from_generators(2, [(2, 0), (1, 1), (-1, 1)]))
    assert monoids_equal(at[(2, 0)], expected)
    with pytest.raises(ZeroIdeal):
        blowup_charts(N2, zero_ideal(N2))


def test_blowups_equal_examples():
    i = ideal_from(N2, [(1, 0), (0, 1)])
    assert blowups_equal(N2, i, ideal_power(i, 2))
    assert not blowups_equal(N2, i, unit_ideal(N2))
    assert blowups_equal(N2, i, ideal_saturation(i))


def test_threshold_examples():
    assert saturation_threshold(N1, ideal_from(N1, [(2,)])) == 1
    assert saturation_threshold(N2, ideal_from(N2, [(1, 0), (0, 1)])) == 1
    # oracle: the chart identity holds for every n in 1..8
    assert saturation_threshold(A1, ideal_from(A1, [(2, 0), (0, 2)])) == 1
    report = saturation_threshold_report(A1, ideal_from(A1, [(2, 0), (0, 2)]))
    assert report.certified and report.window_verified == 3
    with pytest.raises(ZeroIdeal):
        saturation_threshold(N2, zero_ideal(N2))


@pytest.mark.parametrize("diag", [(2, 3, 7), (3, 4, 5), (2, 5, 7)])
def test_threshold_above_one(diag):
    i = ideal_from(N3, [tuple(d if k == j else 0 for k in range(3)) for j, d in enumerate(diag)])
    assert saturation_threshold(N3, i) == 2
    assert saturation_threshold_by_subdivision(N3, i) == 2
    # n = 1 fails the identity at some generator, n = 2 passes at all of them
    j1, j2 = saturated_power(i, 1, "slice"), saturated_power(i, 2, "slice")
    targets = [saturate(chart(N3, i.gens, a)) for a in i.gens]
    assert not all(monoids_equal(chart(N3, j1.gens, a), t) for a, t in zip(i.gens, targets))
    assert all(monoids_equal(chart(N3, j2.gens, a, 2), t) for a, t in zip(i.gens, targets))


# --- oracles and properties --------------------------------------------------


def brute_saturation(i, bound, depth=6):
    """Minimal a in the box with n*a in nI for some n <= depth."""
    p = i.parent
    powers = [ideal_power(i, n) for n in range(1, depth + 1)]
    pts = []
    for v in itertools.product(range(-bound, bound + 1), repeat=p.ambient_rank):
        if p.contains(v) and any(j.contains(tuple(n * x for x in v)) for n, j in enumerate(powers, 1)):
            pts.append(v)
    return minimal_in_monoid(pts, p.contains)


@given(seeds)
def test_saturation_matches_brute_force(seed):
    rng = random.Random(seed)
    p = random_sharp_monoid(rng, 2, 1)
    elems = []
    for _ in range(2):
        coeffs = [rng.randint(0, 1) for _ in p.generators]
        elems.append(tuple(sum(c * g[k] for c, g in zip(coeffs, p.generators)) for k in range(p.ambient_rank)))
    if not any(any(e) for e in elems):
        return
    i = ideal_from(p, elems)
    sat = ideal_saturation(i)
    bound = max(abs(x) for g in sat.gens + i.gens for x in g) + 1
    if bound > 8:
        return
    assert brute_saturation(i, bound) == sorted(sat.gens)


@given(seeds)
def test_saturation_monotone_idempotent(seed):
    i = random_ideal(random.Random(seed), 2)
    sat = ideal_saturation(i)
    assert sat.contains_ideal(i)
    assert ideal_saturation(sat).same_ideal(sat)
    for n in (2, 3):
        assert saturated_power(i, n).contains_ideal(ideal_power(sat, n))


@given(seeds)
def test_saturated_power_routes_agree(seed):
    i = random_ideal(random.Random(seed), 3)
    for n in (1, 2):
        assert saturated_power(i, n).gens == saturated_power(i, n, "slice").gens


@given(seeds)
def test_blowup_invariant_under_powers(seed):
    i = random_ideal(random.Random(seed), 3)
    for n in range(2, 5):
        assert blowups_equal(i.parent, i, ideal_power(i, n))


@given(seeds)
def test_subdivision_cells_cover_dual_cone(seed):
    i = random_ideal(random.Random(seed), 2)
    sub = order_subdivision(i)
    d = i.parent.ambient_rank
    for v in itertools.product(range(-3, 4), repeat=d):
        if not sub.support.contains(v):
            continue
        values = [sum(a * b for a, b in zip(g, v)) for g in i.gens]
        best = min(values)
        owners = [k for k, c in enumerate(sub.cells) if c.contains(v)]
        assert owners
        for k in owners:
            assert any(values[j] == best for j in sub.labels[k])


@settings(max_examples=15)
@given(seeds)
def test_threshold_identity_and_routes(seed):
    i = random_ideal(random.Random(seed), 3)
    p = i.parent
    n0 = saturation_threshold(p, i)
    assert saturation_threshold_by_subdivision(p, i) == n0
    targets = [saturate(chart(p, i.gens, a)) for a in i.gens]
    for n in range(n0, n0 + 4):
        j = saturated_power(i, n, "slice")
        assert all(monoids_equal(chart(p, j.gens, a, n), t) for a, t in zip(i.gens, targets))
