import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import box_points, minimal_elements
from torific.corpus import random_spec
from torific.errors import DimensionMismatch, NotPointed
from torific.hilbert import (
    ConstrainedMonoidSpec,
    hilbert_basis,
    hilbert_basis_by_completion,
    is_member,
    module_generators,
)


def boxed_basis(spec, bound):
    pts = box_points(spec.ambient_rank, bound, spec.inequalities, spec.equations, spec.congruences)
    return minimal_elements(pts)


def reachable(gens, d, bound):
    """N-combinations of nonnegative ``gens`` inside the box ``[0, bound]^d``."""
    reach = {(0,) * d}
    frontier = list(reach)
    while frontier:
        nxt = []
        for v in frontier:
            for h in gens:
                w = tuple(a + b for a, b in zip(v, h))
                if max(w) <= bound and w not in reach:
                    reach.add(w)
                    nxt.append(w)
        frontier = nxt
    return reach


def oracle_bound(basis):
    return 3 * max([max(v) for v in basis] + [1])


# --- examples ----------------------------------------------------------------


def test_cone_between_two_rays():
    spec = ConstrainedMonoidSpec(2, ((0, 1), (2, -1)))
    assert list(hilbert_basis(spec)) == [(1, 0), (1, 1), (1, 2)]
    assert boxed_basis(spec, 4) == [(1, 0), (1, 1), (1, 2)]


def test_orthant():
    assert list(hilbert_basis(ConstrainedMonoidSpec.orthant(2))) == [(0, 1), (1, 0)]


def test_even_sum_congruence():
    spec = ConstrainedMonoidSpec.orthant(2, congruences=(((1, 1), 2),))
    assert set(hilbert_basis(spec)) == {(2, 0), (1, 1), (0, 2)}
    assert boxed_basis(spec, 4) == [(0, 2), (1, 1), (2, 0)]


def test_line_is_rejected():
    with pytest.raises(NotPointed):
        hilbert_basis(ConstrainedMonoidSpec(2, ((1, 0),)))


def test_is_member_examples():
    even = ConstrainedMonoidSpec.orthant(2, congruences=(((1, 1), 2),))
    assert is_member(even, (1, 1))
    assert not is_member(even, (1, 0))
    assert not is_member(ConstrainedMonoidSpec.orthant(2), (-1, 1))
    with pytest.raises(DimensionMismatch):
        is_member(even, (1, 1, 1))


def test_module_generators_examples():
    n2 = ConstrainedMonoidSpec.orthant(2)
    assert module_generators(n2, (1, -1), 1) == [(1, 0)]
    assert module_generators(n2, (1, -1), 0) == [(1, 1)]
    assert module_generators(ConstrainedMonoidSpec.orthant(1), (1,), -1) == []


# --- oracle and second route -------------------------------------------------

seeds = st.integers(0, 10**6)


@given(seeds)
def test_matches_box_oracle(seed):
    spec = random_spec(random.Random(seed))
    basis = list(hilbert_basis(spec))
    assert boxed_basis(spec, oracle_bound(basis)) == sorted(basis)


@given(seeds)
def test_matches_completion_route(seed):
    spec = random_spec(random.Random(seed), max_rank=2)
    assert hilbert_basis(spec) == hilbert_basis_by_completion(spec)


@given(seeds)
def test_irreducible_and_generating(seed):
    spec = random_spec(random.Random(seed))
    basis = list(hilbert_basis(spec))
    assert all(is_member(spec, h) for h in basis)
    sums = {tuple(a + b for a, b in zip(x, y)) for x, y in itertools.combinations_with_replacement(basis, 2)}
    assert not sums & set(basis)
    # every solution in a small box is an N-combination of the basis
    bound = 4
    reach = reachable(basis, spec.ambient_rank, bound)
    for p in box_points(spec.ambient_rank, bound, spec.inequalities, spec.equations, spec.congruences):
        assert tuple(int(x) for x in p) in reach


@given(seeds, st.integers(-2, 3).filter(bool))
def test_module_generators_cover_slice(seed, value):
    rng = random.Random(seed)
    spec = random_spec(rng, max_rank=2)
    row = tuple(rng.randint(-2, 2) for _ in range(spec.ambient_rank))
    gens = module_generators(spec, row, value)
    zero_part = list(module_generators(spec, row, 0)) if any(row) else list(hilbert_basis(spec))
    dot = lambda a, b: sum(x * y for x, y in zip(a, b))
    assert all(is_member(spec, g) and dot(row, g) == value for g in gens)
    bound = 6
    reach = reachable(zero_part, spec.ambient_rank, bound)
    for p in box_points(spec.ambient_rank, bound, spec.inequalities, spec.equations, spec.congruences):
        p = tuple(int(x) for x in p)
        if dot(row, p) != value:
            continue
        assert any(tuple(a - b for a, b in zip(p, g)) in reach for g in gens), p
