import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torific.abelian import Lattice, dot
from torific.corpus import random_facet_pair, random_sharp_monoid
from torific.errors import NotAFace, NotAFacet, NotMember, NotSharp
from torific.monoid import (
    ToricMonoid,
    facet_split,
    facet_split_criteria,
    faces,
    is_inner,
    localize,
    monoids_equal,
    prime_height,
    rank,
    saturate,
    sharpen,
    splits_off,
)

N2 = ToricMonoid.orthant(2)
A1 = ToricMonoid.from_generators(2, [(2, 0), (1, 1), (0, 2)], saturated=True)
seeds = st.integers(0, 10**6)


def face_with(m, gens):
    """The face of m whose generators are exactly ``gens``."""
    target = set(gens)
    for f in faces(m):
        if set(f.generators) == target:
            return f
    raise AssertionError(f"no face with generators {gens}")


# --- examples ----------------------------------------------------------------


def test_rank_examples():
    assert rank(N2) == 2
    assert rank(A1) == 2
    assert rank(ToricMonoid.trivial(2)) == 0


def test_a1_generators_are_saturated():
    assert saturate(ToricMonoid.from_generators(2, [(2, 0), (1, 1), (0, 2)])).generators == A1.generators


def test_faces_examples():
    assert len(faces(N2)) == 4
    gens = {tuple(sorted(f.generators)) for f in faces(A1)}
    assert gens == {(), ((2, 0),), ((0, 2),), ((0, 2), (1, 1), (2, 0))}
    assert [f.rank for f in faces(ToricMonoid.orthant(1))] == [0, 1]


def test_faces_require_sharp():
    with pytest.raises(NotSharp):
        faces(ToricMonoid.from_generators(2, [(1, 0), (-1, 0), (0, 1)], saturated=True))


def test_prime_height_examples():
    assert prime_height(N2, face_with(N2, [(1, 0)])) == 1
    assert prime_height(N2, face_with(N2, [])) == 2
    assert prime_height(A1, face_with(A1, [(2, 0)])) == 1
    with pytest.raises(NotAFace):
        prime_height(A1, [1])


def test_is_inner_examples():
    assert is_inner(N2, (1, 1))
    assert not is_inner(N2, (1, 0))
    assert is_inner(A1, (1, 1))
    with pytest.raises(NotMember):
        is_inner(N2, (-1, 0))


def test_sharpen_examples():
    nz = ToricMonoid.from_generators(2, [(1, 0), (0, 1), (0, -1)], saturated=True)
    q, proj = sharpen(nz)
    assert q == ToricMonoid.orthant(1)
    assert proj.project((3, 5)) == (3,)
    assert sharpen(N2)[0] == N2
    m = ToricMonoid.from_generators(2, [(1, 0), (-1, 0), (0, 1)], saturated=True)
    q, proj = sharpen(m)
    assert q == ToricMonoid.orthant(1)
    assert proj.project((7, 2)) == (2,)


def test_localize_examples():
    loc = localize(N2, face_with(N2, [(1, 0)]))
    assert loc == ToricMonoid.from_generators(2, [(1, 0), (-1, 0), (0, 1)], saturated=True)
    assert localize(A1, face_with(A1, [])) == A1
    whole = localize(A1, face_with(A1, A1.generators))
    assert whole.unit_lattice == A1.group


def test_saturate_examples():
    assert saturate(ToricMonoid.from_generators(1, [(2,), (3,)])) == ToricMonoid.orthant(1)
    assert saturate(N2) == N2
    m = ToricMonoid.from_generators(2, [(2, 0), (1, 1)])
    assert set(saturate(m).generators) == {(2, 0), (1, 1)}


def test_splits_off_examples():
    r = splits_off(N2, face_with(N2, [(1, 0)]))
    assert r.splits and r.complement.generators == ((0, 1),)
    assert not splits_off(A1, face_with(A1, [(2, 0)])).splits
    r = splits_off(A1, face_with(A1, []))
    assert r.splits and set(r.complement.generators) == set(A1.generators)


def test_facet_split_examples():
    r = facet_split(N2, face_with(N2, [(1, 0)]))
    assert r.criteria == (True,) * 5 and r.generator == (0, 1)
    r = facet_split(A1, face_with(A1, [(2, 0)]))
    assert r.criteria == (False,) * 5 and r.generator is None
    n3 = ToricMonoid.orthant(3)
    r = facet_split(n3, face_with(n3, [(1, 0, 0), (0, 1, 0)]))
    assert r.splits and r.generator == (0, 0, 1)
    with pytest.raises(NotAFacet):
        facet_split(n3, face_with(n3, [(1, 0, 0)]))


def test_monoids_equal_examples():
    assert monoids_equal(N2, ToricMonoid.from_generators(2, [(1, 0), (0, 1), (1, 1)]))
    assert not monoids_equal(ToricMonoid.from_generators(1, [(2,), (3,)]), ToricMonoid.orthant(1))
    assert monoids_equal(A1, saturate(A1))


# --- properties --------------------------------------------------------------


@given(seeds)
def test_face_lattice_closed_under_intersection(seed):
    m = random_sharp_monoid(random.Random(seed))
    fs = faces(m)
    subsets = {f.generator_subset for f in fs}
    for a, b in itertools.combinations(fs, 2):
        assert a.generator_subset & b.generator_subset in subsets


@given(seeds)
def test_face_complement_is_ideal(seed):
    m = random_sharp_monoid(random.Random(seed))
    for f in faces(m):
        n = f.supporting_normal
        assert all(dot(n, g) >= 0 for g in m.generators)
        outside = [g for g in m.generators if dot(n, g) > 0]
        for x, g in itertools.product(outside, m.generators):
            assert not f.contains(tuple(a + b for a, b in zip(x, g)))


@given(seeds)
def test_facet_criteria_agree(seed):
    m, f = random_facet_pair(random.Random(seed))
    criteria, generator = facet_split_criteria(m, f)
    assert len(set(criteria)) == 1
    assert (generator is not None) == criteria[0]


@given(seeds)
def test_split_criteria_agree_on_every_face(seed):
    m = random_sharp_monoid(random.Random(seed), max_rank=3)
    for f in faces(m):
        r = splits_off(m, f)
        if r.splits:
            k = r.complement
            assert rank(m) == f.rank + k.rank
            assert Lattice.span(f.generators + k.generators, m.ambient_rank) == m.group


@given(seeds)
def test_saturate_idempotent_and_larger(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    gens = [tuple(rng.randint(0, 3) for _ in range(d)) for _ in range(rng.randint(1, 4))]
    if not any(any(g) for g in gens):
        return
    m = ToricMonoid.from_generators(d, gens)
    s = saturate(m)
    assert saturate(s) == s
    assert all(s.contains(g) for g in m.generators)


@given(seeds)
def test_localization_of_saturated_is_saturated(seed):
    m = random_sharp_monoid(random.Random(seed))
    for f in faces(m):
        loc = localize(m, f)
        assert loc == saturate(ToricMonoid.from_generators(m.ambient_rank, loc.generators))
        assert all(loc.contains(tuple(-x for x in g)) for g in f.generators)


@given(seeds)
def test_sharpen_plus_units_reconstructs(seed):
    m = random_sharp_monoid(random.Random(seed))
    f = random.Random(seed).choice(faces(m))
    loc = localize(m, f)
    q, proj = sharpen(loc)
    assert q.is_sharp()
    assert q.rank + loc.unit_lattice.rank == loc.rank
    # lifted quotient generators together with the units generate the monoid
    lifted = [proj.lift(g) for g in q.generators]
    units = [u for b in loc.unit_lattice.basis for u in (b, tuple(-x for x in b))]
    rebuilt = ToricMonoid.from_generators(loc.ambient_rank, lifted + units)
    assert saturate(rebuilt) == loc
    assert all(loc.contains(v) for v in lifted)
    assert all(q.contains(proj.project(g)) for g in loc.generators)


def test_face_normals_cut_out_faces():
    for m in (N2, A1, ToricMonoid.orthant(3)):
        for f in faces(m):
            inside = {g for g in m.generators if dot(f.supporting_normal, g) == 0}
            assert inside == set(f.generators)
