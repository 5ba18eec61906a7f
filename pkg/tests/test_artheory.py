import numpy as np
import pytest
from _util import iso, summands

from ausgen import exactla as la
from ausgen import mutation as mu
from ausgen.artheory import almost_split_starting_at, ext1, is_mutable_position, is_split
from ausgen.relhom import stable_hom, window
from ausgen.repmod import RepError, direct_sum, identity, is_projective, projective, simple, tau_inverse


@pytest.fixture
def fixture_modules(ex1):
    return [m for m in window(mu.canonical_M0(ex1).reps, 1) if not is_projective(m)]


def test_almost_split_sequence_at_simple(ex1):
    s1 = simple(ex1, 0)
    ar = almost_split_starting_at(s1)
    assert ar.end.dims == (2, 3) and iso(ar.end, tau_inverse(s1))
    assert sorted(x.dims for x in summands(ar.middle)) == [(1, 2), (2, 1)]
    assert not is_split(ar.ses)
    assert ar.radical_pullbacks_split()


def test_ar_sequences_on_fixtures(ex1, fixture_modules):
    for n in fixture_modules[:8]:
        ar = almost_split_starting_at(n)
        ar.ses.check()  # exactness, hence additivity of dimension vectors
        assert [a + c for a, c in zip(ar.start.dims, ar.end.dims)] == list(ar.middle.dims)
        assert not is_split(ar.ses)
        assert ar.radical_pullbacks_split()
        assert ar.verify_right(fixture_modules[:6])
        assert ar.verify_left(fixture_modules[:6])


def test_ext_dimension_matches_ar_formula(ex1, fixture_modules):
    mods = fixture_modules[:6]
    for c in mods:
        for a in mods:
            assert ext1(c, a).dim == stable_hom(tau_inverse(a), c)[0]


def test_realize_and_class_of_are_inverse(ex1, rng):
    s1 = simple(ex1, 0)
    c = tau_inverse(s1)
    ext = ext1(c, s1)
    assert ext.dim >= 1
    for _ in range(3):
        v = rng.integers(0, ex1.p, size=ext.dim)
        ses = ext.realize(v)
        assert np.array_equal(ext.class_of(ses) % ex1.p, v % ex1.p)
        assert is_split(ses) == (not np.any(v % ex1.p))


def test_module_actions(ex1):
    s1 = simple(ex1, 0)
    c = tau_inverse(s1)
    ext = ext1(c, s1)
    assert np.array_equal(ext.pullback(identity(c)), la.identity(ext.dim))
    assert np.array_equal(ext.pushout(identity(s1)), la.identity(ext.dim))


def test_rejects_projective_and_decomposable(ex1):
    with pytest.raises(RepError):
        almost_split_starting_at(projective(ex1, 0))
    total, _, _ = direct_sum([simple(ex1, 0), simple(ex1, 1)])
    with pytest.raises(RepError):
        almost_split_starting_at(total)


def test_source_positions(ex1):
    m = mu.shift(mu.canonical_M0(ex1), 1)
    reps = m.reps
    assert is_mutable_position(reps[m.index("tau^-1S1")], reps)
    assert not is_mutable_position(reps[m.index("tau^-1(P1/soc)")], reps)
