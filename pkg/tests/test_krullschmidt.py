import numpy as np
import pytest
from _util import iso, same_multiset

from ausgen import exactla as la
from ausgen.algfile import parse_algebra
from ausgen.krullschmidt import (
    assemble,
    decompose,
    fingerprint,
    find_isomorphism,
    in_add,
    is_indecomposable,
    radical_of_local_endo,
)
from ausgen.repmod import Rep, RepError, direct_sum, hom, projective, simple, tau, tau_inverse

KRONECKER = """\
vertices: 1, 2
arrows:
  a: 1 -> 2
  b: 1 -> 2
bound: 2
"""

# Irreducible quadratics x^2 + c1 x + c0 over F_p, as companion matrices.
COMPANION = {2: [[0, 1], [1, 1]], 3: [[0, 2], [1, 0]], 5: [[0, 3], [1, 0]]}


def conjugate(x: Rep, rng) -> Rep:
    """``x`` transported along random invertible base changes at every vertex."""
    p = x.p
    gs = []
    for d in x.dims:
        while True:
            g = rng.integers(0, p, size=(d, d))
            if d == 0 or la.is_invertible(g, p):
                gs.append(g)
                break
    mats = []
    for m, a in zip(x.mats, x.pres.arrows):
        gi = la.inverse(gs[a.source], p) if x.dims[a.source] else gs[a.source]
        mats.append(la.mul(la.mul(gs[a.target], m, p), gi, p) if m.size else m)
    return Rep(x.pres, x.dims, mats)


def indecomposables(pres):
    s1, s2 = simple(pres, 0), simple(pres, 1)
    return [s1, s2, tau_inverse(s1), tau(s2), projective(pres, 0)]


def test_sums_of_known_indecomposables(ex1, rng):
    ind = indecomposables(ex1)
    total, _, _ = direct_sum(ind + ind[:2])
    x = conjugate(total, rng)
    dec = decompose(x)
    assert dec.confirmed
    assert same_multiset([part.rep for part in dec.parts], ind + ind[:2])
    assert sorted(m for _, m in dec.multiplicities()) == [1, 1, 1, 2, 2]


def test_assemble_reconstructs(ex1):
    total, _, _ = direct_sum(indecomposables(ex1))
    dec = decompose(total)
    rebuilt, phi = assemble(dec)
    assert phi.is_iso()


def test_isomorphism_under_base_change(ex1, rng):
    for x in indecomposables(ex1):
        y = conjugate(x, rng)
        f = find_isomorphism(x, y)
        assert f is not None and f.is_iso()
        f.check()


def test_same_fingerprint_not_isomorphic(ex1):
    a, b = tau(simple(ex1, 0)), tau_inverse(simple(ex1, 0))
    assert a.dims == b.dims
    assert find_isomorphism(a, b) is None


def test_fingerprint_is_invariant(ex1, rng):
    x = tau_inverse(simple(ex1, 1))
    assert fingerprint(x) == fingerprint(conjugate(x, rng))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_endomorphism_field_extension(p):
    pres = parse_algebra(KRONECKER, p=p)
    x = Rep(pres, (2, 2), [np.eye(2, dtype=np.int64), np.array(COMPANION[p])])
    assert len(hom(x, x)) == 2  # End = F_{p^2}
    dec = decompose(x)
    assert len(dec.parts) == 1 and dec.confirmed
    assert radical_of_local_endo(x) == []
    two, _, _ = direct_sum([x, x])
    dec2 = decompose(two)
    assert len(dec2.parts) == 2 and dec2.multiplicities()[0][1] == 2


@pytest.mark.parametrize("p", [2, 3])
def test_split_kronecker_module_decomposes(p):
    pres = parse_algebra(KRONECKER, p=p)
    x = Rep(pres, (2, 2), [np.eye(2, dtype=np.int64), np.diag([0, 1])])
    assert not is_indecomposable(x)
    assert sorted(part.rep.dims for part in decompose(x).parts) == [(1, 1), (1, 1)]


def test_radical_is_nilpotent(ex1):
    for x in indecomposables(ex1):
        rad = radical_of_local_endo(x)
        assert len(rad) == len(hom(x, x)) - 1
        for f in rad:
            assert not f.is_iso()
            assert f.power(x.dim).is_zero()


def test_in_add(ex1):
    ind = indecomposables(ex1)
    total, _, _ = direct_sum([ind[2], ind[2], ind[0]])
    assert in_add(total, ind) == [1, 0, 2, 0, 0]
    assert in_add(total, ind[1:]) is None


def test_radical_needs_indecomposable(ex1):
    total, _, _ = direct_sum([simple(ex1, 0), simple(ex1, 1)])
    with pytest.raises(RepError):
        radical_of_local_endo(total)
