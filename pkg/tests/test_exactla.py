import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ausgen import exactla as la

primes = st.sampled_from([2, 3, 5])


@st.composite
def small_matrix(draw, max_rows=4, max_cols=4):
    p = draw(primes)
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    m = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return p, m


def span_size(m: np.ndarray, p: int) -> int:
    """Number of distinct vectors in the column span, by enumeration."""
    rows, cols = m.shape
    seen = set()
    for coeffs in itertools.product(range(p), repeat=cols):
        seen.add(tuple(m @ np.array(coeffs, dtype=np.int64) % p) if cols else (0,) * rows)
    return len(seen)


def test_check_prime():
    assert la.check_prime(5) == 5
    for bad in (0, 1, 4, 9, -3):
        with pytest.raises(la.FieldError):
            la.check_prime(bad)


def test_rref_known_example():
    m = la.mat([[1, 2, 1], [2, 4, 0]], 3)
    r, piv = la.rref(m, 3)
    assert piv == [0, 2]
    assert r.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_solve_and_inverse_examples():
    a = la.mat([[1, 1], [0, 1]], 2)
    assert la.solve(a, la.mat([[1], [1]], 2), 2).ravel().tolist() == [0, 1]
    assert la.inverse(a, 2).tolist() == [[1, 1], [0, 1]]
    assert la.inverse(la.mat([[1, 1], [1, 1]], 2), 2) is None
    assert la.solve(la.mat([[1, 1], [1, 1]], 5), la.mat([[1], [2]], 5), 5) is None


@given(small_matrix())
def test_rank_matches_span_count(pm):
    p, m = pm
    assert p ** la.rank(m, p) == span_size(m, p)


@given(small_matrix())
def test_nullspace_is_kernel(pm):
    p, m = pm
    ns = la.nullspace(m, p)
    assert ns.shape == (m.shape[1], m.shape[1] - la.rank(m, p))
    if ns.size and m.size:
        assert not np.any(la.mul(m, ns, p))


@given(small_matrix(), st.data())
def test_solve_reproduces_rhs(pm, data):
    p, m = pm
    x = data.draw(arrays(np.int64, (m.shape[1], 1), elements=st.integers(0, p - 1)))
    b = la.mul(m, x, p) if m.size else la.zeros(m.shape[0], 1)
    y = la.solve(m, b, p)
    assert y is not None
    assert np.array_equal(la.mul(m, y, p) if m.size else la.zeros(m.shape[0], 1), b % p)


@given(st.integers(1, 4), primes, st.data())
def test_inverse_roundtrip(n, p, data):
    m = data.draw(arrays(np.int64, (n, n), elements=st.integers(0, p - 1)))
    inv = la.inverse(m, p)
    assert (inv is not None) == (la.rank(m, p) == n)
    if inv is not None:
        assert np.array_equal(la.mul(m, inv, p), la.identity(n))


@given(small_matrix())
def test_column_basis_and_complement(pm):
    p, m = pm
    cb = la.column_basis(m, p)
    assert cb.shape[1] == la.rank(m, p)
    comp = la.complement(cb, p)
    both = np.concatenate([cb, comp], axis=1)
    assert both.shape[1] == m.shape[0] == la.rank(both, p)


@given(small_matrix(), small_matrix())
def test_intersection_dimension(pa, pb):
    p, a = pa
    b = pb[1] % p
    if a.shape[0] != b.shape[0]:
        b = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    u, v = la.column_basis(a, p), la.column_basis(b, p)
    w = la.intersect(u, v, p)
    joint = la.rank(np.concatenate([u, v], axis=1), p) if u.size + v.size else 0
    assert w.shape[1] == u.shape[1] + v.shape[1] - joint
    assert la.in_span(u, w, p) and la.in_span(v, w, p)


def test_left_inverse_requires_full_rank():
    u = la.mat([[1, 0], [0, 1], [1, 1]], 3)
    assert np.array_equal(la.mul(la.left_inverse(u, 3), u, 3), la.identity(2))
    with pytest.raises(ValueError):
        la.left_inverse(la.mat([[1, 1], [1, 1]], 3), 3)
