"""Helpers shared by the test modules."""

import itertools

import numpy as np

from ausgen.krullschmidt import decompose, find_isomorphism
from ausgen.repmod import Rep, cokernel, combine, direct_sum, hom, is_projective, projective


def summands(x: Rep, seed: int = 20240601) -> list[Rep]:
    return [part.rep for part in decompose(x, seed).parts] if x.dim else []


def iso(x: Rep, y: Rep) -> bool:
    return x.dims == y.dims and find_isomorphism(x, y) is not None


def multiset_minus(a: list[Rep], b: list[Rep]) -> list[Rep] | None:
    """``a - b`` as multisets up to isomorphism; ``None`` if ``b`` is not contained in ``a``."""
    rest = list(a)
    for y in b:
        for k, x in enumerate(rest):
            if iso(x, y):
                del rest[k]
                break
        else:
            return None
    return rest


def same_multiset(a: list[Rep], b: list[Rep]) -> bool:
    return multiset_minus(a, b) == []


def nonprojective_part(x: Rep) -> list[Rep]:
    return [s for s in summands(x) if not is_projective(s)]


def random_module(pres, rng: np.random.Generator, max_summands: int = 3) -> Rep:
    """Cokernel of a random map between small sums of indecomposable projectives."""
    n = pres.n
    src = [projective(pres, int(v)) for v in rng.integers(0, n, size=int(rng.integers(1, max_summands + 1)))]
    tgt = [projective(pres, int(v)) for v in rng.integers(0, n, size=int(rng.integers(1, max_summands + 1)))]
    s, _, _ = direct_sum(src)
    t, _, _ = direct_sum(tgt)
    basis = hom(s, t)
    coeffs = rng.integers(0, pres.p, size=len(basis))
    f = combine(s, t, coeffs) if basis else None
    if f is None:
        return t
    return cokernel(f)[0]


def brute_force_dim(pres) -> int:
    """``dim kQ/I`` from scratch: all paths below the bound modulo the two-sided ideal."""
    arrows = pres.arrows
    paths = [(v, ()) for v in range(pres.n)]
    layer = list(paths)
    for _ in range(pres.bound - 1):
        layer = [(s, w + (k,)) for s, w in layer
                 for k, a in enumerate(arrows) if a.source == (arrows[w[-1]].target if w else s)]
        paths += layer
    index = {q: i for i, q in enumerate(paths)}

    def end(s, w):
        return arrows[w[-1]].target if w else s

    rows = []
    for rel in pres.relations:
        s = arrows[rel[0][1][0]].source
        t = end(s, rel[0][1])
        for (us, uw), (vs, vw) in itertools.product(paths, paths):
            if end(us, uw) != s or vs != t:
                continue
            row = np.zeros(len(paths), dtype=np.int64)
            for coef, word in rel:
                full = uw + word + vw
                if len(full) < pres.bound:
                    row[index[(us, full)]] += coef
            rows.append(row % pres.p)
    if not rows:
        return len(paths)
    from ausgen.exactla import rank
    return len(paths) - rank(np.array(rows), pres.p)
