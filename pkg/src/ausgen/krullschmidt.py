"""Krull-Schmidt decompositions, isomorphism tests and ``add`` membership.

Splitting uses Fitting's lemma: for an endomorphism ``phi`` and ``m = dim X``,
``X = ker phi^m (+) im phi^m``.  When no candidate endomorphism splits, the
verdict is certified exactly.  The endomorphisms sending ``X`` into ``rad X``
and those killing ``soc X`` form a nilpotent two-sided ideal ``I`` of
``End(X)``, so ``End(X)`` is local iff the small algebra ``End(X)/I`` has no
idempotent other than 0 and 1.  That quotient is scanned exhaustively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .repmod import (
    Rep,
    RepError,
    RepMorphism,
    direct_sum,
    hom,
    hom_matrix,
    identity,
    morphism_from_flat,
    socle,
    submodule,
    top,
)

__all__ = [
    "Part",
    "Decomposition",
    "decompose",
    "is_indecomposable",
    "find_isomorphism",
    "is_isomorphic",
    "in_add",
    "radical_of_local_endo",
    "EndQuotient",
]

DEFAULT_SEED = 20240601
RANDOM_ROUNDS = 8
SCAN_BUDGET = 200_000


@dataclass
class Part:
    rep: Rep
    inc: RepMorphism
    proj: RepMorphism


@dataclass
class Decomposition:
    """Indecomposable parts of ``source`` with inclusions and projections.

    ``classes`` groups the parts by isomorphism: ``(representative, [part indices])``.
    ``confirmed`` is False when some part could only be declared indecomposable
    by the randomized search.
    """

    source: Rep
    parts: list[Part]
    classes: list[tuple[Rep, list[int]]] = field(default_factory=list)
    confirmed: bool = True

    def multiplicities(self) -> list[tuple[Rep, int]]:
        return [(rep, len(idx)) for rep, idx in self.classes]

    def dim_vectors(self) -> list[tuple[int, ...]]:
        return sorted(part.rep.dims for part in self.parts)


class EndQuotient:
    """``End(X)`` modulo the nilpotent ideal ``I`` described in the module docstring."""

    def __init__(self, x: Rep):
        p = x.p
        self.x = x
        self.basis = hom(x, x)
        emat = hom_matrix(x, x)
        self.n = len(self.basis)
        self.emat = emat
        self._linv = la.left_inverse(emat, p)

        _, tproj = top(x)
        _, sinc = socle(x)
        to_top = np.array([(tproj @ f).flat() for f in self.basis], dtype=np.int64).T
        on_soc = np.array([(f @ sinc).flat() for f in self.basis], dtype=np.int64).T
        pieces = []
        for m in (to_top, on_soc):
            if m.size == 0:
                pieces.append(la.identity(self.n))
            else:
                pieces.append(la.nullspace(m.reshape(-1, self.n), p))
        ideal = la.column_basis(np.concatenate(pieces, axis=1), p)
        self.ideal = ideal
        self.comp = la.complement(ideal, p)
        full = np.concatenate([ideal, self.comp], axis=1)
        self._to_quot = la.inverse(full, p)[ideal.shape[1]:]
        self.d = self.comp.shape[1]
        reps = [self.lift(np.eye(self.d, dtype=np.int64)[k]) for k in range(self.d)]
        self.table = np.zeros((self.d, self.d, self.d), dtype=np.int64)
        for a in range(self.d):
            for b in range(self.d):
                self.table[a, b] = self.reduce(reps[a] @ reps[b])
        self.one = self.reduce(identity(x))

    def coords(self, f: RepMorphism) -> np.ndarray:
        """Coordinates of an endomorphism in the Hom basis."""
        return la.mul(self._linv, f.flat().reshape(-1, 1), self.x.p).ravel()

    def reduce(self, f: RepMorphism) -> np.ndarray:
        return la.mul(self._to_quot, self.coords(f).reshape(-1, 1), self.x.p).ravel()

    def lift(self, v: np.ndarray) -> RepMorphism:
        coeffs = la.mul(self.comp, np.asarray(v, dtype=np.int64).reshape(-1, 1), self.x.p)
        flat = la.mul(self.emat, coeffs, self.x.p).ravel()
        return morphism_from_flat(self.x, self.x, flat)

    def all_elements(self) -> np.ndarray | None:
        p = self.x.p
        if p ** self.d > SCAN_BUDGET:
            return None
        return np.array(list(itertools.product(range(p), repeat=self.d)), dtype=np.int64).reshape(-1, self.d)

    def times(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Rowwise products ``xs[n] * ys[n]`` in the quotient, chunked to bound memory."""
        p, d = self.x.p, self.d
        tflat = self.table.reshape(d, d * d).astype(np.float64)
        out = np.empty_like(xs)
        step = max(1, 4_000_000 // max(d * d, 1))
        for lo in range(0, len(xs), step):
            left = (xs[lo:lo + step].astype(np.float64) @ tflat).reshape(-1, d, d)
            prod = np.matmul(ys[lo:lo + step, None, :].astype(np.float64), left)[:, 0, :]
            out[lo:lo + step] = np.rint(prod).astype(np.int64) % p
        return out

    def square(self, xs: np.ndarray) -> np.ndarray:
        return self.times(xs, xs)

    def left_matrix(self, v: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> v y`` on the quotient."""
        return np.einsum("i,ijk->kj", v, self.table) % self.x.p

    def splitting_element(self, rng: np.random.Generator, rounds: int) -> np.ndarray | None:
        """An element that is neither nilpotent nor invertible, found by a short search."""
        p, d = self.x.p, self.d
        eye = np.eye(d, dtype=np.int64)
        cands = [eye[k] for k in range(d)]
        cands += [(eye[i] + eye[j]) % p for i, j in itertools.combinations(range(d), 2)]
        cands += [rng.integers(0, p, size=d) for _ in range(4 * rounds)]
        for v in cands:
            m = self.left_matrix(v)
            if la.rank(m, p) == d:
                continue
            pw = m
            for _ in range(d.bit_length()):
                pw = la.mul(pw, pw, p)
            if np.any(pw):
                return v
        return None

    def nontrivial_idempotent(self) -> np.ndarray | None | bool:
        """An idempotent other than 0, 1; ``None`` if there is none; ``False`` if too big to scan."""
        if self.d <= 1:
            return None
        xs = self.all_elements()
        if xs is None:
            return False
        sq = self.square(xs)
        hit = np.all(sq == xs, axis=1) & np.any(xs, axis=1) & np.any(xs != self.one, axis=1)
        idx = np.flatnonzero(hit)
        return xs[idx[0]] if idx.size else None


def _fitting(phi: RepMorphism) -> tuple[list[np.ndarray], list[np.ndarray]] | None:
    """Vertexwise bases of ``ker phi^m`` and ``im phi^m`` if they split nontrivially."""
    x = phi.source
    psi = phi.power(max(x.dim, 1))
    if psi.is_zero() or psi.is_iso():
        return None
    p = x.p
    kers = [la.nullspace(m, p) for m in psi.maps]
    ims = [la.column_basis(m, p) for m in psi.maps]
    return kers, ims


def _candidates(basis: list[RepMorphism], rng: np.random.Generator, rounds: int):
    yield from basis
    if len(basis) <= 12:
        for f, g in itertools.combinations(basis, 2):
            yield f + g
    p = basis[0].p if basis else 2
    for _ in range(rounds):
        coeffs = rng.integers(0, p, size=len(basis))
        acc = None
        for c, f in zip(coeffs, basis):
            if c:
                term = f.scale(int(c))
                acc = term if acc is None else acc + term
        if acc is not None:
            yield acc


def _find_split(x: Rep, rng: np.random.Generator, rounds: int):
    """``(kers, ims)`` of a splitting endomorphism, or ``(None, confirmed)``.

    Work happens in the small quotient ``End(X)/I``.  Dimension <= 1 means
    local.  Otherwise a short search for a non-nilpotent non-unit usually
    splits a decomposable module at once; failing that, an exhaustive
    idempotent scan is exact.  Fitting candidates on ``End(X)`` itself are the
    fallback when the quotient is too large to scan.
    """
    basis = hom(x, x)
    if len(basis) <= 1:
        return None, True
    quot = _end_quotient(x)
    if quot.d <= 1:
        return None, True
    v = quot.splitting_element(rng, rounds)
    if v is not None:
        split = _fitting(quot.lift(v))
        if split is None:  # a lift of a non-nilpotent non-unit is neither nilpotent nor invertible
            raise RepError("quotient element failed to lift to a splitting endomorphism")
        return split, True
    e = quot.nontrivial_idempotent()
    if e is None:
        return None, True
    if e is not False:
        split = _fitting(quot.lift(e))
        if split is None:  # cannot happen: a lift of a nontrivial idempotent splits
            raise RepError("idempotent lift failed to split")
        return split, True
    for phi in _candidates(basis, rng, rounds):
        split = _fitting(phi)
        if split is not None:
            return split, True
    return None, False


def _end_quotient(x: Rep) -> EndQuotient:
    hit = x._cache.get("endquot")
    if hit is None:
        hit = EndQuotient(x)
        x._cache["endquot"] = hit
    return hit


def decompose(x: Rep, seed: int = DEFAULT_SEED, rounds: int = RANDOM_ROUNDS) -> Decomposition:
    key = ("decomp", seed, rounds)
    if key in x._cache:
        return x._cache[key]
    rng = np.random.default_rng(seed)
    p = x.p
    todo = [Part(x, identity(x), identity(x))]
    parts: list[Part] = []
    confirmed = True
    while todo:
        piece = todo.pop()
        y = piece.rep
        if y.dim == 0:
            continue
        split, ok = _find_split(y, rng, rounds)
        if split is None:
            confirmed &= ok
            y._cache.setdefault("indecomposable", ok)
            parts.append(piece)
            continue
        kers, ims = split
        inverses = [la.inverse(np.concatenate([k, i], axis=1), p) for k, i in zip(kers, ims)]
        for lo, bases in ((0, kers), (1, ims)):
            sub, inc = submodule(y, bases, check=False)
            rows = []
            for v, inv in enumerate(inverses):
                nk = kers[v].shape[1]
                rows.append(inv[:nk] if lo == 0 else inv[nk:])
            proj = RepMorphism(y, sub, rows, check=False)
            todo.append(Part(sub, piece.inc @ inc, proj @ piece.proj))
    parts.sort(key=lambda part: (part.rep.dims, part.rep.dim))
    if len(parts) == 1:
        parts = [Part(x, identity(x), identity(x))]
        x._cache["indecomposable"] = confirmed
    for k, part in enumerate(parts):
        if x.name and len(parts) > 1:
            part.rep.name = f"{x.name}[{k}]"
    classes: list[tuple[Rep, list[int]]] = []
    for k, part in enumerate(parts):
        for rep, idx in classes:
            if rep.dims == part.rep.dims and _iso_indecomposable(rep, part.rep, seed) is not None:
                idx.append(k)
                break
        else:
            classes.append((part.rep, [k]))
    out = Decomposition(x, parts, classes, confirmed)
    x._cache[key] = out
    return out


def is_indecomposable(x: Rep, seed: int = DEFAULT_SEED) -> bool:
    return x.dim > 0 and len(decompose(x, seed).parts) == 1


def radical_of_local_endo(x: Rep) -> list[RepMorphism]:
    """Basis of ``rad End(x)`` (the non-invertible endomorphisms) for indecomposable ``x``."""
    hit = x._cache.get("endrad")
    if hit is not None:
        return hit
    if not is_indecomposable(x):
        raise RepError("radical_of_local_endo needs an indecomposable module")
    quot = _end_quotient(x)
    p = x.p
    # J = I + lifts of the nilpotent elements of End/I.
    span = [quot.ideal]
    if quot.d > 1:
        xs = quot.all_elements()
        if xs is None:
            raise RepError("endomorphism quotient too large for the exhaustive radical scan")
        pw = xs.copy()
        for _ in range(quot.d):
            pw = quot.times(pw, xs)
        nil = xs[~np.any(pw, axis=1)]
        if nil.size:
            jbar = la.column_basis(nil.T.copy(), p)
            span.append(la.mul(quot.comp, jbar, p))
    coeffs = la.column_basis(np.concatenate(span, axis=1), p) if span else la.zeros(quot.n, 0)
    out = [morphism_from_flat(x, x, la.mul(quot.emat, coeffs[:, [c]], p).ravel())
           for c in range(coeffs.shape[1])]
    x._cache["endrad"] = out
    return out


def _quick_iso(x: Rep, y: Rep, seed: int) -> RepMorphism | None:
    basis = hom(x, y)
    rng = np.random.default_rng(seed)
    for f in _candidates(basis, rng, 4):
        if f.is_iso():
            return f
    return None


def _iso_indecomposable(x: Rep, y: Rep, seed: int) -> RepMorphism | None:
    """Exact test for indecomposable ``x``.

    ``x`` is a summand of ``y`` iff some composite ``g f`` (``f: x -> y``,
    ``g: y -> x``) is outside ``rad End(x)``; with equal dimension vectors
    that ``f`` is an isomorphism.
    """
    if x is y:
        return identity(x)
    if x.dims != y.dims:
        return None
    if fingerprint(x) != fingerprint(y) or not hom_matrix(x, y).shape[1]:
        return None
    quick = _quick_iso(x, y, seed)
    if quick is not None:
        return quick
    p = x.p
    jmat = [f.flat() for f in radical_of_local_endo(x)]
    jmat = np.array(jmat, dtype=np.int64).T if jmat else la.zeros(len(identity(x).flat()), 0)
    forward, back = hom(x, y), hom(y, x)
    if not back:
        return None
    rj = la.rank(jmat, p) if jmat.shape[1] else 0
    for f in forward:
        comps = np.array([(g @ f).flat() for g in back], dtype=np.int64).T
        if la.rank(np.concatenate([jmat, comps], axis=1), p) > rj:
            return f
    return None


def _words(pres, v: int, k: int, forward: bool) -> list[tuple[int, ...]]:
    """Arrow words of length ``k`` starting (``forward``) or ending at ``v``."""
    words = [((), v)]
    for _ in range(k):
        nxt = []
        for w, end in words:
            arrows = pres.arrows_from(end) if forward else pres.arrows_to(end)
            for a in arrows:
                arrow = pres.arrows[a]
                nxt.append((w + (a,), arrow.target) if forward else ((a,) + w, arrow.source))
        words = nxt
    return [w for w, _ in words]


def fingerprint(x: Rep) -> tuple:
    """Isomorphism invariants: dimension vectors of the radical and socle series."""
    hit = x._cache.get("fingerprint")
    if hit is None:
        pres, p = x.pres, x.p
        rads, socs = [], []
        for k in range(1, pres.bound):
            rk, sk = [], []
            for v in range(pres.n):
                ins = [x.act(w) for w in _words(pres, v, k, False)]
                ins = [m for m in ins if m.size]
                rk.append(la.rank(np.concatenate(ins, axis=1), p) if ins else 0)
                outs = [x.act(w) for w in _words(pres, v, k, True)]
                outs = [m for m in outs if m.size]
                sk.append(x.dims[v] - (la.rank(np.concatenate(outs, axis=0), p) if outs else 0))
            rads.append(tuple(rk))
            socs.append(tuple(sk))
        hit = (x.dims, tuple(rads), tuple(socs))
        x._cache["fingerprint"] = hit
    return hit


def find_isomorphism(x: Rep, y: Rep, seed: int = DEFAULT_SEED) -> RepMorphism | None:
    """An isomorphism ``x -> y`` or ``None`` (exact on confirmed decompositions)."""
    if x is y:
        return identity(x)
    if x.pres is not y.pres or x.dims != y.dims:
        return None
    if x.dim == 0:
        return RepMorphism(x, y, [la.zeros(0, 0)] * x.pres.n, check=False)
    if fingerprint(x) != fingerprint(y):
        return None
    quick = _quick_iso(x, y, seed)
    if quick is not None:
        return quick
    dx = decompose(x, seed)
    if len(dx.parts) == 1:
        return _iso_indecomposable(x, y, seed)
    dy = decompose(y, seed)
    if len(dy.parts) != len(dx.parts):
        return None
    used = [False] * len(dy.parts)
    maps = [la.zeros(dy_, dx_) for dx_, dy_ in zip(x.dims, y.dims)]
    for part in dx.parts:
        for k, other in enumerate(dy.parts):
            if used[k] or other.rep.dims != part.rep.dims:
                continue
            iso = _iso_indecomposable(part.rep, other.rep, seed)
            if iso is not None:
                used[k] = True
                piece = other.inc @ iso @ part.proj
                maps = [(m + q) % x.p for m, q in zip(maps, piece.maps)]
                break
        else:
            return None
    return RepMorphism(x, y, maps, check=False)


def is_isomorphic(x: Rep, y: Rep, seed: int = DEFAULT_SEED) -> bool:
    return find_isomorphism(x, y, seed) is not None


def match_index(x: Rep, gens: list[Rep], seed: int = DEFAULT_SEED) -> int | None:
    """Index of the entry of ``gens`` isomorphic to indecomposable ``x``."""
    for j, g in enumerate(gens):
        if g.dims == x.dims and _iso_indecomposable(x, g, seed) is not None:
            return j
    return None


def in_add(x: Rep, gens: list[Rep], seed: int = DEFAULT_SEED) -> list[int] | None:
    """Multiplicities of ``gens`` (pairwise non-isomorphic indecomposables) in ``x``, or ``None``."""
    mult = [0] * len(gens)
    if x.dim == 0:
        return mult
    for rep, idx in decompose(x, seed).classes:
        j = match_index(rep, gens, seed)
        if j is None:
            return None
        mult[j] += len(idx)
    return mult


def assemble(dec: Decomposition) -> tuple[Rep, RepMorphism]:
    """Direct sum of the parts and the isomorphism onto ``dec.source`` given by the inclusions."""
    total, _, projs = direct_sum([part.rep for part in dec.parts])
    p = dec.source.p
    maps = [la.zeros(dd, td) for dd, td in zip(dec.source.dims, total.dims)]
    for part, pr in zip(dec.parts, projs):
        piece = part.inc @ pr
        maps = [(m + q) % p for m, q in zip(maps, piece.maps)]
    return total, RepMorphism(total, dec.source, maps)
