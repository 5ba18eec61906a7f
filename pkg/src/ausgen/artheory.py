"""Extensions, almost split sequences and the source test used by mutation.

``Ext^1(C, A)`` is realized as ``Hom(Omega C, A)`` modulo the maps that extend
over the projective cover ``P0`` of ``C``.  A class represented by
``h: Omega C -> A`` is realized by the pushout of ``0 -> Omega C -> P0 -> C -> 0``
along ``h``.

The almost split sequence ending in ``C = tau^-1 N`` is a nonzero element of
the socle of ``Ext^1(C, N)`` as a right ``End(C)``-module, i.e. a class killed
by pulling back along every radical endomorphism of ``C``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .krullschmidt import (
    DEFAULT_SEED,
    decompose,
    find_isomorphism,
    in_add,
    is_indecomposable,
    radical_of_local_endo,
)
from .repmod import (
    SES,
    Rep,
    RepError,
    RepMorphism,
    cokernel,
    direct_sum,
    free_map,
    hom,
    hom_matrix,
    identity,
    is_injective,
    is_projective,
    morphism_from_flat,
    projective_cover,
    tau_inverse,
)

__all__ = [
    "ExtSpace",
    "ext1",
    "ARSequence",
    "almost_split_starting_at",
    "is_split",
    "is_mutable_position",
]


class ExtSpace:
    """``Ext^1(C, A)`` with coordinates, realization and the two module actions."""

    def __init__(self, c: Rep, a: Rep):
        if c.pres is not a.pres:
            raise RepError("Ext between modules over different algebras")
        p = c.p
        self.c, self.a, self.p = c, a, p
        self.cover = projective_cover(c)
        omega = self.cover.omega
        self.hom_basis = hom_matrix(omega, a)
        nh = self.hom_basis.shape[1]
        self._hinv = la.left_inverse(self.hom_basis, p)
        # Restrictions of maps P0 -> A, in coordinates of the Hom basis.
        bnd = [self._hcoords(g @ self.cover.iota) for g in hom(self.cover.projective, a)]
        bmat = np.array(bnd, dtype=np.int64).T if bnd else la.zeros(nh, 0)
        self.boundary = la.column_basis(bmat, p) if bmat.shape[1] else bmat
        self.comp = la.complement(self.boundary, p)
        full = np.concatenate([self.boundary, self.comp], axis=1)
        inv = la.inverse(full, p) if nh else la.zeros(0, 0)
        self._proj = inv[self.boundary.shape[1]:]
        self.dim = self.comp.shape[1]

    def _hcoords(self, h: RepMorphism) -> np.ndarray:
        return la.mul(self._hinv, h.flat().reshape(-1, 1), self.p).ravel()

    def coords(self, h: RepMorphism) -> np.ndarray:
        """Class of ``h: Omega C -> A``."""
        if self.dim == 0:
            return la.zeros(0, 0).ravel()
        return la.mul(self._proj, self._hcoords(h).reshape(-1, 1), self.p).ravel()

    def representative(self, v) -> RepMorphism:
        v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
        coeffs = la.mul(self.comp, v, self.p)
        flat = la.mul(self.hom_basis, coeffs, self.p).ravel()
        return morphism_from_flat(self.cover.omega, self.a, flat)

    def _lift_endo(self, phi: RepMorphism) -> RepMorphism:
        """``phi1: Omega C -> Omega C`` induced by a lift of ``phi`` over the cover."""
        cov, p = self.cover, self.p
        ys = []
        for v, x in zip(cov.vertices, cov.generators):
            target = la.mul(phi.maps[v], x.reshape(-1, 1), p)
            y = la.solve(cov.pi.maps[v], target, p)
            ys.append(y.ravel())
        _, phi0 = free_map(self.c.pres, cov.vertices, cov.projective, ys, source=cov.projective)
        moved = phi0 @ cov.iota
        maps = [la.mul(la.left_inverse(cov.iota.maps[v], p), moved.maps[v], p) if cov.iota.maps[v].shape[1]
                else la.zeros(0, moved.maps[v].shape[1]) for v in range(self.c.pres.n)]
        return RepMorphism(cov.omega, cov.omega, maps, check=False)

    def pullback(self, phi: RepMorphism) -> np.ndarray:
        """Matrix of ``xi -> xi . phi`` for ``phi in End(C)``, acting on coordinate columns."""
        phi1 = self._lift_endo(phi)
        cols = [self.coords(self.representative(e) @ phi1) for e in np.eye(self.dim, dtype=np.int64)]
        return np.array(cols, dtype=np.int64).T if cols else la.zeros(0, 0)

    def pushout(self, psi: RepMorphism) -> np.ndarray:
        """Matrix of ``xi -> psi . xi`` for ``psi in End(A)``."""
        cols = [self.coords(psi @ self.representative(e)) for e in np.eye(self.dim, dtype=np.int64)]
        return np.array(cols, dtype=np.int64).T if cols else la.zeros(0, 0)

    def realize(self, v) -> SES:
        """The pushout extension ``0 -> A -> E -> C -> 0`` of the class ``v``."""
        cov, p, pres = self.cover, self.p, self.c.pres
        h = self.representative(v)
        total, incs, projs = direct_sum([self.a, cov.projective])
        emb = RepMorphism(cov.omega, total,
                          [np.concatenate([h.maps[w], (-cov.iota.maps[w]) % p], axis=0) for w in range(pres.n)],
                          check=False)
        e, q = cokernel(emb)
        zeta = q @ incs[0]
        u = cov.pi @ projs[1]
        eps = []
        for w in range(pres.n):
            sec = la.solve(q.maps[w], la.identity(e.dims[w]), p)
            eps.append(la.mul(u.maps[w], sec, p))
        ses = SES(zeta, RepMorphism(e, self.c, eps, check=True))
        ses.check()
        return ses

    def class_of(self, ses: SES) -> np.ndarray:
        """Coordinates of an extension ``0 -> A -> E -> C -> 0`` (inverse of :meth:`realize`)."""
        cov, p = self.cover, self.p
        eps, zeta = ses.pi, ses.iota
        ys = []
        for v, x in zip(cov.vertices, cov.generators):
            y = la.solve(eps.maps[v], x.reshape(-1, 1), p)
            ys.append(y.ravel())
        _, lam = free_map(self.c.pres, cov.vertices, ses.middle, ys, source=cov.projective)
        li = lam @ cov.iota
        maps = [la.mul(la.left_inverse(zeta.maps[v], p), li.maps[v], p) for v in range(self.c.pres.n)]
        return self.coords(RepMorphism(cov.omega, self.a, maps, check=False))


def ext1(c: Rep, a: Rep) -> ExtSpace:
    key = ("ext", id(a))
    hit = c._cache.get(key)
    if hit is not None and hit.a is a:
        return hit
    out = ExtSpace(c, a)
    c._cache[key] = out
    return out


def is_split(ses: SES) -> bool:
    """Whether ``pi`` has a section, found by solving ``pi s = id`` over ``Hom(C, B)``."""
    c, b = ses.right, ses.middle
    basis = hom(c, b)
    target = identity(c).flat().reshape(-1, 1)
    if not basis:
        return c.dim == 0
    cols = np.array([(ses.pi @ s).flat() for s in basis], dtype=np.int64).T
    return la.solve(cols, target, c.p) is not None


@dataclass
class ARSequence:
    """``0 -> N --zeta--> E --eps--> C -> 0`` with ``C = tau^-1 N``."""

    ses: SES
    ext: ExtSpace
    coords: np.ndarray
    socle_dim: int

    @property
    def start(self) -> Rep:
        return self.ses.left

    @property
    def middle(self) -> Rep:
        return self.ses.middle

    @property
    def end(self) -> Rep:
        return self.ses.right

    def verify_right(self, tests: list[Rep], seed: int = DEFAULT_SEED) -> bool:
        """Every radical map ``G -> C`` lifts through ``eps``."""
        c, e, p = self.end, self.middle, self.end.p
        for g in tests:
            rad = _radical_maps(g, c, seed)
            if not rad:
                continue
            lifts = [(self.ses.pi @ h).flat() for h in hom(g, e)]
            span = np.array(lifts, dtype=np.int64).T if lifts else la.zeros(len(rad[0].flat()), 0)
            if not la.in_span(span, np.array([f.flat() for f in rad], dtype=np.int64).T, p):
                return False
        return True

    def verify_left(self, tests: list[Rep], seed: int = DEFAULT_SEED) -> bool:
        """Every radical map ``N -> G`` extends over ``zeta``."""
        n, e, p = self.start, self.middle, self.start.p
        for g in tests:
            rad = _radical_maps(n, g, seed)
            if not rad:
                continue
            ext = [(h @ self.ses.iota).flat() for h in hom(e, g)]
            span = np.array(ext, dtype=np.int64).T if ext else la.zeros(len(rad[0].flat()), 0)
            if not la.in_span(span, np.array([f.flat() for f in rad], dtype=np.int64).T, p):
                return False
        return True

    def radical_pullbacks_split(self) -> bool:
        """Pullback along each radical endomorphism of ``C`` is the zero class."""
        return all(not np.any(la.mul(self.ext.pullback(phi), self.coords.reshape(-1, 1), self.end.p))
                   for phi in radical_of_local_endo(self.end))


def _radical_maps(x: Rep, y: Rep, seed: int) -> list[RepMorphism]:
    """Non-isomorphism maps between indecomposables ``x -> y``: all of Hom unless ``x ~ y``."""
    iso = find_isomorphism(y, x, seed) if x.dims == y.dims else None
    if iso is None:
        return hom(x, y)
    inv = iso.inverse()
    return [inv @ r for r in radical_of_local_endo(x)]


def almost_split_starting_at(n: Rep, end: Rep | None = None, seed: int = DEFAULT_SEED) -> ARSequence:
    """The almost split sequence ``0 -> N -> E -> tau^-1 N -> 0``.

    ``end`` may pass an already computed ``tau^-1 N`` to keep object identity.
    """
    key = ("ar", seed)
    hit = n._cache.get(key)
    if hit is not None and (end is None or hit.end is end):
        return hit
    if not is_indecomposable(n, seed):
        raise RepError("almost split sequences start at indecomposable modules")
    if is_projective(n) or is_injective(n):
        raise RepError(f"{n.name or 'module'} is projective or injective; no almost split sequence starts there")
    c = end if end is not None else tau_inverse(n)
    ext = ext1(c, n)
    p = n.p
    rad = radical_of_local_endo(c)
    if rad:
        stacked = np.concatenate([ext.pullback(phi) for phi in rad], axis=0)
        soc = la.nullspace(stacked, p)
    else:
        soc = la.identity(ext.dim)
    if soc.shape[1] == 0:
        raise RepError("socle of Ext is zero; this indicates an internal error")
    v = soc[:, 0]
    ses = ext.realize(v)
    e = ses.middle
    if n.name:
        e.name = f"E({n.name})"
    out = ARSequence(ses, ext, v, soc.shape[1])
    n._cache[key] = out
    return out


def is_mutable_position(n: Rep, gens: list[Rep], seed: int = DEFAULT_SEED,
                        end: Rep | None = None) -> bool:
    """``N`` is a source: the middle term of its almost split sequence lies in ``add(gens \\ N)``."""
    others = [g for g in gens if g is not n]
    ar = almost_split_starting_at(n, end=end, seed=seed)
    return in_add(ar.middle, others, seed) is not None


def middle_term_decomposition(n: Rep, seed: int = DEFAULT_SEED) -> list[tuple[int, ...]]:
    return decompose(almost_split_starting_at(n, seed=seed).middle, seed).dim_vectors()
