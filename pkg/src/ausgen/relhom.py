"""Relative homological algebra for the subfunctor ``F_M`` of ``Ext^1``.

``gens`` is always a list of pairwise non-isomorphic indecomposable modules
containing every indecomposable projective; ``add(gens)`` then plays the role
of the relative projectives.  A right ``add(gens)``-approximation of ``C`` is
a map ``alpha: G -> C`` from ``G`` in ``add(gens)`` through which every map
from ``add(gens)`` factors.  Its kernel, for the minimal choice, is the
relative syzygy.

Statements about the whole module category (relative global dimension) are
never made here; :func:`window_verify` checks a finite, explicitly listed
window of modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactla as la
from .krullschmidt import (
    DEFAULT_SEED,
    decompose,
    in_add,
    is_isomorphic,
    radical_of_local_endo,
)
from .repmod import (
    Rep,
    RepError,
    RepMorphism,
    direct_sum,
    dual,
    hom,
    compose_flat,
    hom_matrix,
    is_projective,
    kernel,
    morphism_from_flat,
    projective,
    projective_cover,
    syzygy,
    tau,
    tau_inverse,
    cosyzygy,
)

__all__ = [
    "Approximation",
    "right_approximation",
    "minimize",
    "minimal_approximation",
    "rel_syzygy",
    "rel_pd_at_most_one",
    "rel_id_at_most_one",
    "stable_hom",
    "window",
    "window_verify",
    "WindowReport",
]


@dataclass
class Approximation:
    """``alpha: cover -> target`` with ``cover = (+)_k gens[index[k]]``.

    ``maps[k]`` is the component of ``alpha`` on the ``k``-th summand.
    ``drop_checks`` records, per kept summand, that deleting it breaks the
    approximation property (the minimality certificate).
    """

    target: Rep
    gens: list[Rep]
    index: list[int]
    maps: list[RepMorphism]
    cover: Rep
    alpha: RepMorphism
    kernel: Rep
    iota: RepMorphism
    minimal: bool = False
    drop_checks: list[bool] = field(default_factory=list)

    def multiplicities(self) -> list[int]:
        out = [0] * len(self.gens)
        for j in self.index:
            out[j] += 1
        return out


def _check_gens(gens: list[Rep]) -> None:
    if not gens:
        raise RepError("empty generator list")
    pres = gens[0].pres
    for i in range(pres.n):
        pi = projective(pres, i)
        if not any(g.dims == pi.dims and is_isomorphic(g, pi) for g in gens):
            raise RepError(f"generator list misses the projective at vertex {pres.vertices[i]}")


def _assemble(target: Rep, gens: list[Rep], index: list[int], maps: list[RepMorphism],
              minimal: bool, drop_checks: list[bool]) -> Approximation:
    pres, p = target.pres, target.p
    if index:
        if len(index) == 1:
            cover, projs = gens[index[0]], None
        else:
            cover, _, projs = direct_sum([gens[j] for j in index])
        comps = []
        for v in range(pres.n):
            blocks = [f.maps[v] for f in maps]
            comps.append(np.concatenate(blocks, axis=1) if blocks else la.zeros(target.dims[v], 0))
        alpha = RepMorphism(cover, target, comps, check=False)
    else:
        from .repmod import zero_morphism, zero_rep

        cover = zero_rep(pres)
        alpha = zero_morphism(cover, target)
    if not alpha.is_epi():
        raise RepError("approximation is not surjective; the generators miss a projective")
    ker, iota = kernel(alpha)
    if target.name:
        ker.name = f"Omega_rel({target.name})"
    return Approximation(target, gens, index, maps, cover, alpha, ker, iota, minimal, drop_checks)


def _blocks(target: Rep, gens: list[Rep], index: list[int], maps: list[RepMorphism]) -> list[list[np.ndarray]]:
    """``out[g][k]``: flat maps ``f_k h`` for ``h`` in ``Hom(gens[g], gens[index[k]])``."""
    out = []
    for g in gens:
        row = []
        for j, f in zip(index, maps):
            col = f.flat().reshape(-1, 1)
            row.append(compose_flat(col, hom_matrix(g, gens[j]), g, gens[j], target))
        out.append(row)
    return out


def _has_property(target: Rep, gens: list[Rep], blocks: list[list[np.ndarray]], keep: list[int]) -> bool:
    p = target.p
    for g, row in zip(gens, blocks):
        need = hom_matrix(g, target).shape[1]
        if not need:
            continue
        cols = [row[k] for k in keep if row[k].shape[1]]
        if not cols or la.rank(np.concatenate(cols, axis=1), p) < need:
            return False
    return True


def _drop_checks(target: Rep, gens: list[Rep], blocks, keep: list[int]) -> list[bool]:
    return [not _has_property(target, gens, blocks, [t for t in keep if t != k]) for k in keep]


def right_approximation(target: Rep, gens: list[Rep]) -> Approximation:
    """Non-minimal approximation: one copy of ``G`` per basis map ``G -> C``."""
    _check_gens(gens)
    index, maps = [], []
    for j, g in enumerate(gens):
        for f in hom(g, target):
            index.append(j)
            maps.append(f)
    return _assemble(target, gens, index, maps, False, [])


def minimize(approx: Approximation, order: list[int] | None = None) -> Approximation:
    """Greedy deletion of summands while the approximation property survives.

    ``order`` permutes the deletion attempts.  The result records, for every
    surviving summand, that its deletion fails.
    """
    target, gens = approx.target, approx.gens
    blocks = _blocks(target, gens, approx.index, approx.maps)
    keep = list(range(len(approx.index)))
    attempts = order if order is not None else list(reversed(keep))
    for k in attempts:
        trial = [t for t in keep if t != k]
        if _has_property(target, gens, blocks, trial):
            keep = trial
    drops = _drop_checks(target, gens, blocks, keep)
    if not all(drops):  # cannot happen after the greedy pass
        raise RepError("minimization left a removable summand")
    return _assemble(target, gens, [approx.index[t] for t in keep], [approx.maps[t] for t in keep],
                     True, drops)


def _radical_matrix(x: Rep) -> np.ndarray:
    hit = x._cache.get("endrad_mat")
    if hit is None:
        rad = radical_of_local_endo(x)
        width = sum(d * d for d in x.dims)
        hit = np.array([f.flat() for f in rad], dtype=np.int64).T if rad else la.zeros(width, 0)
        x._cache["endrad_mat"] = hit
    return hit


def _radical_compositions(target: Rep, gens: list[Rep], j: int) -> list[np.ndarray]:
    """Flat maps ``gens[j] -> C`` factoring through a radical map into ``add(gens)``."""
    gj = gens[j]
    out = []
    for i, gi in enumerate(gens):
        fmat = hom_matrix(gi, target)
        if not fmat.shape[1]:
            continue
        rad = _radical_matrix(gj) if i == j else hom_matrix(gj, gi)
        if not rad.shape[1]:
            continue
        out.append(compose_flat(fmat, rad, gj, gi, target))
    return out


def minimal_approximation(target: Rep, gens: list[Rep]) -> Approximation:
    """Minimal approximation, computed from ``Hom(G, C)`` modulo radical factorizations.

    A basis map ``f: G_j -> C`` is needed exactly when it is not in the span
    of maps through radical maps ``G_j -> add(gens)`` plus the ``End(G_j)``
    multiples of the maps already chosen.  Cached per generator list.
    """
    key = ("minapprox", tuple(id(g) for g in gens))
    hit = target._cache.get(key)
    if hit is not None and all(a is b for a, b in zip(hit.gens, gens)):
        return hit
    _check_gens(gens)
    p = target.p
    index, maps = [], []
    for j, g in enumerate(gens):
        basis = hom_matrix(g, target)
        if not basis.shape[1]:
            continue
        span = _radical_compositions(target, gens, j)
        cur = np.concatenate(span, axis=1) if span else la.zeros(basis.shape[0], 0)
        cur = la.column_basis(cur, p) if cur.shape[1] else cur
        ends = hom_matrix(g, g)
        for c in range(basis.shape[1]):
            v = basis[:, [c]]
            if la.in_span(cur, v, p):
                continue
            index.append(j)
            maps.append(morphism_from_flat(g, target, basis[:, c]))
            cur = la.column_basis(np.concatenate([cur, compose_flat(v, ends, g, g, target)], axis=1), p)
    blocks = _blocks(target, gens, index, maps)
    drops = _drop_checks(target, gens, blocks, list(range(len(index))))
    out = _assemble(target, gens, index, maps, True, drops)
    target._cache[key] = out
    return out


def rel_syzygy(target: Rep, gens: list[Rep]) -> Rep:
    """``Omega_{F_M}(C)``: kernel of the minimal right ``add(gens)``-approximation."""
    return minimal_approximation(target, gens).kernel


def rel_pd_at_most_one(target: Rep, gens: list[Rep], seed: int = DEFAULT_SEED) -> bool:
    return in_add(rel_syzygy(target, gens), gens, seed) is not None


def rel_id_at_most_one(target: Rep, gens: list[Rep], seed: int = DEFAULT_SEED) -> bool:
    """The ``F^M`` side, computed as ``rel_pd`` of ``D C`` over the opposite algebra."""
    return rel_pd_at_most_one(dual(target), [_dual_cached(g) for g in gens], seed)


def _dual_cached(x: Rep) -> Rep:
    hit = x._cache.get("dual")
    if hit is None:
        hit = dual(x)
        hit._cache["dual"] = x
        x._cache["dual"] = hit
    return hit


def stable_hom(sources: Rep | list[Rep], n: Rep) -> tuple[int, list[RepMorphism]]:
    """``Hom(X, N)`` modulo maps through projectives, as dimension and representatives.

    A map through any projective factors through the cover ``P(N) -> N``.
    ``sources`` may be a list, standing for its direct sum.
    """
    xs = sources if isinstance(sources, list) else [sources]
    cover = projective_cover(n)
    p = n.p
    total, reps = 0, []
    for x in xs:
        full = hom_matrix(x, n)
        if full.shape[1] == 0:
            continue
        through = compose_flat(cover.pi.flat().reshape(-1, 1), hom_matrix(x, cover.projective),
                               x, cover.projective, n)
        sub = la.column_basis(through, p) if through.shape[1] else la.zeros(full.shape[0], 0)
        comp_cols = []
        cur = sub
        for c in range(full.shape[1]):
            v = full[:, [c]]
            if not la.in_span(cur, v, p):
                comp_cols.append(c)
                cur = np.concatenate([cur, v], axis=1)
        total += len(comp_cols)
        reps.extend(morphism_from_flat(x, n, full[:, c]) for c in comp_cols)
    return total, reps


# -- bounded windows --------------------------------------------------------


def _dedupe(mods: list[Rep], seed: int) -> list[Rep]:
    out: list[Rep] = []
    for m in mods:
        if not any(o.dims == m.dims and is_isomorphic(o, m, seed) for o in out):
            out.append(m)
    return out


def window(gens: list[Rep], radius: int, seed: int = DEFAULT_SEED) -> list[Rep]:
    """Indecomposable summands of ``gens`` closed under ``tau^{+-1}`` up to ``radius``
    steps and under ``Omega^{+-1}`` once, without repeats up to isomorphism."""
    base = []
    for g in gens:
        base.extend(part.rep for part in decompose(g, seed).parts)
    base = _dedupe(base, seed)
    orbit = list(base)
    for g in base:
        if is_projective(g):
            continue
        for step in (tau, tau_inverse):
            cur = g
            for _ in range(radius):
                cur = step(cur)
                orbit.append(cur)
    orbit = _dedupe(orbit, seed)
    grown = list(orbit)
    for x in orbit:
        if is_projective(x):
            continue
        for f in (syzygy, cosyzygy):
            y = f(x)
            grown.extend(part.rep for part in decompose(y, seed).parts)
    return _dedupe(grown, seed)


@dataclass
class WindowReport:
    radius: int
    modules: list[Rep]
    verdicts: list[bool]
    syzygy_dims: list[list[tuple[int, ...]]]

    @property
    def ok(self) -> bool:
        return all(self.verdicts)

    def failures(self) -> list[Rep]:
        return [m for m, v in zip(self.modules, self.verdicts) if not v]

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "verdict": "verified on window" if self.ok else "failure in window",
            "size": len(self.modules),
            "modules": [
                {"name": m.name, "dims": list(m.dims), "rel_syzygy": [list(d) for d in s], "pd_le_1": v}
                for m, v, s in zip(self.modules, self.verdicts, self.syzygy_dims)
            ],
        }


def window_verify(gens: list[Rep], radius: int, seed: int = DEFAULT_SEED,
                  extra: list[Rep] | None = None) -> WindowReport:
    """``rel_pd <= 1`` for every module of the window (plus ``extra`` modules)."""
    mods = window(gens, radius, seed)
    if extra:
        mods = _dedupe(mods + list(extra), seed)
    verdicts, dims = [], []
    for m in mods:
        omega = rel_syzygy(m, gens)
        dims.append(decompose(omega, seed).dim_vectors() if omega.dim else [])
        verdicts.append(in_add(omega, gens, seed) is not None)
    return WindowReport(radius, mods, verdicts, dims)
