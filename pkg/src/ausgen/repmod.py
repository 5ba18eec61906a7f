"""Modules as quiver representations, and the classical functors on them.

A :class:`Rep` stores one matrix per arrow: for ``a: i -> j`` the matrix has
shape ``(dims[j], dims[i])``.  A path ``a1*a2*...*ak`` acts by
``X[ak] @ ... @ X[a1]``.  Left modules over kQ/I with this diagrammatic path
convention are exactly such representations.

Projective ``P_i`` has the standard paths ``i -> v`` as basis at ``v``; an
arrow extends a path at its end.  Hom into any module from ``P_i`` is
evaluation at ``e_i`` (Yoneda), which is how every map out of a projective is
built here (:func:`free_map`).

``Hom(P_i, P_j)`` is identified with the standard paths ``j -> i``, and the
contravariant functor ``Hom(-, Lambda)`` sends the path ``q: j -> i`` to the
reversed path ``i -> j`` of the opposite algebra.  That single pairing
realises the transpose, and with the vertexwise transpose duality ``D`` it
gives ``tau = D Tr`` and ``tau^-1 = Tr D``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .presentations import Presentation, opposite

__all__ = [
    "Rep",
    "RepMorphism",
    "SES",
    "Cover",
    "RepError",
    "zero_rep",
    "simple",
    "projective",
    "injective",
    "regular",
    "direct_sum",
    "hom",
    "hom_dim",
    "compose_flat",
    "identity",
    "kernel",
    "image",
    "cokernel",
    "submodule",
    "quotient",
    "generated_submodule",
    "radical",
    "radical_power",
    "socle",
    "socle_power",
    "top",
    "dual",
    "dual_morphism",
    "free_map",
    "projective_cover",
    "syzygy",
    "cosyzygy",
    "transpose",
    "tau",
    "tau_inverse",
    "nakayama",
    "nakayama_permutation",
    "is_projective",
    "is_injective",
    "projective_summand_free",
    "injective_summand_free",
]


class RepError(ValueError):
    """Invalid representation, morphism or functor input."""


class Rep:
    """A finite-dimensional representation of a bounded quiver algebra."""

    def __init__(self, pres: Presentation, dims, mats, name: str = "", check: bool = True):
        self.pres = pres
        self.dims = tuple(int(d) for d in dims)
        p = pres.p
        self.mats = tuple(np.asarray(m, dtype=np.int64).reshape(self.dims[a.target], self.dims[a.source]) % p
                          for m, a in zip(mats, pres.arrows))
        self.name = name
        self._cache: dict = {}
        if len(self.dims) != pres.n or len(self.mats) != len(pres.arrows):
            raise RepError("dimension vector or arrow matrices do not match the quiver")
        if check:
            self.check()

    @property
    def p(self) -> int:
        return self.pres.p

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def act(self, word: tuple[int, ...], source: int | None = None) -> np.ndarray:
        """Matrix of a path; the empty word needs ``source``."""
        if not word:
            return la.identity(self.dims[source])
        m = self.mats[word[0]]
        for k in word[1:]:
            m = la.mul(self.mats[k], m, self.p)
        return m

    def check(self) -> None:
        pres = self.pres
        for rel in pres.relations:
            s, t = pres.word_endpoints(rel[0][1])
            acc = la.zeros(self.dims[t], self.dims[s])
            for coef, word in rel:
                acc = (acc + coef * self.act(word)) % self.p
            if np.any(acc):
                raise RepError(f"relation violated in {self.name or 'representation'}")
        for q in pres.long_paths:
            if np.any(self.act(q.word)):
                raise RepError(f"a path of length {pres.bound} acts nonzero in {self.name or 'representation'}")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dims": list(self.dims),
            "arrows": {a.label: self.mats[k].tolist() for k, a in enumerate(self.pres.arrows)},
        }

    def __repr__(self) -> str:
        tag = f"{self.name} " if self.name else ""
        return f"<Rep {tag}{self.dims}>"


class RepMorphism:
    """Vertexwise matrices ``maps[v]`` of shape ``(target.dims[v], source.dims[v])``."""

    def __init__(self, source: Rep, target: Rep, maps, check: bool = True):
        if source.pres is not target.pres:
            raise RepError("morphism between modules over different algebras")
        self.source = source
        self.target = target
        p = source.p
        self.maps = tuple(np.asarray(m, dtype=np.int64).reshape(target.dims[v], source.dims[v]) % p
                          for v, m in enumerate(maps))
        if check:
            self.check()

    @property
    def p(self) -> int:
        return self.source.p

    def check(self) -> None:
        p = self.p
        for k, a in enumerate(self.source.pres.arrows):
            lhs = la.mul(self.maps[a.target], self.source.mats[k], p)
            rhs = la.mul(self.target.mats[k], self.maps[a.source], p)
            if not np.array_equal(lhs, rhs):
                raise RepError(f"maps do not intertwine arrow {a.label}")

    def __matmul__(self, other: RepMorphism) -> RepMorphism:
        """Composition: ``(g @ f)`` is ``g`` after ``f``."""
        if other.target is not self.source:
            raise RepError("composition of non-composable morphisms")
        return RepMorphism(other.source, self.target,
                           [la.mul(g, f, self.p) for g, f in zip(self.maps, other.maps)], check=False)

    def __add__(self, other: RepMorphism) -> RepMorphism:
        return RepMorphism(self.source, self.target,
                           [(a + b) % self.p for a, b in zip(self.maps, other.maps)], check=False)

    def scale(self, c: int) -> RepMorphism:
        return RepMorphism(self.source, self.target, [(c * a) % self.p for a in self.maps], check=False)

    def flat(self) -> np.ndarray:
        return np.concatenate([m.ravel() for m in self.maps]) if self.maps else la.zeros(0, 0).ravel()

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.maps)

    def is_iso(self) -> bool:
        return all(la.is_invertible(m, self.p) for m in self.maps)

    def is_mono(self) -> bool:
        return all(la.rank(m, self.p) == m.shape[1] for m in self.maps)

    def is_epi(self) -> bool:
        return all(la.rank(m, self.p) == m.shape[0] for m in self.maps)

    def inverse(self) -> RepMorphism:
        inv = [la.inverse(m, self.p) for m in self.maps]
        if any(m is None for m in inv):
            raise RepError("morphism is not invertible")
        return RepMorphism(self.target, self.source, inv, check=False)

    def power(self, k: int) -> RepMorphism:
        if self.source is not self.target:
            raise RepError("only endomorphisms have powers")
        out = identity(self.source)
        base = self
        while k:
            if k & 1:
                out = base @ out
            base = base @ base
            k >>= 1
        return out


@dataclass
class SES:
    """``0 -> A --iota--> B --pi--> C -> 0``."""

    iota: RepMorphism
    pi: RepMorphism

    @property
    def left(self) -> Rep:
        return self.iota.source

    @property
    def middle(self) -> Rep:
        return self.iota.target

    @property
    def right(self) -> Rep:
        return self.pi.target

    def check(self) -> None:
        if self.iota.target is not self.pi.source:
            raise RepError("maps of the sequence are not composable")
        if not self.iota.is_mono():
            raise RepError("left map of the sequence is not injective")
        if not self.pi.is_epi():
            raise RepError("right map of the sequence is not surjective")
        if not (self.pi @ self.iota).is_zero():
            raise RepError("composite of the sequence is nonzero")
        for a, b, c in zip(self.left.dims, self.middle.dims, self.right.dims):
            if a + c != b:
                raise RepError("sequence is not exact in the middle")


# -- constructions ---------------------------------------------------------


def _cache(pres: Presentation) -> dict:
    return pres.__dict__.setdefault("_repcache", {})


def zero_rep(pres: Presentation) -> Rep:
    return Rep(pres, [0] * pres.n, [la.zeros(0, 0)] * len(pres.arrows), name="0", check=False)


def simple(pres: Presentation, i: int) -> Rep:
    key = ("simple", i)
    cache = _cache(pres)
    if key not in cache:
        _check_vertex(pres, i)
        dims = [1 if v == i else 0 for v in range(pres.n)]
        mats = [la.zeros(dims[a.target], dims[a.source]) for a in pres.arrows]
        cache[key] = Rep(pres, dims, mats, name=f"S{pres.vertices[i]}", check=False)
    return cache[key]


def projective(pres: Presentation, i: int) -> Rep:
    """``P_i``: standard paths ``i -> v`` at ``v``, arrows extend paths."""
    key = ("projective", i)
    cache = _cache(pres)
    if key not in cache:
        _check_vertex(pres, i)
        dims = [len(pres.block(i, v)) for v in range(pres.n)]
        mats = []
        for k, a in enumerate(pres.arrows):
            src, tgt = pres.block(i, a.source), pres.block(i, a.target)
            m = la.zeros(len(tgt), len(src))
            for c, q in enumerate(src):
                path = pres.basis[q]
                m[:, c] = pres.normal_form(i, path.word + (k,))[tgt]
            mats.append(m)
        cache[key] = Rep(pres, dims, mats, name=f"P{pres.vertices[i]}", check=False)
    return cache[key]


def injective(pres: Presentation, i: int) -> Rep:
    """``I_i = D(P_i over the opposite algebra)``."""
    key = ("injective", i)
    cache = _cache(pres)
    if key not in cache:
        rep = dual(projective(opposite(pres), i))
        rep.name = f"I{pres.vertices[i]}"
        cache[key] = rep
    return cache[key]


def regular(pres: Presentation) -> Rep:
    rep = direct_sum([projective(pres, i) for i in range(pres.n)])[0]
    rep.name = "Lambda"
    return rep


def _check_vertex(pres: Presentation, i: int) -> None:
    if not 0 <= i < pres.n:
        raise RepError(f"no vertex with index {i}")


def direct_sum(reps: list[Rep]) -> tuple[Rep, list[RepMorphism], list[RepMorphism]]:
    """Direct sum with its canonical inclusions and projections."""
    if not reps:
        raise RepError("empty direct sum needs an algebra; use zero_rep")
    pres = reps[0].pres
    dims = [sum(r.dims[v] for r in reps) for v in range(pres.n)]
    mats = []
    for k, a in enumerate(pres.arrows):
        m = la.zeros(dims[a.target], dims[a.source])
        ro = co = 0
        for r in reps:
            m[ro:ro + r.dims[a.target], co:co + r.dims[a.source]] = r.mats[k]
            ro += r.dims[a.target]
            co += r.dims[a.source]
        mats.append(m)
    total = Rep(pres, dims, mats, name=" + ".join(r.name or "?" for r in reps), check=False)
    incs, projs = [], []
    offsets = [0] * pres.n
    for r in reps:
        inc_maps, proj_maps = [], []
        for v in range(pres.n):
            e = la.zeros(dims[v], r.dims[v])
            e[offsets[v]:offsets[v] + r.dims[v], :] = la.identity(r.dims[v])
            inc_maps.append(e)
            proj_maps.append(e.T.copy())
            offsets[v] += r.dims[v]
        incs.append(RepMorphism(r, total, inc_maps, check=False))
        projs.append(RepMorphism(total, r, proj_maps, check=False))
    return total, incs, projs


def identity(x: Rep) -> RepMorphism:
    return RepMorphism(x, x, [la.identity(d) for d in x.dims], check=False)


def zero_morphism(x: Rep, y: Rep) -> RepMorphism:
    return RepMorphism(x, y, [la.zeros(dy, dx) for dx, dy in zip(x.dims, y.dims)], check=False)


def morphism_from_flat(x: Rep, y: Rep, vec: np.ndarray) -> RepMorphism:
    maps, off = [], 0
    for dx, dy in zip(x.dims, y.dims):
        maps.append(vec[off:off + dx * dy].reshape(dy, dx))
        off += dx * dy
    return RepMorphism(x, y, maps, check=False)


# -- Hom -------------------------------------------------------------------


def hom_matrix(x: Rep, y: Rep) -> np.ndarray:
    """Columns are flattened basis morphisms ``x -> y``."""
    if x.pres is not y.pres:
        raise RepError("Hom between modules over different algebras")
    key = ("hom", id(y))
    hit = x._cache.get(key)
    if hit is not None and hit[0] is y:
        return hit[1]
    pres, p = x.pres, x.p
    offs, total = [], 0
    for v in range(pres.n):
        offs.append(total)
        total += x.dims[v] * y.dims[v]
    blocks = []
    for k, a in enumerate(pres.arrows):
        i, j = a.source, a.target
        rows = y.dims[j] * x.dims[i]
        if rows == 0:
            continue
        eq = la.zeros(rows, total)
        if x.dims[j]:
            eq[:, offs[j]:offs[j] + y.dims[j] * x.dims[j]] += np.kron(la.identity(y.dims[j]), x.mats[k].T)
        if y.dims[i]:
            eq[:, offs[i]:offs[i] + x.dims[i] * y.dims[i]] -= np.kron(y.mats[k], la.identity(x.dims[i]))
        blocks.append(eq % p)
    if total == 0:
        basis = la.zeros(0, 0)
    elif blocks:
        basis = la.nullspace(np.concatenate(blocks, axis=0), p)
    else:
        basis = la.identity(total)
    x._cache[key] = (y, basis)
    return basis


def compose_flat(fmat: np.ndarray, hmat: np.ndarray, src: Rep, mid: Rep, tgt: Rep) -> np.ndarray:
    """Columns ``flat(f_a h_b)`` (``a`` major) for flat bases ``f_a: mid -> tgt``, ``h_b: src -> mid``."""
    p = src.p
    nf, nh = fmat.shape[1], hmat.shape[1]
    blocks = []
    of = oh = 0
    for v in range(src.pres.n):
        dt, dm, ds = tgt.dims[v], mid.dims[v], src.dims[v]
        fv = fmat[of:of + dt * dm].T.reshape(nf, dt, dm)
        hv = hmat[oh:oh + dm * ds].T.reshape(nh, dm, ds)
        of += dt * dm
        oh += dm * ds
        if dt * ds == 0:
            continue
        if dm == 0:
            blocks.append(np.zeros((nf * nh, dt * ds), dtype=np.int64))
            continue
        blocks.append((np.einsum("aij,bjk->abik", fv, hv) % p).reshape(nf * nh, dt * ds))
    if not blocks:
        return la.zeros(0, nf * nh)
    return np.concatenate(blocks, axis=1).T.copy()


def hom(x: Rep, y: Rep) -> list[RepMorphism]:
    """Basis of ``Hom(x, y)``."""
    basis = hom_matrix(x, y)
    return [morphism_from_flat(x, y, basis[:, c]) for c in range(basis.shape[1])]


def hom_dim(x: Rep, y: Rep) -> int:
    return hom_matrix(x, y).shape[1]


def combine(x: Rep, y: Rep, coeffs) -> RepMorphism:
    """The morphism with the given coordinates in the Hom basis."""
    basis = hom_matrix(x, y)
    vec = la.mul(basis, np.asarray(coeffs, dtype=np.int64).reshape(-1, 1), x.p).ravel()
    return morphism_from_flat(x, y, vec)


# -- sub and quotient modules ----------------------------------------------


def _as_columns(b, rows: int) -> np.ndarray:
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 2 and b.shape[0] == rows:
        return b
    if rows == 0:
        return la.zeros(0, 0)
    return b.reshape(rows, -1)


def submodule(x: Rep, bases, name: str = "", check: bool = True) -> tuple[Rep, RepMorphism]:
    """The submodule with vertexwise column bases ``bases`` and its inclusion."""
    p = x.p
    bases = [_as_columns(b, x.dims[v]) % p for v, b in enumerate(bases)]
    linv = [la.left_inverse(b, p) for b in bases]
    mats = []
    for k, a in enumerate(x.pres.arrows):
        moved = la.mul(x.mats[k], bases[a.source], p)
        m = la.mul(linv[a.target], moved, p)
        if check and not np.array_equal(la.mul(bases[a.target], m, p), moved):
            raise RepError(f"subspace is not stable under arrow {a.label}")
        mats.append(m)
    sub = Rep(x.pres, [b.shape[1] for b in bases], mats, name=name, check=False)
    return sub, RepMorphism(sub, x, bases, check=False)


def quotient(x: Rep, bases, name: str = "") -> tuple[Rep, RepMorphism]:
    """``x / U`` for a submodule given by vertexwise column bases, with the projection."""
    p = x.p
    projs, sections = [], []
    for v, u in enumerate(bases):
        u = _as_columns(u, x.dims[v]) % p
        w = la.complement(u, p)
        full = np.concatenate([u, w], axis=1)
        inv = la.inverse(full, p)
        projs.append(inv[u.shape[1]:].copy())
        sections.append(w)
    mats = [la.mul(la.mul(projs[a.target], x.mats[k], p), sections[a.source], p)
            for k, a in enumerate(x.pres.arrows)]
    q = Rep(x.pres, [w.shape[1] for w in sections], mats, name=name, check=False)
    return q, RepMorphism(x, q, projs, check=False)


def kernel(f: RepMorphism) -> tuple[Rep, RepMorphism]:
    return submodule(f.source, [la.nullspace(m, f.p) for m in f.maps], check=False)


def image(f: RepMorphism) -> tuple[Rep, RepMorphism]:
    return submodule(f.target, [la.column_basis(m, f.p) for m in f.maps], check=False)


def cokernel(f: RepMorphism) -> tuple[Rep, RepMorphism]:
    return quotient(f.target, [la.column_basis(m, f.p) for m in f.maps])


def generated_submodule(x: Rep, elements: list[tuple[int, np.ndarray]]) -> tuple[Rep, RepMorphism]:
    """Smallest submodule containing the given ``(vertex, vector)`` elements."""
    p = x.p
    spans = [la.zeros(d, 0) for d in x.dims]
    todo = list(elements)
    while todo:
        v, vec = todo.pop()
        vec = np.asarray(vec, dtype=np.int64).reshape(-1, 1) % p
        if la.in_span(spans[v], vec, p):
            continue
        spans[v] = np.concatenate([spans[v], vec], axis=1)
        for k in x.pres.arrows_from(v):
            todo.append((x.pres.arrows[k].target, la.mul(x.mats[k], vec, p)))
    return submodule(x, spans, check=False)


def radical_bases(x: Rep) -> list[np.ndarray]:
    p = x.p
    out = []
    for v in range(x.pres.n):
        ins = [x.mats[k] for k in x.pres.arrows_to(v) if x.mats[k].size]
        out.append(la.column_basis(np.concatenate(ins, axis=1), p) if ins else la.zeros(x.dims[v], 0))
    return out


def socle_bases(x: Rep) -> list[np.ndarray]:
    p = x.p
    out = []
    for v in range(x.pres.n):
        outs = [x.mats[k] for k in x.pres.arrows_from(v) if x.mats[k].shape[0]]
        if outs and x.dims[v]:
            out.append(la.nullspace(np.concatenate(outs, axis=0), p))
        else:
            out.append(la.identity(x.dims[v]))
    return out


def radical(x: Rep) -> tuple[Rep, RepMorphism]:
    return submodule(x, radical_bases(x), name=f"rad({x.name})" if x.name else "", check=False)


def socle(x: Rep) -> tuple[Rep, RepMorphism]:
    return submodule(x, socle_bases(x), name=f"soc({x.name})" if x.name else "", check=False)


def top(x: Rep) -> tuple[Rep, RepMorphism]:
    return quotient(x, radical_bases(x), name=f"top({x.name})" if x.name else "")


def radical_power(x: Rep, k: int) -> tuple[Rep, RepMorphism]:
    """``rad^k x`` with its inclusion into ``x``."""
    sub, inc = x, identity(x)
    for _ in range(k):
        sub, step = radical(sub)
        inc = inc @ step
    return sub, inc


def socle_power(x: Rep, k: int) -> tuple[Rep, RepMorphism]:
    """``soc^k x``: preimage of ``soc`` of ``x / soc^(k-1) x``."""
    p = x.p
    bases = [la.zeros(d, 0) for d in x.dims]
    for _ in range(k):
        q, proj = quotient(x, bases)
        sb = socle_bases(q)
        new = []
        for v in range(x.pres.n):
            # preimage of soc(q)_v under proj_v
            pre = la.nullspace(np.concatenate([proj.maps[v], (-sb[v]) % p], axis=1), p)[: x.dims[v]]
            new.append(la.column_basis(pre, p) if pre.size else la.zeros(x.dims[v], 0))
        bases = new
    return submodule(x, bases, check=False)


# -- duality ---------------------------------------------------------------


def dual(x: Rep) -> Rep:
    """``D x = Hom_k(x, k)``, a module over the opposite algebra."""
    op = opposite(x.pres)
    name = f"D({x.name})" if x.name else ""
    return Rep(op, x.dims, [m.T.copy() for m in x.mats], name=name, check=False)


def dual_morphism(f: RepMorphism, source: Rep | None = None, target: Rep | None = None) -> RepMorphism:
    """``D f: D(target) -> D(source)``; pass existing duals to reuse them."""
    ds = source if source is not None else dual(f.target)
    dt = target if target is not None else dual(f.source)
    return RepMorphism(ds, dt, [m.T.copy() for m in f.maps], check=False)


# -- projective covers, syzygies, transpose --------------------------------


def free_map(pres: Presentation, vertices: list[int], y: Rep, elements,
             source: Rep | None = None) -> tuple[Rep, RepMorphism]:
    """``(+)_s P_{v_s} -> y`` sending the idempotent of summand ``s`` to ``elements[s]``.

    ``source`` reuses an existing copy of that direct sum (e.g. a cover's projective).
    """
    if not vertices:
        z = source if source is not None else zero_rep(pres)
        return z, zero_morphism(z, y)
    if source is not None:
        total = source
    elif len(vertices) == 1:
        total = projective(pres, vertices[0])
    else:
        total = direct_sum([projective(pres, v) for v in vertices])[0]
    p = pres.p
    maps = []
    for v in range(pres.n):
        cols = []
        for s, i in enumerate(vertices):
            el = np.asarray(elements[s], dtype=np.int64).reshape(-1, 1)
            for q in pres.block(i, v):
                cols.append(la.mul(y.act(pres.basis[q].word, source=i), el, p))
        maps.append(np.concatenate(cols, axis=1) if cols else la.zeros(y.dims[v], 0))
    return total, RepMorphism(total, y, maps, check=False)


@dataclass
class Cover:
    """A projective cover ``0 -> omega --iota--> P --pi--> x -> 0``."""

    projective: Rep
    pi: RepMorphism
    vertices: list[int]
    generators: list[np.ndarray]
    omega: Rep
    iota: RepMorphism

    def ses(self) -> SES:
        return SES(self.iota, self.pi)


def projective_cover(x: Rep) -> Cover:
    hit = x._cache.get("cover")
    if hit is not None:
        return hit
    pres, p = x.pres, x.p
    rad = radical_bases(x)
    vertices, gens = [], []
    for v in range(pres.n):
        w = la.complement(rad[v], p)
        for c in range(w.shape[1]):
            vertices.append(v)
            gens.append(w[:, c])
    proj, pi = free_map(pres, vertices, x, gens)
    omega, iota = kernel(pi)
    if x.name:
        omega.name = f"Omega({x.name})"
    prad = radical_bases(proj)
    for v in range(pres.n):
        if not la.in_span(prad[v], iota.maps[v], p):
            raise RepError("projective cover is not minimal")  # cannot happen
    cover = Cover(proj, pi, vertices, gens, omega, iota)
    x._cache["cover"] = cover
    return cover


def syzygy(x: Rep) -> Rep:
    return projective_cover(x).omega


def cosyzygy(x: Rep) -> Rep:
    out = dual(syzygy(dual(x)))
    if x.name:
        out.name = f"Omega^-1({x.name})"
    return out


def is_projective(x: Rep) -> bool:
    return syzygy(x).is_zero()


def is_injective(x: Rep) -> bool:
    return syzygy(dual(x)).is_zero()


def _transfer(pres: Presentation, j: int, i: int) -> np.ndarray:
    """Matrix sending paths ``j -> i`` of ``pres`` to reversed paths of the opposite."""
    key = ("transfer", j, i)
    cache = _cache(pres)
    if key not in cache:
        op = opposite(pres)
        src = pres.block(j, i)
        tgt = op.block(i, j)
        m = la.zeros(len(tgt), len(src))
        for c, q in enumerate(src):
            word = tuple(reversed(pres.basis[q].word))
            m[:, c] = op.normal_form(i, word)[tgt]
        cache[key] = m
    return cache[key]


@dataclass
class Presentation2:
    """Minimal projective presentation ``P1 --g--> P0 --> x -> 0`` and its dual."""

    p0_vertices: list[int]
    p1_vertices: list[int]
    g_star: RepMorphism  # P0* -> P1* over the opposite algebra


def minimal_presentation(x: Rep) -> Presentation2:
    hit = x._cache.get("presentation")
    if hit is not None:
        return hit
    pres, p = x.pres, x.p
    op = opposite(pres)
    c0 = projective_cover(x)
    c1 = projective_cover(c0.omega)
    # g(e_s) = iota(y_s), split into the summands of P0.
    p1_dual = [projective(op, i) for i in c1.vertices]
    if p1_dual:
        p1_star = direct_sum(p1_dual)[0] if len(p1_dual) > 1 else p1_dual[0]
    else:
        p1_star = zero_rep(op)
    elements = []
    for t, j in enumerate(c0.vertices):
        parts = []
        for s, i in enumerate(c1.vertices):
            y = la.mul(c0.iota.maps[i], c1.generators[s].reshape(-1, 1), p).ravel()
            # coordinates of y in (P0)_i: summands of P0 contribute block(j', i) each
            off = sum(len(pres.block(jj, i)) for jj in c0.vertices[:t])
            comp = y[off:off + len(pres.block(j, i))]
            parts.append(la.mul(_transfer(pres, j, i), comp.reshape(-1, 1), p).ravel())
        elements.append(np.concatenate(parts) if parts else la.zeros(0, 0).ravel())
    if c0.vertices:
        _, g_star = free_map(op, c0.vertices, p1_star, elements)
    else:
        z = zero_rep(op)
        g_star = zero_morphism(z, p1_star)
    out = Presentation2(c0.vertices, c1.vertices, g_star)
    x._cache["presentation"] = out
    return out


def projective_summand_free(x: Rep) -> bool:
    """True iff ``x`` has no nonzero projective direct summand.

    With a minimal presentation ``P1 -> P0 -> x``, a projective summand of
    ``x`` shows up as a summand of ``P0*`` killed by the dual map, i.e. as
    kernel of ``g*`` outside the radical of ``P0*``.
    """
    g_star = minimal_presentation(x).g_star
    ker, inc = kernel(g_star)
    rad = radical_bases(g_star.source)
    return all(la.in_span(rad[v], inc.maps[v], x.p) for v in range(x.pres.n))


def injective_summand_free(x: Rep) -> bool:
    return projective_summand_free(dual(x))


def _offending(x: Rep, projective_side: bool) -> str:
    from .krullschmidt import decompose  # local import: krullschmidt depends on this module

    test = is_projective if projective_side else is_injective
    for part in decompose(x).parts:
        if test(part.rep):
            return str(part.rep.dims)
    return "?"


def transpose(x: Rep) -> Rep:
    """``Tr x``, a module over the opposite algebra; ``x`` must be projective-summand free."""
    if not projective_summand_free(x):
        raise RepError(f"transpose needs a module without projective summands; "
                       f"{x.name or 'input'} has a projective summand with dimension vector "
                       f"{_offending(x, True)}")
    out = cokernel(minimal_presentation(x).g_star)[0]
    if x.name:
        out.name = f"Tr({x.name})"
    return out


def tau(x: Rep) -> Rep:
    """Auslander-Reiten translate ``D Tr x``."""
    if not projective_summand_free(x):
        raise RepError(f"tau is undefined on projective summands; {x.name or 'input'} has one "
                       f"with dimension vector {_offending(x, True)}")
    out = dual(transpose(x))
    out.name = f"tau({x.name})" if x.name else ""
    return out


def tau_inverse(x: Rep) -> Rep:
    """Inverse translate ``Tr D x``."""
    dx = dual(x)
    if not projective_summand_free(dx):
        raise RepError(f"tau^-1 is undefined on injective summands; {x.name or 'input'} has one "
                       f"with dimension vector {_offending(x, False)}")
    out = transpose(dx)
    out.name = f"tau^-1({x.name})" if x.name else ""
    return out


# -- Nakayama functor --------------------------------------------------------


def is_selfinjective(pres: Presentation) -> bool:
    cache = _cache(pres)
    if "selfinjective" not in cache:
        cache["selfinjective"] = nakayama_permutation(pres, strict=False) is not None
    return cache["selfinjective"]


def nakayama_permutation(pres: Presentation, strict: bool = True) -> list[int] | None:
    """``sigma`` with ``nu P_i = I_i ~ P_sigma(i)``; ``None`` if not selfinjective."""
    from .krullschmidt import is_isomorphic

    cache = _cache(pres)
    if "nakayama" not in cache:
        sigma = []
        for i in range(pres.n):
            inj = injective(pres, i)
            match = [j for j in range(pres.n) if is_isomorphic(inj, projective(pres, j))]
            if not match:
                sigma = None
                break
            sigma.append(match[0])
        cache["nakayama"] = sigma
    sigma = cache["nakayama"]
    if sigma is None and strict:
        raise RepError("algebra is not selfinjective")
    return sigma


def nakayama(x: Rep) -> Rep:
    """``nu x = D Hom(x, Lambda)``, via a projective presentation (right exact)."""
    nakayama_permutation(x.pres)
    g_star = minimal_presentation(x).g_star
    d = dual_morphism(g_star)
    out = cokernel(d)[0]
    out.name = f"nu({x.name})" if x.name else ""
    return out
