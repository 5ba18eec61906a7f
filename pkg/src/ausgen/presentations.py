"""Finite-dimensional quotients kQ/I of path algebras over F_p.

Paths are written diagrammatically: in the word ``a*b`` the arrow ``a`` is
traversed first, so ``a*b`` is defined when ``target(a) == source(b)``.

All paths of length >= ``bound`` are assumed to lie in the ideal, which makes
the basis computation plain linear algebra on the finite set of shorter paths.
The basis consists of *standard paths*: the non-pivot columns of the reduced
ideal span, with longer paths ordered first so that every relation rewrites
its longest terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la

__all__ = [
    "Arrow",
    "Path",
    "Presentation",
    "PresentationError",
    "build",
    "opposite",
    "HypothesisReport",
    "validate_hypotheses",
]


class PresentationError(ValueError):
    """Malformed quiver or relation set."""


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Path:
    """A path ``source -> target``; ``word`` holds arrow indices, first arrow first."""

    source: int
    target: int
    word: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.word)


# A relation is a list of (coefficient, word) pairs.
Relation = tuple[tuple[int, tuple[int, ...]], ...]


class Presentation:
    """A bounded path-algebra presentation with its standard path basis.

    Vertices and arrows are addressed by dense integer indices; ``vertices``
    and ``arrows[k].label`` keep the user-facing names.
    """

    def __init__(
        self,
        vertices: list[str],
        arrows: list[Arrow],
        relations: list[Relation],
        bound: int,
        p: int,
        name: str = "",
    ):
        self.p = la.check_prime(p)
        if bound < 1:
            raise PresentationError("nilpotency bound must be >= 1")
        labels = [a.label for a in arrows]
        if len(set(labels)) != len(labels):
            raise PresentationError("arrow labels must be unique")
        n = len(vertices)
        for a in arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise PresentationError(f"arrow {a.label} has an endpoint outside the vertex set")
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self.bound = bound
        self.name = name
        self.relations = tuple(self._check_relation(r) for r in relations)
        self._opposite: Presentation | None = None
        self._compute_basis()

    # -- construction ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def word_endpoints(self, word: tuple[int, ...]) -> tuple[int, int]:
        if not word:
            raise PresentationError("empty word has no endpoints")
        for a, b in zip(word, word[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                raise PresentationError(
                    "non-composable path "
                    + "*".join(self.arrows[k].label for k in word)
                    + f": {self.arrows[a].label} ends at {self.vertices[self.arrows[a].target]}"
                    + f" but {self.arrows[b].label} starts at {self.vertices[self.arrows[b].source]}"
                )
        return self.arrows[word[0]].source, self.arrows[word[-1]].target

    def _check_relation(self, rel) -> Relation:
        terms = []
        ends = set()
        for coef, word in rel:
            word = tuple(word)
            if not word:
                raise PresentationError("relation terms must be nonempty paths")
            ends.add(self.word_endpoints(word))
            terms.append((int(coef) % self.p, word))
        if len(ends) > 1:
            raise PresentationError(
                "relation terms are not parallel: "
                + " vs ".join(
                    f"{self.vertices[s]}->{self.vertices[t]}" for s, t in sorted(ends)
                )
            )
        return tuple(terms)

    def _paths_by_length(self, maxlen: int) -> list[list[Path]]:
        levels = [[Path(i, i, ()) for i in range(self.n)]]
        for _ in range(maxlen):
            nxt = []
            for q in levels[-1]:
                for k, a in enumerate(self.arrows):
                    if a.source == q.target:
                        nxt.append(Path(q.source, a.target, q.word + (k,)))
            levels.append(nxt)
        return levels

    def _sort_key(self, q: Path):
        return (-len(q), tuple(self.arrows[k].label for k in q.word), q.source)

    def _compute_basis(self) -> None:
        levels = self._paths_by_length(self.bound)
        short = [q for lvl in levels[: self.bound] for q in lvl]
        short.sort(key=self._sort_key)
        self._long_paths = levels[self.bound]
        col = {(q.source, q.word): c for c, q in enumerate(short)}
        ncols = len(short)

        rows = []
        for rel in self.relations:
            s, t = self.word_endpoints(rel[0][1])
            shortest = min(len(w) for _, w in rel)
            for lu in range(self.bound - shortest):
                for u in levels[lu]:
                    if u.target != s:
                        continue
                    for lv in range(self.bound - shortest - lu):
                        for v in levels[lv]:
                            if v.source != t:
                                continue
                            row = np.zeros(ncols, dtype=np.int64)
                            for coef, w in rel:
                                full = u.word + w + v.word
                                if len(full) < self.bound:
                                    row[col[(u.source, full)]] += coef
                            if np.any(row % self.p):
                                rows.append(row % self.p)
        if rows:
            red, pivots = la.rref(np.array(rows), self.p)
            red = red[: len(pivots)]
        else:
            red, pivots = np.zeros((0, ncols), dtype=np.int64), []

        for c in pivots:
            if len(short[c]) == 0:
                raise PresentationError(
                    f"relations force the idempotent at vertex {self.vertices[short[c].source]} to vanish"
                )

        pivot_set = set(pivots)
        std = [c for c in range(ncols) if c not in pivot_set]
        # Order the basis by (source, target, length) for readable modules.
        std.sort(key=lambda c: (short[c].source, short[c].target, len(short[c]), self._sort_key(short[c])))
        self.basis: tuple[Path, ...] = tuple(short[c] for c in std)
        index_of_col = {c: k for k, c in enumerate(std)}
        self._nf: dict[tuple[int, tuple[int, ...]], np.ndarray] = {}
        dim = len(std)
        for c, q in enumerate(short):
            vec = np.zeros(dim, dtype=np.int64)
            if c in index_of_col:
                vec[index_of_col[c]] = 1
            else:
                r = pivots.index(c)
                for c2 in std:
                    if red[r, c2]:
                        vec[index_of_col[c2]] = (-red[r, c2]) % self.p
            self._nf[(q.source, q.word)] = vec
        self._block: dict[tuple[int, int], list[int]] = {
            (i, j): [] for i in range(self.n) for j in range(self.n)
        }
        for k, q in enumerate(self.basis):
            self._block[(q.source, q.target)].append(k)

    # -- queries -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def block(self, i: int, j: int) -> list[int]:
        """Global indices of the standard paths ``i -> j``."""
        return self._block[(i, j)]

    def normal_form(self, source: int, word: tuple[int, ...]) -> np.ndarray:
        """Coordinates of a path in the standard basis (zero for long paths)."""
        key = (source, tuple(word))
        if key in self._nf:
            return self._nf[key]
        if word:
            self.word_endpoints(word)
            if self.arrows[word[0]].source != source:
                raise PresentationError("word does not start at the given vertex")
        return np.zeros(self.dim, dtype=np.int64)

    def multiply(self, x: int, y: int) -> np.ndarray:
        """Product of standard paths ``x`` then ``y`` in the standard basis."""
        a, b = self.basis[x], self.basis[y]
        if a.target != b.source:
            return np.zeros(self.dim, dtype=np.int64)
        return self.normal_form(a.source, a.word + b.word)

    def path_label(self, q: Path) -> str:
        if not q.word:
            return f"e{self.vertices[q.source]}"
        return "*".join(self.arrows[k].label for k in q.word)

    @cached_property
    def long_paths(self) -> tuple[Path, ...]:
        """All paths of length exactly ``bound``; they must act as zero."""
        return tuple(self._long_paths)

    def arrows_from(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.source == v]

    def arrows_to(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.target == v]

    def opposite(self) -> Presentation:
        return opposite(self)

    def radical_layers(self) -> list[int]:
        """Dimension of the span of standard paths of each length."""
        out = [0] * self.bound
        for q in self.basis:
            out[len(q)] += 1
        return out

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Presentation{tag}: {self.n} vertices, {len(self.arrows)} arrows, dim {self.dim}, p={self.p}>"


def build(
    vertices: list[str],
    arrows: list[tuple[str, str, str]],
    relations: list[list[tuple[int, list[str]]]],
    bound: int,
    p: int = 2,
    name: str = "",
) -> Presentation:
    """Build a presentation from user labels.

    ``arrows`` holds ``(label, source, target)`` with vertex names;
    ``relations`` holds lists of ``(coefficient, [arrow labels])``.
    """
    vidx = {v: k for k, v in enumerate(vertices)}
    arr = []
    for label, s, t in arrows:
        if s not in vidx or t not in vidx:
            raise PresentationError(f"arrow {label} uses an unknown vertex")
        arr.append(Arrow(label, vidx[s], vidx[t]))
    aidx = {a.label: k for k, a in enumerate(arr)}
    rels = []
    for rel in relations:
        terms = []
        for coef, word in rel:
            missing = [w for w in word if w not in aidx]
            if missing:
                raise PresentationError(f"unknown arrow {missing[0]} in relation")
            terms.append((coef, tuple(aidx[w] for w in word)))
        rels.append(terms)
    return Presentation(list(vertices), arr, rels, bound, p, name)


def opposite(pres: Presentation) -> Presentation:
    """The opposite algebra: arrows and relation words reversed.

    Cached in both directions, so ``opposite(opposite(A)) is A``.
    """
    if pres._opposite is not None:
        return pres._opposite
    arrows = [Arrow(a.label, a.target, a.source) for a in pres.arrows]
    rels = [[(c, tuple(reversed(w))) for c, w in rel] for rel in pres.relations]
    op = Presentation(list(pres.vertices), arrows, rels, pres.bound, pres.p,
                      name=f"{pres.name}^op" if pres.name else "")
    op._opposite = pres
    pres._opposite = op
    return op



@dataclass
class HypothesisReport:
    """Standing hypotheses for the mutation machinery.

    Infinite representation type is not decidable here and is reported as
    ``"assumed"``.
    """

    rad_cube_zero: bool
    selfinjective: bool
    weakly_symmetric: bool
    nakayama_permutation: list[int] | None
    infinite_type: str = "assumed"

    @property
    def ok(self) -> bool:
        return self.rad_cube_zero and self.selfinjective

    def to_json(self) -> dict:
        return {
            "rad_cube_zero": self.rad_cube_zero,
            "selfinjective": self.selfinjective,
            "weakly_symmetric": self.weakly_symmetric,
            "nakayama_permutation": self.nakayama_permutation,
            "infinite_type": self.infinite_type,
        }


def validate_hypotheses(pres: Presentation) -> HypothesisReport:
    """Check ``rad^3 = 0`` and selfinjectivity; report weak symmetry."""
    from .krullschmidt import is_isomorphic
    from .repmod import nakayama_permutation, projective, socle, top

    hit = pres.__dict__.get("_hypotheses")
    if hit is not None:
        return hit
    cube = all(len(q) < 3 for q in pres.basis)
    sigma = nakayama_permutation(pres, strict=False)
    weak = all(is_isomorphic(socle(projective(pres, i))[0], top(projective(pres, i))[0])
               for i in range(pres.n))
    out = HypothesisReport(cube, sigma is not None, weak, sigma)
    pres._hypotheses = out
    return out
