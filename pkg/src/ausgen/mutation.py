"""Mutation of generator-cogenerators ``M -> M* = M/N (+) tau^-1 N``.

Entries of a :class:`GeneratorSet` remember where they sit in their
``tau``-orbit: ``rep ~ tau^-shift(base)``.  With the canonical bases the
*level* of an entry is ``base_level + 2 * shift`` (simples 0, ``P/soc P`` 1,
``rad P`` -1).  In the AR component through the simples an irreducible map
raises the level by one, so a generator set whose non-projective part is
known to sit at level 2 or more is in *slice form*: the short test of the
radical-cube-zero theory applies there.  Elsewhere only the general
relative-syzygy criterion is used.

Every decision is recorded in a :class:`MutationCertificate` whose stored
witnesses suffice to recompute the verdict (:func:`recheck`).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace

import networkx as nx
import numpy as np

from .artheory import almost_split_starting_at
from .krullschmidt import DEFAULT_SEED, decompose, find_isomorphism, fingerprint, in_add
from .presentations import Presentation, opposite, validate_hypotheses
from .relhom import minimal_approximation, stable_hom
from .repmod import (
    Rep,
    RepError,
    dual,
    is_injective,
    is_projective,
    projective,
    quotient,
    radical,
    radical_power,
    regular,
    simple,
    socle_power,
    syzygy,
    tau,
    tau_inverse,
    top,
)

__all__ = [
    "Entry",
    "GeneratorSet",
    "MutationCertificate",
    "canonical_M0",
    "canonical_L0",
    "shift",
    "mutate",
    "mutate_via_shift",
    "recheck",
    "enumerate_family",
    "Family",
    "reach",
]

BASE_LEVEL = {"S": 0, "Psoc": 1, "rad": -1}


@dataclass(frozen=True)
class Entry:
    rep: Rep
    base: Rep | None  # tau-orbit anchor; None when unknown
    base_label: str
    kind: str  # "P", "S", "Psoc", "rad" or "other"
    shift: int = 0
    projective: bool = False
    injective: bool = False

    @property
    def level(self) -> int | None:
        if self.kind not in BASE_LEVEL:
            return None
        return BASE_LEVEL[self.kind] + 2 * self.shift

    @property
    def label(self) -> str:
        k = self.shift
        if k == 0:
            return self.base_label
        inner = self.base_label if "/" not in self.base_label else f"({self.base_label})"
        return f"tau^{-k}{inner}" if abs(k) != 1 else (f"tau^-1{inner}" if k == 1 else f"tau{inner}")

    def to_json(self, matrices: bool = False) -> dict:
        out = {"label": self.label, "dims": list(self.rep.dims), "projective": self.projective,
               "injective": self.injective, "level": self.level}
        if matrices:
            out["arrows"] = self.rep.to_json()["arrows"]
        return out


@dataclass
class GeneratorSet:
    pres: Presentation
    entries: list[Entry]
    log: list[str] = field(default_factory=list)

    @property
    def reps(self) -> list[Rep]:
        return [e.rep for e in self.entries]

    @property
    def nonprojective(self) -> list[Entry]:
        return [e for e in self.entries if not e.projective]

    def labels(self) -> list[str]:
        return [e.label for e in self.entries]

    def key(self) -> tuple:
        return tuple(sorted(e.rep.dims for e in self.entries))

    def index(self, label_or_rep) -> int:
        for k, e in enumerate(self.entries):
            if e.rep is label_or_rep or e.label == label_or_rep:
                return k
        raise RepError(f"no entry {label_or_rep!r} in the generator set")

    def slice_form(self) -> bool:
        levels = [e.level for e in self.nonprojective]
        return bool(levels) and all(lv is not None and lv >= 2 for lv in levels)

    def min_level(self) -> int | None:
        levels = [e.level for e in self.nonprojective]
        return min(levels) if levels and None not in levels else None

    def equivalent(self, other: GeneratorSet, seed: int = DEFAULT_SEED) -> bool:
        """Entrywise isomorphism (as multisets)."""
        if self.key() != other.key():
            return False
        used = [False] * len(other.entries)
        for e in self.entries:
            for k, f in enumerate(other.entries):
                if used[k] or f.rep.dims != e.rep.dims:
                    continue
                if (f.base is e.base and f.shift == e.shift and e.base is not None) or (
                        fingerprint(f.rep) == fingerprint(e.rep) and find_isomorphism(e.rep, f.rep, seed)):
                    used[k] = True
                    break
            else:
                return False
        return True

    def to_json(self, matrices: bool = False) -> dict:
        return {"entries": [e.to_json(matrices) for e in self.entries], "log": list(self.log)}


# -- tau orbits --------------------------------------------------------------


def _orbit(pres: Presentation) -> dict:
    return pres.__dict__.setdefault("_repcache", {}).setdefault("orbit", {})


def orbit_member(base: Rep, k: int) -> Rep:
    """``tau^-k(base)``, cached so that repeated shifts return the same object."""
    cache = _orbit(base.pres)
    cache.setdefault((id(base), 0), base)
    if (id(base), k) in cache:
        return cache[(id(base), k)]
    step = 1 if k > 0 else -1
    j = 0
    while (id(base), j + step) in cache and j != k:
        j += step
    cur = cache[(id(base), j)]
    while j != k:
        cur = tau_inverse(cur) if step > 0 else tau(cur)
        j += step
        cache[(id(base), j)] = cur
    return cur


def _moved(e: Entry, i: int) -> Entry:
    if e.projective or i == 0:
        return e
    if e.base is None:
        rep = e.rep
        for _ in range(abs(i)):
            rep = tau_inverse(rep) if i > 0 else tau(rep)
        return replace(e, rep=rep, base=None, shift=e.shift + i)
    rep = orbit_member(e.base, e.shift + i)
    return replace(e, rep=rep, shift=e.shift + i)


def shift(gens: GeneratorSet, i: int) -> GeneratorSet:
    """Apply ``tau^-i`` to every non-projective entry."""
    if i == 0:
        return gens
    entries = [_moved(e, i) for e in gens.entries]
    return GeneratorSet(gens.pres, entries, gens.log + [f"shift {i}"])


# -- canonical generators ----------------------------------------------------


def _entry(pres: Presentation, rep: Rep, label: str, kind: str) -> Entry:
    rep.name = label
    proj = is_projective(rep)
    inj = is_injective(rep)
    return Entry(rep, None if proj else rep, label, "P" if proj else kind, 0, proj, inj)


def _label_parts(pres: Presentation, module: Rep, named: list[tuple[Rep, str, str]],
                 seed: int) -> list[tuple[Rep, str, str]]:
    out = []
    for part in decompose(module, seed).parts:
        for rep, label, kind in named:
            if rep.dims == part.rep.dims and find_isomorphism(part.rep, rep, seed) is not None:
                out.append((rep, label, kind))
                break
        else:
            out.append((part.rep, f"X{len(out)}", "other"))
    return out


def _merge(pres: Presentation, found: list[tuple[Rep, str, str]], seed: int) -> list[Entry]:
    entries: list[Entry] = []
    seen: list[Rep] = []
    for rep, label, kind in found:
        if any(s is rep or (s.dims == rep.dims and find_isomorphism(s, rep, seed)) for s in seen):
            continue
        seen.append(rep)
        entries.append(_entry(pres, rep, label, kind))
    order = {"P": 0, "Psoc": 1, "rad": 1, "S": 2, "other": 3}
    entries.sort(key=lambda e: (order[e.kind], e.base_label))
    return entries


def _require(pres: Presentation) -> None:
    rep = validate_hypotheses(pres)
    if not rep.selfinjective:
        raise RepError("canonical generators need a selfinjective algebra")
    proj = [is_projective(projective(pres, i)) and is_injective(projective(pres, i)) for i in range(pres.n)]
    if not all(proj):  # projectivity and injectivity coincide for selfinjective algebras
        raise RepError("projective module that is not injective in a selfinjective algebra")


def canonical_M0(pres: Presentation, seed: int = DEFAULT_SEED) -> GeneratorSet:
    """``Lambda (+) Lambda/soc Lambda (+) Lambda/soc^2 Lambda``, decomposed and deduplicated."""
    cache = pres.__dict__.setdefault("_repcache", {})
    if ("M0", seed) in cache:
        return cache[("M0", seed)]
    _require(pres)
    names = [v for v in pres.vertices]
    named = []
    for i, v in enumerate(names):
        pi = projective(pres, i)
        named.append((pi, f"P{v}", "P"))
    for i, v in enumerate(names):
        pi = projective(pres, i)
        named.append((quotient(pi, socle_power(pi, 1)[1].maps)[0], f"P{v}/soc", "Psoc"))
    for i, v in enumerate(names):
        named.append((simple(pres, i), f"S{v}", "S"))
    lam = regular(pres)
    found = []
    for k in range(3):
        module = lam if k == 0 else quotient(lam, socle_power(lam, k)[1].maps)[0]
        found.extend(_label_parts(pres, module, named, seed))
    out = GeneratorSet(pres, _merge(pres, found, seed), ["M0"])
    cache[("M0", seed)] = out
    return out


def canonical_L0(pres: Presentation, seed: int = DEFAULT_SEED) -> GeneratorSet:
    """``Lambda (+) rad Lambda (+) rad^2 Lambda``, decomposed and deduplicated."""
    cache = pres.__dict__.setdefault("_repcache", {})
    if ("L0", seed) in cache:
        return cache[("L0", seed)]
    _require(pres)
    named = []
    for i, v in enumerate(pres.vertices):
        named.append((projective(pres, i), f"P{v}", "P"))
    for i, v in enumerate(pres.vertices):
        named.append((radical(projective(pres, i))[0], f"radP{v}", "rad"))
    for i, v in enumerate(pres.vertices):
        named.append((simple(pres, i), f"S{v}", "S"))
    lam = regular(pres)
    found = []
    for k in range(3):
        module = lam if k == 0 else radical_power(lam, k)[0]
        found.extend(_label_parts(pres, module, named, seed))
    out = GeneratorSet(pres, _merge(pres, found, seed), ["L0"])
    cache[("L0", seed)] = out
    return out


# -- certificates -------------------------------------------------------------


@dataclass
class MutationCertificate:
    generator: list[str]
    position: str
    verdict: str  # "accept", "reject" or "not-applicable"
    branch: str | None  # "stable-hom", "syzygy-membership" or "relative-syzygy"
    reason: str = ""
    shift: int = 0
    slice_form: bool = False
    middle_term: dict | None = None
    stable_hom_dim: int | None = None
    stable_hom_dim_unshifted: int | None = None
    omega: dict | None = None
    rel_syzygy: dict | None = None
    top_coverage: list[str] | None = None
    general_verdict: str | None = None
    fast_verdict: str | None = None
    gen_dims: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def _membership(module: Rep, gens: list[Rep], labels: list[str], seed: int) -> dict:
    mult = in_add(module, gens, seed)
    return {
        "dims": list(module.dims),
        "summands": [list(d) for d in decompose(module, seed).dim_vectors()] if module.dim else [],
        "multiplicities": None if mult is None else {lab: m for lab, m in zip(labels, mult) if m},
    }


def _sum_ok(w: dict, gen_dims: dict) -> bool:
    mult = w["multiplicities"]
    if mult is None:
        return True
    total = [0] * len(w["dims"])
    for lab, m in mult.items():
        total = [t + m * d for t, d in zip(total, gen_dims[lab])]
    return total == w["dims"]


def recheck(cert: MutationCertificate) -> str:
    """Recompute the verdict from the stored witnesses alone."""
    if cert.verdict == "not-applicable":
        return "not-applicable"
    for w in (cert.middle_term, cert.omega, cert.rel_syzygy):
        if w is not None and not _sum_ok(w, cert.gen_dims):
            raise RepError("certificate witness does not add up")
    if cert.middle_term is None or cert.middle_term["multiplicities"] is None:
        return "not-applicable"
    general = None
    if cert.rel_syzygy is not None:
        general = "accept" if cert.rel_syzygy["multiplicities"] is not None else "reject"
    if cert.branch == "stable-hom":
        fast = "accept" if cert.stable_hom_dim else "reject"
    elif cert.branch == "syzygy-membership":
        fast = "accept" if (cert.stable_hom_dim == 0 and cert.omega["multiplicities"] is not None) else "reject"
    else:
        fast = None
    verdicts = {v for v in (general, fast) if v is not None}
    if len(verdicts) != 1:
        raise RepError("certificate branches disagree")
    return verdicts.pop()


# -- mutation -------------------------------------------------------------------


def _top_coverage(entries: list[Entry], pres: Presentation) -> list[str]:
    covered = set()
    for e in entries:
        t = top(e.rep)[0]
        covered.update(v for v in range(pres.n) if t.dims[v])
    return [pres.vertices[v] for v in sorted(covered)]


def mutate(gens: GeneratorSet, position, seed: int = DEFAULT_SEED,
           general: bool = True) -> tuple[GeneratorSet, MutationCertificate]:
    """Exchange the entry at ``position`` (label, rep or index) for its ``tau^-1``."""
    pres = gens.pres
    k = position if isinstance(position, int) else gens.index(position)
    n_entry = gens.entries[k]
    n = n_entry.rep
    labels = gens.labels()
    gen_dims = {e.label: list(e.rep.dims) for e in gens.entries}
    cert = MutationCertificate(labels, n_entry.label, "not-applicable", None, gen_dims=gen_dims)
    if n_entry.projective or n_entry.injective:
        cert.reason = "position is projective or injective"
        return gens, cert
    new_entry = _moved(n_entry, 1)
    c = new_entry.rep
    c.name = new_entry.label
    others = [e for j, e in enumerate(gens.entries) if j != k]
    other_reps = [e.rep for e in others]
    other_labels = [e.label for e in others]
    ar = almost_split_starting_at(n, end=c, seed=seed)
    cert.middle_term = _membership(ar.middle, other_reps, other_labels, seed)
    if cert.middle_term["multiplicities"] is None:
        cert.reason = "middle term of the almost split sequence is not in add(M/N)"
        return gens, cert
    cert.gen_dims[new_entry.label] = list(c.dims)
    star = GeneratorSet(pres, others[:k] + [new_entry] + others[k:], gens.log + [f"mutate {n_entry.label}"])

    hyp = validate_hypotheses(pres)
    cert.slice_form = hyp.ok and gens.slice_form()
    fast = None
    if cert.slice_form:
        mp = [e for e in others if not e.projective]
        cert.top_coverage = _top_coverage(mp, pres)
        dim, _ = stable_hom([e.rep for e in mp], n)
        cert.stable_hom_dim = dim
        if dim:
            cert.branch = "stable-hom"
            fast = "accept"
        else:
            cert.branch = "syzygy-membership"
            mp_all = [e for e in gens.entries if not e.projective]
            cert.omega = _membership(syzygy(n), [e.rep for e in mp_all], [e.label for e in mp_all], seed)
            fast = "accept" if cert.omega["multiplicities"] is not None else "reject"
        cert.fast_verdict = fast
    if general or fast is None:
        omega_rel = minimal_approximation(n, other_reps).kernel
        both = gens.entries + [new_entry]
        cert.rel_syzygy = _membership(omega_rel, [e.rep for e in both], [e.label for e in both], seed)
        cert.general_verdict = "accept" if cert.rel_syzygy["multiplicities"] is not None else "reject"
        if fast is None:
            cert.branch = "relative-syzygy"
        elif fast != cert.general_verdict:
            raise RepError(f"branch disagreement at {n_entry.label}: short test {fast}, "
                           f"relative syzygy test {cert.general_verdict}")
    cert.verdict = fast if fast is not None else cert.general_verdict
    return (star if cert.verdict == "accept" else gens), cert


def _auto_shift(gens: GeneratorSet) -> int:
    lv = gens.min_level()
    if lv is None or lv >= 2:
        return 0
    return (2 - lv + 1) // 2


def mutate_via_shift(gens: GeneratorSet, position, i: int | None = None, seed: int = DEFAULT_SEED,
                     general: bool = True) -> tuple[GeneratorSet, MutationCertificate]:
    """Shift by ``i`` (default: into slice form), mutate there, shift back."""
    k = position if isinstance(position, int) else gens.index(position)
    if i is None:
        i = _auto_shift(gens)
    moved = shift(gens, i)
    out, cert = mutate(moved, k, seed, general)
    cert.shift = i
    cert.position = gens.entries[k].label
    if i and cert.stable_hom_dim is not None:
        mp = [e.rep for j, e in enumerate(gens.entries) if j != k and not e.projective]
        cert.stable_hom_dim_unshifted = stable_hom(mp, gens.entries[k].rep)[0]
    if cert.verdict != "accept":
        return gens, cert
    back = shift(out, -i)
    back = GeneratorSet(back.pres, back.entries, gens.log + [f"mutate {gens.entries[k].label}"
                                                             + (f" (via shift {i})" if i else "")])
    return back, cert


def is_source(gens: GeneratorSet, k: int, seed: int = DEFAULT_SEED) -> bool:
    e = gens.entries[k]
    if e.projective or e.injective:
        return False
    others = [f.rep for j, f in enumerate(gens.entries) if j != k]
    c = _moved(e, 1).rep
    return in_add(almost_split_starting_at(e.rep, end=c, seed=seed).middle, others, seed) is not None


# -- families ---------------------------------------------------------------


@dataclass
class Family:
    sets: list[GeneratorSet]
    graph: nx.DiGraph
    exhausted: bool  # True when the frontier ran dry before the budget
    certificates: list[MutationCertificate]

    def contains(self, gens: GeneratorSet, seed: int = DEFAULT_SEED) -> bool:
        return any(s.equivalent(gens, seed) for s in self.sets)

    def graphml(self) -> str:
        return "\n".join(nx.generate_graphml(self.graph))


def _dual_set(gs: GeneratorSet, pres: Presentation, seed: int) -> GeneratorSet:
    """Transport a generator set over the opposite algebra back through ``D``."""
    l0 = canonical_L0(pres, seed)
    op_m0 = canonical_M0(opposite(pres), seed)
    relabel = {}
    for e in op_m0.entries:
        d = dual(e.rep)
        for f in l0.entries:
            if f.rep.dims == d.dims and find_isomorphism(d, f.rep, seed) is not None:
                relabel[e.base_label] = f
                break
    entries = []
    for e in gs.entries:
        tgt = relabel.get(e.base_label)
        if tgt is None:
            raise RepError(f"cannot match {e.label} with an entry of L0")
        if e.projective:
            entries.append(tgt)
            continue
        rep = tgt.rep if e.shift == 0 else orbit_member(tgt.base, -e.shift)
        entries.append(replace(tgt, rep=rep, shift=-e.shift))
    return GeneratorSet(pres, entries, ["D"] + gs.log)


def enumerate_family(pres: Presentation, side: str = "M", budget: int = 6, strategy: str = "all",
                     start: GeneratorSet | None = None, seed: int = DEFAULT_SEED,
                     general: bool = True) -> Family:
    """Breadth-first mutation at sources, up to ``budget`` distinct generator sets.

    ``strategy="simples-first"`` only mutates entries of minimal level, which
    is the schedule of exchanging a whole layer before moving on.  The ``L``
    side runs the ``M`` construction over the opposite algebra and dualizes.
    """
    if strategy not in ("all", "simples-first"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if side == "L":
        op = opposite(pres)
        fam = enumerate_family(op, "M", budget, strategy, None, seed, general)
        sets = [_dual_set(s, pres, seed) for s in fam.sets]
        graph = fam.graph.copy()
        for node, s in zip(sorted(graph.nodes, key=lambda v: int(v[1:])), sets):
            graph.nodes[node]["entries"] = ", ".join(s.labels())
        return Family(sets, graph, fam.exhausted, fam.certificates)
    if side != "M":
        raise ValueError(f"unknown side {side!r}")
    first = start if start is not None else canonical_M0(pres, seed)
    sets = [first]
    graph = nx.DiGraph()
    graph.add_node("G0", entries=", ".join(first.labels()))
    certs: list[MutationCertificate] = []
    queue = deque([0])
    while queue and len(sets) < budget:
        idx = queue.popleft()
        gs = sets[idx]
        positions = [k for k, e in enumerate(gs.entries) if not e.projective and not e.injective]
        if strategy == "simples-first":
            lv = gs.min_level()
            positions = [k for k in positions if gs.entries[k].level == lv]
        for k in positions:
            if len(sets) >= budget:
                break
            if not is_source(gs, k, seed):
                continue
            new, cert = mutate_via_shift(gs, k, seed=seed, general=general)
            certs.append(cert)
            if cert.verdict != "accept":
                graph.add_edge(f"G{idx}", f"G{idx}", position=cert.position, verdict=cert.verdict,
                               branch=cert.branch or "")
                continue
            for j, s in enumerate(sets):
                if s.equivalent(new, seed):
                    target = j
                    break
            else:
                sets.append(new)
                target = len(sets) - 1
                graph.add_node(f"G{target}", entries=", ".join(new.labels()))
                queue.append(target)
            graph.add_edge(f"G{idx}", f"G{target}", position=cert.position, verdict=cert.verdict,
                           branch=cert.branch or "")
    return Family(sets, graph, not queue and len(sets) < budget, certs)


def reach(gens: GeneratorSet, target: dict[str, int], seed: int = DEFAULT_SEED,
          general: bool = True) -> tuple[GeneratorSet, list[MutationCertificate]]:
    """Mutate until every entry ``b`` sits at ``tau^-target[b](b)``.

    Tries sources in order and backtracks when a mutation is rejected.
    Entries are addressed by their base label.
    """
    certs: list[MutationCertificate] = []

    def todo(gs: GeneratorSet) -> list[int]:
        return [k for k, e in enumerate(gs.entries)
                if not e.projective and e.shift < target.get(e.base_label, e.shift)]

    def search(gs: GeneratorSet, depth: int) -> GeneratorSet | None:
        ks = todo(gs)
        if not ks:
            return gs
        for k in ks:
            if not is_source(gs, k, seed):
                continue
            new, cert = mutate_via_shift(gs, k, seed=seed, general=general)
            certs.append(cert)
            if cert.verdict == "accept":
                found = search(new, depth + 1)
                if found is not None:
                    return found
        return None

    out = search(gens, 0)
    if out is None:
        raise RepError("target generator set is not reachable by accepted mutations")
    return out, certs
