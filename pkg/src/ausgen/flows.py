"""Scripted mutation flows for the three bundled algebras.

Each flow returns a :class:`FlowResult`.  Its ``summary`` holds only data that
does not depend on the chosen bases or on the prime: labels, dimension
vectors, verdicts and branch names.  Golden files store exactly that summary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from . import mutation as mu
from .algfile import load_example
from .krullschmidt import DEFAULT_SEED
from .presentations import validate_hypotheses

__all__ = ["FlowResult", "run_example", "golden", "EXAMPLE1_STEPS", "EXAMPLE2_TARGET", "EXAMPLE3_TARGET",
           "EXAMPLE3_CANDIDATE"]

EXAMPLE1_STEPS = ["S1", "S2", "P1/soc", "P2/soc"]
EXAMPLE2_TARGET = {"S1": 1, "S2": 1}
EXAMPLE3_TARGET = {"S1": 1, "S2": 2, "S4": 2, "S5": 1, "P1/soc": 1, "P3/soc": 1, "P5/soc": 1}
EXAMPLE3_CANDIDATE = "tau^-2(P3/soc)"


@dataclass
class FlowResult:
    number: int
    p: int
    verdict: str  # "accept" or "reject"
    summary: dict
    detail: dict = field(default_factory=dict)
    certificates: list[mu.MutationCertificate] = field(default_factory=list)
    sets: dict[str, mu.GeneratorSet] = field(default_factory=dict)

    def report(self, matrices: bool = False) -> dict:
        return {
            "example": self.number,
            "field": self.p,
            "verdict": self.verdict,
            "summary": self.summary,
            "detail": self.detail,
            "generators": {k: g.to_json(matrices) for k, g in self.sets.items()},
            "certificates": [c.to_json() for c in self.certificates],
        }


def _listing(gs: mu.GeneratorSet) -> list[list]:
    return sorted([e.label, list(e.rep.dims)] for e in gs.entries)


def _step(cert: mu.MutationCertificate) -> dict:
    return {"position": cert.position, "verdict": cert.verdict, "branch": cert.branch,
            "stable_hom": cert.stable_hom_dim}


def _example1(p: int, seed: int) -> FlowResult:
    pres = load_example(1, p)
    hyp = validate_hypotheses(pres)
    m0 = mu.canonical_M0(pres, seed)
    sets = {"M0": m0}
    certs = []
    cur = m0
    names = ["M0*", "M1", "M1*", "M2"]
    for pos, name in zip(EXAMPLE1_STEPS, names):
        cur, cert = mu.mutate_via_shift(cur, pos, seed=seed)
        certs.append(cert)
        if cert.verdict != "accept":
            break
        sets[name] = cur
    shifted = mu.shift(m0, 1)
    sets["M^1"] = shifted
    equal = len(certs) == 4 and certs[-1].verdict == "accept" and cur.equivalent(shifted, seed)
    ok = hyp.ok and equal and all(c.verdict == "accept" for c in certs)
    summary = {
        "hypotheses": {"rad_cube_zero": hyp.rad_cube_zero, "selfinjective": hyp.selfinjective},
        "M0": _listing(m0),
        "L0": _listing(mu.canonical_L0(pres, seed)),
        "steps": [_step(c) for c in certs],
        "M2": _listing(cur),
        "M2_equals_shift_of_M0": equal,
    }
    return FlowResult(1, p, "accept" if ok else "reject", summary, {"hypotheses": hyp.to_json()}, certs, sets)


def _example2(p: int, seed: int, search_budget: int = 16) -> FlowResult:
    pres = load_example(2, p)
    m0 = mu.canonical_M0(pres, seed)
    m, path = mu.reach(m0, EXAMPLE2_TARGET, seed)
    k = m.index("P1/soc")
    source = mu.is_source(m, k, seed)
    star, cert = mu.mutate_via_shift(m, k, seed=seed)
    # First budget at which the unrestricted breadth-first search meets M*.
    fam = mu.enumerate_family(pres, "M", search_budget, "all", seed=seed)
    budget = next((j + 1 for j, s in enumerate(fam.sets) if s.equivalent(star, seed)), None)
    in_restricted = None
    if budget is not None:
        sf = mu.enumerate_family(pres, "M", budget, "simples-first", seed=seed)
        in_restricted = sf.contains(star, seed)
    ok = source and cert.verdict == "accept" and cert.branch == "stable-hom" and budget is not None \
        and in_restricted is False
    summary = {
        "M": _listing(m),
        "path": [_step(c) for c in path],
        "source": source,
        "mutation": _step(cert),
        "M*": _listing(star),
        "budget_all": budget,
        "found_by_simples_first": in_restricted,
    }
    return FlowResult(2, p, "accept" if ok else "reject", summary, {}, path + [cert],
                      {"M0": m0, "M": m, "M*": star})


def _example3(p: int, seed: int) -> FlowResult:
    pres = load_example(3, p)
    m0 = mu.canonical_M0(pres, seed)
    m, path = mu.reach(m0, EXAMPLE3_TARGET, seed)
    shifted = mu.shift(m, 1)
    _, cert = mu.mutate(shifted, EXAMPLE3_CANDIDATE, seed=seed)
    summary = {
        "M": _listing(m),
        "path": [_step(c) for c in path],
        "candidate": EXAMPLE3_CANDIDATE,
        "mutation": _step(cert),
        "omega_in_add": None if cert.omega is None else cert.omega["multiplicities"] is not None,
        "omega_dims": None if cert.omega is None else cert.omega["dims"],
        "general_verdict": cert.general_verdict,
    }
    verdict = "accept" if cert.verdict == "accept" else "reject"
    return FlowResult(3, p, verdict, summary, {}, path + [cert], {"M0": m0, "M": m, "tau^-1 M": shifted})


def run_example(number: int, p: int = 2, seed: int = DEFAULT_SEED) -> FlowResult:
    flows = {1: _example1, 2: _example2, 3: _example3}
    if number not in flows:
        raise ValueError(f"no example {number}; choose 1, 2 or 3")
    return flows[number](p, seed)


def golden(number: int) -> dict:
    """Stored summary for example ``number``."""
    text = resources.files("ausgen.data").joinpath(f"example{number}.json").read_text()
    return json.loads(text)
