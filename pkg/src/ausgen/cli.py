"""Command-line front end.

Exit status: 0 when the computation succeeds or a mutation is accepted, 1 on a
mathematical rejection (or a golden-file mismatch), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import mutation as mu
from .algfile import AlgebraFileError, example_text, load_algebra, load_example
from .artheory import almost_split_starting_at, is_split
from .exactla import FieldError, check_prime
from .flows import golden, run_example
from .krullschmidt import DEFAULT_SEED, decompose
from .presentations import Presentation, PresentationError, validate_hypotheses
from .relhom import window_verify
from .repmod import (
    Rep,
    RepError,
    cosyzygy,
    injective,
    nakayama,
    projective,
    quotient,
    radical,
    simple,
    socle_power,
    syzygy,
    tau,
    tau_inverse,
)

__all__ = ["main", "run", "RunConfig", "parse_module", "build_parser"]

GRAMMAR = """\
algebra files
  name: <text>                  optional
  prime: <p>                    optional, default 2; --field overrides it
  vertices: <v1>, <v2>, ...
  arrows:                       one indented line per arrow
    <label>: <source> -> <target>
  relations:                    one indented line per relation
    <term> (+|- <term>)*        term = [<int>*]<arrow>*<arrow>*...
  bound: <L>                    every path of length L vanishes

  Words compose left to right: a*b means "first a, then b".
  '#' starts a comment. Errors report the offending line.

  The bundled two-vertex algebra (example 1):

{example}
module names (for decompose, tau, ar)
  S<v>  P<v>  I<v>  P<v>/soc  radP<v>
  tau(X)  tau^-1(X)  tau^k(X)  omega(X)  omega^-1(X)  nu(X)
  Parentheses may be dropped around a base name: tau^-2S1.
"""


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    p: int | None = None
    seed: int = DEFAULT_SEED
    json_out: str | None = None
    options: dict | None = None


class UsageError(ValueError):
    pass


# -- module names ------------------------------------------------------------

_FN_RE = re.compile(r"^(tau|omega|nu)(?:\^(-?\d+))?(.*)$")
_BASE_RE = re.compile(r"^(radP|P|S|I)([^/()]+?)(/soc)?$")


def _vertex(pres: Presentation, name: str) -> int:
    try:
        return pres.vertices.index(name)
    except ValueError:
        raise UsageError(f"unknown vertex {name!r}") from None


def parse_module(pres: Presentation, text: str) -> Rep:
    """Build the module named by ``text`` (see the grammar in ``--help``)."""
    s = text.strip()
    m = _FN_RE.match(s)
    if m:
        fn, power, rest = m.group(1), int(m.group(2) or 1), m.group(3).strip()
        if rest.startswith("(") and rest.endswith(")"):
            rest = rest[1:-1]
        if not rest:
            raise UsageError(f"missing argument in module name {text!r}")
        x = parse_module(pres, rest)
        if fn == "nu":
            for _ in range(abs(power)):
                x = nakayama(x)
            return x
        step = {"tau": (tau, tau_inverse), "omega": (syzygy, cosyzygy)}[fn]
        for _ in range(abs(power)):
            x = step[0](x) if power > 0 else step[1](x)
        x.name = s
        return x
    m = _BASE_RE.match(s)
    if not m:
        raise UsageError(f"cannot parse module name {text!r}")
    kind, v, soc = m.group(1), _vertex(pres, m.group(2)), m.group(3)
    if soc and kind != "P":
        raise UsageError(f"'/soc' only applies to projectives: {text!r}")
    if kind == "S":
        x = simple(pres, v)
    elif kind == "I":
        x = injective(pres, v)
    elif kind == "radP":
        x = radical(projective(pres, v))[0]
    elif soc:
        pv = projective(pres, v)
        x = quotient(pv, socle_power(pv, 1)[1].maps)[0]
    else:
        x = projective(pres, v)
    x.name = s
    return x


# -- commands -------------------------------------------------------------------


def _load(cfg: RunConfig) -> Presentation:
    if cfg.algebra is None:
        return load_example(1, cfg.p or 2)
    path = Path(cfg.algebra)
    if not path.exists():
        raise UsageError(f"no such algebra file: {cfg.algebra}")
    return load_algebra(path, cfg.p)


def _generators(pres: Presentation, which: str, seed: int) -> mu.GeneratorSet:
    return mu.canonical_L0(pres, seed) if which == "L0" else mu.canonical_M0(pres, seed)


def _cmd_example(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    n = cfg.options["number"]
    res = run_example(n, cfg.p or 2, cfg.seed)
    report = res.report(matrices=cfg.options.get("matrices", False))
    match = res.summary == golden(n)
    report["golden"] = "match" if match else "mismatch"
    lines = [f"example {n} over F_{res.p}: {res.verdict}", f"golden file: {report['golden']}"]
    for c in res.certificates:
        lines.append(f"  mutate {c.position}: {c.verdict} ({c.branch})")
    if not match:
        return 1, report, lines
    return (0 if res.verdict == "accept" else 1), report, lines


def _cmd_mutate(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    pres = _load(cfg)
    gens = _generators(pres, cfg.options["generators"], cfg.seed)
    certs, lines, code = [], [], 0
    for at in cfg.options["at"]:
        pos = int(at) if at.isdigit() else at
        try:
            if isinstance(pos, str):
                gens.index(pos)
            elif not 0 <= pos < len(gens.entries):
                raise RepError(f"position {pos} out of range")
        except RepError as exc:
            raise UsageError(f"{exc}; entries are {', '.join(gens.labels())}") from None
        gens, cert = mu.mutate_via_shift(gens, pos, cfg.options["shift"], cfg.seed)
        certs.append(cert)
        lines.append(f"mutate {cert.position} (shift {cert.shift}): {cert.verdict} [{cert.branch}] {cert.reason}".rstrip())
        if cert.verdict != "accept":
            code = 1
            break
    lines.append("generators: " + ", ".join(gens.labels()))
    report = {"generators": gens.to_json(matrices=True), "certificates": [c.to_json() for c in certs],
              "verdict": "accept" if code == 0 else "reject"}
    return code, report, lines


def _cmd_explore(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    pres = _load(cfg)
    o = cfg.options
    fam = mu.enumerate_family(pres, o["side"], o["budget"], o["strategy"], seed=cfg.seed)
    graphml = fam.graphml()
    if o.get("graphml"):
        Path(o["graphml"]).write_text(graphml + "\n")
    lines = [f"{len(fam.sets)} generator sets" + (" (frontier exhausted)" if fam.exhausted else "")]
    lines += [f"  G{k}: " + ", ".join(s.labels()) for k, s in enumerate(fam.sets)]
    report = {"side": o["side"], "strategy": o["strategy"], "budget": o["budget"], "exhausted": fam.exhausted,
              "sets": [s.to_json(matrices=o.get("matrices", False)) for s in fam.sets],
              "certificates": [c.to_json() for c in fam.certificates], "graphml": graphml}
    return 0, report, lines


def _cmd_decompose(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    pres = _load(cfg)
    x = parse_module(pres, cfg.options["module"])
    dec = decompose(x, cfg.seed)
    classes = sorted(([list(r.dims), m] for r, m in dec.multiplicities()), key=lambda t: t[0])
    report = {"module": x.to_json(), "summands": [list(d) for d in dec.dim_vectors()],
              "classes": classes, "certified": dec.confirmed}
    lines = [f"{x.name} {x.dims} = " + " + ".join(f"{m}x{tuple(d)}" for d, m in classes)]
    if not dec.confirmed:
        lines.append("warning: some summand is indecomposable only by randomized search")
    return 0, report, lines


def _cmd_tau(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    pres = _load(cfg)
    x = parse_module(pres, cfg.options["module"])
    y = tau_inverse(x) if cfg.options["inverse"] else tau(x)
    y.name = ("tau^-1" if cfg.options["inverse"] else "tau") + f"({x.name})"
    return 0, {"module": x.to_json(), "result": y.to_json()}, [f"{y.name} has dimension vector {y.dims}"]


def _cmd_ar(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    pres = _load(cfg)
    x = parse_module(pres, cfg.options["module"])
    ar = almost_split_starting_at(x, seed=cfg.seed)
    dec = decompose(ar.middle, cfg.seed)
    report = {"start": list(ar.start.dims), "middle": list(ar.middle.dims), "end": list(ar.end.dims),
              "middle_summands": [list(d) for d in dec.dim_vectors()], "split": is_split(ar.ses),
              "socle_dim": ar.socle_dim}
    lines = [f"0 -> {ar.start.dims} -> {ar.middle.dims} -> {ar.end.dims} -> 0",
             "middle term: " + " + ".join(str(d) for d in dec.dim_vectors())]
    return 0, report, lines


def _cmd_verify_window(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    pres = _load(cfg)
    gens = _generators(pres, cfg.options["generators"], cfg.seed)
    rep = window_verify(gens.reps, cfg.options["radius"], cfg.seed)
    report = rep.to_json()
    report["generators"] = gens.labels()
    lines = [f"{len(rep.modules)} window modules, radius {rep.radius}: {report['verdict']}"]
    lines += [f"  failure: {m.name or '?'} {m.dims}" for m in rep.failures()]
    return (0 if rep.ok else 1), report, lines


def _cmd_check(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    pres = _load(cfg)
    hyp = validate_hypotheses(pres)
    lines = [f"{pres.name or 'algebra'} over F_{pres.p}: rad^3 = 0 {hyp.rad_cube_zero}, "
             f"selfinjective {hyp.selfinjective}, weakly symmetric {hyp.weakly_symmetric}"]
    return (0 if hyp.ok else 1), {"algebra": pres.name, "field": pres.p, "hypotheses": hyp.to_json()}, lines


COMMANDS = {
    "example": _cmd_example,
    "mutate": _cmd_mutate,
    "explore": _cmd_explore,
    "decompose": _cmd_decompose,
    "tau": _cmd_tau,
    "ar": _cmd_ar,
    "verify-window": _cmd_verify_window,
    "check": _cmd_check,
}


# -- argument parsing ---------------------------------------------------------


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except (ValueError, FieldError) as exc:
        raise argparse.ArgumentTypeError(str(exc) if isinstance(exc, FieldError) else f"{text!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    def shared(suppress: bool) -> argparse.ArgumentParser:
        # Subcommands repeat the global flags; their defaults must not clobber earlier values.
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        sp = argparse.ArgumentParser(add_help=False)
        sp.add_argument("--algebra", default=d(None), help="algebra file (default: the bundled example 1)")
        sp.add_argument("--field", type=_prime, default=d(None), help="prime characteristic; overrides the file")
        sp.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help=f"random seed (default {DEFAULT_SEED})")
        sp.add_argument("--json", dest="json_out", metavar="OUT", default=d(None),
                        help="write the JSON report to OUT ('-' = stdout)")
        return sp

    common = shared(True)
    epilog = GRAMMAR.format(example="\n".join("    " + ln for ln in example_text(1).splitlines()))
    parser = argparse.ArgumentParser(prog="ausgen", description="Mutation of Auslander generators over F_p.",
                                     epilog=epilog, formatter_class=argparse.RawDescriptionHelpFormatter,
                                     parents=[shared(False)])
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", parents=[common], help="run a bundled example flow and compare with its golden file")
    ex.add_argument("number", type=int, choices=[1, 2, 3])
    ex.add_argument("--matrices", action="store_true", help="include arrow matrices in the report")

    mt = sub.add_parser("mutate", parents=[common], help="mutate a canonical generator set")
    mt.add_argument("--at", action="append", required=True, metavar="ID",
                    help="entry label or index; repeat to mutate in sequence")
    mt.add_argument("--shift", type=int, default=None, help="tau-shift before mutating (default: into slice form)")
    mt.add_argument("--generators", choices=["M0", "L0"], default="M0", help="starting set (default M0)")

    ep = sub.add_parser("explore", parents=[common], help="breadth-first enumeration of mutations")
    ep.add_argument("--budget", type=int, default=6, help="number of generator sets to visit (default 6)")
    ep.add_argument("--strategy", choices=["all", "simples-first"], default="all",
                    help="which positions to try (default all)")
    ep.add_argument("--side", choices=["M", "L"], default="M", help="start from M0 or L0")
    ep.add_argument("--graphml", metavar="FILE", help="also write the mutation graph as GraphML")
    ep.add_argument("--matrices", action="store_true", help="include arrow matrices in the report")

    for name, helptext in (("decompose", "Krull-Schmidt decomposition of a module"),
                           ("tau", "Auslander-Reiten translate of a module"),
                           ("ar", "almost split sequence starting at a module")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--module", required=True, help="module name, e.g. P1/soc or tau^-1(S2)")
        if name == "tau":
            sp.add_argument("--inverse", action="store_true", help="compute tau^-1 instead")

    vw = sub.add_parser("verify-window", parents=[common], help="relative projective dimension check on a window")
    vw.add_argument("--radius", type=int, default=1, help="tau-orbit radius of the window (default 1)")
    vw.add_argument("--generators", choices=["M0", "L0"], default="M0", help="generator set (default M0)")

    sub.add_parser("check", parents=[common], help="validate the standing hypotheses on the algebra")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    opts = {k: v for k, v in vars(ns).items() if k not in ("command", "algebra", "field", "seed", "json_out")}
    return RunConfig(ns.command, ns.algebra, ns.field, ns.seed, ns.json_out, opts)


def run(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    return COMMANDS[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = _config(ns)
    try:
        code, report, lines = run(cfg)
    except (UsageError, AlgebraFileError, PresentationError, FieldError) as exc:
        print(f"ausgen: error: {exc}", file=sys.stderr)
        return 2
    except RepError as exc:
        print(f"ausgen: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2, sort_keys=True, default=_jsonable) + "\n"
    if cfg.json_out == "-":
        sys.stdout.write(text)
    else:
        if cfg.json_out:
            Path(cfg.json_out).write_text(text)
        print("\n".join(lines))
    return code


def _jsonable(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
