"""Reader for the plain-text algebra definition format.

Example (the two-vertex algebra with loops ``c`` and ``d``)::

    name: ex1
    prime: 2
    vertices: 1, 2
    arrows:
      a: 1 -> 2
      b: 2 -> 1
      c: 1 -> 1
      d: 2 -> 2
    relations:
      c*c - a*b
      c*a
      a*d
      b*c
      d*b
      d*d - b*a
    bound: 3

Words are diagrammatic (``a*b`` traverses ``a`` first).  Terms may carry an
integer coefficient (``2*a*b``) and are joined with ``+``/``-``.  ``#`` starts
a comment.  ``prime`` is optional; a caller-supplied prime overrides it.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .presentations import Presentation, PresentationError, build

__all__ = ["AlgebraFileError", "parse_algebra", "load_algebra", "load_example", "EXAMPLES"]

EXAMPLES = {1: "ex1.alg", 2: "ex2.alg", 3: "ex3.alg"}

_LABEL = r"[A-Za-z][A-Za-z0-9_']*"
_ARROW_RE = re.compile(rf"^({_LABEL})\s*:\s*(\S+)\s*->\s*(\S+)$")
_TERM_RE = re.compile(rf"^(?:(\d+)\s*\*\s*)?({_LABEL}(?:\s*\*\s*{_LABEL})*)$")


class AlgebraFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<algebra>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _parse_relation(text: str, lineno: int, source: str) -> list[tuple[int, list[str]]]:
    s = text.replace(" ", "")
    if not s:
        raise AlgebraFileError("empty relation", lineno, source)
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sign + body for sign, body in pieces) != s:
        raise AlgebraFileError(f"cannot parse relation {text!r}", lineno, source)
    terms = []
    for sign, body in pieces:
        m = _TERM_RE.match(body)
        if not m:
            raise AlgebraFileError(f"bad term {body!r} in relation {text!r}", lineno, source)
        coef = int(m.group(1) or 1)
        word = [w.strip() for w in m.group(2).split("*")]
        terms.append((coef if sign == "+" else -coef, word))
    return terms


def parse_algebra(text: str, p: int | None = None, source: str = "<algebra>") -> Presentation:
    """Parse an algebra definition; ``p`` overrides any ``prime:`` line."""
    fields: dict[str, tuple[str, int]] = {}
    arrows: list[tuple[str, str, str, int]] = []
    relations: list[tuple[list, int]] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indented = line[0] in " \t"
        line = line.strip()
        if indented and section is not None:
            if section == "arrows":
                m = _ARROW_RE.match(line)
                if not m:
                    raise AlgebraFileError(f"expected 'label: src -> tgt', got {line!r}", lineno, source)
                arrows.append((m.group(1), m.group(2), m.group(3), lineno))
            else:
                relations.append((_parse_relation(line, lineno, source), lineno))
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise AlgebraFileError(f"expected 'key: value', got {line!r}", lineno, source)
        if key in ("arrows", "relations"):
            section = key
            if value.strip():
                raise AlgebraFileError(f"'{key}:' takes its entries on indented lines", lineno, source)
            continue
        if key not in ("name", "prime", "vertices", "bound"):
            raise AlgebraFileError(f"unknown key {key!r}", lineno, source)
        section = None
        fields[key] = (value.strip(), lineno)

    for required in ("vertices", "bound"):
        if required not in fields:
            raise AlgebraFileError(f"missing '{required}:' line", None, source)
    vertices = [v.strip() for v in fields["vertices"][0].split(",") if v.strip()]
    if not vertices:
        raise AlgebraFileError("no vertices", fields["vertices"][1], source)
    if len(set(vertices)) != len(vertices):
        raise AlgebraFileError("duplicate vertex name", fields["vertices"][1], source)
    try:
        bound = int(fields["bound"][0])
    except ValueError:
        raise AlgebraFileError("bound must be an integer", fields["bound"][1], source) from None
    if p is None:
        if "prime" in fields:
            try:
                p = int(fields["prime"][0])
            except ValueError:
                raise AlgebraFileError("prime must be an integer", fields["prime"][1], source) from None
        else:
            p = 2
    vset = set(vertices)
    for label, s, t, lineno in arrows:
        for v in (s, t):
            if v not in vset:
                raise AlgebraFileError(f"arrow {label} uses unknown vertex {v!r}", lineno, source)
    labels = {a[0] for a in arrows}
    for rel, lineno in relations:
        for _, word in rel:
            for w in word:
                if w not in labels:
                    raise AlgebraFileError(f"unknown arrow {w!r}", lineno, source)
    name = fields.get("name", ("", 0))[0]
    # Per-relation diagnostics: build once without relations, then check each.
    try:
        skeleton = build(vertices, [a[:3] for a in arrows], [], max(bound, 1), p, name)
    except (PresentationError, ValueError) as exc:
        raise AlgebraFileError(str(exc), None, source) from None
    aidx = {a.label: k for k, a in enumerate(skeleton.arrows)}
    for rel, lineno in relations:
        try:
            skeleton._check_relation([(c, tuple(aidx[w] for w in word)) for c, word in rel])
        except PresentationError as exc:
            raise AlgebraFileError(str(exc), lineno, source) from None
    try:
        return build(vertices, [a[:3] for a in arrows], [r for r, _ in relations], bound, p, name)
    except (PresentationError, ValueError) as exc:
        raise AlgebraFileError(str(exc), None, source) from None


def load_algebra(path: str | Path, p: int | None = None) -> Presentation:
    path = Path(path)
    return parse_algebra(path.read_text(), p=p, source=str(path))


def example_text(number: int) -> str:
    return resources.files("ausgen.data").joinpath(EXAMPLES[number]).read_text()


@lru_cache(maxsize=None)
def load_example(number: int, p: int = 2) -> Presentation:
    """One of the three shipped radical-cube-zero algebras (memoized, so caches are shared)."""
    return parse_algebra(example_text(number), p=p, source=EXAMPLES[number])
