"""Reader and writer for the line-oriented ``.alg`` format.

::

    algebra U2_F2 p=2 dim=3
    basis e11 e22 e12
    sc 1 1 1 1          # e_1 e_1 contains 1 * e_1 (1-based, 0 < v < p)
    subspace D
    vec 1 0 0
    vec 0 1 0
    end

Omitted ``sc`` triples are zero.  Rendering is canonical (sorted ``sc``
entries, subspaces by name, rows in echelon order), so
``render(parse(render(f))) == render(f)`` byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, AlgebraError, Subspace, is_associative, span
from .field import MAX_PRIME, is_prime

NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class AlgebraFile:
    algebra: Algebra
    subspaces: dict[str, Subspace] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list, compare=False)

    def __post_init__(self):
        for name, s in self.subspaces.items():
            if not NAME_RE.match(name):
                raise AlgebraError(f"bad subspace name {name!r}")
            if s.algebra != self.algebra:
                raise AlgebraError(f"subspace {name} belongs to another algebra")

    def space(self, name: str) -> Subspace:
        try:
            return self.subspaces[name]
        except KeyError:
            known = ", ".join(sorted(self.subspaces)) or "none"
            raise KeyError(f"no subspace named {name!r} (known: {known})") from None


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", lineno) from None


def _keyval(tok: str, key: str, lineno: int) -> int:
    prefix = key + "="
    if not tok.startswith(prefix):
        raise ParseError(f"expected {prefix}<int>, got {tok!r}", lineno)
    return _int(tok[len(prefix) :], lineno, key)


def parse_algebra_file(text: str) -> AlgebraFile:
    lines = [
        (no, raw.split("#", 1)[0].split())
        for no, raw in enumerate(text.splitlines(), start=1)
    ]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines:
        raise ParseError("empty file")

    no, head = lines[0]
    if head[0] != "algebra" or len(head) != 4:
        raise ParseError("first line must be 'algebra <name> p=<prime> dim=<n>'", no)
    name = head[1]
    if not NAME_RE.match(name):
        raise ParseError(f"bad algebra name {name!r}", no)
    p = _keyval(head[2], "p", no)
    n = _keyval(head[3], "dim", no)
    if not is_prime(p) or p > MAX_PRIME:
        raise ParseError(f"p={p} is not a prime <= {MAX_PRIME}", no)
    if not 1 <= n <= 64:
        raise ParseError(f"dim={n} outside 1..64", no)

    labels = None
    sc: dict[tuple[int, int, int], tuple[int, int]] = {}
    raw_spaces: dict[str, list[list[int]]] = {}
    current: str | None = None
    current_line = no

    for no, toks in lines[1:]:
        kw = toks[0]
        if current is not None:
            if kw == "vec":
                if len(toks) - 1 != n:
                    raise ParseError(f"vec has {len(toks) - 1} entries, expected dim={n}", no)
                vals = [_int(t, no, "entry") for t in toks[1:]]
                if any(not 0 <= v < p for v in vals):
                    raise ParseError(f"vec entry outside 0..{p - 1}", no)
                raw_spaces[current].append(vals)
            elif kw == "end" and len(toks) == 1:
                current = None
            else:
                raise ParseError(f"expected 'vec' or 'end' inside subspace {current}", no)
            continue
        if kw == "basis":
            if labels is not None:
                raise ParseError("second basis line", no)
            if len(toks) - 1 != n:
                raise ParseError(f"basis has {len(toks) - 1} labels, expected dim={n}", no)
            labels = toks[1:]
        elif kw == "sc":
            if len(toks) != 5:
                raise ParseError("expected 'sc <i> <j> <k> <v>'", no)
            i, j, k, v = (_int(t, no, "sc field") for t in toks[1:])
            if not all(1 <= x <= n for x in (i, j, k)):
                raise ParseError(f"sc index outside 1..{n}", no)
            if not 0 < v < p:
                raise ParseError(f"sc value {v} outside 1..{p - 1}", no)
            if (i, j, k) in sc:
                raise ParseError(
                    f"duplicate sc entry ({i},{j},{k}) on lines {sc[(i, j, k)][1]} and {no}", no
                )
            sc[(i, j, k)] = (v, no)
        elif kw == "subspace":
            if len(toks) != 2 or not NAME_RE.match(toks[1]):
                raise ParseError("expected 'subspace <name>' with name in [A-Za-z0-9_]", no)
            if toks[1] in raw_spaces:
                raise ParseError(f"duplicate subspace {toks[1]}", no)
            current = toks[1]
            current_line = no
            raw_spaces[current] = []
        else:
            raise ParseError(f"unknown keyword {kw!r}", no)
    if current is not None:
        raise ParseError(f"subspace {current} is missing 'end'", current_line)

    table = np.zeros((n, n, n), dtype=object)
    for (i, j, k), (v, _) in sc.items():
        table[i - 1, j - 1, k - 1] = v
    alg = Algebra(name, p, table, labels)
    spaces = {nm: span(alg, vecs) for nm, vecs in raw_spaces.items()}
    warnings = []
    ok, wit = is_associative(alg)
    if not ok:
        i, j, k = (x + 1 for x in wit)
        warnings.append(f"not associative at basis triple ({i},{j},{k})")
    return AlgebraFile(alg, spaces, warnings)


def render_algebra_file(f: AlgebraFile) -> str:
    a = f.algebra
    out = [f"algebra {a.name} p={a.p} dim={a.n}", "basis " + " ".join(a.basis_labels)]
    for i, j, k in zip(*np.nonzero(a.sc)):
        out.append(f"sc {i + 1} {j + 1} {k + 1} {int(a.sc[i, j, k])}")
    for name in sorted(f.subspaces):
        out.append(f"subspace {name}")
        for row in f.subspaces[name].rows:
            out.append("vec " + " ".join(str(v) for v in row))
        out.append("end")
    return "\n".join(out) + "\n"


def read_algebra_file(path) -> AlgebraFile:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra_file(fh.read())


def write_algebra_file(f: AlgebraFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_algebra_file(f))
