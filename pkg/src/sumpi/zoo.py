"""Standard test algebras.

Matrix-unit algebras use ``e_ab e_cd = [b == c] e_ad``; the basis order
puts diagonal units first, then off-diagonal ones row by row, so U(2) has
basis ``e11, e22, e12``.
"""

from __future__ import annotations

from .algebra import Algebra, span
from .algfile import AlgebraFile


def _check_range(name: str, value: int, lo: int, hi: int):
    if not lo <= value <= hi:
        raise ValueError(f"{name}={value} outside {lo}..{hi}")


def _matrix_units(name: str, p: int, units: list[tuple[int, int]]) -> Algebra:
    index = {u: i for i, u in enumerate(units)}
    sc = {}
    for i, (a, b) in enumerate(units):
        for j, (c, d) in enumerate(units):
            if b == c and (a, d) in index:
                sc[(i, j, index[(a, d)])] = 1
    n = len(units)
    table = [[[sc.get((i, j, k), 0) for k in range(n)] for j in range(n)] for i in range(n)]
    return Algebra(name, p, table, [f"e{a}{b}" for a, b in units])


def _units_span(alg: Algebra, pred) -> list:
    return [alg.basis(i) for i, label in enumerate(alg.basis_labels) if pred(int(label[1]), int(label[2]))]


def upper_triangular(n: int, p: int) -> AlgebraFile:
    _check_range("n", n, 1, 6)
    diag = [(i, i) for i in range(1, n + 1)]
    upper = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    alg = _matrix_units(f"U{n}_F{p}", p, diag + upper)
    return AlgebraFile(
        alg,
        {
            "D": span(alg, _units_span(alg, lambda a, b: a == b)),
            "N": span(alg, _units_span(alg, lambda a, b: a < b)),
        },
    )


def strictly_upper(n: int, p: int) -> AlgebraFile:
    _check_range("n", n, 2, 6)
    upper = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return AlgebraFile(_matrix_units(f"N{n}_F{p}", p, upper))


def diagonal(n: int, p: int) -> AlgebraFile:
    _check_range("n", n, 1, 6)
    return AlgebraFile(_matrix_units(f"D{n}_F{p}", p, [(i, i) for i in range(1, n + 1)]))


def full_matrix(n: int, p: int) -> AlgebraFile:
    _check_range("n", n, 1, 4)
    diag = [(i, i) for i in range(1, n + 1)]
    off = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    alg = _matrix_units(f"M{n}_F{p}", p, diag + off)
    return AlgebraFile(
        alg,
        {
            "D": span(alg, _units_span(alg, lambda a, b: a == b)),
            "U": span(alg, _units_span(alg, lambda a, b: a <= b)),
            "L": span(alg, _units_span(alg, lambda a, b: a >= b)),
        },
    )


def truncated_poly(m: int, p: int) -> AlgebraFile:
    """``x F_p[x] / (x^m)``: basis ``x, ..., x^(m-1)``, no unity."""
    _check_range("m", m, 2, 8)
    n = m - 1
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a in range(1, m):
        for b in range(1, m):
            if a + b < m:
                table[a - 1][b - 1][a + b - 1] = 1
    labels = ["x"] + [f"x{e}" for e in range(2, m)]
    return AlgebraFile(Algebra(f"T{m}_F{p}", p, table, labels))


def direct_sum(f1: AlgebraFile, f2: AlgebraFile) -> AlgebraFile:
    """Block-diagonal sum; cross products vanish.

    Labels and subspace names get ``L_`` / ``R_`` prefixes, and the two
    summands themselves are shipped as subspaces ``L`` and ``R``.
    """
    a1, a2 = f1.algebra, f2.algebra
    if a1.p != a2.p:
        raise ValueError(f"characteristics differ: {a1.p} vs {a2.p}")
    n1, n = a1.n, a1.n + a2.n
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for off, alg in ((0, a1), (n1, a2)):
        for i in range(alg.n):
            for j in range(alg.n):
                for k in range(alg.n):
                    table[off + i][off + j][off + k] = int(alg.sc[i, j, k])
    labels = [f"L_{x}" for x in a1.basis_labels] + [f"R_{x}" for x in a2.basis_labels]
    alg = Algebra(f"{a1.name}_plus_{a2.name}", a1.p, table, labels)

    def embed(vec, off):
        out = [0] * n
        out[off : off + len(vec)] = [int(v) for v in vec]
        return out

    spaces = {
        "L": span(alg, [alg.basis(i) for i in range(n1)]),
        "R": span(alg, [alg.basis(i) for i in range(n1, n)]),
    }
    for prefix, off, f in (("L", 0, f1), ("R", n1, f2)):
        for name, s in f.subspaces.items():
            spaces[f"{prefix}_{name}"] = span(alg, [embed(r, off) for r in s.rows])
    return AlgebraFile(alg, spaces)


KINDS = {
    "upper_triangular": upper_triangular,
    "strictly_upper": strictly_upper,
    "diagonal": diagonal,
    "full_matrix": full_matrix,
    "truncated_poly": truncated_poly,
}
