"""Finite-dimensional associative algebras over F_p given by structure constants.

An element is a length-``n`` numpy vector of residues.  Basis products are
``e_i e_j = sum_k sc[i, j, k] e_k``; the indices here are 0-based, the
``.alg`` file format is 1-based.

Subspaces are kept in reduced row echelon form so that two subspaces are
equal exactly when their row tuples are equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import PrimeField

MAX_DIM = 64


class AlgebraError(ValueError):
    """Input that does not fit the algebra (wrong length, foreign subspace...)."""


class DecompositionError(ValueError):
    def __init__(self, reason: str, witness=None):
        self.reason = reason
        self.witness = witness
        msg = reason if witness is None else f"{reason}: witness {witness}"
        super().__init__(msg)


class Algebra:
    """Associative (not necessarily unital) algebra over F_p."""

    def __init__(self, name: str, p: int, sc, basis_labels: Sequence[str] | None = None):
        self.field = PrimeField(p)
        self.name = name
        self.p = p
        if isinstance(sc, dict):
            n = _infer_dim(sc)
            table = np.zeros((n, n, n), dtype=object)
            for (i, j, k), v in sc.items():
                table[i, j, k] = v
        else:
            table = np.asarray(sc, dtype=object)
        if table.ndim != 3 or len(set(table.shape)) != 1:
            raise AlgebraError(f"structure constants must be n x n x n, got {table.shape}")
        n = table.shape[0]
        if not 1 <= n <= MAX_DIM:
            raise AlgebraError(f"dimension {n} outside 1..{MAX_DIM}")
        self.n = n
        # int64 stays exact for sums of up to 2**16 products of n-term dot products
        self.dtype = np.int64 if n * (p - 1) ** 2 * 2**16 < 2**62 else object
        self.sc = (table % p).astype(self.dtype)
        self.sc.setflags(write=False)
        if basis_labels is None:
            basis_labels = [f"e{i + 1}" for i in range(n)]
        if len(basis_labels) != n:
            raise AlgebraError(f"expected {n} basis labels, got {len(basis_labels)}")
        self.basis_labels = tuple(basis_labels)

    def __repr__(self):
        return f"Algebra({self.name!r}, p={self.p}, n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.name == other.name
            and self.p == other.p
            and self.n == other.n
            and self.basis_labels == other.basis_labels
            and np.array_equal(self.sc, other.sc)
        )

    def __hash__(self):
        return hash((self.name, self.p, self.n, self.basis_labels, self.sc.tobytes()))

    # elements

    def element(self, coords: Iterable[int]) -> np.ndarray:
        x = np.array([int(c) % self.p for c in coords], dtype=self.dtype)
        if x.shape != (self.n,):
            raise AlgebraError(f"element of length {x.shape[0]} in algebra of dimension {self.n}")
        return x

    def zero(self) -> np.ndarray:
        return np.zeros(self.n, dtype=self.dtype)

    def basis(self, i: int) -> np.ndarray:
        x = self.zero()
        x[i] = 1
        return x

    def check_element(self, x) -> np.ndarray:
        x = np.asarray(x)
        if x.shape != (self.n,):
            raise AlgebraError(f"element of shape {x.shape} in algebra of dimension {self.n}")
        return x.astype(self.dtype) % self.p

    def right_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> x*y`` acting on row vectors."""
        return np.tensordot(self.sc, y, axes=([1], [0])) % self.p

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x @ self.right_matrix(y)) % self.p

    def format_element(self, x) -> str:
        terms = []
        for label, c in zip(self.basis_labels, x):
            c = int(c)
            if c == 1:
                terms.append(label)
            elif c:
                terms.append(f"{c}*{label}")
        return " + ".join(terms) if terms else "0"


def _infer_dim(sc: dict) -> int:
    if not sc:
        raise AlgebraError("cannot infer dimension from empty structure constants")
    return 1 + max(max(key) for key in sc)


def multiply(a: Algebra, x, y) -> np.ndarray:
    return a.mul(a.check_element(x), a.check_element(y))


def is_associative(a: Algebra) -> tuple[bool, tuple[int, int, int] | None]:
    """Check ``(e_i e_j) e_k == e_i (e_j e_k)`` on all basis triples.

    Returns ``(True, None)`` or ``(False, (i, j, k))`` with the lexicographically
    first failing triple (0-based).
    """
    p, sc = a.p, a.sc
    # left[i, j, k, l]: coefficient of e_l in (e_i e_j) e_k
    left = np.tensordot(sc, sc, axes=([2], [0])) % p
    # right[i, j, k, l]: coefficient of e_l in e_i (e_j e_k)
    right = np.tensordot(sc, sc, axes=([1], [2])).transpose(0, 2, 3, 1) % p
    bad = np.any(left != right, axis=3)
    if not bad.any():
        return True, None
    i, j, k = (int(v) for v in np.argwhere(bad)[0])
    return False, (i, j, k)


# subspaces


def _rref(rows: Iterable[Sequence[int]], p: int, n: int) -> tuple[tuple[int, ...], ...]:
    mat = [[int(v) % p for v in row] for row in rows]
    out: list[list[int]] = []
    pivots: list[int] = []
    for row in mat:
        for piv, r in zip(pivots, out):
            c = row[piv]
            if c:
                row = [(u - c * v) % p for u, v in zip(row, r)]
        lead = next((j for j, v in enumerate(row) if v), None)
        if lead is None:
            continue
        inv = pow(row[lead], -1, p)
        row = [(v * inv) % p for v in row]
        for idx, r in enumerate(out):
            c = r[lead]
            if c:
                out[idx] = [(u - c * v) % p for u, v in zip(r, row)]
        out.append(row)
        pivots.append(lead)
    order = sorted(range(len(out)), key=pivots.__getitem__)
    return tuple(tuple(out[i]) for i in order)


@dataclass(frozen=True)
class Subspace:
    algebra: Algebra
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(r) if v) for r in self.rows)

    def matrix(self) -> np.ndarray:
        a = self.algebra
        if not self.rows:
            return np.zeros((0, a.n), dtype=a.dtype)
        return np.array(self.rows, dtype=a.dtype)

    def basis(self) -> list[np.ndarray]:
        return list(self.matrix())

    def reduce(self, x: Sequence[int]) -> list[int]:
        p = self.algebra.p
        x = [int(v) % p for v in x]
        for piv, r in zip(self.pivots, self.rows):
            c = x[piv]
            if c:
                x = [(u - c * v) % p for u, v in zip(x, r)]
        return x

    def __contains__(self, x) -> bool:
        return not any(self.reduce(x))

    def __repr__(self):
        return f"Subspace({self.algebra.name}, dim={self.dim})"


def span(a: Algebra, vectors: Iterable) -> Subspace:
    vecs = [a.check_element(v) for v in vectors]
    return Subspace(a, _rref(vecs, a.p, a.n))


def full_space(a: Algebra) -> Subspace:
    return span(a, [a.basis(i) for i in range(a.n)])


def zero_space(a: Algebra) -> Subspace:
    return Subspace(a, ())


def _same_algebra(*spaces: Subspace) -> Algebra:
    a = spaces[0].algebra
    for s in spaces[1:]:
        if s.algebra is not a and s.algebra != a:
            raise AlgebraError("subspaces belong to different algebras")
    return a


def subspace_contains(s: Subspace, x) -> bool:
    x = s.algebra.check_element(x)
    return x in s


def is_subspace_of(v: Subspace, w: Subspace) -> bool:
    _same_algebra(v, w)
    return all(r in w for r in v.rows)


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    a = _same_algebra(s, t)
    return Subspace(a, _rref(s.rows + t.rows, a.p, a.n))


def _row_products(s: Subspace, t: Subspace) -> np.ndarray:
    """All products ``u*v`` for rows u of s, v of t, shape (dim s, dim t, n)."""
    a = s.algebra
    x, y = s.matrix(), t.matrix()
    return np.einsum("au,bj,ujk->abk", x, y, a.sc) % a.p


def subspace_product(s: Subspace, t: Subspace) -> Subspace:
    """``span{u*v : u in s, v in t}``; spanning rows suffice by bilinearity."""
    a = _same_algebra(s, t)
    if not s.rows or not t.rows:
        return zero_space(a)
    prods = _row_products(s, t).reshape(-1, a.n)
    return Subspace(a, _rref(prods, a.p, a.n))


def product_power(s1: Subspace, s2: Subspace, k: int) -> Subspace:
    """``(s1 s2)^k`` computed as ``W, W*W, (W*W)*W, ...`` with ``W = s1 s2``."""
    if k < 1:
        raise AlgebraError("product power needs k >= 1 (no unity is assumed)")
    w = subspace_product(s1, s2)
    power = w
    for _ in range(k - 1):
        power = subspace_product(power, w)
    return power


def closure_witness(s: Subspace) -> tuple[int, int] | None:
    """First pair of row indices whose product leaves ``s``, or None if closed."""
    if not s.rows:
        return None
    prods = _row_products(s, s)
    for i, j in itertools.product(range(s.dim), repeat=2):
        if prods[i, j] not in s:
            return i, j
    return None


def is_subalgebra(s: Subspace) -> bool:
    return closure_witness(s) is None


@dataclass(frozen=True)
class SumDecomposition:
    ambient: Algebra
    s1: Subspace
    s2: Subspace


def check_sum_decomposition(a: Algebra, s1: Subspace, s2: Subspace) -> SumDecomposition:
    """Validate ``A = s1 + s2`` with both summands closed under multiplication.

    Raises :class:`DecompositionError` whose ``reason`` is one of
    ``"not spanning"``, ``"s1 not closed"``, ``"s2 not closed"``; for the
    closure failures ``witness`` is the offending pair of row indices.
    """
    _same_algebra(s1, s2)
    if s1.algebra != a:
        raise AlgebraError("subspaces do not belong to the given algebra")
    if subspace_sum(s1, s2).dim < a.n:
        raise DecompositionError("not spanning")
    for label, s in (("s1", s1), ("s2", s2)):
        w = closure_witness(s)
        if w is not None:
            raise DecompositionError(f"{label} not closed", w)
    return SumDecomposition(a, s1, s2)


def codimension(ambient: Subspace, v: Subspace) -> int:
    _same_algebra(ambient, v)
    for idx, r in enumerate(v.rows):
        if r not in ambient:
            raise AlgebraError(f"not a subspace of ambient: row {idx} {r}")
    return ambient.dim - v.dim


def nilpotency_index(s: Subspace, cap: int) -> int | None:
    """Least ``m <= cap`` with ``s^m = 0``, where ``s^(j+1) = s^j s``."""
    power = s
    for m in range(1, cap + 1):
        if power.dim == 0:
            return m
        power = subspace_product(power, s)
    return None
