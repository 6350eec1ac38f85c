"""Multilinear polynomials in noncommuting variables and identity checks.

A multilinear polynomial of degree ``d`` is a list of monomials
``x_{perm(1)} ... x_{perm(d)}`` with integer coefficients.  Because every
such polynomial is linear in each slot, it vanishes on a subspace exactly
when it vanishes on all ``d``-tuples of spanning rows, which turns identity
checking into a finite sweep.

The symmetric polynomial ``s_d`` has ``d!`` monomials; :func:`eval_symmetric`
evaluates it through a dynamic program over subsets instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np

from ._sweep import sweep
from .algebra import Algebra, AlgebraError, Subspace

MAX_EXPLICIT_DEGREE = 8
MAX_SYMMETRIC_DEGREE = 24
DEFAULT_BUDGET = 10**8
DEFAULT_D_MAX = 12


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class MultilinearPoly:
    degree: int
    terms: tuple[tuple[tuple[int, ...], int], ...]
    name: str = ""

    def __post_init__(self):
        d = self.degree
        if d < 1:
            raise ValueError("degree must be >= 1")
        seen = set()
        for perm, coeff in self.terms:
            if sorted(perm) != list(range(1, d + 1)):
                raise ValueError(f"{perm} is not a permutation of 1..{d}")
            if perm in seen:
                raise ValueError(f"duplicate monomial {perm}")
            if coeff == 0:
                raise ValueError(f"zero coefficient on {perm}")
            seen.add(perm)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def __len__(self):
        return len(self.terms)


def sym_poly(d: int) -> MultilinearPoly:
    if d > MAX_EXPLICIT_DEGREE:
        raise ValueError(f"s_{d} has {math.factorial(d)} terms; use eval_symmetric instead")
    terms = tuple((perm, 1) for perm in itertools.permutations(range(1, d + 1)))
    return MultilinearPoly(d, terms, name=f"sym:{d}")


def commutator_product_poly(n: int) -> MultilinearPoly:
    """Expansion of ``[x1,x2][x3,x4]...[x_{2n-1},x_{2n}]``."""
    if n < 1 or 2 * n > MAX_EXPLICIT_DEGREE:
        raise ValueError(f"commutator product length {n} outside 1..{MAX_EXPLICIT_DEGREE // 2}")
    terms = []
    for swaps in itertools.product((False, True), repeat=n):
        perm: list[int] = []
        sign = 1
        for j, swapped in enumerate(swaps):
            a, b = 2 * j + 1, 2 * j + 2
            perm += [b, a] if swapped else [a, b]
            sign = -sign if swapped else sign
        terms.append((tuple(perm), sign))
    return MultilinearPoly(2 * n, tuple(terms), name=f"commprod:{n}")


def commutator_square_poly() -> MultilinearPoly:
    f = commutator_product_poly(2)
    return MultilinearPoly(4, f.terms, name="comm2")


# evaluation


def _right_matrices(a: Algebra, vectors: np.ndarray) -> np.ndarray:
    # R[v, u, k]: coefficient of e_k in e_u * vectors[v]
    return np.einsum("ujk,vj->vuk", a.sc, vectors) % a.p


def word_products(a: Algebra, vectors: np.ndarray, words: np.ndarray) -> np.ndarray:
    """Left-to-right products ``vectors[w[0]] * ... * vectors[w[-1]]`` per row ``w``."""
    words = np.asarray(words, dtype=np.intp)
    rmats = _right_matrices(a, vectors)
    x = vectors[words[:, 0]]
    for t in range(1, words.shape[1]):
        x = np.einsum("bu,buk->bk", x, rmats[words[:, t]]) % a.p
    return x


def _as_args(a: Algebra, args) -> np.ndarray:
    if len(args) == 0:
        return np.zeros((0, a.n), dtype=a.dtype)
    return np.stack([a.check_element(x) for x in args])


def eval_poly(f: MultilinearPoly, a: Algebra, args: Sequence) -> np.ndarray:
    if len(args) != f.degree:
        raise AlgebraError(f"{f.name or 'polynomial'} takes {f.degree} arguments, got {len(args)}")
    vecs = _as_args(a, args)
    if not f.terms:
        return a.zero()
    words = np.array([perm for perm, _ in f.terms]) - 1
    coeffs = np.array([c % a.p for _, c in f.terms], dtype=a.dtype)
    return (coeffs @ word_products(a, vecs, words)) % a.p


@lru_cache(maxsize=32)
def _subset_schedule(d: int):
    """For each size j >= 2 and slot i: (subsets of size j containing i, same minus i)."""
    states = np.arange(1 << d, dtype=np.int64)
    popcount = np.zeros(1 << d, dtype=np.int8)
    for i in range(d):
        popcount += ((states >> i) & 1).astype(np.int8)
    layers = []
    for j in range(2, d + 1):
        layer = states[popcount == j]
        steps = []
        for i in range(d):
            tgt = layer[(layer >> i) & 1 == 1]
            steps.append((i, tgt, tgt ^ (1 << i)))
        layers.append(steps)
    return layers


def eval_symmetric(a: Algebra, args: Sequence) -> np.ndarray:
    """Evaluate ``s_d(args)`` by dynamic programming over subsets.

    ``f({i}) = args[i]`` and ``f(S) = sum_{i in S} f(S - {i}) * args[i]``;
    ``f(S)`` is the sum of all orderings of the arguments indexed by ``S``,
    so the answer is ``f(all)``.  Costs ``d * 2^(d-1)`` multiplications
    instead of ``d * d!``.
    """
    d = len(args)
    if not 1 <= d <= MAX_SYMMETRIC_DEGREE:
        raise BudgetExceeded(f"eval_symmetric supports 1 <= d <= {MAX_SYMMETRIC_DEGREE}, got {d}")
    vecs = _as_args(a, args)
    if d == 1:
        return vecs[0].copy()
    rmats = _right_matrices(a, vecs)
    table = np.zeros((1 << d, a.n), dtype=a.dtype)
    for i in range(d):
        table[1 << i] = vecs[i]
    for steps in _subset_schedule(d):
        for i, tgt, src in steps:
            table[tgt] = (table[tgt] + table[src] @ rmats[i]) % a.p
    return table[-1]


def symmetric_cost(d: int) -> int:
    return d * (1 << (d - 1))


# identity checks


@dataclass(frozen=True)
class IdentityReport:
    outcome: Literal["holds", "fails", "budget"]
    witness: tuple[int, ...] | None = None
    value: tuple[int, ...] | None = None
    tuples_checked: int = 0
    cost: int = 0

    @property
    def holds(self) -> bool:
        return self.outcome == "holds"


def _identity_chunk(lo, hi, f, a, rows):
    dim = rows.shape[0]
    words = np.array([perm for perm, _ in f.terms]) - 1
    coeffs = np.array([c % a.p for _, c in f.terms], dtype=a.dtype)
    batch = list(itertools.islice(itertools.product(range(dim), repeat=f.degree), lo, hi))
    idx = np.array(batch, dtype=np.intp)
    # one word per (tuple, term), then fold terms back per tuple
    all_words = idx[:, words].reshape(-1, f.degree)
    prods = word_products(a, rows, all_words).reshape(len(batch), len(f.terms), a.n)
    values = np.einsum("t,btk->bk", coeffs, prods) % a.p
    nz = np.flatnonzero(values.any(axis=1))
    if nz.size == 0:
        return None
    b = int(nz[0])
    return lo + b, batch[b], tuple(int(v) for v in values[b])


def check_identity(
    f: MultilinearPoly, s: Subspace, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> IdentityReport:
    """Decide whether ``f`` vanishes on ``s`` by sweeping all row tuples.

    The witness is a tuple of 0-based row indices of ``s`` (basis indices
    when ``s`` is the full space), the first failing one in lexicographic
    order.
    """
    a = s.algebra
    total = s.dim**f.degree
    cost = total * len(f.terms) * max(f.degree - 1, 1)
    if s.dim == 0:
        return IdentityReport("holds", tuples_checked=0, cost=0)
    if cost > budget:
        return IdentityReport("budget", cost=cost)
    chunk = max(1, 8192 // max(len(f.terms), 1))
    hit = sweep(_identity_chunk, total, chunk, workers, (f, a, s.matrix()))
    if hit is None:
        return IdentityReport("holds", tuples_checked=total, cost=cost)
    idx, wit, val = hit
    return IdentityReport("fails", wit, val, tuples_checked=idx + 1, cost=cost)


def _symmetric_chunk(lo, hi, a, rows, d):
    dim = rows.shape[0]
    combos = itertools.combinations_with_replacement(range(dim), d)
    for offset, ms in enumerate(itertools.islice(combos, lo, hi)):
        v = eval_symmetric(a, rows[list(ms)])
        if v.any():
            return lo + offset, ms, tuple(int(c) for c in v)
    return None


def check_symmetric(
    s: Subspace, d: int, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> IdentityReport:
    """Decide whether ``s_d`` vanishes on ``s``.

    ``s_d`` is symmetric in its arguments, so one tuple per multiset of rows
    is enough: ``C(dim + d - 1, d)`` evaluations instead of ``dim^d``.
    """
    a = s.algebra
    if d < 1:
        raise ValueError("degree must be >= 1")
    if s.dim == 0:
        return IdentityReport("holds")
    if d > MAX_SYMMETRIC_DEGREE:
        return IdentityReport("budget")
    total = math.comb(s.dim + d - 1, d)
    cost = total * symmetric_cost(d)
    if cost > budget:
        return IdentityReport("budget", cost=cost)
    chunk = 64
    hit = sweep(_symmetric_chunk, total, chunk, workers, (a, s.matrix(), d))
    if hit is None:
        return IdentityReport("holds", tuples_checked=total, cost=cost)
    idx, wit, val = hit
    return IdentityReport("fails", wit, val, tuples_checked=idx + 1, cost=cost)


def min_symmetric_degree(
    s: Subspace, d_max: int = DEFAULT_D_MAX, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> int | None:
    """Least ``d <= d_max`` such that ``s`` satisfies ``s_d``, or None.

    Raises :class:`BudgetExceeded` if some degree below the answer cannot be
    decided within ``budget``.
    """
    if s.dim == 0:
        return 1
    for d in range(1, d_max + 1):
        rep = check_symmetric(s, d, budget=budget, workers=workers)
        if rep.outcome == "budget":
            raise BudgetExceeded(f"s_{d} on a {s.dim}-dimensional space exceeds budget {budget}")
        if rep.holds:
            return d
    return None
