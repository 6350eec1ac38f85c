"""Degree bounds for sums of two PI-algebras and the machinery behind them.

For ``A = A1 + A2`` with ``A_i`` satisfying ``s_{d_i}`` and ``(V1 V2)^k``
inside ``A1`` or ``A2`` (``V_i`` of codimension ``t_i`` in ``A_i``), ``A``
satisfies ``s_D`` with

    D = ((d1 + d2 - 2)(k d_side + 2) - 1)((t1 + t2)(p - 1) + 1) + 1.

The argument splits ``s_D(b_1..b_r, c_1..c_s)`` over the ways ``r`` letters
from ``A1`` and ``s`` letters from ``A2`` interleave into alternating blocks.
Those block patterns are the :class:`Delta` sequences, and each contributes
one partial sum ``s_delta``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .algebra import (
    AlgebraError,
    Subspace,
    SumDecomposition,
    codimension,
    full_space,
    is_subspace_of,
    product_power,
)
from .field import is_prime
from .multilinear import (
    DEFAULT_BUDGET,
    DEFAULT_D_MAX,
    BudgetExceeded,
    IdentityReport,
    _as_args,
    check_symmetric,
    eval_symmetric,
    min_symmetric_degree,
    word_products,
)

MAX_DELTA_LETTERS = 12
MAX_BLOCK_LETTERS = 8


# bound formulas


@dataclass(frozen=True)
class BoundParams:
    d1: int
    d2: int
    k: int
    t1: int = 0
    t2: int = 0
    p: int = 2
    side: int = 1

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError("symmetric degrees must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.t1 < 0 or self.t2 < 0:
            raise ValueError("codimensions must be >= 0")
        if self.side not in (1, 2):
            raise ValueError("side must be 1 or 2")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def d_side(self) -> int:
        return self.d1 if self.side == 1 else self.d2


def theorem_bound(bp: BoundParams) -> int:
    core = (bp.d1 + bp.d2 - 2) * (bp.k * bp.d_side + 2)
    return (core - 1) * ((bp.t1 + bp.t2) * (bp.p - 1) + 1) + 1


def cor1_bound(d1: int, d2: int, k: int, side: int) -> int:
    d_side = d1 if side == 1 else d2
    return (d1 + d2 - 2) * (k * d_side + 2)


def fgl_bound(d: int, k: int) -> tuple[float, float]:
    """Earlier bound ``a^a + 1`` with ``a = 8e(kd(d-1) - 1)^2 (d-1)^2``.

    Returns ``(a, a * log10(a))``; ``a^a`` itself does not fit any float.
    """
    if k * d * (d - 1) < 2:
        raise ValueError("need k*d*(d-1) >= 2")
    a = 8 * math.e * (k * d * (d - 1) - 1) ** 2 * (d - 1) ** 2
    return a, a * math.log10(a)


def repetition_threshold(t: int, p: int) -> int:
    """Number of letters from a ``t``-dimensional complement that forces ``s_D = 0``."""
    return t * (p - 1) + 1


# block patterns


@dataclass(frozen=True)
class Delta:
    """Alternating block lengths ``(beta_1, gamma_1, ..., beta_m, gamma_m)``."""

    parts: tuple[int, ...]
    r: int = field(init=False)
    s: int = field(init=False)

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts or len(parts) % 2:
            raise ValueError("parts must have positive even length")
        if any(x < 0 for x in parts):
            raise ValueError("parts must be nonnegative")
        # only the first beta and the last gamma may be empty
        if any(x < 1 for x in parts[1:-1]):
            raise ValueError(f"interior parts must be >= 1: {parts}")
        if sum(parts) < 1:
            raise ValueError("empty pattern")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "r", sum(parts[0::2]))
        object.__setattr__(self, "s", sum(parts[1::2]))

    @property
    def m(self) -> int:
        return len(self.parts) // 2

    @property
    def betas(self) -> tuple[int, ...]:
        return self.parts[0::2]

    @property
    def gammas(self) -> tuple[int, ...]:
        return self.parts[1::2]

    def exceeds(self, d1: int, d2: int) -> bool:
        return any(b >= d1 for b in self.betas) or any(g >= d2 for g in self.gammas)


def _runs_of_word(word: Sequence[str]) -> tuple[int, ...]:
    parts: list[int] = []
    expect = "b"
    for letter, group in itertools.groupby(word):
        if letter != expect:
            parts.append(0)
        parts.append(len(list(group)))
        expect = "c" if letter == "b" else "b"
    if len(parts) % 2:
        parts.append(0)
    return tuple(parts)


def enumerate_delta(r: int, s: int) -> list[Delta]:
    """All of ``Delta_{r,s}``, sorted by ``(m, parts)``.

    Each pattern is the run-length encoding of a word with ``r`` b's and
    ``s`` c's, so there are ``C(r + s, r)`` of them.
    """
    if r < 0 or s < 0 or r + s < 1:
        raise ValueError("need r, s >= 0 and r + s >= 1")
    if r + s > MAX_DELTA_LETTERS:
        raise ValueError(f"r + s = {r + s} exceeds {MAX_DELTA_LETTERS}")
    out = []
    for b_positions in itertools.combinations(range(r + s), r):
        word = ["c"] * (r + s)
        for i in b_positions:
            word[i] = "b"
        out.append(Delta(_runs_of_word(word)))
    return sorted(out, key=lambda dl: (dl.m, dl.parts))


@lru_cache(maxsize=1024)
def _delta_words(delta: Delta) -> np.ndarray:
    """Index words for ``s_delta`` over arguments ``b_1..b_r, c_1..c_s``.

    One row per ``(sigma, tau)``; c-indices are offset by ``r``.
    """
    r, s = delta.r, delta.s
    rows = []
    for sigma in itertools.permutations(range(r)):
        for tau in itertools.permutations(range(r, r + s)):
            word: list[int] = []
            bi = ci = 0
            for beta, gamma in zip(delta.betas, delta.gammas):
                word += sigma[bi : bi + beta]
                word += tau[ci : ci + gamma]
                bi += beta
                ci += gamma
            rows.append(word)
    out = np.array(rows, dtype=np.intp)
    out.setflags(write=False)
    return out


def _check_members(space: Subspace, elems, label: str):
    for idx, x in enumerate(elems):
        if x not in space:
            raise AlgebraError(f"{label}[{idx}] does not lie in its summand")


def eval_s_delta(dec: SumDecomposition, delta: Delta, b: Sequence, c: Sequence) -> np.ndarray:
    """Sum over ``sigma in S_r``, ``tau in S_s`` of the interleaved block products.

    Empty blocks are skipped rather than multiplied by a unity.
    """
    a = dec.ambient
    if len(b) != delta.r or len(c) != delta.s:
        raise AlgebraError(f"pattern needs {delta.r} + {delta.s} arguments, got {len(b)} + {len(c)}")
    if delta.r > MAX_BLOCK_LETTERS or delta.s > MAX_BLOCK_LETTERS:
        raise BudgetExceeded(f"r, s must be <= {MAX_BLOCK_LETTERS}")
    vecs = _as_args(a, list(b) + list(c))
    _check_members(dec.s1, vecs[: delta.r], "b")
    _check_members(dec.s2, vecs[delta.r :], "c")
    prods = word_products(a, vecs, _delta_words(delta))
    return prods.sum(axis=0) % a.p


def delta_sum(dec: SumDecomposition, b: Sequence, c: Sequence) -> np.ndarray:
    a = dec.ambient
    total = a.zero()
    for delta in enumerate_delta(len(b), len(c)):
        total = (total + eval_s_delta(dec, delta, b, c)) % a.p
    return total


def verify_decomposition(dec: SumDecomposition, b: Sequence, c: Sequence) -> bool:
    """Check ``s_{r+s}(b, c) == sum over Delta_{r,s} of s_delta(b, c)`` exactly."""
    if len(b) + len(c) > 8:
        raise BudgetExceeded("r + s must be <= 8")
    lhs = eval_symmetric(dec.ambient, list(b) + list(c))
    return bool(np.array_equal(lhs % dec.ambient.p, delta_sum(dec, b, c)))


def s_delta_vanishing_check(
    dec: SumDecomposition,
    d1: int,
    d2: int,
    delta: Delta,
    trials: int = 0,
    rng: np.random.Generator | None = None,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """Evaluate ``s_delta`` where some block reaches ``d1`` (resp. ``d2``).

    Sweeps all basis-row tuples when that fits the budget, then ``trials``
    random tuples drawn from the summands.  True iff every value is 0.
    """
    if not delta.exceeds(d1, d2):
        raise ValueError(f"{delta.parts} has no beta >= {d1} and no gamma >= {d2}")
    a = dec.ambient
    rows1, rows2 = dec.s1.matrix(), dec.s2.matrix()
    r, s = delta.r, delta.s
    if (r and not len(rows1)) or (s and not len(rows2)):
        return True
    words = _delta_words(delta)
    n_tuples = len(rows1) ** r * len(rows2) ** s
    exhaustive = n_tuples * len(words) * max(r + s - 1, 1) <= budget
    if not exhaustive and trials == 0:
        raise BudgetExceeded(f"{n_tuples} basis tuples exceed budget and no random trials requested")
    if exhaustive:
        for bi in itertools.product(range(len(rows1)), repeat=r):
            for ci in itertools.product(range(len(rows2)), repeat=s):
                vecs = np.concatenate([rows1[list(bi)], rows2[list(ci)]]).reshape(r + s, a.n)
                if (word_products(a, vecs, words).sum(axis=0) % a.p).any():
                    return False
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(trials):
        b = rng.integers(0, a.p, size=(r, len(rows1))) @ rows1 % a.p if r else rows1[:0]
        c = rng.integers(0, a.p, size=(s, len(rows2))) @ rows2 % a.p if s else rows2[:0]
        vecs = np.concatenate([b, c]).astype(a.dtype).reshape(r + s, a.n)
        if (word_products(a, vecs, words).sum(axis=0) % a.p).any():
            return False
    return True


# hypothesis and end-to-end check


@dataclass(frozen=True)
class Hypothesis:
    side: int | None
    t1: int
    t2: int
    power: Subspace
    both_sides: bool = False


def check_hypothesis(
    dec: SumDecomposition,
    k: int,
    v1: Subspace,
    v2: Subspace,
    d1: int | None = None,
    d2: int | None = None,
) -> Hypothesis:
    """Locate ``(v1 v2)^k`` inside ``dec.s1`` (side 1) or ``dec.s2`` (side 2).

    When both contain it, the side giving the smaller bound wins (the one
    with the smaller symmetric degree), ties going to side 1.  ``d1``/``d2``
    are computed on demand for that tie-break only.
    """
    t1 = codimension(dec.s1, v1)
    t2 = codimension(dec.s2, v2)
    power = product_power(v1, v2, k)
    in1 = is_subspace_of(power, dec.s1)
    in2 = is_subspace_of(power, dec.s2)
    if in1 and in2:
        if d1 is None:
            d1 = min_symmetric_degree(dec.s1)
        if d2 is None:
            d2 = min_symmetric_degree(dec.s2)
        side = 2 if (d1 is not None and d2 is not None and d2 < d1) else 1
        return Hypothesis(side, t1, t2, power, both_sides=True)
    side = 1 if in1 else 2 if in2 else None
    return Hypothesis(side, t1, t2, power)


@dataclass(frozen=True)
class TheoremVerdict:
    params: BoundParams | None
    D: int | None
    hypothesis_ok: bool
    identity_ok: bool | str | None
    witness: tuple[int, ...] | None = None
    value: tuple[int, ...] | None = None
    d_star: int | None = None
    report: IdentityReport | None = None


def verify_theorem_instance(
    dec: SumDecomposition,
    k: int,
    v1: Subspace | None = None,
    v2: Subspace | None = None,
    budget: int = DEFAULT_BUDGET,
    dstar: bool = False,
    d_max: int = DEFAULT_D_MAX,
    workers: int = 1,
) -> TheoremVerdict:
    """Compute ``d1, d2``, test the hypothesis, and check ``s_D`` on the whole algebra.

    ``identity_ok`` is True/False, or ``"budget"`` when the sweep does not
    fit.  With ``dstar`` the least symmetric degree of the whole algebra is
    also searched up to ``max(d_max, D)``.
    """
    v1 = dec.s1 if v1 is None else v1
    v2 = dec.s2 if v2 is None else v2
    d1 = min_symmetric_degree(dec.s1, d_max, budget, workers)
    d2 = min_symmetric_degree(dec.s2, d_max, budget, workers)
    if d1 is None or d2 is None:
        raise BudgetExceeded(f"no symmetric identity of degree <= {d_max} on a summand")
    hyp = check_hypothesis(dec, k, v1, v2, d1, d2)
    if hyp.side is None:
        return TheoremVerdict(None, None, False, None)
    params = BoundParams(d1, d2, k, hyp.t1, hyp.t2, dec.ambient.p, hyp.side)
    D = theorem_bound(params)
    rep = check_symmetric(full_space(dec.ambient), D, budget=budget, workers=workers)
    identity_ok: bool | str = "budget" if rep.outcome == "budget" else rep.holds
    d_star = None
    if dstar:
        try:
            d_star = min_symmetric_degree(full_space(dec.ambient), max(d_max, D), budget, workers)
        except BudgetExceeded:
            d_star = None
    return TheoremVerdict(params, D, True, identity_ok, rep.witness, rep.value, d_star, rep)
