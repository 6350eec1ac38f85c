"""Brute-force reference computations, written straight from the definitions.

Nothing here calls into the evaluators under test; only the structure
constant table of an algebra is read.
"""

import itertools

import numpy as np


def naive_mul(a, x, y):
    n, p = a.n, a.p
    out = [0] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            for k in range(n):
                out[k] += int(a.sc[i, j, k]) * int(x[i]) * int(y[j])
    return [v % p for v in out]


def naive_perm_sum(a, args):
    """``sum over all orderings`` of the left-to-right product, batched over S_d."""
    args = np.asarray(args, dtype=np.int64)
    d = len(args)
    perms = np.array(list(itertools.permutations(range(d))))
    sc = np.asarray(a.sc, dtype=np.int64)
    x = args[perms[:, 0]]
    for t in range(1, d):
        x = np.einsum("bi,bj,ijk->bk", x, args[perms[:, t]], sc) % a.p
    return x.sum(axis=0) % a.p


def naive_perm_sum_many(a, tuples):
    """Same as :func:`naive_perm_sum` for a stack of tuples, shape (T, d, n)."""
    tuples = np.asarray(tuples, dtype=np.int64)
    count, d, n = tuples.shape
    perms = np.array(list(itertools.permutations(range(d))))
    sc = np.asarray(a.sc, dtype=np.int64)
    flat = sc.reshape(n * n, n)
    x = tuples[:, perms[:, 0]].reshape(-1, n)
    for t in range(1, d):
        y = tuples[:, perms[:, t]].reshape(-1, n)
        # x_i y_j sc[i, j, :] summed over i, j
        x = (x[:, :, None] * y[:, None, :]).reshape(-1, n * n) @ flat % a.p
    return x.reshape(count, len(perms), n).sum(axis=1) % a.p


def words_with_content(r, s):
    """All words in letters 'b'/'c' with r b's and s c's."""
    for pos in itertools.combinations(range(r + s), r):
        yield "".join("b" if i in pos else "c" for i in range(r + s))


def delta_by_definition(r, s):
    """Every sequence (beta_1, gamma_1, ..., beta_m, gamma_m) meeting the constraints.

    Walks all sequences of nonnegative parts whose running b- and c-sums stay
    within r and s, then filters by the positivity rule; independent of the
    run-length construction used in the library.
    """
    out = set()

    def extend(parts, rb, rc):
        if len(parts) % 2 == 0 and parts and rb == 0 and rc == 0:
            if all(x >= 1 for x in parts[1:-1]):
                out.add(tuple(parts))
        if len(parts) >= 2 * (r + s):
            return
        budget = rb if len(parts) % 2 == 0 else rc
        for x in range(budget + 1):
            if len(parts) % 2 == 0:
                extend(parts + [x], rb - x, rc)
            else:
                extend(parts + [x], rb, rc - x)

    extend([], r, s)
    return out


def random_element(rng, space):
    rows = space.matrix().astype(np.int64)
    p = space.algebra.p
    if len(rows) == 0:
        return np.zeros(space.algebra.n, dtype=np.int64)
    return rng.integers(0, p, size=len(rows)) @ rows % p
