import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import whole, zoo_files
from oracles import naive_mul, naive_perm_sum, random_element
from sumpi import (
    BudgetExceeded,
    MultilinearPoly,
    check_identity,
    check_symmetric,
    commutator_product_poly,
    commutator_square_poly,
    eval_poly,
    eval_symmetric,
    full_space,
    min_symmetric_degree,
    nilpotency_index,
    subspace_product,
    sym_poly,
    zero_space,
)
from sumpi.algebra import is_subalgebra
from sumpi import zoo


def expand(a, terms, args):
    """Direct expansion of a signed monomial list with the naive product."""
    total = [0] * a.n
    for perm, coeff in terms:
        prod = list(args[perm[0] - 1])
        for idx in perm[1:]:
            prod = naive_mul(a, prod, args[idx - 1])
        total = [(t + coeff * v) % a.p for t, v in zip(total, prod)]
    return total


# construction


def test_sym_poly_small():
    assert sym_poly(1).as_dict() == {(1,): 1}
    assert sym_poly(2).as_dict() == {(1, 2): 1, (2, 1): 1}
    s3 = sym_poly(3)
    assert len(s3) == 6 and set(s3.as_dict().values()) == {1}
    with pytest.raises(ValueError):
        sym_poly(9)


def test_commutator_polys():
    assert commutator_product_poly(1).as_dict() == {(1, 2): 1, (2, 1): -1}
    assert commutator_square_poly().as_dict() == {
        (1, 2, 3, 4): 1,
        (2, 1, 3, 4): -1,
        (1, 2, 4, 3): -1,
        (2, 1, 4, 3): 1,
    }
    assert commutator_product_poly(2).as_dict() == commutator_square_poly().as_dict()
    assert len(commutator_product_poly(3)) == 8
    with pytest.raises(ValueError):
        commutator_product_poly(5)


def test_poly_validation():
    with pytest.raises(ValueError):
        MultilinearPoly(2, (((1, 1), 1),))
    with pytest.raises(ValueError):
        MultilinearPoly(2, (((1, 2), 1), ((1, 2), 2)))
    with pytest.raises(ValueError):
        MultilinearPoly(2, (((1, 2), 0),))


# evaluation


def test_eval_poly_examples(u2):
    a = u2.algebra
    e11, e22, e12 = (a.basis(i) for i in range(3))
    assert list(eval_poly(sym_poly(2), a, [e11, e12])) == list(e12)
    x = a.element([1, 1, 1])
    assert not eval_poly(commutator_product_poly(1), a, [x, x]).any()
    with pytest.raises(ValueError):
        eval_poly(sym_poly(2), a, [e11])


def test_comm2_examples(u2):
    a = u2.algebra
    e11, e12 = a.basis(0), a.basis(2)
    args = [e11, e12, e11, e12]
    f = commutator_square_poly()
    assert expand(a, f.terms, args) == [0, 0, 0]
    assert list(eval_poly(f, a, args)) == [0, 0, 0]

    m = zoo.full_matrix(2, 2).algebra  # basis e11, e22, e12, e21
    args = [m.basis(0), m.basis(2), m.basis(3), m.basis(0)]
    expected = expand(m, f.terms, args)
    assert any(expected)
    assert list(eval_poly(f, m, args)) == expected


def test_comm2_vanishes_on_commutative(rng):
    t = zoo.truncated_poly(5, 3).algebra
    f = commutator_square_poly()
    for _ in range(20):
        args = [rng.integers(0, 3, t.n) for _ in range(4)]
        assert not eval_poly(f, t, args).any()


def test_eval_symmetric_small(u2):
    a = u2.algebra
    x = a.element([1, 0, 1])
    assert list(eval_symmetric(a, [x])) == list(x)
    assert list(eval_symmetric(a, [a.basis(0), a.basis(2)])) == [0, 0, 1]
    with pytest.raises(BudgetExceeded):
        eval_symmetric(a, [x] * 25)


@pytest.mark.parametrize("f", zoo_files(), ids=lambda f: f.algebra.name)
def test_eval_symmetric_matches_permutation_sum(f, rng):
    a = f.algebra
    for d in range(1, 7):
        for _ in range(15):
            args = [rng.integers(0, a.p, a.n) for _ in range(d)]
            expected = naive_perm_sum(a, args)
            assert np.array_equal(eval_symmetric(a, args), expected)
            if d <= 4:
                assert np.array_equal(eval_poly(sym_poly(d), a, args), expected)


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_eval_symmetric_is_symmetric_and_multilinear(data):
    f = data.draw(st.sampled_from(zoo_files()))
    a = f.algebra
    d = data.draw(st.integers(1, 6))
    vec = st.lists(st.integers(0, a.p - 1), min_size=a.n, max_size=a.n)
    args = [np.array(data.draw(vec)) for _ in range(d)]
    base = eval_symmetric(a, args)
    perm = data.draw(st.permutations(range(d)))
    assert np.array_equal(eval_symmetric(a, [args[i] for i in perm]), base)

    slot = data.draw(st.integers(0, d - 1))
    y = np.array(data.draw(vec))
    lam = data.draw(st.integers(0, a.p - 1))
    mixed = list(args)
    mixed[slot] = (args[slot] + lam * y) % a.p
    swapped = list(args)
    swapped[slot] = y
    expected = (base + lam * eval_symmetric(a, swapped)) % a.p
    assert np.array_equal(eval_symmetric(a, mixed), expected)


@pytest.mark.parametrize("f", [f for f in zoo_files() if f.algebra.p in (2, 3)], ids=lambda f: f.algebra.name)
def test_repetition_vanishing(f, rng):
    a = f.algebra
    p = a.p
    for _ in range(40):
        d = int(rng.integers(p, 7))
        reps = int(rng.integers(p, d + 1))
        x = rng.integers(0, p, a.n)
        args = [x] * reps + [rng.integers(0, p, a.n) for _ in range(d - reps)]
        rng.shuffle(args)
        assert not eval_symmetric(a, args).any()


# identity checks


def test_check_identity_examples(u2):
    D = u2.subspaces["D"]
    assert check_identity(commutator_product_poly(1), D).holds
    rep = check_identity(commutator_product_poly(1), whole(u2))
    assert rep.outcome == "fails"
    assert rep.witness == (0, 2)  # (e11, e12)
    assert rep.value == (0, 0, 1)  # e12
    assert check_identity(commutator_square_poly(), whole(u2)).holds


def brute_force_first_failure(f, space):
    # every tuple of rows, in lexicographic order, through the naive expansion
    a = space.algebra
    rows = [list(r) for r in space.rows]
    for idx in itertools.product(range(len(rows)), repeat=f.degree):
        val = expand(a, f.terms, [rows[i] for i in idx])
        if any(val):
            return idx, tuple(val)
    return None


def test_commutator_square_on_u3():
    # [e11, e12][e22, e23] = e12 e23 = e13, so U(3) is outside the
    # [x,y][z,w] = 0 class even though its strictly upper part is nilpotent
    u3 = zoo.upper_triangular(3, 2)
    f = commutator_product_poly(2)
    expected = brute_force_first_failure(f, whole(u3))
    assert expected is not None
    rep = check_identity(f, whole(u3))
    assert (rep.witness, rep.value) == expected
    labels = u3.algebra.basis_labels
    assert [labels[i] for i in rep.witness] == ["e11", "e12", "e22", "e23"]
    assert check_identity(commutator_product_poly(3), whole(u3)).holds


def test_check_symmetric_examples(u2):
    assert check_symmetric(u2.subspaces["N"], 2).holds
    assert check_symmetric(u2.subspaces["D"], 2).holds
    d3 = zoo.upper_triangular(2, 3).subspaces["D"]
    rep = check_symmetric(d3, 2)
    assert rep.outcome == "fails"
    assert rep.witness == (0, 0)
    assert rep.value == (2, 0, 0)


def test_min_symmetric_degree_examples(u2):
    assert min_symmetric_degree(u2.subspaces["N"]) == 2
    assert min_symmetric_degree(zoo.upper_triangular(2, 3).subspaces["D"]) == 3
    assert min_symmetric_degree(zero_space(u2.algebra)) == 1


def brute_min_symmetric_degree(space, d_max):
    a = space.algebra
    rows = [np.array(r) for r in space.rows]
    for d in range(1, d_max + 1):
        if all(
            not naive_perm_sum(a, [rows[i] for i in idx]).any()
            for idx in itertools.product(range(len(rows)), repeat=d)
        ):
            return d
    return None


def test_min_symmetric_degree_of_u2(u2):
    expected = brute_min_symmetric_degree(whole(u2), 5)
    assert expected == 4
    assert min_symmetric_degree(whole(u2)) == expected


def test_min_symmetric_degree_of_diagonal_f3():
    d3 = zoo.diagonal(3, 3)
    # commutative, so s_d = d! x1...xd; 3 is the least d with 3 | d!
    assert min_symmetric_degree(whole(d3)) == 3


@pytest.mark.parametrize("f", zoo_files(), ids=lambda f: f.algebra.name)
def test_sym_poly_check_agrees_with_symmetric_check(f):
    spaces = [whole(f)] + list(f.subspaces.values())
    for s in spaces:
        for d in range(1, 6):
            if s.dim**d * math.factorial(d) > 400_000:
                continue
            a = check_identity(sym_poly(d), s)
            b = check_symmetric(s, d)
            assert a.holds == b.holds, (s, d)


@pytest.mark.parametrize("f", zoo_files(), ids=lambda f: f.algebra.name)
def test_nilpotency_dominance(f):
    for s in [whole(f)] + list(f.subspaces.values()):
        if not is_subalgebra(s):
            continue
        m = nilpotency_index(s, 8)
        if m is None:
            continue
        for d in range(m, 8):
            assert check_symmetric(s, d).holds


def test_budget_outcome(u2):
    u3 = zoo.upper_triangular(3, 3)
    rep = check_symmetric(whole(u3), 20)
    assert rep.outcome == "budget"
    assert not rep.holds
    assert check_identity(sym_poly(8), whole(u3), budget=1000).outcome == "budget"
    with pytest.raises(BudgetExceeded):
        min_symmetric_degree(whole(u3), 12, budget=1000)


def test_parallel_sweep_matches_serial():
    u3 = zoo.upper_triangular(3, 3)
    for d in (3, 5, 8):
        serial = check_symmetric(whole(u3), d)
        parallel = check_symmetric(whole(u3), d, workers=3)
        assert serial == parallel
    f = commutator_product_poly(2)
    assert check_identity(f, whole(u3)) == check_identity(f, whole(u3), workers=2)
    big = zoo.full_matrix(2, 3)
    assert check_symmetric(whole(big), 6) == check_symmetric(whole(big), 6, workers=2)


def test_random_elements_of_subspace_obey_identity(u2, rng):
    # multilinearity: vanishing on basis rows carries over to arbitrary elements
    a = u2.algebra
    N = u2.subspaces["N"]
    for _ in range(50):
        args = [random_element(rng, N) for _ in range(2)]
        assert not eval_symmetric(a, args).any()
    s = whole(u2)
    for _ in range(30):
        args = [random_element(rng, s) for _ in range(4)]
        assert not eval_symmetric(a, args).any()
