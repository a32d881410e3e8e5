import random
from fractions import Fraction

import pytest

from confbetti import RationalMatrix, betti_from_ranks, rank


def gaussian_rank(dense):
    """Textbook dense Gaussian elimination over Fraction, the independent
    oracle for the fraction-free path."""
    m = [[Fraction(x) for x in row] for row in dense]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def random_sparse(rng, rows, cols, density=0.2):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                entries[(r, c)] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return RationalMatrix(rows, cols, entries)


def to_dense(m):
    return [
        [m.entries.get((r, c), Fraction(0)) for c in range(m.cols)]
        for r in range(m.rows)
    ]


def test_zero_and_trivial_matrices():
    assert rank(RationalMatrix(0, 0, {})) == 0
    assert rank(RationalMatrix(3, 4, {})) == 0
    assert rank(RationalMatrix(1, 1, {(0, 0): Fraction(2)})) == 1


def test_proportional_rows():
    m = RationalMatrix.from_rows([[1, 1], [2, 2]])
    assert rank(m) == 1


def test_rank_bounded_by_shape():
    rng = random.Random(7)
    for _ in range(20):
        m = random_sparse(rng, rng.randint(1, 12), rng.randint(1, 12), 0.5)
        assert rank(m) <= min(m.rows, m.cols)


@pytest.mark.parametrize("trial", range(30))
def test_agreement_with_gaussian_oracle(trial):
    rng = random.Random(1000 + trial)
    rows = rng.randint(1, 50)
    cols = rng.randint(1, 50)
    m = random_sparse(rng, rows, cols, density=rng.choice([0.05, 0.15, 0.4]))
    assert rank(m) == gaussian_rank(to_dense(m))


@pytest.mark.parametrize("trial", range(10))
def test_invariance_under_shuffles_and_transpose(trial):
    rng = random.Random(2000 + trial)
    m = random_sparse(rng, rng.randint(2, 20), rng.randint(2, 20), 0.3)
    base = rank(m)
    rperm = list(range(m.rows))
    cperm = list(range(m.cols))
    rng.shuffle(rperm)
    rng.shuffle(cperm)
    shuffled = RationalMatrix(
        m.rows,
        m.cols,
        {(rperm[r], cperm[c]): v for (r, c), v in m.entries.items()},
    )
    assert rank(shuffled) == base
    assert rank(m.transpose()) == base


def test_rational_entries_are_exact():
    # a float path would lose this cancellation
    big = 10**30
    m = RationalMatrix.from_rows(
        [[Fraction(1, big), 1], [Fraction(1, big), Fraction(big + 1, big)]]
    )
    assert rank(m) == 2
    m2 = RationalMatrix.from_rows([[Fraction(1, 3), Fraction(1, 7)], [Fraction(3), Fraction(9, 7)]])
    assert rank(m2) == 1


def test_entry_bounds_checked():
    with pytest.raises(ValueError):
        RationalMatrix(1, 1, {(1, 0): Fraction(1)})


def test_betti_from_ranks():
    assert betti_from_ranks(1, 0, 0) == 1
    assert betti_from_ranks(4, 1, 2) == 1
    # sphere k=2 reduced, degree 2: incoming rank 1 kills the slice
    assert betti_from_ranks(1, 0, 1) == 0
    with pytest.raises(ValueError):
        betti_from_ranks(2, 2, 1)
