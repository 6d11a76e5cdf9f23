import random
from fractions import Fraction

import pytest

from hochkit.exact_linalg import (
    ArithmeticDomainError,
    FieldSpec,
    SparseMatrix,
    image_basis,
    kernel_basis,
    rank,
    solve,
)

Q = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F5 = FieldSpec.prime(5)


def dense_rank(m: SparseMatrix, field: FieldSpec) -> int:
    """Independent oracle: naive dense Gaussian elimination."""
    a = [[field.zero() for _ in range(m.cols)] for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        a[i][j] = field.coerce(v)
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(inv, v) for v in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [field.sub(a[i][k], field.mul(f, a[r][k])) for k in range(m.cols)]
        r += 1
        if r == m.rows:
            break
    return r


def random_matrix(rng, rows, cols, density=0.4, field=Q):
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                entries[(i, j)] = field.coerce(rng.randint(-3, 3))
    return SparseMatrix(rows, cols, entries)


def test_field_parse_and_errors():
    assert FieldSpec.parse("rationals") == Q
    assert FieldSpec.parse("fp:7") == FieldSpec.prime(7)
    with pytest.raises(ValueError):
        FieldSpec.parse("fp:6")
    with pytest.raises(ValueError):
        FieldSpec.parse("reals")
    with pytest.raises(ArithmeticDomainError):
        F2.coerce(Fraction(1, 2))
    assert F5.coerce(Fraction(1, 2)) == 3


def test_rank_trivial_cases():
    assert rank(SparseMatrix.zero(3, 3), Q) == 0
    assert rank(SparseMatrix.identity(3, F2), F2) == 3
    m = SparseMatrix(2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    assert rank(m, F2) == 1
    assert rank(m, Q) == 1


def test_kernel_trivial_cases():
    assert kernel_basis(SparseMatrix.identity(2, Q), Q) == []
    assert len(kernel_basis(SparseMatrix.zero(2, 3), Q)) == 3
    m = SparseMatrix(2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    (v,) = kernel_basis(m, Q)
    # proportional to (1, -1)
    assert v[0] == -v[1] and v[0] != 0


def test_rank_nullity_against_dense_oracle():
    rng = random.Random(20240601)
    for trial in range(60):
        rows = rng.randint(1, 8)
        cols = rng.randint(1, 8)
        field = [Q, F2, F5][trial % 3]
        m = random_matrix(rng, rows, cols, field=field)
        r = rank(m, field)
        assert r == dense_rank(m, field)
        ker = kernel_basis(m, field)
        assert r + len(ker) == cols
        for v in ker:
            assert m.apply(v, field) == {}
        im = image_basis(m, field)
        assert len(im) == r


def test_rank_invariant_under_permutation():
    rng = random.Random(7)
    for _ in range(20):
        m = random_matrix(rng, 6, 5)
        rp = list(range(6))
        cp = list(range(5))
        rng.shuffle(rp)
        rng.shuffle(cp)
        pm = SparseMatrix(
            6, 5, {(rp[i], cp[j]): v for (i, j), v in m.entries.items()}
        )
        assert rank(m, Q) == rank(pm, Q)


def test_rank_with_true_fractions():
    m = SparseMatrix(2, 2, {(0, 0): Fraction(1, 2), (0, 1): Fraction(1, 3),
                            (1, 0): Fraction(3, 2), (1, 1): 1})
    assert rank(m, Q) == dense_rank(m, Q)


def test_solve_consistent_and_inconsistent():
    rng = random.Random(99)
    for _ in range(30):
        m = random_matrix(rng, 6, 5)
        x = {j: Q.coerce(rng.randint(-2, 2)) for j in range(5)}
        b = m.apply(x, Q)
        got = solve(m, b, Q)
        assert got is not None
        assert m.apply(got, Q) == b
    # inconsistent: 0 = 1
    m = SparseMatrix(2, 1, {(0, 0): 1})
    assert solve(m, {0: 1, 1: 1}, Q) is None


def test_matmul_and_apply():
    a = SparseMatrix(2, 3, {(0, 0): 1, (1, 2): 2})
    b = SparseMatrix(3, 2, {(0, 1): 1, (2, 0): 3})
    ab = a.matmul(b, Q)
    assert ab.entries == {(0, 1): 1, (1, 0): 6}
