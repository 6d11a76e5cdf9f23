from fractions import Fraction

import pytest

from hochkit.bar_koszul import (
    BarError,
    based_hochschild_betti,
    based_hochschild_complex,
    koszul_dual_algebra,
    tor_betti,
    two_sided_bar,
    unnormalized_bar,
    verify_shift_theorem,
)
from hochkit.complexes import ChainMap, TruncationWindow, tensor
from hochkit.dg_algebra import (
    base_field_algebra,
    exterior_algebra,
    make_dga,
    truncated_polynomial,
)
from hochkit.exact_linalg import FieldSpec, SparseMatrix

Q = FieldSpec.rationals()


def dense_betti_of_matrix_complex(spaces, mats, field):
    """Independent oracle: betti of a finite complex given dense matrices
    {n: list-of-rows}, spaces {n: dim}; naive elimination."""

    def dense_rank(m):
        a = [row[:] for row in m]
        if not a or not a[0]:
            return 0
        rows, cols = len(a), len(a[0])
        r = 0
        for c in range(cols):
            piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = field.inv(a[r][c])
            a[r] = [field.mul(inv, v) for v in a[r]]
            for i in range(rows):
                if i != r and a[i][c] != 0:
                    fct = a[i][c]
                    a[i] = [field.sub(a[i][k], field.mul(fct, a[r][k]))
                            for k in range(cols)]
            r += 1
        return r

    out = {}
    for n, dim in spaces.items():
        rk_n = dense_rank(mats.get(n, [])) if dim else 0
        rk_n1 = dense_rank(mats.get(n + 1, []))
        out[n] = dim - rk_n - rk_n1
    return out


def test_bar_of_base_field():
    k = base_field_algebra(Q)
    b = two_sided_bar("K", k, "K", 5)
    assert b.total.betti(TruncationWindow(0, 5)) == {n: (1 if n == 0 else 0)
                                                     for n in range(6)}


def test_bar_exterior_divided_powers():
    # oracle: all products of letters vanish, d = 0; betti 1 in degrees 0,2,...,2B
    r = exterior_algebra(Q)
    for bound in (3, 5):
        b = two_sided_bar("K", r, "K", bound)
        w = TruncationWindow(0, 2 * bound + 1)
        expected = {n: (1 if n % 2 == 0 and n <= 2 * bound else 0) for n in w.degrees()}
        assert b.total.betti(w) == expected


def test_bar_truncated_polynomial_golden():
    """K[x]/x^3, |x| = 2: independent oracle with even letters (all Koszul
    signs trivial), dense elimination; golden pattern 0, 3, 8, 11."""
    r = truncated_polynomial(Q, 3, 2)
    letters = {"x": 3, "x2": 5}  # suspended degrees
    prod = {("x", "x"): "x2"}

    words = [()]
    for _ in range(4):
        words = words + [w + (a,) for w in words if len(w) == _ for a in letters]
    words = [w for w in words if len(w) <= 4]
    deg = {w: sum(letters[a] for a in w) for w in words}
    by_deg = {}
    for w in sorted(words, key=lambda w: (deg[w], w)):
        by_deg.setdefault(deg[w], []).append(w)
    idx = {w: i for ws in by_deg.values() for i, w in enumerate(ws)}
    mats = {}
    for n, ws in by_deg.items():
        rows = by_deg.get(n - 1, [])
        if not rows:
            continue
        m = [[Q.zero()] * len(ws) for _ in rows]
        for j, w in enumerate(ws):
            for i_l in range(len(w) - 1):
                t = prod.get((w[i_l], w[i_l + 1]))
                if t is None:
                    continue
                w2 = w[:i_l] + (t,) + w[i_l + 2:]
                sign = Q.one() if i_l % 2 == 0 else Q.neg(Q.one())
                m[idx[w2]][j] = Q.add(m[idx[w2]][j], sign)
        mats[n] = m
    # oracle d^2 = 0
    for n in mats:
        if n + 1 in mats:
            a, b = mats[n], mats[n + 1]
            for i in range(len(a)):
                for j in range(len(b[0])):
                    s = Q.zero()
                    for k in range(len(b)):
                        s = Q.add(s, Q.mul(a[i][k], b[k][j]))
                    assert s == 0
    spaces = {n: len(ws) for n, ws in by_deg.items()}
    oracle = dense_betti_of_matrix_complex(spaces, mats, Q)

    bar = two_sided_bar("K", r, "K", 4)
    w = TruncationWindow(0, 12)
    got = bar.total.betti(w)
    for n in w.degrees():
        assert got[n] == oracle.get(n, 0)
    # frozen golden values from the oracle
    assert {n: b for n, b in got.items() if b} == {0: 1, 3: 1, 8: 1, 11: 1}


def test_tor_valid_range_enforced():
    r = exterior_algebra(Q)
    with pytest.raises(Exception):
        tor_betti(r, 2, TruncationWindow(0, 20))


def test_tor_symmetry_opposite():
    for r in (truncated_polynomial(Q, 3, 2), truncated_polynomial(Q, 3, 1)):
        w = TruncationWindow(0, 8)
        assert tor_betti(r, 4, w) == tor_betti(r.opposite(), 4, w)


def test_normalized_vs_unnormalized():
    for r in (exterior_algebra(Q), truncated_polynomial(Q, 3, 2)):
        w = TruncationWindow(0, 6)
        norm = two_sided_bar("K", r, "K", 3, None).total.betti(w)
        unnorm = unnormalized_bar("K", r, "K", 6, w).total.betti(w)
        # unnormalized needs a deeper word bound for the same degrees; compare
        # on the normalized exact range
        lo, hi = 0, min(6, two_sided_bar("K", r, "K", 3).total.valid_range[1])
        for n in range(lo, hi + 1):
            assert norm.get(n, 0) == unnorm.get(n, 0)


def test_bar_comultiplication_is_chain_map_and_coassociative():
    r = truncated_polynomial(Q, 3, 2)
    b = two_sided_bar("K", r, "K", 3)
    t = tensor(b.total, b.total)
    comps = {}
    f = Q
    for n in b.total.space.degrees():
        entries = {}
        for j, lab in enumerate(b.total.space.basis[n]):
            for l1, l2 in b.comultiplication(lab):
                d1 = sum(3 if a == "x" else 5 for a in l1[2])
                tlab = ("t", (l1, l2), (d1, n - d1))
                entries[(t.space.index(n, tlab), j)] = f.one()
        comps[n] = SparseMatrix(t.space.dim(n), b.total.space.dim(n), entries)
    ChainMap(b.total, t, comps)  # validates commutation exactly
    # coassociativity on words: both iterated splits give all triples
    for lab in b.words():
        w = lab[2]
        left = {(w[:i], w[i:j], w[j:]) for i in range(len(w) + 1)
                for j in range(i, len(w) + 1)}
        assert len(left) == sum(1 for i in range(len(w) + 1)
                                for j in range(i, len(w) + 1))


def test_koszul_dual_of_base_field():
    k = base_field_algebra(Q)
    kd = koszul_dual_algebra(k, 4)
    assert kd.algebra.complex.space.total_dim() == 1


def test_koszul_dual_exterior_polynomial_pattern():
    r = exterior_algebra(Q)
    kd = koszul_dual_algebra(r, 5)
    w = TruncationWindow(-9, 0)
    b = kd.algebra.complex.betti(w)
    assert b == {n: (1 if n % 2 == 0 else 0) for n in w.degrees()}
    # convolution: dual words concatenate; x-dual is an even polynomial generator
    x1 = ("bw", ("x",))
    assert kd.algebra.basis_product(x1, x1) == {("bw", ("x", "x")): 1}


def test_koszul_dual_double_dual_betti():
    r = exterior_algebra(Q)
    kd = koszul_dual_algebra(r, 3)
    kdd = koszul_dual_algebra(kd.algebra, 3)
    w = TruncationWindow(0, 2)
    assert kdd.algebra.complex.betti(w) == {0: 1, 1: 1, 2: 0}


def test_based_hochschild_exterior():
    r = exterior_algebra(Q)
    w = TruncationWindow(-8, 0)
    betti, rep = based_hochschild_betti(r, 5, w)
    assert all(rep.stable_at[n] is not None for n in w.degrees())
    assert betti == {n: (1 if n % 2 == 0 else 0) for n in w.degrees()}


def test_based_hochschild_base_field():
    k = base_field_algebra(Q)
    w = TruncationWindow(-3, 0)
    betti, _ = based_hochschild_betti(k, 3, w)
    assert betti == {0: 1, -1: 0, -2: 0, -3: 0}


def test_based_hochschild_d_squared_with_internal_differential():
    # dg algebra with nonzero differential: d(y) = x2, |y| = 3, |x| = 1
    r = make_dga(
        Q,
        [("1", 0), ("x", 1), ("x2", 2), ("y", 3)],
        "1",
        {("x", "x"): {"x2": 1}, ("x", "x2"): {}, ("x2", "x"): {},
         ("x", "y"): {}, ("y", "x"): {}, ("x2", "x2"): {}, ("x2", "y"): {},
         ("y", "x2"): {}, ("y", "y"): {}},
        {"y": {"x2": 1}},
        {"1": Q.one()},
    )
    cx = based_hochschild_complex(r, 4, TruncationWindow(-10, 0))
    assert cx.space.total_dim() > 0  # construction asserts d^2 = 0 internally


def test_verify_shift_exterior():
    rep = verify_shift_theorem(exterior_algebra(Q), 5, TruncationWindow(-8, 0))
    assert rep.passed
    text = rep.to_text()
    assert "PASS" in text


def test_verify_shift_truncated_polynomials():
    rep = verify_shift_theorem(truncated_polynomial(Q, 3, 2), 5,
                               TruncationWindow(-12, 0))
    assert rep.passed
    rep = verify_shift_theorem(truncated_polynomial(Q, 3, 1), 5,
                               TruncationWindow(-8, 0))
    assert rep.passed


def test_verify_shift_rejects_non_augmented():
    r = make_dga(Q, [("1", 0), ("x", 1)], "1", {("x", "x"): {}}, None, None)
    with pytest.raises(BarError):
        verify_shift_theorem(r, 3, TruncationWindow(-4, 0))


def test_bar_rejects_unaugmented():
    r = make_dga(Q, [("1", 0), ("x", 1)], "1", {("x", "x"): {}}, None, None)
    with pytest.raises(BarError):
        two_sided_bar("K", r, "K", 2)
