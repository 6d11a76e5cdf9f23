"""Two-sided bar constructions, the Koszul dual algebra B(K,R,K)^∨, based
Hochschild cohomology, Tor, and the degree-shift comparison between them.

Suspension bookkeeping: a bar word m[a_1|...|a_p]n is m ⊗ sa_1 ⊗ ... ⊗ sa_p ⊗ n
with each letter suspended (degree |a|+1).  The differential is the sum of
local odd operators applied with prefix Koszul signs:

    d_M,  letter differentials  sa -> -s(da),
    adjacent multiplications    (sa, sb) -> (-1)^{|a|} s pbar(ab),
    slot actions                (m, sa_1) -> (-1)^{|m|} m·a_1  and
                                (sa_p, n) -> a_p·n,  d_N.

pbar projects away the unit coefficient; on an adapted basis the augmentation
ideal is spanned by the non-unit basis vectors and is closed under products,
so normalized words stay normalized.  d∘d = 0 is asserted on construction.

Truncation: word length <= bound gives a subcomplex; for a connected algebra
(letters of suspended degree all >= 2, or dually all <= -2) the truncated
homology is exact in an explicit degree range, recorded as valid_range.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    ChainComplex,
    TruncationWindow,
    from_basis_map,
    stabilization_report,
)
from .dg_algebra import DGAlgebra, add_into, make_dga, scale_vec
from .exact_linalg import FieldSpec
from .reports import Report


class BarError(ValueError):
    pass


def sus_degree(r: DGAlgebra, lab) -> int:
    return r.degree(lab) + 1


def enumerate_words(letters, max_len: int, deg_lo=None, deg_hi=None):
    """All tuples of letters with length <= max_len, pruned to total suspended
    degree within [deg_lo, deg_hi] when the letter degrees allow it.

    letters: list of (label, suspended degree).
    Yields (word tuple of labels, total suspended degree).
    """
    if not letters:
        yield (), 0
        return
    degs = [d for _, d in letters]
    min_d, max_d = min(degs), max(degs)

    def rec(word, total, remaining):
        feasible_lo = total + (min(0, min_d) * remaining)
        feasible_hi = total + (max(0, max_d) * remaining)
        if deg_hi is not None and feasible_lo > deg_hi:
            return
        if deg_lo is not None and feasible_hi < deg_lo:
            return
        if (deg_lo is None or total >= deg_lo) and (deg_hi is None or total <= deg_hi):
            yield tuple(word), total
        if remaining == 0:
            return
        for lab, d in letters:
            word.append(lab)
            yield from rec(word, total + d, remaining - 1)
            word.pop()

    yield from rec([], 0, max_len)


@dataclass
class BarObject:
    """Truncated two-sided bar construction; left/right slots are 'K' or 'R'."""

    algebra: DGAlgebra
    left: str
    right: str
    bound: int
    total: ChainComplex

    @property
    def is_coalgebra(self) -> bool:
        return self.left == "K" and self.right == "K"

    def words(self):
        """Bar words by label, coalgebra case only."""
        for n in self.total.space.degrees():
            for lab in self.total.space.basis[n]:
                yield lab

    def comultiplication(self, lab) -> list:
        """Deconcatenation (sign-free): [(left word, right word)]."""
        if not self.is_coalgebra:
            raise BarError("comultiplication lives on B(K,R,K)")
        _, _, w, _ = lab
        return [((("bar", "K", w[:i], "K")), ("bar", "K", w[i:], "K"))
                for i in range(len(w) + 1)]


def _slot_labels(r: DGAlgebra, slot: str):
    if slot == "K":
        return ["K"]
    if slot == "R":
        return list(r.labels())
    raise BarError(f"bar slot must be 'K' or 'R', got {slot!r}")


def _slot_degree(r: DGAlgebra, slot: str, lab) -> int:
    return 0 if slot == "K" else r.degree(lab)


def two_sided_bar(left: str, r: DGAlgebra, right: str, bound: int,
                  window: TruncationWindow | None = None) -> BarObject:
    """Normalized two-sided bar complex through word length <= bound.

    left/right: 'K' (through the augmentation) or 'R' (regular)."""
    if r.augmentation is None:
        raise BarError("bar construction needs an augmented algebra")
    if bound < 0:
        raise BarError("bound must be >= 0")
    f = r.field
    one = f.one()
    letters = [(lab, sus_degree(r, lab)) for lab in r.aug_ideal_basis()]
    sus = dict(letters)

    deg_lo = deg_hi = None
    if window is not None:
        deg_lo, deg_hi = window.min_degree - 1, window.max_degree + 1

    # degree range over the slots
    slot_pairs = [
        (ml, nl)
        for ml in _slot_labels(r, left)
        for nl in _slot_labels(r, right)
    ]
    basis: dict = {}
    for ml, nl in slot_pairs:
        base = _slot_degree(r, left, ml) + _slot_degree(r, right, nl)
        wlo = None if deg_lo is None else deg_lo - base
        whi = None if deg_hi is None else deg_hi - base
        for w, wd in enumerate_words(letters, bound, wlo, whi):
            basis.setdefault(base + wd, []).append(("bar", ml, w, nl))

    pbar_unit = r.unit

    def pbar(vec: dict) -> dict:
        return {lab: c for lab, c in vec.items() if lab != pbar_unit}

    def diff(n, lab):
        _, ml, w, nl = lab
        out: dict = {}
        mdeg = _slot_degree(r, left, ml)

        def parity(j):
            # everything left of letter slot j (0-based): m and letters < j
            return (mdeg + sum(sus[a] for a in w[:j])) % 2

        def emit(new_lab, coeff):
            if new_lab[2] is not None:
                add_into(f, out, {new_lab: one}, coeff)

        # d_M
        if left == "R":
            for m2, c in r.d_basis(ml).items():
                emit(("bar", m2, w, nl), f.coerce(c))
        # letter differentials: -s(da_j), prefix Koszul
        for j in range(len(w)):
            sgn = one if parity(j) == 0 else f.neg(one)
            for a2, c in pbar(r.d_basis(w[j])).items():
                emit(("bar", ml, w[:j] + (a2,) + w[j + 1:], nl),
                     f.neg(f.mul(sgn, f.coerce(c))))
        # adjacent multiplications: (-1)^{|a_j|} s pbar(a_j a_{j+1})
        for j in range(len(w) - 1):
            sgn = one if parity(j) == 0 else f.neg(one)
            loc = one if r.degree(w[j]) % 2 == 0 else f.neg(one)
            for a2, c in pbar(r.basis_product(w[j], w[j + 1])).items():
                emit(("bar", ml, w[:j] + (a2,) + w[j + 2:], nl),
                     f.mul(f.mul(sgn, loc), f.coerce(c)))
        # left slot action (only for M = R; K kills the augmentation ideal)
        if left == "R" and w:
            sgn = one if mdeg % 2 == 0 else f.neg(one)
            for m2, c in r.basis_product(ml, w[0]).items():
                emit(("bar", m2, w[1:], nl), f.mul(sgn, f.coerce(c)))
        # right slot action
        if right == "R" and w:
            sgn = one if parity(len(w) - 1) == 0 else f.neg(one)
            for n2, c in r.basis_product(w[-1], nl).items():
                emit(("bar", ml, w[:-1], n2), f.mul(sgn, f.coerce(c)))
        # d_N
        if right == "R":
            sgn = one if parity(len(w)) == 0 else f.neg(one)
            for n2, c in r.d_basis(nl).items():
                emit(("bar", ml, w, n2), f.mul(sgn, f.coerce(c)))
        return out

    valid = _truncation_valid_range(r, left, right, bound, window)
    total = from_basis_map(f, basis, diff, valid)
    return BarObject(r, left, right, bound, total)


def _truncation_valid_range(r, left, right, bound, window):
    """Exact degree range of the length-truncated bar, when derivable: with
    K slots and all letters of suspended degree >= 2 (connected positive),
    words longer than the bound live above (bound+1)*2 - 1; dually for
    connected negative.  Otherwise fall back to the caller's window."""
    sus = [sus_degree(r, lab) for lab in r.aug_ideal_basis()]
    big = 10 ** 9
    if left == "K" and right == "K":
        if not sus:
            return None
        if all(s >= 1 for s in sus):
            return (-big, min(sus) * (bound + 1) - 1)
        if all(s <= -1 for s in sus):
            return (max(sus) * (bound + 1) + 1, big)
    if window is not None:
        return (window.min_degree, window.max_degree)
    return None


def unnormalized_bar(left: str, r: DGAlgebra, right: str, bound: int,
                     window: TruncationWindow | None = None) -> BarObject:
    """Unnormalized variant built as the plain simplicial totalization:
    letters run over the whole algebra basis, faces are chain maps composed
    of actions/multiplications, and the total differential is
    sum (-1)^i f_i + (-1)^p d_internal with unsuspended Koszul signs inside
    d_internal.  Word degree is simplicial p plus internal degree.
    Cross-check against the normalized complex only."""
    if r.augmentation is None:
        raise BarError("bar construction needs an augmented algebra")
    f = r.field
    one = f.one()
    letters = [(lab, r.degree(lab) + 1) for lab in r.labels()]
    deg_lo = deg_hi = None
    if window is not None:
        deg_lo, deg_hi = window.min_degree - 1, window.max_degree + 1
    basis: dict = {}
    for ml in _slot_labels(r, left):
        for nl in _slot_labels(r, right):
            base = _slot_degree(r, left, ml) + _slot_degree(r, right, nl)
            wlo = None if deg_lo is None else deg_lo - base
            whi = None if deg_hi is None else deg_hi - base
            for w, wd in enumerate_words(letters, bound, wlo, whi):
                basis.setdefault(base + wd, []).append(("ubar", ml, w, nl))

    def diff(n, lab):
        _, ml, w, nl = lab
        out: dict = {}
        p = len(w)
        mdeg = _slot_degree(r, left, ml)

        def face_sign(i):
            return one if i % 2 == 0 else f.neg(one)

        if w:
            # f_0: left action (through the augmentation when the slot is K)
            if left == "K":
                val = r.augmentation.get(w[0], f.zero())
                if val != 0:
                    add_into(f, out, {("ubar", ml, w[1:], nl): val})
            else:
                for m2, c in r.basis_product(ml, w[0]).items():
                    add_into(f, out, {("ubar", m2, w[1:], nl): f.coerce(c)})
            # inner faces
            for i in range(1, p):
                for a2, c in r.basis_product(w[i - 1], w[i]).items():
                    add_into(f, out,
                             {("ubar", ml, w[:i - 1] + (a2,) + w[i + 1:], nl): one},
                             f.mul(face_sign(i), f.coerce(c)))
            # f_p: right action
            if right == "K":
                val = r.augmentation.get(w[-1], f.zero())
                if val != 0:
                    add_into(f, out, {("ubar", ml, w[:-1], nl): f.mul(face_sign(p), val)})
            else:
                for n2, c in r.basis_product(w[-1], nl).items():
                    add_into(f, out, {("ubar", ml, w[:-1], n2): one},
                             f.mul(face_sign(p), f.coerce(c)))
        # internal tensor differential, weighted (-1)^p, unsuspended signs
        psign = face_sign(p)
        if left == "R":
            for m2, c in r.d_basis(ml).items():
                add_into(f, out, {("ubar", m2, w, nl): one}, f.mul(psign, f.coerce(c)))
        for j in range(p):
            pre = mdeg + sum(r.degree(a) for a in w[:j])
            sgn = psign if pre % 2 == 0 else f.neg(psign)
            for a2, c in r.d_basis(w[j]).items():
                add_into(f, out, {("ubar", ml, w[:j] + (a2,) + w[j + 1:], nl): one},
                         f.mul(sgn, f.coerce(c)))
        if right == "R":
            pre = mdeg + sum(r.degree(a) for a in w)
            sgn = psign if pre % 2 == 0 else f.neg(psign)
            for n2, c in r.d_basis(nl).items():
                add_into(f, out, {("ubar", ml, w, n2): one}, f.mul(sgn, f.coerce(c)))
        return out

    valid = (window.min_degree, window.max_degree) if window else None
    total = from_basis_map(f, basis, diff, valid)
    return BarObject(r, left, right, bound, total)


def tor_betti(r: DGAlgebra, bound: int, window: TruncationWindow) -> dict:
    """Tor_R(K, K) = homology of B(K, R, K) in the window."""
    if not r.is_connected():
        raise BarError("Tor pipeline needs a connected augmented algebra")
    b = two_sided_bar("K", r, "K", bound)
    return b.total.betti(window)


# ---------------------------------------------------------------------------
# the Koszul dual algebra


@dataclass
class KoszulDualAlgebra:
    algebra: DGAlgebra
    source: DGAlgebra
    bound: int


def koszul_dual_algebra(r: DGAlgebra, bound: int) -> KoszulDualAlgebra:
    """R^! = B(K,R,K)^∨ with the convolution product (concatenation of dual
    words, Koszul-signed), truncated to word length <= bound.

    The span of longer words is a dg ideal (the dual differential raises word
    length, products add lengths), so the truncation is an honest dg algebra
    quotient; make_dga re-checks every axiom on it.  The exactness range of
    the underlying complex is the negated bar range.
    """
    if not r.is_connected():
        raise BarError("Koszul dual needs a connected augmented algebra")
    f = r.field
    letters = [(lab, sus_degree(r, lab)) for lab in r.aug_ideal_basis()]
    words = sorted(enumerate_words(letters, bound), key=lambda t: (t[1], t[0]))
    deg = dict(words)
    keep = set(deg)
    basis = [(("bw", w), -wd) for w, wd in words]
    unit = ("bw", ())

    mult: dict = {}
    for u, du in words:
        if not u:
            continue
        for v, dv in words:
            if not v:
                continue
            cat = u + v
            if cat in keep:
                sign = f.one() if (du * dv) % 2 == 0 else f.neg(f.one())
                mult[(("bw", u), ("bw", v))] = {("bw", cat): sign}
            else:
                mult[(("bw", u), ("bw", v))] = {}

    # d^!(w^∨) = (-1)^{deg w} sum over words w' with <w^∨, d_B w'> != 0
    bar = two_sided_bar("K", r, "K", bound)
    dual_diff: dict = {}
    for n in bar.total.space.degrees():
        for wlab in bar.total.space.basis[n]:
            w2 = wlab[2]
            for tlab, c in bar.total.differential_of_vector(n, {wlab: 1}).items():
                w = tlab[2]
                sign = f.one() if deg[w] % 2 == 0 else f.neg(f.one())
                add_into(f, dual_diff.setdefault(w, {}),
                         {("bw", w2): f.mul(sign, f.coerce(c))})
    diff = {("bw", w): vec for w, vec in dual_diff.items() if vec}

    alg = make_dga(f, basis, unit, mult, diff, {unit: f.one()}, commutative=False)
    if bar.total.valid_range is not None:
        lo, hi = bar.total.valid_range
        alg.complex.valid_range = (-hi, -lo)
    return KoszulDualAlgebra(alg, r, bound)


# ---------------------------------------------------------------------------
# based Hochschild cohomology and the shift comparison


def based_hochschild_complex(r: DGAlgebra, bound: int,
                             window: TruncationWindow) -> ChainComplex:
    """Normalized based Hochschild cochains Hom((s Rbar)^{⊗m}, K), m <= bound.

    With trivial coefficients only the adjacent-multiplication and letter
    terms of the cochain differential survive; a cochain is stored by the
    word it supports, in homological degree -(suspended word degree).
    """
    if r.augmentation is None:
        raise BarError("based Hochschild cohomology needs an augmentation")
    f = r.field
    one = f.one()
    letters = [(lab, sus_degree(r, lab)) for lab in r.aug_ideal_basis()]
    sus = dict(letters)
    basis: dict = {}
    keep = set()
    for w, wd in enumerate_words(letters, bound,
                                 -window.max_degree - 1, -window.min_degree + 1):
        basis.setdefault(-wd, []).append(("bhc", w))
        keep.add(w)

    def diff(n, lab):
        """Cochain differential with trivial coefficients: the multiplication
        term carries -(-1)^{‖f‖}(-1)^{prefix}(-1)^{|a|}, the letter term
        +(-1)^{‖f‖}(-1)^{prefix}, with ‖f‖ = n+1 and suspended prefixes."""
        w = lab[1]
        out: dict = {}
        fsign = one if (n + 1) % 2 == 0 else f.neg(one)  # (-1)^{‖f‖}
        # w' = w with letter j split into (a, b), pbar(ab) containing w[j]
        for j in range(len(w)):
            prefix = sum(sus[a] for a in w[:j])
            for a, _da in letters:
                for b, _db in letters:
                    c = r.basis_product(a, b).get(w[j])
                    if c is None:
                        continue
                    w2 = w[:j] + (a, b) + w[j + 1:]
                    if len(w2) > bound or w2 not in keep:
                        continue
                    sgn = one if prefix % 2 == 0 else f.neg(one)
                    loc = one if r.degree(a) % 2 == 0 else f.neg(one)
                    add_into(f, out, {("bhc", w2): one},
                             f.neg(f.mul(f.mul(fsign, f.mul(sgn, loc)), f.coerce(c))))
        # w' = w with letter j replaced by a, da containing w[j]
        for j in range(len(w)):
            prefix = sum(sus[a] for a in w[:j])
            for a, _da in letters:
                c = r.d_basis(a).get(w[j])
                if c is None:
                    continue
                w2 = w[:j] + (a,) + w[j + 1:]
                if w2 not in keep:
                    continue
                sgn = one if prefix % 2 == 0 else f.neg(one)
                add_into(f, out, {("bhc", w2): one},
                         f.mul(fsign, f.mul(sgn, f.coerce(c))))
        return out

    return from_basis_map(f, basis, diff, (window.min_degree, window.max_degree))


def based_hochschild_betti(r: DGAlgebra, bound: int, window: TruncationWindow):
    """(stable betti, stabilization report) at truncations bound and bound+1."""
    if not r.is_connected():
        raise BarError("based Hochschild pipeline needs a connected algebra")
    tables = []
    for b in (bound, bound + 1):
        cx = based_hochschild_complex(r, b, window)
        tables.append((b, cx.betti(window)))
    rep = stabilization_report(tables, window)
    return rep.stable_betti(), rep


def verify_shift_theorem(r: DGAlgebra, bound: int,
                         window: TruncationWindow) -> Report:
    """Compare based Hochschild cohomology with K ⊕ (dual reduced Tor):
    betti_n(HC*_based) == [n = 0] + reducedTor_{-n}, the degree-shift
    statement relating Hochschild and Quillen cohomology at k = 1."""
    if not r.is_connected():
        raise BarError("shift comparison needs a connected augmented algebra")
    lhs, rep = based_hochschild_betti(r, bound, window)
    tor_window = TruncationWindow(
        max(0, -window.max_degree), -window.min_degree, bound
    )
    tor = tor_betti(r, bound, tor_window)
    reduced = dict(tor)
    if 0 in reduced:
        reduced[0] -= 1  # remove the unit class of Tor_0 = K
    rows = []
    ok = True
    for n in sorted(rep.stable_degrees(), reverse=True):
        rhs = (1 if n == 0 else 0) + reduced.get(-n, 0)
        match = lhs[n] == rhs
        ok = ok and match
        rows.append((n, lhs[n], rhs, rep.stable_at[n], "ok" if match else "MISMATCH"))
    unstable = [n for n in window.degrees() if rep.stable_at[n] is None]
    notes = []
    if unstable:
        notes.append(f"unstable degrees skipped: {sorted(unstable)}")
    return Report(
        title="based Hochschild cohomology vs shifted dual Tor",
        claim=(
            "based Hochschild cohomology of a connected augmented algebra is "
            "K plus the dual of reduced Tor_R(K,K) placed in negative degrees "
            "(Quillen cohomology shifted by one)"
        ),
        parameters={"algebra": _algebra_name(r), "bound": bound,
                    "window": [window.min_degree, window.max_degree]},
        columns=("degree", "HC*_based", "K+dual(red.Tor)", "stable at", "status"),
        rows=rows,
        passed=ok and len(rows) > 0,
        notes=notes,
    )


def _algebra_name(r: DGAlgebra) -> str:
    degs = {n: r.complex.dim(n) for n in r.complex.space.degrees()}
    return f"dga(dims {degs}, unit {r.unit!r})"
