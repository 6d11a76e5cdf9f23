"""Hochschild cochain complexes with cup product and Gerstenhaber bracket,
the coalgebra-side complex computing the Hochschild cohomology of the Koszul
dual, the double cosimplicial comparison complex, and higher Hochschild
cochains over pointed simplicial-set sphere models.

Cochains are stored in the suspended representation: a basis cochain (w, e)
is the map sending the suspended word s a_1 ⊗ ... ⊗ s a_m to s e and every
other word to zero.  Its homological degree is n = |e| - |w| - m and its
suspended degree is ‖f‖ = n + 1.  Two transported tables drive every sign:

    m-hat(sa, sb) = (-1)^{|a|} s(ab)        d-hat(sa) = -s(da)

and Koszul prefix signs use suspended letter degrees ‖a‖ = |a| + 1.  The
total differential is the bracket with m-hat + d-hat expanded termwise; the
brace engine is separate code, and [m-hat + d-hat, f] == D f is asserted as
the canonical sign self-test before any bracket computation is trusted.

Truncation: cosimplicial degrees m <= bound form a quotient complex (the
differential only raises m); homology is certified by stabilization reports
over increasing bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bar_koszul import BarError, enumerate_words, sus_degree, two_sided_bar
from .complexes import (
    ChainComplex,
    TruncationWindow,
    from_basis_map,
    stabilization_report,
)
from .dg_algebra import Bimodule, DGAlgebra, add_into, regular_bimodule, scale_vec
from .reports import Report


class HochschildError(ValueError):
    pass


# ---------------------------------------------------------------------------
# coefficient protocol: a Bimodule, or any object with the same surface


class _BimoduleCoefficients:
    def __init__(self, m: Bimodule):
        self.m = m
        self.name = m.name

    def degrees(self):
        return self.m.complex.space.degrees()

    def basis(self, n):
        return self.m.complex.space.basis.get(n, ())

    def degree(self, lab):
        return self.m.degree(lab)

    def d_basis(self, lab):
        return self.m.d_basis(lab)

    def act_left(self, a, lab):
        return self.m.act_left_basis(a, lab)

    def act_right(self, lab, a):
        return self.m.act_right_basis(lab, a)


@dataclass
class HochschildComplex:
    algebra: DGAlgebra
    coefficients: object  # coefficient protocol
    bound: int
    window: TruncationWindow
    total: ChainComplex

    def cochain(self, vector: dict) -> "Cochain":
        degs = {self._label_degree(lab) for lab in vector}
        if len(degs) > 1:
            raise HochschildError("inhomogeneous cochain")
        return Cochain(self, dict(vector), degs.pop() if degs else 0)

    def _label_degree(self, lab):
        for n in self.total.space.degrees():
            if lab in self.total.space._index[n]:
                return n
        raise HochschildError(f"label {lab!r} not in complex")


@dataclass
class Cochain:
    complex: HochschildComplex
    vector: dict  # ('hc', word, value) -> coeff
    degree: int

    @property
    def suspended(self) -> int:
        return self.degree + 1

    def is_zero(self) -> bool:
        return not self.vector

    def differential(self) -> "Cochain":
        f = self.complex.algebra.field
        out: dict = {}
        for lab, c in self.vector.items():
            add_into(f, out, self.complex.total.differential_of_vector(
                self.degree, {lab: f.coerce(c)}))
        return Cochain(self.complex, out, self.degree - 1)

    def is_cocycle(self) -> bool:
        return self.differential().is_zero()


def hochschild_cochains(r: DGAlgebra, coefficients, bound: int,
                        window: TruncationWindow) -> HochschildComplex:
    """Normalized Hochschild cochain complex Hom((s Rbar)^{⊗m}, s M) through
    cosimplicial degree m <= bound, degrees clipped to the window."""
    if isinstance(coefficients, Bimodule):
        if coefficients.algebra is not r:
            raise HochschildError("coefficients are not a bimodule over the algebra")
        coeffs = _BimoduleCoefficients(coefficients)
    else:
        coeffs = coefficients
    f = r.field
    one = f.one()
    letters = [(lab, sus_degree(r, lab)) for lab in r.aug_ideal_basis()]
    sus = dict(letters)
    lo, hi = window.min_degree - 1, window.max_degree + 1

    mdegs = [coeffs.degree(e) for n in coeffs.degrees() for e in coeffs.basis(n)]
    if not mdegs:
        raise HochschildError("empty coefficient module")
    basis: dict = {}
    keep = set()
    for w, wd in enumerate_words(letters, bound, min(mdegs) - hi, max(mdegs) - lo):
        for nd in coeffs.degrees():
            n = nd - wd
            if lo <= n <= hi:
                for e in coeffs.basis(nd):
                    lab = ("hc", w, e)
                    basis.setdefault(n, []).append(lab)
                    keep.add(lab)

    # reverse indices over the augmentation-ideal letters
    rev_mult: dict = {}
    for a, _ in letters:
        for b, _ in letters:
            for t, c in r.basis_product(a, b).items():
                if t != r.unit:
                    rev_mult.setdefault(t, []).append((a, b, c))
    rev_d: dict = {}
    for a, _ in letters:
        for t, c in r.d_basis(a).items():
            rev_d.setdefault(t, []).append((a, c))

    def diff(n, lab):
        _, w, e = lab
        m = len(w)
        fsus = (n + 1) % 2  # parity of ‖f‖
        out: dict = {}

        def emit(w2, vec, coeff):
            if len(w2) > bound or coeff == 0:
                return
            for e2, c2 in vec.items():
                lab2 = ("hc", w2, e2)
                if lab2 in keep:
                    add_into(f, out, {lab2: one}, f.mul(coeff, f.coerce(c2)))

        # left-action term: word (a,)+w, coefficient (-1)^{‖f‖‖a‖+|a|} a.e
        for a, sa in letters:
            vec = coeffs.act_left(a, e)
            if vec:
                sign_exp = fsus * sa + (sa - 1)
                emit((a,) + w, vec, one if sign_exp % 2 == 0 else f.neg(one))
        # right-action term: word w+(b,), coefficient (-1)^{|e|} e.b
        esign = one if coeffs.degree(e) % 2 == 0 else f.neg(one)
        for b, _sb in letters:
            vec = coeffs.act_right(e, b)
            if vec:
                emit(w + (b,), vec, esign)
        # multiplication terms: split letter j into (a, b),
        # coefficient -(-1)^{‖f‖}(-1)^{prefix}(-1)^{|a|} c
        prefix = 0
        for j in range(m):
            for a, b, c in rev_mult.get(w[j], ()):
                sign_exp = 1 + fsus + prefix + (sus[a] - 1)
                emit(w[:j] + (a, b) + w[j + 1:], {e: c},
                     one if sign_exp % 2 == 0 else f.neg(one))
            prefix += sus[w[j]]
        # internal: value differential, coefficient -1
        emit(w, coeffs.d_basis(e), f.neg(one))
        # internal: letter differentials, coefficient +(-1)^{‖f‖}(-1)^{prefix}
        prefix = 0
        for j in range(m):
            for a, c in rev_d.get(w[j], ()):
                sign_exp = fsus + prefix
                emit(w[:j] + (a,) + w[j + 1:], {e: c},
                     one if sign_exp % 2 == 0 else f.neg(one))
            prefix += sus[w[j]]
        return out

    total = from_basis_map(f, basis, diff,
                           (window.min_degree, window.max_degree))
    return HochschildComplex(r, coeffs, bound, window, total)


# ---------------------------------------------------------------------------
# cup product and brace/Gerstenhaber operations (coefficients = the algebra)


def _require_regular(hc: HochschildComplex):
    if getattr(hc.coefficients, "name", None) != "R":
        raise HochschildError("cup/bracket need coefficients in the algebra itself")


def multiplication_cochain(hc: HochschildComplex) -> Cochain:
    """m-hat: the 2-cochain (sa, sb) -> (-1)^{|a|} s(ab), total degree -2."""
    _require_regular(hc)
    r = hc.algebra
    f = r.field
    vec: dict = {}
    for a in r.aug_ideal_basis():
        sign = f.one() if r.degree(a) % 2 == 0 else f.neg(f.one())
        for b in r.aug_ideal_basis():
            for e, c in r.basis_product(a, b).items():
                lab = ("hc", (a, b), e)
                add_into(f, vec, {lab: f.mul(sign, f.coerce(c))})
    return hc.cochain(vec)


def differential_cochain(hc: HochschildComplex) -> Cochain:
    """d-hat: the 1-cochain sa -> -s(da), total degree -2."""
    _require_regular(hc)
    r = hc.algebra
    f = r.field
    vec: dict = {}
    for a in r.aug_ideal_basis():
        for e, c in r.d_basis(a).items():
            add_into(f, vec, {("hc", (a,), e): f.neg(f.coerce(c))})
    return hc.cochain(vec)


def cup(fc: Cochain, gc: Cochain) -> Cochain:
    """(f ∪ g)(w1 w2) = (-1)^{n_g · ‖w1‖} f(w1) g(w2); strictly associative
    and unital, cochain-level."""
    hc = fc.complex
    if gc.complex is not hc:
        raise HochschildError("cup product needs cochains on the same complex")
    _require_regular(hc)
    r = hc.algebra
    f = r.field
    out: dict = {}
    ng = gc.degree % 2
    for (_, w1, e1), c1 in fc.vector.items():
        wsus = sum(sus_degree(r, a) for a in w1) % 2
        sgn = f.one() if (ng * wsus) % 2 == 0 else f.neg(f.one())
        for (_, w2, e2), c2 in gc.vector.items():
            w = w1 + w2
            if len(w) > hc.bound:
                raise HochschildError(
                    "cup product exceeds the cosimplicial bound of the complex"
                )
            coef = f.mul(sgn, f.mul(f.coerce(c1), f.coerce(c2)))
            for e, c in r.basis_product(e1, e2).items():
                lab = ("hc", w, e)
                if lab not in hc.total.space._index.get(fc.degree + gc.degree, {}):
                    raise HochschildError("cup product leaves the degree window")
                add_into(f, out, {lab: f.mul(coef, f.coerce(c))})
    return Cochain(hc, out, fc.degree + gc.degree)


def unit_cochain(hc: HochschildComplex) -> Cochain:
    _require_regular(hc)
    f = hc.algebra.field
    return hc.cochain({("hc", (), hc.algebra.unit): f.one()})


def brace(fc: Cochain, gc: Cochain) -> Cochain:
    """f{g}: insert g into each slot of f with suspended Koszul prefixes;
    the inserted value is projected to the augmentation ideal."""
    hc = fc.complex
    if gc.complex is not hc:
        raise HochschildError("brace needs cochains on the same complex")
    _require_regular(hc)
    r = hc.algebra
    f = r.field
    unit = r.unit
    gs = gc.suspended % 2
    out: dict = {}
    for (_, w1, e1), c1 in fc.vector.items():
        prefix = 0
        for j in range(len(w1)):
            sgn = f.one() if (gs * prefix) % 2 == 0 else f.neg(f.one())
            for (_, w2, e2), c2 in gc.vector.items():
                if e2 == unit or e2 != w1[j]:
                    continue
                w = w1[:j] + w2 + w1[j + 1:]
                if len(w) > hc.bound:
                    raise HochschildError("brace exceeds the cosimplicial bound")
                lab = ("hc", w, e1)
                deg = fc.degree + gc.degree + 1
                if lab not in hc.total.space._index.get(deg, {}):
                    raise HochschildError("brace leaves the degree window")
                add_into(f, out, {lab: f.mul(sgn, f.mul(f.coerce(c1), f.coerce(c2)))})
            prefix += sus_degree(r, w1[j])
    return Cochain(hc, out, fc.degree + gc.degree + 1)


def gerstenhaber_bracket(fc: Cochain, gc: Cochain) -> Cochain:
    """[f, g] = f{g} - (-1)^{‖f‖‖g‖} g{f}, a degree +1 operation in the
    homological total grading."""
    f = fc.complex.algebra.field
    left = brace(fc, gc)
    right = brace(gc, fc)
    sign = f.one() if (fc.suspended * gc.suspended) % 2 == 0 else f.neg(f.one())
    out = dict(left.vector)
    add_into(f, out, right.vector, f.neg(sign))
    return Cochain(fc.complex, out, fc.degree + gc.degree + 1)


def verify_bracket_differential_identity(hc: HochschildComplex) -> bool:
    """The canonical sign self-test: [m-hat + d-hat, f] equals the complex
    differential of f, exactly, for every basis cochain representable without
    leaving the truncation."""
    _require_regular(hc)
    f = hc.algebra.field
    mc = multiplication_cochain(hc)
    dc = differential_cochain(hc)
    mu = dict(mc.vector)
    add_into(f, mu, dc.vector)
    mc = Cochain(hc, mu, -2)
    for n in hc.total.space.degrees():
        if n - 1 < hc.window.min_degree or n > hc.window.max_degree:
            continue
        for lab in hc.total.space.basis[n]:
            if len(lab[1]) + 1 > hc.bound:
                continue  # the bracket target falls outside the truncation
            fc = hc.cochain({lab: f.one()})
            try:
                lhs = gerstenhaber_bracket(mc, fc)
            except HochschildError:
                continue
            rhs = fc.differential()
            if lhs.vector != rhs.vector:
                return False
    return True


# ---------------------------------------------------------------------------
# independent pipeline: Hom over the enveloping algebra of the bar resolution


def hochschild_via_bar_resolution(r: DGAlgebra, m: Bimodule, bound: int,
                                  window: TruncationWindow) -> ChainComplex:
    """Hom_{R⊗R^op}(B(R,R,R), M) as bimodule maps determined on middle words:
    (D F) = d_M ∘ F - (-1)^{|F|} F ∘ d_B with F(a·x·b) = (-1)^{|a||F|} a F(x) b.

    A different complex from hochschild_cochains (it is the diagonally
    twisted model); betti numbers agree degreewise, which the test suite
    checks on every test algebra.
    """
    f = r.field
    one = f.one()
    letters = [(lab, sus_degree(r, lab)) for lab in r.aug_ideal_basis()]
    sus = dict(letters)
    lo, hi = window.min_degree - 1, window.max_degree + 1
    mdegs = [m.degree(e) for e in m.labels()]
    basis: dict = {}
    keep = set()
    for w, wd in enumerate_words(letters, bound, min(mdegs) - hi, max(mdegs) - lo):
        for e in m.labels():
            n = m.degree(e) - wd
            if lo <= n <= hi:
                lab = ("hbr", w, e)
                basis.setdefault(n, []).append(lab)
                keep.add(lab)

    rev_mult: dict = {}
    for a, _ in letters:
        for b, _ in letters:
            for t, c in r.basis_product(a, b).items():
                if t != r.unit:
                    rev_mult.setdefault(t, []).append((a, b, c))
    rev_d: dict = {}
    for a, _ in letters:
        for t, c in r.d_basis(a).items():
            rev_d.setdefault(t, []).append((a, c))

    def diff(n, lab):
        _, w, e = lab
        out: dict = {}
        neg_fsign = f.neg(one) if n % 2 == 0 else one  # -(-1)^{|F|}

        def emit(w2, vec, coeff):
            if coeff == 0:
                return
            for e2, c2 in vec.items():
                lab2 = ("hbr", w2, e2)
                if lab2 in keep:
                    add_into(f, out, {lab2: one}, f.mul(coeff, f.coerce(c2)))

        # d_M ∘ F
        emit(w, m.d_basis(e), one)
        # F ∘ d_B, left-action producers: w' = (a,)+w, bar coeff +1,
        # F(a ⊗ w ⊗ 1) = (-1)^{|a| n} a·F(w)
        for a, _sa in letters:
            if len(w) + 1 > bound:
                break
            asign = one if (r.degree(a) * n) % 2 == 0 else f.neg(one)
            emit((a,) + w, m.act_left_basis(a, e), f.mul(neg_fsign, asign))
        # right-action producers: w' = w + (b,), bar coeff (-1)^{wd(w)}
        wd = sum(sus[a] for a in w)
        bsign = one if wd % 2 == 0 else f.neg(one)
        for b, _sb in letters:
            if len(w) + 1 > bound:
                break
            emit(w + (b,), m.act_right_basis(e, b), f.mul(neg_fsign, bsign))
        # inner multiplication producers: bar coeff (-1)^{prefix}(-1)^{|a|}
        prefix = 0
        for j in range(len(w)):
            for a, b, c in rev_mult.get(w[j], ()):
                if len(w) + 1 > bound:
                    break
                sgn_exp = prefix + (sus[a] - 1)
                sgn = one if sgn_exp % 2 == 0 else f.neg(one)
                emit(w[:j] + (a, b) + w[j + 1:], {e: c}, f.mul(neg_fsign, sgn))
            prefix += sus[w[j]]
        # letter-differential producers: bar coeff -(-1)^{prefix}
        prefix = 0
        for j in range(len(w)):
            for a, c in rev_d.get(w[j], ()):
                sgn = one if prefix % 2 == 0 else f.neg(one)
                emit(w[:j] + (a,) + w[j + 1:], {e: c},
                     f.neg(f.mul(neg_fsign, f.mul(sgn, f.coerce(c)))) if False else
                     f.mul(neg_fsign, f.neg(f.mul(sgn, f.coerce(c)))))
        return out

    return from_basis_map(f, basis, diff, (window.min_degree, window.max_degree))
