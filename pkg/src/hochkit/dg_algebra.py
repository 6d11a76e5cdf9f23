"""Differential graded algebras, bimodules, enveloping algebras, and the
simplicial cochain algebra.

A DGAlgebra stores bilinear structure constants on an *adapted* basis: the
unit is itself a basis vector and every other basis vector is killed by the
augmentation (when one is present).  All axioms — associativity, unitality,
the Leibniz rule, graded commutativity when flagged, augmentation
multiplicativity — are asserted exhaustively over basis tuples at
construction time; a failed axiom reports the offending tuple.

Cochain algebras of finite triangulations use the Alexander-Whitney
(front-face/back-face) cup product: strictly associative and unital, not
commutative.  Topological cochain degree q is stored as homological degree
-q, and the augmentation is evaluation at a chosen base vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import ChainComplex, ComplexError, GradedSpace
from .exact_linalg import FieldSpec, SparseMatrix


class AlgebraAxiomError(ValueError):
    """An algebra/module axiom failed; the message carries the witness tuple."""


def add_into(field, acc: dict, vec: dict, scale=None):
    if scale is None:
        scale = field.one()
    if scale == 0:
        return acc
    for lab, c in vec.items():
        s = field.add(acc.get(lab, field.zero()), field.mul(scale, field.coerce(c)))
        if s == 0:
            acc.pop(lab, None)
        else:
            acc[lab] = s
    return acc


def scale_vec(field, vec: dict, scale) -> dict:
    return add_into(field, {}, vec, scale)


@dataclass
class DGAlgebra:
    complex: ChainComplex
    unit: object
    mult: dict  # (label, label) -> {label: coeff}; missing pairs multiply to 0
    commutative: bool = False
    augmentation: dict | None = None  # label -> coeff; missing labels augment to 0

    def __post_init__(self):
        self._degree = {}
        for n, labels in self.complex.space.basis.items():
            for lab in labels:
                if lab in self._degree:
                    raise AlgebraAxiomError(f"label {lab!r} appears in two degrees")
                self._degree[lab] = n

    @property
    def field(self) -> FieldSpec:
        return self.complex.field

    def degree(self, lab) -> int:
        return self._degree[lab]

    def labels(self):
        for n in self.complex.space.degrees():
            yield from self.complex.space.basis[n]

    def basis_product(self, a, b) -> dict:
        if a == self.unit:
            return {b: self.field.one()}
        if b == self.unit:
            return {a: self.field.one()}
        return self.mult.get((a, b), {})

    def product(self, va: dict, vb: dict) -> dict:
        f = self.field
        out: dict = {}
        for a, ca in va.items():
            for b, cb in vb.items():
                add_into(f, out, self.basis_product(a, b), f.mul(f.coerce(ca), f.coerce(cb)))
        return out

    def d_vec(self, vec: dict) -> dict:
        f = self.field
        out: dict = {}
        for lab, c in vec.items():
            add_into(f, out, self.d_basis(lab), f.coerce(c))
        return out

    def d_basis(self, lab) -> dict:
        n = self.degree(lab)
        m = self.complex.d.get(n)
        if m is None:
            return {}
        j = self.complex.space.index(n, lab)
        rows = self.complex.space.basis.get(n - 1, ())
        return {rows[i]: v for (i, jj), v in m.entries.items() if jj == j}

    def augment(self, vec: dict):
        if self.augmentation is None:
            raise AlgebraAxiomError("algebra has no augmentation")
        f = self.field
        out = f.zero()
        for lab, c in vec.items():
            out = f.add(out, f.mul(f.coerce(c), self.augmentation.get(lab, f.zero())))
        return out

    def aug_ideal_basis(self) -> list:
        """Basis labels of ker(augmentation); adaptedness makes this the
        non-unit basis vectors."""
        return [lab for lab in self.labels() if lab != self.unit]

    def is_connected(self) -> bool:
        """Augmentation ideal concentrated in degrees != 0."""
        return self.augmentation is not None and tuple(
            self.complex.space.basis.get(0, ())
        ) == (self.unit,)

    def opposite(self) -> "DGAlgebra":
        """Same complex, a ·op b = (-1)^{|a||b|} b a."""
        f = self.field
        mult = {}
        for a in self.labels():
            for b in self.labels():
                if self.unit in (a, b):
                    continue
                prod = self.basis_product(b, a)
                if prod:
                    sign = f.one() if (self.degree(a) * self.degree(b)) % 2 == 0 else f.neg(f.one())
                    mult[(a, b)] = scale_vec(f, prod, sign)
        return make_dga(
            f,
            [(lab, self.degree(lab)) for lab in self.labels()],
            self.unit,
            mult,
            {lab: self.d_basis(lab) for lab in self.labels()},
            self.augmentation,
            self.commutative,
        )


def _vec_degree(alg_degree, vec: dict):
    degs = {alg_degree(l) for l in vec}
    if len(degs) > 1:
        raise AlgebraAxiomError(f"inhomogeneous value {vec!r}")
    return degs.pop() if degs else None


def make_dga(field, basis, unit, mult, differential=None, augmentation=None,
             commutative=False) -> DGAlgebra:
    """Validated DGAlgebra from explicit data.

    basis: [(label, degree)]; mult: {(a, b): {c: coeff}} for non-unit pairs;
    differential: {a: {b: coeff}}; augmentation: {a: coeff} or None.
    Every axiom is checked exhaustively over basis tuples.
    """
    if not basis:
        raise AlgebraAxiomError("empty basis")
    degmap = dict(basis)
    if len(degmap) != len(basis):
        raise AlgebraAxiomError("duplicate basis label")
    if unit not in degmap or degmap[unit] != 0:
        raise AlgebraAxiomError("unit must be a degree-0 basis label")
    by_degree: dict = {}
    for lab, n in basis:
        by_degree.setdefault(n, []).append(lab)
    gs_basis = {n: tuple(labs) for n, labs in by_degree.items()}
    differential = differential or {}

    # assemble the underlying complex (validates d^2 = 0 and homogeneity)
    gs = GradedSpace(field, gs_basis)
    dmats: dict = {}
    for a, da in differential.items():
        if not da:
            continue
        n = degmap[a]
        tgt = _vec_degree(lambda l: degmap[l], da)
        if tgt is not None and tgt != n - 1:
            raise AlgebraAxiomError(f"d({a!r}) is not homogeneous of degree {n-1}")
        entries = dmats.setdefault(n, {})
        j = gs.index(n, a)
        for b, c in da.items():
            cv = field.coerce(c)
            if cv != 0:
                entries[(gs.index(n - 1, b), j)] = cv
    d = {
        n: SparseMatrix(gs.dim(n - 1), gs.dim(n), entries)
        for n, entries in dmats.items()
    }
    try:
        cx = ChainComplex(gs, d)
    except ComplexError as e:
        raise AlgebraAxiomError(f"underlying complex invalid: {e}") from e

    alg = DGAlgebra(cx, unit, dict(mult), commutative, augmentation)
    f = field

    labels = list(alg.labels())
    for (a, b), vec in alg.mult.items():
        if a not in degmap or b not in degmap:
            raise AlgebraAxiomError(f"product of unknown labels ({a!r}, {b!r})")
        tgt = _vec_degree(lambda l: degmap[l], vec)
        if tgt is not None and tgt != degmap[a] + degmap[b]:
            raise AlgebraAxiomError(f"product ({a!r})({b!r}) not homogeneous")

    # associativity on all basis triples
    for a in labels:
        for b in labels:
            ab = alg.basis_product(a, b)
            for c in labels:
                lhs = alg.product(ab, {c: f.one()})
                rhs = alg.product({a: f.one()}, alg.basis_product(b, c))
                if lhs != rhs:
                    raise AlgebraAxiomError(
                        f"associativity fails on ({a!r}, {b!r}, {c!r})"
                    )

    # Leibniz: d(ab) = (da)b + (-1)^{|a|} a (db)
    for a in labels:
        for b in labels:
            lhs = alg.d_vec(alg.basis_product(a, b))
            rhs = alg.product(alg.d_basis(a), {b: f.one()})
            sign = f.one() if degmap[a] % 2 == 0 else f.neg(f.one())
            add_into(f, rhs, scale_vec(f, alg.product({a: f.one()}, alg.d_basis(b)), sign))
            if lhs != rhs:
                raise AlgebraAxiomError(f"Leibniz fails on ({a!r}, {b!r})")

    if commutative:
        for a in labels:
            for b in labels:
                sign = f.one() if (degmap[a] * degmap[b]) % 2 == 0 else f.neg(f.one())
                if alg.basis_product(a, b) != scale_vec(f, alg.basis_product(b, a), sign):
                    raise AlgebraAxiomError(f"commutativity fails on ({a!r}, {b!r})")

    if augmentation is not None:
        if f.coerce(augmentation.get(unit, 0)) != f.one():
            raise AlgebraAxiomError("augmentation(unit) != 1")
        for lab, c in augmentation.items():
            if lab != unit and f.coerce(c) != 0:
                raise AlgebraAxiomError(
                    f"basis not adapted: augmentation({lab!r}) != 0"
                )
            if degmap[lab] != 0 and f.coerce(c) != 0:
                raise AlgebraAxiomError("augmentation supported outside degree 0")
        # multiplicativity and d-compatibility follow on an adapted basis:
        # eps(ab) = eps(a)eps(b) reduces to unit bookkeeping, checked anyway
        for a in labels:
            for b in labels:
                lhs = alg.augment(alg.basis_product(a, b))
                rhs = f.mul(alg.augment({a: f.one()}), alg.augment({b: f.one()}))
                if lhs != rhs:
                    raise AlgebraAxiomError(f"augmentation not multiplicative on ({a!r}, {b!r})")
        for a in labels:
            if alg.augment(alg.d_basis(a)) != f.zero():
                raise AlgebraAxiomError(f"augmentation not a chain map on {a!r}")

    return alg


# ---------------------------------------------------------------------------
# bimodules


@dataclass
class Bimodule:
    algebra: DGAlgebra
    complex: ChainComplex
    left: dict  # (a_label, m_label) -> {m': coeff}
    right: dict  # (m_label, a_label) -> {m': coeff}
    name: str = "M"

    def __post_init__(self):
        self._degree = {}
        for n, labels in self.complex.space.basis.items():
            for lab in labels:
                if lab in self._degree:
                    raise AlgebraAxiomError(f"module label {lab!r} in two degrees")
                self._degree[lab] = n

    @property
    def field(self):
        return self.complex.field

    def degree(self, lab) -> int:
        return self._degree[lab]

    def labels(self):
        for n in self.complex.space.degrees():
            yield from self.complex.space.basis[n]

    def act_left_basis(self, a, m) -> dict:
        if a == self.algebra.unit:
            return {m: self.field.one()}
        return self.left.get((a, m), {})

    def act_right_basis(self, m, a) -> dict:
        if a == self.algebra.unit:
            return {m: self.field.one()}
        return self.right.get((m, a), {})

    def act_left(self, va: dict, vm: dict) -> dict:
        f = self.field
        out: dict = {}
        for a, ca in va.items():
            for m, cm in vm.items():
                add_into(f, out, self.act_left_basis(a, m), f.mul(f.coerce(ca), f.coerce(cm)))
        return out

    def act_right(self, vm: dict, va: dict) -> dict:
        f = self.field
        out: dict = {}
        for m, cm in vm.items():
            for a, ca in va.items():
                add_into(f, out, self.act_right_basis(m, a), f.mul(f.coerce(cm), f.coerce(ca)))
        return out

    def d_basis(self, lab) -> dict:
        n = self.degree(lab)
        mtx = self.complex.d.get(n)
        if mtx is None:
            return {}
        j = self.complex.space.index(n, lab)
        rows = self.complex.space.basis.get(n - 1, ())
        return {rows[i]: v for (i, jj), v in mtx.entries.items() if jj == j}

    def d_vec(self, vec: dict) -> dict:
        f = self.field
        out: dict = {}
        for lab, c in vec.items():
            add_into(f, out, self.d_basis(lab), f.coerce(c))
        return out


def validate_bimodule(m: Bimodule):
    """Exact check of all bimodule axioms over basis tuples."""
    r = m.algebra
    f = m.field
    one = f.one()
    alabels = list(r.labels())
    mlabels = list(m.labels())
    for a in alabels:
        for b in alabels:
            ab = r.basis_product(a, b)
            for x in mlabels:
                if m.act_left(ab, {x: one}) != m.act_left({a: one}, m.act_left_basis(b, x)):
                    raise AlgebraAxiomError(f"left action fails on ({a!r},{b!r},{x!r})")
                if m.act_right(m.act_right_basis(x, a), {b: one}) != m.act_right({x: one}, ab):
                    raise AlgebraAxiomError(f"right action fails on ({x!r},{a!r},{b!r})")
        for x in mlabels:
            for b in alabels:
                lhs = m.act_right(m.act_left_basis(a, x), {b: one})
                rhs = m.act_left({a: one}, m.act_right_basis(x, b))
                if lhs != rhs:
                    raise AlgebraAxiomError(f"actions do not commute on ({a!r},{x!r},{b!r})")
    # Leibniz for both actions
    for a in alabels:
        sa = f.one() if r.degree(a) % 2 == 0 else f.neg(f.one())
        for x in mlabels:
            lhs = m.d_vec(m.act_left_basis(a, x))
            rhs = m.act_left(r.d_basis(a), {x: one})
            add_into(f, rhs, scale_vec(f, m.act_left({a: one}, m.d_basis(x)), sa))
            if lhs != rhs:
                raise AlgebraAxiomError(f"left Leibniz fails on ({a!r},{x!r})")
            sx = f.one() if m.degree(x) % 2 == 0 else f.neg(f.one())
            lhs = m.d_vec(m.act_right_basis(x, a))
            rhs = m.act_right(m.d_basis(x), {a: one})
            add_into(f, rhs, scale_vec(f, m.act_right({x: one}, r.d_basis(a)), sx))
            if lhs != rhs:
                raise AlgebraAxiomError(f"right Leibniz fails on ({x!r},{a!r})")
    return m


def regular_bimodule(r: DGAlgebra) -> Bimodule:
    """R as a bimodule over itself."""
    one = r.field.one()
    left = {}
    right = {}
    for a in r.labels():
        if a == r.unit:
            continue
        for x in r.labels():
            p = r.basis_product(a, x)
            if p:
                left[(a, x)] = p
            p = r.basis_product(x, a)
            if p:
                right[(x, a)] = p
    return Bimodule(r, r.complex, left, right, name="R")


def trivial_bimodule(r: DGAlgebra) -> Bimodule:
    """K as an R-bimodule through the augmentation."""
    if r.augmentation is None:
        raise AlgebraAxiomError("trivial bimodule needs an augmentation")
    cx = ChainComplex(GradedSpace(r.field, {0: (("K", "1"),)}), {})
    return Bimodule(r, cx, {}, {}, name="K")


def enveloping(r: DGAlgebra) -> DGAlgebra:
    """R ⊗ R^op with the Koszul-signed product
    (a⊗b)(a'⊗b') = (-1)^{|b||a'|} (aa') ⊗ (b'b)."""
    f = r.field
    labels = list(r.labels())
    basis = [(("e", a, b), r.degree(a) + r.degree(b)) for a in labels for b in labels]
    unit = ("e", r.unit, r.unit)
    mult = {}
    for a in labels:
        for b in labels:
            for a2 in labels:
                for b2 in labels:
                    x, y = ("e", a, b), ("e", a2, b2)
                    if x == unit or y == unit:
                        continue
                    aa = r.basis_product(a, a2)
                    bb = r.basis_product(b2, b)
                    if not aa or not bb:
                        continue
                    sign = f.one() if (r.degree(b) * r.degree(a2)) % 2 == 0 else f.neg(f.one())
                    vec = {}
                    for la, ca in aa.items():
                        for lb, cb in bb.items():
                            add_into(f, vec, {("e", la, lb): f.mul(ca, cb)}, sign)
                    if vec:
                        mult[(x, y)] = vec
    diff = {}
    for a in labels:
        for b in labels:
            vec = {}
            for la, c in r.d_basis(a).items():
                add_into(f, vec, {("e", la, b): c})
            sign = f.one() if r.degree(a) % 2 == 0 else f.neg(f.one())
            for lb, c in r.d_basis(b).items():
                add_into(f, vec, {("e", a, lb): f.mul(sign, f.coerce(c))})
            if vec:
                diff[("e", a, b)] = vec
    aug = None
    if r.augmentation is not None:
        aug = {unit: f.one()}
    return make_dga(f, basis, unit, mult, diff, aug, commutative=False)


def enveloping_left_action(r: DGAlgebra, env: DGAlgebra) -> dict:
    """R as a left module over R ⊗ R^op: (a⊗b)·m = (-1)^{|b||m|} a m b."""
    f = r.field
    action = {}
    for a in r.labels():
        for b in r.labels():
            e = ("e", a, b)
            if e == env.unit:
                continue
            for m in r.labels():
                amb = r.product(r.basis_product(a, m), {b: f.one()})
                if not amb:
                    continue
                sign = f.one() if (r.degree(b) * r.degree(m)) % 2 == 0 else f.neg(f.one())
                action[(e, m)] = scale_vec(f, amb, sign)
    return action


def validate_left_module(alg: DGAlgebra, cx: ChainComplex, action: dict):
    """Exact left-module axioms: unitality, associativity, Leibniz."""
    f = alg.field
    one = f.one()
    gs = cx.space
    degree = {}
    for n, labels in gs.basis.items():
        for lab in labels:
            degree[lab] = n

    def act(a_lab, vec):
        out = {}
        if a_lab == alg.unit:
            return dict(vec)
        for m, cm in vec.items():
            add_into(f, out, action.get((a_lab, m), {}), f.coerce(cm))
        return out

    def act_vec(va, vec):
        out = {}
        for a, ca in va.items():
            add_into(f, out, act(a, vec), f.coerce(ca))
        return out

    def d_vec(vec):
        out = {}
        for lab, c in vec.items():
            n = degree[lab]
            m = cx.d.get(n)
            if m is None:
                continue
            j = gs.index(n, lab)
            rows = gs.basis.get(n - 1, ())
            add_into(f, out, {rows[i]: v for (i, jj), v in m.entries.items() if jj == j},
                     f.coerce(c))
        return out

    mlabels = [lab for n in gs.degrees() for lab in gs.basis[n]]
    for a in alg.labels():
        for b in alg.labels():
            ab = alg.basis_product(a, b)
            for x in mlabels:
                if act_vec(ab, {x: one}) != act(a, act(b, {x: one})):
                    raise AlgebraAxiomError(f"module associativity fails on ({a!r},{b!r},{x!r})")
        sa = f.one() if alg.degree(a) % 2 == 0 else f.neg(f.one())
        for x in mlabels:
            lhs = d_vec(act(a, {x: one}))
            rhs = act_vec(alg.d_basis(a), {x: one})
            add_into(f, rhs, scale_vec(f, act(a, d_vec({x: one})), sa))
            if lhs != rhs:
                raise AlgebraAxiomError(f"module Leibniz fails on ({a!r},{x!r})")
    return True


# ---------------------------------------------------------------------------
# simplicial cochain algebra


def cochain_algebra(x, field: FieldSpec, base_vertex=None) -> DGAlgebra:
    """Simplicial cochains of a finite complex with the Alexander-Whitney cup
    product, in non-positive homological degrees; augmented by evaluation at
    base_vertex.  Basis is adapted: the unit (sum of all dual vertices)
    replaces the dual of the base vertex."""
    simplices = x.all_simplices()
    if not simplices:
        raise AlgebraAxiomError("empty simplicial complex")
    verts = sorted(x.vertices)
    if base_vertex is None:
        base_vertex = verts[0]
    if (base_vertex,) not in simplices:
        raise AlgebraAxiomError(f"base vertex {base_vertex!r} not in the complex")
    f = field
    one, zero = f.one(), f.zero()

    def lab(s):
        return ("cs", s)

    UNIT = ("cs", "1")

    def adapt(vec: dict) -> dict:
        """Rewrite an old-basis degree-0 combination over the adapted basis:
        base* = 1 - sum of the other dual vertices."""
        out = {}
        c0 = vec.pop(lab((base_vertex,)), zero)
        if c0 != 0:
            out[UNIT] = c0
            for v in verts:
                if v != base_vertex:
                    add_into(f, out, {lab((v,)): f.neg(c0)})
        add_into(f, out, vec)
        return out

    basis = [(UNIT, 0)]
    for s in simplices:
        if s == (base_vertex,):
            continue
        basis.append((lab(s), -(len(s) - 1)))

    # old-basis products: front-face/back-face concatenation
    def old_product(s, t) -> dict:
        if s[-1] != t[0]:
            return {}
        u = s + t[1:]
        if len(set(u)) != len(u) or u not in simplices:
            return {}
        return {lab(u): one}

    def expand(b) -> list:
        """Adapted basis vector as a list of (old simplex, coeff)."""
        if b == UNIT:
            return [((v,), one) for v in verts]
        return [(b[1], one)]

    mult = {}
    for (b1, d1) in basis:
        for (b2, d2) in basis:
            if UNIT in (b1, b2):
                continue
            vec: dict = {}
            for s, cs in expand(b1):
                for t, ct in expand(b2):
                    add_into(f, vec, old_product(s, t), f.mul(cs, ct))
            if d1 + d2 == 0:
                vec = adapt(vec)
            if vec:
                mult[(b1, b2)] = vec

    # coboundary: <d sigma*, tau> = sum_i (-1)^i [d_i tau == sigma]
    diff = {}
    for (b, dn) in basis:
        if b == UNIT:
            continue  # the unit is a cocycle
        s = b[1]
        vec = {}
        for t in simplices:
            if len(t) != len(s) + 1:
                continue
            for i in range(len(t)):
                if t[:i] + t[i + 1:] == s:
                    add_into(f, vec, {lab(t): one if i % 2 == 0 else f.neg(one)})
        if vec:
            diff[b] = vec

    aug = {UNIT: one}
    return make_dga(f, basis, UNIT, mult, diff, aug, commutative=False)


# ---------------------------------------------------------------------------
# textual algebra-description format

class DGAParseError(ValueError):
    def __init__(self, line_no: int, col: int, message: str):
        super().__init__(f"line {line_no}, column {col}: {message}")
        self.line_no = line_no
        self.col = col


def _parse_combination(rhs: str, line_no: int, known: dict, field: FieldSpec) -> dict:
    rhs = rhs.strip()
    if rhs == "0":
        return {}
    vec: dict = {}
    for chunk in rhs.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise DGAParseError(line_no, 0, "empty term")
        parts = chunk.split()
        if len(parts) == 1:
            coeff, name = "1", parts[0]
        elif len(parts) == 2:
            coeff, name = parts
        else:
            raise DGAParseError(line_no, 0, f"bad term {chunk!r}")
        if name not in known:
            raise DGAParseError(line_no, 0, f"unknown basis element {name!r}")
        try:
            c = field.coerce(Fraction(coeff))
        except (ValueError, ZeroDivisionError) as e:
            raise DGAParseError(line_no, 0, f"bad coefficient {coeff!r}: {e}") from e
        add_into(field, vec, {name: c})
    return vec


def parse_dga_text(text: str) -> DGAlgebra:
    """Parse the textual algebra-description format:

        dga
        field rationals
        basis x 1
        unit 1            (declares a degree-0 basis element named 1)
        mul x x = 0
        diff x = 0
        aug x = 0
        commutative false

    Missing mul/diff lines are zero; products with the unit are implied; aug
    defaults to 1 on the unit and 0 elsewhere.  Comment lines start with #.
    """
    field = None
    basis: dict = {}
    unit = None
    mult: dict = {}
    diff: dict = {}
    aug_given: dict = {}
    commutative = False
    augmented = True
    saw_header = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line != "dga":
                raise DGAParseError(line_no, 0, "expected 'dga' header")
            saw_header = True
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            try:
                field = FieldSpec.parse(rest)
            except ValueError as e:
                raise DGAParseError(line_no, len("field "), str(e)) from e
        elif head == "basis":
            parts = rest.split()
            if len(parts) != 2:
                raise DGAParseError(line_no, 0, "basis wants: basis <name> <degree>")
            name, deg = parts
            if name in basis:
                raise DGAParseError(line_no, 0, f"duplicate basis element {name!r}")
            try:
                basis[name] = int(deg)
            except ValueError:
                raise DGAParseError(line_no, 0, f"bad degree {deg!r}") from None
        elif head == "unit":
            unit = rest
            basis.setdefault(unit, 0)
        elif head in ("mul", "diff", "aug"):
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise DGAParseError(line_no, 0, f"{head} wants '='")
            if field is None:
                raise DGAParseError(line_no, 0, "field must be declared first")
            names = lhs.split()
            if head == "mul":
                if len(names) != 2:
                    raise DGAParseError(line_no, 0, "mul wants two factors")
                a, b = names
                for nm in names:
                    if nm not in basis:
                        raise DGAParseError(line_no, 0, f"unknown basis element {nm!r}")
                mult[(a, b)] = _parse_combination(rhs, line_no, basis, field)
            elif head == "diff":
                (a,) = names or ("",)
                if a not in basis:
                    raise DGAParseError(line_no, 0, f"unknown basis element {a!r}")
                diff[a] = _parse_combination(rhs, line_no, basis, field)
            else:
                (a,) = names or ("",)
                if a not in basis:
                    raise DGAParseError(line_no, 0, f"unknown basis element {a!r}")
                try:
                    aug_given[a] = field.coerce(Fraction(rhs.strip()))
                except (ValueError, ZeroDivisionError) as e:
                    raise DGAParseError(line_no, 0, f"bad value {rhs!r}") from e
        elif head == "commutative":
            commutative = rest.lower() == "true"
        elif head == "augmented":
            augmented = rest.lower() == "true"
        else:
            raise DGAParseError(line_no, 0, f"unrecognized directive {head!r}")
    if field is None:
        raise DGAParseError(0, 0, "missing field")
    if unit is None:
        raise DGAParseError(0, 0, "missing unit")
    augmentation = None
    if augmented:
        augmentation = {unit: field.one()}
        augmentation.update(aug_given)
    try:
        return make_dga(field, sorted(basis.items(), key=lambda kv: (kv[1], str(kv[0]))),
                        unit, mult, diff, augmentation, commutative)
    except AlgebraAxiomError as e:
        raise DGAParseError(0, 0, f"algebra axioms: {e}") from e


# ---------------------------------------------------------------------------
# stock algebras


def base_field_algebra(field: FieldSpec) -> DGAlgebra:
    return make_dga(field, [("1", 0)], "1", {}, None, {"1": field.one()}, True)


def truncated_polynomial(field: FieldSpec, power: int, deg: int, name="x") -> DGAlgebra:
    """K[x]/x^power with |x| = deg (adapted basis 1, x, x2, ...).

    Graded-commutative iff deg is even or power <= 2.
    """
    if power < 2:
        raise AlgebraAxiomError("power must be >= 2")
    labels = ["1"] + [name if i == 1 else f"{name}{i}" for i in range(1, power)]
    basis = [("1", 0)] + [(labels[i], i * deg) for i in range(1, power)]
    mult = {}
    for i in range(1, power):
        for j in range(1, power):
            if i + j < power:
                mult[(labels[i], labels[j])] = {labels[i + j]: field.one()}
            else:
                mult[(labels[i], labels[j])] = {}
    commutative = (deg % 2 == 0) or power <= 2
    return make_dga(field, basis, "1", mult, None, {"1": field.one()}, commutative)


def exterior_algebra(field: FieldSpec, deg: int = 1, name="x") -> DGAlgebra:
    """Lambda(x) with |x| = deg odd: x^2 = 0."""
    if deg % 2 == 0:
        raise AlgebraAxiomError("exterior generator must have odd degree")
    return truncated_polynomial(field, 2, deg, name)
