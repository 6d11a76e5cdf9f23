"""Chain complexes over an exact field.

Grading is homological throughout: the differential has degree -1 and
cochain-type objects live in non-positive degrees (higher cohomology in more
negative degrees).  One global Koszul sign convention is fixed here and
imported by every other module:

* tensor:  d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy
* dual:    basis of degree -n is dual to degree n and
           <d* φ, x> = (-1)^{|φ|} <φ, dx>
* shift by k: degree n of the result is degree n+k of the input, the
           differential picks up (-1)^k

d∘d = 0 is asserted, as an exact matrix identity, on every construction.

Truncated constructions (bar complexes, cosimplicial realizations) carry a
valid_range; homology requests outside it raise OutOfWindowError.  Their
convergence certificate is stabilization_report: betti tables computed at
increasing auxiliary bounds, compared degreewise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .exact_linalg import FieldSpec, SparseMatrix, image_basis, kernel_basis, rank


class ComplexError(ValueError):
    pass


class OutOfWindowError(ComplexError):
    pass


@dataclass(frozen=True)
class TruncationWindow:
    """Degree window plus the auxiliary (simplicial/cosimplicial/weight) bound."""

    min_degree: int
    max_degree: int
    auxiliary_bound: int = 0

    def __post_init__(self):
        if self.min_degree > self.max_degree:
            raise ValueError("min_degree > max_degree")
        if self.auxiliary_bound < 0:
            raise ValueError("auxiliary_bound < 0")

    def degrees(self):
        return range(self.min_degree, self.max_degree + 1)

    @staticmethod
    def parse(text: str, auxiliary_bound: int = 0) -> "TruncationWindow":
        lo, _, hi = text.partition(":")
        return TruncationWindow(int(lo), int(hi), auxiliary_bound)


@dataclass
class GradedSpace:
    """Degreewise-finite graded vector space; empty degrees are omitted."""

    field: FieldSpec
    basis: dict  # degree -> tuple of opaque hashable labels

    def __post_init__(self):
        self.basis = {n: tuple(labels) for n, labels in self.basis.items() if labels}
        self._index = {
            n: {lab: i for i, lab in enumerate(labels)}
            for n, labels in self.basis.items()
        }
        for n, idx in self._index.items():
            if len(idx) != len(self.basis[n]):
                raise ComplexError(f"duplicate basis label in degree {n}")

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def degrees(self):
        return sorted(self.basis)

    def index(self, n: int, label) -> int:
        try:
            return self._index[n][label]
        except KeyError:
            raise ComplexError(f"label {label!r} not in degree {n}") from None

    def total_dim(self) -> int:
        return sum(len(v) for v in self.basis.values())


@dataclass
class ChainComplex:
    """space + differentials d[n]: degree n -> degree n-1 with d∘d = 0.

    valid_range marks the degrees a truncated construction can be trusted in;
    None means the complex is globally exact as stored.
    """

    space: GradedSpace
    d: dict  # degree n -> SparseMatrix (rows: dim(n-1), cols: dim(n))
    valid_range: tuple | None = None

    def __post_init__(self):
        self.d = {n: m for n, m in self.d.items() if not m.is_zero()}
        f = self.space.field
        for n, m in self.d.items():
            if m.rows != self.space.dim(n - 1) or m.cols != self.space.dim(n):
                raise ComplexError(
                    f"d_{n} has shape {m.rows}x{m.cols}, expected "
                    f"{self.space.dim(n-1)}x{self.space.dim(n)}"
                )
        for n, m in self.d.items():
            lower = self.d.get(n - 1)
            if lower is not None and not lower.matmul(m, f).is_zero():
                raise ComplexError(f"d_{n-1} ∘ d_{n} != 0")

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    def dim(self, n: int) -> int:
        return self.space.dim(n)

    def diff(self, n: int) -> SparseMatrix:
        m = self.d.get(n)
        if m is None:
            return SparseMatrix.zero(self.space.dim(n - 1), self.space.dim(n))
        return m

    def check_window(self, window: TruncationWindow):
        if self.valid_range is not None:
            lo, hi = self.valid_range
            if window.min_degree < lo or window.max_degree > hi:
                raise OutOfWindowError(
                    f"window [{window.min_degree},{window.max_degree}] exceeds "
                    f"stored degrees [{lo},{hi}]"
                )

    def differential_of_vector(self, n: int, vec: dict) -> dict:
        """d applied to a vector {label: coeff} in degree n."""
        f = self.field
        idx_vec = {self.space.index(n, lab): f.coerce(c) for lab, c in vec.items()}
        out = self.diff(n).apply(idx_vec, f)
        labels = self.space.basis.get(n - 1, ())
        return {labels[i]: v for i, v in sorted(out.items())}

    # -- homology ----------------------------------------------------------

    def betti(self, window: TruncationWindow) -> dict:
        """betti_n = dim ker d_n - rank d_{n+1} for n in the window."""
        self.check_window(window)
        f = self.field
        ranks: dict = {}

        def rk(n):
            if n not in ranks:
                m = self.d.get(n)
                ranks[n] = 0 if m is None else rank(m, f)
            return ranks[n]

        out = {}
        for n in window.degrees():
            out[n] = self.dim(n) - rk(n) - rk(n + 1)
        return out

    def homology(self, window: TruncationWindow, representatives: bool = False) -> dict:
        """Per degree: (betti, list of representative vectors {label: coeff})."""
        bettis = self.betti(window)
        if not representatives:
            return {n: (b, []) for n, b in bettis.items()}
        f = self.field
        out = {}
        for n in window.degrees():
            ker = kernel_basis(self.diff(n), f)
            im = image_basis(self.diff(n + 1), f)
            reps = _quotient_representatives(ker, im, f)
            if len(reps) != bettis[n]:
                raise ComplexError("representative count disagrees with betti")
            labels = self.space.basis.get(n, ())
            out[n] = (
                bettis[n],
                [{labels[i]: v for i, v in sorted(r.items())} for r in reps],
            )
        return out


def _quotient_representatives(ker: list, im: list, f: FieldSpec) -> list:
    """Kernel vectors extending an echelon of the image span the homology."""
    echelon: dict = {}  # leading index -> reduced vector

    def reduce(v):
        v = dict(v)
        while v:
            lead = min(v)
            if lead not in echelon:
                return v, lead
            coef = v[lead]
            row = echelon[lead]
            scale = f.div(coef, row[lead])
            for c, w in row.items():
                nv = f.sub(v.get(c, f.zero()), f.mul(scale, w))
                if nv == 0:
                    v.pop(c, None)
                else:
                    v[c] = nv
        return None, None

    for v in im:
        red, lead = reduce(v)
        if red is not None:
            echelon[lead] = red
    reps = []
    for v in ker:
        red, lead = reduce(v)
        if red is not None:
            echelon[lead] = red
            reps.append(v)
    return reps


@dataclass
class ChainMap:
    """Degreewise map commuting exactly with the differentials."""

    source: ChainComplex
    target: ChainComplex
    components: dict  # degree n -> SparseMatrix (target.dim(n) x source.dim(n))
    degree: int = 0

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise ComplexError("field mismatch in chain map")
        f = self.source.field
        self.components = {n: m for n, m in self.components.items() if not m.is_zero()}
        for n, m in self.components.items():
            if m.rows != self.target.dim(n + self.degree) or m.cols != self.source.dim(n):
                raise ComplexError(f"component {n} has wrong shape")
        sign = 1 if self.degree % 2 == 0 else -1
        for n in set(self.components) | {n + 1 for n in self.components}:
            fs = self.components.get(n)
            fm = fs if fs is not None else SparseMatrix.zero(
                self.target.dim(n + self.degree), self.source.dim(n))
            lhs = self.target.diff(n + self.degree).matmul(fm, f)
            prev = self.components.get(n - 1)
            pm = prev if prev is not None else SparseMatrix.zero(
                self.target.dim(n - 1 + self.degree), self.source.dim(n - 1))
            rhs = pm.matmul(self.source.diff(n), f)
            if sign == -1:
                rhs = SparseMatrix(rhs.rows, rhs.cols,
                                   {k: f.neg(v) for k, v in rhs.entries.items()})
            if lhs.entries != rhs.entries:
                raise ComplexError(f"chain map fails to commute with d at degree {n}")

    def component(self, n: int) -> SparseMatrix:
        m = self.components.get(n)
        if m is None:
            return SparseMatrix.zero(self.target.dim(n + self.degree), self.source.dim(n))
        return m


def from_basis_map(space_field, basis, diff_on_basis, valid_range=None) -> ChainComplex:
    """Build a complex from {degree: labels} and a function label -> {label: coeff}.

    diff_on_basis(n, label) returns the differential of the basis vector as a
    vector over the degree-(n-1) basis.
    """
    gs = GradedSpace(space_field, basis)
    d = {}
    for n in gs.degrees():
        if gs.dim(n - 1) == 0 or gs.dim(n) == 0:
            continue
        entries = {}
        for j, lab in enumerate(gs.basis[n]):
            for tlab, coeff in diff_on_basis(n, lab).items():
                c = space_field.coerce(coeff)
                if c != 0:
                    entries[(gs.index(n - 1, tlab), j)] = c
        if entries:
            d[n] = SparseMatrix(gs.dim(n - 1), gs.dim(n), entries)
    return ChainComplex(gs, d, valid_range)


# ---------------------------------------------------------------------------
# constructions


def single_generator(field: FieldSpec, degree: int = 0, label="e") -> ChainComplex:
    return ChainComplex(GradedSpace(field, {degree: (label,)}), {})


def tensor(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul rule d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy."""
    if a.field != b.field:
        raise ComplexError("field mismatch in tensor")
    f = a.field
    adegs, bdegs = a.space.degrees(), b.space.degrees()
    basis: dict = {}
    for p in adegs:
        for q in bdegs:
            basis.setdefault(p + q, []).extend(
                ("t", (la, lb), (p, q))
                for la in a.space.basis[p]
                for lb in b.space.basis[q]
            )
    arows = {n: a.space.basis.get(n - 1, ()) for n in adegs}
    brows = {n: b.space.basis.get(n - 1, ()) for n in bdegs}

    def diff(n, lab):
        _, (la, lb), (p, q) = lab
        out = {}
        da = a.diff(p)
        j = a.space.index(p, la)
        for (i, jj), v in da.entries.items():
            if jj == j:
                out[("t", (arows[p][i], lb), (p - 1, q))] = v
        db = b.diff(q)
        j = b.space.index(q, lb)
        sign = f.one() if p % 2 == 0 else f.neg(f.one())
        for (i, jj), v in db.entries.items():
            if jj == j:
                out[("t", (la, brows[q][i]), (p, q - 1))] = f.mul(sign, f.coerce(v))
        return out

    vr = None
    if a.valid_range is not None or b.valid_range is not None:
        alo, ahi = a.valid_range or (min(adegs, default=0), max(adegs, default=0))
        blo, bhi = b.valid_range or (min(bdegs, default=0), max(bdegs, default=0))
        vr = (alo + blo, ahi + bhi)
    return from_basis_map(f, basis, diff, vr)


def dual(c: ChainComplex) -> ChainComplex:
    """Degreewise dual: <d* φ, x> = (-1)^{|φ|} <φ, dx>."""
    f = c.field
    basis = {-n: tuple(("dual", lab) for lab in labs) for n, labs in c.space.basis.items()}
    d = {}
    for n in sorted(c.d):
        # d^∨ at dual degree -(n-1): dual(C_{n-1}) -> dual(C_n), sign (-1)^{n-1}
        m = c.d[n]
        sign = f.one() if (n - 1) % 2 == 0 else f.neg(f.one())
        entries = {(j, i): f.mul(sign, f.coerce(v)) for (i, j), v in m.entries.items()}
        d[-(n - 1)] = SparseMatrix(m.cols, m.rows, entries)
    vr = None
    if c.valid_range is not None:
        lo, hi = c.valid_range
        vr = (-hi, -lo)
    return ChainComplex(GradedSpace(f, basis), d, vr)


def shift(c: ChainComplex, k: int) -> ChainComplex:
    """Shift by k: a class in degree d moves to degree d+k (so shift(c, -k)
    is "shift down in dimension by k"); the differential picks up (-1)^k."""
    f = c.field
    basis = {n + k: labs for n, labs in c.space.basis.items()}
    sign = 1 if k % 2 == 0 else -1
    d = {}
    for n, m in c.d.items():
        ent = m.entries if sign == 1 else {key: f.neg(f.coerce(v)) for key, v in m.entries.items()}
        d[n + k] = SparseMatrix(m.rows, m.cols, dict(ent))
    vr = None
    if c.valid_range is not None:
        lo, hi = c.valid_range
        vr = (lo + k, hi + k)
    return ChainComplex(GradedSpace(f, basis), d, vr)


def direct_sum(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    if a.field != b.field:
        raise ComplexError("field mismatch in direct sum")
    f = a.field
    basis: dict = {}
    for n in set(a.space.degrees()) | set(b.space.degrees()):
        basis[n] = tuple(("L", lab) for lab in a.space.basis.get(n, ())) + tuple(
            ("R", lab) for lab in b.space.basis.get(n, ())
        )
    gs = GradedSpace(f, basis)
    d = {}
    for n in set(a.d) | set(b.d):
        entries = {}
        for (i, j), v in a.diff(n).entries.items():
            entries[(i, j)] = v
        off_r, off_c = a.space.dim(n - 1), a.space.dim(n)
        for (i, j), v in b.diff(n).entries.items():
            entries[(i + off_r, j + off_c)] = v
        d[n] = SparseMatrix(gs.dim(n - 1), gs.dim(n), entries)
    vr = None
    if a.valid_range is not None or b.valid_range is not None:
        alo, ahi = a.valid_range or (-(10 ** 9), 10 ** 9)
        blo, bhi = b.valid_range or (-(10 ** 9), 10 ** 9)
        vr = (max(alo, blo), min(ahi, bhi))
    return ChainComplex(gs, d, vr)


def cone(phi: ChainMap) -> ChainComplex:
    """Mapping cone: cone(f)_n = C_{n-1} ⊕ D_n, d(x, y) = (-dx, f(x) + dy)."""
    if phi.degree != 0:
        raise ComplexError("cone expects a degree-0 chain map")
    c, dd = phi.source, phi.target
    f = c.field
    basis: dict = {}
    for n in set(d + 1 for d in c.space.degrees()) | set(dd.space.degrees()):
        basis[n] = tuple(("c", lab) for lab in c.space.basis.get(n - 1, ())) + tuple(
            ("d", lab) for lab in dd.space.basis.get(n, ())
        )
    gs = GradedSpace(f, basis)
    dmats = {}
    for n in gs.degrees():
        if gs.dim(n - 1) == 0 or gs.dim(n) == 0:
            continue
        entries = {}
        nc, nd = c.space.dim(n - 1), dd.space.dim(n)
        nc_t = c.space.dim(n - 2)
        for (i, j), v in c.diff(n - 1).entries.items():
            entries[(i, j)] = f.neg(f.coerce(v))
        for (i, j), v in phi.component(n - 1).entries.items():
            entries[(i + nc_t, j)] = f.coerce(v)
        for (i, j), v in dd.diff(n).entries.items():
            entries[(i + nc_t, j + nc)] = f.coerce(v)
        if entries:
            dmats[n] = SparseMatrix(gs.dim(n - 1), gs.dim(n), entries)
    return ChainComplex(gs, dmats, None)


# ---------------------------------------------------------------------------
# stabilization certificates


@dataclass
class StabilizationReport:
    """Per degree: the first bound whose betti agrees with every later bound."""

    window: TruncationWindow
    bounds: tuple
    tables: dict  # bound -> {degree: betti}
    stable_at: dict = dc_field(default_factory=dict)  # degree -> bound or None

    def __post_init__(self):
        if len(self.bounds) < 2:
            raise ComplexError("stabilization needs at least two bounds")
        self.bounds = tuple(sorted(self.bounds))
        for n in self.window.degrees():
            stable = None
            vals = [self.tables[b].get(n, 0) for b in self.bounds]
            for k in range(len(vals) - 1):
                if all(v == vals[k] for v in vals[k + 1:]):
                    stable = self.bounds[k]
                    break
            self.stable_at[n] = stable

    def stable_degrees(self) -> list:
        return [n for n in self.window.degrees() if self.stable_at[n] is not None]

    def stable_betti(self) -> dict:
        top = self.bounds[-1]
        return {n: self.tables[top].get(n, 0) for n in self.stable_degrees()}


def stabilization_report(tables, window: TruncationWindow) -> StabilizationReport:
    """tables: iterable of (auxiliary bound, {degree: betti})."""
    tab = {int(b): dict(t) for b, t in tables}
    return StabilizationReport(window, tuple(tab), tab)


# ---------------------------------------------------------------------------
# textual serialization (versioned, bit-exact round trip)

_FORMAT = "hochkit-complex v1"


def _label_to_json(lab):
    if isinstance(lab, tuple):
        return [_label_to_json(x) for x in lab]
    if isinstance(lab, (str, int)):
        return lab
    raise ComplexError(f"label {lab!r} is not serializable (use str/int/tuple)")


def _label_from_json(obj):
    if isinstance(obj, list):
        return tuple(_label_from_json(x) for x in obj)
    return obj


def to_text(c: ChainComplex) -> str:
    f = c.field
    lines = [_FORMAT, f"field {f.name}"]
    if c.valid_range is not None:
        lines.append(f"valid-range {c.valid_range[0]} {c.valid_range[1]}")
    for n in c.space.degrees():
        lines.append(
            f"basis {n} " + json.dumps([_label_to_json(l) for l in c.space.basis[n]])
        )
    for n in sorted(c.d):
        m = c.d[n]
        rows_lab = c.space.basis[n - 1]
        cols_lab = c.space.basis[n]
        quads = [
            [_label_to_json(rows_lab[i]), _label_to_json(cols_lab[j]), f.elem_to_text(v)]
            for (i, j), v in sorted(m.entries.items())
        ]
        lines.append(f"d {n} " + json.dumps(quads))
    lines.append("end")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> ChainComplex:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _FORMAT:
        raise ComplexError(f"bad header, expected {_FORMAT!r}")
    f = None
    basis: dict = {}
    dspec: dict = {}
    valid_range = None
    for ln in lines[1:]:
        if ln == "end":
            break
        head, _, rest = ln.partition(" ")
        if head == "field":
            f = FieldSpec.parse(rest.strip())
        elif head == "valid-range":
            lo, hi = rest.split()
            valid_range = (int(lo), int(hi))
        elif head == "basis":
            n_text, _, payload = rest.partition(" ")
            basis[int(n_text)] = tuple(_label_from_json(x) for x in json.loads(payload))
        elif head == "d":
            n_text, _, payload = rest.partition(" ")
            dspec[int(n_text)] = json.loads(payload)
        else:
            raise ComplexError(f"unrecognized line {ln!r}")
    if f is None:
        raise ComplexError("missing field line")
    gs = GradedSpace(f, basis)
    d = {}
    for n, quads in dspec.items():
        entries = {}
        for row_lab, col_lab, coeff in quads:
            i = gs.index(n - 1, _label_from_json(row_lab))
            j = gs.index(n, _label_from_json(col_lab))
            entries[(i, j)] = f.elem_from_text(coeff)
        d[n] = SparseMatrix(gs.dim(n - 1), gs.dim(n), entries)
    return ChainComplex(gs, d, valid_range)
