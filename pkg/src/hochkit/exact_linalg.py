"""Exact sparse linear algebra over Q and prime fields.

Every homology computation in the package reduces to rank / kernel / solve
on sparse matrices whose entries live in an exact field: arbitrary-precision
rationals (fractions.Fraction) or F_p (ints in [0, p)).  No floating point
exists anywhere in the system.

Elimination picks pivots by a Markowitz-style sparsity score; over Q an
integer fraction-free path (rows scaled and gcd-normalized) is used for rank
so bar-complex matrices never suffer rational swell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class ArithmeticDomainError(ValueError):
    """Entry cannot be interpreted in the requested field."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The base field: kind is 'rationals' or 'prime' (with modulus p)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise ValueError("rationals take no modulus")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("rationals")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime", p)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        if text == "rationals":
            return FieldSpec.rationals()
        if text.startswith("fp:"):
            try:
                return FieldSpec.prime(int(text[3:]))
            except ValueError as e:
                raise ValueError(f"bad field spec {text!r}: {e}") from e
        raise ValueError(f"bad field spec {text!r} (want 'rationals' or 'fp:<p>')")

    @property
    def name(self) -> str:
        return "rationals" if self.kind == "rationals" else f"fp:{self.p}"

    # -- element arithmetic ------------------------------------------------

    def zero(self):
        return Fraction(0) if self.kind == "rationals" else 0

    def one(self):
        return Fraction(1) if self.kind == "rationals" else 1

    def coerce(self, x):
        """Interpret an int/Fraction as a field element.

        Over F_p a Fraction p'/q' needs q' invertible mod p, otherwise the
        entry is not reducible and an ArithmeticDomainError is raised.
        """
        if self.kind == "rationals":
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise ArithmeticDomainError(f"cannot coerce {x!r} into Q")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ArithmeticDomainError(
                    f"denominator of {x} is divisible by {self.p}"
                )
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        raise ArithmeticDomainError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return a + b if self.kind == "rationals" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "rationals" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "rationals" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "rationals" else (-a) % self.p

    def inv(self, a):
        if self.kind == "rationals":
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elem_to_text(self, a) -> str:
        return str(a)

    def elem_from_text(self, s: str):
        if self.kind == "rationals":
            return Fraction(s)
        return int(s) % self.p


@dataclass
class SparseMatrix:
    """rows x cols matrix as a dict {(i, j): nonzero entry}."""

    rows: int
    cols: int
    entries: dict

    def __post_init__(self):
        if any(v == 0 for v in self.entries.values()):
            self.entries = {k: v for k, v in self.entries.items() if v != 0}
        for (i, j) in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")

    @staticmethod
    def zero(rows: int, cols: int) -> "SparseMatrix":
        return SparseMatrix(rows, cols, {})

    @staticmethod
    def identity(n: int, field: FieldSpec) -> "SparseMatrix":
        one = field.one()
        return SparseMatrix(n, n, {(i, i): one for i in range(n)})

    def coerced(self, field: FieldSpec) -> "SparseMatrix":
        return SparseMatrix(
            self.rows, self.cols,
            {k: field.coerce(v) for k, v in self.entries.items()},
        )

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def row_dicts(self) -> list:
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def col_dicts(self) -> list:
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def matmul(self, other: "SparseMatrix", field: FieldSpec) -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        other_rows = other.row_dicts()
        out: dict = {}
        for (i, k), v in self.entries.items():
            for j, w in other_rows[k].items():
                key = (i, j)
                s = field.add(out.get(key, field.zero()), field.mul(v, w))
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vec: dict, field: FieldSpec) -> dict:
        """Matrix times a column vector {col index: value}."""
        cols = self.col_dicts()
        out: dict = {}
        for j, x in vec.items():
            if x == 0:
                continue
            for i, v in cols[j].items():
                s = field.add(out.get(i, field.zero()), field.mul(v, x))
                if s == 0:
                    out.pop(i, None)
                else:
                    out[i] = s
        return out


# ---------------------------------------------------------------------------
# elimination


def _pick_pivot(rows: dict, col_count: dict):
    """Markowitz-ish pivot: cheapest (len(row)-1)*(col_count-1), deterministic."""
    best = None
    best_key = None
    for ri in rows:
        r = rows[ri]
        lr = len(r) - 1
        for c, _ in r.items():
            score = lr * (col_count[c] - 1)
            key = (score, c, ri)
            if best_key is None or key < best_key:
                best_key = key
                best = (ri, c)
                if score == 0 and lr == 0:
                    return best
    return best


def _forward_eliminate(rows: list, field: FieldSpec, integer_mode: bool):
    """Shared forward pass: returns list of (pivot col, row dict) in pivot order.

    rows: list of dict {col: val}; consumed destructively. In integer_mode all
    values are ints and row updates are fraction-free with gcd normalization.
    """
    work = {i: r for i, r in enumerate(rows) if r}
    col_count: dict = {}
    for r in work.values():
        for c in r:
            col_count[c] = col_count.get(c, 0) + 1
    pivots = []
    while work:
        ri, pc = _pick_pivot(work, col_count)
        prow = work.pop(ri)
        for c in prow:
            col_count[c] -= 1
        pivots.append((pc, prow))
        pval = prow[pc]
        hit = [i for i, r in work.items() if pc in r]
        for i in hit:
            r = work[i]
            x = r[pc]
            for c in r:
                col_count[c] -= 1
            if integer_mode:
                g = gcd(pval, x)
                a, b = pval // g, x // g
                new = {}
                for c, v in r.items():
                    nv = a * v - b * prow.get(c, 0)
                    if nv:
                        new[c] = nv
                for c, v in prow.items():
                    if c not in r:
                        nv = -b * v
                        if nv:
                            new[c] = nv
                if new:
                    g2 = 0
                    for v in new.values():
                        g2 = gcd(g2, v)
                        if g2 == 1:
                            break
                    if g2 > 1:
                        new = {c: v // g2 for c, v in new.items()}
            else:
                factor = field.div(x, pval)
                new = {}
                seen = set()
                for c, v in r.items():
                    seen.add(c)
                    nv = field.sub(v, field.mul(factor, prow.get(c, field.zero())))
                    if nv != 0:
                        new[c] = nv
                for c, v in prow.items():
                    if c not in seen:
                        nv = field.neg(field.mul(factor, v))
                        if nv != 0:
                            new[c] = nv
            if new:
                work[i] = new
                for c in new:
                    col_count[c] = col_count.get(c, 0) + 1
            else:
                del work[i]
    return pivots


def _rows_of(m: SparseMatrix, field: FieldSpec):
    rows = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        cv = field.coerce(v)
        if cv != 0:
            rows[i][j] = cv
    return rows

def _integer_rows_or_none(m: SparseMatrix):
    rows = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        if isinstance(v, int):
            iv = v
        elif isinstance(v, Fraction) and v.denominator == 1:
            iv = v.numerator
        else:
            return None
        if iv:
            rows[i][j] = iv
    return rows


def rank(m: SparseMatrix, field: FieldSpec) -> int:
    """Rank over the field; over Q integer inputs take the fraction-free path."""
    if field.kind == "rationals":
        irows = _integer_rows_or_none(m)
        if irows is not None:
            return len(_forward_eliminate(irows, field, integer_mode=True))
    rows = _rows_of(m, field)
    return len(_forward_eliminate(rows, field, integer_mode=False))


def _rref(m: SparseMatrix, field: FieldSpec):
    """Reduced row echelon as {pivot col: row dict with pivot value 1}."""
    rows = _rows_of(m, field)
    pivots = _forward_eliminate(rows, field, integer_mode=False)
    rref: dict = {}
    # back-substitute in reverse pivot order
    for pc, prow in reversed(pivots):
        inv = field.inv(prow[pc])
        row = {c: field.mul(inv, v) for c, v in prow.items()}
        reduced = dict(row)
        for c, v in row.items():
            if c != pc and c in rref:
                sub = rref[c]
                reduced.pop(c, None)
                for c2, v2 in sub.items():
                    if c2 == c:
                        continue
                    nv = field.sub(reduced.get(c2, field.zero()), field.mul(v, v2))
                    if nv == 0:
                        reduced.pop(c2, None)
                    else:
                        reduced[c2] = nv
        rref[pc] = reduced
    return rref


def kernel_basis(m: SparseMatrix, field: FieldSpec) -> list:
    """Basis of the null space as vectors {col index: value}; dim = cols - rank."""
    rref = _rref(m, field)
    free = [c for c in range(m.cols) if c not in rref]
    basis = []
    for f in free:
        v = {f: field.one()}
        for pc, row in rref.items():
            if f in row:
                v[pc] = field.neg(row[f])
        basis.append(dict(sorted(v.items())))
    return basis


def image_basis(m: SparseMatrix, field: FieldSpec) -> list:
    """Basis of the column space as vectors {row index: value} (echelon form)."""
    cols = [dict() for _ in range(m.cols)]
    for (i, j), v in m.entries.items():
        cv = field.coerce(v)
        if cv != 0:
            cols[j][i] = cv
    pivots = _forward_eliminate(cols, field, integer_mode=False)
    return [dict(sorted(r.items())) for _, r in pivots]


def solve(m: SparseMatrix, b: dict, field: FieldSpec):
    """One solution x of m x = b, or None if inconsistent.

    b is a vector {row index: value}.
    """
    rows = _rows_of(m, field)
    BCOL = m.cols  # sentinel column holding -b
    for i, v in b.items():
        cv = field.coerce(v)
        if cv != 0:
            rows[i][BCOL] = field.neg(cv)
    work = {i: r for i, r in enumerate(rows) if r}
    col_count: dict = {}
    for r in work.values():
        for c in r:
            col_count[c] = col_count.get(c, 0) + 1
    pivots = []
    while True:
        cand = {
            i: {c: v for c, v in r.items() if c != BCOL}
            for i, r in work.items()
        }
        cand = {i: r for i, r in cand.items() if r}
        if not cand:
            break
        ri, pc = _pick_pivot(cand, col_count)
        prow = work.pop(ri)
        pivots.append((pc, prow))
        pval = prow[pc]
        for i in list(work):
            r = work[i]
            if pc not in r:
                continue
            factor = field.div(r[pc], pval)
            new = {}
            seen = set()
            for c, v in r.items():
                seen.add(c)
                nv = field.sub(v, field.mul(factor, prow.get(c, field.zero())))
                if nv != 0:
                    new[c] = nv
            for c, v in prow.items():
                if c not in seen:
                    nv = field.neg(field.mul(factor, v))
                    if nv != 0:
                        new[c] = nv
            if new:
                work[i] = new
            else:
                del work[i]
    for r in work.values():
        if BCOL in r:
            return None  # inconsistent: 0 = nonzero
    x: dict = {}
    for pc, prow in reversed(pivots):
        # prow: pval * x[pc] + sum_{c>pivots} prow[c] x[c] - b-part = 0
        acc = field.neg(prow.get(BCOL, field.zero()))
        for c, v in prow.items():
            if c in (pc, BCOL):
                continue
            acc = field.sub(acc, field.mul(v, x.get(c, field.zero())))
        x[pc] = field.div(acc, prow[pc])
    return {c: v for c, v in sorted(x.items()) if v != 0}
