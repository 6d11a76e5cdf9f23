"""Finite simplicial complexes, the star-based dual-spectrum model, and
pointed simplicial-set sphere models.

The two homology pipelines compared here:

* sx_pushforward_homology: total complex of the semi-simplicial object whose
  column at an n-simplex s of X is the relative chain model of
  (S^N minus (X minus st(s)), S^N minus X), with open complements modeled by
  full subcomplexes of the barycentric subdivision spanned by barycenters of
  simplices outside the closed set.
* sw_dual_betti: reduced homology of (S^N, S^N minus X), the N-fold
  suspension of the stable dual, computed without the star machinery.

Both are compared against the classical duality expectation
H^{N-i}(X) on every test pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import ChainComplex, GradedSpace, TruncationWindow
from .exact_linalg import FieldSpec, SparseMatrix


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite simplicial complex; simplices are sorted vertex tuples closed
    under faces."""

    vertices: tuple
    simplices: frozenset

    @staticmethod
    def from_maximal(maximal) -> "SimplicialComplex":
        simplices = set()
        for m in maximal:
            m = tuple(sorted(set(m)))
            if not m:
                raise TopologyError("empty simplex")
            for k in range(1, len(m) + 1):
                simplices.update(combinations(m, k))
        vertices = tuple(sorted({v for s in simplices for v in s}))
        return SimplicialComplex(vertices, frozenset(simplices))

    def all_simplices(self) -> list:
        return sorted(self.simplices, key=lambda s: (len(s), s))

    def simplices_of_dim(self, q: int) -> list:
        return sorted((s for s in self.simplices if len(s) == q + 1))

    def dim(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def has_subcomplex(self, other: "SimplicialComplex") -> bool:
        return other.simplices <= self.simplices

    def chain_complex(self, field: FieldSpec) -> ChainComplex:
        basis = {}
        for q in range(self.dim() + 1):
            sims = self.simplices_of_dim(q)
            if sims:
                basis[q] = tuple(sims)
        gs = GradedSpace(field, basis)
        d = {}
        for q in range(1, self.dim() + 1):
            entries = {}
            for j, s in enumerate(basis.get(q, ())):
                for i_v in range(len(s)):
                    face = s[:i_v] + s[i_v + 1:]
                    sign = field.one() if i_v % 2 == 0 else field.neg(field.one())
                    entries[(gs.index(q - 1, face), j)] = sign
            if entries:
                d[q] = SparseMatrix(gs.dim(q - 1), gs.dim(q), entries)
        return ChainComplex(gs, d)

    def betti(self, field: FieldSpec) -> dict:
        c = self.chain_complex(field)
        return c.betti(TruncationWindow(0, max(0, self.dim())))


def star(x: SimplicialComplex, s: tuple) -> set:
    """All simplices of x having s as a face (including s)."""
    s = tuple(sorted(s))
    if s not in x.simplices:
        raise TopologyError(f"{s!r} is not a simplex of the complex")
    sset = set(s)
    return {t for t in x.simplices if sset <= set(t)}


def barycentric_subdivision(x: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the simplices of x; simplices are strict face chains."""
    order = x.all_simplices()
    chains = set()

    def extend(chain, top):
        chains.add(tuple(chain))
        for t in order:
            if len(t) > len(top) and set(top) < set(t):
                extend(chain + [t], t)

    for s in order:
        extend([s], s)
    # chain tuples are already sorted by (len, tuple) along the chain
    return SimplicialComplex(tuple(order), frozenset(chains))


def full_subcomplex(x: SimplicialComplex, vertex_subset) -> SimplicialComplex:
    keep = set(vertex_subset)
    sims = frozenset(s for s in x.simplices if set(s) <= keep)
    verts = tuple(sorted(v for v in x.vertices if v in keep))
    return SimplicialComplex(verts, sims)


def relative_chain_complex(big: SimplicialComplex, sub: SimplicialComplex,
                           field: FieldSpec) -> ChainComplex:
    """C_*(big)/C_*(sub); over a field this computes reduced homology of the
    quotient big/sub (absolute homology when sub is empty)."""
    if sub.simplices and not big.has_subcomplex(sub):
        raise TopologyError("relative pair: sub is not a subcomplex")
    basis = {}
    for q in range(big.dim() + 1):
        sims = [s for s in big.simplices_of_dim(q) if s not in sub.simplices]
        if sims:
            basis[q] = tuple(sims)
    gs = GradedSpace(field, basis)
    d = {}
    for q in sorted(basis):
        if q - 1 not in basis:
            continue
        entries = {}
        kept = set(basis[q - 1])
        for j, s in enumerate(basis[q]):
            for i_v in range(len(s)):
                face = s[:i_v] + s[i_v + 1:]
                if face not in kept:
                    continue
                sign = field.one() if i_v % 2 == 0 else field.neg(field.one())
                entries[(gs.index(q - 1, face), j)] = sign
        if entries:
            d[q] = SparseMatrix(gs.dim(q - 1), gs.dim(q), entries)
    return ChainComplex(gs, d)


EMPTY_COMPLEX = SimplicialComplex((), frozenset())


# ---------------------------------------------------------------------------
# embedded pairs and the dual-spectrum pipelines


@dataclass
class EmbeddedPair:
    """A subcomplex of a triangulated N-sphere."""

    ambient: SimplicialComplex
    sub: SimplicialComplex
    n_sphere: int

    def __post_init__(self):
        if not self.ambient.has_subcomplex(self.sub):
            raise TopologyError("sub is not a subcomplex of the ambient sphere")
        f = FieldSpec.rationals()
        b = self.ambient.betti(f)
        expected = {q: 0 for q in range(self.ambient.dim() + 1)}
        expected[0] = 1
        expected[self.n_sphere] = expected.get(self.n_sphere, 0) + 1
        if self.ambient.dim() != self.n_sphere or b != expected:
            raise TopologyError(
                f"ambient complex is not a homology S^{self.n_sphere}: betti {b}"
            )


def boundary_of_simplex(n: int, labels=None) -> SimplicialComplex:
    """The boundary of the n-simplex: a triangulation of S^{n-1}."""
    if labels is None:
        labels = tuple(f"v{i}" for i in range(n + 1))
    return SimplicialComplex.from_maximal(combinations(labels, n))


def complement_model(ambient_sd: SimplicialComplex, closed: SimplicialComplex,
                     ambient: SimplicialComplex) -> SimplicialComplex:
    """Deformation-retract model of |ambient| minus |closed|: the full
    subcomplex of the barycentric subdivision on barycenters of simplices not
    in the closed subcomplex."""
    keep = [s for s in ambient.all_simplices() if s not in closed.simplices]
    return full_subcomplex(ambient_sd, keep)


def sx_pushforward_homology(e: EmbeddedPair, window: TruncationWindow,
                            field: FieldSpec | None = None) -> dict:
    """Reduced betti of the pushforward of the star-based model: total complex
    over simplices s of X of relative chains of
    (complement model of X minus st(s), complement model of X)."""
    f = field or FieldSpec.rationals()
    amb, x = e.ambient, e.sub
    sd = barycentric_subdivision(amb)
    d_model = complement_model(sd, x, amb)
    d_simplices = d_model.simplices

    columns = {}
    for s in x.all_simplices():
        st = star(x, s)
        a_s = SimplicialComplex(x.vertices, frozenset(x.simplices - st))
        c_s = complement_model(sd, a_s, amb)
        columns[s] = c_s

    basis: dict = {}
    for s, c_s in columns.items():
        p = len(s) - 1
        for flag in c_s.all_simplices():
            if flag in d_simplices:
                continue
            q = len(flag) - 1
            basis.setdefault(p + q, []).append(("sx", s, flag))
    gs = GradedSpace(f, basis)

    d = {}
    one = f.one()
    for n in sorted(basis):
        entries: dict = {}
        tgt = gs._index.get(n - 1, {})
        for j, (_, s, flag) in enumerate(basis[n]):
            p = len(s) - 1
            # face maps of the semi-simplicial direction: s -> d_i s
            if p > 0:
                for i_v in range(len(s)):
                    face_s = s[:i_v] + s[i_v + 1:]
                    lab = ("sx", face_s, flag)
                    if lab in tgt:
                        sign = one if i_v % 2 == 0 else f.neg(one)
                        key = (tgt[lab], j)
                        entries[key] = f.add(entries.get(key, f.zero()), sign)
            # internal boundary of the relative column, weighted (-1)^p
            psign = one if p % 2 == 0 else f.neg(one)
            if len(flag) > 1:
                for i_v in range(len(flag)):
                    face = flag[:i_v] + flag[i_v + 1:]
                    lab = ("sx", s, face)
                    if lab not in tgt:
                        continue
                    sign = one if i_v % 2 == 0 else f.neg(one)
                    key = (tgt[lab], j)
                    entries[key] = f.add(entries.get(key, f.zero()), f.mul(psign, sign))
        entries = {k: v for k, v in entries.items() if v != 0}
        if entries:
            d[n] = SparseMatrix(gs.dim(n - 1), gs.dim(n), entries)
    total = ChainComplex(gs, d)
    return total.betti(window)


def sw_dual_betti(e: EmbeddedPair, window: TruncationWindow,
                  field: FieldSpec | None = None) -> dict:
    """Reduced betti of (S^N, S^N minus X): the suspended stable-dual side,
    computed independently of the star machinery."""
    f = field or FieldSpec.rationals()
    sd = barycentric_subdivision(e.ambient)
    d_model = complement_model(sd, e.sub, e.ambient)
    rel = relative_chain_complex(sd, d_model, f)
    return rel.betti(window)


def alexander_oracle(e: EmbeddedPair, window: TruncationWindow,
                     field: FieldSpec | None = None) -> dict:
    """Classical expectation H^{N-i}(X) (unreduced), over a field equal to
    betti_{N-i} of X itself; degrees outside [0, N] are zero."""
    f = field or FieldSpec.rationals()
    bx = e.sub.betti(f)
    out = {}
    for i in window.degrees():
        out[i] = bx.get(e.n_sphere - i, 0)
    return out


# ---------------------------------------------------------------------------
# pointed simplicial sets and sphere models


@dataclass
class PointedSimplicialSet:
    """Finite-in-each-degree simplicial set with marked basepoint, stored up
    to a degree cap; face/degeneracy tables are validated exhaustively."""

    name: str
    simplices: dict  # m -> tuple of ids
    faces: dict  # (m, id, i) -> id        (m >= 1, 0 <= i <= m)
    degeneracies: dict  # (m, id, j) -> id (0 <= j <= m)
    basepoint: dict  # m -> id
    max_degree: int

    def __post_init__(self):
        for m in range(self.max_degree + 1):
            if self.basepoint[m] not in self.simplices[m]:
                raise TopologyError(f"basepoint missing in degree {m}")
        self._validate_identities()

    def face(self, m: int, x, i: int):
        return self.faces[(m, x, i)]

    def degeneracy(self, m: int, x, j: int):
        return self.degeneracies[(m, x, j)]

    def degenerate_ids(self, m: int) -> set:
        if m == 0:
            return set()
        return {
            self.degeneracies[(m - 1, x, j)]
            for x in self.simplices[m - 1]
            for j in range(m)
        }

    def nondegenerate(self, m: int) -> list:
        deg = self.degenerate_ids(m)
        return [x for x in self.simplices[m] if x not in deg]

    def nondegenerate_counts(self) -> tuple:
        return tuple(len(self.nondegenerate(m)) for m in range(self.max_degree + 1))

    def _validate_identities(self):
        S = self.simplices
        for m in range(1, self.max_degree + 1):
            for x in S[m]:
                for i in range(m + 1):
                    if (m, x, i) not in self.faces:
                        raise TopologyError(f"missing face ({m},{x},{i})")
        for m in range(self.max_degree):
            for x in S[m]:
                for j in range(m + 1):
                    if (m, x, j) not in self.degeneracies:
                        raise TopologyError(f"missing degeneracy ({m},{x},{j})")
        # d_i d_j = d_{j-1} d_i (i < j)
        for m in range(2, self.max_degree + 1):
            for x in S[m]:
                for j in range(1, m + 1):
                    for i in range(j):
                        lhs = self.face(m - 1, self.face(m, x, j), i)
                        rhs = self.face(m - 1, self.face(m, x, i), j - 1)
                        if lhs != rhs:
                            raise TopologyError(f"face identity fails at ({m},{x},{i},{j})")
        # s_i s_j = s_{j+1} s_i (i <= j), and the mixed identities
        for m in range(self.max_degree - 1):
            for x in S[m]:
                for j in range(m + 1):
                    for i in range(j + 1):
                        lhs = self.degeneracy(m + 1, self.degeneracy(m, x, j), i)
                        rhs = self.degeneracy(m + 1, self.degeneracy(m, x, i), j + 1)
                        if lhs != rhs:
                            raise TopologyError(f"degeneracy identity fails at ({m},{x})")
        for m in range(self.max_degree):
            for x in S[m]:
                for j in range(m + 1):
                    sx = self.degeneracy(m, x, j)
                    for i in range(m + 2):
                        di = self.face(m + 1, sx, i)
                        if i == j or i == j + 1:
                            if di != x:
                                raise TopologyError(f"d_i s_j != id at ({m},{x},{i},{j})")
                        elif i < j:
                            if di != self.degeneracy(m - 1, self.face(m, x, i), j - 1):
                                raise TopologyError(f"d_i s_j fails at ({m},{x},{i},{j})")
                        else:
                            if di != self.degeneracy(m - 1, self.face(m, x, i - 1), j):
                                raise TopologyError(f"d_i s_j fails at ({m},{x},{i},{j})")
        # basepoint is closed under faces and degeneracies
        for m in range(1, self.max_degree + 1):
            for i in range(m + 1):
                if self.face(m, self.basepoint[m], i) != self.basepoint[m - 1]:
                    raise TopologyError("basepoint not closed under faces")
        for m in range(self.max_degree):
            for j in range(m + 1):
                if self.degeneracy(m, self.basepoint[m], j) != self.basepoint[m + 1]:
                    raise TopologyError("basepoint not closed under degeneracies")


def _monotone_maps(m: int, k: int):
    """All monotone maps [m] -> [k] as value tuples."""
    out = []

    def rec(prefix, last):
        if len(prefix) == m + 1:
            out.append(tuple(prefix))
            return
        for v in range(last, k + 1):
            rec(prefix + [v], v)

    rec([], 0)
    return out


def _compose_delta(vals: tuple, i: int) -> tuple:
    """Precompose a value tuple with the coface delta_i (skip i)."""
    return vals[:i] + vals[i + 1:]


def _compose_sigma(vals: tuple, j: int) -> tuple:
    """Precompose with the codegeneracy sigma_j (repeat j)."""
    return vals[:j + 1] + vals[j:]


def sphere_model(k: int, variant: str, max_degree: int) -> PointedSimplicialSet:
    """Finite pointed simplicial-set models of S^k.

    minimal: Delta^k/boundary (one nondegenerate cell besides the basepoint);
    boundary-of-simplex: the simplicial set of the complex ∂Δ^{k+1} pointed
    at vertex 0; barycentric: the nerve of the face poset of ∂Δ^{k+1}.
    """
    if k < 1:
        raise TopologyError("sphere dimension must be >= 1")
    if variant == "minimal":
        simplices = {}
        faces = {}
        degeneracies = {}
        basepoint = {}
        for m in range(max_degree + 1):
            cells = [("s", v) for v in _monotone_maps(m, k) if len(set(v)) == k + 1]
            simplices[m] = ("*",) + tuple(cells)
            basepoint[m] = "*"
        for m in range(1, max_degree + 1):
            for x in simplices[m]:
                for i in range(m + 1):
                    if x == "*":
                        faces[(m, x, i)] = "*"
                    else:
                        v = _compose_delta(x[1], i)
                        faces[(m, x, i)] = ("s", v) if len(set(v)) == k + 1 else "*"
        for m in range(max_degree):
            for x in simplices[m]:
                for j in range(m + 1):
                    degeneracies[(m, x, j)] = (
                        "*" if x == "*" else ("s", _compose_sigma(x[1], j))
                    )
        return PointedSimplicialSet(f"minimal-S{k}", simplices, faces, degeneracies,
                                    basepoint, max_degree)

    if variant == "boundary-of-simplex":
        kk = k + 1
        simplices = {}
        faces = {}
        degeneracies = {}
        basepoint = {}
        for m in range(max_degree + 1):
            cells = [v for v in _monotone_maps(m, kk) if len(set(v)) <= kk]
            simplices[m] = tuple(cells)
            basepoint[m] = tuple([0] * (m + 1))
        for m in range(1, max_degree + 1):
            for x in simplices[m]:
                for i in range(m + 1):
                    faces[(m, x, i)] = _compose_delta(x, i)
        for m in range(max_degree):
            for x in simplices[m]:
                for j in range(m + 1):
                    degeneracies[(m, x, j)] = _compose_sigma(x, j)
        return PointedSimplicialSet(f"bdy-simplex-S{k}", simplices, faces,
                                    degeneracies, basepoint, max_degree)

    if variant == "barycentric":
        bd = boundary_of_simplex(k + 1)
        poset = bd.all_simplices()
        simplices = {}
        faces = {}
        degeneracies = {}
        basepoint = {}
        base = poset[0]

        def chains(m):
            out = []

            def rec(prefix, last_idx):
                if len(prefix) == m + 1:
                    out.append(tuple(prefix))
                    return
                for idx in range(last_idx, len(poset)):
                    nxt = poset[idx]
                    if prefix and not (set(prefix[-1]) <= set(nxt)):
                        continue
                    rec(prefix + [nxt], idx)

            rec([], 0)
            return out

        for m in range(max_degree + 1):
            simplices[m] = tuple(chains(m))
            basepoint[m] = tuple([base] * (m + 1))
        for m in range(1, max_degree + 1):
            for x in simplices[m]:
                for i in range(m + 1):
                    faces[(m, x, i)] = x[:i] + x[i + 1:]
        for m in range(max_degree):
            for x in simplices[m]:
                for j in range(m + 1):
                    degeneracies[(m, x, j)] = x[:j + 1] + x[j:]
        return PointedSimplicialSet(f"barycentric-S{k}", simplices, faces,
                                    degeneracies, basepoint, max_degree)

    raise TopologyError(f"unsupported sphere model variant {variant!r}")


def circle_model(max_degree: int) -> PointedSimplicialSet:
    return sphere_model(1, "minimal", max_degree)


# ---------------------------------------------------------------------------
# the k = 1 loop-space pipeline


def loopspace_betti(x: SimplicialComplex, field: FieldSpec, bounds: tuple,
                    window: TruncationWindow, assert_simply_connected: bool = False,
                    base_vertex=None):
    """Hochschild cohomology betti of the simplicial cochain algebra: the
    chain-level free-loop-space invariant at k = 1.

    Connectivity is a homotopy hypothesis the artifact cannot decide;
    the caller must assert simple connectivity explicitly.
    Returns (stable betti dict, StabilizationReport).
    """
    if not assert_simply_connected:
        raise TopologyError(
            "loopspace requires a 1-connected complex; pass "
            "assert_simply_connected=True to certify connectivity"
        )
    from .dg_algebra import cochain_algebra, regular_bimodule
    from .hochschild import hochschild_cochains
    from .complexes import stabilization_report

    r = cochain_algebra(x, field, base_vertex)
    m = regular_bimodule(r)
    tables = []
    for b in sorted(bounds):
        hc = hochschild_cochains(r, m, b, window)
        tables.append((b, hc.total.betti(window)))
    rep = stabilization_report(tables, window)
    return rep.stable_betti(), rep
