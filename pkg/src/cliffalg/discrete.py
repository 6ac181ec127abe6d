"""Chains, boundaries and homology of simplicial complexes; Sperner's lemma;
the matrix-tree theorem.

A complex on the ordered vertex set V lives in Cl(V) over the integers with
every vertex squaring to 1. A simplex is a basis blade, its orientation is
the one induced by the vertex order, and the boundary map is the left
contraction by s_V, the sum of all vertices.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import Algebra, Multivector, Signature, grade_of, indices_of
from .errors import CliffordError
from .morphisms import Outermorphism, adjoint
from .products import left_inner, scalar_product, wedge
from .rings import INTEGER


class ComplexError(CliffordError, ValueError):
    pass


def _integer_algebra(n: int) -> Algebra:
    return Algebra(Signature((1,) * n), INTEGER)


def _read_lines(path):
    text = Path(path).read_text()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


# ----------------------------------------------------------------- complexes

class SimplicialComplex:
    """A set of vertex subsets closed under taking subsets (always contains the empty set)."""

    def __init__(self, vertices: Sequence, simplices: Iterable[Iterable] = (), warn: bool = False):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ComplexError("duplicate vertex names")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.alg = _integer_algebra(len(self.vertices))
        given = {self.mask(s) for s in simplices} | {1 << i for i in range(len(self.vertices))} | {0}
        closed = set()
        for m in given:
            closed.update(_submasks(m))
        if warn and closed != given:
            warnings.warn(f"complex closed under subsets: added {len(closed - given)} faces",
                          stacklevel=2)
        self.simplices = frozenset(closed)

    def mask(self, simplex: Iterable) -> int:
        m = 0
        for v in simplex:
            if v not in self.index:
                raise ComplexError(f"unknown vertex {v!r}")
            m |= 1 << self.index[v]
        return m

    def names(self, mask: int) -> Tuple:
        return tuple(self.vertices[i - 1] for i in indices_of(mask))

    @property
    def dim(self) -> int:
        return max(grade_of(m) for m in self.simplices) - 1

    def simplices_of_dim(self, d: int) -> List[int]:
        return sorted(m for m in self.simplices if grade_of(m) == d + 1)

    def __contains__(self, simplex) -> bool:
        return self.mask(simplex) in self.simplices

    def simplex(self, vertices: Sequence, sign: int = 1) -> Multivector:
        """The oriented simplex v0 v1 ... vk (sign from the given order)."""
        m = self.mask(vertices)
        if m not in self.simplices:
            raise ComplexError(f"{tuple(vertices)} is not a simplex of the complex")
        if grade_of(m) != len(vertices):
            raise ComplexError("repeated vertex in simplex")
        out = self.alg.one()
        for v in vertices:
            out = out * self.alg.gens[self.index[v]]
        return out * sign

    def chain(self, terms: Dict[Tuple, int]) -> Multivector:
        out = self.alg.zero()
        for verts, c in terms.items():
            out = out + self.simplex(verts, c)
        return out

    def supports(self, x: Multivector) -> bool:
        return all(m in self.simplices for m in x.terms)

    @classmethod
    def from_file(cls, path) -> "SimplicialComplex":
        """One simplex per line (space-separated names); optional `order: ...` header."""
        order = None
        faces = []
        for line in _read_lines(path):
            if line.startswith("order:"):
                order = line[len("order:"):].split()
                continue
            faces.append(line.split())
        if order is None:
            order = _first_appearance(faces)
        return cls(order, faces, warn=True)

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.simplices)} simplices)"


def _first_appearance(rows) -> list:
    seen = {}
    for row in rows:
        for v in row:
            seen.setdefault(v, None)
    return list(seen)


def _submasks(m: int):
    sub = m
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & m


def s_vector(alg: Algebra) -> Multivector:
    """s_V, the sum of all vertices."""
    return alg.vector([1] * alg.n)


def boundary(x: Multivector) -> Multivector:
    """d_V(x) = s_V _| x."""
    return left_inner(s_vector(x.alg), x)


def generalized_boundary(x: Multivector, p: int) -> Multivector:
    """s_p _| x with s_p the sum of all p-subsets; squares to zero for odd p."""
    alg = x.alg
    s = alg.from_terms({m: 1 for m in range(1 << alg.n) if grade_of(m) == p})
    return left_inner(s, x)


# ----------------------------------------------------------------- Smith normal form and homology

def smith_normal_form(M: Sequence[Sequence[int]]):
    """(U, D, V) with U D V = M, U and V unimodular and D in Smith form.

    Each pass moves the smallest nonzero entry of the remaining block to the
    pivot and reduces its row and column; entries not divisible by the pivot
    are pulled into the pivot row until they are.
    """
    A = [[int(c) for c in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]

    def add_row(i, j, k):
        # row_i += k row_j
        A[i] = [a + k * b for a, b in zip(A[i], A[j])]
        for row in U:
            row[j] -= k * row[i]

    def add_col(i, j, k):
        # col_i += k col_j
        for row in A:
            row[i] += k * row[j]
        V[j] = [a - k * b for a, b in zip(V[j], V[i])]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nonzero:
                return U, A, V
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            for row in U:
                row[t] = -row[t]
    return U, A, V


def _diagonal(D) -> List[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


@dataclass
class HomologyResult:
    betti: Dict[int, int]
    torsion: Dict[int, List[int]] = field(default_factory=dict)
    reduced: bool = False

    def __str__(self):
        lines = []
        for d in sorted(self.betti):
            t = self.torsion.get(d) or []
            tors = " + ".join(f"Z/{k}" for k in t)
            lines.append(f"H{d}: rank {self.betti[d]}" + (f", torsion {tors}" if tors else ""))
        return "\n".join(lines)


def boundary_matrix(K: SimplicialComplex, d: int):
    """Matrix of C_d -> C_{d-1} in the sorted simplex bases."""
    rows = K.simplices_of_dim(d - 1)
    cols = K.simplices_of_dim(d)
    pos = {m: i for i, m in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, m in enumerate(cols):
        for mm, c in boundary(K.alg.blade(m)).terms.items():
            M[pos[mm]][j] = int(c)
    return M


def homology(K: SimplicialComplex, reduced: bool = False) -> HomologyResult:
    """Integral homology from Smith forms of the boundary matrices.

    reduced=True keeps the empty simplex as the single (-1)-chain.
    """
    top = K.dim
    low = -1 if reduced else 0
    ranks = {}
    factors = {}
    for d in range(low + 1, top + 1):
        M = boundary_matrix(K, d)
        diag = _diagonal(smith_normal_form(M)[1]) if M and M[0] else []
        ranks[d] = len(diag)
        factors[d] = [k for k in diag if k > 1]
    betti, torsion = {}, {}
    for d in range(low, top + 1):
        size = len(K.simplices_of_dim(d))
        betti[d] = size - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if factors.get(d + 1):
            torsion[d] = factors[d + 1]
    return HomologyResult(betti, torsion, reduced)


# ----------------------------------------------------------------- chain maps, content, index

def chain_map(f: Dict, K: SimplicialComplex, L: SimplicialComplex) -> Outermorphism:
    """The outermorphism extension of a complex morphism f: V -> W."""
    missing = [v for v in K.vertices if v not in f]
    if missing:
        raise ComplexError(f"vertex map undefined on {missing[0]!r}")
    for m in K.simplices:
        if L.mask(f[v] for v in K.names(m)) not in L.simplices:
            raise ComplexError(f"not a complex morphism: image of {K.names(m)} is not a simplex")
    M = [[0] * len(K.vertices) for _ in L.vertices]
    for j, v in enumerate(K.vertices):
        M[L.index[f[v]]][j] = 1
    return Outermorphism(M, K.alg, L.alg)


def is_chain_map(F, K: SimplicialComplex, L: SimplicialComplex) -> bool:
    """d_W F = F d_V and F(C(K)) inside C(L), checked on every simplex of K."""
    for m in K.simplices:
        x = K.alg.blade(m)
        y = F(x)
        if not L.supports(y) or boundary(y) != F(boundary(x)):
            return False
    return True


def _target_generator(W: Algebra, a, names: Optional[Sequence] = None) -> Multivector:
    if isinstance(a, Multivector):
        return a
    if names is not None and a in names:
        return W.gens[list(names).index(a)]
    if isinstance(a, int):
        return W.gens[a]
    raise ComplexError(f"unknown target vertex {a!r}")


def content(F, x: Multivector) -> int:
    """Cont(x) = W * F(x)."""
    W = F.target.pseudoscalar()
    return int(scalar_product(W, F(x)))


def index(F, x: Multivector, a=0, names: Optional[Sequence] = None) -> int:
    """Ind(x) = (W a) * F(d_V x) for a fixed vertex a of W."""
    W = F.target.pseudoscalar()
    g = _target_generator(F.target, a, names)
    return int(scalar_product(W * g, F(boundary(x))))


# ----------------------------------------------------------------- Sperner

SPERNER_LABELS = ("a", "b", "c")


@dataclass
class Triangulation:
    complex: SimplicialComplex
    triangles: List[Tuple]          # positively oriented vertex triples
    corners: Tuple                  # (A, B, C)

    def chain(self) -> Multivector:
        x = self.complex.alg.zero()
        for t in self.triangles:
            x = x + self.complex.simplex(t)
        return x


@dataclass
class SpernerResult:
    index: int
    content: int
    complete: int

    @property
    def odd(self) -> bool:
        return self.complete % 2 == 1


def grid_triangulation(level: int) -> Triangulation:
    """The triangle A=(0,0), B=(L,0), C=(0,L) cut into L^2 triangles, counterclockwise."""
    if level < 1:
        raise ValueError("level must be at least 1")
    name = lambda i, j: f"p{i}_{j}"
    verts = [name(i, j) for j in range(level + 1) for i in range(level + 1 - j)]
    tris = []
    for j in range(level):
        for i in range(level - j):
            tris.append((name(i, j), name(i + 1, j), name(i, j + 1)))
            if i + j <= level - 2:
                tris.append((name(i + 1, j), name(i + 1, j + 1), name(i, j + 1)))
    K = SimplicialComplex(verts, tris)
    return Triangulation(K, tris, (name(0, 0), name(level, 0), name(0, level)))


def _boundary_sides(T: Triangulation) -> Dict[str, List]:
    """Nodes on the sides AB, BC, CA, found by walking the boundary cycle."""
    K = T.complex
    succ = {}
    for m, c in boundary(T.chain()).terms.items():
        u, v = K.names(m)
        if abs(c) != 1:
            raise ComplexError("triangles are not consistently oriented")
        a, b = (u, v) if c == 1 else (v, u)
        if a in succ:
            raise ComplexError("boundary of the triangulation is not a simple cycle")
        succ[a] = b
    A, B, C = T.corners
    sides = {}
    for name, start, stop in (("AB", A, B), ("BC", B, C), ("CA", C, A)):
        path = [start]
        while path[-1] != stop:
            if path[-1] not in succ or len(path) > len(succ):
                raise ComplexError("corners are not on a positively oriented boundary cycle")
            path.append(succ[path[-1]])
        sides[name] = path
    if sum(len(p) - 1 for p in sides.values()) != len(succ):
        raise ComplexError("corners are not on a positively oriented boundary cycle")
    return sides


def check_labels(T: Triangulation, labels: Dict) -> None:
    allowed = {"AB": {"a", "b"}, "BC": {"b", "c"}, "CA": {"a", "c"}}
    for v in T.complex.vertices:
        if labels.get(v) not in SPERNER_LABELS:
            raise ComplexError(f"vertex {v!r} needs a label in a, b, c")
    for v, lab in zip(T.corners, SPERNER_LABELS):
        if labels[v] != lab:
            raise ComplexError(f"boundary labeling violation: corner {v!r} must be labeled {lab}")
    for side, path in _boundary_sides(T).items():
        for v in path:
            if labels[v] not in allowed[side]:
                raise ComplexError(f"boundary labeling violation: {v!r} on side {side} labeled {labels[v]}")


def label_complex() -> SimplicialComplex:
    return SimplicialComplex(SPERNER_LABELS, [SPERNER_LABELS])


def sperner_check(T: Triangulation, labels: Dict, a="a") -> SpernerResult:
    """Index of the triangulation chain under the labeling map, and the complete-triangle count."""
    check_labels(T, labels)
    W = label_complex()
    F = chain_map(labels, T.complex, W)
    x = T.chain()
    complete = sum(1 for t in T.triangles if {labels[v] for v in t} == set(SPERNER_LABELS))
    return SpernerResult(index(F, x, a, W.vertices), content(F, x), complete)


def read_triangulation(path) -> Triangulation:
    """A .cplx file whose 2-simplex lines are positively oriented triangles."""
    K = SimplicialComplex.from_file(path)
    tris = []
    for line in _read_lines(path):
        parts = line.split()
        if not line.startswith("order:") and len(parts) == 3:
            tris.append(tuple(parts))
    return Triangulation(K, tris, ())


def read_labels(path) -> Tuple[Dict, Tuple]:
    """`vertex label` lines with a `corners: A B C` header."""
    labels, corners = {}, None
    for line in _read_lines(path):
        if line.startswith("corners:"):
            corners = tuple(line[len("corners:"):].split())
            if len(corners) != 3:
                raise ComplexError("corners header needs three vertices")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ComplexError(f"bad label line: {line!r}")
        labels[parts[0]] = parts[1]
    if corners is None:
        raise ComplexError("labels file needs a `corners: A B C` header")
    return labels, corners


# ----------------------------------------------------------------- graphs and spanning trees

class Graph:
    """A finite simple undirected graph with an ordered vertex list."""

    def __init__(self, vertices: Sequence, edges: Iterable[Tuple]):
        self.vertices = list(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        seen = set()
        self.edges: List[Tuple] = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u!r}: graph must be simple")
            if u not in self.index or v not in self.index:
                raise ValueError(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"multi-edge ({u!r}, {v!r}): graph must be simple")
            seen.add(key)
            # stored as (v', v) with v' before v
            self.edges.append((u, v) if self.index[u] < self.index[v] else (v, u))

    @classmethod
    def from_file(cls, path) -> "Graph":
        """`v1 v2` edge lines; vertex order from an `order:` header or first appearance."""
        order, edges = None, []
        for line in _read_lines(path):
            if line.startswith("order:"):
                order = line[len("order:"):].split()
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line: {line!r}")
            edges.append(tuple(parts))
        if order is None:
            order = _first_appearance(edges)
        return cls(order, edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        stack, seen = [self.vertices[0]], {self.vertices[0]}
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == len(self.vertices)

    @property
    def vertex_algebra(self) -> Algebra:
        return _integer_algebra(len(self.vertices))

    @property
    def edge_algebra(self) -> Algebra:
        return _integer_algebra(len(self.edges))

    def delta(self) -> Outermorphism:
        """delta({v', v}) = v - v' for v' before v, as an outermorphism Cl(E) -> Cl(V)."""
        M = [[0] * len(self.edges) for _ in self.vertices]
        for j, (u, v) in enumerate(self.edges):
            M[self.index[v]][j] = 1
            M[self.index[u]][j] = -1
        return Outermorphism(M, self.edge_algebra, self.vertex_algebra)

    def laplacian(self) -> Outermorphism:
        """Delta = delta o delta^* on Cl(V)."""
        d = self.delta()
        return d @ adjoint(d)

    def delta_of(self, edge_subset: Sequence[Tuple]) -> Multivector:
        """delta applied to the wedge of the given edges."""
        pos = {frozenset(e): j for j, e in enumerate(self.edges)}
        E = self.edge_algebra
        F = wedge([E.gens[pos[frozenset(e)]] for e in edge_subset], E)
        return self.delta()(F)


def laplacian_adjugate(G: Graph, x: Multivector) -> Multivector:
    """Delta^adj(x) = Delta(x V) V^dagger, never forming the full matrix of Delta."""
    Lap = G.laplacian()
    V = G.vertex_algebra.pseudoscalar()
    return Lap(x * V) * V.reverse()


def spanning_tree_count(G: Graph, u=None, v=None) -> int:
    """u * Delta^adj v; independent of the vertices u and v."""
    if len(G.vertices) == 0:
        return 0
    if not G.is_connected():
        warnings.warn("graph is disconnected: no spanning trees", stacklevel=2)
        return 0
    A = G.vertex_algebra
    u = G.vertices[0] if u is None else u
    v = G.vertices[0] if v is None else v
    gu, gv = A.gens[G.index[u]], A.gens[G.index[v]]
    return int(scalar_product(gu, laplacian_adjugate(G, gv)))


def brute_force_spanning_trees(G: Graph) -> int:
    """Count (|V|-1)-edge subsets without cycles, via union-find."""
    n = len(G.vertices)
    if n == 0:
        return 0
    count = 0
    for subset in itertools.combinations(G.edges, n - 1):
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        ok = True
        for a, b in subset:
            ra, rb = find(G.index[a]), find(G.index[b])
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        count += ok
    return count


__all__ = ["ComplexError", "SimplicialComplex", "s_vector", "boundary", "generalized_boundary",
           "smith_normal_form", "HomologyResult", "boundary_matrix", "homology", "chain_map",
           "is_chain_map", "content", "index", "Triangulation", "SpernerResult",
           "grid_triangulation", "check_labels", "sperner_check", "read_triangulation",
           "read_labels", "label_complex", "Graph", "laplacian_adjugate", "spanning_tree_count",
           "brute_force_spanning_trees"]
