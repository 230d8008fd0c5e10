"""Finite simplicial models and exact rational homology.

This module is the independent check on :mod:`circlefix.graded`: it never
looks at Poincare polynomials, only at boundary matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .graded import PoincarePolynomial, euler_char
from .space import Join, Point, SpaceExpr, Sphere, Susp, Wedge, eval_poincare

MAX_SPHERE_DIM = 8
MAX_VERTICES = 20
MAX_SIMPLICES = 200_000
MAX_ENTRY_BITS = 4096


class ComplexError(ValueError):
    pass


Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[int, ...]
    simplices: frozenset[Simplex]

    @classmethod
    def from_facets(cls, facets) -> "SimplicialComplex":
        faces: set[Simplex] = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            for k in range(1, len(f) + 1):
                faces.update(itertools.combinations(f, k))
        return cls._make(faces)

    @classmethod
    def _make(cls, faces) -> "SimplicialComplex":
        if len(faces) > MAX_SIMPLICES:
            raise ComplexError(f"complex has {len(faces)} simplices, cap is {MAX_SIMPLICES}")
        verts = tuple(sorted({v for s in faces for v in s}))
        if len(verts) > MAX_VERTICES:
            raise ComplexError(f"complex has {len(verts)} vertices, cap is {MAX_VERTICES}")
        return cls(verts, frozenset(faces))

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def faces_of_dim(self, k: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def is_closed(self) -> bool:
        for s in self.simplices:
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face and face not in self.simplices:
                    return False
        return True

    def relabel(self, offset: int) -> "SimplicialComplex":
        index = {v: i + offset for i, v in enumerate(self.vertices)}
        return SimplicialComplex(
            tuple(index[v] for v in self.vertices),
            frozenset(tuple(index[v] for v in s) for s in self.simplices),
        )

    def euler_from_counts(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)


def sphere_complex(k: int) -> SimplicialComplex:
    """Boundary of the (k+1)-simplex."""
    if k < 0 or k > MAX_SPHERE_DIM:
        raise ComplexError(f"sphere dimension {k} outside 0..{MAX_SPHERE_DIM}")
    full = tuple(range(k + 2))
    return SimplicialComplex.from_facets(itertools.combinations(full, k + 1))


def point_complex() -> SimplicialComplex:
    return SimplicialComplex((0,), frozenset({(0,)}))


def empty_complex() -> SimplicialComplex:
    return SimplicialComplex((), frozenset())


def join_complex(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    a = a.relabel(0)
    b = b.relabel(len(a.vertices))
    size = (len(a.simplices) + 1) * (len(b.simplices) + 1) - 1
    if size > MAX_SIMPLICES:
        raise ComplexError(f"join would have {size} simplices, cap is {MAX_SIMPLICES}")
    left = list(a.simplices) + [()]
    right = list(b.simplices) + [()]
    faces = {s + t for s in left for t in right if s or t}
    return SimplicialComplex._make(faces)


def wedge_complex(a: SimplicialComplex, b: SimplicialComplex, a0: int, b0: int) -> SimplicialComplex:
    """Disjoint union of ``a`` and ``b`` with ``a0`` and ``b0`` identified."""
    if a0 not in a.vertices or b0 not in b.vertices:
        raise ComplexError("wedge basepoints must be vertices of their complexes")
    index_a = {v: i for i, v in enumerate(a.vertices)}
    index_b = {}
    nxt = len(a.vertices)
    for v in b.vertices:
        if v == b0:
            index_b[v] = index_a[a0]
        else:
            index_b[v] = nxt
            nxt += 1
    faces = {tuple(index_a[v] for v in s) for s in a.simplices}
    faces |= {tuple(sorted(index_b[v] for v in s)) for s in b.simplices}
    return SimplicialComplex._make(faces)


# --- exact linear algebra -------------------------------------------------

SparseRow = dict[int, int]


def boundary_matrix(K: SimplicialComplex, k: int) -> list[SparseRow]:
    """Columns of the k-th boundary map as sparse integer rows.

    Entry ``j`` of row ``i`` is the coefficient of the ``j``-th (k-1)-face in
    the boundary of the ``i``-th k-simplex.
    """
    if k <= 0:
        return []
    lower = {s: i for i, s in enumerate(K.faces_of_dim(k - 1))}
    rows = []
    for s in K.faces_of_dim(k):
        rows.append({lower[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))})
    return rows


def exact_rank(rows: list[SparseRow]) -> int:
    """Rank over Q by fraction-free elimination on integer rows."""
    pivots: dict[int, SparseRow] = {}
    rank = 0
    for row in sorted(rows, key=len):
        row = dict(row)
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                rank += 1
                break
            a, p = row[col], piv[col]
            out: SparseRow = {}
            for c in row.keys() | piv.keys():
                v = p * row.get(c, 0) - a * piv.get(c, 0)
                if v:
                    out[c] = v
            g = 0
            for v in out.values():
                g = gcd(g, v)
            if g > 1:
                out = {c: v // g for c, v in out.items()}
            if any(abs(v).bit_length() > MAX_ENTRY_BITS for v in out.values()):
                raise ComplexError("entry growth exceeded the configured bound")
            row = out
    return rank


def exact_det(matrix) -> Fraction:
    """Exact determinant; float entries are converted without rounding."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
    return det


def compose_is_zero(K: SimplicialComplex, k: int) -> bool:
    """Check that the boundary of the boundary of every k-simplex vanishes."""
    upper = boundary_matrix(K, k)
    lower = boundary_matrix(K, k - 1)
    for row in upper:
        acc: dict[int, int] = {}
        for j, c in row.items():
            for jj, cc in (lower[j].items() if lower else ()):
                acc[jj] = acc.get(jj, 0) + c * cc
        if any(acc.values()):
            return False
    return True


def rational_homology(K: SimplicialComplex) -> PoincarePolynomial:
    """Reduced rational Betti numbers of ``K``."""
    if len(K.simplices) > MAX_SIMPLICES:
        raise ComplexError("complex exceeds the simplex cap")
    if not K.simplices:
        return PoincarePolynomial.empty_space().to_reduced()
    top = K.dim
    counts = [len(K.faces_of_dim(k)) for k in range(top + 1)]
    ranks = [0] + [exact_rank(boundary_matrix(K, k)) for k in range(1, top + 1)] + [0]
    betti = {}
    for k in range(top + 1):
        b = counts[k] - ranks[k] - ranks[k + 1]
        if k == 0:
            b -= 1
        if b:
            betti[k] = b
    return PoincarePolynomial.from_ranks(betti, reduced=True)


# --- compositional models and the oracle ------------------------------------

MAX_ORACLE_SPHERE = 4


def build_model(e: SpaceExpr) -> SimplicialComplex:
    if isinstance(e, Point):
        return point_complex()
    if isinstance(e, Sphere):
        if e.k > MAX_ORACLE_SPHERE:
            raise ComplexError(f"oracle models spheres up to dimension {MAX_ORACLE_SPHERE}")
        return sphere_complex(e.k)
    if isinstance(e, Join):
        return join_complex(build_model(e.left), build_model(e.right))
    if isinstance(e, Susp):
        return join_complex(sphere_complex(0), build_model(e.child))
    if isinstance(e, Wedge):
        K = build_model(e.parts[0])
        for part in e.parts[1:]:
            L = build_model(part)
            K = wedge_complex(K, L, K.vertices[0], L.vertices[0])
        return K
    raise ComplexError(f"no simplicial model for {type(e).__name__}")


@dataclass(frozen=True)
class OracleVerdict:
    match: bool
    expected: PoincarePolynomial
    computed: PoincarePolynomial
    simplices: int

    def as_dict(self) -> dict:
        return {
            "match": self.match,
            "expected": {str(d): r for d, r in self.expected.terms},
            "computed": {str(d): r for d, r in self.computed.terms},
            "simplices": self.simplices,
        }


def oracle_check(e: SpaceExpr) -> OracleVerdict:
    """Compare ``eval_poincare(e)`` (reduced) with simplicial homology of a model."""
    K = build_model(e)
    computed = rational_homology(K)
    expected = eval_poincare(e).to_reduced()
    return OracleVerdict(expected == computed, expected, computed, len(K.simplices))


def unreduced_euler(K: SimplicialComplex) -> int:
    return euler_char(rational_homology(K).to_unreduced())


def dump_complex(K: SimplicialComplex) -> str:
    lines = [" ".join(map(str, s)) for s in sorted(K.simplices, key=lambda s: (len(s), s))]
    return "\n".join(lines) + ("\n" if lines else "")


def load_complex(text: str) -> SimplicialComplex:
    faces = {tuple(sorted(int(v) for v in line.split())) for line in text.splitlines() if line.strip()}
    K = SimplicialComplex._make(faces)
    if not K.is_closed():
        raise ComplexError("simplex list is not closed under taking faces")
    return K


def model_size(e: SpaceExpr) -> tuple[int, int]:
    """``(vertices, simplices)`` of :func:`build_model` without building it."""
    if isinstance(e, Point):
        return 1, 1
    if isinstance(e, Sphere):
        return e.k + 2, 2 ** (e.k + 2) - 2
    if isinstance(e, Join):
        (va, sa), (vb, sb) = model_size(e.left), model_size(e.right)
        return va + vb, (sa + 1) * (sb + 1) - 1
    if isinstance(e, Susp):
        v, s = model_size(e.child)
        return v + 2, 3 * (s + 1) - 1
    if isinstance(e, Wedge):
        sizes = [model_size(p) for p in e.parts]
        k = len(sizes) - 1
        return sum(v for v, _ in sizes) - k, sum(s for _, s in sizes) - k
    raise ComplexError(f"no simplicial model for {type(e).__name__}")


def random_oracle_expr(rng, depth: int = 3, max_simplices: int = 5000) -> SpaceExpr:
    """Random Point/Sphere/Wedge/Join/Susp expression whose model fits the caps.

    Draws are rejected until the model has at most ``MAX_VERTICES`` vertices
    and ``max_simplices`` simplices.
    """

    def draw(d):
        if d <= 1 or rng.random() < 0.3:
            return Point() if rng.random() < 0.15 else Sphere(rng.randint(0, MAX_ORACLE_SPHERE))
        kind = rng.randrange(3)
        if kind == 0:
            return Susp(draw(d - 1))
        if kind == 1:
            return Join(draw(d - 1), draw(d - 1))
        parts = []
        while len(parts) < rng.randint(2, 3):
            p = draw(d - 1)
            if eval_poincare(p).is_connected():
                parts.append(p)
        return Wedge(tuple(parts))

    while True:
        e = draw(depth)
        v, s = model_size(e)
        if v <= MAX_VERTICES and s <= max_simplices:
            return e
