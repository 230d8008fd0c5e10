"""Space expressions, their rational cohomology, and Toda type labels."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .graded import (
    GradedError,
    PoincarePolynomial,
    disjoint_poly,
    join_poly,
    product_poly,
    suspension_poly,
    wedge_poly,
)


class ValidationError(ValueError):
    """An expression violates a structural invariant."""


class SpaceExpr:
    """Base class of the space expression tree."""

    __slots__ = ()

    def children(self) -> tuple["SpaceExpr", ...]:
        return ()


@dataclass(frozen=True)
class Empty(SpaceExpr):
    pass


@dataclass(frozen=True)
class Point(SpaceExpr):
    pass


@dataclass(frozen=True)
class Sphere(SpaceExpr):
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValidationError(f"Sphere dimension must be >= 0, got {self.k}")


@dataclass(frozen=True)
class PTrunc(SpaceExpr):
    """Space with ``H^* = Q[z]/z^(h+1)``, ``deg z = n``."""

    h: int
    n: int

    def __post_init__(self):
        if self.h < 1 or self.n < 1:
            raise ValidationError("PTrunc requires h >= 1 and n >= 1")
        if self.n % 2 == 1 and self.h != 1:
            raise ValidationError("PTrunc with odd n requires h = 1 (odd generator squares to zero)")


@dataclass(frozen=True)
class Toda(SpaceExpr):
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("Toda space requires n >= 1")
        if self.n % 2 == 1 and self.a != 0:
            raise ValidationError("Toda space with odd n requires a = 0 (u1^2 = 0 when n is odd)")


@dataclass(frozen=True)
class MappingCone(SpaceExpr):
    """Cone of a map ``S^(2n-1) -> S^n`` with the given Hopf invariant."""

    n: int
    hopf: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("MappingCone requires n >= 1")
        if self.n % 2 == 1 and self.hopf != 0:
            raise ValidationError("MappingCone with odd n requires Hopf invariant 0")


@dataclass(frozen=True)
class Wedge(SpaceExpr):
    parts: tuple[SpaceExpr, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValidationError("Wedge needs at least one summand")
        object.__setattr__(self, "parts", tuple(self.parts))

    def children(self):
        return self.parts


@dataclass(frozen=True)
class Disjoint(SpaceExpr):
    parts: tuple[SpaceExpr, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValidationError("Disjoint union needs at least one part")
        object.__setattr__(self, "parts", tuple(self.parts))

    def children(self):
        return self.parts


@dataclass(frozen=True)
class Join(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Susp(SpaceExpr):
    child: SpaceExpr

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class Product(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Punctured(SpaceExpr):
    child: SpaceExpr

    def __post_init__(self):
        c = self.child
        ok = (
            isinstance(c, Product)
            and isinstance(c.left, Sphere)
            and isinstance(c.right, Sphere)
            and c.left.k >= 1
            and c.right.k >= 1
        )
        if not ok:
            raise ValidationError("Punctured is only defined on a product of two positive-dimensional spheres")

    def children(self):
        return (self.child,)


@lru_cache(maxsize=4096)
def eval_poincare(e: SpaceExpr) -> PoincarePolynomial:
    """Unreduced Poincare polynomial of ``e``."""
    try:
        return _eval(e)
    except GradedError as exc:
        raise ValidationError(str(exc)) from exc


def _eval(e: SpaceExpr) -> PoincarePolynomial:
    if isinstance(e, Empty):
        return PoincarePolynomial.empty_space()
    if isinstance(e, Point):
        return PoincarePolynomial.point()
    if isinstance(e, Sphere):
        return PoincarePolynomial.sphere(e.k)
    if isinstance(e, PTrunc):
        return PoincarePolynomial.from_ranks({i * e.n: 1 for i in range(e.h + 1)})
    if isinstance(e, Toda):
        return PoincarePolynomial.from_ranks({i * e.n: 1 for i in range(4)})
    if isinstance(e, MappingCone):
        return PoincarePolynomial.from_ranks({0: 1, e.n: 1, 2 * e.n: 1})
    if isinstance(e, Wedge):
        return wedge_poly(eval_poincare(p) for p in e.parts)
    if isinstance(e, Disjoint):
        return disjoint_poly(eval_poincare(p) for p in e.parts)
    if isinstance(e, Join):
        red = join_poly(eval_poincare(e.left).to_reduced(), eval_poincare(e.right).to_reduced())
        return red.to_unreduced()
    if isinstance(e, Susp):
        return suspension_poly(eval_poincare(e.child).to_reduced()).to_unreduced()
    if isinstance(e, Product):
        return product_poly(eval_poincare(e.left), eval_poincare(e.right))
    if isinstance(e, Punctured):
        ranks = eval_poincare(e.child).ranks
        top = max(ranks)
        ranks[top] -= 1
        return PoincarePolynomial.from_ranks(ranks)
    raise ValidationError(f"unknown space expression {e!r}")


def is_empty(e: SpaceExpr) -> bool:
    return eval_poincare(e).is_empty_space()


def components(e: SpaceExpr) -> list[SpaceExpr]:
    """Split ``e`` into connected pieces, preserving structural order."""
    if isinstance(e, Empty):
        parts: list[SpaceExpr] = []
    elif isinstance(e, Sphere) and e.k == 0:
        parts = [Point(), Point()]
    elif isinstance(e, Disjoint):
        parts = [c for p in e.parts for c in components(p)]
    elif isinstance(e, Join) and is_empty(e.left):
        parts = components(e.right)
    elif isinstance(e, Join) and is_empty(e.right):
        parts = components(e.left)
    elif isinstance(e, Susp) and is_empty(e.child):
        parts = [Point(), Point()]
    elif isinstance(e, Product):
        parts = [Product(a, b) for a, b in itertools.product(components(e.left), components(e.right))]
    else:
        parts = [e]
    if len(parts) != eval_poincare(e).rank(0):
        raise ValidationError(f"cannot split {e!r} into connected components")
    return parts


# Rational wedge decomposition of connected spaces: a list of ("S", d) and
# ("P2", d) summands, or None when the space is not rationally such a wedge.
def rational_summands(e: SpaceExpr) -> list[tuple[str, int]] | None:
    if not eval_poincare(e).is_connected():
        raise ValidationError("rational_summands expects a connected space")
    if isinstance(e, Point):
        return []
    if isinstance(e, Sphere):
        return [("S", e.k)]
    if isinstance(e, PTrunc):
        if e.h == 1:
            return [("S", e.n)]
        if e.h == 2:
            return [("P2", e.n)]
        return None
    if isinstance(e, MappingCone):
        return [("P2", e.n)] if e.hopf != 0 else [("S", e.n), ("S", 2 * e.n)]
    if isinstance(e, Toda):
        if e.b != 0:
            return None
        return [("P2", e.n), ("S", 3 * e.n)] if e.a != 0 else [("S", e.n), ("S", 2 * e.n), ("S", 3 * e.n)]
    if isinstance(e, Wedge):
        out: list[tuple[str, int]] = []
        for p in e.parts:
            s = rational_summands(p)
            if s is None:
                return None
            out.extend(s)
        return sorted(out)
    if isinstance(e, Join) and is_empty(e.left):
        return rational_summands(e.right)
    if isinstance(e, Join) and is_empty(e.right):
        return rational_summands(e.left)
    if isinstance(e, (Join, Susp)):
        # a join of nonempty spaces is a suspension, so all cup products vanish
        red = eval_poincare(e).to_reduced()
        return [("S", d) for d, r in red.terms for _ in range(r)]
    if isinstance(e, Punctured):
        return sorted([("S", e.child.left.k), ("S", e.child.right.k)])
    return None


# --- ring presentations ----------------------------------------------------

Monomial = tuple[int, ...]  # exponent vector over the generators


@dataclass(frozen=True)
class Relation:
    """``lhs = coeff * rhs``; ``rhs is None`` means ``lhs = 0``."""

    lhs: Monomial
    coeff: Fraction
    rhs: Monomial | None

    def render(self, names: list[str]) -> str:
        if self.rhs is None or self.coeff == 0:
            return f"{render_monomial(names, self.lhs)} = 0"
        c = "" if self.coeff == 1 else f"{self.coeff}*"
        return f"{render_monomial(names, self.lhs)} = {c}{render_monomial(names, self.rhs)}"


def render_monomial(names: list[str], m: Monomial) -> str:
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, m) if k]
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class RingPresentation:
    generators: tuple[tuple[str, int], ...]
    relations: tuple[Relation, ...]
    params: tuple[tuple[str, int], ...] = ()
    top_degree: int | None = None

    def __post_init__(self):
        k = len(self.generators)
        for rel in self.relations:
            for m in (rel.lhs, rel.rhs):
                if m is not None and len(m) != k:
                    raise ValidationError("relation references undeclared generators")
        for i, (name, deg) in enumerate(self.generators):
            if deg % 2 == 1 and self.reduce(_unit(k, i, 2)) is not None:
                raise ValidationError(f"odd generator {name} must square to zero")

    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, (_, d) in zip(m, self.generators))

    def reduce(self, m: Monomial) -> tuple[Fraction, Monomial] | None:
        """Normal form of a monomial: ``(coeff, basis monomial)`` or ``None`` for zero."""
        coeff = Fraction(1)
        for _ in range(1000):
            if self.top_degree is not None and self.degree(m) > self.top_degree:
                return None
            for rel in self.relations:
                if all(a >= b for a, b in zip(m, rel.lhs)):
                    if rel.rhs is None or rel.coeff == 0:
                        return None
                    m = tuple(a - b + c for a, b, c in zip(m, rel.lhs, rel.rhs))
                    coeff *= rel.coeff
                    break
            else:
                return coeff, m
        raise ValidationError("rewriting did not terminate")

    def multiply(self, x: str, y: str) -> tuple[Fraction, str] | None:
        names = [g for g, _ in self.generators]
        k = len(names)
        m = tuple(a + b for a, b in zip(_unit(k, names.index(x)), _unit(k, names.index(y))))
        red = self.reduce(m)
        if red is None:
            return None
        return red[0], render_monomial(names, red[1])

    def basis(self) -> list[Monomial]:
        """Irreducible nonzero monomials, enumerated up to the top degree."""
        top = self.top_degree if self.top_degree is not None else 64
        degs = [d for _, d in self.generators]
        bounds = [top // d for d in degs]
        out = []
        for m in itertools.product(*(range(b + 1) for b in bounds)):
            if self.degree(m) > top:
                continue
            red = self.reduce(m)
            if red is not None and red[1] == m and red[0] == 1:
                out.append(m)
        return out

    def additive_ranks(self) -> PoincarePolynomial:
        ranks: dict[int, int] = {}
        for m in self.basis():
            d = self.degree(m)
            ranks[d] = ranks.get(d, 0) + 1
        return PoincarePolynomial.from_ranks(ranks)

    def describe(self) -> dict:
        names = [g for g, _ in self.generators]
        return {
            "generators": {g: d for g, d in self.generators},
            "relations": [r.render(names) for r in self.relations],
            "params": dict(self.params),
            "top_degree": self.top_degree,
        }


def _unit(k: int, i: int, power: int = 1) -> Monomial:
    return tuple(power if j == i else 0 for j in range(k))


def toda_ring(n: int, a: int, b: int) -> RingPresentation:
    """``u1^2 = a u2``, ``u1 u2 = b u3`` with generators in degrees n, 2n, 3n."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    if n % 2 == 1 and a != 0:
        raise ValidationError("if n is odd then u1^2 = 0 and hence a = 0")
    rels = [
        Relation((2, 0, 0), Fraction(a), (0, 1, 0) if a else None),
        Relation((1, 1, 0), Fraction(b), (0, 0, 1) if b else None),
    ]
    return RingPresentation(
        generators=(("u1", n), ("u2", 2 * n), ("u3", 3 * n)),
        relations=tuple(rels),
        params=(("n", n), ("a", a), ("b", b)),
        top_degree=3 * n,
    )


def truncated_ring(h: int, n: int) -> RingPresentation:
    PTrunc(h, n)
    return RingPresentation(
        generators=(("z", n),),
        relations=(Relation((h + 1,), Fraction(0), None),),
        params=(("n", n), ("h", h)),
        top_degree=h * n,
    )


@dataclass(frozen=True)
class ConeRing:
    presentation: RingPresentation
    iso_class: str


def mapping_cone_ring(n: int, h: int) -> ConeRing:
    """Cohomology ring of the cone on ``S^(2n-1) -> S^n`` with Hopf invariant ``h``."""
    MappingCone(n, h)
    pres = RingPresentation(
        generators=(("x", n), ("y", 2 * n)),
        relations=(Relation((2, 0), Fraction(h), (0, 1) if h else None),),
        params=(("n", n), ("h", h)),
        top_degree=2 * n,
    )
    iso = f"P2({n})" if h != 0 else f"S{n} v S{2 * n}"
    return ConeRing(pres, iso)


@dataclass(frozen=True)
class RationalTypeLabel:
    kind: str  # ProductSpheres | P3 | WedgeThreeSpheres | P2WedgeSphere
    n: int

    def model(self) -> SpaceExpr:
        n = self.n
        return {
            "ProductSpheres": lambda: Product(Sphere(n), Sphere(2 * n)),
            "P3": lambda: PTrunc(3, n),
            "WedgeThreeSpheres": lambda: Wedge((Sphere(n), Sphere(2 * n), Sphere(3 * n))),
            "P2WedgeSphere": lambda: Wedge((PTrunc(2, n), Sphere(3 * n))),
        }[self.kind]()

    def __str__(self):
        return f"{self.kind}({self.n})"


def classify_type(n: int, a: int, b: int) -> RationalTypeLabel:
    toda_ring(n, a, b)
    if b != 0:
        kind = "P3" if a != 0 else "ProductSpheres"
    else:
        kind = "P2WedgeSphere" if a != 0 else "WedgeThreeSpheres"
    return RationalTypeLabel(kind, n)
