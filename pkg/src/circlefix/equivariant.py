"""Circle actions as expressions, their fixed point sets, and consistency checks.

An action expression evaluates to two space expressions: the total space
and the fixed point set.  The combinators follow the usual rules (the join
of actions fixes the join of fixed sets, suspension adds two fixed poles,
wedges are taken at fixed basepoints).  ``ConeA``, ``MultConeA`` and
``BundleA`` are declared primitives whose fixed sets are taken as given;
:func:`report` checks every result against the rank inequality and the
Euler characteristic equality for circle actions.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass

from . import classify as C
from .graded import euler_char, total_rank
from .space import (
    Disjoint,
    Empty,
    Join,
    MappingCone,
    Point,
    PTrunc,
    Product,
    Punctured,
    SpaceExpr,
    Sphere,
    Susp,
    Toda,
    ValidationError,
    Wedge,
    components,
    eval_poincare,
    is_empty,
)


class InvariantViolation(RuntimeError):
    """A rule or primitive produced a fixed set that no circle action can have."""


class ActionExpr:
    __slots__ = ()

    def children(self) -> tuple["ActionExpr", ...]:
        return ()


@dataclass(frozen=True)
class Trivial(ActionExpr):
    space: SpaceExpr


@dataclass(frozen=True)
class FreeRotation(ActionExpr):
    """Scalar multiplication on ``S^k`` inside ``C^((k+1)/2)``."""

    k: int

    def __post_init__(self):
        if self.k < 1 or self.k % 2 == 0:
            raise ValidationError(f"FreeRotation requires odd dimension k >= 1, got {self.k}")


@dataclass(frozen=True)
class SuspA(ActionExpr):
    child: ActionExpr

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class JoinA(ActionExpr):
    left: ActionExpr
    right: ActionExpr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class WedgeA(ActionExpr):
    """Wedge at fixed basepoints; ``basepoints[i]`` indexes a component of child i's fixed set."""

    parts: tuple[ActionExpr, ...]
    basepoints: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(self.parts) < 1:
            raise ValidationError("WedgeA needs at least one summand")
        object.__setattr__(self, "parts", tuple(self.parts))
        bps = tuple(self.basepoints) if self.basepoints is not None else (0,) * len(self.parts)
        if len(bps) != len(self.parts) or any(b < 0 for b in bps):
            raise ValidationError("one nonnegative basepoint index per wedge summand")
        object.__setattr__(self, "basepoints", bps)

    def children(self):
        return self.parts


@dataclass(frozen=True)
class ConeA(ActionExpr):
    """Action on the cone ``X_n`` of the reflection map induced from ``S^1 < O(n)`` fixing ``R^k``."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValidationError("ConeA requires even n >= 2")
        if not 0 <= self.k <= self.n:
            raise ValidationError("ConeA requires 0 <= k <= n")
        if self.k % 2:
            raise ValidationError("a circle in O(n) fixes a subspace of even codimension; k must be even")


@dataclass(frozen=True)
class MultConeA(ActionExpr):
    n: int

    def __post_init__(self):
        if self.n not in (2, 4, 8):
            raise ValidationError("MultConeA requires n in {2, 4, 8}")


@dataclass(frozen=True)
class BundleA(ActionExpr):
    """Action on ``S^2 x S^(n+2)`` with fixed set ``S^3``."""

    n: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise ValidationError("BundleA requires odd n >= 3")


@dataclass(frozen=True)
class Puncture(ActionExpr):
    """Remove a fixed point lying in component 0 of the fixed set."""

    child: ActionExpr

    def children(self):
        return (self.child,)


# --- evaluation --------------------------------------------------------------

def total_space(a: ActionExpr) -> SpaceExpr:
    if isinstance(a, Trivial):
        return a.space
    if isinstance(a, FreeRotation):
        return Sphere(a.k)
    if isinstance(a, SuspA):
        return Susp(total_space(a.child))
    if isinstance(a, JoinA):
        return Join(total_space(a.left), total_space(a.right))
    if isinstance(a, WedgeA):
        parts = tuple(total_space(c) for c in a.parts)
        for p in parts:
            if not eval_poincare(p).is_connected():
                raise ValidationError("WedgeA summands must have connected total spaces")
        return Wedge(parts)
    if isinstance(a, ConeA):
        return MappingCone(a.n, -2)
    if isinstance(a, MultConeA):
        return MappingCone(a.n, 1)
    if isinstance(a, BundleA):
        return Product(Sphere(2), Sphere(a.n + 2))
    if isinstance(a, Puncture):
        return Punctured(total_space(a.child))
    raise ValidationError(f"unknown action {a!r}")


def _three_points() -> SpaceExpr:
    return Disjoint((Point(), Point(), Point()))


def _remove_point(component: SpaceExpr) -> SpaceExpr | None:
    """The component with one point removed, or ``None`` if nothing is left."""
    if isinstance(component, Point):
        return None
    if isinstance(component, Sphere) and component.k >= 1:
        return Point()  # a punctured sphere is a disk
    raise ValidationError(f"cannot remove a point from {component!r}")


def fixed_set(a: ActionExpr) -> SpaceExpr:
    if isinstance(a, Trivial):
        return a.space
    if isinstance(a, FreeRotation):
        return Empty()
    if isinstance(a, SuspA):
        inner = fixed_set(a.child)
        return Sphere(0) if is_empty(inner) else Join(Sphere(0), inner)
    if isinstance(a, JoinA):
        return Join(fixed_set(a.left), fixed_set(a.right))
    if isinstance(a, WedgeA):
        chosen, rest = [], []
        for child, bp in zip(a.parts, a.basepoints):
            comps = components(fixed_set(child))
            if not comps:
                raise ValidationError("WedgeA basepoint must be a fixed point, but the fixed set is empty")
            if bp >= len(comps):
                raise ValidationError(f"basepoint component {bp} out of range ({len(comps)} components)")
            chosen.append(comps[bp])
            rest.extend(c for i, c in enumerate(comps) if i != bp)
        wedge = Wedge(tuple(chosen))
        return Disjoint((wedge, *rest)) if rest else wedge
    if isinstance(a, ConeA):
        return _three_points() if a.k == 0 else MappingCone(a.k, -2)
    if isinstance(a, MultConeA):
        # n = 8: the source sphere's fixed S^5 becomes S^6 in the cone
        return Disjoint((Sphere(6 if a.n == 8 else a.n), Point()))
    if isinstance(a, BundleA):
        return Sphere(3)
    if isinstance(a, Puncture):
        total_space(a)
        comps = components(fixed_set(a.child))
        if not comps:
            raise ValidationError("Puncture needs a nonempty fixed set")
        head = _remove_point(comps[0])
        left = ([head] if head is not None else []) + comps[1:]
        if not left:
            return Empty()
        return left[0] if len(left) == 1 else Disjoint(tuple(left))
    raise ValidationError(f"unknown action {a!r}")


@dataclass(frozen=True)
class FixedSetReport:
    total: SpaceExpr
    fixed: SpaceExpr
    rank_total: int
    rank_fixed: int
    chi_total: int
    chi_fixed: int
    tnhz: bool


def report(a: ActionExpr) -> FixedSetReport:
    total = total_space(a)
    fixed = fixed_set(a)
    pt, pf = eval_poincare(total), eval_poincare(fixed)
    rep = FixedSetReport(
        total=total,
        fixed=fixed,
        rank_total=total_rank(pt),
        rank_fixed=total_rank(pf),
        chi_total=euler_char(pt),
        chi_fixed=euler_char(pf),
        tnhz=total_rank(pt) == total_rank(pf),
    )
    if rep.rank_fixed > rep.rank_total:
        raise InvariantViolation(f"fixed set rank {rep.rank_fixed} exceeds total rank {rep.rank_total} for {a!r}")
    if rep.chi_fixed != rep.chi_total:
        raise InvariantViolation(f"Euler characteristics differ ({rep.chi_fixed} != {rep.chi_total}) for {a!r}")
    return rep


# --- building blocks for the realizations -----------------------------------

def sphere_action(dim: int, fixed_dim: int) -> ActionExpr:
    """An action on ``S^dim`` whose fixed set is ``S^fixed_dim`` (``-1`` for free).

    Suspending a free rotation of ``S^(dim - fixed_dim - 1)`` ``fixed_dim + 1``
    times; requires ``dim - fixed_dim`` even.
    """
    if fixed_dim == dim:
        return Trivial(Sphere(dim))
    free = dim - fixed_dim - 1
    if fixed_dim < -1 or free < 1 or free % 2 == 0:
        raise ValidationError(f"no circle action on S^{dim} with fixed set S^{fixed_dim}")
    act: ActionExpr = FreeRotation(free)
    for _ in range(fixed_dim + 1):
        act = SuspA(act)
    return act


# --- realization gallery ---------------------------------------------------------

def _check_even(n: int, what: str) -> None:
    if n % 2:
        raise ValidationError(f"{what} needs even n, got {n}")


def _case_1_wedge(n=2):
    _check_even(n, "1-wedge")
    act = WedgeA(tuple(sphere_action(d, 0) for d in (n, 2 * n, 3 * n)))
    return act, C.FixedSetType.of(C.PT, C.PT, C.PT, C.PT), True, 0


def _case_1_cone(n=2):
    act = WedgeA((ConeA(n, 0), sphere_action(3 * n, 0)))
    return act, C.FixedSetType.of(C.PT, C.PT, C.PT, C.PT), True, 1


def _case_2_wedge(n=2, r=2):
    _check_even(n, "2-wedge")
    parts = (sphere_action(n, 0), sphere_action(2 * n, 0), sphere_action(3 * n, r))
    act = WedgeA(parts, (0, 0, 0))
    return act, C.FixedSetType.of(C.sphere(r), C.PT, C.PT), True, 0


def _case_2_cone(n=2, r=2):
    act = WedgeA((ConeA(n, 0), sphere_action(3 * n, r)))
    return act, C.FixedSetType.of(C.sphere(r), C.PT, C.PT), True, 1


def _mult_join(n):
    # Y = S^(n-1) * M with a free action on the sphere factor
    return JoinA(FreeRotation(n - 1), MultConeA(n))


def _mult_fixed_dim(n):
    return 6 if n == 8 else n


def _case_3_sphere_pair(n=2, r=2):
    act = WedgeA((sphere_action(n, r), _mult_join(n)), (0, 1))
    return act, C.FixedSetType.of(C.sphere(r), C.sphere(_mult_fixed_dim(n))), True, 0


def _case_3_wedge_point(n=2, r=2):
    act = WedgeA((sphere_action(n, r), _mult_join(n)), (0, 0))
    return act, C.FixedSetType.of(C.wedge(r, _mult_fixed_dim(n)), C.PT), True, 0


def _case_3_p2_point(n=4, r=2):
    act = WedgeA((sphere_action(n, 0), JoinA(FreeRotation(n - 1), ConeA(n, r))))
    return act, C.FixedSetType.of(C.p2(r), C.PT), True, 0


def _case_3_p2_point_cone(n=4, r=2):
    act = WedgeA((ConeA(n, r), sphere_action(3 * n, 0)))
    return act, C.FixedSetType.of(C.p2(r), C.PT), True, 1


def _case_4_three_spheres(n=2, r=None, s=None, t=None):
    if n % 2 == 0:
        r, s, t = r or 2, s or 2, t or 4
    else:
        r, s, t = r or 1, s or 2, t or 3
    act = WedgeA((sphere_action(n, r), sphere_action(2 * n, s), sphere_action(3 * n, t)))
    return act, C.FixedSetType.of(C.wedge(r, s, t)), True, 0


def _case_4_p2_sphere(n=4, r=2, s=2):
    act = WedgeA((sphere_action(n, s), JoinA(FreeRotation(n - 1), ConeA(n, r))))
    return act, C.FixedSetType.of(C.p2_wedge(r, s)), True, 0


def _case_4_p2_sphere_cone(n=4, r=2, s=2):
    act = WedgeA((ConeA(n, r), sphere_action(3 * n, s)))
    return act, C.FixedSetType.of(C.p2_wedge(r, s)), True, 1


def _case_thm2(n=3, r=1):
    if n % 2 == 0 or n < 3:
        raise ValidationError("the non-TNHZ construction needs odd n >= 3")
    # W = S^(n-3) * (S^2 x S^(n+2) minus a fixed point), wedged with S^3n fixing S^r
    w = JoinA(Trivial(Sphere(n - 3)), Puncture(BundleA(n)))
    act = WedgeA((w, sphere_action(3 * n, r)))
    return act, C.FixedSetType.of(C.sphere(r)), False, 0


CASES = {
    "1-wedge": _case_1_wedge,
    "1-cone": _case_1_cone,
    "2-wedge": _case_2_wedge,
    "2-cone": _case_2_cone,
    "3-sphere-pair": _case_3_sphere_pair,
    "3-wedge-point": _case_3_wedge_point,
    "3-P2-point": _case_3_p2_point,
    "3-P2-point-cone": _case_3_p2_point_cone,
    "4-three-spheres": _case_4_three_spheres,
    "4-P2-sphere": _case_4_p2_sphere,
    "4-P2-sphere-cone": _case_4_p2_sphere_cone,
    "thm2-Sr": _case_thm2,
}


def catalog() -> list[tuple[str, dict]]:
    """Every gallery instance checked by ``gallery --all``."""
    out: list[tuple[str, dict]] = [(cid, {}) for cid in CASES if cid != "thm2-Sr"]
    out += [("1-wedge", {"n": 4}), ("1-cone", {"n": 4})]
    out += [("2-wedge", {"n": 2, "r": r}) for r in (2, 4)]
    out += [("2-cone", {"n": 2, "r": r}) for r in (2, 4, 6)]
    out += [("3-sphere-pair", {"n": 4, "r": 2}), ("3-sphere-pair", {"n": 8, "r": 4})]
    out += [("3-wedge-point", {"n": 4, "r": 4}), ("3-wedge-point", {"n": 8, "r": 2})]
    out += [("3-P2-point", {"n": 6, "r": 4}), ("4-P2-sphere", {"n": 6, "r": 4, "s": 6})]
    out += [("4-three-spheres", {"n": 3}), ("4-three-spheres", {"n": 4, "r": 4, "s": 6, "t": 2})]
    out += [("thm2-Sr", {"n": 3, "r": r}) for r in range(1, 10, 2)]
    out += [("thm2-Sr", {"n": 5, "r": r}) for r in (1, 7, 15)]
    return out


@dataclass(frozen=True)
class GalleryResult:
    case_id: str
    params: dict
    n: int
    action: ActionExpr
    report: FixedSetReport
    claimed: "C.FixedSetType"
    observed: "C.FixedSetType"
    expected_tnhz: bool
    total_type: str
    expected_total_type: str
    in_classification: bool

    @property
    def passed(self) -> bool:
        return (
            self.claimed == self.observed
            and self.report.tnhz == self.expected_tnhz
            and self.total_type == self.expected_total_type
            and self.in_classification
        )


def gallery(case_id: str, **params) -> GalleryResult:
    """Build a realization, evaluate it, and check it against its claimed fixed set type."""
    if case_id not in CASES:
        raise ValidationError(f"unknown gallery case {case_id!r}; known: {', '.join(CASES)}")
    builder = CASES[case_id]
    sig = inspect.signature(builder)
    full = {k: v.default for k, v in sig.parameters.items()}
    unknown = set(params) - set(full)
    if unknown:
        raise ValidationError(f"unknown parameters for {case_id}: {sorted(unknown)}")
    full.update(params)
    act, claimed, tnhz, a_nonzero = builder(**full)
    n = full["n"]
    rep = report(act)
    observed = C.fixed_set_type(rep.fixed)
    total_type = str(C.descriptor_of(rep.total))
    expected_total = C.p2_wedge(n, 3 * n) if a_nonzero else C.wedge(n, 2 * n, 3 * n)
    member = observed in C.enumerate_fixed_types(n, tnhz)
    return GalleryResult(
        case_id, {k: v for k, v in full.items() if v is not None}, n, act, rep,
        claimed, observed, tnhz, total_type, str(expected_total), member,
    )


# --- random actions for invariant sweeps ---------------------------------------

def _random_space(rng) -> SpaceExpr:
    pick = rng.randrange(7)
    if pick == 0:
        return Point()
    if pick == 1:
        return Sphere(rng.randint(0, 6))
    if pick == 2:
        n = rng.randint(1, 4)
        return Toda(n, 0 if n % 2 else rng.randint(-3, 3), rng.randint(-3, 3))
    if pick == 3:
        n = rng.choice([2, 4])
        return PTrunc(rng.randint(1, 3), n)
    if pick == 4:
        n = rng.randint(1, 4)
        return MappingCone(n, 0 if n % 2 else rng.randint(-2, 2))
    if pick == 5:
        return Product(Sphere(rng.randint(1, 4)), Sphere(rng.randint(1, 4)))
    return Empty()


def _random_leaf(rng) -> ActionExpr:
    pick = rng.randrange(7)
    if pick == 0:
        return Trivial(_random_space(rng))
    if pick == 1:
        return FreeRotation(rng.choice([1, 3, 5, 7]))
    if pick == 2:
        n = rng.choice([2, 4, 6])
        return ConeA(n, rng.choice(range(0, n + 1, 2)))
    if pick == 3:
        return MultConeA(rng.choice([2, 4, 8]))
    if pick == 4:
        return BundleA(rng.choice([3, 5, 7]))
    if pick == 5:
        return Puncture(BundleA(rng.choice([3, 5])))
    dim = rng.randint(1, 7)
    return sphere_action(dim, rng.choice([f for f in range(-1, dim + 1) if (dim - f) % 2 == 0]))


def _wedgeable(a: ActionExpr) -> bool:
    try:
        return eval_poincare(total_space(a)).is_connected() and not is_empty(fixed_set(a))
    except ValidationError:
        return False


def random_action(rng, depth: int = 4) -> ActionExpr:
    """A random well-formed action expression of at most ``depth`` levels.

    ``rng`` is a :class:`random.Random`.
    """
    if depth <= 1 or rng.random() < 0.25:
        return _random_leaf(rng)
    kind = rng.randrange(3)
    if kind == 0:
        return SuspA(random_action(rng, depth - 1))
    if kind == 1:
        return JoinA(random_action(rng, depth - 1), random_action(rng, depth - 1))
    parts, bps = [], []
    for _ in range(rng.randint(2, 3)):
        for _attempt in range(20):
            child = random_action(rng, depth - 1)
            if _wedgeable(child):
                break
        else:
            child = sphere_action(2, 0)
        parts.append(child)
        bps.append(rng.randrange(len(components(fixed_set(child)))))
    return WedgeA(tuple(parts), tuple(bps))
