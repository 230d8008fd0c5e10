"""Enumerate fixed point set types allowed by rank and Euler characteristic.

For a circle action on ``X`` with rational cohomology of ``S^n v S^2n v S^3n``
or ``P^2(n) v S^3n`` (total rank 4, ``chi = 4`` for even n and 0 for odd n),
the fixed set ``F`` satisfies ``rk F = 4`` when ``X`` is totally
non-homologous to zero and ``rk F <= 3`` otherwise, with ``chi(F) = chi(X)``
in both cases.  Components are drawn from a fixed catalog of connected
rational types; the enumeration is compared against the case lists of the
two classification theorems.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graded import PoincarePolynomial, disjoint_poly, euler_char, total_rank
from .space import SpaceExpr, ValidationError, components, rational_summands

KIND_ORDER = {"Point": 0, "Sphere": 1, "WedgeSpheres": 2, "P2": 3, "P2WedgeSphere": 4}


@dataclass(frozen=True)
class ComponentDescriptor:
    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KIND_ORDER:
            raise ValidationError(f"unknown component kind {self.kind!r}")
        if self.kind == "WedgeSpheres":
            if len(self.params) not in (2, 3):
                raise ValidationError("WedgeSpheres has two or three spheres")
            object.__setattr__(self, "params", tuple(sorted(self.params)))
        if any(p < 1 for p in self.params):
            raise ValidationError("component parameters are positive integers")

    def ranks(self) -> dict[int, int]:
        out = {0: 1}

        def add(d):
            out[d] = out.get(d, 0) + 1

        if self.kind in ("Sphere", "WedgeSpheres"):
            for d in self.params:
                add(d)
        elif self.kind == "P2":
            add(self.params[0])
            add(2 * self.params[0])
        elif self.kind == "P2WedgeSphere":
            r, s = self.params
            add(r)
            add(2 * r)
            add(s)
        return out

    def poincare(self) -> PoincarePolynomial:
        return PoincarePolynomial.from_ranks(self.ranks())

    def sort_key(self):
        return (KIND_ORDER[self.kind], self.params)

    def __str__(self):
        p = self.params
        if self.kind == "Point":
            return "pt"
        if self.kind == "Sphere":
            return f"S{p[0]}"
        if self.kind == "WedgeSpheres":
            return "∨".join(f"S{d}" for d in p)
        if self.kind == "P2":
            return f"P2({p[0]})"
        return f"P2({p[0]})∨S{p[1]}"


PT = ComponentDescriptor("Point")


def sphere(r: int) -> ComponentDescriptor:
    return ComponentDescriptor("Sphere", (r,))


def wedge(*rs: int) -> ComponentDescriptor:
    return ComponentDescriptor("WedgeSpheres", tuple(rs))


def p2(r: int) -> ComponentDescriptor:
    return ComponentDescriptor("P2", (r,))


def p2_wedge(r: int, s: int) -> ComponentDescriptor:
    return ComponentDescriptor("P2WedgeSphere", (r, s))


@dataclass(frozen=True, order=False)
class FixedSetType:
    components: tuple[ComponentDescriptor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components, key=ComponentDescriptor.sort_key)))

    @classmethod
    def of(cls, *comps: ComponentDescriptor) -> "FixedSetType":
        return cls(tuple(comps))

    def poincare(self) -> PoincarePolynomial:
        return disjoint_poly(c.poincare() for c in self.components)

    @property
    def total_rank(self) -> int:
        return total_rank(self.poincare())

    @property
    def chi(self) -> int:
        return euler_char(self.poincare())

    def sort_key(self):
        return tuple(c.sort_key() for c in self.components)

    def __str__(self):
        return " ⊔ ".join(map(str, self.components)) if self.components else "∅"


def descriptor_of(e: SpaceExpr) -> ComponentDescriptor:
    """Rational type of a connected space, as a catalog descriptor."""
    summ = rational_summands(e)
    if summ is None:
        raise ValidationError(f"{e!r} is not rationally a wedge of spheres and P2's")
    spheres = sorted(d for kind, d in summ if kind == "S")
    planes = [d for kind, d in summ if kind == "P2"]
    if not planes:
        if not spheres:
            return PT
        if len(spheres) == 1:
            return sphere(spheres[0])
        if len(spheres) <= 3:
            return wedge(*spheres)
    elif len(planes) == 1:
        if not spheres:
            return p2(planes[0])
        if len(spheres) == 1:
            return p2_wedge(planes[0], spheres[0])
    raise ValidationError(f"component {e!r} is outside the descriptor catalog")


def fixed_set_type(e: SpaceExpr) -> FixedSetType:
    return FixedSetType(tuple(descriptor_of(c) for c in components(e)))


def sorted_types(types) -> list[FixedSetType]:
    return sorted(types, key=FixedSetType.sort_key)


# --- enumeration -----------------------------------------------------------------

@dataclass(frozen=True)
class Axioms:
    """Constraints on P^2 components that rank bookkeeping cannot derive.

    ``p2_even``: the generator of P^2(r) has even degree (an odd-degree class
    squares to zero over Q).  ``p2_max_n``: P^2(r) components have r <= n.
    """

    p2_even: bool = True
    p2_max_n: bool = True

    def p2_range(self, n: int) -> range:
        hi = n if self.p2_max_n else (3 * n) // 2
        return range(2, hi + 1, 2) if self.p2_even else range(1, hi + 1)


DEFAULT_AXIOMS = Axioms()
NO_AXIOMS = Axioms(p2_even=False, p2_max_n=False)


def component_catalog(n: int, axioms: Axioms = DEFAULT_AXIOMS) -> list[ComponentDescriptor]:
    dims = range(1, 3 * n + 1)
    cat = [PT]
    cat += [sphere(r) for r in dims]
    cat += [wedge(*rs) for rs in itertools.combinations_with_replacement(dims, 2)]
    cat += [wedge(*rs) for rs in itertools.combinations_with_replacement(dims, 3)]
    cat += [p2(r) for r in axioms.p2_range(n)]
    cat += [p2_wedge(r, s) for r in axioms.p2_range(n) for s in dims]
    return cat


def ambient_chi(n: int) -> int:
    return 4 if n % 2 == 0 else 0


def enumerate_fixed_types(n: int, tnhz: bool, axioms: Axioms = DEFAULT_AXIOMS) -> set[FixedSetType]:
    """All multisets of catalog components meeting the rank and chi constraints."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    target_chi = ambient_chi(n)
    cat = component_catalog(n, axioms)
    budget = 4 if tnhz else 3
    info = [(c, total_rank(c.poincare()), euler_char(c.poincare())) for c in cat]
    info = sorted((t for t in info if t[1] <= budget), key=lambda t: t[1])
    found: set[FixedSetType] = set()

    def walk(start: int, chosen: list, rank: int, chi: int):
        if (rank == 4 if tnhz else rank <= 3) and chi == target_chi:
            found.add(FixedSetType(tuple(chosen)))
        for i in range(start, len(info)):
            c, r, x = info[i]
            if rank + r > budget:
                break
            chosen.append(c)
            walk(i, chosen, rank + r, chi + x)
            chosen.pop()

    walk(0, [], 0, 0)
    return found


def theorem_reference_list(n: int, tnhz: bool, axioms: Axioms = DEFAULT_AXIOMS) -> set[FixedSetType]:
    """The cases of the two classification theorems, instantiated at ``n``.

    Parities follow the proofs: for odd n the sphere parameters in the
    two-component cases are odd, for even n they are even.
    """
    T = FixedSetType.of
    out: set[FixedSetType] = set()
    dims = range(1, 3 * n + 1)
    even = [r for r in dims if r % 2 == 0]
    odd = [r for r in dims if r % 2 == 1]
    if not tnhz:
        if n % 2 == 1:
            out.add(T())
            out.update(T(sphere(r)) for r in odd)
        return out

    par = even if n % 2 == 0 else odd
    if n % 2 == 0:
        out.add(T(PT, PT, PT, PT))
        out.update(T(sphere(r), PT, PT) for r in even)
        out.update(T(p2(r), PT) for r in range(2, n + 1, 2))
    for r, s in itertools.combinations_with_replacement(par, 2):
        out.add(T(sphere(r), sphere(s)))
        out.add(T(wedge(r, s), PT))
    for rst in itertools.combinations_with_replacement(dims, 3):
        n_even = sum(1 for d in rst if d % 2 == 0)
        if (n % 2 == 0 and n_even == 3) or (n % 2 == 1 and n_even == 1):
            out.add(T(wedge(*rst)))
    # S^s v P^2(r): r, s both even (n even) or both odd (n odd), 1 <= r <= n
    for r in range(1, n + 1):
        if r % 2 != n % 2 or (axioms.p2_even and r % 2):
            continue
        out.update(T(p2_wedge(r, s)) for s in par)
    return out


@dataclass(frozen=True)
class Comparison:
    only_left: tuple[FixedSetType, ...]
    only_right: tuple[FixedSetType, ...]

    @property
    def empty(self) -> bool:
        return not self.only_left and not self.only_right


def compare(lhs: set[FixedSetType], rhs: set[FixedSetType]) -> Comparison:
    return Comparison(tuple(sorted_types(lhs - rhs)), tuple(sorted_types(rhs - lhs)))


def compare_theorem(n: int, tnhz: bool, axioms: Axioms = DEFAULT_AXIOMS) -> dict:
    """Enumerator vs. theorem list, plus the types that only the P^2 axioms exclude."""
    enum = enumerate_fixed_types(n, tnhz, axioms)
    ref = theorem_reference_list(n, tnhz, axioms)
    diff = compare(enum, ref)
    excluded = enumerate_fixed_types(n, tnhz, NO_AXIOMS) - enum
    return {
        "n": n,
        "tnhz": tnhz,
        "axioms": {"p2_even": axioms.p2_even, "p2_max_n": axioms.p2_max_n},
        "empty_diff": diff.empty,
        "only_enumerated": [str(t) for t in diff.only_left],
        "only_theorem": [str(t) for t in diff.only_right],
        "enumerated": len(enum),
        "excluded_by_axioms": [str(t) for t in sorted_types(excluded)],
    }
