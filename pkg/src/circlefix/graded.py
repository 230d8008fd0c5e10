"""Exact rank-per-degree bookkeeping for rational cohomology.

A :class:`PoincarePolynomial` is a finitely supported map ``degree -> rank``.
Unreduced polynomials describe ``H^*(X; Q)``; reduced ones describe the
reduced groups.  The empty space has reduced rank 1 in degree -1 (the
augmented complex), which makes the join rule ``t * P * Q`` uniform:
``X * empty = X`` and ``empty * empty = empty``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

DEGREE_CAP = 256


class GradedError(ValueError):
    """Raised for malformed or ambiguous graded data."""


def _check_cap(degree: int) -> None:
    if degree > DEGREE_CAP:
        raise GradedError(f"degree {degree} exceeds the degree cap {DEGREE_CAP}")


@dataclass(frozen=True)
class PoincarePolynomial:
    terms: tuple[tuple[int, int], ...] = ()
    reduced: bool = False

    def __post_init__(self):
        last = None
        for deg, rank in self.terms:
            if rank < 1:
                raise GradedError(f"rank {rank} in degree {deg} must be positive")
            if deg < (-1 if self.reduced else 0):
                raise GradedError(f"degree {deg} out of range")
            if last is not None and deg <= last:
                raise GradedError("terms must be strictly increasing in degree")
            _check_cap(deg)
            last = deg

    @classmethod
    def from_ranks(cls, ranks: Mapping[int, int], reduced: bool = False) -> "PoincarePolynomial":
        items = sorted((int(d), int(r)) for d, r in ranks.items() if r != 0)
        for d, r in items:
            if r < 0:
                raise GradedError(f"negative rank {r} in degree {d}")
        return cls(tuple(items), reduced)

    @classmethod
    def empty_space(cls) -> "PoincarePolynomial":
        return cls((), False)

    @classmethod
    def point(cls) -> "PoincarePolynomial":
        return cls(((0, 1),), False)

    @classmethod
    def sphere(cls, k: int) -> "PoincarePolynomial":
        if k < 0:
            raise GradedError("sphere dimension must be nonnegative")
        if k == 0:
            return cls(((0, 2),), False)
        return cls(((0, 1), (k, 1)), False)

    @property
    def ranks(self) -> dict[int, int]:
        return dict(self.terms)

    def rank(self, degree: int) -> int:
        return self.ranks.get(degree, 0)

    @property
    def top_degree(self) -> int | None:
        return self.terms[-1][0] if self.terms else None

    def is_empty_space(self) -> bool:
        if self.reduced:
            return self.terms == ((-1, 1),)
        return not self.terms

    def is_connected(self) -> bool:
        return not self.reduced and self.rank(0) == 1

    def to_reduced(self) -> "PoincarePolynomial":
        if self.reduced:
            return self
        if not self.terms:
            return PoincarePolynomial(((-1, 1),), True)
        ranks = self.ranks
        if 0 not in ranks:
            raise GradedError("a nonempty space has rank >= 1 in degree 0")
        ranks[0] -= 1
        return PoincarePolynomial.from_ranks(ranks, reduced=True)

    def to_unreduced(self) -> "PoincarePolynomial":
        if not self.reduced:
            return self
        ranks = self.ranks
        if -1 in ranks:
            if ranks != {-1: 1}:
                raise GradedError("degree -1 only occurs in the empty space")
            return PoincarePolynomial.empty_space()
        ranks[0] = ranks.get(0, 0) + 1
        return PoincarePolynomial.from_ranks(ranks, reduced=False)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, r in self.terms:
            mono = {0: "", 1: "t"}.get(d, f"t^{d}")
            coeff = "" if r == 1 and mono else str(r)
            parts.append(coeff + mono)
        return " + ".join(parts)


def _require(p: PoincarePolynomial, reduced: bool, what: str) -> None:
    if p.reduced != reduced:
        kind = "reduced" if reduced else "unreduced"
        raise GradedError(f"{what} expects {kind} polynomials")


def euler_char(p: PoincarePolynomial) -> int:
    """Alternating rank sum, i.e. the polynomial evaluated at -1."""
    _require(p, False, "euler_char")
    return sum(r if d % 2 == 0 else -r for d, r in p.terms)


def reduced_euler_char(p: PoincarePolynomial) -> int:
    _require(p, True, "reduced_euler_char")
    return sum(r if d % 2 == 0 else -r for d, r in p.terms)


def total_rank(p: PoincarePolynomial) -> int:
    return sum(r for _, r in p.terms)


def _convolve(a: Iterable[tuple[int, int]], b: Iterable[tuple[int, int]], shift: int = 0) -> dict[int, int]:
    out: dict[int, int] = defaultdict(int)
    b = list(b)
    for da, ra in a:
        for db, rb in b:
            out[da + db + shift] += ra * rb
    return out


def join_poly(p: PoincarePolynomial, q: PoincarePolynomial) -> PoincarePolynomial:
    """Reduced polynomial of the join: ``t * P(t) * Q(t)``."""
    _require(p, True, "join_poly")
    _require(q, True, "join_poly")
    return PoincarePolynomial.from_ranks(_convolve(p.terms, q.terms, shift=1), reduced=True)


def suspension_poly(p: PoincarePolynomial) -> PoincarePolynomial:
    return join_poly(PoincarePolynomial.sphere(0).to_reduced(), p)


def wedge_poly(ps: Iterable[PoincarePolynomial]) -> PoincarePolynomial:
    ps = list(ps)
    if not ps:
        raise GradedError("wedge of no spaces")
    out: dict[int, int] = defaultdict(int)
    for p in ps:
        _require(p, False, "wedge_poly")
        if not p.is_connected():
            raise GradedError("wedge summands must be connected")
        for d, r in p.terms:
            if d > 0:
                out[d] += r
    out[0] = 1
    return PoincarePolynomial.from_ranks(out)


def disjoint_poly(ps: Iterable[PoincarePolynomial]) -> PoincarePolynomial:
    out: dict[int, int] = defaultdict(int)
    for p in ps:
        _require(p, False, "disjoint_poly")
        for d, r in p.terms:
            out[d] += r
    return PoincarePolynomial.from_ranks(out)


def product_poly(p: PoincarePolynomial, q: PoincarePolynomial) -> PoincarePolynomial:
    """Kuenneth: coefficient-wise product of unreduced polynomials."""
    _require(p, False, "product_poly")
    _require(q, False, "product_poly")
    return PoincarePolynomial.from_ranks(_convolve(p.terms, q.terms))
