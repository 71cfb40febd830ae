"""Chern and Segre calculus for complex virtual bundles.

A complex virtual bundle is recorded as its rank together with its total
Chern class; an oriented real bundle as its rank together with its Euler
class.  Twisting by a line bundle with first Chern class ``t`` is done with
the binomial expansion of Chern roots ``alpha_i + t``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equivariant_poly import EquivClass, LaurentClass
from .graded_base import BaseClass, RingMismatchError, RingPresentation


class BundleError(ValueError):
    pass


@dataclass(frozen=True)
class VirtualBundle:
    """Rank (any sign) and total Chern class of a complex virtual bundle."""

    rank: int
    total_chern: BaseClass

    def __post_init__(self):
        c = self.total_chern
        if c.component(0) != c.ring.one():
            raise BundleError("total Chern class must have degree-0 part equal to 1")
        for d in c.degrees():
            if d % 2:
                raise BundleError(f"total Chern class has an odd-degree part (degree {d})")

    @property
    def ring(self) -> RingPresentation:
        return self.total_chern.ring

    @classmethod
    def trivial(cls, ring: RingPresentation, rank: int = 0) -> VirtualBundle:
        return cls(rank, ring.one())

    @classmethod
    def from_segre(cls, rank: int, segre: BaseClass) -> VirtualBundle:
        """Bundle determined by its rank and total Segre class."""
        return cls(rank, _unit_inverse(segre))

    def chern(self, k: int) -> BaseClass:
        if k < 0:
            return self.ring.zero()
        return self.total_chern.component(2 * k)

    def total_segre(self) -> BaseClass:
        return total_segre(self)

    def segre(self, k: int) -> BaseClass:
        if k < 0:
            return self.ring.zero()
        return total_segre(self).component(2 * k)

    def is_genuine(self) -> bool:
        """Non-negative rank and no Chern classes above the rank."""
        if self.rank < 0:
            return False
        return all(d <= 2 * self.rank for d in self.total_chern.degrees())

    def __add__(self, other: VirtualBundle) -> VirtualBundle:
        return bundle_sum(self, other)

    def __sub__(self, other: VirtualBundle) -> VirtualBundle:
        return bundle_difference(self, other)

    def __neg__(self) -> VirtualBundle:
        return VirtualBundle(-self.rank, total_segre(self))


@dataclass(frozen=True)
class OrientedRealBundle:
    """Rank and Euler class of an oriented real vector bundle."""

    rank: int
    euler: BaseClass

    def __post_init__(self):
        if self.rank < 0:
            raise BundleError("oriented real bundles have non-negative rank")
        if self.rank == 0 and self.euler != self.euler.ring.one():
            raise BundleError("a rank-0 real bundle has Euler class 1")
        if not self.euler.is_homogeneous(self.rank):
            raise BundleError(f"Euler class must be homogeneous of degree {self.rank}")

    @property
    def ring(self) -> RingPresentation:
        return self.euler.ring

    @classmethod
    def trivial(cls, ring: RingPresentation, rank: int = 0) -> OrientedRealBundle:
        return cls(rank, ring.one() if rank == 0 else ring.zero())


def _unit_inverse(c: BaseClass) -> BaseClass:
    # c = 1 + n with n nilpotent (positive degree), so 1/c = sum (-n)^k
    ring = c.ring
    if c.component(0) != ring.one():
        raise BundleError("only classes with unit degree-0 part are invertible")
    n = c - ring.one()
    out = ring.one()
    power = ring.one()
    while True:
        power = power * (-n)
        if not power:
            return out
        out = out + power


def total_segre(V: VirtualBundle) -> BaseClass:
    """Inverse of the total Chern class in the truncated base ring."""
    return _unit_inverse(V.total_chern)


def bundle_sum(V: VirtualBundle, W: VirtualBundle) -> VirtualBundle:
    """Whitney sum: ranks add, total Chern classes multiply."""
    if V.ring is not W.ring and V.ring != W.ring:
        raise RingMismatchError("bundles over different bases")
    return VirtualBundle(V.rank + W.rank, V.total_chern * W.total_chern)


def bundle_difference(V: VirtualBundle, W: VirtualBundle) -> VirtualBundle:
    if V.ring is not W.ring and V.ring != W.ring:
        raise RingMismatchError("bundles over different bases")
    return VirtualBundle(V.rank - W.rank, V.total_chern * total_segre(W))


def generalized_binomial(n: int, k: int) -> int:
    """n(n-1)...(n-k+1)/k! for any integer n and k >= 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    num, den = 1, 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den


def _check_twist(t: EquivClass, ring: RingPresentation) -> None:
    if t.ring is not ring and t.ring != ring:
        raise RingMismatchError("twisting class lives over a different base")
    if not t.is_homogeneous(2):
        raise BundleError("twisting class must be homogeneous of degree 2")


def twist_segre(D: VirtualBundle, j: int, t: EquivClass) -> EquivClass:
    """j-th Segre class of D tensored with a line bundle of first Chern class t.

    s_j(D (x) L_t) = sum_{l=0}^{j} C(-rank(D) - l, j - l) s_l(D) t^(j - l)
    """
    if j < 0:
        raise BundleError("Segre index must be non-negative")
    _check_twist(t, D.ring)
    s = total_segre(D)
    out = EquivClass._make(D.ring, {}, t.laurent)
    power = EquivClass._make(D.ring, {(0, 0): D.ring.one()}, t.laurent)
    for l in range(j, -1, -1):
        # power == t^(j - l)
        s_l = s.component(2 * l)
        coeff = generalized_binomial(-D.rank - l, j - l)
        if s_l and coeff:
            out = out + power.mul_base(s_l) * coeff
        if l:
            power = power * t
    return out


def twist_chern(V: VirtualBundle, k: int, t: EquivClass) -> EquivClass:
    """k-th Chern class of V tensored with a line bundle of first Chern class t."""
    if k < 0:
        raise BundleError("Chern index must be non-negative")
    _check_twist(t, V.ring)
    out = EquivClass._make(V.ring, {}, t.laurent)
    power = EquivClass._make(V.ring, {(0, 0): V.ring.one()}, t.laurent)
    for l in range(k, -1, -1):
        c_l = V.chern(l)
        coeff = generalized_binomial(V.rank - l, k - l)
        if c_l and coeff:
            out = out + power.mul_base(c_l) * coeff
        if l:
            power = power * t
    return out


def equivariant_euler(V: VirtualBundle, t: EquivClass) -> EquivClass:
    """sum_j c_j(V) t^(rank - j): the Euler class when the circle acts with weight t.

    Only defined for genuine bundles; a virtual bundle's inverse Euler class
    is available through :func:`inverse_equivariant_euler`.
    """
    if V.rank < 0:
        raise BundleError("Euler class of a negative-rank bundle; use inverse_equivariant_euler")
    if not V.is_genuine():
        raise BundleError("bundle has Chern classes above its rank")
    _check_twist(t, V.ring)
    out = EquivClass._make(V.ring, {}, t.laurent)
    power = EquivClass._make(V.ring, {(0, 0): V.ring.one()}, t.laurent)
    for j in range(V.rank, -1, -1):
        c_j = V.chern(j)
        if c_j:
            out = out + power.mul_base(c_j)
        if j:
            power = power * t
    return out


def inverse_equivariant_euler(
    V: VirtualBundle,
    sign: int = 1,
    shift: EquivClass | None = None,
    top_degree: int | None = None,
) -> LaurentClass:
    """sum_k s_k(V (x) L_shift) (sign*y)^(-rank - k), truncated by degree.

    The product with ``sum_k c_k(V (x) L_shift) (sign*y)^(rank - k)`` is 1.
    With no shift the sum terminates on its own.  With a shift involving x the
    series only terminates in a quotient ring whose classes vanish above
    ``top_degree``; terms of degree beyond it are dropped.
    """
    if sign not in (1, -1):
        raise BundleError("sign must be +1 or -1")
    ring = V.ring
    if shift is None:
        shift = EquivClass.zero(ring)
    _check_twist(shift, ring)
    if top_degree is None:
        if shift.x_degree() > 0 or shift.y_exponents() - {0}:
            raise BundleError("a top degree is needed to truncate a shifted inverse Euler class")
        top_degree = ring.truncation
    out = LaurentClass(ring)
    for k in range(top_degree // 2 + 1):
        s_k = twist_segre(V, k, shift)
        if not s_k:
            continue
        e = -V.rank - k
        factor = sign ** (e % 2)
        out = out + s_k.shift_y(e) * factor
    return out


def euler_expansion(V: VirtualBundle, sign: int = 1, shift: EquivClass | None = None) -> EquivClass:
    """sum_k c_k(V (x) L_shift) (sign*y)^(rank - k) for a genuine V."""
    ring = V.ring
    if shift is None:
        shift = EquivClass.zero(ring)
    y = EquivClass.y(ring)
    return equivariant_euler(V, shift + y * sign)
