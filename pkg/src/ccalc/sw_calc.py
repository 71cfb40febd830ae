"""Families Seiberg-Witten invariants of fibrewise connected sums.

A Seiberg-Witten functional is known through its values SW_m = SW(x^m) on a
finite window of powers of x, and is H*(B)-linear.  The connected sum
formula evaluates the functional of the second summand on x^m times the
S^1-degree of the first summand's monopole map.  ``wedge_sw_localized``
reaches the same number a second way, through the y-expansion of the
inverse Euler class of the twisted index bundle and evaluation at y = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .char_classes import (
    BundleError,
    OrientedRealBundle,
    VirtualBundle,
    total_segre,
    twist_segre,
)
from .equivariant_poly import EquivClass, LaurentClass, eval_y_zero
from .graded_base import BaseClass, RingError, RingMismatchError, RingPresentation, integrate


class SWError(ValueError):
    pass


class WindowError(SWError):
    """An x-exponent falls outside the window of known SW values."""


class DegreeRangeError(SWError):
    """The degree formula needs a non-positive index rank."""


class NonPolynomialResidueError(SWError):
    """Negative powers of y survived the localized sum."""


@dataclass(frozen=True)
class SWFunctional:
    """The values SW_0, ..., SW_M of a Seiberg-Witten functional.

    ``shift`` is the degree of SW_0; SW_m sits in degree 2m + shift.
    """

    ring: RingPresentation
    shift: int
    values: tuple[BaseClass, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise SWError("an SW functional needs at least one value")
        for m, v in enumerate(self.values):
            if v.ring is not self.ring and v.ring != self.ring:
                raise RingMismatchError(f"SW_{m} lives over a different base")
            if not v.is_homogeneous(2 * m + self.shift):
                raise SWError(f"SW_{m} must be homogeneous of degree {2 * m + self.shift}")

    @property
    def window(self) -> int:
        return len(self.values) - 1

    def __call__(self, m: int) -> BaseClass:
        if not 0 <= m <= self.window:
            raise WindowError(f"SW_{m} requested but only SW_0..SW_{self.window} are known")
        return self.values[m]


@dataclass(frozen=True)
class MonopoleSideData:
    """Index bundle D and positive bundle H+ of one summand's monopole map."""

    D: VirtualBundle
    Hplus: OrientedRealBundle

    def __post_init__(self):
        if self.D.ring is not self.Hplus.ring and self.D.ring != self.Hplus.ring:
            raise RingMismatchError("D and H+ live over different bases")

    @property
    def ring(self) -> RingPresentation:
        return self.D.ring


def sw_evaluate(F: SWFunctional, p: EquivClass) -> BaseClass:
    """SW(p) for p in H*(B)[x]: sum_m coeff_m * SW_m."""
    if p.ring is not F.ring and p.ring != F.ring:
        raise RingMismatchError("class and functional live over different bases")
    out = F.ring.zero()
    for (i, j), c in p.items():
        if j != 0:
            raise SWError("sw_evaluate takes a class in x only; use sw_evaluate_extended")
        out = out + c * F(i)
    return out


def sw_evaluate_extended(F: SWFunctional, p: EquivClass) -> LaurentClass:
    """Extend SW linearly over H*(B)[y, 1/y], the values SW_m being independent of y."""
    if p.ring is not F.ring and p.ring != F.ring:
        raise RingMismatchError("class and functional live over different bases")
    out: dict[tuple[int, int], BaseClass] = {}
    for (i, j), c in p.items():
        v = c * F(i)
        if v:
            out[(0, j)] = out[(0, j)] + v if (0, j) in out else v
    return LaurentClass(F.ring, out)


def _segre_window(D: VirtualBundle) -> int:
    if D.rank > 0:
        raise DegreeRangeError(f"degree formula needs rank(D) <= 0, got {D.rank}")
    return -D.rank


def monopole_degree(side: MonopoleSideData) -> EquivClass:
    """e(H+) * sum_{l=0}^{-d} s_l(D) x^(-d - l)."""
    n = _segre_window(side.D)
    ring = side.ring
    s = total_segre(side.D)
    terms = {}
    for l in range(n + 1):
        c = side.Hplus.euler * s.component(2 * l)
        if c:
            terms[(n - l, 0)] = c
    return EquivClass(ring, terms)


def degree_obstruction(side: MonopoleSideData) -> BaseClass:
    """e(H+) * (s_l(D) for l > -d), summed.

    The truncated degree equals e(H+) e(-D) only when this vanishes; for data
    coming from an actual monopole map it always does.
    """
    n = _segre_window(side.D)
    s = total_segre(side.D)
    tail = side.ring.zero()
    for d in sorted(s.degrees()):
        if d > 2 * n:
            tail = tail + side.Hplus.euler * s.component(d)
    return tail


def connect_sum_sw(F2: SWFunctional, side1: MonopoleSideData, m: int) -> BaseClass:
    """SW_m of the fibrewise connected sum: SW^2(x^m deg(f_1)).

    Equivalently e(H1+) * sum_l s_l(D1) * SW^2_(m - d1 - l).
    """
    if m < 0:
        raise WindowError("m must be non-negative")
    if side1.ring is not F2.ring and side1.ring != F2.ring:
        raise RingMismatchError("summands live over different bases")
    return sw_evaluate(F2, monopole_degree(side1).shift_x(m))


def wedge_sw_localized(
    F2: SWFunctional,
    side1: MonopoleSideData,
    V2prime: VirtualBundle,
    m: int,
) -> BaseClass:
    """SW_m of the smash product via localization on P(V2' + V1').

    Only the P(V2') component contributes; its weight is
    x^m e(H1+) e(M2)^-1 with e(M2)^-1 = sum_j s_j(D1 (x) O(1)) y^(-d1 - j).
    The ordinary invariant is the y^0 coefficient.
    """
    if m < 0:
        raise WindowError("m must be non-negative")
    ring = F2.ring
    if side1.ring is not ring and side1.ring != ring:
        raise RingMismatchError("summands live over different bases")
    if V2prime.ring is not ring and V2prime.ring != ring:
        raise RingMismatchError("V2' lives over a different base")
    if not V2prime.is_genuine() or V2prime.rank < 1:
        raise BundleError("V2' must be a genuine bundle of rank at least 1")
    D1 = side1.D
    n = _segre_window(D1)
    # s_j(D1 (x) O(1)) vanishes on P(V2') once 2j exceeds its dimension
    fibre_top = ring.truncation + 2 * (V2prime.rank - 1)
    last = max(n, fibre_top // 2)
    x = EquivClass.x(ring)
    inv_euler = LaurentClass(ring)
    for j in range(last + 1):
        inv_euler = inv_euler + twist_segre(D1, j, x).shift_y(-D1.rank - j)
    integrand = inv_euler.mul_base(side1.Hplus.euler).shift_x(m)
    swhat = sw_evaluate_extended(F2, integrand)
    value, polynomial = eval_y_zero(swhat)
    if not polynomial:
        residue = {j: str(swhat.coefficient(0, j)) for j in sorted(swhat.y_exponents()) if j < 0}
        raise NonPolynomialResidueError(f"negative y-powers survive: {residue}")
    return value.coefficient(0, 0)


def bk_special_case(sw_scalar: int, Hplus: OrientedRealBundle, alpha: BaseClass) -> int:
    """sw_scalar * <alpha e(H+), [B]> for alpha of complementary degree."""
    ring = Hplus.ring
    if alpha.ring is not ring and alpha.ring != ring:
        raise RingMismatchError("alpha and H+ live over different bases")
    if ring.fundamental is None:
        raise RingError(f"ring {ring.name} has no fundamental class")
    if alpha and not alpha.is_homogeneous(ring.truncation - Hplus.rank):
        raise SWError(
            f"alpha must be homogeneous of degree {ring.truncation - Hplus.rank} "
            f"(base dimension {ring.truncation} minus rank {Hplus.rank})")
    return sw_scalar * integrate(alpha * Hplus.euler)


def sw_table(F2: SWFunctional, side1: MonopoleSideData, ms: Sequence[int]) -> dict[int, BaseClass]:
    return {m: connect_sum_sw(F2, side1, m) for m in ms}
