"""Cohomology of the projective bundle P(V1 + V2) with a circle acting on V1.

The first circle acts by scalars on all of V and is recorded by x, the
generator of the fibre cohomology.  The second circle acts with weight 1 on
V1 and trivially on V2 and is recorded by y.  Its fixed locus is the disjoint
union of P(V1) and P(V2).

Classes are canonical once every x-exponent is below the fibre dimension
plus one, ``a = rank V1 + rank V2``; the relation is monic in x so reduction
is plain top-down division.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .char_classes import (
    BundleError,
    VirtualBundle,
    equivariant_euler,
    inverse_equivariant_euler,
)
from .equivariant_poly import EquivClass, LaurentClass, substitute_x
from .graded_base import RingMismatchError, RingPresentation


class MonicModel:
    """H*(B)[x] (tensored with Z[y] or Z[y, 1/y]) modulo a relation monic in x."""

    __slots__ = ("ring", "relation", "degree", "top_degree", "_tail")

    def __init__(self, relation: EquivClass, top_degree: int):
        self.ring = relation.ring
        self.relation = relation
        self.degree = relation.x_degree()
        if self.degree < 0:
            raise BundleError("relation must be nonzero")
        lead = relation.x_slice(self.degree)
        if lead != EquivClass.one(self.ring):
            raise BundleError("relation is not monic in x")
        # x^a == -tail modulo the relation
        self._tail = -(relation - EquivClass.x(self.ring, self.degree))
        self.top_degree = top_degree

    def reduce(self, c: EquivClass) -> EquivClass:
        """Canonical representative with every x-exponent below the relation degree."""
        if c.ring is not self.ring and c.ring != self.ring:
            raise RingMismatchError("class and model live over different bases")
        a = self.degree
        current = c
        while current.x_degree() >= a:
            top = current.x_degree()
            piece = current.x_slice(top)
            # piece * x^top == piece * x^(top - a) * tail, tail of x-degree < a
            current = current - piece.shift_x(top) + (piece * self._tail).shift_x(top - a)
        return current

    def pushforward(self, c: EquivClass) -> EquivClass:
        """Integrate over the fibre: the x^(a-1) coefficient of the reduced class."""
        return self.reduce(c).x_slice(self.degree - 1)


@dataclass(frozen=True)
class NormalData:
    """Equivariant Euler class of the normal bundle of a fixed component and its inverse."""

    locus: int
    euler: EquivClass
    inverse: LaurentClass


@dataclass(frozen=True)
class ProjectiveModel:
    """P(V1 + V2) with V1 of weight 1 and V2 of weight 0 for the y-circle."""

    V1: VirtualBundle
    V2: VirtualBundle
    relation: EquivClass = field(init=False)
    factors: tuple[EquivClass, EquivClass] = field(init=False)
    ambient: MonicModel = field(init=False)
    loci: tuple[MonicModel, MonicModel] = field(init=False)
    _normal: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        V1, V2 = self.V1, self.V2
        if V1.ring is not V2.ring and V1.ring != V2.ring:
            raise RingMismatchError("V1 and V2 live over different bases")
        for label, V in (("V1", V1), ("V2", V2)):
            if not V.is_genuine():
                raise BundleError(f"{label} must be a genuine bundle")
        a = V1.rank + V2.rank
        if a < 1:
            raise BundleError("the projective bundle needs total rank at least 1")
        ring = V1.ring
        x = EquivClass.x(ring)
        y = EquivClass.y(ring)
        first = equivariant_euler(V1, x + y)
        second = equivariant_euler(V2, x)
        relation = first * second
        trunc = ring.truncation
        put = object.__setattr__
        put(self, "relation", relation)
        put(self, "factors", (first, second))
        put(self, "ambient", MonicModel(relation, trunc + 2 * (a - 1)))
        put(self, "loci", (
            MonicModel(equivariant_euler(V1, x), trunc + 2 * max(V1.rank - 1, 0)),
            MonicModel(equivariant_euler(V2, x), trunc + 2 * max(V2.rank - 1, 0)),
        ))
        put(self, "_normal", {})
        for i in (1, 2):
            if restrict_to_fixed(relation, self, i):
                raise BundleError(f"relation does not vanish on fixed locus {i}")

    @property
    def ring(self) -> RingPresentation:
        return self.V1.ring

    @property
    def rank(self) -> int:
        return self.V1.rank + self.V2.rank

    def locus(self, i: int) -> MonicModel:
        if i not in (1, 2):
            raise ValueError(f"fixed locus index must be 1 or 2, got {i}")
        return self.loci[i - 1]


def build_projective_model(V1: VirtualBundle, V2: VirtualBundle) -> ProjectiveModel:
    return ProjectiveModel(V1, V2)


def projective_bundle(V: VirtualBundle) -> ProjectiveModel:
    """Non-equivariant P(V): the whole bundle sits in the weight-0 summand."""
    return ProjectiveModel(VirtualBundle.trivial(V.ring, 0), V)


def reduce(c: EquivClass, model: ProjectiveModel) -> EquivClass:
    return model.ambient.reduce(c)


def gysin_pushforward(c: EquivClass, model: ProjectiveModel) -> EquivClass:
    """Fibre integration P(V) -> B; the result involves y only."""
    return model.ambient.pushforward(c)


def _restriction_substitute(i: int, ring: RingPresentation) -> EquivClass:
    x = EquivClass.x(ring)
    return x - EquivClass.y(ring) if i == 1 else x


def restrict_to_fixed(c: EquivClass, model: ProjectiveModel, i: int) -> LaurentClass:
    """Pull back to P(V_i): x -> x_1 - y on the weight-1 locus, x -> x_2 on the other."""
    locus = model.locus(i)
    moved = substitute_x(c.as_laurent(), _restriction_substitute(i, model.ring))
    return locus.reduce(moved)


def normal_data(model: ProjectiveModel, i: int) -> NormalData:
    """Euler class of the normal bundle of P(V_i) and its inverse after inverting y.

    N_1 = V2 (x) O_1(1) with weight -1 and N_2 = V1 (x) O_2(1) with weight +1.
    """
    locus = model.locus(i)
    cached = model._normal.get(i)
    if cached is not None:
        return cached
    ring = model.ring
    x = EquivClass.x(ring)
    y = EquivClass.y(ring)
    if i == 1:
        opposite, sign, weight = model.V2, -1, x - y
    else:
        opposite, sign, weight = model.V1, 1, x + y
    euler = locus.reduce(equivariant_euler(opposite, weight))
    inverse = inverse_equivariant_euler(opposite, sign, shift=x, top_degree=locus.top_degree)
    data = NormalData(i, euler, locus.reduce(inverse))
    model._normal[i] = data
    return data
