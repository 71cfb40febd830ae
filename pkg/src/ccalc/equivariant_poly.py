"""Polynomials in the equivariant generators x and y over H*(B).

``EquivClass`` lives in H*(B)[x, y]; ``LaurentClass`` allows negative powers
of y, i.e. it lives in H*(B)[x][y, 1/y].  Both x and y have degree 2, so they
commute with everything and all Koszul signs are carried by the base
coefficients.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping, NamedTuple

from .graded_base import BaseClass, RingMismatchError, RingPresentation

DEFAULT_LAURENT_GUARD = 512


class LaurentDescentError(ArithmeticError):
    """A Laurent class descended below the configured y-power floor."""


def laurent_guard() -> int:
    """Lowest admissible y-exponent magnitude; override with CCALC_MAX_LAURENT_FLOOR."""
    raw = os.environ.get("CCALC_MAX_LAURENT_FLOOR")
    if raw is None:
        return DEFAULT_LAURENT_GUARD
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"CCALC_MAX_LAURENT_FLOOR must be an integer, got {raw!r}") from None


Key = tuple[int, int]


class EquivClass:
    """Sparse sum of ``coefficient * x^i * y^j`` with ``i, j >= 0``."""

    __slots__ = ("ring", "_t")
    laurent = False

    def __init__(self, ring: RingPresentation, terms: Mapping[Key, BaseClass] | None = None):
        self.ring = ring
        t: dict[Key, BaseClass] = {}
        for (i, j), c in (terms or {}).items():
            if c.ring is not ring and c.ring != ring:
                raise RingMismatchError("coefficient from a different ring")
            if c:
                t[(int(i), int(j))] = c
        self._check_exponents(t)
        self._t = t

    def _check_exponents(self, t: Mapping[Key, BaseClass]) -> None:
        for i, j in t:
            if i < 0:
                raise ValueError("negative x-exponent")
            if j < 0:
                raise ValueError("negative y-exponent in a polynomial class; use LaurentClass")

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c: BaseClass | int, ring: RingPresentation | None = None):
        if isinstance(c, int):
            c = ring.scalar(c)
        return cls(c.ring, {(0, 0): c})

    @classmethod
    def x(cls, ring: RingPresentation, power: int = 1):
        return cls(ring, {(power, 0): ring.one()})

    @classmethod
    def y(cls, ring: RingPresentation, power: int = 1):
        return cls(ring, {(0, power): ring.one()})

    @classmethod
    def zero(cls, ring: RingPresentation):
        return cls(ring, {})

    @classmethod
    def one(cls, ring: RingPresentation):
        return cls(ring, {(0, 0): ring.one()})

    @classmethod
    def from_quadruples(cls, ring: RingPresentation, quads: Iterable[tuple[int, int, str, int]]):
        acc: dict[Key, BaseClass] = {}
        for i, j, mono, c in quads:
            key = (int(i), int(j))
            acc[key] = acc.get(key, ring.zero()) + ring.monomial(mono, int(c))
        return cls(ring, acc)

    # -- inspection -----------------------------------------------------
    def coefficient(self, i: int, j: int = 0) -> BaseClass:
        return self._t.get((i, j), self.ring.zero())

    def items(self) -> list[tuple[Key, BaseClass]]:
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def x_degree(self) -> int:
        """Largest x-exponent present, -1 for the zero class."""
        return max((i for i, _ in self._t), default=-1)

    def y_exponents(self) -> set[int]:
        return {j for _, j in self._t}

    def total_degrees(self) -> set[int]:
        deg = self.ring.degrees
        return {2 * i + 2 * j + deg[k] for (i, j), c in self._t.items() for k, _ in c.items()}

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.total_degrees()
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def homogeneous_part(self, d: int) -> EquivClass:
        out = {}
        for (i, j), c in self._t.items():
            part = c.component(d - 2 * i - 2 * j)
            if part:
                out[(i, j)] = part
        return self._make(self.ring, out, self.laurent)

    def to_quadruples(self) -> list[list]:
        rows = []
        for (i, j), c in self.items():
            for name, v in c.terms():
                rows.append([i, j, name, v])
        return rows

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _make(ring, terms, laurent: bool = False):
        cls = LaurentClass if laurent else EquivClass
        return cls(ring, terms)

    def _coerce(self, other):
        if isinstance(other, EquivClass):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError("classes live in different rings")
            return other
        if isinstance(other, BaseClass):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError("classes live in different rings")
            return EquivClass.const(other)
        if isinstance(other, int):
            return EquivClass.const(self.ring.scalar(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._t)
        for k, c in other._t.items():
            out[k] = out[k] + c if k in out else c
        return self._make(self.ring, out, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self):
        return self._make(self.ring, {k: -c for k, c in self._t.items()}, self.laurent)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return epoly_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return epoly_mul(other, self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use LaurentClass.y(-k) for negative powers of y")
        out = self._make(self.ring, {(0, 0): self.ring.one()}, self.laurent)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, BaseClass)):
            other = self._coerce(other)
        if not isinstance(other, EquivClass):
            return NotImplemented
        return (self.ring is other.ring or self.ring == other.ring) and self._t == other._t

    def __hash__(self):
        return hash((self.ring, frozenset(self._t.items())))

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for (i, j), c in sorted(self._t.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            mono = "*".join(
                p for p in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if p
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if len(c.terms()) > 1 else cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    # -- conversions ----------------------------------------------------
    def as_laurent(self) -> LaurentClass:
        return LaurentClass(self.ring, self._t)

    def as_polynomial(self) -> EquivClass:
        return EquivClass(self.ring, self._t)

    def shift_y(self, k: int):
        """Multiply by y^k."""
        out = {(i, j + k): c for (i, j), c in self._t.items()}
        return self._make(self.ring, out, self.laurent or k < 0)

    def shift_x(self, k: int):
        """Multiply by x^k (k >= 0)."""
        if k < 0:
            raise ValueError("x cannot be inverted")
        return self._make(self.ring, {(i + k, j): c for (i, j), c in self._t.items()}, self.laurent)

    def mul_base(self, b: BaseClass, left: bool = True):
        """Multiply every coefficient by a base class, on the left by default."""
        out = {k: (b * c if left else c * b) for k, c in self._t.items()}
        return self._make(self.ring, out, self.laurent)

    def x_slice(self, i: int):
        """The part of the class multiplying x^i, as a class in y alone."""
        out = {(0, j): c for (ii, j), c in self._t.items() if ii == i}
        return self._make(self.ring, out, self.laurent)


class LaurentClass(EquivClass):
    """Like EquivClass, but y may carry negative exponents down to ``floor``."""

    __slots__ = ("floor",)
    laurent = True

    def __init__(self, ring, terms=None, floor: int | None = None):
        super().__init__(ring, terms)
        lowest = min((j for _, j in self._t), default=0)
        self.floor = min(lowest, 0) if floor is None else floor
        if self.floor > lowest:
            raise ValueError("stored floor lies above a supported y-exponent")
        if self.floor < -laurent_guard():
            raise LaurentDescentError(
                f"y-exponent {self.floor} below the guard -{laurent_guard()} "
                "(set CCALC_MAX_LAURENT_FLOOR to raise it)")

    def _check_exponents(self, t):
        for i, _ in t:
            if i < 0:
                raise ValueError("negative x-exponent")

    def to_polynomial(self) -> EquivClass:
        return EquivClass(self.ring, self._t)


def epoly_mul(p: EquivClass, q: EquivClass) -> EquivClass:
    """Cauchy product; the result is Laurent if either factor is."""
    if p.ring is not q.ring and p.ring != q.ring:
        raise RingMismatchError("classes live in different rings")
    out: dict[Key, BaseClass] = {}
    for (i1, j1), c1 in p._t.items():
        for (i2, j2), c2 in q._t.items():
            prod = c1 * c2
            if not prod:
                continue
            key = (i1 + i2, j1 + j2)
            out[key] = out[key] + prod if key in out else prod
    return EquivClass._make(p.ring, out, p.laurent or q.laurent)


def coefficient(p: EquivClass, i: int, j: int = 0) -> BaseClass:
    return p.coefficient(i, j)


class YSlice(NamedTuple):
    value: EquivClass
    polynomial: bool


def eval_y_zero(p: EquivClass) -> YSlice:
    """Set y = 0: keep the y^0 slice; flag whether negative y-powers were present."""
    value = EquivClass(p.ring, {(i, 0): c for (i, j), c in p._t.items() if j == 0})
    return YSlice(value, all(j >= 0 for _, j in p._t))


def substitute_x(p: EquivClass, t: EquivClass) -> EquivClass:
    """Replace x by the class ``t`` (which may itself involve x and y)."""
    ring = p.ring
    laurent = p.laurent or t.laurent
    by_power: dict[int, dict[int, BaseClass]] = {}
    for (i, j), c in p._t.items():
        by_power.setdefault(i, {})[j] = c
    out = EquivClass._make(ring, {}, laurent)
    power = EquivClass._make(ring, {(0, 0): ring.one()}, laurent)
    top = max(by_power, default=-1)
    for i in range(top + 1):
        if i in by_power:
            chunk = EquivClass._make(ring, {(0, j): c for j, c in by_power[i].items()}, laurent)
            out = out + chunk * power
        if i < top:
            power = power * t
    return out
