"""Exact arithmetic in finite graded-commutative rings.

A ring is described by an explicit monomial basis together with integer
structure constants.  This is enough to model the integral cohomology of the
small compact bases we care about (points, spheres, projective spaces, tori
and their products) without any normal-form machinery.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Sequence


class RingError(ValueError):
    """Raised for malformed ring presentations or illegal ring operations."""


class RingMismatchError(RingError):
    pass


class RingPresentation:
    """A graded-commutative ring with a finite monomial basis.

    ``table[i][j]`` holds the product of basis elements ``i`` and ``j`` as a
    tuple of ``(k, coefficient)`` pairs.  The basis element named ``"1"``
    must be present, in degree 0.
    """

    __slots__ = (
        "name",
        "generators",
        "basis",
        "degrees",
        "truncation",
        "fundamental",
        "_index",
        "_table",
        "_key",
        "_hash",
    )

    def __init__(
        self,
        generators: Sequence[tuple[str, int]],
        basis: Sequence[str],
        degrees: Sequence[int],
        products: Mapping[tuple[int, int], Mapping[int, int]],
        truncation: int,
        fundamental: str | None = None,
        name: str = "custom",
        validate: bool = True,
    ):
        if len(basis) != len(degrees):
            raise RingError("basis and degree lists differ in length")
        if len(set(basis)) != len(basis):
            raise RingError("duplicate basis monomial")
        self.name = name
        self.generators = tuple((str(g), int(d)) for g, d in generators)
        self.basis = tuple(str(b) for b in basis)
        self.degrees = tuple(int(d) for d in degrees)
        self.truncation = int(truncation)
        self._index = {b: i for i, b in enumerate(self.basis)}
        if "1" not in self._index:
            raise RingError("unit monomial '1' missing from basis")
        n = len(self.basis)
        table: list[list[tuple[tuple[int, int], ...]]] = [[()] * n for _ in range(n)]
        for (i, j), combo in products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise RingError(f"product index ({i}, {j}) outside basis")
            entry = []
            for k, c in sorted(combo.items()):
                if not 0 <= k < n:
                    raise RingError(f"product ({i}, {j}) refers to unknown index {k}")
                if c:
                    entry.append((k, int(c)))
            table[i][j] = tuple(entry)
        self._table = tuple(tuple(row) for row in table)
        if fundamental is None:
            self.fundamental = None
        else:
            if fundamental not in self._index:
                raise RingError(f"fundamental class {fundamental!r} is not a basis monomial")
            self.fundamental = self._index[fundamental]
        self._key = (self.generators, self.basis, self.degrees, self._table,
                     self.truncation, self.fundamental)
        self._hash = hash(self._key)
        if validate:
            validate_ring(self)

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RingPresentation({self.name}, basis={list(self.basis)})"

    # -- lookup ---------------------------------------------------------
    def __len__(self):
        return len(self.basis)

    def index(self, monomial: str) -> int:
        try:
            return self._index[monomial]
        except KeyError:
            raise RingError(f"{monomial!r} is not a basis monomial of {self.name}") from None

    def product(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        return self._table[i][j]

    def basis_of_degree(self, d: int) -> list[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    @property
    def unit_index(self) -> int:
        return self._index["1"]

    # -- element constructors ------------------------------------------
    def zero(self) -> BaseClass:
        return BaseClass(self, {})

    def one(self) -> BaseClass:
        return BaseClass(self, {self.unit_index: 1})

    def monomial(self, name: str, coeff: int = 1) -> BaseClass:
        return BaseClass(self, {self.index(name): coeff})

    def element(self, terms: Mapping[str, int] | Iterable[tuple[str, int]]) -> BaseClass:
        """Build a class from ``{monomial: coefficient}`` or ``[(monomial, coefficient)]``."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        coeffs: dict[int, int] = {}
        for name, c in items:
            k = self.index(str(name))
            coeffs[k] = coeffs.get(k, 0) + int(c)
        return BaseClass(self, coeffs)

    def scalar(self, n: int) -> BaseClass:
        return BaseClass(self, {self.unit_index: n})


def _koszul(deg_a: int, deg_b: int) -> int:
    return -1 if (deg_a * deg_b) % 2 else 1


def validate_ring(ring: RingPresentation) -> None:
    """Check unitality, grading, truncation, graded commutativity and associativity.

    Raises RingError naming the first violated rule.
    """
    n = len(ring.basis)
    deg = ring.degrees
    u = ring.unit_index
    if deg[u] != 0:
        raise RingError("unit monomial must have degree 0")
    if ring.truncation < 0:
        raise RingError("truncation degree must be non-negative")
    for i, d in enumerate(deg):
        if d < 0 or d > ring.truncation:
            raise RingError(f"basis monomial {ring.basis[i]!r} has degree {d} outside [0, {ring.truncation}]")
    if ring.fundamental is not None and deg[ring.fundamental] != ring.truncation:
        raise RingError("fundamental class must sit in the truncation degree")
    for i in range(n):
        if ring.product(u, i) != ((i, 1),) or ring.product(i, u) != ((i, 1),):
            raise RingError(f"unitality fails for {ring.basis[i]!r}")
    for i in range(n):
        for j in range(n):
            entry = ring.product(i, j)
            target = deg[i] + deg[j]
            if target > ring.truncation and entry:
                raise RingError(
                    f"truncation violated: {ring.basis[i]}*{ring.basis[j]} is nonzero above degree {ring.truncation}")
            for k, _ in entry:
                if deg[k] != target:
                    raise RingError(f"grading violated in {ring.basis[i]}*{ring.basis[j]}")
            sign = _koszul(deg[i], deg[j])
            mirrored = tuple((k, sign * c) for k, c in ring.product(j, i))
            if entry != mirrored:
                raise RingError(f"graded commutativity fails for ({ring.basis[i]}, {ring.basis[j]})")
    for g, d in ring.generators:
        if d % 2 and g in ring._index:
            gi = ring._index[g]
            if ring.product(gi, gi):
                raise RingError(f"odd generator {g!r} does not square to zero")
    for i, j, k in itertools.product(range(n), repeat=3):
        left: dict[int, int] = {}
        for a, ca in ring.product(i, j):
            for b, cb in ring.product(a, k):
                left[b] = left.get(b, 0) + ca * cb
        right: dict[int, int] = {}
        for a, ca in ring.product(j, k):
            for b, cb in ring.product(i, a):
                right[b] = right.get(b, 0) + ca * cb
        if {b: c for b, c in left.items() if c} != {b: c for b, c in right.items() if c}:
            raise RingError(
                f"associativity fails for ({ring.basis[i]}, {ring.basis[j]}, {ring.basis[k]})")


class BaseClass:
    """An element of H*(B): integer coefficients on the basis monomials of a ring.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("ring", "_c", "_hash")

    def __init__(self, ring: RingPresentation, coeffs: Mapping[int, int]):
        self.ring = ring
        self._c = {k: int(c) for k, c in coeffs.items() if c}
        self._hash = None

    # -- inspection -----------------------------------------------------
    def coeff(self, monomial: str | int) -> int:
        k = monomial if isinstance(monomial, int) else self.ring.index(monomial)
        return self._c.get(k, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def terms(self) -> list[tuple[str, int]]:
        return [(self.ring.basis[k], c) for k, c in sorted(self._c.items())]

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def degrees(self) -> set[int]:
        return {self.ring.degrees[k] for k in self._c}

    def component(self, d: int) -> BaseClass:
        deg = self.ring.degrees
        return BaseClass(self.ring, {k: c for k, c in self._c.items() if deg[k] == d})

    def components(self) -> dict[int, BaseClass]:
        return {d: self.component(d) for d in sorted(self.degrees())}

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous class, None for zero; raises if mixed."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise RingError(f"class {self} is not homogeneous")
        return next(iter(degs))

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: BaseClass) -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatchError("classes live in different rings")

    def _coerce(self, other) -> BaseClass:
        if isinstance(other, BaseClass):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return BaseClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return BaseClass(self.ring, {k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BaseClass(self.ring, {k: c * other for k, c in self._c.items()})
        if not isinstance(other, BaseClass):
            return NotImplemented
        return base_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise RingError("negative powers are not defined")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.scalar(other)
        if not isinstance(other, BaseClass):
            return NotImplemented
        return (self.ring is other.ring or self.ring == other.ring) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"BaseClass({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for name, c in self.terms():
            if name == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = name
            else:
                body = f"{abs(c)}{name}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def base_mul(a: BaseClass, b: BaseClass) -> BaseClass:
    """Cup product, extended bilinearly from the structure constants."""
    a._check(b)
    ring = a.ring
    out: dict[int, int] = {}
    for i, ci in a._c.items():
        for j, cj in b._c.items():
            for k, ck in ring.product(i, j):
                out[k] = out.get(k, 0) + ci * cj * ck
    return BaseClass(ring, out)


def integrate(a: BaseClass) -> int:
    """Pair a class with the fundamental class: the coefficient of the top monomial."""
    if a.ring.fundamental is None:
        raise RingError(f"ring {a.ring.name} has no fundamental class")
    return a._c.get(a.ring.fundamental, 0)


# ---------------------------------------------------------------------------
# presets

def _monomial_name(gen_names: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for g, e in zip(gen_names, exps):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"


def truncated_monomial_ring(
    generators: Sequence[tuple[str, int]],
    exponents: Iterable[Sequence[int]],
    name: str = "custom",
    truncation: int | None = None,
    validate: bool = True,
) -> RingPresentation:
    """Ring spanned by the given exponent vectors; products leaving the set vanish.

    Odd generators anticommute, so the product of two monomials picks up the
    sign of moving the odd letters of the right factor past those of the left.
    """
    gen_names = [g for g, _ in generators]
    gen_degs = [d for _, d in generators]
    exps = sorted({tuple(e) for e in exponents},
                  key=lambda e: (sum(x * d for x, d in zip(e, gen_degs)), tuple(-x for x in e)))
    for e in exps:
        for x, d in zip(e, gen_degs):
            if d % 2 and x > 1:
                raise RingError("odd generators can only appear to the first power")
    index = {e: i for i, e in enumerate(exps)}
    degrees = [sum(x * d for x, d in zip(e, gen_degs)) for e in exps]
    top = max(degrees) if truncation is None else truncation
    odd = [i for i, d in enumerate(gen_degs) if d % 2]
    products: dict[tuple[int, int], dict[int, int]] = {}
    for e1, i in index.items():
        for e2, j in index.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if e not in index:
                continue
            swaps = sum(e1[p] * e2[q] for p in odd for q in odd if p > q)
            products[(i, j)] = {index[e]: -1 if swaps % 2 else 1}
    tops = [e for e, d in zip(exps, degrees) if d == top]
    fundamental = _monomial_name(gen_names, tops[0]) if len(tops) == 1 else None
    return RingPresentation(
        generators,
        [_monomial_name(gen_names, e) for e in exps],
        degrees,
        products,
        top,
        fundamental=fundamental,
        name=name,
        validate=validate,
    )


def _preset_parts(name: str, params: Sequence[int]) -> tuple[list[tuple[str, int]], list[tuple[int, ...]], str]:
    name = name.lower()
    if name == "point":
        if params:
            raise RingError("point takes no parameters")
        return [], [()], "point"
    if len(params) != 1:
        raise RingError(f"preset {name!r} takes exactly one integer parameter")
    p = int(params[0])
    if name == "sphere":
        if p < 1:
            raise RingError("sphere dimension must be at least 1")
        return [("h", p)], [(0,), (1,)], f"sphere({p})"
    if name == "cp":
        if p < 1:
            raise RingError("cp(n) needs n >= 1")
        return [("h", 2)], [(k,) for k in range(p + 1)], f"cp({p})"
    if name == "torus":
        if p < 1:
            raise RingError("torus(k) needs k >= 1")
        names = ["u", "v", "w"][:p] if p <= 3 else [f"u{i + 1}" for i in range(p)]
        return [(g, 1) for g in names], list(itertools.product((0, 1), repeat=p)), f"torus({p})"
    raise RingError(f"unknown ring preset {name!r}")


def ring_preset(name: str, *params: int, factors: Sequence[tuple[str, Sequence[int]]] | None = None) -> RingPresentation:
    """Return a validated preset ring.

    ``name`` is one of point, sphere, cp, torus or product; a product takes
    ``factors`` as a list of ``(name, params)`` pairs and forms the graded
    tensor product.
    """
    if name.lower() != "product":
        gens, exps, label = _preset_parts(name, params)
        return truncated_monomial_ring(gens, exps, name=label)
    if not factors:
        raise RingError("product preset needs at least one factor")
    parts = [_preset_parts(n, p) for n, p in factors]
    counts: dict[str, int] = {}
    for gens, _, _ in parts:
        for g, _ in gens:
            counts[g] = counts.get(g, 0) + 1
    all_gens: list[tuple[str, int]] = []
    for idx, (gens, _, _) in enumerate(parts, start=1):
        for g, d in gens:
            all_gens.append((f"{g}{idx}" if counts[g] > 1 else g, d))
    all_exps = [tuple(itertools.chain.from_iterable(combo))
                for combo in itertools.product(*(exps for _, exps, _ in parts))]
    label = "x".join(lab for _, _, lab in parts)
    return truncated_monomial_ring(all_gens, all_exps, name=label)


def ring_from_dict(data: Mapping) -> RingPresentation:
    """Build a ring from a JSON-style description.

    Either ``{"preset": name, "params": [...]}`` (``"factors"`` for products),
    or a custom presentation ``{"generators": [[g, deg]...], "basis": [[m, deg]...],
    "products": [[left, right, [[m, c]...]]...], "truncation": n, "fundamental": m}``.
    Unlisted products involving ``1`` act as the identity, other unlisted
    products vanish unless their mirror is listed, in which case the graded
    commutativity sign is applied.
    """
    if "preset" in data:
        factors = data.get("factors")
        if factors is not None:
            factors = [(f["preset"], f.get("params", [])) for f in factors]
        return ring_preset(data["preset"], *data.get("params", []), factors=factors)
    try:
        generators = [(g, int(d)) for g, d in data["generators"]]
        basis = [str(m) for m, _ in data["basis"]]
        degrees = [int(d) for _, d in data["basis"]]
        truncation = int(data["truncation"])
    except (KeyError, TypeError, ValueError) as exc:
        raise RingError(f"malformed custom ring: {exc}") from None
    index = {m: i for i, m in enumerate(basis)}
    if "1" not in index:
        raise RingError("unit monomial '1' missing from basis")

    def idx(m):
        if m not in index:
            raise RingError(f"unknown monomial {m!r} in products")
        return index[m]

    products: dict[tuple[int, int], dict[int, int]] = {}
    for entry in data.get("products", []):
        left, right, combo = entry
        key = (idx(left), idx(right))
        if key in products:
            raise RingError(f"duplicate product entry {left}*{right}")
        products[key] = {}
        for m, c in combo:
            k = idx(m)
            products[key][k] = products[key].get(k, 0) + int(c)
    for (i, j), combo in list(products.items()):
        if (j, i) not in products:
            sign = _koszul(degrees[i], degrees[j])
            products[(j, i)] = {k: sign * c for k, c in combo.items()}
    u = index["1"]
    for i in range(len(basis)):
        products.setdefault((u, i), {i: 1})
        products.setdefault((i, u), {i: 1})
    return RingPresentation(
        generators, basis, degrees, products, truncation,
        fundamental=data.get("fundamental"), name=data.get("name", "custom"),
    )


def ring_to_dict(ring: RingPresentation) -> dict:
    """Inverse of :func:`ring_from_dict` for custom presentations."""
    products = []
    for i in range(len(ring.basis)):
        for j in range(len(ring.basis)):
            entry = ring.product(i, j)
            if entry:
                products.append([ring.basis[i], ring.basis[j], [[ring.basis[k], c] for k, c in entry]])
    return {
        "name": ring.name,
        "generators": [[g, d] for g, d in ring.generators],
        "basis": [[m, d] for m, d in zip(ring.basis, ring.degrees)],
        "products": products,
        "truncation": ring.truncation,
        "fundamental": None if ring.fundamental is None else ring.basis[ring.fundamental],
    }
