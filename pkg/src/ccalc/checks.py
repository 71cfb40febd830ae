"""Seeded randomized verification suites.

Each suite draws independent cases from ``random.Random`` seeded by
``(seed, suite, case)`` so any failure can be replayed from its payload
alone.  Suites return a :class:`Verdict`; the first failing case is kept
as the counterexample.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .char_classes import (
    OrientedRealBundle,
    VirtualBundle,
    euler_expansion,
    inverse_equivariant_euler,
    total_segre,
    twist_segre,
)
from .equivariant_poly import EquivClass, LaurentClass
from .graded_base import BaseClass, RingPresentation, integrate, ring_preset, truncated_monomial_ring
from .localization import localize, localized_pushforward
from .proj_bundle import (
    build_projective_model,
    gysin_pushforward,
    normal_data,
    projective_bundle,
)
from .sw_calc import (
    MonopoleSideData,
    SWFunctional,
    bk_special_case,
    connect_sum_sw,
    degree_obstruction,
    wedge_sw_localized,
)

PRESET_SPECS: tuple[tuple[str, tuple], ...] = (
    ("point", ()),
    ("sphere", (2,)),
    ("cp", (2,)),
    ("torus", (2,)),
    ("product", (("sphere", (2,)), ("sphere", (2,)))),
)


@functools.lru_cache(maxsize=None)
def preset_rings() -> tuple[RingPresentation, ...]:
    rings = []
    for name, params in PRESET_SPECS:
        if name == "product":
            rings.append(ring_preset("product", factors=list(params)))
        else:
            rings.append(ring_preset(name, *params))
    return tuple(rings)


@dataclass
class Verdict:
    name: str
    passed: bool
    cases: int
    failure: dict | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if self.details:
            out["details"] = self.details
        if self.failure is not None:
            out["counterexample"] = self.failure
        return out


def case_rng(seed: int, suite: str, case: int) -> random.Random:
    return random.Random(f"{seed}/{suite}/{case}")


# ---------------------------------------------------------------------------
# random data

def random_homogeneous(ring: RingPresentation, d: int, rng: random.Random, span: int = 3) -> BaseClass:
    return BaseClass(ring, {k: rng.randint(-span, span) for k in ring.basis_of_degree(d)})


def random_class(ring: RingPresentation, rng: random.Random, span: int = 3) -> BaseClass:
    return BaseClass(ring, {k: rng.randint(-span, span) for k in range(len(ring.basis))
                            if rng.random() < 0.6})


def random_unit(ring: RingPresentation, rng: random.Random, max_k: int | None = None) -> BaseClass:
    top = ring.truncation // 2 if max_k is None else min(max_k, ring.truncation // 2)
    out = ring.one()
    for k in range(1, top + 1):
        out = out + random_homogeneous(ring, 2 * k, rng)
    return out


def random_virtual_bundle(ring: RingPresentation, rng: random.Random) -> VirtualBundle:
    return VirtualBundle(rng.randint(-3, 3), random_unit(ring, rng))


def random_genuine_bundle(ring: RingPresentation, rng: random.Random, rank: int) -> VirtualBundle:
    return VirtualBundle(rank, random_unit(ring, rng, max_k=rank))


def random_polynomial(ring: RingPresentation, rng: random.Random, max_x: int, max_y: int = 2) -> EquivClass:
    terms = {}
    for i in range(max_x + 1):
        for j in range(max_y + 1):
            if rng.random() < 0.5:
                terms[(i, j)] = random_class(ring, rng)
    return EquivClass(ring, terms)


def random_real_bundle(ring: RingPresentation, rng: random.Random, rank: int | None = None) -> OrientedRealBundle:
    if rank is None:
        rank = rng.randint(0, ring.truncation)
    if rank == 0:
        return OrientedRealBundle(0, ring.one())
    return OrientedRealBundle(rank, random_homogeneous(ring, rank, rng))


def random_functional(ring: RingPresentation, rng: random.Random, window: int, shift: int | None = None) -> SWFunctional:
    if shift is None:
        shift = rng.randint(-2 * window, ring.truncation)
    values = [random_homogeneous(ring, 2 * m + shift, rng) for m in range(window + 1)]
    return SWFunctional(ring, shift, tuple(values))


# ---------------------------------------------------------------------------
# payload helpers

def bundle_payload(V: VirtualBundle) -> dict:
    return {"rank": V.rank, "chern": [list(t) for t in V.total_chern.terms()]}


def real_payload(H: OrientedRealBundle) -> dict:
    return {"rank": H.rank, "euler": [list(t) for t in H.euler.terms()]}


def sw_payload(F: SWFunctional) -> dict:
    return {"shift": F.shift, "window": F.window,
            "values": [[list(t) for t in v.terms()] for v in F.values]}


def _run(name: str, cases: int, seed: int, body: Callable[[random.Random, int], dict | None],
         details: dict | None = None, start: int = 0) -> Verdict:
    for case in range(start, start + cases):
        rng = case_rng(seed, name, case)
        try:
            failure = body(rng, case)
        except (ValueError, ArithmeticError) as exc:
            failure = {"error": f"{type(exc).__name__}: {exc}"}
        if failure is not None:
            failure = {"suite": name, "seed": seed, "case": case, **failure}
            return Verdict(name, False, case - start + 1, failure, details or {})
    return Verdict(name, True, cases, None, details or {})


def _pick_ring(rng: random.Random, rings: Sequence[RingPresentation]) -> RingPresentation:
    return rings[rng.randrange(len(rings))]


# ---------------------------------------------------------------------------
# suites

def check_segre_inversion(cases: int, seed: int, rings: Sequence[RingPresentation] | None = None, start: int = 0) -> Verdict:
    """c(V) * s(V) == 1 for ``cases`` random virtual bundles over every ring."""
    rings = tuple(rings or preset_rings())

    def body(rng, case):
        for ring in rings:
            V = random_virtual_bundle(ring, rng)
            if V.total_chern * total_segre(V) != ring.one():
                return {"ring": ring.name, "bundle": bundle_payload(V)}
        return None

    return _run("A1-segre-inversion", cases, seed, body, {"rings": [r.name for r in rings]}, start=start)


def _random_model(rng, rings, max_rank=3):
    ring = _pick_ring(rng, rings)
    while True:
        a1, a2 = rng.randint(0, max_rank), rng.randint(0, max_rank)
        if a1 + a2 >= 1:
            break
    V1 = random_genuine_bundle(ring, rng, a1)
    V2 = random_genuine_bundle(ring, rng, a2)
    return ring, build_projective_model(V1, V2)


def check_euler_inverse(cases: int, seed: int, rings: Sequence[RingPresentation] | None = None, start: int = 0) -> Verdict:
    """e(N_i) * e(N_i)^-1 == 1 on each nonempty fixed component, and unshifted e * e^-1 == 1."""
    rings = tuple(rings or preset_rings())

    def body(rng, case):
        ring, model = _random_model(rng, rings)
        for i in (1, 2):
            locus = model.locus(i)
            if locus.degree == 0:
                continue
            nd = normal_data(model, i)
            if locus.reduce(nd.euler * nd.inverse) != LaurentClass.one(ring):
                return {"ring": ring.name, "locus": i,
                        "V1": bundle_payload(model.V1), "V2": bundle_payload(model.V2)}
        sign = rng.choice((1, -1))
        V = model.V1 if model.V1.rank else model.V2
        plain = euler_expansion(V, sign) * inverse_equivariant_euler(V, sign)
        if plain != LaurentClass.one(ring):
            return {"ring": ring.name, "sign": sign, "bundle": bundle_payload(V)}
        return None

    return _run("A2-euler-inverse", cases, seed, body, start=start)


def check_localization(cases: int, seed: int, rings: Sequence[RingPresentation] | None = None, start: int = 0) -> Verdict:
    """Localized pushforward equals the direct fibre integral, with no negative y-powers."""
    rings = tuple(rings or preset_rings())

    def body(rng, case):
        ring, model = _random_model(rng, rings)
        c = random_polynomial(ring, rng, model.rank + 3)
        direct = gysin_pushforward(c, model)
        local = localized_pushforward(localize(c, model))
        if local != direct or any(j < 0 for j in local.y_exponents()):
            return {"ring": ring.name, "V1": bundle_payload(model.V1), "V2": bundle_payload(model.V2),
                    "class": c.to_quadruples(), "direct": direct.to_quadruples(),
                    "localized": local.to_quadruples()}
        return None

    return _run("A3-localization", cases, seed, body, start=start)


@functools.lru_cache(maxsize=None)
def root_model(rank: int, depth: int) -> RingPresentation:
    """Z[a_1..a_rank] (degree-2 roots) with every monomial of degree > 2*depth killed."""
    import itertools

    gens = [(f"a{i + 1}", 2) for i in range(rank)]
    exps = [e for e in itertools.product(range(depth + 1), repeat=rank) if sum(e) <= depth]
    return truncated_monomial_ring(gens, exps, name=f"roots({rank},{depth})")


def brute_force_twisted_segre(roots: Sequence[BaseClass], j: int, t: EquivClass) -> EquivClass:
    """Degree-2j part of prod_i (1 + root_i + t)^-1, by geometric series."""
    ring = t.ring
    prod = EquivClass.one(ring)
    for r in roots:
        prod = prod * (EquivClass.const(r) + t + 1)
    nil = EquivClass.one(ring) - prod
    out = EquivClass.one(ring)
    power = EquivClass.one(ring)
    for _ in range(j):
        power = power * nil
        out = out + power
    return out.homogeneous_part(2 * j)


def check_twisted_segre(cases: int, seed: int, depth: int = 3, start: int = 0) -> Verdict:
    """twist_segre against the Chern-root expansion, genuine bundles of rank <= 3."""

    def body(rng, case):
        rank = rng.randint(1, 3)
        ring = root_model(rank, depth)
        gens = [ring.monomial(g) for g, _ in ring.generators]
        roots = [sum((g * rng.randint(-2, 2) for g in gens), ring.zero()) for _ in range(rank)]
        c = ring.one()
        for r in roots:
            c = c * (ring.one() + r)
        V = VirtualBundle(rank, c)
        x, y = EquivClass.x(ring), EquivClass.y(ring)
        base_shift = EquivClass.const(sum((g * rng.randint(-1, 1) for g in gens), ring.zero()))
        t = rng.choice((x, x + y, x - y, x + base_shift))
        j = rng.randint(0, depth)
        got = twist_segre(V, j, t)
        want = brute_force_twisted_segre(roots, j, t)
        if got != want:
            return {"rank": rank, "roots": [r.terms() for r in roots], "j": j,
                    "t": t.to_quadruples(), "got": got.to_quadruples(), "want": want.to_quadruples()}
        return None

    return _run("A4-twisted-segre", cases, seed, body, start=start)


def random_side(ring: RingPresentation, rng: random.Random, d1: int) -> MonopoleSideData:
    """Index data with vanishing degree obstruction, as for an actual monopole map."""
    while True:
        if rng.random() < 0.5:
            E = random_genuine_bundle(ring, rng, -d1)
            D = VirtualBundle.from_segre(d1, E.total_chern)
            H = random_real_bundle(ring, rng)
        else:
            D = VirtualBundle.from_segre(d1, random_unit(ring, rng))
            rank = rng.choice((0, ring.truncation, rng.randint(0, ring.truncation)))
            H = random_real_bundle(ring, rng, rank)
            if rng.random() < 0.3 and rank:
                H = OrientedRealBundle(rank, ring.zero())
        side = MonopoleSideData(D, H)
        if not degree_obstruction(side):
            return side


def check_connected_sum(cases: int, seed: int, rings: Sequence[RingPresentation] | None = None, start: int = 0) -> Verdict:
    """connect_sum_sw agrees with the localized derivation for d1 in {0, -1, -2}."""
    rings = tuple(rings or preset_rings())

    def body(rng, case):
        ring = rings[case % len(rings)]
        d1 = (0, -1, -2)[(case // len(rings)) % 3]
        side = random_side(ring, rng, d1)
        m = rng.randint(0, 3)
        F2 = random_functional(ring, rng, m - d1 + rng.randint(0, 2))
        V2p = random_genuine_bundle(ring, rng, rng.randint(1, 3))
        direct = connect_sum_sw(F2, side, m)
        via_local = wedge_sw_localized(F2, side, V2p, m)
        if direct != via_local:
            return {"ring": ring.name, "m": m, "D1": bundle_payload(side.D), "Hplus": real_payload(side.Hplus),
                    "F2": sw_payload(F2), "V2prime": bundle_payload(V2p),
                    "direct": direct.terms(), "localized": via_local.terms()}
        return None

    return _run("A5-connected-sum", cases, seed, body, start=start)


def check_degenerate_cases(cases: int, seed: int, rings: Sequence[RingPresentation] | None = None, start: int = 0) -> Verdict:
    """Blow-up shift SW_m = F2(m + k) and the pairing with e(H+) when d1 = 0, c(D1) = 1."""
    rings = tuple(rings or preset_rings())
    with_fundamental = tuple(r for r in rings if r.fundamental is not None)

    def body(rng, case):
        ring = rings[case % len(rings)]
        for k in (0, 1, 2):
            side = MonopoleSideData(VirtualBundle.trivial(ring, -k), OrientedRealBundle(0, ring.one()))
            F2 = random_functional(ring, rng, 3 + k)
            for m in range(4):
                if connect_sum_sw(F2, side, m) != F2(m + k):
                    return {"check": "blow-up", "ring": ring.name, "k": k, "m": m, "F2": sw_payload(F2)}
        ring = with_fundamental[case % len(with_fundamental)]
        H = random_real_bundle(ring, rng)
        alpha = random_homogeneous(ring, ring.truncation - H.rank, rng)
        m0 = rng.randint(0, 2)
        scalar = rng.randint(-5, 5)
        F2 = random_functional(ring, rng, m0 + rng.randint(0, 2), shift=-2 * m0)
        values = list(F2.values)
        values[m0] = ring.scalar(scalar)
        F2 = SWFunctional(ring, F2.shift, tuple(values))
        side = MonopoleSideData(VirtualBundle.trivial(ring, 0), H)
        paired = integrate(alpha * connect_sum_sw(F2, side, m0))
        if paired != bk_special_case(scalar, H, alpha):
            return {"check": "pairing", "ring": ring.name, "m": m0, "alpha": alpha.terms(),
                    "Hplus": real_payload(H), "F2": sw_payload(F2)}
        return None

    return _run("A6-degenerate-cases", cases, seed, body, start=start)


def check_pushforward_table(cases: int, seed: int, rings: Sequence[RingPresentation] | None = None, start: int = 0) -> Verdict:
    """pi_*(x^j) on P(V) is 0 below j = a-1 and s_(j-a+1)(V) from there on."""
    rings = tuple(rings or preset_rings())

    def body(rng, case):
        ring = _pick_ring(rng, rings)
        a = rng.randint(1, 4)
        V = random_genuine_bundle(ring, rng, a)
        model = projective_bundle(V)
        s = total_segre(V)
        x = EquivClass.x(ring)
        for j in range(a + ring.truncation // 2 + 2):
            want = ring.zero() if j < a - 1 else s.component(2 * (j - a + 1))
            got = gysin_pushforward(x ** j, model)
            if got != EquivClass.const(want):
                return {"ring": ring.name, "bundle": bundle_payload(V), "j": j,
                        "got": got.to_quadruples(), "want": want.terms()}
        return None

    return _run("A7-pushforward-table", cases, seed, body, start=start)


SUITES: dict[str, tuple[Callable[..., Verdict], int]] = {
    "A1": (check_segre_inversion, 200),
    "A2": (check_euler_inverse, 200),
    "A3": (check_localization, 200),
    "A4": (check_twisted_segre, 200),
    "A5": (check_connected_sum, 105),
    "A6": (check_degenerate_cases, 50),
    "A7": (check_pushforward_table, 200),
}


def run_all(cases: int | None = None, seed: int = 0, rings: Iterable[RingPresentation] | None = None) -> list[Verdict]:
    """Run every suite; ``cases`` overrides each suite's default count."""
    pool = _ring_pool(rings)
    out = []
    for key, (fn, default) in SUITES.items():
        n = default if cases is None else cases
        if fn is check_twisted_segre:
            out.append(fn(n, seed))
        else:
            out.append(fn(n, seed, pool))
    return out


def replay(payload: dict, rings: Iterable[RingPresentation] | None = None) -> Verdict:
    """Re-run the single case a counterexample payload came from."""
    key = payload["suite"].split("-", 1)[0]
    fn = SUITES[key][0]
    if fn is check_twisted_segre:
        return fn(1, payload["seed"], start=payload["case"])
    return fn(1, payload["seed"], _ring_pool(rings), start=payload["case"])


def _ring_pool(rings: Iterable[RingPresentation] | None) -> tuple[RingPresentation, ...]:
    extra = tuple(rings or ())
    return preset_rings() + tuple(r for r in extra if r not in preset_rings())
