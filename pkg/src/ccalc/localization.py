"""Two-component fixed-point localization on P(V1 + V2).

After inverting y a class on P(V) is determined by its restrictions to the
fixed components P(V1) and P(V2).  ``assemble`` rebuilds the class from the
restrictions and ``localized_pushforward`` integrates over the fibre by
summing the fixed-point contributions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equivariant_poly import EquivClass, LaurentClass, substitute_x
from .proj_bundle import (
    ProjectiveModel,
    normal_data,
    restrict_to_fixed,
)


class LocalizationError(ValueError):
    pass


@dataclass(frozen=True)
class LocalizedClass:
    """A class on P(V) recorded by its restrictions to P(V1) and P(V2)."""

    model: ProjectiveModel
    first: LaurentClass
    second: LaurentClass

    def __post_init__(self):
        for i, rho in ((1, self.first), (2, self.second)):
            if rho.ring is not self.model.ring and rho.ring != self.model.ring:
                raise LocalizationError("restriction lives over a different base")
            if self.model.locus(i).reduce(rho) != rho:
                raise LocalizationError(f"restriction to locus {i} is not reduced")

    def component(self, i: int) -> LaurentClass:
        return self.first if i == 1 else self.second

    def __add__(self, other: LocalizedClass) -> LocalizedClass:
        _same_model(self.model, other.model)
        return LocalizedClass(self.model, self.first + other.first, self.second + other.second)


def _same_model(a: ProjectiveModel, b: ProjectiveModel) -> None:
    if a is not b and a != b:
        raise LocalizationError("localized classes refer to different projective models")


def localize(c: EquivClass, model: ProjectiveModel) -> LocalizedClass:
    return LocalizedClass(model, restrict_to_fixed(c, model, 1), restrict_to_fixed(c, model, 2))


def fixed_pushforward(beta: LaurentClass, model: ProjectiveModel, i: int) -> LaurentClass:
    """Push a class from P(V_i) into P(V).

    The image is the lift of ``beta`` (x_1 -> x + y, x_2 -> x) times the
    factor of the relation belonging to the other summand, so restricting back
    gives ``e(N_i) * beta`` on P(V_i) and zero on the other component.
    """
    ring = model.ring
    x = EquivClass.x(ring)
    lift = x + EquivClass.y(ring) if i == 1 else x
    other_factor = model.factors[1] if i == 1 else model.factors[0]
    lifted = substitute_x(beta.as_laurent(), lift)
    return model.ambient.reduce(lifted * other_factor)


def assemble(L: LocalizedClass, model: ProjectiveModel | None = None) -> LaurentClass:
    """Inverse of :func:`localize`: sum_i (iota_i)_*(e(N_i)^-1 rho_i)."""
    if model is None:
        model = L.model
    _same_model(L.model, model)
    out = LaurentClass(model.ring)
    for i in (1, 2):
        nd = normal_data(model, i)
        weighted = model.locus(i).reduce(nd.inverse * L.component(i))
        out = out + fixed_pushforward(weighted, model, i)
    return out


def localized_pushforward(L: LocalizedClass, model: ProjectiveModel | None = None) -> LaurentClass:
    """sum_i (pi_i)_*(e(N_i)^-1 rho_i), a Laurent class over the base."""
    if model is None:
        model = L.model
    _same_model(L.model, model)
    out = LaurentClass(model.ring)
    for i in (1, 2):
        nd = normal_data(model, i)
        out = out + model.locus(i).pushforward(nd.inverse * L.component(i))
    return out
