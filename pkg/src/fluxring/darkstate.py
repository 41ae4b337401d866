"""Dark-state observables of the three-level coupling scheme.

A resonant Lambda scheme with windings +ell and -ell on the two legs has
one dark eigenstate.  Its mean spin sigma = (alpha^2 - |beta|^2) / N with
N = alpha^2 + |beta|^2 sets the azimuthal gauge potential A_phi =
hbar ell sigma / r and an effective flux 2 pi hbar sigma ell.  Two field
arrangements admit macroscopically distinct dark states:

* case (i),  |beta|^2 = +alpha_plus * alpha_minus: the two dark states
  overlap by sqrt(1 - sigma^2) and their gradient coupling vanishes;
* case (ii), |beta|^2 = -alpha_plus * alpha_minus: the dark states are
  orthogonal and couple through the gradient term
  <D+-|grad D-+> = -i ell sqrt(1 - sigma^2) / r (azimuthal component).

Both cases have sigma_plus = -sigma_minus, so superposing them threads
opposite flux tubes through the same trap.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (CaseError, ConfigError, DegeneracyError, DegenerateFieldError,
                     DomainError, UsageError)
from .params import FieldConfig

__all__ = [
    "FluxCase",
    "CaseClassification",
    "SpinPair",
    "DarkOverlaps",
    "case_of",
    "mean_spin",
    "classify_flux_case",
    "gauge_potential_phi",
    "effective_flux",
    "scalar_potential",
    "bright_excited_eigenvalues",
    "dark_overlaps",
    "epsilon_param",
    "decoherence_factor",
    "superposition_norm",
]


class FluxCase(enum.Enum):
    """Which of the two special field arrangements the amplitudes satisfy."""

    CASE_I = "i"
    CASE_II = "ii"
    NEITHER = "neither"


@dataclass(frozen=True)
class CaseClassification:
    """Classification verdict plus the relative residual it was based on."""

    case: FluxCase
    residual: float

    def __post_init__(self) -> None:
        if self.residual < 0.0:
            raise DomainError("classification residual must be >= 0")


@dataclass(frozen=True)
class SpinPair:
    """Mean spins of the two superposed dark states; always opposite."""

    sigma_plus: float
    sigma_minus: float

    def __post_init__(self) -> None:
        for value in (self.sigma_plus, self.sigma_minus):
            if abs(value) > 1.0 + 1e-12:
                raise DomainError(f"mean spin out of [-1, 1]: {value}")


@dataclass(frozen=True)
class DarkOverlaps:
    """State overlap s = <D+|D-> and gradient coefficient g.

    The azimuthal gradient coupling is <D+-|grad D-+> = i g ell / r, so
    g = 0 in case (i) and g = -sqrt(1 - sigma^2) in case (ii).
    The invariant s^2 + g^2 = 1 - sigma^2 holds in both cases.
    """

    s_overlap: float
    grad_coeff: float


def case_of(case) -> FluxCase:
    """Normalize FluxCase, CaseClassification, or 'i'/'ii' strings."""
    if isinstance(case, CaseClassification):
        return case.case
    if isinstance(case, FluxCase):
        return case
    try:
        return FluxCase(str(case).lower())
    except ValueError as exc:
        raise CaseError(f"unknown flux case {case!r}") from exc


def mean_spin(alpha: float, beta_mag2: float) -> float:
    """Mean spin (alpha^2 - |beta|^2) / (alpha^2 + |beta|^2) of a dark state.

    Parameters
    ----------
    alpha : real amplitude of the wound leg.
    beta_mag2 : squared magnitude of the other leg.

    The result lies in [-1, 1].  Vanishing total weight leaves the dark
    state undefined and raises DegenerateFieldError.
    """
    if beta_mag2 < 0.0:
        raise DomainError(f"beta_mag2 must be >= 0, got {beta_mag2}")
    a2 = alpha * alpha
    norm = a2 + beta_mag2
    if norm == 0.0:
        raise DegenerateFieldError("field amplitudes carry no weight")
    sigma = (a2 - beta_mag2) / norm
    if abs(sigma) > 1.0:
        sigma = math.copysign(1.0, sigma)  # shave the odd rounding ulp
    return sigma


def classify_flux_case(config: FieldConfig, tol: float = 1e-9) -> tuple[CaseClassification, SpinPair]:
    """Decide whether the amplitudes realize case (i), case (ii), or neither.

    Case (i) holds when |beta|^2 = +alpha_plus*alpha_minus and case (ii)
    when |beta|^2 = -alpha_plus*alpha_minus, both judged relative to
    |beta|^2 with tolerance tol.  beta = 0 satisfies both at once only
    when alpha_plus*alpha_minus = 0 too, which is a degenerate field.
    """
    if tol < 0.0:
        raise DomainError(f"tol must be >= 0, got {tol}")
    b2 = config.beta_mag2
    prod = config.alpha_plus * config.alpha_minus
    res_i = abs(b2 - prod)
    res_ii = abs(b2 + prod)
    if b2 == 0.0:
        if prod == 0.0:
            raise DegenerateFieldError("beta = 0 satisfies both flux conditions at once")
        verdict = CaseClassification(FluxCase.NEITHER, math.inf)
    else:
        scale = tol * b2
        if res_i <= scale:
            verdict = CaseClassification(FluxCase.CASE_I, res_i / b2)
        elif res_ii <= scale:
            verdict = CaseClassification(FluxCase.CASE_II, res_ii / b2)
        else:
            verdict = CaseClassification(FluxCase.NEITHER, min(res_i, res_ii) / b2)
    spins = SpinPair(mean_spin(config.alpha_plus, b2), mean_spin(config.alpha_minus, b2))
    return verdict, spins


def gauge_potential_phi(ell: int, sigma: float, r: float, hbar: float = 1.0) -> float:
    """Azimuthal gauge potential A_phi = hbar * ell * sigma / r."""
    if r <= 0.0:
        raise DomainError(f"r must be > 0, got {r}")
    return hbar * ell * sigma / r


def effective_flux(ell: int, sigma: float, hbar: float = 1.0) -> float:
    """Flux of the effective tube threading the trap axis, 2 pi hbar sigma ell."""
    return 2.0 * math.pi * hbar * sigma * ell


def scalar_potential(ell: int, r: float, hbar2_over_2m: float = 1.0) -> float:
    """Repulsive scalar potential (hbar^2/2M) ell^2 / r^2 left by the winding."""
    if r <= 0.0:
        raise DomainError(f"r must be > 0, got {r}")
    return hbar2_over_2m * (ell * ell) / (r * r)


def bright_excited_eigenvalues(chi_mag2: float, big_n: float,
                               detuning_e31: float = 0.0) -> tuple[float, float]:
    """Eigenvalues (+|chi|^2 N, -|chi|^2 N) of the bright/excited sector.

    Valid only on two-photon resonance; a nonzero detuning_e31 destroys
    the dark state and is rejected.
    """
    if detuning_e31 != 0.0:
        raise ConfigError("bright/excited eigenvalues assume resonance, detuning_e31 must be 0")
    if big_n < 0.0:
        raise DomainError(f"N must be >= 0, got {big_n}")
    value = chi_mag2 * big_n
    return value, -value


def dark_overlaps(case, sigma: float) -> DarkOverlaps:
    """Overlap and gradient coefficient of the two dark states.

    Case (i): (sqrt(1 - sigma^2), 0).  Case (ii): (0, -sqrt(1 - sigma^2)).
    An unclassified arrangement has no closed-form overlaps.
    """
    if abs(sigma) > 1.0:
        raise DomainError(f"sigma must lie in [-1, 1], got {sigma}")
    root = math.sqrt(1.0 - sigma * sigma)
    kind = case_of(case)
    if kind is FluxCase.CASE_I:
        return DarkOverlaps(root, 0.0)
    if kind is FluxCase.CASE_II:
        return DarkOverlaps(0.0, -root)
    raise CaseError("overlaps are defined only for case (i) or case (ii)")


def epsilon_param(delta_alpha: float, sigma: float, convention: str = "paper") -> float:
    """Coherent-state suppressed overlap epsilon entering the 2x2 pencils.

    epsilon = exp(-delta_alpha^2) * sqrt(1 - sigma^2) under the default
    convention; 'standard' keeps the textbook exp(-delta_alpha^2 / 2).

    Examples
    --------
    >>> round(epsilon_param(1.0, 0.6), 7)
    0.2943036
    """
    if delta_alpha < 0.0:
        raise DomainError(f"delta_alpha must be >= 0, got {delta_alpha}")
    if abs(sigma) > 1.0:
        raise DomainError(f"sigma must lie in [-1, 1], got {sigma}")
    if convention == "paper":
        damp = math.exp(-delta_alpha * delta_alpha)
    elif convention == "standard":
        damp = math.exp(-0.5 * delta_alpha * delta_alpha)
    else:
        raise UsageError(f"unknown overlap convention {convention!r}")
    return damp * math.sqrt(1.0 - sigma * sigma)


def decoherence_factor(delta_alpha: float, gamma_t: float) -> float:
    """Off-diagonal survival exp(-|delta_alpha|^2 gamma t / 2) under photon loss."""
    if gamma_t < 0.0:
        raise DomainError(f"gamma_t must be >= 0, got {gamma_t}")
    return math.exp(-0.5 * delta_alpha * delta_alpha * gamma_t)


def superposition_norm(overlap_mag: float, psi: float, theta: float) -> float:
    """Norm sqrt(2 (1 + |<Phi+|Phi->| cos(theta + psi))) of the superposed pair."""
    if not 0.0 <= overlap_mag <= 1.0:
        raise DomainError(f"overlap magnitude must lie in [0, 1], got {overlap_mag}")
    arg = 2.0 * (1.0 + overlap_mag * math.cos(theta + psi))
    if arg <= 0.0:
        raise DegeneracyError("superposition norm vanishes for this phase")
    return math.sqrt(arg)
