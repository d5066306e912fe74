"""Validity-regime diagnostics: adiabatic velocity bound, strong coupling, gt window."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .dressed import PhysicalParams

DEFAULT_THRESHOLD = 5.0

VELOCITY_FORMULA = "v_z << gamma^(1/3) * delta_z * Omega0^2 / (|delta| * lambda * uL0)^(2/3)"


def max_velocity(gamma: float, delta_z: float, omega0: float, delta: float,
                 lam: float, uL0: float) -> float:
    """Right-hand side of the nonadiabatic velocity bound.

    The amplitude in the denominator is read as the drive amplitude uL0; the
    cavity mode vanishes at the node and would make the bound vacuous.
    Returns math.inf when delta == 0: a resonant drive keeps the atom in its
    dressed state at any velocity.
    """
    if delta == 0:
        return math.inf
    if delta_z <= 0:
        raise ValueError("delta_z must be positive")
    if not lam * uL0 > 0:
        raise ValueError("need lambda * uL0 > 0")
    if gamma < 0 or omega0 < 0:
        raise ValueError("gamma and omega0 must be non-negative")
    # cube roots taken per factor so tiny rates do not underflow to 0/0
    scale = omega0 / ((abs(delta) ** (1.0 / 3.0)) * lam ** (1.0 / 3.0) * uL0 ** (1.0 / 3.0))
    return float(gamma ** (1.0 / 3.0) * delta_z * scale * scale)


def _ratio(num: float, den: float) -> float:
    if num == 0:
        return 0.0
    return math.inf if den == 0 else num / den


@dataclass(frozen=True)
class RegimeReport:
    v_max: float
    unconditionally_adiabatic: bool
    velocity_formula: str
    v_z: float | None
    adiabatic_ok: bool | None
    threshold: float
    ratios: dict[str, float]
    strong_coupling_ok: bool
    marginal: tuple[str, ...]
    gt: float
    gt_window: tuple[float, float]
    gt_in_window: bool
    gt_flag: str
    sidebands_resolved: bool

    def to_dict(self) -> dict:
        return asdict(self)


def regime_report(params: PhysicalParams, threshold: float = DEFAULT_THRESHOLD) -> RegimeReport:
    """Evaluate the strong-coupling and interaction-time inequalities.

    "much greater than" is read as "at least ``threshold`` times"; ratios
    within a factor of two of the threshold are listed as marginal.
    """
    if not threshold > 1:
        raise ValueError("threshold must exceed 1")
    g, lam, gamma, kappa = params.g, params.lam, params.gamma, params.kappa
    decay = max(gamma, kappa)
    ratios = {
        "g/gamma": _ratio(g, gamma),
        "g/kappa": _ratio(g, kappa),
        "lambda/gamma": _ratio(lam, gamma),
        "lambda/kappa": _ratio(lam, kappa),
    }
    strong = lam > 0 and lam >= threshold * decay and g >= threshold * decay
    marginal = tuple(name for name, r in ratios.items()
                     if math.isfinite(r) and threshold <= r < 2.0 * threshold)

    lower = max(1.0, _ratio(g, lam))  # inf without drive
    upper = max(_ratio(g, gamma), _ratio(g, kappa)) if decay > 0 else math.inf
    gt = params.gt
    if gt <= lower:
        flag = "below"
    elif gt >= upper:
        flag = "above"
    else:
        flag = "inside"

    omega0 = float(params.omega0)
    resolved = omega0 >= threshold * decay if decay > 0 else omega0 > 0

    if params.delta == 0:
        v_max = math.inf
    elif params.lam * params.uL0 > 0:
        v_max = max_velocity(gamma, params.delta_z, omega0, params.delta, params.lam, params.uL0)
    else:
        # no drive: the dressed basis is the bare basis and nothing moves
        v_max = math.inf
    adiabatic_ok = None if params.v_z is None else params.v_z * threshold <= v_max

    return RegimeReport(
        v_max=v_max,
        unconditionally_adiabatic=params.delta == 0,
        velocity_formula=VELOCITY_FORMULA,
        v_z=params.v_z,
        adiabatic_ok=adiabatic_ok,
        threshold=threshold,
        ratios=ratios,
        strong_coupling_ok=bool(strong),
        marginal=marginal,
        gt=gt,
        gt_window=(lower, upper),
        gt_in_window=flag == "inside",
        gt_flag=flag,
        sidebands_resolved=bool(resolved),
    )
