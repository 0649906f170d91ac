"""Energy-thermal envelope of the orbital compute platform.

The platform draws solar power P, spends E1 on compute (all of it turned into
heat), and rejects heat through a radiator with net capacity E2 whose coolant
pump costs a fixed fraction of E2.  Sustainable operation requires

    E1 + pump_fraction * E2 <= P      (power budget)
    E1 <= E2                          (heat rejection)

which caps the data volume processable over a service window.
"""

from __future__ import annotations

from dataclasses import dataclass

STEFAN_BOLTZMANN_W_M2_K4 = 5.670374419e-8

THERMAL_BOUND = "thermal"
POWER_BOUND = "power"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class RadiatorSpec:
    """Radiator sizing, either as a ratio of the power budget or from panel physics."""

    mode: str = "ratio"
    ratio_rho: float = 1.2
    area_m2: float = 0.0
    emissivity: float = 0.9
    panel_temp_k: float = 300.0
    absorbed_flux_w_m2: float = 0.0

    def __post_init__(self):
        if self.mode not in ("ratio", "physical"):
            raise ValueError(f"radiator mode must be 'ratio' or 'physical', got {self.mode!r}")
        if self.mode == "ratio" and self.ratio_rho < 0:
            raise ValueError("ratio_rho must be >= 0")
        if self.mode == "physical":
            if self.area_m2 < 0:
                raise ValueError("area_m2 must be >= 0")
            if not 0.0 < self.emissivity <= 1.0:
                raise ValueError("emissivity must be in (0, 1]")
            if self.panel_temp_k <= 0:
                raise ValueError("panel_temp_k must be > 0")
            if self.absorbed_flux_w_m2 < 0:
                raise ValueError("absorbed_flux_w_m2 must be >= 0")


@dataclass(frozen=True)
class SdcPowerProfile:
    p_budget_w: float
    radiator: RadiatorSpec = RadiatorSpec()
    pump_fraction: float = 0.02
    energy_per_bit_j: float = 1.6266666666666667e-05
    service_duration_s: float = 10.0

    def __post_init__(self):
        if self.p_budget_w < 0:
            raise ValueError("p_budget_w must be >= 0")
        if not 0.0 <= self.pump_fraction < 1.0:
            raise ValueError("pump_fraction must be in [0, 1)")
        if self.energy_per_bit_j <= 0:
            raise ValueError("energy_per_bit_j must be > 0")
        if self.service_duration_s <= 0:
            raise ValueError("service_duration_s must be > 0")


@dataclass(frozen=True)
class EnvelopeResult:
    p_budget_w: float
    e1_max_w: float
    e2_w: float
    x_max_bits: float
    binding_constraint: str

    @property
    def feasible(self) -> bool:
        return self.binding_constraint != INFEASIBLE


def radiator_capacity(spec: RadiatorSpec, p_budget_w: float) -> float:
    """Net heat rejection capacity E2 (W), clamped at zero."""
    if spec.mode == "ratio":
        return spec.ratio_rho * p_budget_w
    net_flux = spec.emissivity * STEFAN_BOLTZMANN_W_M2_K4 * spec.panel_temp_k**4 - spec.absorbed_flux_w_m2
    return max(0.0, net_flux * spec.area_m2)


def max_compute_power(p_budget_w: float, e2_w: float, pump_fraction: float) -> tuple[float, str]:
    """Largest compute draw E1 satisfying both envelope constraints, with the label
    of the constraint that binds at the optimum."""
    budget_term = p_budget_w - pump_fraction * e2_w
    e1 = max(0.0, min(e2_w, budget_term))
    if e1 == 0.0 and p_budget_w > 0.0:
        return 0.0, INFEASIBLE
    if e2_w <= budget_term:
        return e1, THERMAL_BOUND
    return e1, POWER_BOUND


def max_data_volume(profile: SdcPowerProfile) -> EnvelopeResult:
    """Maximum raw-equivalent bits processable over the service window."""
    e2 = radiator_capacity(profile.radiator, profile.p_budget_w)
    e1, binding = max_compute_power(profile.p_budget_w, e2, profile.pump_fraction)
    x_max = e1 * profile.service_duration_s / profile.energy_per_bit_j
    return EnvelopeResult(
        p_budget_w=profile.p_budget_w,
        e1_max_w=e1,
        e2_w=e2,
        x_max_bits=x_max,
        binding_constraint=binding,
    )


def calibrate_energy_per_bit(
    p_cross_w: float,
    rate_ref_bps: float,
    n_gs: int,
    radiator: RadiatorSpec = RadiatorSpec(),
    pump_fraction: float = 0.02,
    service_duration_s: float = 10.0,
) -> float:
    """Energy per raw bit (J) such that the bit-level per-GS uplink requirement hits
    rate_ref exactly when the power budget equals p_cross.

    The per-GS requirement is E1*T / (e_bit * T * n_gs), so the service duration
    cancels and e_bit = E1(p_cross) / (n_gs * rate_ref).
    """
    if p_cross_w <= 0 or rate_ref_bps <= 0 or n_gs <= 0:
        raise ValueError("p_cross_w, rate_ref_bps and n_gs must all be > 0")
    e2 = radiator_capacity(radiator, p_cross_w)
    e1, binding = max_compute_power(p_cross_w, e2, pump_fraction)
    if binding == INFEASIBLE:
        raise ValueError(
            f"envelope infeasible at p_cross={p_cross_w} W: pump overhead alone exceeds the budget"
        )
    return e1 / (n_gs * rate_ref_bps)
