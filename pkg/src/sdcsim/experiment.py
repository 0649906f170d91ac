"""Scenario ingestion, power-budget sweeps, and CSV persistence."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields
from pathlib import Path

from . import scheduler
from .geometry import build_contact_table, build_walker_fleet, place_ground_stations
from .link_budget import IslSpec, RfChannelSpec
from .power_thermal import EnvelopeResult, RadiatorSpec, SdcPowerProfile, max_data_volume
from .traffic_codec import CodecProfile, gs_power, load_codec_profile, required_rates

DEFAULT_SCENARIO = Path(__file__).parent / "data" / "default_scenario.ini"


class ConfigError(Exception):
    """Raised when a scenario file fails validation; carries one message per violation."""

    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("; ".join(errors))


@dataclass
class ScenarioConfig:
    # time grid
    horizon_s: float
    slot_s: float
    # fleet
    n_relays: int
    n_planes: int
    inclination_deg: float
    altitude_km: float
    phasing_factor: int
    sdc_altitude_km: float
    sdc_inclination_deg: float
    sdc_raan_deg: float
    sdc_phase_deg: float
    n_gs: int
    # ground segment
    seed: int
    elevation_mask_deg: float
    lat_min_deg: float
    lat_max_deg: float
    # subsystem specs
    power: SdcPowerProfile  # p_budget_w field unused; sweep overrides per point
    channel: RfChannelSpec
    channels_per_gs: int
    fallback_slant_range_km: float
    isl: IslSpec
    # codecs
    bitcom: CodecProfile
    semcom: CodecProfile
    # scheduling
    scheduled_codec: str
    channel_cap_bps: float
    max_hops: int | None
    # sweep
    p_budgets_w: list[float]

    @property
    def n_slots(self) -> int:
        return int(round(self.horizon_s / self.slot_s))

    @property
    def n_sats(self) -> int:
        return self.n_relays + 1

    @property
    def sdc_id(self) -> int:
        return self.n_relays

    def fleet_elements(self):
        from .geometry import OrbitalElements

        fleet = build_walker_fleet(
            self.n_relays, self.n_planes, self.inclination_deg, self.altitude_km, self.phasing_factor
        )
        fleet.append(
            OrbitalElements(
                self.sdc_altitude_km, self.sdc_inclination_deg, self.sdc_raan_deg, self.sdc_phase_deg
            )
        )
        return fleet

    def ground_stations(self):
        return place_ground_stations(
            self.n_gs, self.seed, (self.lat_min_deg, self.lat_max_deg), self.channels_per_gs
        )

    def contact_table(self):
        return build_contact_table(
            self.fleet_elements(),
            self.ground_stations(),
            self.n_slots,
            self.slot_s,
            self.elevation_mask_deg,
            self.isl.max_range_km,
        )


def _get(parser, errors, section, key, conv, default=None, required=True):
    if not parser.has_option(section, key):
        if required and default is None:
            errors.append(f"{section}.{key}: missing required key")
        return default
    raw = parser.get(section, key).strip()
    if raw == "":
        return default
    try:
        return conv(raw)
    except ValueError:
        errors.append(f"{section}.{key}: cannot parse {raw!r}")
        return default


def _int(raw: str) -> int:
    return int(float(raw)) if float(raw) == int(float(raw)) else int(raw)


def validate(path: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario file; raises ConfigError listing every violation."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = parser.read(str(path))
    if not read:
        raise ConfigError([f"config: cannot read file {path!r}"])

    errors: list[str] = []
    g = lambda sec, key, conv, default=None, required=True: _get(
        parser, errors, sec, key, conv, default, required
    )

    horizon_s = g("time", "horizon_s", float, 10.0)
    slot_s = g("time", "slot_s", float, 1.0)
    n_relays = g("fleet", "n_relays", _int, 24)
    n_planes = g("fleet", "n_planes", _int, 4)
    inclination_deg = g("fleet", "inclination_deg", float, 53.0)
    altitude_km = g("fleet", "altitude_km", float, 500.0)
    phasing_factor = g("fleet", "phasing_factor", _int, 1)
    sdc_altitude_km = g("fleet", "sdc_altitude_km", float, 500.0)
    sdc_inclination_deg = g("fleet", "sdc_inclination_deg", float, 53.0)
    sdc_raan_deg = g("fleet", "sdc_raan_deg", float, 45.0)
    sdc_phase_deg = g("fleet", "sdc_phase_deg", float, 0.0)
    n_gs = g("fleet", "n_gs", _int, 30)
    seed = g("ground", "seed", _int, 42)
    elevation_mask_deg = g("ground", "elevation_mask_deg", float, 10.0)
    lat_min_deg = g("ground", "lat_min_deg", float, -60.0)
    lat_max_deg = g("ground", "lat_max_deg", float, 60.0)

    if slot_s is not None and slot_s <= 0:
        errors.append(f"time.slot_s: must be > 0, got {slot_s}")
    elif horizon_s is not None and slot_s is not None:
        ratio = horizon_s / slot_s
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            errors.append(f"time.slot_s: horizon_s={horizon_s:g} is not a whole number of slots of {slot_s:g} s")
    if n_gs is not None and n_gs < 1:
        errors.append(f"fleet.n_gs: must be >= 1, got {n_gs}")
    if n_relays is not None and n_relays < 1:
        errors.append(f"fleet.n_relays: must be >= 1, got {n_relays}")
    if n_planes is not None and n_planes < 1:
        errors.append(f"fleet.n_planes: must be >= 1, got {n_planes}")
    elif n_relays is not None and n_planes is not None and n_relays % n_planes != 0:
        errors.append(f"fleet.n_planes: n_relays={n_relays} not divisible by n_planes={n_planes}")
    if lat_min_deg is not None and lat_max_deg is not None and lat_min_deg >= lat_max_deg:
        errors.append("ground.lat_min_deg: must be < ground.lat_max_deg")

    mode = g("power", "radiator_mode", str, "ratio")
    radiator = None
    try:
        radiator = RadiatorSpec(
            mode=mode,
            ratio_rho=g("power", "radiator_ratio", float, 1.2),
            area_m2=g("power", "radiator_area_m2", float, 0.0),
            emissivity=g("power", "emissivity", float, 0.9),
            panel_temp_k=g("power", "panel_temp_k", float, 300.0),
            absorbed_flux_w_m2=g("power", "absorbed_flux_w_m2", float, 0.0),
        )
    except ValueError as exc:
        errors.append(f"power.radiator_mode: {exc}")

    pump_fraction = g("power", "pump_fraction", float, 0.02)
    energy_per_bit_j = g("power", "energy_per_bit_j", float, 1.6266666666666667e-05)
    power = None
    if radiator is not None:
        try:
            power = SdcPowerProfile(
                p_budget_w=0.0,
                radiator=radiator,
                pump_fraction=pump_fraction,
                energy_per_bit_j=energy_per_bit_j,
                service_duration_s=horizon_s if horizon_s and horizon_s > 0 else 10.0,
            )
        except ValueError as exc:
            errors.append(f"power: {exc}")

    channel = None
    try:
        channel = RfChannelSpec(
            carrier_freq_hz=g("channel", "carrier_freq_hz", float, 30.0e9),
            bandwidth_hz=g("channel", "bandwidth_hz", float, 2.0e9),
            combined_gain_db=g("channel", "combined_gain_db", float, 110.0),
            noise_temp_k=g("channel", "noise_temp_k", float, 300.0),
            mimo_multiplier=g("channel", "mimo_multiplier", float, 1.0),
        )
    except ValueError as exc:
        errors.append(f"channel: {exc}")
    channels_per_gs = g("channel", "channels_per_gs", _int, 2)
    if channels_per_gs is not None and channels_per_gs < 1:
        errors.append(f"channel.channels_per_gs: must be >= 1, got {channels_per_gs}")
    fallback_slant_range_km = g("channel", "fallback_slant_range_km", float, 1000.0)

    isl = None
    try:
        isl = IslSpec(
            capacity_bits_per_s=g("isl", "capacity_bps", float, 4.0e11),
            max_links_per_sat=g("isl", "max_links_per_sat", _int, 6),
            max_range_km=g("isl", "max_range_km", float, None, required=False),
        )
    except ValueError as exc:
        errors.append(f"isl: {exc}")

    codecs = {}
    for role in ("bitcom", "semcom"):
        ref = g("codecs", role, str, f"builtin:{role}-cifar10" + ("-256" if role == "semcom" else ""))
        try:
            codecs[role] = load_codec_profile(ref)
        except (OSError, ValueError) as exc:
            errors.append(f"codecs.{role}: {exc}")

    scheduled_codec = g("schedule", "codec", str, "semcom")
    if scheduled_codec not in ("semcom", "bitcom"):
        errors.append(f"schedule.codec: must be 'semcom' or 'bitcom', got {scheduled_codec!r}")
    channel_cap_bps = g("schedule", "channel_cap_bps", float, 1.0e11)
    if channel_cap_bps is not None and channel_cap_bps <= 0:
        errors.append(f"schedule.channel_cap_bps: must be > 0, got {channel_cap_bps}")
    max_hops = g("schedule", "max_hops", _int, None, required=False)

    budgets_raw = g("sweep", "p_budgets_mw", str, None)
    p_budgets_w: list[float] = []
    if budgets_raw is not None:
        try:
            p_budgets_w = [float(tok) * 1e6 for tok in budgets_raw.replace(",", " ").split()]
        except ValueError:
            errors.append(f"sweep.p_budgets_mw: cannot parse {budgets_raw!r}")
    if not p_budgets_w:
        errors.append("sweep.p_budgets_mw: at least one power budget required")
    elif any(p < 0 for p in p_budgets_w):
        errors.append("sweep.p_budgets_mw: budgets must be >= 0")

    if errors:
        raise ConfigError(errors)

    return ScenarioConfig(
        horizon_s=horizon_s,
        slot_s=slot_s,
        n_relays=n_relays,
        n_planes=n_planes,
        inclination_deg=inclination_deg,
        altitude_km=altitude_km,
        phasing_factor=phasing_factor,
        sdc_altitude_km=sdc_altitude_km,
        sdc_inclination_deg=sdc_inclination_deg,
        sdc_raan_deg=sdc_raan_deg,
        sdc_phase_deg=sdc_phase_deg,
        n_gs=n_gs,
        seed=seed,
        elevation_mask_deg=elevation_mask_deg,
        lat_min_deg=lat_min_deg,
        lat_max_deg=lat_max_deg,
        power=power,
        channel=channel,
        channels_per_gs=channels_per_gs,
        fallback_slant_range_km=fallback_slant_range_km,
        isl=isl,
        bitcom=codecs["bitcom"],
        semcom=codecs["semcom"],
        scheduled_codec=scheduled_codec,
        channel_cap_bps=channel_cap_bps,
        max_hops=max_hops,
        p_budgets_w=p_budgets_w,
    )


@dataclass
class MetricsRow:
    p_budget: float
    e1_max: float
    e2: float
    x_max_bits: float
    per_gs_rate_bitcom: float
    per_gs_rate_semcom: float
    gs_power_bitcom: float
    gs_power_semcom: float
    delivered_fraction: float
    final_backlog_bits: float


@dataclass
class SweepPoint:
    row: MetricsRow
    envelope: EnvelopeResult
    run_report: scheduler.RunReport | None


def _profile_at(config: ScenarioConfig, p_budget_w: float) -> SdcPowerProfile:
    base = config.power
    return SdcPowerProfile(
        p_budget_w=p_budget_w,
        radiator=base.radiator,
        pump_fraction=base.pump_fraction,
        energy_per_bit_j=base.energy_per_bit_j,
        service_duration_s=base.service_duration_s,
    )


def evaluate_budget(config: ScenarioConfig, p_budget_w: float, contacts=None) -> SweepPoint:
    """Envelope -> codec rate requirements -> slot-level schedule for one budget."""
    if contacts is None:
        contacts = config.contact_table()
    envelope = max_data_volume(_profile_at(config, p_budget_w))

    if not envelope.feasible:
        row = MetricsRow(p_budget_w, 0.0, envelope.e2_w, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0)
        return SweepPoint(row=row, envelope=envelope, run_report=None)

    rr_bit = required_rates(envelope, config.bitcom, config.n_gs, config.power.service_duration_s)
    rr_sem = required_rates(envelope, config.semcom, config.n_gs, config.power.service_duration_s)
    scheduled = rr_sem if config.scheduled_codec == "semcom" else rr_bit

    report = scheduler.run(
        contacts,
        sdc_id=config.sdc_id,
        n_sats=config.n_sats,
        gs_ids=[gs.id for gs in config.ground_stations()],
        offered_rate_bps=scheduled.per_gs_rate_bps,
        isl_spec=config.isl,
        channel_cap_bps=config.channel_cap_bps,
        max_channels_per_gs=config.channels_per_gs,
        max_hops=config.max_hops,
    )
    mean_range = report.mean_scheduled_range_km
    if mean_range is None:
        mean_range = config.fallback_slant_range_km

    row = MetricsRow(
        p_budget=p_budget_w,
        e1_max=envelope.e1_max_w,
        e2=envelope.e2_w,
        x_max_bits=envelope.x_max_bits,
        per_gs_rate_bitcom=rr_bit.per_gs_rate_bps,
        per_gs_rate_semcom=rr_sem.per_gs_rate_bps,
        gs_power_bitcom=gs_power(
            rr_bit, config.bitcom, config.channel, mean_range, config.channels_per_gs
        ),
        gs_power_semcom=gs_power(
            rr_sem, config.semcom, config.channel, mean_range, config.channels_per_gs
        ),
        delivered_fraction=report.delivered_fraction,
        final_backlog_bits=float(sum(report.final_backlog.values())),
    )
    return SweepPoint(row=row, envelope=envelope, run_report=report)


def sweep(config: ScenarioConfig) -> list[SweepPoint]:
    """One sweep point per configured power budget, ordered by budget."""
    contacts = config.contact_table()
    return [evaluate_budget(config, p, contacts) for p in sorted(config.p_budgets_w)]


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def emit_csv(rows: list[MetricsRow], path: str | Path) -> None:
    """Write the metrics table; identical rows produce byte-identical files."""
    if not rows:
        raise ValueError("no rows to write")
    names = [f.name for f in fields(MetricsRow)]
    lines = [",".join(names)]
    for row in rows:
        lines.append(",".join(_fmt(getattr(row, name)) for name in names))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def emit_slot_dump(points: list[SweepPoint], path: str | Path) -> None:
    """Per-slot channel assignment dump across all feasible sweep points."""
    lines = ["p_budget,slot,gs_id,channel,sat_id,rate_bps,range_km,hops,path"]
    for point in points:
        if point.run_report is None:
            continue
        for alloc in point.run_report.allocations:
            for asg in alloc.assignments:
                lines.append(
                    ",".join(
                        [
                            _fmt(point.row.p_budget),
                            str(alloc.slot),
                            str(asg.gs_id),
                            str(asg.channel),
                            str(asg.sat_id),
                            _fmt(asg.rate_bps),
                            _fmt(asg.range_km),
                            str(asg.hops),
                            "|".join(str(s) for s in asg.path),
                        ]
                    )
                )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
