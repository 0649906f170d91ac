"""Circular-orbit propagation, ground station placement, and slot-sampled visibility."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

EARTH_RADIUS_KM = 6378.137
MU_EARTH_KM3_S2 = 398600.4418
# Sidereal rotation rate; only matters through slow GS drift over the horizon.
EARTH_ROTATION_RAD_S = 7.2921159e-5


def _norm_angle_deg(angle: float) -> float:
    return angle % 360.0


@dataclass(frozen=True)
class OrbitalElements:
    """Circular orbit: altitude above mean Earth radius plus orientation angles."""

    altitude_km: float
    inclination_deg: float = 0.0
    raan_deg: float = 0.0
    phase_deg: float = 0.0

    def __post_init__(self):
        if self.altitude_km <= 0:
            raise ValueError(f"altitude_km must be > 0, got {self.altitude_km}")
        object.__setattr__(self, "inclination_deg", _norm_angle_deg(self.inclination_deg))
        object.__setattr__(self, "raan_deg", _norm_angle_deg(self.raan_deg))
        object.__setattr__(self, "phase_deg", _norm_angle_deg(self.phase_deg))

    @property
    def radius_km(self) -> float:
        return EARTH_RADIUS_KM + self.altitude_km

    @property
    def period_s(self) -> float:
        return 2.0 * math.pi * math.sqrt(self.radius_km**3 / MU_EARTH_KM3_S2)


@dataclass(frozen=True)
class GroundStation:
    id: int
    latitude_deg: float
    longitude_deg: float
    max_channels: int = 2

    def __post_init__(self):
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise ValueError(f"latitude_deg out of range: {self.latitude_deg}")
        if not -180.0 <= self.longitude_deg < 180.0:
            raise ValueError(f"longitude_deg out of range: {self.longitude_deg}")
        if self.max_channels < 1:
            raise ValueError("max_channels must be >= 1")


def propagate(elements: OrbitalElements, t: float) -> np.ndarray:
    """Earth-centered inertial position (km) of a circular orbit at time t (s)."""
    a = elements.radius_km
    n = math.sqrt(MU_EARTH_KM3_S2 / a**3)  # rad/s
    u = math.radians(elements.phase_deg) + n * t
    inc = math.radians(elements.inclination_deg)
    raan = math.radians(elements.raan_deg)
    cu, su = math.cos(u), math.sin(u)
    ci, si = math.cos(inc), math.sin(inc)
    cr, sr = math.cos(raan), math.sin(raan)
    return a * np.array([
        cr * cu - sr * su * ci,
        sr * cu + cr * su * ci,
        su * si,
    ])


def ground_station_position(gs: GroundStation, t: float) -> np.ndarray:
    """Inertial position (km) of a GS on the rotating spherical Earth."""
    lon = math.radians(gs.longitude_deg) + EARTH_ROTATION_RAD_S * t
    lat = math.radians(gs.latitude_deg)
    cl = math.cos(lat)
    return EARTH_RADIUS_KM * np.array([cl * math.cos(lon), cl * math.sin(lon), math.sin(lat)])


def elevation(gs: GroundStation, sat_position: np.ndarray, t: float) -> float:
    """Elevation angle (deg) of a satellite above the GS local horizon; 90 at zenith."""
    gs_pos = ground_station_position(gs, t)
    rel = np.asarray(sat_position, dtype=float) - gs_pos
    up = gs_pos / np.linalg.norm(gs_pos)
    s = float(np.dot(up, rel) / np.linalg.norm(rel))
    return math.degrees(math.asin(max(-1.0, min(1.0, s))))


def slant_range(gs: GroundStation, sat_position: np.ndarray, t: float = 0.0) -> float:
    """Line-of-sight GS-to-satellite distance (km)."""
    return float(np.linalg.norm(np.asarray(sat_position, dtype=float) - ground_station_position(gs, t)))


def slant_range_at_elevation(elevation_deg: float, altitude_km: float) -> float:
    """Closed-form slant range (km) for a spherical Earth at a given elevation angle."""
    r = EARTH_RADIUS_KM
    e = math.radians(elevation_deg)
    return math.sqrt((r + altitude_km) ** 2 - (r * math.cos(e)) ** 2) - r * math.sin(e)


def line_of_sight_clear(pos_a: np.ndarray, pos_b: np.ndarray) -> bool:
    """True when the segment between two orbital positions clears the Earth sphere."""
    p = np.asarray(pos_a, dtype=float)
    d = np.asarray(pos_b, dtype=float) - p
    dd = float(np.dot(d, d))
    if dd == 0.0:
        return True
    # Closest approach of the segment to the Earth center, clamped to the endpoints.
    s = min(1.0, max(0.0, -float(np.dot(p, d)) / dd))
    closest = p + s * d
    return float(np.linalg.norm(closest)) >= EARTH_RADIUS_KM


def build_walker_fleet(
    n_sats: int,
    n_planes: int,
    inclination_deg: float,
    altitude_km: float,
    phasing_factor: int = 1,
) -> list[OrbitalElements]:
    """Walker-delta pattern: planes evenly spread in RAAN, satellites evenly in-plane,
    with inter-plane phasing F*360/T."""
    if n_sats % n_planes != 0:
        raise ValueError(f"n_sats={n_sats} not divisible by n_planes={n_planes}")
    per_plane = n_sats // n_planes
    fleet = []
    for p in range(n_planes):
        raan = 360.0 * p / n_planes
        for s in range(per_plane):
            phase = 360.0 * s / per_plane + 360.0 * phasing_factor * p / n_sats
            fleet.append(OrbitalElements(altitude_km, inclination_deg, raan, phase))
    return fleet


def place_ground_stations(
    n_gs: int,
    seed: int,
    lat_range_deg: tuple[float, float] = (-60.0, 60.0),
    max_channels: int = 2,
) -> list[GroundStation]:
    """Seeded uniform GS placement over the configured latitude band."""
    rng = np.random.default_rng(seed)
    lats = rng.uniform(lat_range_deg[0], lat_range_deg[1], size=n_gs)
    lons = rng.uniform(-180.0, 180.0, size=n_gs)
    return [
        GroundStation(i, float(lats[i]), float(lons[i]), max_channels=max_channels)
        for i in range(n_gs)
    ]


@dataclass
class ContactTable:
    """Slot-sampled visibility: GS->satellite contacts and satellite-pair line of sight."""

    n_slots: int
    slot_s: float
    # gs_contacts[slot][gs_id] = {sat_id: slant_range_km}
    gs_contacts: list[dict[int, dict[int, float]]] = field(default_factory=list)
    # isl_contacts[slot][(a, b)] = range_km, with a < b
    isl_contacts: list[dict[tuple[int, int], float]] = field(default_factory=list)

    def gs_visible(self, slot: int, gs_id: int) -> dict[int, float]:
        return self.gs_contacts[slot].get(gs_id, {})

    def sat_pair_visible(self, slot: int, sat_a: int, sat_b: int) -> bool:
        key = (sat_a, sat_b) if sat_a < sat_b else (sat_b, sat_a)
        return key in self.isl_contacts[slot]

    def sat_pair_range(self, slot: int, sat_a: int, sat_b: int) -> float:
        key = (sat_a, sat_b) if sat_a < sat_b else (sat_b, sat_a)
        return self.isl_contacts[slot][key]


def build_contact_table(
    fleet: list[OrbitalElements],
    stations: list[GroundStation],
    n_slots: int,
    slot_s: float,
    elevation_mask_deg: float = 10.0,
    isl_max_range_km: float | None = None,
) -> ContactTable:
    """Sample visibility at slot midpoints: a contact held at the midpoint counts for
    the whole slot."""
    table = ContactTable(n_slots=n_slots, slot_s=slot_s)
    for k in range(n_slots):
        t = (k + 0.5) * slot_s
        sat_pos = [propagate(el, t) for el in fleet]

        gs_slot: dict[int, dict[int, float]] = {}
        for gs in stations:
            gs_pos = ground_station_position(gs, t)
            up = gs_pos / np.linalg.norm(gs_pos)
            visible: dict[int, float] = {}
            for sid, pos in enumerate(sat_pos):
                rel = pos - gs_pos
                rng_km = float(np.linalg.norm(rel))
                elev = math.degrees(math.asin(max(-1.0, min(1.0, float(np.dot(up, rel)) / rng_km))))
                if elev >= elevation_mask_deg:
                    visible[sid] = rng_km
            if visible:
                gs_slot[gs.id] = visible

        isl_slot: dict[tuple[int, int], float] = {}
        for a in range(len(fleet)):
            for b in range(a + 1, len(fleet)):
                rng_km = float(np.linalg.norm(sat_pos[a] - sat_pos[b]))
                if isl_max_range_km is not None and rng_km > isl_max_range_km:
                    continue
                if line_of_sight_clear(sat_pos[a], sat_pos[b]):
                    isl_slot[(a, b)] = rng_km

        table.gs_contacts.append(gs_slot)
        table.isl_contacts.append(isl_slot)
    return table
