#!/usr/bin/env python3
"""Regenerates the shipped scenario files under scenarios/."""

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "scenarios"

SCHEDULE = {
    "defaults": {
        "first_departure": "5:30",
        "last_departure": "23:30",
        "headway_minutes": 5,
        "headways": [
            {"from": "7:00", "to": "9:30", "minutes": 3},
            {"from": "17:00", "to": "20:00", "minutes": 3},
        ],
    }
}


def lerp(a, b, f):
    return (a[0] + (b[0] - a[0]) * f, a[1] + (b[1] - a[1]) * f)


def along(anchors, count):
    """Stations 1..count placed linearly between (ordinal, point) anchors."""
    pts = {}
    for (i0, p0), (i1, p1) in zip(anchors, anchors[1:]):
        for i in range(i0, i1 + 1):
            pts[i] = lerp(p0, p1, (i - i0) / (i1 - i0))
    assert sorted(pts) == list(range(1, count + 1))
    return [pts[i] for i in range(1, count + 1)]


class Builder:
    def __init__(self):
        self.stations = {}  # code -> station
        self.alias = {}     # line-local code -> shared code

    def add_line(self, code, points, shared=None, **extra):
        shared = shared or {}
        ids = []
        for i, (lat, lon) in enumerate(points, start=1):
            local = f"{code}{i}"
            sid = shared.get(i, local)
            if sid not in self.stations:
                self.stations[sid] = {"id": sid, "lat": round(lat, 6), "lon": round(lon, 6)}
            ids.append(sid)
        line = {"id": code, "stations": ids}
        line.update(extra)
        return line


def singapore_like():
    centre = (1.318, 103.84)
    radius = 0.053
    cc_count = 22

    def ring(k):
        phi = 2 * math.pi * (cc_count - k) / cc_count
        return (centre[0] + radius * math.sin(phi), centre[1] + radius * math.cos(phi))

    x_ew_ns = (1.300, 103.840)
    b = Builder()
    ew = b.add_line(
        "EW",
        along([(1, (1.335, 103.64)), (10, ring(11)), (15, x_ew_ns), (21, ring(22)), (30, (1.345, 103.99))], 30),
        {10: "EW10-CC11", 15: "EW15-NS15", 21: "EW21-CC22"},
    )
    ns = b.add_line(
        "NS",
        along([(1, (1.445, 103.79)), (9, ring(17)), (15, x_ew_ns), (22, ring(5)), (25, (1.25, 103.86))], 25),
        {9: "NS9-CC17", 15: "EW15-NS15", 22: "NS22-CC5"},
    )
    ne = b.add_line(
        "NE",
        along([(1, (1.283, 103.852)), (7, ring(19)), (16, (1.41, 103.91))], 16),
        {7: "NE7-CC19"},
    )
    shared_cc = {11: "EW10-CC11", 22: "EW21-CC22", 17: "NS9-CC17", 5: "NS22-CC5", 19: "NE7-CC19"}
    cc = b.add_line("CC", [ring(k) for k in range(1, cc_count + 1)], shared_cc, circular=True)
    stations = list(b.stations.values())
    assert len(stations) == 87, len(stations)
    event_at = b.stations["EW21-CC22"]
    return {
        "name": "singapore-like",
        "seed": 7,
        "horizon_hours": 24,
        "road": {"speed_kmh": 35},
        "network": {"stations": stations, "lines": [ns, ne, ew, cc]},
        "schedule": SCHEDULE,
        "population": {"size": 10000},
        "social": {"model": "influence", "degree": {"min": 1, "max": 5000, "mean": 500, "scale": True}},
        "events": {
            "list": [
                {
                    "lat": round(event_at["lat"] + 0.004, 6),
                    "lon": round(event_at["lon"] + 0.003, 6),
                    "start": "8:30",
                    "end": "11:30",
                    "lead_minutes": 180,
                }
            ],
            "poll_interval_minutes": 60,
            "poll_probability": 0.25,
        },
        "strategy": {"kind": "none", "alt_routing": False, "pool": 10},
    }


DESK_CENTRE = (1.35, 103.85)
DESK_SPACING = 0.018  # about 2 km


def desk_network():
    b = Builder()
    pts_a = [(DESK_CENTRE[0], DESK_CENTRE[1] + (i - 11) * DESK_SPACING) for i in range(1, 21)]
    pts_b = [(DESK_CENTRE[0] + (11 - i) * DESK_SPACING, DESK_CENTRE[1]) for i in range(1, 21)]
    a = b.add_line("A", pts_a, {11: "A11-B11"}, run_s=120, dwell_s=30)
    bl = b.add_line("B", pts_b, {11: "A11-B11"}, run_s=120, dwell_s=30)
    return {"stations": list(b.stations.values()), "lines": [a, bl]}, b


def desk(name, seed=1, hours=24, events=None, size=5000, **extra):
    net, _ = desk_network()
    doc = {
        "name": name,
        "seed": seed,
        "horizon_hours": hours,
        # Straight-line roads flatter door-to-door speed; desk runs use a
        # slower effective speed so rail competes as it does on real roads.
        "road": {"speed_kmh": 15},
        "network": net,
        # Compartments shrink with the population, like the friend counts.
        "trains": {"compartment_seats": 3, "initial_capacity": 12},
        "schedule": SCHEDULE,
        "population": {"size": size},
        "social": {"model": "influence", "degree": {"min": 1, "max": 5000, "mean": 500, "scale": True},
                   "diffusion_step_minutes": 30},
        "events": events or [],
        "strategy": {"kind": "none", "alt_routing": False, "pool": 10},
    }
    doc.update(extra)
    return doc


def desk_station(code):
    _, b = desk_network()
    return b.stations[code]


def near(code, dlat=0.003, dlon=0.002):
    st = desk_station(code)
    return round(st["lat"] + dlat, 6), round(st["lon"] + dlon, 6)


def main():
    OUT.mkdir(exist_ok=True)
    concert_lat, concert_lon = near("A16")
    fair_lat, fair_lon = near("B5")
    docs = {
        "singapore-like": singapore_like(),
        "desk": desk("desk"),
        "desk-concert": desk(
            "desk-concert",
            hours=48,
            events={
                "list": [{"lat": concert_lat, "lon": concert_lon, "day": 1, "start": "9:00",
                          "end": "12:00", "lead_minutes": 60}],
                "poll_interval_minutes": 60,
                "poll_probability": 0.02,
            },
        ),
        "desk-exhibition": desk(
            "desk-exhibition",
            events={
                "list": [{"lat": fair_lat, "lon": fair_lon, "start": "15:00", "end": "18:00",
                          "lead_minutes": 60, "age_groups": [1, 2]}],
                "poll_interval_minutes": 60,
                "poll_probability": 0.05,
            },
        ),
    }
    for name, doc in docs.items():
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print(f"wrote scenarios/{name}.json ({len(doc['network']['stations'])} stations)")


if __name__ == "__main__":
    main()
