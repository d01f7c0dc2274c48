"""Regenerates data/scenarios/*.json.

Port outlines are hand-digitized approximations (about 10 m fidelity) drawn as
rectangles in a quay-aligned frame: s runs along the berth wall, l across it.
World coordinates are x0 = north, y0 = east, origin at the berth point.
"""
import json
import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "..", "data", "scenarios")


def frame(s_deg, l_deg):
    a = (math.cos(math.radians(s_deg)), math.sin(math.radians(s_deg)))
    n = (math.cos(math.radians(l_deg)), math.sin(math.radians(l_deg)))
    return a, n


def rect(fr, s0, s1, l0, l1):
    a, n = fr
    pts = []
    for s, l in ((s0, l0), (s1, l0), (s1, l1), (s0, l1)):
        pts.append([round(s * a[0] + l * n[0], 1), round(s * a[1] + l * n[1], 1)])
    return pts


def q(v, unit):
    return {"value": v, "unit": unit}


def state(x0, u_kn, y0, psi_deg):
    return {"x0": x0, "u": q(u_kn, "kn"), "y0": y0, "vm": 0.0, "psi": q(psi_deg, "deg"),
            "r": q(0.0, "deg/s")}


def obstacles(fr, rects):
    return [{"label": name, "vertices": rect(fr, *r)} for name, r in rects]


NANKO_FRAME = frame(47.0, 317.0)
NANKO = [
    ("berth quay landfill", (-700, 700, 40, 700)),
    ("moored vessel", (180, 360, 8, 40)),
    ("south-east landfill", (-2700, 700, -900, -460)),
    ("dead end of basin", (450, 900, -900, 700)),
    ("breakwater with restricted water, east arm", (-1530, -700, 560, 700)),
    ("breakwater with restricted water, west arm", (-2700, -2000, 560, 700)),
    ("west wall", (-2700, -2460, -900, 560)),
    ("jetty", (-1300, -900, -460, -150)),
    ("outer landfill", (-3200, -800, 1700, 2200)),
]

ARIAKE_FRAME = frame(326.0, 56.0)
ARIAKE = [
    ("breakwater with restricted water, north arm", (-2340, -2260, 2432, 3200)),
    ("breakwater with restricted water, south arm", (-2340, -2260, -600, 2072)),
    ("northern wall", (-2260, -300, 2700, 3200)),
    ("berth quay landfill", (-600, 700, 40, 2700)),
    ("southern landfill", (-2260, 700, -900, -360)),
    ("dead end of basin", (450, 900, -900, 3200)),
    ("island", (-1600, -1000, 900, 1700)),
]

APPROX = ("Obstacle polygons are approximate hand-digitized outlines, not surveyed "
          "geometry. ")


def base(name, note, mode, x_int, x_des, W_lpp, obs):
    return {
        "name": name,
        "note": note,
        "mode": mode,
        "coefficients": "builtin:default",
        "initial_state": x_int,
        "desired_state": x_des,
        "domain": {"W": q(W_lpp, "Lpp"), "U_min": q(1.0, "kn"), "U_max": q(6.0, "kn"),
                   "n_vertices": 13},
        "bounds": {"tf_min": 630.0, "tf_max": 2250.0, "delta_max": q(35.0, "deg"),
                   "np_max": 2.08, "nbt_max": 4.24, "nst_max": 4.24},
        "control": {"segments": 25, "segment_duration": 90.0, "dt": 1.0},
        "obstacles": obs,
        "waypoints": [],
        "wind": {"gamma_T": q(0.0, "deg"), "U_T": 0.0, "enabled": False},
        "optimizer": {"initial_population": 20, "max_population": 240,
                      "max_evaluations": 300000, "seed": 1},
    }


def main():
    scen = {}
    nk = obstacles(NANKO_FRAME, NANKO)
    berth_n = state(0.0, 0.0, 0.0, 227.0)
    start_n = state(-598.7, 8.0, -1845.2, 132.0)
    scen["nanko_berth"] = base(
        "nanko_berth", APPROX + "Origin at the berth point.", "berthing", start_n, berth_n,
        3.08, nk)
    scen["nanko_unberth"] = base(
        "nanko_unberth", APPROX + "Origin at the start (berth) point. Desired heading 312 deg as "
        "tabulated.", "unberthing", berth_n, state(-598.7, 6.0, -1845.2, 312.0), 3.08, nk)
    wp = base(
        "nanko_waypoint", APPROX + "Starts farther out; the waypoint sits at the regular "
        "berthing start point outside the breakwater opening.", "berthing",
        state(-753.7, 8.0, -2892.1, 45.0), berth_n, 3.08, nk)
    wp["waypoints"] = [{"x0": -598.7, "y0": -1845.2, "L_tol": q(0.5, "Lpp")}]
    wp["bounds"]["tf_max"] = 2250.0
    scen["nanko_waypoint"] = wp

    ak = obstacles(ARIAKE_FRAME, ARIAKE)
    berth_a = state(0.0, 0.0, 0.0, 146.0)
    scen["ariake_berth"] = base(
        "ariake_berth", APPROX + "Origin at the berth point.", "berthing",
        state(-891.3, 8.0, 3317.5, 326.0), berth_a, 2.40, ak)
    scen["ariake_unberth"] = base(
        "ariake_unberth", APPROX + "Desired y0 = -3317.5 m is shipped as tabulated; it has the "
        "opposite sign of the berthing start point (+3317.5 m) and is likely a sign slip.",
        "unberthing", berth_a, state(-891.3, 6.0, -3317.5, 146.0), 2.40, ak)

    # Reduced planning problem: one straight wall east of the berth line.
    sb = base(
        "straight_berth", "Simplified berthing along a single straight quay wall 40 m east of "
        "the berth line. Ten control segments.", "berthing",
        state(-600.0, 4.0, -150.0, 0.0), state(0.0, 0.0, 0.0, 0.0), 3.08,
        [{"label": "quay wall", "vertices": [[-1500.0, 40.0], [500.0, 40.0], [500.0, 300.0],
                                             [-1500.0, 300.0]]}])
    sb["bounds"].update({"tf_min": 200.0, "tf_max": 900.0})
    sb["control"]["segments"] = 10
    sb["optimizer"]["max_evaluations"] = 20000
    scen["straight_berth"] = sb

    os.makedirs(OUT, exist_ok=True)
    for name, s in scen.items():
        with open(os.path.join(OUT, name + ".json"), "w") as f:
            json.dump(s, f, indent=2)
            f.write("\n")


if __name__ == "__main__":
    main()
