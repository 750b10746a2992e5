"""Command-line interface.

Exit status: 0 on success, 1 when validation rejects an input or an oracle
fails, 2 when the input itself is malformed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import groups, motions, relativity, suite
from .errors import KinematicsError
from .spacetime import Event, FourVector

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED = 0, 1, 2


class InputError(Exception):
    """Malformed command-line input; the message names the field."""


@dataclass
class CliConfig:
    tolerance: float = 1e-9
    full_group: bool = False
    light_speed: float = 1.0
    output_format: str = "text"

    def __post_init__(self):
        if not (isinstance(self.tolerance, (int, float)) and self.tolerance > 0):
            raise InputError(f"tolerance: must be a positive number, got {self.tolerance!r}")
        if not (isinstance(self.light_speed, (int, float)) and self.light_speed > 0):
            raise InputError(f"light_speed: must be a positive number, got {self.light_speed!r}")
        if not isinstance(self.full_group, bool):
            raise InputError(f"full_group: must be a boolean, got {self.full_group!r}")
        if self.output_format not in ("json", "csv", "text"):
            raise InputError(f"output_format: must be json, csv or text, got {self.output_format!r}")


# ---------------------------------------------------------------------------
# parsing helpers


def _read_text(path: str, field: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{field}: cannot read {path!r} ({exc.strerror})") from None


def _read_json(path: str, field: str):
    try:
        return json.loads(_read_text(path, field))
    except json.JSONDecodeError as exc:
        raise InputError(f"{field}: invalid JSON in {path!r} ({exc.msg})") from None


def _floats(text: str, n: int, field: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != n:
        raise InputError(f"{field}: expected {n} comma-separated numbers, got {text!r}")
    try:
        out = np.array([float(p) for p in parts])
    except ValueError:
        raise InputError(f"{field}: not a number in {text!r}") from None
    if not np.all(np.isfinite(out)):
        raise InputError(f"{field}: values must be finite")
    return out


def _array(d: dict, key: str, shape, where: str) -> np.ndarray:
    if key not in d:
        raise InputError(f"{where}: missing field {key!r}")
    try:
        a = np.array(d[key], dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{where}: field {key!r} must be numeric") from None
    if a.shape != shape:
        raise InputError(f"{where}: field {key!r} must have shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{where}: field {key!r} must be finite")
    return a


def parse_element(family: str, d, where: str, cfg: CliConfig) -> groups.Element:
    """Decode an element's JSON, naming the offending field on failure."""
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected a JSON object")
    if family == "poincare":
        L = _array(d, "L", (4, 4), where)
        C = _array(d, "C", (4,), where) if "C" in d else np.zeros(4)
        return groups.make_poincare(L, C, full_group=cfg.full_group, tol=cfg.tolerance)
    A = _array(d, "A", (3, 3), where)
    C = _array(d, "C", (3,), where)
    e = float(_array(d, "e", (), where))
    sign = d.get("sign", 1)
    if sign not in (1, -1):
        raise InputError(f"{where}: field 'sign' must be 1 or -1, got {sign!r}")
    if family == "aristotle":
        return groups.make_aristotle(A, C, e, sign, full_group=cfg.full_group, tol=cfg.tolerance)
    B = _array(d, "B", (3,), where)
    return groups.make_galilei(A, B, C, e, sign, full_group=cfg.full_group, tol=cfg.tolerance)


def _dump(obj) -> str:
    return json.dumps(obj)


def _emit_scalar(value: float, cfg: CliConfig, name: str = "value"):
    if cfg.output_format == "json":
        print(_dump({name: value}))
    else:
        print(repr(float(value)))


# ---------------------------------------------------------------------------
# commands


def cmd_compose(args, cfg):
    g1 = parse_element(args.family, _read_json(args.first, "first"), "first", cfg)
    g2 = parse_element(args.family, _read_json(args.second, "second"), "second", cfg)
    print(_dump(groups.compose(g1, g2).to_dict()))
    return EXIT_OK


def cmd_act(args, cfg):
    g = parse_element(args.family, _read_json(args.element, "element"), "element", cfg)
    q = Event.from_array(_floats(args.event, 4, "--event"))
    print(_dump(groups.act_event(g, q).to_dict()))
    return EXIT_OK


def cmd_classify(args, cfg):
    d = _floats(args.direction, 4, "--direction")
    if not np.any(d):
        raise InputError("--direction: must be non-zero")
    m = motions.InertialMotion(Event(0, 0, 0, 0), FourVector.from_array(d))
    if args.mechanics == "minkowski":
        cls = motions.classify_minkowski(m)
    else:
        cls = motions.classify_galilean(m)
    if cfg.output_format == "json":
        print(_dump({"class": cls.value}))
    else:
        print(cls.value)
    return EXIT_OK


def cmd_decompose(args, cfg):
    data = _read_json(args.matrix, "matrix")
    if isinstance(data, dict):
        L = _array(data, "L", (4, 4), "matrix")
    else:
        L = _array({"L": data}, "L", (4, 4), "matrix")
    d = groups.boost_decompose(L, full_group=True, tol=cfg.tolerance)
    print(_dump(d.to_dict()))
    return EXIT_OK


def _read_worldline(path):
    try:
        return motions.Worldline.from_csv(_read_text(path, "worldline"))
    except KinematicsError:
        raise
    except (ValueError, KeyError) as exc:
        raise InputError(f"worldline: {exc}") from None


def cmd_proper_time(args, cfg):
    w = _read_worldline(args.worldline)
    _emit_scalar(motions.proper_time(w, tol=cfg.tolerance), cfg, "proper_time")
    return EXIT_OK


def cmd_michelson(args, cfg):
    try:
        spec = relativity.InterferometerSpec(args.d, args.beta)
    except ValueError as exc:
        raise InputError(f"--d/--beta: {exc}") from None
    print(_dump(relativity.michelson_paths(spec).to_dict()))
    return EXIT_OK


def cmd_contract(args, cfg):
    if not args.d > 0:
        raise InputError("--d: must be positive")
    if not 0 <= args.beta < 1:
        raise InputError("--beta: must lie in [0, 1)")
    _emit_scalar(relativity.length_contraction(args.d, args.beta), cfg, "length")
    return EXIT_OK


def cmd_dilate(args, cfg):
    V = args.V if args.V is not None else cfg.light_speed
    _emit_scalar(relativity.time_dilation(args.t, args.v, V), cfg, "proper_time")
    return EXIT_OK


def cmd_add_velocities(args, cfg):
    V = args.V if args.V is not None else cfg.light_speed
    _emit_scalar(relativity.velocity_addition(args.v, args.w, V), cfg, "velocity")
    return EXIT_OK


def cmd_ship_drop(args, cfg):
    B = _floats(args.boost, 3, "--boost")
    if not args.height > 0:
        raise InputError("--height: must be positive")
    if not args.duration > 0:
        raise InputError("--duration: must be positive")
    report = relativity.ship_drop(relativity.ShipDropSpec(B, args.height, args.duration),
                                  shore_thrown=args.shore)
    print(_dump(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args, cfg):
    if args.trials < 1:
        raise InputError("--trials: must be >= 1")
    ok = True
    for name, report in suite.run_all(args.trials, args.seed):
        ok &= report.passed
        if cfg.output_format == "json":
            print(_dump({"oracle": name, **report.to_dict()}))
        else:
            print(f"{report.verdict.upper():4s}  {name}: {report.detail}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_worldline_boost(args, cfg):
    beta = _floats(args.beta, 3, "--beta")
    w = _read_worldline(args.worldline)
    if args.mechanics == "galilei":
        g = groups.make_galilei(np.eye(3), beta, np.zeros(3))
    else:
        g = groups.boost(beta)
    sys.stdout.write(w.transformed(g).to_csv())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inertia", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file with tolerance/full_group/light_speed/output_format")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--full-group", action="store_true", default=None,
                   help="accept reflections, time reversal and non-orthochronous maps")
    p.add_argument("--light-speed", type=float, default=None)
    p.add_argument("--format", dest="output_format", choices=("json", "csv", "text"), default=None)
    sub = p.add_subparsers(dest="command", required=True)

    families = ("aristotle", "galilei", "poincare")
    s = sub.add_parser("compose", help="compose two elements (first after second)")
    s.add_argument("family", choices=families)
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("act", help="apply an element to an event")
    s.add_argument("family", choices=families)
    s.add_argument("element")
    s.add_argument("--event", required=True, help="x,y,z,t")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("classify", help="classify an inertial motion by its direction")
    s.add_argument("mechanics", choices=("galilean", "minkowski"))
    s.add_argument("--direction", required=True, help="dx,dy,dz,dt")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("decompose", help="split a Lorentz matrix into beta, B, a")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("proper-time", help="proper time along a t,x,y,z CSV worldline")
    s.add_argument("worldline")
    s.set_defaults(func=cmd_proper_time)

    s = sub.add_parser("michelson", help="optical paths of the two interferometer arms")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.set_defaults(func=cmd_michelson)

    s = sub.add_parser("contract", help="contracted length d*sqrt(1-beta^2)")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("dilate", help="proper time of a moving clock")
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--v", type=float, required=True)
    s.add_argument("--V", type=float, default=None)
    s.set_defaults(func=cmd_dilate)

    s = sub.add_parser("add-velocities", help="relativistic collinear velocity sum")
    s.add_argument("--v", type=float, required=True)
    s.add_argument("--w", type=float, required=True)
    s.add_argument("--V", type=float, default=None)
    s.set_defaults(func=cmd_add_velocities)

    s = sub.add_parser("ship-drop", help="stone dropped from the mast of a moving ship")
    s.add_argument("--boost", default="10,0,0", help="bx,by,bz")
    s.add_argument("--height", type=float, default=10.0)
    s.add_argument("--duration", type=float, default=1.0)
    s.add_argument("--shore", action="store_true", help="stone thrown from the shore instead")
    s.set_defaults(func=cmd_ship_drop)

    s = sub.add_parser("verify", help="run every theorem oracle")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("worldline", help="transform worldlines")
    wsub = s.add_subparsers(dest="worldline_command", required=True)
    b = wsub.add_parser("boost", help="boost a t,x,y,z CSV worldline")
    b.add_argument("--beta", required=True, help="bx,by,bz")
    b.add_argument("--mechanics", choices=("minkowski", "galilei"), default="minkowski")
    b.add_argument("worldline")
    b.set_defaults(func=cmd_worldline_boost)
    return p


def load_config(args) -> CliConfig:
    values = {}
    if args.config:
        data = _read_json(args.config, "--config")
        if not isinstance(data, dict):
            raise InputError("--config: expected a JSON object")
        unknown = set(data) - {"tolerance", "full_group", "light_speed", "output_format"}
        if unknown:
            raise InputError(f"--config: unknown field {sorted(unknown)[0]!r}")
        values.update(data)
    for key in ("tolerance", "full_group", "light_speed", "output_format"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    return CliConfig(**values)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args)
        return args.func(args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except KinematicsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
