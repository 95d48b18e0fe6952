"""``orbitstab`` command line: read a JSON scene, run one operation, print JSON.

Exit status is 0 on success, 1 for malformed input, 2 when a case
analysis finds its hypothesis unmet and 3 when coefficient growth hits
the bit cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any

from .algebra import Field, field_from_json, parse_poly
from .autmap import PlaneAut, Point, aut_from_json, compose, power
from .classify import algebraicity, classify_canonical, symmetry_group
from .closure import DEFAULT_D, DEFAULT_LMAX, component_cycle, hat_vs_bar, trichotomy
from .errors import HypothesisError, NotInGroupError, OrbitStabError, ParseError, SizeLimitError
from .oracle import verify_theorem_grid
from .orbit import DEFAULT_BIT_CAP, DEFAULT_L, DEFAULT_N, cyclic_orbit, galois_saturate, group_orbit, point_set_sample
from .stabilizer import (
    cyclic_orbit_stabilizer,
    dynamical_degree,
    isotropy,
    membership,
    orbit_stabilizer,
    subgroup_normal_form,
)

SUBCOMMANDS = (
    "orbit",
    "closure",
    "components",
    "classify",
    "isotropy",
    "stabilizer",
    "cyclic",
    "membership",
    "ddeg",
    "verify",
)

DEFAULTS = {"N": DEFAULT_N, "L": DEFAULT_L, "D": DEFAULT_D, "lmax": DEFAULT_LMAX, "bit_cap": DEFAULT_BIT_CAP, "M": 6}


# -- scenes --------------------------------------------------------------------------


@dataclass
class Scene:
    field: Field
    automorphisms: dict[str, PlaneAut] = dc_field(default_factory=dict)
    points: dict[str, Point] = dc_field(default_factory=dict)
    curves: dict = dc_field(default_factory=dict)
    groups: dict[str, list[str]] = dc_field(default_factory=dict)
    sets: dict[str, list[str]] = dc_field(default_factory=dict)
    options: dict = dc_field(default_factory=dict)

    def aut(self, name: str) -> PlaneAut:
        try:
            return self.automorphisms[name]
        except KeyError:
            raise ParseError(f"scene has no automorphism named {name!r}") from None

    def point(self, name: str) -> Point:
        try:
            return self.points[name]
        except KeyError:
            raise ParseError(f"scene has no point named {name!r}") from None

    def curve(self, name: str):
        try:
            return self.curves[name]
        except KeyError:
            raise ParseError(f"scene has no curve named {name!r}") from None

    def group(self, name: str) -> list[PlaneAut]:
        if name not in self.groups:
            raise ParseError(f"scene has no group named {name!r}")
        return [self.aut(a) for a in self.groups[name]]

    def point_set(self, name: str) -> list[Point]:
        if name not in self.sets:
            raise ParseError(f"scene has no point set named {name!r}")
        return [self.point(q) for q in self.sets[name]]


def _named(data: dict, key: str) -> dict:
    block = data.get(key, {})
    if not isinstance(block, dict):
        raise ParseError(f"scene field {key!r} must be an object of named entries")
    return block


def _parse_aut(K: Field, name: str, rec: Any, done: dict[str, PlaneAut]) -> PlaneAut:
    if isinstance(rec, dict) and len(rec) == 1 and next(iter(rec)) in ("compose", "inverse", "power"):
        (op, arg), = rec.items()

        def ref(n: str) -> PlaneAut:
            if n not in done:
                raise ParseError(f"automorphisms.{name}: {n!r} must be defined earlier in the scene")
            return done[n]

        if op == "compose":
            if not isinstance(arg, list) or not arg:
                raise ParseError(f"automorphisms.{name}: compose needs a non-empty list of names")
            out = ref(arg[0])
            for n in arg[1:]:
                out = compose(out, ref(n))
        elif op == "inverse":
            out = ref(arg).inverse()
        else:
            if not isinstance(arg, list) or len(arg) != 2 or not isinstance(arg[1], int):
                raise ParseError(f"automorphisms.{name}: power needs [name, integer]")
            out = power(ref(arg[0]), arg[1])
        return PlaneAut(K, out.word, name=name, _parents=out._parents)
    try:
        return aut_from_json(K, rec, name=name)
    except ParseError as exc:
        raise ParseError(f"automorphisms.{name}: {exc}") from None


def scene_from_json(data: Any) -> Scene:
    if not isinstance(data, dict):
        raise ParseError("scene must be a JSON object")
    if "field" not in data:
        raise ParseError("scene is missing the 'field' declaration")
    K = field_from_json(data["field"])
    sc = Scene(K)
    for name, rec in _named(data, "automorphisms").items():
        sc.automorphisms[name] = _parse_aut(K, name, rec, sc.automorphisms)
    for name, rec in _named(data, "points").items():
        if not isinstance(rec, list) or len(rec) != 2:
            raise ParseError(f"points.{name}: expected [x, y]")
        try:
            sc.points[name] = Point(K(rec[0]), K(rec[1]))
        except (ParseError, ValueError, TypeError) as exc:
            raise ParseError(f"points.{name}: {exc}") from None
    for name, rec in _named(data, "curves").items():
        text = rec if isinstance(rec, str) else rec.get("F") if isinstance(rec, dict) else None
        if not isinstance(text, str):
            raise ParseError(f"curves.{name}: expected a polynomial string")
        try:
            sc.curves[name] = parse_poly(K, text)
        except ParseError as exc:
            raise ParseError(f"curves.{name}: {exc}") from None
    for key, target in (("groups", sc.groups), ("sets", sc.sets)):
        for name, rec in _named(data, key).items():
            if not isinstance(rec, list) or not all(isinstance(n, str) for n in rec):
                raise ParseError(f"{key}.{name}: expected a list of names")
            target[name] = list(rec)
    opts = data.get("options", {})
    if not isinstance(opts, dict) or any(k not in DEFAULTS or not isinstance(v, int) for k, v in opts.items()):
        raise ParseError(f"options must map some of {sorted(DEFAULTS)} to integers")
    sc.options = dict(opts)
    for gname in sc.groups:
        sc.group(gname)
    for sname in sc.sets:
        sc.point_set(sname)
    return sc


def load_scene(path: str | Path) -> Scene:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read scene {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return scene_from_json(data)


# -- argument handling --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbitstab", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=SUBCOMMANDS)
    ap.add_argument("--scene", help="scene JSON file")
    ap.add_argument("--aut", action="append", default=[], help="automorphism name (repeat for a group)")
    ap.add_argument("--point", help="point name")
    ap.add_argument("--curve", help="curve name")
    ap.add_argument("--group", help="named generator list (stabilizer, orbit)")
    ap.add_argument("--set", dest="point_set", help="named point set (closure, membership)")
    ap.add_argument("--hat", action="store_true", help="saturate the point set under Galois first")
    ap.add_argument("--psi", help="automorphism tested by membership")
    ap.add_argument("--with-stabilizer", action="store_true", help="membership: compute the cyclic stabilizer first")
    ap.add_argument("-N", type=int)
    ap.add_argument("-L", type=int)
    ap.add_argument("-D", type=int)
    ap.add_argument("--lmax", type=int)
    ap.add_argument("-M", type=int)
    ap.add_argument("--bit-cap", type=int)
    ap.add_argument("--grid", default="default", help="'default' or a JSON file {type: [q, ...]}")
    ap.add_argument("--out", help="verify: write the full report here")
    return ap


def _opt(args, scene: Scene | None, key: str) -> int:
    flag = getattr(args, "bit_cap" if key == "bit_cap" else key)
    if flag is not None:
        return flag
    if scene is not None and key in scene.options:
        return scene.options[key]
    return DEFAULTS[key]


def _need(value, what: str):
    if value is None or value == []:
        raise ParseError(f"this command needs {what}")
    return value


def _orbit(args, sc: Scene):
    p = sc.point(_need(args.point, "--point"))
    gens = sc.group(args.group) if args.group else [sc.aut(a) for a in _need(args.aut, "--aut or --group")]
    if len(gens) == 1 and not args.group:
        return cyclic_orbit(gens[0], p, _opt(args, sc, "N"), _opt(args, sc, "bit_cap"))
    return group_orbit(gens, p, _opt(args, sc, "L"), _opt(args, sc, "bit_cap"))


def _sample(args, sc: Scene):
    if args.point_set:
        pts = sc.point_set(args.point_set)
        return point_set_sample(galois_saturate(pts) if args.hat else pts)
    return _orbit(args, sc)


def _descriptor(sc: Scene, name: str):
    return classify_canonical(sc.curve(name))


def run(args: argparse.Namespace) -> dict:
    cmd = args.command
    if cmd == "verify":
        spec = None
        if args.grid != "default":
            try:
                spec = json.loads(Path(args.grid).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ParseError(f"cannot read grid {args.grid}: {exc}") from None
        grid = verify_theorem_grid(spec)
        if args.out:
            Path(args.out).write_text(json.dumps(grid.to_json(full=True), indent=1, sort_keys=True) + "\n")
        print(grid.table(), file=sys.stderr)
        return {"command": "verify", "report": grid.to_json()}
    sc = load_scene(_need(args.scene, "--scene"))
    D = _opt(args, sc, "D")
    out: dict = {"command": cmd, "field": sc.field.describe()}
    if cmd == "orbit":
        out["orbit"] = _orbit(args, sc).to_json()
    elif cmd == "closure":
        sample = _sample(args, sc)
        out["trichotomy"] = trichotomy(sample, D).to_json()
        out["hat_vs_bar"] = hat_vs_bar(sample, D).to_json()
    elif cmd == "components":
        phi = sc.aut(_need(args.aut, "--aut")[0])
        p = sc.point(_need(args.point, "--point"))
        cc = component_cycle(phi, p, D, _opt(args, sc, "lmax"), _opt(args, sc, "N"), _opt(args, sc, "bit_cap"))
        out["components"] = cc.to_json()
    elif cmd == "classify":
        desc = _descriptor(sc, _need(args.curve, "--curve"))
        out["curve"] = desc.to_json()
        if desc.kind != "Other":
            grp = symmetry_group(desc)
            out["group"] = grp.to_json()
            out["algebraicity"] = algebraicity(grp)
    elif cmd == "isotropy":
        desc = _descriptor(sc, _need(args.curve, "--curve"))
        out["isotropy"] = isotropy(desc, sc.point(_need(args.point, "--point"))).to_json()
    elif cmd == "stabilizer":
        desc = _descriptor(sc, _need(args.curve, "--curve"))
        p = sc.point(_need(args.point, "--point"))
        gens = sc.group(args.group) if args.group else [sc.aut(a) for a in _need(args.aut, "--group or --aut")]
        if desc.kind in ("T1", "T2", "T3", "T4", "T5"):
            h = subgroup_normal_form(gens, desc, p)
            out["H"] = h.to_json()
            st = orbit_stabilizer(desc, p, h, _opt(args, sc, "L"), D)
        else:
            st = orbit_stabilizer(desc, p, gens, _opt(args, sc, "L"), D)
        out["stabilizer"] = st.to_json()
    elif cmd == "cyclic":
        phi = sc.aut(_need(args.aut, "--aut")[0])
        p = sc.point(_need(args.point, "--point"))
        N, lmax, cap = _opt(args, sc, "N"), _opt(args, sc, "lmax"), _opt(args, sc, "bit_cap")
        sample = cyclic_orbit(phi, p, N, cap)
        out["orbit"] = sample.to_json()
        rep = trichotomy(sample, D)
        if not rep.is_curve:
            raise HypothesisError(f"theorem hypothesis not met: orbit closure verdict is {rep.verdict}")
        out["trichotomy"] = rep.to_json()
        out["hat_vs_bar"] = hat_vs_bar(sample, D).to_json()
        out["components"] = component_cycle(phi, p, D, lmax, N, cap).to_json()
        out["stabilizer"] = cyclic_orbit_stabilizer(phi, p, N, D, lmax, bit_cap=cap).to_json()
    elif cmd == "membership":
        psi = sc.aut(_need(args.psi, "--psi"))
        sample = _sample(args, sc)
        stab = None
        if args.with_stabilizer and sample.mode == "cyclic":
            stab = cyclic_orbit_stabilizer(sample.generators[0], sample.base_point, sample.bound, D, _opt(args, sc, "lmax"))
            out["stabilizer_case"] = stab.case_tag
        out["membership"] = membership(psi, sample, stab).to_json()
    elif cmd == "ddeg":
        phi = sc.aut(_need(args.aut, "--aut")[0])
        out["ddeg"] = dynamical_degree(phi, _opt(args, sc, "M"), _opt(args, sc, "bit_cap")).to_json()
    return out


EXIT_CODES = ((ParseError, 1), (NotInGroupError, 2), (HypothesisError, 2), (SizeLimitError, 3))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = run(args)
    except OrbitStabError as exc:
        code = next((c for cls, c in EXIT_CODES if isinstance(exc, cls)), 1)
        print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit": code}, sort_keys=True))
        print(f"orbitstab: {exc}", file=sys.stderr)
        return code
    except ValueError as exc:
        print(json.dumps({"error": "ValueError", "message": str(exc), "exit": 1}, sort_keys=True))
        print(f"orbitstab: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
