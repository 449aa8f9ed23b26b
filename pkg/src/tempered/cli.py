"""Command-line front end: ``tempered <subcommand> [flags]``.

JSON goes to stdout with sorted keys; rationals print as ``"p/q"`` and
weights as comma-joined rationals in simple-root coordinates.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable, List, Optional

from . import _exact as ex
from .checks import run_checks
from .orbits import (
    all_configs,
    count_open_orbits,
    orbit_report,
    parabolic_subset,
    realization_configs,
    t_simple_roots,
)
from .presets import PRESET_IDS, GroupPreset, group_from_spec, preset
from .realform import cuspidal_parabolic
from .rootsys import TorusPoint
from .series import (
    TRIVIAL,
    SeriesError,
    bott_borel_weil,
    character_at,
    discrete_series_param,
    hseries_param,
    realize,
    series_catalog,
)


class UsageError(Exception):
    pass


def _roots(roots: Optional[Iterable]) -> Optional[List[str]]:
    if roots is None:
        return None
    return sorted(ex.fmt_vector(r) for r in roots)


def _parse_flag(text: Optional[str]) -> List[int]:
    """``"a1,a2"`` or ``"1,2"`` (1-based) to 0-based indices."""
    if not text:
        return []
    out = []
    for part in text.split(","):
        part = part.strip().lower().lstrip("a")
        if not part.isdigit() or int(part) < 1:
            raise UsageError(f"bad flag entry {text!r}")
        out.append(int(part) - 1)
    return out


def _floats(text: Optional[str]) -> Optional[List[float]]:
    if text is None:
        return None
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(f"bad real vector {text!r}") from exc


def _group(args) -> GroupPreset:
    if not args.group:
        raise UsageError("--group is required")
    if args.group.endswith(".json"):
        path = Path(args.group)
        if not path.exists():
            raise UsageError(f"no such group spec {args.group!r}")
        return group_from_spec(path)
    if args.group not in PRESET_IDS:
        raise UsageError(f"unknown preset {args.group!r}")
    return preset(args.group)


def _cartan(g: GroupPreset, label: Optional[str]):
    if label is None:
        return g.fundamental
    try:
        return g.cartan(label)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc


def cmd_groups(args):
    return list(PRESET_IDS)


def cmd_cartans(args):
    g = _group(args)
    return [
        {
            "label": c.label,
            "dim_t": c.dim_t,
            "dim_a": c.dim_a,
            "tau": [ex.fmt_vector(row) for row in c.tau],
            "compact": _roots(c.compact_roots),
            "noncompact": _roots(c.noncompact_roots),
            "real": _roots(c.real_roots),
            "complex": _roots(c.complex_roots),
        }
        for c in g.cartans
    ]


def cmd_orbit_report(args):
    g = _group(args)
    cartans = [_cartan(g, args.cartan)] if args.cartan else list(g.cartans)
    flag = None if args.flag is None else tuple(sorted(set(_parse_flag(args.flag))))
    rows = []
    for c in cartans:
        for cfg in all_configs(c):
            if flag is not None and cfg.subset.phi != flag:
                continue
            r = orbit_report(cfg)
            rows.append(
                {
                    "cartan": c.label,
                    "w": c.weyl.word_label(cfg.w),
                    "flag": cfg.subset.label,
                    "codim": r.codim,
                    "open": r.is_open,
                    "measurable": r.is_measurable,
                    "integrable": r.is_integrable,
                    "partially_complex": r.is_partially_complex,
                    "flag_type": r.is_flag_type,
                    "delta_x": ex.fmt_vector(r.delta_x),
                    "normalizer_roots": _roots(r.normalizer_roots),
                }
            )
    return rows


def cmd_open_orbits(args):
    g = _group(args)
    c = _cartan(g, args.cartan)
    return {"count": count_open_orbits(c, parabolic_subset(c.datum, _parse_flag(args.flag)))}


def cmd_bbw(args):
    g = _group(args)
    c = _cartan(g, args.cartan)
    res = bott_borel_weil(c, _parse_flag(args.flag), ex.parse_vector(args.beta or ""))
    return {
        "vanishes": res.vanishes,
        "q0": res.q0,
        "nu": None if res.nu is None else ex.fmt_vector(res.nu),
        "dimension": None if res.dimension is None else ex.fmt_rational(res.dimension),
    }


def _param(c, nu, sigma):
    if c.dim_a == 0:
        if sigma and any(sigma):
            raise SeriesError("sigma must vanish on a compact Cartan")
        return discrete_series_param(c, nu)
    return hseries_param(c, TRIVIAL, nu, sigma)


def cmd_character(args):
    g = _group(args)
    c = _cartan(g, args.cartan)
    param = _param(c, ex.parse_vector(args.nu or ""), ex.parse_vector(args.sigma or ""))
    at = _floats(args.at)
    if at is None:
        raise UsageError("--at is required")
    value = character_at(param, TorusPoint(tuple(at)), _floats(args.a))
    return {"value_re": value.real, "value_im": value.imag}


def cmd_realize(args):
    g = _group(args)
    c = _cartan(g, args.cartan)
    phi_t = _parse_flag(args.flag)
    pi_t = t_simple_roots(c)
    if any(i >= len(pi_t) for i in phi_t):
        raise UsageError("--flag names a t-root that does not exist")
    cfg = realization_configs(c, cuspidal_parabolic(c), phi_t)
    res = realize(cfg, TRIVIAL, ex.parse_vector(args.beta or ""), ex.parse_vector(args.sigma or ""))
    return {
        "vanishes": res.vanishes,
        "degree": res.degree,
        "series": None if res.param is None else res.param.series_kind,
        "nu_plus_rho": ex.fmt_vector(res.nu_plus_rho),
    }


def cmd_catalog(args):
    g = _group(args)
    return [
        {
            "label": f.label,
            "series_kind": f.series_kind,
            "dim_t": f.dim_t,
            "dim_a": f.dim_a,
            "continuous_dims": f.continuous_dims,
            "regularity_roots": _roots(f.regularity_roots),
            "lattice": f.lattice,
            "disjoint_from": list(f.disjoint_from),
        }
        for f in series_catalog(g.cartans)
    ]


def cmd_check(args):
    results = run_checks(quadrature=args.quadrature)
    rows = [
        {"check": r.name, "group": r.group, "passed": r.passed, "detail": r.detail} for r in results
    ]
    return rows, all(r.passed for r in results)


COMMANDS = {
    "groups": cmd_groups,
    "cartans": cmd_cartans,
    "orbit-report": cmd_orbit_report,
    "open-orbits": cmd_open_orbits,
    "bbw": cmd_bbw,
    "character": cmd_character,
    "realize": cmd_realize,
    "catalog": cmd_catalog,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tempered", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--group", help="preset id or path to a group-spec .json")
    parser.add_argument("--cartan", help="Cartan class label (default: fundamental)")
    parser.add_argument("--flag", help="simple roots, e.g. a1,a2 or 1,2")
    parser.add_argument("--beta", help="highest weight, comma-separated rationals")
    parser.add_argument("--nu", help="t-parameter, comma-separated rationals")
    parser.add_argument("--sigma", help="a-parameter, comma-separated rationals")
    parser.add_argument("--at", help="torus point, comma-separated reals")
    parser.add_argument("--a", help="vector part of the evaluation point")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--quadrature", type=int, default=4096)
    return parser


def _text(value) -> str:
    if isinstance(value, dict):
        width = max((len(k) for k in value), default=0)
        return "\n".join(f"{k:<{width}}  {_scalar(value[k])}" for k in sorted(value))
    if isinstance(value, list):
        return "\n".join(
            "  ".join(f"{k}={_scalar(v[k])}" for k in sorted(v)) if isinstance(v, dict) else _scalar(v)
            for v in value
        )
    return _scalar(value)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return ";".join(_scalar(x) for x in v) or "-"
    return str(v)


def emit(command: str, result, fmt: str, out) -> None:
    if fmt == "text":
        print(_text(result), file=out)
    elif command == "orbit-report":
        for row in result:
            print(json.dumps(row, sort_keys=True), file=out)
    else:
        print(json.dumps(result, sort_keys=True), file=out)


VALUE_FLAGS = ("--beta", "--nu", "--sigma", "--at", "--a")


def _glue_negative_values(argv: List[str]) -> List[str]:
    """Attach values such as ``-3/2`` to their flag so argparse keeps them."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.command](args)
        ok = True
        if args.command == "check":
            result, ok = result
        emit(args.command, result, args.format, out)
        return 0 if ok else 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=err)
        return 1


def main() -> None:
    sys.exit(run())
