"""Built-in real groups and JSON group specs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Tuple, Union

from .realform import CartanClass, RealFormError, attach_involution, classify_cartans
from .rootsys import RootDatum, build_root_datum

PRESET_IDS = ("su2", "sl2r", "su11", "a1a1", "su21")


@dataclass(frozen=True)
class GroupPreset:
    id: str
    name: str
    datum: RootDatum
    cartans: Tuple[CartanClass, ...]

    def cartan(self, label: str) -> CartanClass:
        for c in self.cartans:
            if c.label == label:
                return c
        raise KeyError(f"unknown Cartan class {label!r} for {self.id}")

    @property
    def fundamental(self) -> CartanClass:
        return self.cartans[0]


def _rank_one(id_: str, name: str, compact_only: bool) -> GroupPreset:
    datum = build_root_datum([[2]])
    if compact_only:
        return GroupPreset(id_, name, datum, (attach_involution(datum, [[-1]], {0: "compact"}, "compact"),))
    return GroupPreset(
        id_,
        name,
        datum,
        (
            attach_involution(datum, [[-1]], {0: "noncompact"}, "compact"),
            attach_involution(datum, [[1]], {}, "split"),
        ),
    )


def _su21() -> GroupPreset:
    datum = build_root_datum([[2, -1], [-1, 2]])
    compact = attach_involution(
        datum,
        [[-1, 0], [0, -1]],
        {"1,0": "compact", "0,1": "noncompact", "1,1": "noncompact"},
        "compact",
    )
    # s_{alpha_2} composed with -1
    split = attach_involution(datum, [[-1, 0], [-1, 1]], {}, "split")
    return GroupPreset("su21", "su(2,1)", datum, (compact, split))


def _a1a1() -> GroupPreset:
    # sl(2,C) as a real group: tau exchanges the two factors up to sign
    datum = build_root_datum([[2, 0], [0, 2]])
    fundamental = attach_involution(datum, [[0, -1], [-1, 0]], {}, "fundamental")
    return GroupPreset("a1a1", "sl(2,C) viewed as a real group", datum, (fundamental,))


_BUILDERS = {
    "su2": lambda: _rank_one("su2", "su(2)", True),
    "sl2r": lambda: _rank_one("sl2r", "sl(2,R)", False),
    "su11": lambda: _rank_one("su11", "su(1,1)", False),
    "a1a1": _a1a1,
    "su21": _su21,
}

_CACHE: Dict[str, GroupPreset] = {}


def preset(id_: str) -> GroupPreset:
    if id_ not in _BUILDERS:
        raise KeyError(f"unknown preset {id_!r}")
    if id_ not in _CACHE:
        _CACHE[id_] = _BUILDERS[id_]()
    return _CACHE[id_]


def all_presets() -> Tuple[GroupPreset, ...]:
    return tuple(preset(i) for i in PRESET_IDS)


def group_from_spec(spec: Union[dict, str, Path]) -> GroupPreset:
    """Load ``{"preset": id}`` or ``{"cartan_matrix", "tau", "grading", "name"}``.

    A custom spec gives the fundamental Cartan; the remaining classes come
    from Cayley-transform classification.
    """
    if isinstance(spec, (str, Path)):
        spec = json.loads(Path(spec).read_text(encoding="utf-8"))
    if "preset" in spec:
        return preset(spec["preset"])
    datum = build_root_datum(spec["cartan_matrix"])
    fundamental = attach_involution(datum, spec["tau"], spec.get("grading", {}), "fundamental")
    name = spec.get("name", "custom")
    try:
        cartans = classify_cartans(fundamental)
    except RealFormError:
        cartans = [fundamental]
    return GroupPreset(name, name, datum, tuple(cartans))
