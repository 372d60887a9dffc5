"""JSON encoding of points, maps, deck groups and reports.

Complex numbers are ``[re, im]`` pairs; points are ``{"z": .., "w": ..}``;
Moebius maps are ``{"a": .., "b": .., "c": .., "d": ..}`` in canonical form.
A bicritical map is either ``{"pre": .., "d": .., "post": ..}`` or
``{"normal_form": {"alpha": .., "beta": .., "gamma": .., "delta": .., "d": ..}}``.
"""

from __future__ import annotations

from typing import Any

from . import bicritical as bc
from .classify import ClassificationReport
from .deck import DeckGroup
from .sphere import MoebiusMap, SpherePoint, normalize_point


def parse_complex(text: str) -> complex:
    """Parse ``3``, ``-1.5``, ``i``, ``-2i``, ``1+2i`` or ``1-i`` (``j`` also accepted)."""
    s = text.strip().replace(" ", "").replace("i", "j")
    if s.endswith("j") and (len(s) == 1 or s[-2] in "+-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"cannot parse complex number {text!r}") from None


def complex_from_json(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex number must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return parse_complex(value)
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    raise ValueError(f"cannot read a complex number from {value!r}")


def complex_to_json(x: complex) -> list[float]:
    x = complex(x)
    # normalize -0.0 so output bytes do not depend on rounding signs of zero
    return [x.real + 0.0, x.imag + 0.0]


def point_to_json(p: SpherePoint) -> dict:
    return {"z": complex_to_json(p.z), "w": complex_to_json(p.w)}


def point_from_json(obj: dict) -> SpherePoint:
    return normalize_point(complex_from_json(obj["z"]), complex_from_json(obj["w"]))


def moebius_to_json(m: MoebiusMap) -> dict:
    return {k: complex_to_json(v) for k, v in zip("abcd", m.entries)}


def moebius_from_json(obj: dict) -> MoebiusMap:
    missing = [k for k in "abcd" if k not in obj]
    if missing:
        raise ValueError(f"Moebius map is missing field(s) {', '.join(missing)}")
    return MoebiusMap(*(complex_from_json(obj[k]) for k in "abcd"))


def map_to_json(f: bc.BicriticalMap) -> dict:
    return {"pre": moebius_to_json(f.pre), "d": f.degree, "post": moebius_to_json(f.post)}


def map_from_json(obj: dict) -> bc.BicriticalMap:
    if "normal_form" in obj:
        nf = obj["normal_form"]
        missing = [k for k in ("alpha", "beta", "gamma", "delta", "d") if k not in nf]
        if missing:
            raise ValueError(f"normal_form is missing field(s) {', '.join(missing)}")
        return bc.from_normal_form(*(complex_from_json(nf[k]) for k in ("alpha", "beta", "gamma", "delta")),
                                   int(nf["d"]))
    missing = [k for k in ("pre", "d", "post") if k not in obj]
    if missing:
        raise ValueError(f"map is missing field(s) {', '.join(missing)}")
    return bc.BicriticalMap(moebius_from_json(obj["pre"]), int(obj["d"]), moebius_from_json(obj["post"]))


def deck_group_to_json(g: DeckGroup) -> dict:
    return {
        "k": g.k,
        "order": g.order,
        "group_type": str(g.group_type),
        "elements": [moebius_to_json(m) for m in g.elements],
        "generators": [moebius_to_json(m) for m in g.generators],
        "new_elements_count": len(g.new_elements),
    }


def report_to_json(r: ClassificationReport) -> dict:
    return {
        "degree": r.degree,
        "power_map": r.power_map,
        "critically_coalescing": r.critically_coalescing,
        "degenerate": r.degenerate,
        "levels": [{"k": lv.k, "order": lv.order, "type": str(lv.group_type)} for lv in r.levels],
        "verdict": "consistent" if r.consistent else {"violation": r.verdict},
    }
