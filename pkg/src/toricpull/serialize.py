"""JSON documents for cones, fans, Cartier data and ideals.

Integer vectors are JSON arrays; rationals are ``"p/q"`` strings (``"p"``
when integral).  Every ``dump`` function returns plain dicts/lists built in a
fixed order, so :func:`dumps` output is byte-for-byte reproducible.
"""

import json

from .cartier import CartierData, MonomialIdealData
from .exactq import format_rat, parse_rat
from .fans import Cone, Fan, cone_from_rays
from .pulling import ConicalSubdivision


class DocumentError(ValueError):
    """A JSON document does not have the expected shape."""


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def int_vector(v) -> list:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise DocumentError(f"expected an integer array, got {v!r}")
    return v


def rat_vector(v) -> list:
    return [format_rat(x) for x in v]


def _require(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"missing key {key!r}")
    return doc[key]


def cone_doc(c: Cone) -> dict:
    return {"rays": [list(r) for r in c.rays]}


def fan_doc(fan: Fan, heights=None, labels=None) -> dict:
    cones = []
    for i, c in enumerate(fan.cones):
        entry = cone_doc(c)
        if labels is not None:
            entry["label"] = labels[i]
        cones.append(entry)
    doc = {"rank": fan.ambient, "cones": cones}
    if heights is not None:
        doc["ray_heights"] = [
            {"ray": list(r), "height": format_rat(heights[r])} for r in sorted(heights, reverse=True)
        ]
    return doc


def subdivision_doc(sub: ConicalSubdivision) -> dict:
    doc = fan_doc(sub.fan, sub.ray_heights)
    if sub.config is not None:
        a, c = sub.config.hyperplane
        doc["hyperplane"] = {"normal": list(a), "offset": c}
    return doc


def _cone_list(doc) -> list:
    rank = _require(doc, "rank")
    if not isinstance(rank, int) or rank < 1:
        raise DocumentError(f"bad rank {rank!r}")
    if "cones" in doc:
        raw = [_require(c, "rays") for c in doc["cones"]]
    else:
        raw = [_require(doc, "rays")]
    cones = []
    for rays in raw:
        rays = [int_vector(r) for r in rays]
        if any(len(r) != rank for r in rays):
            raise DocumentError("ray length does not match rank")
        cones.append(cone_from_rays(rays, rank))
    return cones


def load_fan(doc) -> Fan:
    """A fan from a fan document, or the one-cone fan of a cone document."""
    cones = _cone_list(doc)
    return Fan.from_cones(cones, doc["rank"])


def load_cone(doc) -> Cone:
    cones = _cone_list(doc)
    if len(cones) != 1:
        raise DocumentError(f"expected a single cone, got {len(cones)}")
    return cones[0]


def load_heights(doc) -> dict:
    entries = _require(doc, "ray_heights")
    return {tuple(int_vector(_require(e, "ray"))): parse_rat(_require(e, "height")) for e in entries}


def load_subdivision(doc) -> ConicalSubdivision:
    return ConicalSubdivision(load_fan(doc), load_heights(doc))


def cartier_doc(cd: CartierData, method: str) -> dict:
    return {
        "rank": cd.fan.ambient,
        "method": method,
        "multiplier": cd.multiplier,
        "cones": [cone_doc(c) for c in cd.fan.cones],
        "cartier": {str(i): list(m) for i, m in enumerate(cd.vectors)},
    }


def load_cartier(doc) -> CartierData:
    cones = _cone_list(doc)
    table = _require(doc, "cartier")
    vectors = [tuple(int_vector(_require(table, str(i)))) for i in range(len(cones))]
    pairs = sorted(zip(cones, vectors), key=lambda p: p[0].rays)
    fan = Fan(tuple(c for c, _ in pairs), doc["rank"])
    return CartierData(fan, tuple(m for _, m in pairs), int(doc.get("multiplier", 1)))


def ideal_doc(ideal: MonomialIdealData) -> dict:
    return {
        "ambient_rays": [list(r) for r in ideal.ambient.rays],
        "generators": [list(g) for g in ideal.generators],
        "closure": ideal.closure,
    }


def load_ideal(doc) -> MonomialIdealData:
    rays = [int_vector(r) for r in _require(doc, "ambient_rays")]
    gens = [tuple(int_vector(g)) for g in _require(doc, "generators")]
    if not rays:
        raise DocumentError("ambient_rays is empty")
    closure = doc.get("closure", True)
    if not isinstance(closure, bool):
        raise DocumentError("closure must be a boolean")
    return MonomialIdealData(cone_from_rays(rays), tuple(sorted(set(gens))), closure)


def load_ideals(doc) -> list:
    """``(tau, ideal)`` pairs from an ``{"ideals": [...]}`` document or a single ideal."""
    if isinstance(doc, dict) and "ideals" in doc:
        items = doc["ideals"]
    else:
        items = [doc]
    out = []
    for item in items:
        ideal = load_ideal(item)
        out.append((ideal.ambient, ideal))
    return out
