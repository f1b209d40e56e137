"""JSON reading and writing.  All output uses sorted keys and stable element order."""
from __future__ import annotations

import json
import re
from typing import Any

from .biframe import Biframe, BiframeHom, congruence_biframe, validate_bihom, validate_biframe
from .category import Diagram
from .congruence import Congruence, classes_label
from .errors import InvalidDiagram, InvalidSpace, Str0dError
from .lattice import Frame, boolean, chain, frame_from_pairs
from .morphisms import FrameHom, hom_from_labels
from .skula import FiniteSpace, make_space, sierpinski, skula

# frames ---------------------------------------------------------------------------


def builtin_frame(name: str) -> Frame:
    """``1``, ``2``, ``chainN`` and ``2^k``."""
    if name in ("1", "2"):
        return chain(int(name))
    m = re.fullmatch(r"chain(\d+)", name)
    if m:
        return chain(int(m.group(1)))
    m = re.fullmatch(r"2\^(\d+)", name)
    if m:
        return boolean(int(m.group(1)))
    raise KeyError(f"unknown frame name {name!r}")


def covers(F: Frame) -> list[tuple[int, int]]:
    out = []
    for y in range(F.n):
        below = [x for x in range(F.n) if x != y and F.leq(x, y)]
        for x in below:
            if not any(z != x and F.leq(x, z) for z in below):
                out.append((x, y))
    return out


def frame_to_json(F: Frame) -> dict[str, Any]:
    return {
        "name": F.name or "",
        "elements": list(F.labels),
        "order": [[F.labels[x], F.labels[y]] for x, y in covers(F)],
    }


def frame_from_json(data) -> Frame:
    if isinstance(data, str):
        return builtin_frame(data)
    elements = [str(e) for e in data["elements"]]
    pairs = [(str(x), str(y)) for x, y in data.get("order", [])]
    return frame_from_pairs(elements, pairs, data.get("name") or None)


def hom_to_json(f: FrameHom) -> dict[str, Any]:
    return {
        "source": frame_to_json(f.source),
        "target": frame_to_json(f.target),
        "map": {f.source.labels[x]: f.target.labels[y] for x, y in enumerate(f.table)},
    }


def hom_from_json(data) -> FrameHom:
    L = frame_from_json(data["source"])
    M = frame_from_json(data["target"])
    return hom_from_labels(L, M, {str(k): str(v) for k, v in data["map"].items()})


def congruence_to_json(C: Congruence) -> dict[str, Any]:
    F = C.frame
    return {
        "frame": F.name or "",
        "nucleus": {F.labels[x]: F.labels[j] for x, j in enumerate(C.nucleus)},
        "classes": [[F.labels[x] for x in cls] for cls in C.classes()],
        "label": classes_label(C),
    }


# biframes --------------------------------------------------------------------------


def biframe_to_json(B: Biframe) -> dict[str, Any]:
    T = B.total
    return {
        "frame": frame_to_json(T),
        "part1": [T.labels[x] for x in sorted(B.part1)],
        "part2": [T.labels[x] for x in sorted(B.part2)],
    }


def biframe_from_json(data) -> Biframe:
    """A biframe object, or one of the names ``C(<frame>)`` and ``Sk(sierpinski)``."""
    if isinstance(data, str):
        m = re.fullmatch(r"C\((.+)\)", data)
        if m:
            return congruence_biframe(frame_from_json(m.group(1)))
        if data == "Sk(sierpinski)":
            return skula(sierpinski())
        raise KeyError(f"unknown biframe name {data!r}")
    T = frame_from_json(data["frame"])
    try:
        p1 = [T.index[str(x)] for x in data["part1"]]
        p2 = [T.index[str(x)] for x in data["part2"]]
    except KeyError as exc:
        raise Str0dError(f"unknown element {exc.args[0]!r} in biframe part") from None
    return validate_biframe(T, p1, p2, T.name)


def bihom_map_to_json(h: BiframeHom) -> dict[str, str]:
    S, T = h.source.total, h.target.total
    return {S.labels[x]: T.labels[y] for x, y in enumerate(h.table)}


# spaces ----------------------------------------------------------------------------


def space_to_json(X: FiniteSpace) -> dict[str, Any]:
    opens = sorted(X.opens, key=lambda s: (bin(s).count("1"), s))
    return {
        "points": list(X.points),
        "opens": [[X.points[i] for i in range(X.n) if U >> i & 1] for U in opens],
    }


def space_from_json(data) -> FiniteSpace:
    if not isinstance(data, dict) or "points" not in data or "opens" not in data:
        raise InvalidSpace("space JSON needs 'points' and 'opens'")
    return make_space(data["points"], data["opens"])


# diagrams --------------------------------------------------------------------------


def diagram_from_json(data) -> Diagram:
    objects = {str(k): biframe_from_json(v) for k, v in data.get("objects", {}).items()}
    arrows = []
    for arrow in data.get("arrows", []):
        src, dst = arrow["from"], arrow["to"]
        if src not in objects or dst not in objects:
            raise InvalidDiagram(f"arrow {arrow.get('name')} has an unknown endpoint")
        A, B = objects[src], objects[dst]
        try:
            table = [B.total.index[str(arrow["map"][lab])] for lab in A.total.labels]
        except KeyError as exc:
            raise InvalidDiagram(f"arrow map is missing or has an unknown label: {exc.args[0]!r}") from None
        arrows.append((str(arrow["name"]), src, dst, validate_bihom(A, B, table)))
    return Diagram(objects, arrows)


def diagram_to_json(D: Diagram) -> dict[str, Any]:
    return {
        "objects": {X: biframe_to_json(M) for X, M in D.objects.items()},
        "arrows": [
            {"name": name, "from": src, "to": dst, "map": bihom_map_to_json(h)}
            for name, src, dst, h in D.arrows
        ],
    }


# generic ---------------------------------------------------------------------------


def detect_kind(data) -> str:
    if isinstance(data, dict):
        if "objects" in data:
            return "diagram"
        if "points" in data:
            return "space"
        if "part1" in data:
            return "biframe"
        if "source" in data:
            return "hom"
        if "elements" in data:
            return "frame"
    raise Str0dError("unrecognised JSON document")


def load(kind: str | None, data):
    kind = kind or detect_kind(data)
    reader = {
        "frame": frame_from_json,
        "hom": hom_from_json,
        "biframe": biframe_from_json,
        "space": space_from_json,
        "diagram": diagram_from_json,
    }[kind]
    return kind, reader(data)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
