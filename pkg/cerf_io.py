"""
Versioned JSON documents for cerf-forge.

Every file is an envelope

    {"format_version": "1.0.0", "kind": "<kind>", "payload": {...}}

with kind one of surface, morse, graphic1, trisection, decomposition.
Heights are exact rationals written as strings ("3/2", "-1", "4").
Parsing is strict: unknown fields, missing fields, inexact numbers and
ids that nothing creates are all rejected, each with its own code.

    parse_document(text)      -> DocumentEnvelope
    serialize_document(env)   -> canonical text (sorted keys, indent 2)
    load_document(path)       -> DocumentEnvelope
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from checks import CerfError
from family_one import (
    BirthDeath,
    CerfGraphic1,
    ElementaryInterval,
    HeightSwitch,
)
from family_two import (
    BirthMorseCross,
    ElementaryPolygon,
    PolygonDecomposition,
    Swallowtail,
    TripleSwitch,
)
from invariants import TrisectionDiagram
from morse_slice import Birth, Death, Merge, SlicedMorseFunction, Split
from ribbon_graphs import RibbonNeighborhood
from settings import FORMAT_VERSION, SUPPORTED_VERSIONS, get_logger
from surface_core import CutSystem, HomologyClass

logger = get_logger("cerf_io")

KINDS = ("surface", "morse", "graphic1", "trisection", "decomposition")

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class DocumentError(CerfError):
    code = "INVALID_PAYLOAD"


@dataclass(frozen=True)
class SurfaceDocument:
    genus: int
    cut_system: CutSystem | None = None


Payload = Union[
    SurfaceDocument, SlicedMorseFunction, CerfGraphic1, TrisectionDiagram, PolygonDecomposition
]


@dataclass(frozen=True)
class DocumentEnvelope:
    format_version: str
    kind: str
    payload: Payload


# ---------------------------------------------------------------------------
# Field readers
# ---------------------------------------------------------------------------


def _object(value: Any, where: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> dict:
    if not isinstance(value, dict):
        raise DocumentError(f"{where}: expected an object", code="INVALID_PAYLOAD")
    unknown = sorted(set(value) - set(required) - set(optional))
    if unknown:
        raise DocumentError(f"{where}: unknown field(s) {unknown}", code="UNKNOWN_FIELD")
    missing = [k for k in required if k not in value]
    if missing:
        raise DocumentError(f"{where}: missing field(s) {missing}", code="MISSING_FIELD")
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"{where}: expected a list", code="INVALID_PAYLOAD")
    return value


def _int(value: Any, where: str) -> int:
    # bool is an int subclass; true/false are not numbers here
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an exact integer, got {value!r}", code="BAD_NUMBER")
    return value


def _str(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise DocumentError(f"{where}: expected a string, got {value!r}", code="INVALID_PAYLOAD")
    return value


def _bool(value: Any, where: str) -> bool:
    if not isinstance(value, bool):
        raise DocumentError(f"{where}: expected true or false, got {value!r}", code="INVALID_PAYLOAD")
    return value


def _rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise DocumentError(f"{where}: expected a rational string like \"3/2\", got {value!r}", code="BAD_NUMBER")
    try:
        return Fraction(value)
    except ZeroDivisionError:
        raise DocumentError(f"{where}: zero denominator in {value!r}", code="BAD_NUMBER") from None


def _vector(value: Any, where: str, length: int | None = None) -> HomologyClass:
    coeffs = [_int(v, f"{where}[{i}]") for i, v in enumerate(_list(value, where))]
    if length is not None and len(coeffs) != length:
        raise DocumentError(
            f"{where}: class has {len(coeffs)} coefficients, lattice rank is {length}",
            code="INVALID_PAYLOAD",
        )
    return HomologyClass(tuple(coeffs))


def _cut_system(value: Any, where: str, genus: int | None = None) -> CutSystem:
    length = None if genus is None else 2 * genus
    rows = _list(value, where)
    return CutSystem(tuple(_vector(r, f"{where}[{i}]", length) for i, r in enumerate(rows)))


def _genus(value: Any, where: str) -> int:
    g = _int(value, where)
    if g < 0:
        raise DocumentError(f"{where}: genus must be non-negative, got {g}", code="INVALID_PAYLOAD")
    return g


# ---------------------------------------------------------------------------
# Payload decoders
# ---------------------------------------------------------------------------


def _morse(value: Any, where: str) -> SlicedMorseFunction:
    body = _object(value, where, ("events",))
    events = []
    for n, raw in enumerate(_list(body["events"], f"{where}.events")):
        at = f"{where}.events[{n}]"
        if not isinstance(raw, dict) or "kind" not in raw:
            raise DocumentError(f"{at}: event needs a kind", code="MISSING_FIELD")
        kind = raw["kind"]
        if kind == "birth":
            e = _object(raw, at, ("kind", "circle", "height"))
            events.append(Birth(_str(e["circle"], f"{at}.circle"), _rational(e["height"], f"{at}.height")))
        elif kind == "death":
            e = _object(raw, at, ("kind", "circle", "height"))
            events.append(Death(_str(e["circle"], f"{at}.circle"), _rational(e["height"], f"{at}.height")))
        elif kind == "merge":
            e = _object(raw, at, ("kind", "in", "out", "height"))
            inputs = tuple(_str(c, f"{at}.in") for c in _list(e["in"], f"{at}.in"))
            if len(inputs) != 2:
                raise DocumentError(f"{at}: a merge takes two circles", code="INVALID_PAYLOAD")
            events.append(Merge(inputs, _str(e["out"], f"{at}.out"), _rational(e["height"], f"{at}.height")))
        elif kind == "split":
            e = _object(raw, at, ("kind", "in", "out", "height"))
            outputs = tuple(_str(c, f"{at}.out") for c in _list(e["out"], f"{at}.out"))
            if len(outputs) != 2:
                raise DocumentError(f"{at}: a split gives two circles", code="INVALID_PAYLOAD")
            events.append(Split(_str(e["in"], f"{at}.in"), outputs, _rational(e["height"], f"{at}.height")))
        else:
            raise DocumentError(f"{at}: unknown event kind {kind!r}", code="INVALID_PAYLOAD")

    seen: dict[Fraction, int] = {}
    for n, e in enumerate(events):
        if e.height in seen:
            raise DocumentError(
                f"{where}: height {e.height} used by events {seen[e.height]} and {n}",
                code="DUPLICATE_HEIGHT",
            )
        seen[e.height] = n
    created = {c for e in events for c in e.created()}
    for n, e in enumerate(events):
        for c in e.consumed():
            if c not in created:
                raise DocumentError(f"{where}.events[{n}]: circle {c!r} is never created", code="DANGLING_ID")
    return SlicedMorseFunction(tuple(events))


def _neighborhood(value: Any, where: str) -> RibbonNeighborhood:
    body = _object(value, where, ("pairing", "offsets"))
    pairing = [_int(p, f"{where}.pairing") for p in _list(body["pairing"], f"{where}.pairing")]
    offsets = [_int(s, f"{where}.offsets") for s in _list(body["offsets"], f"{where}.offsets")]
    if len(pairing) != 4 * len(offsets):
        raise DocumentError(
            f"{where}: {len(pairing)} half-edges for {len(offsets)} four-valent vertices",
            code="INVALID_PAYLOAD",
        )
    dangling = [p for p in pairing if not 0 <= p < len(pairing)]
    if dangling:
        raise DocumentError(f"{where}: half-edges {dangling} do not exist", code="DANGLING_ID")
    return RibbonNeighborhood(tuple(pairing), tuple(offsets))


def _event1(value: Any, where: str, genus: int):
    if value is None:
        return None
    if not isinstance(value, dict) or "kind" not in value:
        raise DocumentError(f"{where}: event needs a kind", code="MISSING_FIELD")
    kind = value["kind"]
    if kind == "birth_death":
        body = _object(value, where, ("kind", "direction"))
        direction = _str(body["direction"], f"{where}.direction")
        if direction not in ("birth", "death"):
            raise DocumentError(f"{where}: direction must be birth or death", code="INVALID_PAYLOAD")
        return BirthDeath(direction)
    if kind != "height_switch":
        raise DocumentError(f"{where}: unknown event kind {kind!r}", code="INVALID_PAYLOAD")

    body = _object(
        value, where, ("kind", "points", "indices", "locale"), ("neighborhood", "slide", "classes")
    )
    points = tuple(_str(p, f"{where}.points") for p in _list(body["points"], f"{where}.points"))
    indices = tuple(_int(i, f"{where}.indices") for i in _list(body["indices"], f"{where}.indices"))
    if len(points) != 2 or len(indices) != 2:
        raise DocumentError(f"{where}: a height switch involves two points", code="INVALID_PAYLOAD")
    neighborhood = None
    if body.get("neighborhood") is not None:
        neighborhood = _neighborhood(body["neighborhood"], f"{where}.neighborhood")
    move = None
    if body.get("slide") is not None:
        raw = _list(body["slide"], f"{where}.slide")
        if len(raw) != 3:
            raise DocumentError(f"{where}.slide: expected [i, j, sign]", code="INVALID_PAYLOAD")
        i, j, s = (_int(v, f"{where}.slide") for v in raw)
        if not (0 <= i < genus and 0 <= j < genus):
            raise DocumentError(f"{where}.slide: curve index outside 0..{genus - 1}", code="DANGLING_ID")
        move = (i, j, s)
    before = after = None
    if body.get("classes") is not None:
        classes = _object(body["classes"], f"{where}.classes", ("before", "after"))
        before = _vector(classes["before"], f"{where}.classes.before", 2 * genus)
        after = _vector(classes["after"], f"{where}.classes.after", 2 * genus)
    return HeightSwitch(
        points, indices, _str(body["locale"], f"{where}.locale"), neighborhood, move, before, after
    )


def _segments(raw: Any, where: str, shared: SlicedMorseFunction, genus: int) -> tuple[ElementaryInterval, ...]:
    out = []
    for n, seg in enumerate(_list(raw, where)):
        at = f"{where}[{n}]"
        body = _object(seg, at, ("event",), ("start", "end"))
        start = _morse(body["start"], f"{at}.start") if "start" in body else shared
        end = _morse(body["end"], f"{at}.end") if "end" in body else shared
        out.append(ElementaryInterval(start, _event1(body["event"], f"{at}.event", genus), end))
    return tuple(out)


def _graphic1(value: Any) -> CerfGraphic1:
    body = _object(value, "payload", ("genus", "cyclic", "morse", "segments"), ("start_cut_system",))
    genus = _genus(body["genus"], "payload.genus")
    shared = _morse(body["morse"], "payload.morse")
    start = None
    if body.get("start_cut_system") is not None:
        start = _cut_system(body["start_cut_system"], "payload.start_cut_system", genus)
    segments = _segments(body["segments"], "payload.segments", shared, genus)
    return CerfGraphic1(genus, segments, _bool(body["cyclic"], "payload.cyclic"), start)


def _trisection(value: Any) -> TrisectionDiagram:
    body = _object(value, "payload", ("g", "k", "alpha", "beta", "gamma"))
    g = _genus(body["g"], "payload.g")
    k = _int(body["k"], "payload.k")
    systems = [_cut_system(body[name], f"payload.{name}", g) for name in ("alpha", "beta", "gamma")]
    return TrisectionDiagram(g, k, *systems)


def _surface(value: Any) -> SurfaceDocument:
    body = _object(value, "payload", ("genus",), ("cut_system",))
    genus = _genus(body["genus"], "payload.genus")
    cs = None
    if body.get("cut_system") is not None:
        cs = _cut_system(body["cut_system"], "payload.cut_system", genus)
    return SurfaceDocument(genus, cs)


def _center(value: Any, where: str):
    if value is None:
        return None
    if not isinstance(value, dict) or "kind" not in value:
        raise DocumentError(f"{where}: center needs a kind", code="MISSING_FIELD")
    kind = value["kind"]
    if kind == "swallowtail":
        _object(value, where, ("kind",))
        return Swallowtail()
    if kind == "birth_morse_cross":
        _object(value, where, ("kind",))
        return BirthMorseCross()
    if kind != "triple_switch":
        raise DocumentError(f"{where}: unknown center kind {kind!r}", code="INVALID_PAYLOAD")
    body = _object(value, where, ("kind", "points", "neighborhood"), ("local_classes",))
    points = tuple(_str(p, f"{where}.points") for p in _list(body["points"], f"{where}.points"))
    if len(points) != 3:
        raise DocumentError(f"{where}: a triple switch involves three points", code="INVALID_PAYLOAD")
    local = None
    if body.get("local_classes") is not None:
        raw = _list(body["local_classes"], f"{where}.local_classes")
        if len(raw) != 3:
            raise DocumentError(f"{where}: expected three local classes", code="INVALID_PAYLOAD")
        local = tuple(_vector(c, f"{where}.local_classes[{i}]", 2) for i, c in enumerate(raw))
    return TripleSwitch(_neighborhood(body["neighborhood"], f"{where}.neighborhood"), points, local)


def _edge_ref(value: Any, where: str, polygons: tuple[ElementaryPolygon, ...]) -> tuple[int, int]:
    raw = _list(value, where)
    if len(raw) != 2:
        raise DocumentError(f"{where}: expected [polygon, edge]", code="INVALID_PAYLOAD")
    p, e = (_int(v, where) for v in raw)
    if not (0 <= p < len(polygons) and 0 <= e < len(polygons[p].boundary)):
        raise DocumentError(f"{where}: no edge {e} on polygon {p}", code="DANGLING_ID")
    return p, e


def _decomposition(value: Any) -> PolygonDecomposition:
    body = _object(
        value, "payload", ("genus", "morse", "polygons", "gluings", "boundary"), ("start_cut_system",)
    )
    genus = _genus(body["genus"], "payload.genus")
    shared = _morse(body["morse"], "payload.morse")
    polygons = []
    for n, raw in enumerate(_list(body["polygons"], "payload.polygons")):
        at = f"payload.polygons[{n}]"
        poly = _object(raw, at, ("boundary",), ("center",))
        polygons.append(
            ElementaryPolygon(
                _segments(poly["boundary"], f"{at}.boundary", shared, genus),
                _center(poly.get("center"), f"{at}.center"),
            )
        )
    polygons_t = tuple(polygons)
    gluings = []
    for n, raw in enumerate(_list(body["gluings"], "payload.gluings")):
        pair = _list(raw, f"payload.gluings[{n}]")
        if len(pair) != 2:
            raise DocumentError(f"payload.gluings[{n}]: expected two edges", code="INVALID_PAYLOAD")
        gluings.append(
            (
                _edge_ref(pair[0], f"payload.gluings[{n}][0]", polygons_t),
                _edge_ref(pair[1], f"payload.gluings[{n}][1]", polygons_t),
            )
        )
    boundary = tuple(
        _edge_ref(raw, f"payload.boundary[{n}]", polygons_t)
        for n, raw in enumerate(_list(body["boundary"], "payload.boundary"))
    )
    start = None
    if body.get("start_cut_system") is not None:
        start = _cut_system(body["start_cut_system"], "payload.start_cut_system", genus)
    return PolygonDecomposition(genus, polygons_t, tuple(gluings), boundary, start)


_DECODERS = {
    "surface": _surface,
    "morse": lambda value: _morse(value, "payload"),
    "graphic1": _graphic1,
    "trisection": _trisection,
    "decomposition": _decomposition,
}


def parse_document(text: str) -> DocumentEnvelope:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}", code="MALFORMED_JSON") from exc
    body = _object(data, "document", ("format_version", "kind", "payload"))
    version = body["format_version"]
    if version not in SUPPORTED_VERSIONS:
        raise DocumentError(f"unsupported format_version {version!r}", code="UNKNOWN_VERSION")
    kind = body["kind"]
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}", code="UNKNOWN_KIND")
    payload = _DECODERS[kind](body["payload"])
    return DocumentEnvelope(version, kind, payload)


def decode_document(data: bytes) -> DocumentEnvelope:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DocumentError(f"document is not UTF-8: {exc}", code="INVALID_ENCODING") from exc
    return parse_document(text)


def load_document(path: str | Path) -> DocumentEnvelope:
    envelope = decode_document(Path(path).read_bytes())
    logger.info("loaded %s document from %s", envelope.kind, path)
    return envelope


# ---------------------------------------------------------------------------
# Encoders
# ---------------------------------------------------------------------------


def encode_morse(f: SlicedMorseFunction) -> dict:
    events = []
    for e in f.events:
        if isinstance(e, (Birth, Death)):
            events.append({"kind": e.kind, "circle": e.circle, "height": str(e.height)})
        elif isinstance(e, Merge):
            events.append({"kind": "merge", "in": list(e.inputs), "out": e.output, "height": str(e.height)})
        else:
            events.append({"kind": "split", "in": e.input, "out": list(e.outputs), "height": str(e.height)})
    return {"events": events}


def encode_event1(event) -> dict | None:
    if event is None:
        return None
    if isinstance(event, BirthDeath):
        return {"kind": "birth_death", "direction": event.direction}
    out: dict = {
        "kind": "height_switch",
        "points": list(event.points),
        "indices": list(event.indices),
        "locale": event.locale,
    }
    if event.neighborhood is not None:
        out["neighborhood"] = event.neighborhood.as_dict()
    if event.slide is not None:
        out["slide"] = list(event.slide)
    if event.before is not None or event.after is not None:
        out["classes"] = {"before": list(event.before.coeffs), "after": list(event.after.coeffs)}
    return out


def _encode_segments(segments, shared: SlicedMorseFunction) -> list[dict]:
    out = []
    for seg in segments:
        item: dict = {"event": encode_event1(seg.event)}
        if seg.start != shared:
            item["start"] = encode_morse(seg.start)
        if seg.end != shared:
            item["end"] = encode_morse(seg.end)
        out.append(item)
    return out


def _shared_function(segments) -> SlicedMorseFunction:
    return segments[0].start if segments else SlicedMorseFunction(())


def encode_graphic1(gr: CerfGraphic1) -> dict:
    shared = _shared_function(gr.segments)
    out = {
        "genus": gr.genus,
        "cyclic": gr.cyclic,
        "morse": encode_morse(shared),
        "segments": _encode_segments(gr.segments, shared),
    }
    if gr.start_cut_system is not None:
        out["start_cut_system"] = gr.start_cut_system.rows()
    return out


def encode_trisection(T: TrisectionDiagram) -> dict:
    return {
        "g": T.g,
        "k": T.k,
        "alpha": T.alpha.rows(),
        "beta": T.beta.rows(),
        "gamma": T.gamma.rows(),
    }


def _encode_center(center) -> dict | None:
    if center is None:
        return None
    if isinstance(center, TripleSwitch):
        out = {
            "kind": center.kind,
            "points": list(center.points),
            "neighborhood": center.neighborhood.as_dict(),
        }
        if center.local_classes is not None:
            out["local_classes"] = [list(c.coeffs) for c in center.local_classes]
        return out
    return {"kind": center.kind}


def encode_decomposition(D: PolygonDecomposition) -> dict:
    edges = [seg for P in D.polygons for seg in P.boundary]
    shared = _shared_function(edges)
    out = {
        "genus": D.genus,
        "morse": encode_morse(shared),
        "polygons": [
            {"boundary": _encode_segments(P.boundary, shared), "center": _encode_center(P.center)}
            for P in D.polygons
        ],
        "gluings": [[list(a), list(b)] for a, b in D.gluings],
        "boundary": [list(ref) for ref in D.boundary],
    }
    if D.start_cut_system is not None:
        out["start_cut_system"] = D.start_cut_system.rows()
    return out


def encode_surface(doc: SurfaceDocument) -> dict:
    out: dict = {"genus": doc.genus}
    if doc.cut_system is not None:
        out["cut_system"] = doc.cut_system.rows()
    return out


_ENCODERS = {
    "surface": encode_surface,
    "morse": encode_morse,
    "graphic1": encode_graphic1,
    "trisection": encode_trisection,
    "decomposition": encode_decomposition,
}


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def make_envelope(kind: str, payload: Payload) -> DocumentEnvelope:
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}", code="UNKNOWN_KIND")
    return DocumentEnvelope(FORMAT_VERSION, kind, payload)


def serialize_document(envelope: DocumentEnvelope) -> str:
    if envelope.kind not in _ENCODERS:
        raise DocumentError(f"unknown document kind {envelope.kind!r}", code="UNKNOWN_KIND")
    return canonical_json(
        {
            "format_version": envelope.format_version,
            "kind": envelope.kind,
            "payload": _ENCODERS[envelope.kind](envelope.payload),
        }
    )
