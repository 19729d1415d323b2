"""JSON schemas shared by the CLI and the library.

Rationals are always serialized as strings "p/q" or "p".  Arrangement files
carry their structured spec (offset tables) when they have one; hyperplanes
are written out for readability and re-derived plus cross-checked on load.
"""

from __future__ import annotations

import json
from typing import Sequence

from .arrangement import (
    Arrangement,
    DeformedBraidSpec,
    TypeBSpec,
    build_deformed_braid,
    build_generic,
    build_type_b,
)
from .faces import Face
from .rationals import rat, rat_str, vec, vec_str


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def compact(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _pair_key(pair: tuple[int, int]) -> str:
    return f"{pair[0]},{pair[1]}"


def _parse_pair(key: str) -> tuple[int, int]:
    i, j = key.split(",")
    return int(i), int(j)


def _offsets_json(table) -> dict:
    return {_pair_key(pair): [rat_str(v) for v in vals] for pair, vals in table}


def _hyperplanes_json(A: Arrangement) -> list[dict]:
    return [
        {"normal": vec_str(h.normal), "offset": rat_str(h.offset)}
        for h in A.hyperplanes
    ]


def arrangement_to_json(A: Arrangement) -> dict:
    data = {
        "ambient_dim": A.ambient_dim,
        "kind": A.kind,
        "hyperplanes": _hyperplanes_json(A),
    }
    if A.kind == "deformed_braid":
        spec: DeformedBraidSpec = A.spec
        data["n"] = spec.n
        data["offsets"] = _offsets_json(spec.offsets)
    elif A.kind == "type_b":
        spec: TypeBSpec = A.spec
        data["n"] = spec.n
        data["offsets"] = _offsets_json(spec.diff_offsets)
        data["sum_offsets"] = _offsets_json(spec.sum_offsets)
        data["axis_offsets"] = {
            str(i): [rat_str(v) for v in vals] for i, vals in spec.axis_offsets
        }
    return data


class SpecError(ValueError):
    pass


def arrangement_from_json(data: dict) -> Arrangement:
    try:
        kind = data["kind"]
    except KeyError as exc:
        raise SpecError("missing 'kind'") from exc
    try:
        if kind == "deformed_braid":
            n = int(data.get("n") or data["ambient_dim"])
            offsets = {
                _parse_pair(key): [rat(v) for v in vals]
                for key, vals in data.get("offsets", {}).items()
            }
            A = build_deformed_braid(DeformedBraidSpec.make(n, offsets))
        elif kind == "type_b":
            n = int(data.get("n") or data["ambient_dim"])
            diff = {
                _parse_pair(key): [rat(v) for v in vals]
                for key, vals in data.get("offsets", {}).items()
            }
            sums = {
                _parse_pair(key): [rat(v) for v in vals]
                for key, vals in data.get("sum_offsets", {}).items()
            }
            axes = {
                int(key): [rat(v) for v in vals]
                for key, vals in data.get("axis_offsets", {}).items()
            }
            A = build_type_b(TypeBSpec.make(n, diff, sums, axes))
        elif kind == "generic":
            n = int(data["ambient_dim"])
            hyperplanes = [
                (vec(h["normal"]), rat(h["offset"])) for h in data["hyperplanes"]
            ]
            A = build_generic(hyperplanes, n)
        else:
            raise SpecError(f"unknown kind {kind!r}")
    except SpecError:
        raise
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecError(str(exc)) from exc
    if "ambient_dim" in data and int(data["ambient_dim"]) != A.ambient_dim:
        raise SpecError("ambient_dim does not match the spec")
    if kind != "generic" and data.get("hyperplanes"):
        stated = [
            (tuple(vec(h["normal"])), rat(h["offset"])) for h in data["hyperplanes"]
        ]
        derived = [(h.normal, h.offset) for h in A.hyperplanes]
        if stated != derived:
            raise SpecError("hyperplane list does not match the structured spec")
    return A


def face_to_json(face: Face, face_id: int) -> dict:
    return {
        "id": face_id,
        "dim": face.dim,
        "level": face.level,
        "sign": face.sign_vector,
        "witness": vec_str(face.witness),
        "flat_equations": [
            {"coeffs": vec_str(normal), "rhs": rat_str(off)}
            for normal, off in face.flat.equations
        ],
    }


def faces_to_json(faces: Sequence[Face]) -> list[dict]:
    return [face_to_json(face, i) for i, face in enumerate(faces)]
