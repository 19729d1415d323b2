"""Command-line front end.

Subcommands: gen (build or validate arrangement files), faces, table, poly,
verify (the identity suite; exit code 0 iff everything passes), bijection.
Results of the expensive operations can be cached on disk, keyed by a content
hash of the arrangement JSON plus the operation name; set --cache-dir or the
ARRCOMB_CACHE_DIR environment variable to enable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bijection, identities, jsonio
from .arrangement import build_family, induced_subarrangement, FAMILIES
from .faces import count_table, enumerate_faces, face_containing
from .poset import characteristic_polynomial, whitney_polynomial
from .rationals import vec


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


class ResultCache:
    """Content-addressed JSON store; each entry records its input hash."""

    def __init__(self, root: Optional[str]):
        self.root = Path(root) if root else None
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(arrangement_json: dict, op: str) -> str:
        blob = jsonio.compact(arrangement_json) + ":" + op
        return hashlib.sha256(blob.encode()).hexdigest()

    def get(self, key: str):
        if self.root is None:
            return None
        path = self.root / f"{key}.json"
        if not path.exists():
            return None
        entry = json.loads(path.read_text())
        if entry.get("key") != key:
            return None  # stale or corrupted entry; recompute
        return entry["payload"]

    def put(self, key: str, payload) -> None:
        if self.root is None:
            return
        path = self.root / f"{key}.json"
        path.write_text(jsonio.dumps({"key": key, "payload": payload}))


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_arrangement(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}")
    try:
        return jsonio.arrangement_from_json(data), data
    except jsonio.SpecError as exc:
        raise CliError(f"invalid arrangement spec: {exc}")


def _cmd_gen(args, cache: ResultCache) -> int:
    if args.spec:
        A, _ = _load_arrangement(args.spec)
    else:
        if not args.family:
            raise CliError("gen needs --family or --spec")
        if args.n is None:
            raise CliError("gen --family needs --n")
        try:
            A = build_family(args.family, args.n, args.a)
        except ValueError as exc:
            raise CliError(str(exc))
    _write(jsonio.dumps(jsonio.arrangement_to_json(A)), args.output)
    return 0


def _cmd_faces(args, cache: ResultCache) -> int:
    A, data = _load_arrangement(args.file)
    key = cache.key(jsonio.arrangement_to_json(A), "faces")
    payload = cache.get(key)
    if payload is None:
        payload = jsonio.faces_to_json(enumerate_faces(A))
        cache.put(key, payload)
    _write(jsonio.dumps(payload), args.out)
    return 0


def _cmd_table(args, cache: ResultCache) -> int:
    A, data = _load_arrangement(args.file)
    key = cache.key(jsonio.arrangement_to_json(A), "table")
    payload = cache.get(key)
    if payload is None:
        payload = count_table(A).to_csv()
        cache.put(key, payload)
    _write(payload, args.out)
    return 0


def _cmd_poly(args, cache: ResultCache) -> int:
    A, data = _load_arrangement(args.file)
    which = "whitney" if args.whitney else "char"
    key = cache.key(jsonio.arrangement_to_json(A), f"poly:{which}")
    payload = cache.get(key)
    if payload is None:
        poly = whitney_polynomial(A) if args.whitney else characteristic_polynomial(A)
        payload = poly.to_json()
        cache.put(key, payload)
    _write(jsonio.dumps(payload), args.out)
    return 0


def _parse_checks(raw: Optional[str], allowed) -> tuple[str, ...]:
    if not raw:
        return tuple(allowed)
    names = tuple(name.strip() for name in raw.split(",") if name.strip())
    unknown = set(names) - set(allowed)
    if unknown:
        raise CliError(f"unknown checks {sorted(unknown)}; available: {', '.join(allowed)}")
    return names


def _cmd_verify(args, cache: ResultCache) -> int:
    if args.random is not None:
        checks = _parse_checks(args.checks, identities.PER_ARRANGEMENT_CHECKS)
        reports = identities.run_random_suite(
            args.random, args.n_max, seed=args.seed, checks=checks
        )
    elif args.family:
        checks = _parse_checks(args.checks, identities.FAMILY_CHECKS)
        reports = identities.run_family_suite(
            args.family, args.n_max, args.a, checks=checks, trunc=args.trunc
        )
    else:
        raise CliError("verify needs --family or --random")
    for r in reports:
        print(f"{r.status:4s} {r.check:12s} {r.instance}", file=sys.stderr)
    if args.format == "text":
        lines = [f"{r.status} {r.check} {r.instance}" for r in reports]
        passed = sum(r.passed for r in reports)
        lines.append(f"{passed}/{len(reports)} checks passed")
        _write("\n".join(lines) + "\n", args.out)
    else:
        _write(jsonio.dumps([r.to_json() for r in reports]), args.out)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_bijection(args, cache: ResultCache) -> int:
    A, data = _load_arrangement(args.file)
    if A.kind != "deformed_braid":
        raise CliError("bijection requires a deformed braid arrangement")
    spec = A.spec
    faces = enumerate_faces(A)
    if args.face is not None:
        if not 0 <= args.face < len(faces):
            raise CliError(f"face id out of range (0..{len(faces) - 1})")
        pi, parts = bijection.phi(spec, faces[args.face])
        payload = {
            "partition": [list(block) for block in pi.blocks],
            "parts": [
                jsonio.face_to_json(part, _part_id(spec, block, part))
                for block, part in zip(pi.blocks, parts)
            ],
        }
        _write(jsonio.dumps(payload), args.out)
        return 0
    if args.inverse is None:
        raise CliError("bijection needs --face or --inverse")
    try:
        req = json.loads(Path(args.inverse).read_text())
        blocks = req["partition"]
        witnesses = [vec(part["witness"]) for part in req["parts"]]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"invalid inverse request: {exc}")
    try:
        pi = bijection.OrderedPartition.make(blocks, spec.n)
        parts = []
        for block, witness in zip(pi.blocks, witnesses):
            sub = induced_subarrangement(spec, block)
            parts.append(face_containing(bijection._arrangement_of(sub), witness))
        face = bijection.phi_inverse(spec, pi, parts)
    except ValueError as exc:
        raise CliError(str(exc))
    from .faces import face_index

    payload = jsonio.face_to_json(face, face_index(A, face))
    _write(jsonio.dumps(payload), args.out)
    return 0


def _part_id(spec, block, part) -> int:
    from .faces import face_index

    sub = induced_subarrangement(spec, block)
    return face_index(bijection._arrangement_of(sub), part)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrcomb",
        description="Exact face/level enumeration and identity verification "
        "for deformed braid and type-B hyperplane arrangements.",
    )
    parser.add_argument(
        "--cache-dir",
        default=os.environ.get("ARRCOMB_CACHE_DIR"),
        help="directory for cached results (or env ARRCOMB_CACHE_DIR)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="build a family arrangement or validate a spec file")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int, default=1, help="extension parameter")
    p.add_argument("--spec", help="validate a hand-written arrangement JSON file")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("faces", help="enumerate the faces of an arrangement file")
    p.add_argument("file")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_faces)

    p = sub.add_parser("table", help="emit the face-count CSV (f(d,l) and b(d))")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("poly", help="emit the Whitney or characteristic polynomial")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--whitney", action="store_true")
    group.add_argument("--char", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("verify", help="run the identity verification suite")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--random", type=int, help="number of randomized specs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checks", help="comma-separated subset of checks")
    p.add_argument("--trunc", type=int, default=4, help="series truncation order")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bijection", help="apply the level decomposition or its inverse")
    p.add_argument("file")
    p.add_argument("--face", type=int, help="face id to decompose")
    p.add_argument("--inverse", help="JSON file with partition and part witnesses")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bijection)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache = ResultCache(args.cache_dir)
    try:
        return args.func(args, cache)
    except CliError as exc:
        sys.stderr.write(jsonio.dumps({"error": {"message": str(exc)}}))
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
