"""JSON cache of a completed reconstruction.

Layout::

    {"format": "quintic-qk-cache", "version": 1, "checksum": "<sha256 of payload>",
     "payload": {"max_degree": D, "gw_table": {...}, "epsilon": [[...]], "rpoly": [[[...]]],
                 "f_polys": [[[...]]], "jk": [[{"num": [...], "den": [...]}, ...], ...]}}

Rationals are "p/q" strings, polynomial coefficients are listed from the
constant term up, and integer-coefficient numerator/denominator pairs are
decimal strings so nothing loses precision.
"""
from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path

from flint import fmpq, fmpq_poly, fmpz_poly

from .gwside import GwTable
from .kring import KElem
from .qkside import ReconState
from .qrat import QRat

FORMAT = "quintic-qk-cache"
VERSION = 1
CACHE_ENV = "QUINTIC_QK_CACHE"
DEFAULT_CACHE = "quintic-qk-cache.json"


class CacheError(RuntimeError):
    pass


def default_cache_path() -> Path:
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def _poly_out(p: fmpq_poly) -> list[str]:
    return [str(Fraction(int(c.p), int(c.q))) for c in p.coeffs()]


def _poly_in(cs: list[str]) -> fmpq_poly:
    fr = [Fraction(c) for c in cs]
    return fmpq_poly([fmpq(c.numerator, c.denominator) for c in fr])


def _qrat_out(c) -> dict:
    c = c if isinstance(c, QRat) else QRat(c)
    num = c.num.numer() * int(c.den.denom())
    den = c.den.numer() * int(c.num.denom())
    return {"num": [str(int(v)) for v in num.coeffs()], "den": [str(int(v)) for v in den.coeffs()]}


def _qrat_in(data: dict) -> QRat:
    num = fmpz_poly([int(v) for v in data["num"]])
    den = fmpz_poly([int(v) for v in data["den"]])
    return QRat(fmpq_poly(num), fmpq_poly(den))


def state_to_payload(state: ReconState, table: GwTable | None) -> dict:
    return {
        "max_degree": state.max_degree,
        "gw_table": table.to_dict() if table is not None else None,
        "epsilon": [[str(e) for e in row] for row in state.epsilon],
        "rpoly": [[_poly_out(p) for p in row] for row in state.rpoly],
        "f_polys": [[_poly_out(p) for p in row] for row in state.f_polys],
        "jk": [[_qrat_out(c) for c in coeff.coords] for coeff in state.jk],
    }


def payload_to_state(payload: dict) -> tuple[ReconState, GwTable | None]:
    state = ReconState(
        int(payload["max_degree"]),
        [[Fraction(e) for e in row] for row in payload["epsilon"]],
        [[_poly_in(p) for p in row] for row in payload["rpoly"]],
        [KElem(_qrat_in(c) for c in coeff) for coeff in payload["jk"]],
        [[_poly_in(p) for p in row] for row in payload["f_polys"]],
    )
    table = payload.get("gw_table")
    return state, GwTable.from_dict(table) if table else None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def dumps(state: ReconState, table: GwTable | None = None) -> str:
    payload = state_to_payload(state, table)
    checksum = hashlib.sha256(canonical_json(payload).encode()).hexdigest()
    doc = {"format": FORMAT, "version": VERSION, "checksum": checksum, "payload": payload}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def loads(text: str) -> tuple[ReconState, GwTable | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheError(f"cache is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise CacheError("not a quintic-qk cache file")
    if doc.get("version") != VERSION:
        raise CacheError(f"cache version {doc.get('version')!r} is not supported (expected {VERSION})")
    payload = doc.get("payload")
    checksum = hashlib.sha256(canonical_json(payload).encode()).hexdigest()
    if checksum != doc.get("checksum"):
        raise CacheError("cache checksum mismatch: file is corrupt")
    try:
        return payload_to_state(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheError(f"malformed cache payload: {exc}") from exc


def write_cache(path, state: ReconState, table: GwTable | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(dumps(state, table))
    tmp.replace(path)
    return path


def read_cache(path) -> tuple[ReconState, GwTable | None]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    return loads(text)


def cache_info(path) -> dict:
    state, table = read_cache(path)
    return {
        "path": str(path),
        "format": FORMAT,
        "version": VERSION,
        "max_degree": state.max_degree,
        "gw_max_degree": table.max_degree if table else None,
    }
