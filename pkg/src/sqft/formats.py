"""JSON document formats for surfaces, sutures, and scripts.

Surface:  {"squares": K, "slack": bool, "gluings": [[[sq,side],[sq,side]], ...]}
Sutures:  {"chords": {"<sq>": [[[side,pos],[side,pos]], ...]},
           "loops": {"<sq>": count}}
Script:   {"source": <surface>, "moves": [{"create": "+"},
           {"glue": [[sq,side],[sq,side]]}, {"fold": [...]}, {"zip": [...]}]}

Emission is canonical (sorted gluings and chords, stable key order), so
parse-then-emit is the identity on canonical documents.
"""

from __future__ import annotations

import json
from typing import Any

from .engine import CreateSquare, Fold, Glue, Move, MorphismScript, Zip
from .surface import SquareComplex
from .sutures import CurveSystem


class ParseError(ValueError):
    pass


def _fail(msg: str) -> None:
    raise ParseError(msg)


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _check_slot(obj: Any, what: str, squares: int) -> tuple[int, int]:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(x, int) for x in obj)):
        _fail(f"{what}: expected [square, side], got {obj!r}")
    sq, side = obj
    if not 0 <= side < 4:
        _fail(f"{what}: side index {side} out of range 0..3")
    if not 0 <= sq < squares:
        _fail(f"{what}: square {sq} out of range 0..{squares - 1}")
    return (sq, side)


# -- surfaces ---------------------------------------------------------------


def surface_to_obj(c: SquareComplex) -> dict:
    return {
        "squares": c.square_count,
        "slack": c.slack,
        "gluings": [[list(a), list(b)] for a, b in c.sorted_gluings()],
    }


def emit_surface(c: SquareComplex) -> str:
    return json.dumps(surface_to_obj(c), indent=2) + "\n"


def surface_from_obj(obj: Any) -> SquareComplex:
    if not isinstance(obj, dict):
        _fail("surface: expected an object")
    if "squares" not in obj or not isinstance(obj["squares"], int):
        _fail("surface.squares: expected an integer")
    squares = obj["squares"]
    if squares < 0:
        _fail("surface.squares: negative")
    slack = obj.get("slack", False)
    if not isinstance(slack, bool):
        _fail("surface.slack: expected a boolean")
    gluings = []
    raw = obj.get("gluings", [])
    if not isinstance(raw, list):
        _fail("surface.gluings: expected a list")
    for i, pair in enumerate(raw):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            _fail(f"surface.gluings[{i}]: expected a pair of slots")
        a = _check_slot(pair[0], f"surface.gluings[{i}][0]", squares)
        b = _check_slot(pair[1], f"surface.gluings[{i}][1]", squares)
        gluings.append((a, b))
    return SquareComplex.build(squares, gluings, slack=slack)


def parse_surface(text: str) -> SquareComplex:
    return surface_from_obj(_loads(text))


# -- sutures ----------------------------------------------------------------


def sutures_to_obj(g: CurveSystem) -> dict:
    chords = {
        str(s): [[list(a), list(b)] for a, b in g.chords[s]]
        for s in range(g.square_count) if g.chords[s]
    }
    loops = {str(s): g.loops[s] for s in range(g.square_count) if g.loops[s]}
    return {"chords": chords, "loops": loops}


def emit_sutures(g: CurveSystem) -> str:
    return json.dumps(sutures_to_obj(g), indent=2) + "\n"


def sutures_from_obj(obj: Any, square_count: int) -> CurveSystem:
    if not isinstance(obj, dict):
        _fail("sutures: expected an object")
    chords: dict[int, list] = {}
    for key, lst in (obj.get("chords") or {}).items():
        try:
            sq = int(key)
        except ValueError:
            _fail(f"sutures.chords: bad square key {key!r}")
        if not 0 <= sq < square_count:
            _fail(f"sutures.chords: square {sq} out of range")
        if not isinstance(lst, list):
            _fail(f"sutures.chords[{key}]: expected a list")
        out = []
        for i, ch in enumerate(lst):
            if not isinstance(ch, (list, tuple)) or len(ch) != 2:
                _fail(f"sutures.chords[{key}][{i}]: expected two endpoints")
            eps = []
            for ep in ch:
                if (not isinstance(ep, (list, tuple)) or len(ep) != 2
                        or not all(isinstance(x, int) for x in ep)):
                    _fail(f"sutures.chords[{key}][{i}]: bad endpoint {ep!r}")
                side, pos = ep
                if not 0 <= side < 4:
                    _fail(f"sutures.chords[{key}][{i}]: side index {side} "
                          "out of range 0..3")
                if pos < 0:
                    _fail(f"sutures.chords[{key}][{i}]: negative position")
                eps.append((side, pos))
            out.append((eps[0], eps[1]))
        chords[sq] = out
    loops: dict[int, int] = {}
    for key, cnt in (obj.get("loops") or {}).items():
        sq = int(key)
        if not 0 <= sq < square_count:
            _fail(f"sutures.loops: square {sq} out of range")
        if not isinstance(cnt, int) or cnt < 0:
            _fail(f"sutures.loops[{key}]: expected a non-negative count")
        loops[sq] = cnt
    return CurveSystem.build(square_count, chords, loops)


def parse_sutures(text: str, square_count: int) -> CurveSystem:
    return sutures_from_obj(_loads(text), square_count)


# -- scripts ----------------------------------------------------------------


def move_to_obj(m: Move) -> dict:
    if isinstance(m, CreateSquare):
        return {"create": "+" if m.sign > 0 else "-"}
    key = {Glue: "glue", Fold: "fold", Zip: "zip"}[type(m)]
    return {key: [list(m.a), list(m.b)]}


def script_to_obj(s: MorphismScript) -> dict:
    return {
        "source": surface_to_obj(s.source),
        "moves": [move_to_obj(m) for m in s.moves],
    }


def emit_script(s: MorphismScript) -> str:
    return json.dumps(script_to_obj(s), indent=2) + "\n"


def script_from_obj(obj: Any) -> MorphismScript:
    if not isinstance(obj, dict) or "source" not in obj:
        _fail("script: expected an object with a source surface")
    source = surface_from_obj(obj["source"])
    moves: list[Move] = []
    raw = obj.get("moves", [])
    if not isinstance(raw, list):
        _fail("script.moves: expected a list")
    for i, mv in enumerate(raw):
        if not isinstance(mv, dict) or len(mv) != 1:
            _fail(f"script.moves[{i}]: expected a single-key object")
        key, val = next(iter(mv.items()))
        if key == "create":
            if val not in ("+", "-"):
                _fail(f"script.moves[{i}].create: expected '+' or '-'")
            moves.append(CreateSquare(+1 if val == "+" else -1))
        elif key in ("glue", "fold", "zip"):
            if not isinstance(val, (list, tuple)) or len(val) != 2:
                _fail(f"script.moves[{i}].{key}: expected a pair of slots")
            # slots may reference squares created later; bound loosely
            a = _check_slot(val[0], f"script.moves[{i}].{key}[0]", 1 << 30)
            b = _check_slot(val[1], f"script.moves[{i}].{key}[1]", 1 << 30)
            moves.append({"glue": Glue, "fold": Fold, "zip": Zip}[key](a, b))
        else:
            _fail(f"script.moves[{i}]: unknown move {key!r}")
    return MorphismScript.build(source, moves)


def parse_script(text: str) -> MorphismScript:
    return script_from_obj(_loads(text))
