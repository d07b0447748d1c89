import json
import subprocess
from pathlib import Path
import sys

import pytest

from sqft import formats
from sqft.cli import main
from sqft.engine import CreateSquare, Fold, MorphismScript
from sqft.sutures import basic_system
from sqft.svg import render_svg


def test_surface_roundtrip(hexagon, punctured_torus, annulus):
    for c in (hexagon, punctured_torus, annulus):
        text = formats.emit_surface(c)
        assert formats.parse_surface(text) == c
        assert formats.emit_surface(formats.parse_surface(text)) == text


def test_sutures_roundtrip(hexagon, hexagon_superposition):
    text = formats.emit_sutures(hexagon_superposition)
    assert formats.parse_sutures(text, 2) == hexagon_superposition


def test_script_roundtrip(disc12):
    script = MorphismScript.build(
        disc12, [Fold((1, 0), (0, 1)), CreateSquare(-1), CreateSquare(+1)])
    text = formats.emit_script(script)
    back = formats.parse_script(text)
    assert back.source == disc12 and back.moves == script.moves


def test_parse_error_names_field():
    bad = json.dumps({"squares": 1, "gluings": [[[0, 4], [0, 1]]]})
    with pytest.raises(formats.ParseError) as err:
        formats.parse_surface(bad)
    assert "side index 4" in str(err.value)


def test_parse_error_reports_position():
    with pytest.raises(formats.ParseError) as err:
        formats.parse_surface("{not json")
    assert "line 1" in str(err.value)


def test_hexagon_file_invariants(tmp_path, hexagon):
    path = tmp_path / "hex.json"
    path.write_text(formats.emit_surface(hexagon))
    from sqft.surface import invariants
    inv = invariants(formats.parse_surface(path.read_text()))
    assert (inv.n, inv.index, inv.gluing_number) == (3, 2, 1)


def test_svg_deterministic(hexagon, hexagon_superposition, punctured_torus):
    a = render_svg(hexagon, hexagon_superposition)
    b = render_svg(hexagon, hexagon_superposition)
    assert a == b
    assert a.startswith("<?xml") and a.rstrip().endswith("</svg>")
    grid = render_svg(punctured_torus, None)
    assert "seagreen" in grid      # labeled internal edges


def test_svg_crossing_counts(hexagon, hexagon_superposition):
    # one red curve piece per chord
    svg = render_svg(hexagon, hexagon_superposition)
    assert svg.count('stroke="red"') == 6


def test_cli_validate_info_element(tmp_path, hexagon, capsys):
    surf = tmp_path / "h.json"
    surf.write_text(formats.emit_surface(hexagon))
    sut = tmp_path / "s.json"
    sut.write_text(formats.emit_sutures(basic_system(hexagon, 0b01)))
    assert main(["validate", str(surf), str(sut)]) == 0
    assert main(["info", str(surf)]) == 0
    assert main(["element", str(surf), str(sut)]) == 0
    out = capsys.readouterr().out
    assert "element 10" in out


def test_cli_element_invalid_exits_1(tmp_path, hexagon, capsys):
    surf = tmp_path / "h.json"
    surf.write_text(formats.emit_surface(hexagon))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"chords": {"0": [[[0, 0], [1, 0]]]}}))
    assert main(["element", str(surf), str(bad)]) == 1


def test_cli_apply_factorize(tmp_path, disc12, disc12_sutures, capsys):
    script = MorphismScript.build(disc12, [Fold((1, 0), (0, 1))])
    spath = tmp_path / "script.json"
    spath.write_text(formats.emit_script(script))
    gpath = tmp_path / "g.json"
    gpath.write_text(formats.emit_sutures(disc12_sutures))
    assert main(["apply", str(spath), str(gpath), "--factorize"]) == 0
    out = capsys.readouterr().out
    assert "annihilate1" in out
    assert "0110 + 1010" in out


def test_cli_check_suite(capsys):
    assert main(["check", "--suite", "bypass", "--cases", "3", "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert "bypass" in out and "pass" in out


def test_cli_render(tmp_path, hexagon):
    surf = tmp_path / "h.json"
    surf.write_text(formats.emit_surface(hexagon))
    out = tmp_path / "h.svg"
    assert main(["render", str(surf), "-o", str(out)]) == 0
    assert out.read_text().startswith("<?xml")


def test_cli_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "sqft.cli", "census", "disc", "--n", "3"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "5 suture classes" in proc.stdout


FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _reemit(path: Path) -> str:
    text = path.read_text()
    if path.name.endswith(".surface.json"):
        return formats.emit_surface(formats.parse_surface(text))
    if path.name.endswith(".script.json"):
        return formats.emit_script(formats.parse_script(text))
    obj = json.loads(text)
    squares = 1 + max(
        [int(k) for k in (obj.get("chords") or {})] +
        [int(k) for k in (obj.get("loops") or {})] + [0])
    return formats.emit_sutures(formats.parse_sutures(text, squares))


def test_fixture_files_roundtrip_byte_identical():
    paths = sorted(FIXTURES.glob("*.json"))
    assert len(paths) >= 8
    for path in paths:
        assert _reemit(path) == path.read_text(), path.name


def test_fixture_surfaces_validate():
    from sqft.surface import validate_complex
    for path in sorted(FIXTURES.glob("*.surface.json")):
        assert validate_complex(formats.parse_surface(path.read_text())).ok
