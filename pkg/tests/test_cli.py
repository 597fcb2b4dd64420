"""Golden-file tests for every subcommand.

Set FLATBUNDLES_REGEN=1 to rewrite the golden files after a deliberate change.
"""

import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from flatbundles.cli import run

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"

CASES = [
    ("space_validate", "space validate data/torus.json", 0),
    ("space_present", "space present data/torus.json", 0),
    ("space_present_corpus", "space present triangle", 0),
    ("space_validate_broken", "space validate data/broken.json", 1),
    ("locsys_check", "locsys check data/fib2.json", 0),
    ("locsys_trivial", "locsys trivial data/fib2.json", 0),
    ("locsys_monodromy", "locsys monodromy data/fib2.json", 0),
    ("locsys_iso_same", "locsys iso data/fib2.json data/fib2_swapped.json", 0),
    ("locsys_iso_distinct", "locsys iso data/fib2.json data/unipotent_f2.json", 0),
    ("locsys_sections", "locsys sections data/unipotent_f2.json", 0),
    ("cover_build", "cover build data/s3_cover.json", 0),
    ("cover_build_action", "cover build data/transposition_action.json", 0),
    ("cover_decompose", "cover decompose data/transposition_action.json", 0),
    ("cover_pullback", "cover pullback data/s3_cover.json data/sign_on_w2.json", 0),
    ("cover_pushforward", "cover pushforward data/z3_cover.json data/trivial_on_z3.json", 0),
    ("cover_transport", "cover transport data/s3_cover.json data/sign_on_w2.json --gamma 1", 0),
    ("cover_exactseq", "cover exactseq data/s3_cover.json data/sign_on_w2.json", 0),
    ("cover_exactseq_nonfactoring", "cover exactseq data/s3_cover.json data/scalar_on_w2.json", 0),
    ("descend_field", "descend field data/field_descent.json", 0),
    ("descend_field_bad", "descend field data/bad_field_descent.json", 1),
    ("descend_modp", "descend modp data/unipotent_third.json --p 2", 0),
    ("descend_modp_bad_prime", "descend modp data/unipotent_third.json --p 3", 1),
    ("descend_tower_level", "descend tower-level data/sixteen.json --tower data/dyadic.json --level 4", 0),
    ("descend_survival", "descend survival --primes 2 --depth 64 --bound 20", 0),
    ("descend_survival_rows", "descend survival --primes 2 --depth 64 --m 12 --format rows", 0),
    ("cohom_h1", "cohom h1 data/torus.json --field F(3)", 0),
    ("cohom_h1_rp2", "cohom h1 RP2rel --field Q", 0),
    ("cohom_homga", "cohom homga RP2rel --field F(2)", 0),
    ("cohom_classes", "cohom classes C1 --field F(2) --rank 2", 0),
    ("demo_solenoid", "demo solenoid", 0),
    ("demo_fibonacci", "demo fibonacci", 0),
    ("demo_torus", "demo torus", 0),
]


def invoke(argv, capsys, monkeypatch):
    monkeypatch.chdir(HERE)
    code = run(argv.split())
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name, argv, code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, capsys, monkeypatch):
    got_code, out, _ = invoke(argv, capsys, monkeypatch)
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("FLATBUNDLES_REGEN"):
        path.write_text(out)
    assert got_code == code
    assert out == path.read_text()


@pytest.mark.parametrize("name, argv, code", CASES[:12], ids=[c[0] for c in CASES[:12]])
def test_output_is_deterministic(name, argv, code, capsys, monkeypatch):
    first = invoke(argv, capsys, monkeypatch)
    second = invoke(argv, capsys, monkeypatch)
    assert first == second


def test_survival_table_example(capsys, monkeypatch):
    code, out, _ = invoke("descend survival --primes 2 --depth 64 --bound 20 --format rows", capsys, monkeypatch)
    assert code == 0
    assert "12\t3" in out.splitlines()


def test_monodromy_example(capsys, monkeypatch):
    code, out, _ = invoke("locsys monodromy data/fib2.json", capsys, monkeypatch)
    assert code == 0 and "order: 3" in out


def test_disconnected_example(capsys, monkeypatch):
    code, out, err = invoke("space validate data/broken.json", capsys, monkeypatch)
    assert code == 1 and "Disconnected" in out and "Disconnected" in err


@pytest.mark.parametrize(
    "argv",
    [
        "space validate data/malformed.json",
        "space validate data/missing.json",
        "locsys check data/wrong_shape.json",
        "locsys check data/torus.json",
        "descend survival --bound 5",
    ],
)
def test_parse_errors_exit_2(argv, capsys, monkeypatch):
    code, out, err = invoke(argv, capsys, monkeypatch)
    assert code == 2 and out == "" and "ParseError" in err


@pytest.mark.parametrize("argv", ["", "space", "space frobnicate x", "cohom classes C1 --rank two", "demo torus --format xml"])
def test_usage_errors_exit_2(argv, capsys, monkeypatch):
    assert invoke(argv, capsys, monkeypatch)[0] == 2


def test_domain_errors_exit_1(capsys, monkeypatch):
    code, out, err = invoke("cohom classes W2 --field F(5) --rank 2 --cap 100", capsys, monkeypatch)
    assert code == 1 and out.strip() == "CapExceeded"
    code, out, _ = invoke("descend survival --primes 2 --depth 8 --m 0", capsys, monkeypatch)
    assert code == 1 and out.strip() == "BadModulus"
    code, out, _ = invoke("cover transport data/s3_cover.json data/scalar_on_w2.json --gamma 1", capsys, monkeypatch)
    assert code == 1 and out.strip() == "NotTrivializedBy"


def test_emit_writes_total_complex(tmp_path, capsys, monkeypatch):
    target = tmp_path / "total.json"
    code, out, _ = invoke(f"cover build data/z3_cover.json --emit {target}", capsys, monkeypatch)
    assert code == 0 and target.exists()
    doc = json.loads(target.read_text())
    assert doc["degree"] == 3 and len(doc["total"]["vertices"]) == 3
    assert run(["space", "validate", str(target)]) == 2  # a covering document, not a complex


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "flatbundles", "locsys", "monodromy", "data/fib2.json"],
        cwd=HERE, capture_output=True, text=True,
    )
    assert res.returncode == 0 and "order: 3" in res.stdout


@pytest.mark.skipif(shutil.which("flatbundles") is None, reason="console script not on PATH")
def test_console_script():
    res = subprocess.run(["flatbundles", "demo", "torus"], cwd=HERE, capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == (GOLDEN / "demo_torus.txt").read_text()
