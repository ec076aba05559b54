import json
from pathlib import Path

import pytest

from dualfib.cli import main
from dualfib.generators import GenSpec, gen_non_fibration
from dualfib.textformat import dump, format_document, load, parse_document

GALLERY = Path(__file__).resolve().parent.parent / "gallery"
SIGN = str(GALLERY / "sign-s3-z2.fib")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", SIGN)
    assert code == 0 and out.strip().endswith("ok")


def test_validate_reports_violation(tmp_path, capsys):
    p = tmp_path / "bad.cat"
    p.write_text("dualfib 1 category\ncategory C\n  object *\n  arrow id : * -> *\n"
                 "  identity * = id\nend\n")
    code, out, _ = run(capsys, "validate", p, "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert data["ok"] is False and any("missing-composite" in v for v in data["violations"])


def test_validate_invalid_functor_is_check_failure(tmp_path, capsys):
    text = (GALLERY / "sign-s3-z2.fib").read_text()
    text = text.replace("arrow p021 => odd", "arrow p021 => even")
    p = tmp_path / "bad.fib"
    p.write_text(text)
    code, out, _ = run(capsys, "validate", p)
    assert code == 1 and "FAIL" in out


def test_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, "validate", tmp_path / "missing.fib")
    assert code == 2 and "error" in err
    p = tmp_path / "junk.fib"
    p.write_text("not a document\n")
    code, _, err = run(capsys, "check-fibration", p)
    assert code == 2 and "line 1" in err
    code, _, _ = run(capsys, "check-fibration", GALLERY / "z2-swap.idx")
    assert code == 2
    code, _, _ = run(capsys, "fibre", SIGN, "--object", "nowhere")
    assert code == 2


def test_check_fibration(tmp_path, capsys):
    assert run(capsys, "check-fibration", SIGN)[0] == 0
    p = tmp_path / "nf.fib"
    dump(gen_non_fibration(GenSpec("parallel-lifts")).setup, p)
    code, out, _ = run(capsys, "check-fibration", p, "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["witness"] == {"alpha": "alpha", "object": "Y"}


def test_fibre(capsys):
    code, out, _ = run(capsys, "fibre", SIGN, "--object", "*")
    assert code == 0
    c = parse_document(out).value
    assert len(c.arr_names) == 3


def test_dualize_and_double_dual(tmp_path, capsys):
    out = tmp_path / "d.fib"
    assert run(capsys, "dualize", SIGN, "-o", out)[0] == 0
    assert len(load(out).value.total.arr_names) == 6
    code, text, _ = run(capsys, "double-dual", SIGN, "--format", "json")
    assert code == 0 and json.loads(text)["arrows"] == 6


def test_grothendieck_and_agreement(tmp_path, capsys):
    idx = GALLERY / "z2-swap.idx"
    out = tmp_path / "g.fib"
    assert run(capsys, "grothendieck", idx, "-o", out)[0] == 0
    s = load(out).value
    assert (len(s.total.obj_names), len(s.total.arr_names)) == (2, 4)
    code, text, _ = run(capsys, "dual-agreement", idx)
    assert code == 0 and text.strip().endswith("ok")


def test_export_dot(tmp_path, capsys):
    code, out, _ = run(capsys, "export-dot", SIGN)
    assert code == 0 and out.startswith("digraph") and out.count(" -> ") == 6
    code, out2, _ = run(capsys, "export-dot", SIGN, "--dual", "--no-identities")
    assert code == 0 and out2.count(" -> ") == 5


def test_iso_check(tmp_path, capsys):
    assert run(capsys, "iso-check", SIGN, SIGN)[0] == 0
    code, _, _ = run(capsys, "iso-check", SIGN, GALLERY / "z3-to-trivial.fib")
    assert code == 1


@pytest.mark.parametrize("path", sorted(GALLERY.glob("*.fib")), ids=lambda p: p.name)
def test_dualize_twice_is_iso(path, tmp_path, capsys):
    d1, d2 = tmp_path / "d1.fib", tmp_path / "d2.fib"
    assert run(capsys, "dualize", path, "-o", d1)[0] == 0
    assert run(capsys, "dualize", d1, "-o", d2)[0] == 0
    assert run(capsys, "iso-check", path, d2)[0] == 0
    # written files are canonical
    assert format_document(load(d2)) == d2.read_text()


def test_gallery_command(tmp_path, capsys):
    assert run(capsys, "gallery", tmp_path)[0] == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted(p.name for p in GALLERY.iterdir())
