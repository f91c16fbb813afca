import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from hh2.cli import main, verify_families
from hh2.families import family_spec, make_family
from hh2.quiver import FreeElement

FIX = Path(__file__).parent / "fixtures"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_family(capsys):
    code, out, _ = run(["compute", "--family", "D:n=5,s=1,t=2"], capsys)
    assert code == 0
    assert "HH2 = 1" in out
    assert "e_1 ⊗_{f12} e_1 ↦ e_1" in out


def test_compute_nonstd_with_oracle(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(["compute", "--family", "nonstd:m=3", "--oracle", "--json", str(path)], capsys)
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["schema_version"] == "1"
    assert doc["algebra"]["char"] == 2
    assert doc["cohomology"]["hh2"] == 2
    assert doc["oracle"]["ran"] and doc["oracle"]["agree"]
    assert doc["resolution"]["exact"]


def test_malformed_file_exit_2(capsys):
    code, _, err = run(["compute", str(FIX / "malformed.quiver")], capsys)
    assert code == 2
    assert "line 3" in err


def test_not_admissible_exit_2(capsys):
    code, _, err = run(["compute", str(FIX / "not_admissible.quiver")], capsys)
    assert code == 2
    assert "admissible" in err


def test_missing_file_exit_2(capsys):
    code, _, err = run(["compute", str(FIX / "nope.quiver")], capsys)
    assert code == 2


def test_two_sources_rejected(capsys):
    code, _, _ = run(["compute", str(FIX / "cubic.quiver"), "--family", "D:n=4,s=1,t=1"], capsys)
    assert code == 2


def test_bad_family_exit_2(capsys):
    code, _, _ = run(["compute", "--family", "D:n=2,s=1,t=1"], capsys)
    assert code == 2


def test_file_input_and_char_override(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert main(["compute", str(FIX / "cubic.quiver"), "--json", str(out), "-q"]) == 0
    assert json.loads(out.read_text())["cohomology"]["hh2"] == 2
    assert main(["compute", str(FIX / "cubic.quiver"), "--char", "3", "--json", str(out), "-q"]) == 0
    assert json.loads(out.read_text())["cohomology"]["hh2"] == 3


def test_order_override(capsys):
    code, out, _ = run(["compute", "--family", "D:n=4,s=1,t=2", "--order", "g1 g0 b1 b0 a2 a1"], capsys)
    assert code == 0 and "HH2 = 1" in out
    code, _, _ = run(["compute", "--family", "D:n=4,s=1,t=2", "--order", "g1"], capsys)
    assert code == 2


@pytest.mark.parametrize("spec, applies", [
    ("D:n=4,s=2,t=2", True), ("D:n=4,s=1,t=2", False), ("E:n=6,s=3,t=1", True)])
def test_vanishing_command(spec, applies, tmp_path, capsys):
    path = tmp_path / "v.json"
    code, out, _ = run(["vanishing", "--family", spec, "--json", str(path)], capsys)
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["vanishing"]["applicable"] is applies
    assert "cohomology" not in doc
    if not applies:
        assert "dim vΛw > 1" in doc["vanishing"]["reason"]


def test_emit_resolution(tmp_path, capsys):
    path = tmp_path / "r.json"
    main(["compute", "--family", "mobius:p=1,s=1", "--emit-resolution", "--json", str(path)])
    doc = json.loads(path.read_text())
    assert len(doc["resolution"]["f3"]) == doc["resolution"]["f3_count"]


def test_timing_only_on_request(tmp_path, capsys):
    path = tmp_path / "t.json"
    main(["compute", "--family", "mobius:p=1,s=1", "--json", str(path)])
    assert json.loads(path.read_text())["timing_ms"] is None
    main(["compute", "--family", "mobius:p=1,s=1", "--json", str(path), "--timing"])
    assert json.loads(path.read_text())["timing_ms"] >= 0


def test_json_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["compute", "--family", "D3m-std:m=2,s=1", "--char", "2", "--json", str(a)])
    main(["compute", "--family", "D3m-std:m=2,s=1", "--char", "2", "--json", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_families_subset(capsys):
    code, out, _ = run(["verify-families", "--only", "D3m-std"], capsys)
    assert code == 0
    assert "4/4 passed" in out


def test_verify_families_restricted_dims():
    specs = [family_spec("D3m-std", p, m=m, s=1) for m in (2, 3) for p in (0, 2)]
    rows = verify_families(specs)
    assert sorted(r.got for r in rows) == [1, 2, 3, 4]
    assert all(r.ok for r in rows)


def test_verify_families_perturbed_relation_fails():
    def perturbed(spec):
        # replace the commutativity relation f11 by its leading monomial
        pres = make_family(spec)
        rels = list(pres.relations)
        i = pres.labels.index("f11")
        r = rels[i]
        rels[i] = FreeElement.path(r.quiver, r.field, r.items()[0][0])
        return pres.with_relations(rels, pres.labels)

    rows = verify_families([family_spec("D", n=5, s=1, t=2)], builder=perturbed)
    assert not rows[0].ok
    assert rows[0].got == 2


def test_console_script_stdin():
    text = (FIX / "square.quiver").read_text()
    r = subprocess.run([sys.executable, "-m", "hh2.cli", "compute", "-", "--json", "-", "-q"],
                       input=text, capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["cohomology"]["hh2"] == 0
    assert doc["vanishing"]["applicable"]


def test_numba_can_be_disabled():
    env = dict(os.environ, HH2_DISABLE_NUMBA="1")
    r = subprocess.run([sys.executable, "-c", "from hh2.linalg import _kernels; print(_kernels.backend())"],
                       env=env, capture_output=True, text=True)
    assert r.stdout.strip() == "numpy"
