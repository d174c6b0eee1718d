import json
import subprocess
import sys

import pytest

from isparse.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def machine(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out)["results"]


def test_measure(capsys):
    code, out, _ = run(capsys, "measure", "[0,1] u [2,3]")
    assert code == 0 and "measure: 2/1" in out
    code, res = machine(capsys, "measure", "[0,1] u [2,3]")
    assert res["measure"] == "2/1"


def test_parse_error_exit_2(capsys):
    code, out, err = run(capsys, "measure", "[0,1")
    assert code == 2 and "position 4" in err and out == ""
    assert run(capsys, "ilimsup", "steps(mod=1; 0:0)", "--ideal", "xx")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_ilimsup(capsys):
    code, res = machine(capsys, "ilimsup", "steps(mod=1; 0:0; on squares -> 1)", "--ideal", "d0")
    assert code == 0 and res["i_limsup"] == "0/1"


def test_phi_density_adens(capsys):
    _, res = machine(capsys, "phi", "[0,1] u [1,2]")
    assert res["phi"] == {"set": "[0/1,2/1]"} and res["symdiff_measure"] == "0/1"
    _, res = machine(capsys, "density", "[0,1]", "--point", "0")
    assert res["right_upper"] == "1/1" and res["left_upper"] == "0/1"
    _, res = machine(capsys, "density", "gapset(c=2)", "--depth", "4")
    assert res["right_upper"]["enclosure"] == ["1/2", "257/512"]
    _, res = machine(capsys, "adens", "ap(1,2) | ap(2,4)")
    assert res["density"] == "3/4" and res["in_d0"] is False


def test_iconv(capsys):
    _, res = machine(capsys, "iconv", "steps(mod=1; 0:0; on squares -> 1)", "--ideal", "d0",
                     "--limit", "0", "--eps", "1/2")
    assert res["converges"] is True
    assert run(capsys, "iconv", "const(1)", "--limit", "1", "--eps", "0")[0] == 2


def test_idensity(capsys):
    code, res = machine(capsys, "idensity", "gapset(c=2)", "--point", "0", "--ideal", "d0",
                        "--family", "rgeom(p=0,c=2)")
    assert code == 0
    assert res["upper_i_density"] == {"enclosure": ["1/2", "1/1"], "tag": ">=-certified"}
    code, _, err = run(capsys, "idensity", "gapset(c=2)", "--ideal", "fin",
                       "--family", "rgeom(p=0,c=2; except squares -> [0,1])")
    assert code == 2 and "filter set" in err


def test_certify_and_verify(tmp_path, capsys):
    path = tmp_path / "cert.txt"
    code, out, _ = run(capsys, "sparse-certify", "gapset(c=2)", "--eps", "1/10", "--depth", "6",
                       "--out", str(path))
    assert code == 0 and "verified: yes" in out
    assert run(capsys, "sparse-verify", str(path))[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text(path.read_text().replace("h: 1/32", "h: 1/2"))
    code, out, _ = run(capsys, "sparse-verify", str(bad))
    assert code == 1 and "accepted: no" in out
    assert run(capsys, "sparse-verify", str(tmp_path / "missing"))[0] == 2
    junk = tmp_path / "junk.txt"
    junk.write_text("hello\n")
    assert run(capsys, "sparse-verify", str(junk))[0] == 2
    assert run(capsys, "sparse-certify", "gapset(c=3/2)", "--eps", "1/100", "--depth", "3")[0] == 1


def test_falsify_exit_codes(capsys):
    assert run(capsys, "falsify", "[0,1]", "--point", "0")[0] == 1
    code, res = machine(capsys, "falsify", "[2,3]", "--point", "0")
    assert code == 0 and res["status"] == "certified-sparse-via-density-zero"


def test_reproduce_example(capsys):
    code, res = machine(capsys, "reproduce", "example-1.7", "--c", "2", "--depth", "6")
    assert code == 0
    assert res["right_upper_density_at_least"] == "1/2"
    assert res["certificate_accepted"] is True
    code, res = machine(capsys, "reproduce", "section-3-example")
    assert code == 0 and res["upper_i_density"]["enclosure"][0] == "1/2"


def test_suite_command_and_unknown_suite(capsys):
    code, res = machine(capsys, "suite", "density-theorem", "--trials", "20", "--seed", "3")
    assert code == 0 and res["violations"] == 0 and res["trials"] == 20
    assert run(capsys, "suite", "nope")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "isparse", "measure", "[0,1/2]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "measure: 1/2" in proc.stdout
