import json

from kmtop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_roots_count(capsys):
    code, out, _ = run(capsys, "roots", "--system", "affine-sl2", "--height", "3")
    assert code == 0
    assert "total: 8" in out


def test_roots_json_schema(capsys):
    code, out, _ = run(capsys, "--json", "roots", "--system", "a1", "--height", "4")
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["count"] == 2


def test_member_center_witness(capsys):
    code, out, _ = run(capsys, "member", "--field", "p:3", "--spec", "centerO", "s1 s1")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "member", "--field", "p:3", "--spec", "kerpi:1", "s1 s1")
    assert code == 0 and out.splitlines()[0] == "false"
    assert "violated" in out


def test_member_group_dispatch(capsys):
    code, out, _ = run(capsys, "member", "--field", "p:3", "--spec", "hn:1", "xp(1; 3)")
    assert code == 0 and out.strip() == "true"
    code, _, err = run(capsys, "member", "--field", "p:3", "--spec", "hn:1", "xp(3)")
    assert code == 2 and "does not apply" in err


def test_mul_and_char(capsys):
    code, out, _ = run(capsys, "mul", "--field", "p:3", "xp(1; 1/3) t(1,0)")
    assert code == 0 and "u" in out
    code, out, _ = run(capsys, "char", "--field", "p:3", "1", "0", "torus(3; 1)")
    assert code == 0 and out.strip() == "9"


def test_decompose_retract_fix_nu(capsys):
    code, out, _ = run(capsys, "decompose", "--field", "p:3", "xp(3) xm(3)")
    assert code == 0 and "triangular: b=3 c=3 delta=1" in out
    code, out, _ = run(capsys, "retract", "--field", "p:3", "point(xm(3), 1)")
    assert code == 0 and out.strip() == "0"
    code, out, _ = run(capsys, "fix-interval", "--field", "p:3", "xp(27)")
    assert code == 0 and out.strip() == "[-3/2, +inf]"
    code, out, _ = run(capsys, "nu", "--field", "p:3", "t(1, 0)")
    assert code == 0 and out.strip() == "(1, 0)"


def test_kp_witness(capsys):
    code, out, _ = run(capsys, "kp-witness", "-n", "2", "--depth", "6")
    assert code == 0 and "witness: 3" in out


def test_char_and_nu_reject_non_torus_cleanly(capsys):
    code, _, err = run(capsys, "nu", "--field", "p:3", "xp(1; 1)")
    assert code == 2 and "torus" in err.lower()
    code, _, err = run(capsys, "char", "--field", "p:3", "1", "0", "diag(2)")
    assert code == 2
    code, _, err = run(capsys, "nu", "--field", "p:3", "w")
    assert code == 2


def test_tits_command(capsys):
    code, out, _ = run(capsys, "tits", "--system", "affine-sl2", "--coords=1,3")
    assert code == 0 and "word: e" in out
    code, out, _ = run(capsys, "tits", "--system", "affine-sl2",
                       "--max-steps", "40", "--coords=0,-1")
    assert code == 0 and "not classified" in out


def test_verify_pass_and_json_agree(capsys):
    code, text_out, _ = run(capsys, "verify", "--suite", "commutation",
                            "--field", "p:5", "--trials", "60")
    assert code == 0 and "commutation: pass" in text_out
    code, json_out, _ = run(capsys, "--json", "verify", "--suite", "commutation",
                            "--field", "p:5", "--trials", "60")
    payload = json.loads(json_out)
    assert code == 0
    assert payload["schema"] == 1
    assert payload["verdict"] == "pass"
    assert payload["suites"][0]["suite"] == "commutation"
    assert payload["suites"][0]["verdict"] == "pass"


def test_verify_byte_identical(capsys):
    _, out1, _ = run(capsys, "verify", "--suite", "uut-uniqueness", "--trials", "40")
    _, out2, _ = run(capsys, "verify", "--suite", "uut-uniqueness", "--trials", "40")
    assert out1 == out2
    # --timing adds a line, so it is opt-in only
    _, out3, _ = run(capsys, "verify", "--suite", "uut-uniqueness", "--trials", "40",
                     "--timing")
    assert "elapsed" in out3


def test_exit_codes(capsys):
    code, _, err = run(capsys, "verify", "--suite", "no-such")
    assert code == 1 and "unknown suite" in err
    code, _, err = run(capsys, "member", "--spec", "kerpi:1", "diag(0)")
    assert code == 2
    code, _, err = run(capsys, "retract", "point(xm(3/1")
    assert code == 2 and "syntax" in err
    code, _, _ = run(capsys, "nope")
    assert code == 1


def test_suite_failure_exit_code_path():
    # aggregation maps a failing report to exit 3 (no shipped suite fails,
    # so exercise the mapping directly)
    from kmtop import harness
    from kmtop.cli import SUITE_FAILURE
    report = harness.SuiteReport("demo", 1, [harness.Failure(0, "x", "a", "b")], 0.0)
    assert report.verdict == "fail"
    assert SUITE_FAILURE == 3


def test_field_validation_exit(capsys):
    code, _, err = run(capsys, "mul", "--field", "p:4", "xp(1)")
    assert code == 2 and "prime" in err


def test_verify_skipped_suite_still_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "center-separation",
                       "--field", "p:2", "--trials", "5")
    assert code == 0
    assert "not-applicable" in out


def test_roots_from_fixture_file(capsys, tmp_path):
    fixture = tmp_path / "aff.json"
    fixture.write_text(json.dumps({
        "cartan": [[2, -2], [-2, 2]],
        "rank": 2,
        "simple_roots": [[-2, 1], [2, 0]],
        "simple_coroots": [[-1, 0], [1, 0]],
    }))
    code, out, _ = run(capsys, "roots", "--system", str(fixture), "--height", "3")
    assert code == 0 and "total: 8" in out
    code, _, err = run(capsys, "roots", "--system", str(tmp_path / "nope.json"),
                       "--height", "3")
    assert code == 2
