import json

from sinecone.cli import run


def _capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_sphere_closure(capsys):
    code, out, _ = _capture(
        capsys, ["--output", "json", "spectrum", "--sphere", "3", "--cutoff", "100"]
    )
    assert code == 0
    payload = json.loads(out)
    rows = [(entry["value"], entry["mult"]) for entry in payload["spectrum"]]
    # leading lines of the 4-sphere
    assert rows[0] == ({"a": "0", "b": "0", "s": 1}, 1)
    assert rows[1] == ({"a": "4", "b": "0", "s": 1}, 5)
    assert rows[2] == ({"a": "10", "b": "0", "s": 1}, 14)


def test_output_is_deterministic(capsys):
    argv = ["--output", "json", "spectrum", "--sphere", "4", "--cutoff", "60"]
    _, first, _ = _capture(capsys, argv)
    _, second, _ = _capture(capsys, argv)
    assert first == second


def test_scan_products_table(capsys):
    code, out, _ = _capture(capsys, ["scan-products", "--from", "4", "--to", "12"])
    assert code == 0
    assert "unbounded below" in out
    lines = {int(l.split()[0]): l for l in out.splitlines() if l.strip() and l.strip()[0].isdigit()}
    assert "unbounded" in lines[8]
    assert "deformation" in lines[9] and "j=4" in lines[9]
    assert "deformation" in lines[10] and "j=3" in lines[10]
    assert "rigid" in lines[11]


def test_rigidity_product(capsys):
    code, out, _ = _capture(
        capsys, ["--output", "json", "rigidity", "--product", "4,5"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["certificates"] == [
        {"kappa": {"a": "-16", "b": "0", "s": 1}, "j": 4, "bounded": False, "multiplicity": 1}
    ]


def test_stability_product(capsys):
    code, out, _ = _capture(
        capsys, ["--output", "json", "stability", "--product", "4,5", "--cross-check"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["base"]["eh"]["verdict"] is False
    assert payload["base"]["physical"]["verdict"] is True
    assert payload["cross_check"]["consistent"] is True


def test_exit_code_unbounded_below(capsys):
    code, _, err = _capture(
        capsys,
        ["--output", "json", "spectrum", "--product", "4,4",
         "--operator", "einstein", "--blocks", "tt", "--cutoff", "0"],
    )
    assert code == 3
    assert json.loads(err)["error"] == "UnboundedBelow"


def test_exit_code_verification_failure(capsys):
    code, _, err = _capture(
        capsys,
        ["verify-radial", "--n", "3", "--coupling", "3", "--modes", "2",
         "--tol", "1e-12", "--grid", "800"],
    )
    assert code == 2
    assert json.loads(err)["error"] == "VerificationFailed"


def test_spectrum_from_input_file(tmp_path, capsys):
    import json as _json

    base = {
        "n": 3,
        "normalized": True,
        "spec0": [
            {"value": 0, "mult": 1},
            {"value": 3, "mult": 4},
            {"value": 8, "mult": 9},
            {"value": 15, "mult": 16},
            {"value": 24, "mult": 25},
            {"value": 35, "mult": 36},
            {"value": 48, "mult": 49},
            {"value": 63, "mult": 64},
            {"value": 80, "mult": 81},
        ],
        "spec1D": [],
        "specE_TT": [],
        "cutoff": {"spec0": 81, "spec1D": -1, "specE_TT": -1},
    }
    path = tmp_path / "s3.json"
    path.write_text(_json.dumps(base))
    code, out, _ = _capture(
        capsys,
        ["--output", "json", "spectrum", "--input", str(path),
         "--operator", "laplace", "--cutoff", "80"],
    )
    assert code == 0
    rows = [(e["value"]["a"], e["mult"]) for e in json.loads(out)["spectrum"]]
    # the 4-sphere up to 80
    assert rows == [
        ("0", 1), ("4", 5), ("10", 14), ("18", 30), ("28", 55),
        ("40", 91), ("54", 140), ("70", 204),
    ]


def test_exit_code_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = _capture(capsys, ["rigidity", "--input", str(bad)])
    assert code == 4
    assert json.loads(err)["error"] == "ParseError"


def test_verify_radial_pass(capsys):
    code, out, _ = _capture(
        capsys,
        ["--output", "json", "verify-radial", "--n", "3", "--coupling", "3",
         "--modes", "3", "--grid", "2000"],
    )
    assert code == 0
    assert json.loads(out)["report"]["passed"] is True


def test_verify_radial_demo_regime(tmp_path, capsys):
    csv = tmp_path / "q.csv"
    code, out, _ = _capture(
        capsys,
        ["--output", "json", "verify-radial", "--n", "8", "--block", "tt",
         "--coupling", "-14", "--epsilons", "0.2,0.1", "--csv", str(csv)],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["quotients"][0] > payload["quotients"][1]
    assert csv.exists()


def test_verify_symbolic(capsys):
    code, out, _ = _capture(
        capsys, ["--output", "json", "verify-symbolic", "--n", "3", "--k", "2", "--jmax", "4"]
    )
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_iterate_command(capsys):
    code, out, _ = _capture(
        capsys,
        ["--output", "json", "iterate", "--sphere", "2", "--count", "2",
         "--cutoff", "40", "--parts", "functions"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 4
    got = [(e["value"]["a"], e["mult"]) for e in payload["spec0"]]
    assert got[:3] == [("0", 1), ("4", 5), ("10", 14)]


def test_iterate_product_tt(capsys):
    code, out, _ = _capture(
        capsys,
        ["--output", "json", "iterate", "--product", "4,5", "--count", "1", "--cutoff", "0"],
    )
    assert code == 0
    payload = json.loads(out)
    values = [e["value"]["a"] for e in payload["specE_TT"]]
    assert values == ["-20", "-18", "-14", "-8", "0"]


def test_cutoff_parsing(capsys):
    code, out, _ = _capture(
        capsys,
        ["--output", "json", "spectrum", "--sphere", "2", "--cutoff", "21/2"],
    )
    assert code == 0
    values = [e["value"]["a"] for e in json.loads(out)["spectrum"]]
    assert values == ["0", "3", "8"]
    code, out, _ = _capture(
        capsys,
        ["--output", "json", "spectrum", "--sphere", "2", "--cutoff",
         '{"a": "21/2", "b": "0", "s": 1}'],
    )
    assert code == 0
    assert [e["value"]["a"] for e in json.loads(out)["spectrum"]] == ["0", "3", "8"]
