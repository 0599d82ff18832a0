import json

import pytest

from trisect import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "s4" in out and "cp2" in out


def test_catalog_emits_parseable_diagram(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "s4")
    assert code == 0
    from trisect.diagram import parse, standard_s4

    # catalog names resolve to the embedded variant when one exists
    assert parse(out).base == standard_s4()


def test_validate_catalog(capsys):
    code, out, _ = run(capsys, "validate", "s4", "--strict")
    assert code == 0 and "valid" in out


def test_validate_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"genus": 1, "kind": "closed", "curves": [], "crossings": [{"id": "x", "sign": 1, "ends": [["a", 0], ["b", 0]]}]}')
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and "dangling" in out


def test_eval_bracket_and_invariant(capsys):
    code, out, _ = run(capsys, "eval", "bracket", "--triplet", "kashaev:n=3", "cp2")
    assert code == 0 and "3 + 6*z3" in out
    code, out, _ = run(capsys, "eval", "invariant", "--triplet", "kashaev:n=3", "cp2", "--all-roots")
    assert code == 0 and "roots:" in out


def test_eval_rep_backend(capsys):
    code, out, _ = run(capsys, "--json", "eval", "bracket", "--triplet", "kashaev:n=2", "--evaluator", "rep", "s4")
    assert code == 0
    data = json.loads(out)
    assert data["bracket"]["coords"] == ["64"]


def test_eval_count_matches_spec_example(capsys):
    code, out, _ = run(capsys, "eval", "count", "--C", "Z/2", "--B", "Z/3", "s4")
    assert code == 0 and out.strip() == "l=6, invariant=1+0j"


def test_eval_count_with_gset(capsys):
    code, out, _ = run(capsys, "eval", "count", "--C", "Z/2", "--B", "Z/2", "--M", "cosets:(1,1)", "s4")
    assert code == 0 and "l=8" in out


def test_moves_apply_pipeline(capsys, tmp_path):
    mv = tmp_path / "moves.json"
    mv.write_text(json.dumps([
        {"move": "two_point_insert", "curve_a": "a", "pos_a": 0, "curve_b": "g", "pos_b": 1, "sign": -1},
        {"move": "reverse_orientation", "curve": "b"},
    ]))
    out_file = tmp_path / "moved.json"
    code, _, _ = run(capsys, "moves", "apply", "cp2", "--moves", str(mv), "--out", str(out_file))
    assert code == 0 and out_file.exists()
    code, out1, _ = run(capsys, "--json", "eval", "invariant", "--triplet", "kashaev:n=3", str(out_file))
    code2, out2, _ = run(capsys, "--json", "eval", "invariant", "--triplet", "kashaev:n=3", "cp2")
    assert code == 0 and code2 == 0
    assert json.loads(out1)["value"] == json.loads(out2)["value"]


def test_json_determinism(capsys):
    _, out1, _ = run(capsys, "--json", "eval", "bracket", "--triplet", "group:C=Z/2,B=Z/3", "cp2")
    _, out2, _ = run(capsys, "--json", "eval", "bracket", "--triplet", "group:C=Z/2,B=Z/3", "cp2")
    assert out1 == out2


def test_axioms_command(capsys):
    code, out, _ = run(capsys, "axioms", "--algebra", "group:Z/4")
    assert code == 0 and "antipode" in out
    code, out, _ = run(capsys, "--json", "axioms", "--algebra", "weak:C=Z/2;B=Z/2;M=cosets:(1,1)")
    assert code == 0 and json.loads(out)["weak"] is True


def test_crosscheck_command(capsys):
    code, out, _ = run(capsys, "crosscheck", "--triplet", "kashaev:n=2", "cp2")
    assert code == 0 and "PASS" in out


def test_float_backend(capsys):
    code, out, _ = run(capsys, "--json", "eval", "bracket", "--triplet", "kashaev:n=3", "--backend", "float", "cp2")
    assert code == 0
    z = json.loads(out)["bracket"]["approx"]
    assert abs(z[0]) < 1e-9 and abs(z[1] - 5.196152422706632) < 1e-9


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "bracket", "--triplet", "nonsense:1", "cp2")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "validate", "no-such-diagram")
    assert code == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", "bracket", "cp2"])  # missing --triplet
    assert exc.value.code == 2


def test_triplet_file(capsys, tmp_path):
    from trisect import hopf

    t = hopf.kashaev_triplet(2)

    def dense(h):
        return {
            "dim": h.dim,
            "mult": [[[_coord(h.mult.get((i, j), {}).get(k)) for k in range(h.dim)] for j in range(h.dim)] for i in range(h.dim)],
            "unit": [_coord(h.unit.get(k)) for k in range(h.dim)],
            "comult": [[[_coord(h.comult.get(i, {}).get((j, k))) for k in range(h.dim)] for j in range(h.dim)] for i in range(h.dim)],
            "counit": [_coord(h.counit.get(k)) for k in range(h.dim)],
            "antipode": [[_coord(h.antipode.get(i, {}).get(j)) for j in range(h.dim)] for i in range(h.dim)],
        }

    def _mat(m, rows, cols):
        return [[_coord(m.get((i, j))) for j in range(cols)] for i in range(rows)]

    data = {
        "name": "kashaev2-file",
        "A": dense(t.A), "B": dense(t.B), "C": dense(t.C),
        "tau_AB": _mat(t.tau_AB, t.A.dim, t.B.dim),
        "tau_BC": _mat(t.tau_BC, t.B.dim, t.C.dim),
        "tau_CA": _mat(t.tau_CA, t.C.dim, t.A.dim),
    }
    f = tmp_path / "triplet.json"
    f.write_text(json.dumps(data))
    code, out, _ = run(capsys, "--json", "eval", "bracket", "--triplet", f"file:{f}", "s4")
    assert code == 0 and json.loads(out)["bracket"]["coords"] == ["64"]


def _coord(x):
    if x is None:
        return "0"
    return str(x.as_fraction())


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "10")
    assert code == 0 and "PASS criterion 10" in out


def test_selftest_json_deterministic(capsys):
    _, out1, _ = run(capsys, "--json", "selftest", "--only", "10,6")
    _, out2, _ = run(capsys, "--json", "selftest", "--only", "10,6")
    assert out1 == out2
    data = json.loads(out1)
    assert all(entry["ok"] for entry in data)
