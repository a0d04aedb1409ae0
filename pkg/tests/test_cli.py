"""CLI behavior: formats, exit codes, determinism, round trips, reports."""

import json

import pytest

from fillorder.cli import main

P3_MM = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n3 2\n"


@pytest.fixture
def p3(tmp_path):
    p = tmp_path / "p3.mm"
    p.write_text(P3_MM)
    return str(p)


def run(args):
    return main(args)


def test_order_brute_p3(p3, tmp_path, capsys):
    out = tmp_path / "p.perm"
    assert run(["order", "--input", p3, "--method", "brute", "--out", str(out)]) == 0
    assert out.read_text() == "0\n1\n2\n"


def test_order_log_degrees(p3, tmp_path):
    out = tmp_path / "p.perm"
    run(["order", "--input", p3, "--method", "brute", "--out", str(out), "--log-degrees"])
    assert out.read_text() == "0\t1\n1\t1\n2\t0\n"


def test_order_approx_deterministic(p3, tmp_path):
    a, b = tmp_path / "a.perm", tmp_path / "b.perm"
    for out in (a, b):
        assert run(["order", "--input", p3, "--method", "approx", "--epsilon", "0.5",
                    "--seed", "7", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_order_audit_json_line(p3, tmp_path, capsys):
    out = tmp_path / "p.perm"
    run(["order", "--input", p3, "--method", "sketch-exact", "--delta", "2",
         "--seed", "1", "--out", str(out), "--audit"])
    line = capsys.readouterr().out.strip().splitlines()[-1]
    audit = json.loads(line)
    assert set(audit) == {"informs", "oracle_calls", "copies"}
    assert audit["copies"] >= 1


def test_order_capped_requires_delta(p3):
    assert run(["order", "--input", p3, "--method", "capped"]) == 64


def test_order_approx_requires_epsilon(p3):
    assert run(["order", "--input", p3, "--method", "approx"]) == 64


def test_verify_self_consistency(p3, tmp_path, capsys):
    out = tmp_path / "p.perm"
    run(["order", "--input", p3, "--method", "brute", "--out", str(out)])
    assert run(["verify", "--input", p3, "--perm", str(out), "--epsilon", "0"]) == 0
    assert "violating_steps=0" in capsys.readouterr().out


def test_verify_reports_violations_on_star(tmp_path):
    gpath = tmp_path / "star.edges"
    run(["gen", "star", "8", "--out", str(gpath)])
    bad = tmp_path / "bad.perm"
    bad.write_text("".join(f"{v}\n" for v in range(8)))  # center first
    assert run(["verify", "--input", str(gpath), "--perm", str(bad),
                "--epsilon", "0.5"]) == 1


def test_verify_non_permutation_exit_code(p3, tmp_path):
    bad = tmp_path / "bad.perm"
    bad.write_text("0\n0\n1\n")
    assert run(["verify", "--input", p3, "--perm", str(bad)]) == 65


def test_fill_command(p3, tmp_path, capsys):
    perm = tmp_path / "p.perm"
    perm.write_text("0\n2\n1\n")
    assert run(["fill", "--input", p3, "--perm", str(perm)]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.mm"
    bad.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n2 3 0\n")
    assert run(["order", "--input", str(bad), "--method", "brute", "--out", "-"]) == 2


def test_missing_file_exit_code():
    assert run(["order", "--input", "/nonexistent/g.mm", "--method", "brute",
                "--out", "-"]) == 2


def test_gen_families_round_trip(tmp_path):
    for fam, params in (("grid", ["3"]), ("path", ["5"]), ("clique", ["4"]),
                        ("star", ["6"]), ("erdos-renyi", ["30", "0.1"])):
        gpath = tmp_path / f"{fam}.edges"
        assert run(["gen", fam, *params, "--out", str(gpath), "--seed", "3"]) == 0
        out = tmp_path / f"{fam}.perm"
        assert run(["order", "--input", str(gpath), "--method", "brute",
                    "--out", str(out)]) == 0
        assert run(["verify", "--input", str(gpath), "--perm", str(out),
                    "--epsilon", "0"]) == 0


def test_gen_matrix_market_emission(tmp_path):
    gpath = tmp_path / "g.mm"
    assert run(["gen", "grid", "3", "--out", str(gpath), "--emit", "mm"]) == 0
    text = gpath.read_text()
    assert text.startswith("%%MatrixMarket matrix coordinate pattern symmetric")
    out = tmp_path / "g.perm"
    assert run(["order", "--input", str(gpath), "--method", "brute", "--out", str(out)]) == 0


def test_gen_ov_with_sidecar(tmp_path):
    gpath = tmp_path / "ov.edges"
    assert run(["gen", "ov", "6", "3", "0.5", "--out", str(gpath), "--seed", "4"]) == 0
    vecs = (tmp_path / "ov.edges.vectors").read_text().splitlines()
    assert len(vecs) == 6 and all(len(v) == 3 and set(v) <= {"0", "1"} for v in vecs)


def test_gen_bad_params(tmp_path):
    assert run(["gen", "grid", "--out", str(tmp_path / "x.edges")]) == 64


def test_cover_check(capsys):
    assert run(["cover-check", "9"]) == 0
    out = capsys.readouterr().out
    assert "k=12" in out and "max_size=3" in out and "all pairs covered" in out
    assert run(["cover-check", "1"]) == 0
    assert "k=1" in capsys.readouterr().out


def test_capped_grid_verifies_exactly(tmp_path):
    gpath = tmp_path / "g5.edges"
    run(["gen", "grid", "5", "--out", str(gpath)])
    out = tmp_path / "g5.perm"
    assert run(["order", "--input", str(gpath), "--method", "capped", "--delta", "4",
                "--seed", "11", "--out", str(out)]) == 0
    assert run(["verify", "--input", str(gpath), "--perm", str(out),
                "--epsilon", "0"]) == 0


def test_report_writes_figures_and_logs(p3, tmp_path):
    outdir = tmp_path / "rep"
    assert run(["report", "--input", p3, "--method", "brute",
                "--outdir", str(outdir), "--prefix", "p3"]) == 0
    for suffix in ("p3.perm", "p3_degrees.tsv", "p3_degree_profile.png",
                   "p3_fill_growth.png", "p3_audit.json"):
        f = outdir / suffix
        assert f.exists() and f.stat().st_size > 0
    header, first = (outdir / "p3_degrees.tsv").read_text().splitlines()[:2]
    assert header.split("\t") == ["step", "vertex", "reported_degree",
                                  "true_degree", "true_minimum"]
    assert first.split("\t") == ["0", "0", "1", "1", "1"]


def test_stdin_stdout_paths(p3, tmp_path, capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(P3_MM))
    assert run(["order", "--input", "-", "--method", "brute", "--out", "-"]) == 0
    assert capsys.readouterr().out == "0\n1\n2\n"
