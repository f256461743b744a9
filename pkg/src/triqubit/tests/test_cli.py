import json

import numpy as np
import pytest
from typer.testing import CliRunner

from triqubit import config
from triqubit.bases import paper_combination
from triqubit.boundstate import PAPER_SIXTEENTHS
from triqubit.cli import app
from triqubit.fileio import bundled, load_matrix

try:
    runner = CliRunner(mix_stderr=False)
except TypeError:  # click >= 8.2 keeps the streams apart already
    runner = CliRunner()

EXPECTED_DISCREPANCIES = {"S3.three_term.tau_AB", "S3.four_term.tau_ABC", "S3.four_term.tau_AB",
                          "S3.four_term.tau_BC", "S3.four_term.tau_AC"}


def run(*args):
    return runner.invoke(app, [str(a) for a in args])


def report(result):
    return json.loads(result.stdout)


@pytest.fixture(scope="module")
def paper_run():
    return run("verify-paper", "--no-pretty")


def test_tangles_two_term_state(state_file):
    res = run("tangles", state_file(paper_combination(2).amps))
    assert res.exit_code == 0, res.stderr
    out = report(res)
    assert out["schema"] == "triqubit-report/1"
    prof = out["profile"]
    assert prof["tau_A"] == pytest.approx(0.75, abs=1e-12)
    assert prof["tau_B"] == pytest.approx(0.5, abs=1e-12)
    assert prof["tau_C"] == pytest.approx(0.5, abs=1e-12)
    assert prof["tau_ABC"] == pytest.approx(0.25, abs=1e-12)
    assert out["route_residual"] < 1e-10
    assert not out["fully_product"]


def test_tangles_basis_ket_is_all_zero(state_file):
    out = report(run("tangles", state_file([1, 0, 0, 0, 0, 0, 0, 0])))
    assert all(abs(v) < 1e-12 for v in out["profile"].values())
    assert out["fully_product"]


def test_tangles_rejects_short_files(state_file):
    res = run("tangles", state_file(np.ones(7) / np.sqrt(7)))
    assert res.exit_code == 2
    assert "amplitudes" in res.stderr


def test_tangles_normalize_flag(state_file):
    p = state_file([2, 0, 0, 0, 0, 0, 0, 0])
    assert run("tangles", p).exit_code == 2
    assert run("tangles", p, "--normalize").exit_code == 0


def test_check_basis_certifies_the_upb():
    res = run("check-basis", bundled("shifts"), "--certify", "--restarts", 16)
    assert res.exit_code == 0, res.stderr
    out = report(res)
    assert out["kind"] == "product"
    assert out["gram_residual"] < 1e-12
    cert = out["certification"]
    assert cert["outcome"] == "unextendible" and cert["margin"] > 0


def test_check_basis_certifies_the_entangled_span():
    out = report(run("check-basis", bundled("eeb"), "--certify", "--restarts", 16))
    assert out["certification"]["outcome"] == "product-free"
    assert not any(s["fully_product"] for s in out["states"])


def test_check_basis_finds_a_witness(basis_file):
    p = basis_file([[1, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0, 0, 0]])
    res = run("check-basis", p, "--certify", "--restarts", 8)
    assert res.exit_code == 0, res.stderr
    cert = report(res)["certification"]
    assert cert["outcome"] == "extendible"
    assert cert["best_value"] > 1 - 1e-9
    w = np.array([complex(*z) for z in cert["witness"]["amplitudes"]])
    assert abs(w[0]) < 1e-4 and abs(w[3]) < 1e-4


def test_check_basis_exit_code_on_non_convergence(monkeypatch):
    monkeypatch.setattr(config, "MAX_ITERS", 1)
    res = run("check-basis", bundled("eeb"), "--certify", "--restarts", 2)
    assert res.exit_code == 3
    assert "converge" in res.stderr


def test_check_basis_rejects_bad_input(basis_file):
    assert run("check-basis", basis_file([[1, 0, 0, 0, 0, 0, 0, 0]] * 2)).exit_code == 2
    assert run("check-basis", bundled("eeb"), "--certify", "--tol", 0).exit_code == 2


def test_bound_state_and_export(tmp_path):
    target = tmp_path / "rho.json"
    res = run("bound-state", "--restarts", 16, "--export", target)
    assert res.exit_code == 0, res.stderr
    out = report(res)
    assert out["matrix_matches_paper"] and out["ppt"]["ppt_all"] and out["bound_entangled"]
    assert out["matrix"]["sixteenths"] == [list(r) for r in PAPER_SIXTEENTHS]
    exported = load_matrix(target)
    assert [[list(p) for p in row] for row in exported.entries] == out["matrix"]["entries"]


def test_bound_state_dual():
    out = report(run("bound-state", "--dual", "--restarts", 16))
    assert out["variant"] == "dual"
    assert out["ppt"]["ppt_all"]
    assert not out["matrix_matches_paper"]


def test_lu_orbit_is_deterministic():
    first, second = run("lu-orbit", "--seed", 7, "--count", 3), run("lu-orbit", "--seed", 7, "--count", 3)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    out = report(first)
    assert len(out["samples"]) == 3
    assert out["max_residual"] < 1e-9


def test_lu_orbit_needs_a_positive_count():
    assert run("lu-orbit", "--count", 0).exit_code == 2


def test_verify_paper_passes(paper_run):
    assert paper_run.exit_code == 0, paper_run.stderr
    out = report(paper_run)
    assert out["counts"]["FAIL"] == 0
    assert {c["claim_id"] for c in out["claims"] if c["status"] == "DISCREPANCY"} == EXPECTED_DISCREPANCIES


def test_verify_paper_rows(paper_run):
    rows = {c["claim_id"]: c for c in report(paper_run)["claims"]}
    assert rows["S3.two_term.tau_A"]["status"] == "PASS"
    assert rows["S3.two_term.tau_A"]["computed_value"] == pytest.approx(0.75, abs=1e-12)
    assert rows["S4.rho.matrix"]["status"] == "PASS"
    tau = rows["S3.four_term.tau_ABC"]
    assert tau["paper_value"] == "3/16"
    assert tau["computed_value"] == pytest.approx(1 / 8, abs=1e-12)
    assert tau["checks"]["hdet_form_residual"] <= 1e-12
    ab = rows["S3.three_term.tau_AB"]
    assert ab["paper_value"] == "4/9"
    assert ab["computed_value"] == pytest.approx(0, abs=1e-12)
    assert ab["checks"]["ckw_residual"] <= 1e-8
    assert rows["S2.eeb.product_free"]["status"] == "PASS"
    assert rows["S2.upb.unextendible"]["status"] == "PASS"


def test_export_data_feeds_check_basis(tmp_path):
    res = run("export-data", tmp_path)
    assert res.exit_code == 0
    assert len(report(res)["written"]) == 5
    out = report(run("check-basis", tmp_path / "dual_eeb.json"))
    assert out["kind"] == "entangled"


def test_pretty_table_goes_to_stderr(state_file):
    res = run("tangles", state_file([1, 0, 0, 0, 0, 0, 0, 0]), "--pretty")
    assert "tau_ABC" in res.stderr
    assert report(res)["command"] == "tangles"


def test_unknown_log_level():
    assert run("--log-level", "LOUD", "lu-orbit", "--count", 1).exit_code == 2


@pytest.mark.parametrize("args", [
    ("lu-orbit", "--seed", -1, "--count", 1),
    ("bound-state", "--seed", -3),
    ("check-basis", "--seed", -1, "--certify"),
    ("verify-paper", "--seed", -1),
])
def test_negative_seeds_are_usage_errors(args):
    if args[0] == "check-basis":
        args = (args[0], bundled("eeb")) + args[1:]
    assert run(*args).exit_code == 2
