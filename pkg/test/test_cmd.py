from __future__ import annotations
import json
from pathlib import Path
from traceback import format_exception
from click.testing import CliRunner, Result
import pytest
from pytest_mock import MockerFixture
from fusionkit.__main__ import main
from fusionkit.prv import PRVReport
from fusionkit.sweep import CSV_FIELDS, SweepResult, summarize
from fusionkit.util import Weight

DATA_DIR = Path(__file__).with_name("data")


def show_result(r: Result) -> str:
    if r.exception is not None:
        assert isinstance(r.exc_info, tuple)
        return "".join(format_exception(*r.exc_info))
    else:
        return r.output


@pytest.mark.parametrize(
    "args,output",
    [
        (["A1", "--lambda", "1", "--mu", "1"], "V(0)+V(2)\n"),
        (["A1", "--lambda", "3", "--mu", "0"], "V(3)\n"),
        (["a2", "--lambda", "1,0", "--mu", "0,1"], "V(0,0)+V(1,1)\n"),
        (["G2", "--lambda", "1,0", "--mu", "1,0"], "V(0,0)+V(0,1)+V(1,0)+V(2,0)\n"),
    ],
)
def test_cmd_tensor(args: list[str], output: str) -> None:
    r = CliRunner().invoke(main, ["tensor", *args])
    assert r.exit_code == 0, show_result(r)
    assert r.output == output


@pytest.mark.parametrize("cmd", ["tensor", "fusion"])
def test_cmd_help_mentions_order(cmd: str) -> None:
    r = CliRunner().invoke(main, [cmd, "--help"])
    assert r.exit_code == 0, show_result(r)
    assert "ascending lexicographic order" in " ".join(r.output.split())


def test_cmd_tensor_json() -> None:
    r = CliRunner().invoke(main, ["tensor", "A2", "--lambda", "1,1", "--mu", "1,1", "-J"])
    assert r.exit_code == 0, show_result(r)
    data = json.loads(r.output)
    assert data["algebra"] == "A2"
    assert data["lambda"] == [1, 1]
    assert data["dimension"] == 64
    assert data["decomposition"] == [
        {"weight": [0, 0], "multiplicity": 1, "dimension": 1},
        {"weight": [0, 3], "multiplicity": 1, "dimension": 10},
        {"weight": [1, 1], "multiplicity": 2, "dimension": 8},
        {"weight": [2, 2], "multiplicity": 1, "dimension": 27},
        {"weight": [3, 0], "multiplicity": 1, "dimension": 10},
    ]
    assert sum(t["multiplicity"] * t["dimension"] for t in data["decomposition"]) == 64


@pytest.mark.parametrize(
    "args,output",
    [
        (["A1", "--level", "3", "--lambda", "2", "--mu", "2"], "V(0)+V(2)\n"),
        (["A1", "-k", "1", "--lambda", "1", "--mu", "1"], "V(0)\n"),
        (["A1", "-k", "3", "--lambda", "0", "--mu", "2"], "V(2)\n"),
        (["A2", "-k", "2", "--lambda", "1,1", "--mu", "1,1"], "V(0,0)+V(1,1)\n"),
        (["B2", "-k", "1", "--lambda", "1,0", "--mu", "1,0"], "V(0,0)\n"),
    ],
)
def test_cmd_fusion(args: list[str], output: str) -> None:
    r = CliRunner().invoke(main, ["fusion", *args])
    assert r.exit_code == 0, show_result(r)
    assert r.output == output


def test_cmd_fusion_json() -> None:
    r = CliRunner().invoke(
        main, ["fusion", "A1", "-k", "3", "--lambda", "2", "--mu", "2", "--json"]
    )
    assert r.exit_code == 0, show_result(r)
    assert json.loads(r.output) == {
        "algebra": "A1",
        "level": 3,
        "lambda": [2],
        "mu": [2],
        "decomposition": [
            {"weight": [0], "multiplicity": 1, "dimension": 1},
            {"weight": [2], "multiplicity": 1, "dimension": 3},
        ],
    }


def test_cmd_info() -> None:
    r = CliRunner().invoke(main, ["info", "A2"])
    assert r.exit_code == 0, show_result(r)
    assert r.output == (
        "Algebra: A2\n"
        "Rank: 2\n"
        "Dimension: 8\n"
        "Positive-Roots: 3\n"
        "Highest-Root: 1,1\n"
        "Rho: 1,1\n"
        "Comarks: 1,1\n"
        "Dual-Coxeter: 3\n"
        "Weyl-Group-Order: 6\n"
    )


def test_cmd_info_g2() -> None:
    r = CliRunner().invoke(main, ["info", "G2"])
    assert r.exit_code == 0, show_result(r)
    assert "Highest-Root: 0,1\n" in r.output
    assert "Comarks: 1,2\n" in r.output
    assert "Dual-Coxeter: 4\n" in r.output
    assert "Weyl-Group-Order: 12\n" in r.output


def test_cmd_info_json() -> None:
    r = CliRunner().invoke(main, ["info", "-J", "A2"])
    assert r.exit_code == 0, show_result(r)
    with (DATA_DIR / "algebra-A2.json").open() as fp:
        expected = json.load(fp)
    assert json.loads(r.output) == expected


def test_cmd_verify() -> None:
    r = CliRunner().invoke(main, ["verify", "A1", "-k", "4", "--lambda", "4", "--mu", "2"])
    assert r.exit_code == 0, show_result(r)
    data = json.loads(r.output)
    assert data["lambda"] == [4]
    assert data["applicable"] is True
    assert data["passed"] is True
    assert data["fusion_multiplicities"] == [{"weight": [2], "multiplicity": 1}]


def test_cmd_verify_not_applicable() -> None:
    r = CliRunner().invoke(
        main, ["verify", "A2", "-k", "2", "--lambda", "1,1", "--mu", "1,1"]
    )
    assert r.exit_code == 2, show_result(r)
    assert "λ≫μ" in r.output


def test_cmd_verify_failure(mocker: MockerFixture) -> None:
    report = PRVReport(
        algebra="A1",
        level=4,
        lam=Weight((4,)),
        mu=Weight((2,)),
        applicable=True,
        passed=False,
    )
    mocker.patch("fusionkit.__main__.verify_theorem", return_value=report)
    r = CliRunner().invoke(main, ["verify", "A1", "-k", "4", "--lambda", "4", "--mu", "2"])
    assert r.exit_code == 1, show_result(r)
    assert json.loads(r.output)["passed"] is False


def test_cmd_prv_sweep() -> None:
    r = CliRunner().invoke(main, ["prv-sweep", "--series", "A1", "--max-level", "6"])
    assert r.exit_code == 0, show_result(r)
    assert r.output == "all 56 pairs passed (78 PRV components, 30 witnesses)\n"


def test_cmd_prv_sweep_g2() -> None:
    r = CliRunner().invoke(main, ["prv-sweep", "-s", "G2", "--max-level", "3"])
    assert r.exit_code == 0, show_result(r)
    assert r.output.startswith("all ")


def test_cmd_prv_sweep_empty() -> None:
    r = CliRunner().invoke(
        main,
        ["prv-sweep", "-s", "A1", "--max-level", "2", "--lambda", "0", "--mu", "1"],
    )
    assert r.exit_code == 0, show_result(r)
    assert r.output == "0 applicable pairs\n"


def test_cmd_prv_sweep_csv(tmp_path: Path) -> None:
    out = tmp_path / "sweep.csv"
    r = CliRunner().invoke(
        main,
        ["prv-sweep", "-s", "A1", "--max-level", "1", "-f", "csv", "-o", str(out)],
    )
    assert r.exit_code == 0, show_result(r)
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    assert len(lines) == 2


def test_cmd_prv_sweep_failure(mocker: MockerFixture) -> None:
    report = PRVReport(
        algebra="A1",
        level=4,
        lam=Weight((4,)),
        mu=Weight((2,)),
        applicable=True,
        proposition_holds=False,
    )
    m = mocker.patch(
        "fusionkit.__main__.run_sweep",
        return_value=SweepResult(summary=summarize([report]), reports=[report]),
    )
    r = CliRunner().invoke(main, ["prv-sweep", "-s", "A1"])
    assert r.exit_code == 1, show_result(r)
    assert r.output.endswith("\n1 of 1 pairs failed\n")
    assert '"proposition_holds": false' in r.output
    cfg = m.call_args.args[0]
    assert cfg.algebras == ["A1"]
    assert cfg.max_level is None


def test_cmd_prv_sweep_passes_options(mocker: MockerFixture) -> None:
    m = mocker.patch(
        "fusionkit.__main__.run_sweep",
        return_value=SweepResult(summary=summarize([]), reports=[]),
    )
    r = CliRunner().invoke(
        main,
        [
            "--max-dim",
            "500",
            "prv-sweep",
            "-s",
            "A2",
            "-s",
            "b2",
            "--min-level",
            "2",
            "--max-level",
            "4",
            "--mu",
            "1,0",
            "--include-zero-mu",
            "-j",
            "3",
        ],
    )
    assert r.exit_code == 0, show_result(r)
    assert r.output == "0 applicable pairs\n"
    cfg = m.call_args.args[0]
    assert cfg.algebras == ["A2", "B2"]
    assert (cfg.min_level, cfg.max_level) == (2, 4)
    assert cfg.mu == Weight((1, 0))
    assert cfg.lam is None
    assert cfg.include_zero_mu
    assert cfg.jobs == 3
    assert cfg.max_dim == 500


@pytest.mark.parametrize(
    "args",
    [
        ["tensor", "A1", "--lambda", "x", "--mu", "1"],
        ["tensor", "A1", "--lambda", "1,1", "--mu", "1"],
        ["tensor", "A1", "--lambda", "-1", "--mu", "1"],
        ["tensor", "H2", "--lambda", "1,0", "--mu", "1,0"],
        ["tensor", "A1", "--lambda", "1"],
        ["fusion", "A1", "-k", "3", "--lambda", "4", "--mu", "1"],
        ["fusion", "A1", "-k", "0", "--lambda", "0", "--mu", "0"],
        ["info", "E9"],
        ["prv-sweep", "-s", "A1", "--min-level", "3", "--max-level", "2"],
        ["prv-sweep", "-s", "A1", "--lambda", "1,1"],
        ["prv-sweep"],
        ["--max-dim", "5", "tensor", "A2", "--lambda", "2,2", "--mu", "1,1"],
        ["--max-dim", "0", "info", "A1"],
    ],
)
def test_cmd_usage_error(args: list[str]) -> None:
    r = CliRunner().invoke(main, args)
    assert r.exit_code == 2, show_result(r)


def test_cmd_max_dim_envvar(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("FUSIONKIT_MAX_DIM", "5")
    r = CliRunner().invoke(main, ["tensor", "A2", "--lambda", "2,2", "--mu", "1,1"])
    assert r.exit_code == 2, show_result(r)
    monkeypatch.setenv("FUSIONKIT_MAX_DIM", "8")
    r = CliRunner().invoke(main, ["tensor", "A2", "--lambda", "2,2", "--mu", "1,1"])
    assert r.exit_code == 0, show_result(r)
