from __future__ import annotations

from pathlib import Path

import orjson
import pytest

from scripts import pce_dep


def test_parse_degrees() -> None:
    assert pce_dep.parse_degrees("1..4") == [1, 2, 3, 4]
    assert pce_dep.parse_degrees("1, 2,5") == [1, 2, 5]
    with pytest.raises(ValueError, match="1..15"):
        pce_dep.parse_degrees("one")
    with pytest.raises(ValueError, match="select nothing"):
        pce_dep.parse_degrees("5..1")


def test_parse_options_casts_scalars() -> None:
    assert pce_dep.parse_options(["probes=1000", "step=0.01", "flag=true", "name=x=y"]) == {
        "probes": 1000,
        "step": 0.01,
        "flag": True,
        "name": "x=y",
    }
    with pytest.raises(ValueError, match="key=value"):
        pce_dep.parse_options(["probes"])


def test_run_and_report(tmp_path: Path) -> None:
    out = tmp_path / "runs"

    status = pce_dep.main(
        [
            "run",
            "--experiment",
            "genz2d",
            "--degrees",
            "1..2",
            "--strategies",
            "dom(1,1)",
            "gs(1,1)",
            "--trials",
            "1",
            "--candidates",
            "100",
            "--test-samples",
            "50",
            "--out",
            str(out),
            "--timings",
        ]
    )

    (run_dir,) = out.iterdir()
    markdown = tmp_path / "report.md"
    assert status == 0
    assert pce_dep.main(["report", str(run_dir), "--markdown", str(markdown)]) == 0
    assert (run_dir / "summary.json").exists()
    assert "## genz2d" in markdown.read_text(encoding="utf-8")
    manifest = orjson.loads((run_dir / "manifest.json").read_bytes())
    assert manifest["config"]["record_timings"] is True


def test_run_can_reuse_a_manifest(tmp_path: Path) -> None:
    config = tmp_path / "config.json"
    config.write_bytes(
        orjson.dumps(
            {
                "experiment": "genz2d",
                "degrees": [1],
                "strategies": ["dom(1,1)"],
                "trials": 1,
                "candidates": 50,
                "test_samples": 20,
                "out": str(tmp_path / "first"),
            }
        )
    )

    assert pce_dep.main(["run", "--config", str(config)]) == 0
    (first,) = (tmp_path / "first").iterdir()
    assert pce_dep.main(["run", "--config", str(first / "manifest.json"), "--out", str(tmp_path / "second")]) == 0
    (second,) = (tmp_path / "second").iterdir()

    assert first.name == second.name
    assert (first / "results.csv").read_bytes() == (second / "results.csv").read_bytes()


def test_leja_dump(tmp_path: Path) -> None:
    target = tmp_path / "leja.json"

    status = pce_dep.main(
        [
            "leja",
            "--density",
            "beta-tensor",
            "--strategy",
            "dom(2,5)",
            "--degree",
            "2",
            "--candidates",
            "200",
            "--seed",
            "3",
            "--out",
            str(target),
        ]
    )

    export = orjson.loads(target.read_bytes())
    assert status == 0
    assert len(export["points"]) == 6
    assert len(set(export["pivots"])) == 6
    assert export["seed"] == 3
    assert export["candidates"] == "mixed:200"
    assert export["kappa_q"] >= 1.0


def test_nataf_correlation_dump(tmp_path: Path) -> None:
    config = tmp_path / "nataf.json"
    target = tmp_path / "out.json"
    config.write_bytes(
        orjson.dumps(
            {
                "marginals": [{"name": "normal", "params": [0, 1]}, {"name": "normal", "params": [1, 2]}],
                "correlation": [[1.0, 0.4], [0.4, 1.0]],
            }
        )
    )

    assert pce_dep.main(["nataf-corr", "--config", str(config), "--out", str(target)]) == 0

    export = orjson.loads(target.read_bytes())
    assert export["r_v"][0][1] == pytest.approx(0.4, abs=1e-10)


def test_infeasible_correlation_exits_with_one(tmp_path: Path) -> None:
    config = tmp_path / "nataf.json"
    config.write_bytes(
        orjson.dumps(
            {
                "marginals": [{"name": "beta", "params": [0.5, 5]}, {"name": "beta", "params": [0.5, 5]}],
                "correlation": [[1.0, -0.99], [-0.99, 1.0]],
            }
        )
    )

    assert pce_dep.main(["nataf-corr", "--config", str(config)]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["leja", "--density", "beta-tensor", "--strategy", "leja(1,1)", "--degree", "2"],
        ["leja", "--density", "gamma", "--strategy", "dom(1,1)", "--degree", "2"],
        ["run", "--degrees", "1..2"],
        ["run", "--experiment", "genz2d", "--degrees", "x"],
        ["run", "--experiment", "genz2d", "--trials", "0"],
    ],
)
def test_usage_errors_exit_with_two(argv: list[str]) -> None:
    with pytest.raises(SystemExit) as info:
        pce_dep.main(argv)

    assert info.value.code == 2


def test_unreadable_results_are_usage_errors(tmp_path: Path) -> None:
    bad = tmp_path / "results.csv"
    bad.write_text("nope\n", encoding="utf-8")

    with pytest.raises(SystemExit) as info:
        pce_dep.main(["report", str(bad)])

    assert info.value.code == 2
