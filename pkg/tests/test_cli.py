"""Unit tests for the cli module."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import pytest

from weierstrass_int.cli import Command, main, run

EXAMPLE_TEXT = (
    "((p^2-p-1)*p' - 4 + (2*z+2)*p^4 + (4*z+2)*p^3 - 4*z*p^2 - 4*p) / ((p+1)*p^2)"
)
EXAMPLE_FIELD = {"g2": "0", "g3": "-4"}


@pytest.fixture(autouse=True)
def _reset_logger():
    logger = logging.getLogger("weierstrass_int")
    logger.handlers.clear()
    yield
    for handler in list(logger.handlers):
        handler.close()
    logger.handlers.clear()


@pytest.fixture()
def config_file(tmp_path: Path) -> Path:
    cfg = tmp_path / "settings.yaml"
    cfg.write_text(
        "output:\n  format: text\n"
        "power_table:\n  n_max: 3\n"
        f"paths:\n  export_dir: {tmp_path / 'data'}\n  log_dir: {tmp_path / 'logs'}\n"
        "logging:\n  level: WARNING\n  to_file: false\n",
        encoding="utf-8",
    )
    return cfg


# ── run ──────────────────────────────────────────────────────


def test_reduce_json_example() -> None:
    result = run(Command("reduce", EXAMPLE_TEXT, format="json", **EXAMPLE_FIELD))
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["verdict"] == "InField"
    assert payload["h"]["A"] == {"num": "0", "den": "1"}
    assert payload["h"]["B"] == {"num": "0", "den": "1"}


def test_reduce_json_zeta_form() -> None:
    result = run(Command("reduce", "p^3", g2="4", g3="1", format="json"))
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["zeta_coeff"] == "-3/5"
    assert payload["antiderivative"].endswith(" - 3/5*zeta")


def test_integrate_text() -> None:
    result = run(Command("integrate", "p^3", g2="4", g3="1"))
    assert result.exit_code == 0
    assert result.output.endswith(" - 3/5*zeta")


def test_integrate_failure_is_not_an_error() -> None:
    result = run(Command("integrate", "p'/(p+1)", **EXAMPLE_FIELD))
    assert result.exit_code == 0
    assert result.output.startswith("no antiderivative: ")


def test_check_not_elementary() -> None:
    result = run(Command("check", "p", format="json", **EXAMPLE_FIELD))
    assert result.exit_code == 0
    assert json.loads(result.output)["elementary"] == "NotElementary"


def test_split_text() -> None:
    result = run(Command("split", "1/(p^2*(p+1))", **EXAMPLE_FIELD))
    assert result.exit_code == 0
    assert "DN = p^2" in result.output
    assert "DS = p + 1" in result.output


def test_power_table_json(tmp_path: Path) -> None:
    result = run(Command("power-table", g2="4", g3="1", format="json", n=4, csv_dir=str(tmp_path)))
    assert result.exit_code == 0
    rows = json.loads(result.output)
    assert [row["n"] for row in rows] == [0, 1, 2, 3, 4]
    assert rows[4]["zeta_coeff"] == "-1/7"
    assert all(row["paths_agree"] for row in rows)
    assert list(tmp_path.glob("*.csv"))


def test_assumed_field_is_conditional() -> None:
    result = run(Command("check", "p", q="4*t^3 - z*t", assume_hypothesis=True, format="json"))
    assert result.exit_code == 0
    assert json.loads(result.output)["conditional"] is True


@pytest.mark.parametrize(
    "cmd, code",
    [
        (Command("reduce", "p", q="t^2+1"), 3),
        (Command("reduce", "p", q="4*t^3 - z*t"), 4),
        (Command("reduce", "2p", **EXAMPLE_FIELD), 2),
        (Command("reduce", "1/(p-p)", **EXAMPLE_FIELD), 2),
        (Command("reduce", "p", g2="3", g3="1"), 3),
        (Command("reduce", "p", g2="0"), 3),
        (Command("reduce", "p", q="4*t^3+4", **EXAMPLE_FIELD), 3),
        (Command("reduce", None, **EXAMPLE_FIELD), 3),
    ],
)
def test_error_exit_codes(cmd: Command, code: int) -> None:
    result = run(cmd)
    assert result.exit_code == code
    assert result.output == ""
    assert result.diagnostic.startswith("error: ")


# ── main ─────────────────────────────────────────────────────


def test_main_prints_output(config_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["reduce", "p^2", "--g2", "4", "--g3", "1", "--config", str(config_file)])
    assert code == 0
    out = capsys.readouterr().out
    assert "verdict: InField" in out


def test_main_uses_configured_table_size(config_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["power-table", "--g2", "4", "--g3", "1", "--format", "json", "--config", str(config_file)])
    assert code == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4


def test_main_reports_errors_on_stderr(config_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["reduce", "p +", "--g2", "0", "--g3", "-4", "--config", str(config_file)])
    assert code == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "ParseError" in captured.err


def test_main_missing_explicit_config(tmp_path: Path) -> None:
    code = main(["reduce", "p", "--g2", "0", "--g3", "-4", "--config", str(tmp_path / "nope.yaml")])
    assert code == 3


def test_main_rejects_unknown_verb() -> None:
    with pytest.raises(SystemExit) as exc:
        main(["differentiate", "p"])
    assert exc.value.code == 2
