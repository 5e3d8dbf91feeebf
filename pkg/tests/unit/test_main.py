"""Tests for error handling in the CLI entry point."""

import pytest

from certann.args import QueryArgs
from certann.commands.base_command import Command
from certann.errors import (
    CertannError,
    ConfigError,
    DataError,
    InvariantViolationError,
)
from certann.ingest import write_csv
from certann.main import main, run_command
from certann.ui.console_ui import ConsoleUI


class FailingCommand(Command):
    """Raises the error it was given."""

    error: Exception

    def execute(self) -> None:
        raise self.error


def failing(error: Exception):
    def factory(_args: QueryArgs, ui: ConsoleUI) -> Command:
        command = FailingCommand(ui)
        command.error = error
        return command

    return factory


class TestRunCommand:
    @pytest.mark.parametrize(
        ("error", "code"),
        [
            (CertannError("boom"), 4),
            (ConfigError("bad c"), 2),
            (DataError("bad file"), 3),
            (InvariantViolationError("broken"), 4),
        ],
    )
    def test_error_family_sets_exit_code(self, tmp_path, capsys, error, code):
        args = QueryArgs(index=tmp_path / "a.idx", query="1")

        with pytest.raises(SystemExit) as exc_info:
            run_command(failing(error), args)

        assert exc_info.value.code == code
        assert f"error: {error}" in capsys.readouterr().err

    def test_unexpected_errors_exit_with_four(self, tmp_path, capsys):
        """Anything outside the error families counts as an internal failure."""
        args = QueryArgs(index=tmp_path / "a.idx", query="1")

        with pytest.raises(SystemExit) as exc_info:
            run_command(failing(RuntimeError("surprise")), args)

        assert exc_info.value.code == 4
        assert "internal error: surprise" in capsys.readouterr().err


class TestMain:
    def test_build_then_query(self, tmp_path, capsys, gaussian_dataset):
        csv_path = write_csv(gaussian_dataset, tmp_path / "points.csv")
        index_path = tmp_path / "points.idx"

        main(["build", str(csv_path), str(index_path), "--c", "12", "--k", "2"])
        capsys.readouterr()
        main(["query", str(index_path), "0,0,0,0,0,0,0,0"])

        assert capsys.readouterr().out.strip()

    def test_config_error_exits_with_two(self, tmp_path, capsys):
        csv_path = tmp_path / "points.csv"
        csv_path.write_text("0,0\n1,1\n")

        with pytest.raises(SystemExit) as exc_info:
            main(["build", str(csv_path), str(tmp_path / "x.idx"), "--c", "1.5"])

        assert exc_info.value.code == 2
        assert "tau" in capsys.readouterr().err


class TestPrepare:
    def test_dotenv_is_read_from_working_directory(
        self,
        mocker,
        tmp_path,
        monkeypatch,
    ):
        load_dotenv = mocker.patch("certann.main.load_dotenv")
        mocker.patch("certann.main.init_logging")
        monkeypatch.chdir(tmp_path)

        main(["validate", "norms", "--d", "2", "--trials", "50"])

        load_dotenv.assert_called_once_with(
            dotenv_path=tmp_path / ".env",
            override=False,
        )
