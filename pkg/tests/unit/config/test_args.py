"""Tests for command line parsing."""

from pathlib import Path

import pytest

from certann.args import (
    BenchArgs,
    BuildArgs,
    CommonArgs,
    QueryArgs,
    ValidateArgs,
    VersionArgs,
    bind_and_run,
)
from certann.errors import ConfigError
from certann.index import IndexMode


def parse(argv: list[str]) -> CommonArgs:
    """Run bind_and_run and return whichever args object was bound."""
    seen: list[CommonArgs] = []

    def on_build(args: BuildArgs) -> None:
        seen.append(args)

    def on_query(args: QueryArgs) -> None:
        seen.append(args)

    def on_bench(args: BenchArgs) -> None:
        seen.append(args)

    def on_validate(args: ValidateArgs) -> None:
        seen.append(args)

    def on_version(args: VersionArgs) -> None:
        seen.append(args)

    bind_and_run(on_build, on_query, on_bench, on_validate, on_version, argv)
    (args,) = seen
    return args


class TestSubcommands:
    def test_build(self):
        args = parse(
            ["build", "points.csv", "points.idx", "--p", "inf", "--k", "3", "--c", "9"],
        )

        assert isinstance(args, BuildArgs)
        assert args.dataset == Path("points.csv")
        assert args.output == Path("points.idx")
        assert args.fmt == "csv"
        config = args.to_config()
        assert config.k == 3
        assert str(config.p) == "inf"
        assert config.mode is IndexMode.LIGHT

    def test_build_full_mode(self):
        args = parse(["build", "a.fvec", "a.idx", "--format", "fvec", "--mode", "full"])

        assert isinstance(args, BuildArgs)
        assert args.fmt == "fvec"
        assert args.to_config().mode is IndexMode.FULL_EXPANSION

    def test_query(self):
        args = parse(["query", "a.idx", "0.5,1,2"])

        assert isinstance(args, QueryArgs)
        assert args.query == "0.5,1,2"

    def test_bench(self):
        args = parse(["bench", "a.idx", "q.csv", "--oracle", "--threads", "2"])

        assert isinstance(args, BenchArgs)
        assert args.oracle
        assert args.threads == 2

    def test_validate(self):
        args = parse(["validate", "bounds", "--d", "8", "32", "--trials", "1000"])

        assert isinstance(args, ValidateArgs)
        assert args.suite == "bounds"
        assert args.d == [8, 32]
        assert args.trials == 1000
        assert args.c_over_tau == [1.5, 3.0]
        assert args.csv is None

    def test_version(self):
        assert isinstance(parse(["version"]), VersionArgs)

    def test_unknown_suite_exits(self):
        with pytest.raises(SystemExit):
            parse(["validate", "everything"])

    def test_invalid_parameters_raise_config_error(self):
        args = parse(["build", "a.csv", "a.idx", "--radius", "-1"])

        assert isinstance(args, BuildArgs)
        with pytest.raises(ConfigError):
            args.to_config()

    def test_build_defaults_derive_c_from_tau(self):
        """Without --c, c is twice tau: d=8, l_2, Rademacher gives c=16."""
        args = parse(["build", "a.csv", "a.idx"])

        assert isinstance(args, BuildArgs)
        config = args.to_config()
        assert config.c is None
        assert config.analysis_params(8).c == pytest.approx(16.0)

    def test_build_c_over_tau(self):
        args = parse(["build", "a.csv", "a.idx", "--c-over-tau", "3"])

        assert isinstance(args, BuildArgs)
        assert args.to_config().analysis_params(8).c == pytest.approx(24.0)

    def test_validate_rejects_c(self):
        """validate sets c per cell through --c-over-tau only."""
        with pytest.raises(SystemExit):
            parse(["validate", "bounds", "--c", "9"])
