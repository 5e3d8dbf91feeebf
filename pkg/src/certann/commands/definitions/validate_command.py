"""Implement the validate command, which runs one suite of empirical checks."""

from collections.abc import Callable, Iterator
from typing import override

from certann.analysis import AnalysisParams, tau
from certann.args import ValidateArgs
from certann.commands.base_command import Command
from certann.config import Config
from certann.errors import InvariantViolationError
from certann.hashing import make_rng
from certann.index import build, resolve_k
from certann.log import get_logger
from certann.ui import validation_renderers  # noqa: F401
from certann.ui.console_ui import ConsoleUI
from certann.validation import (
    PropertyReport,
    ValidationReport,
    check_expected_false_positives,
    check_far_pair_bound,
    check_norm_inequality,
    check_projection_observations,
    check_sandwich,
    check_tightness_pge2,
    check_tightness_plt2,
    random_workload,
)

logger = get_logger(__name__)

_SEED_BOUND = 2**63


class ValidateCommand(Command):
    """Run the bounds, tightness, sandwich, norms or false-positives suite.

    Results are displayed first; a failed check then raises
    InvariantViolationError so the exit code reflects it.
    """

    def __init__(self, args: ValidateArgs, ui: ConsoleUI) -> None:
        """Initialize with parsed validate arguments."""
        super().__init__(ui)
        self.args = args
        self.config: Config = args.to_config()
        self._seeds = make_rng(self.config.seed)

    def _next_seed(self) -> int:
        return int(self._seeds.integers(0, _SEED_BOUND))

    def _cells(self) -> Iterator[AnalysisParams]:
        """Parameters for every (d, c/tau) combination."""
        for d in self.args.d:
            threshold = tau(self.config.distribution, d, self.config.p)
            for factor in self.args.c_over_tau:
                yield self.config.model_copy(
                    update={"c": factor * threshold},
                ).analysis_params(d)

    def _bounds(self) -> bool:
        report: ValidationReport | None = None
        for params in self._cells():
            part = check_far_pair_bound(
                params,
                self.args.pairs,
                self.args.trials,
                self._next_seed(),
                self.config.threads,
            )
            report = part if report is None else report + part
        if report is None:
            return True
        report.title = f"far-pair collision bound ({self.config.distribution})"
        report.seed = self.config.seed
        return self._show_rows(report)

    def _tightness(self) -> bool:
        p = self.config.p
        check = (
            check_tightness_pge2
            if p.is_infinite or p.ord >= 2  # noqa: PLR2004
            else check_tightness_plt2
        )
        report: ValidationReport | None = None
        for d in self.args.d:
            part = check(
                d,
                p,
                self.config.r,
                self.args.epsilon,
                self.args.trials,
                self._next_seed(),
                self.config.distribution,
                self.config.threads,
            )
            report = part if report is None else report + part
        if report is None:
            return True
        report.seed = self.config.seed
        return self._show_rows(report)

    def _show_rows(self, report: ValidationReport) -> bool:
        self.ui.display(report)
        if self.args.csv is not None:
            path = report.write_csv(self.args.csv)
            self.ui.display_info(f"wrote {len(report.rows)} rows to {path}")
        return report.passed

    def _sandwich(self) -> bool:
        passed = True
        for params in self._cells():
            dataset, queries = random_workload(
                params,
                self.args.n,
                self.args.queries,
                self._next_seed(),
            )
            index = build(
                dataset,
                params,
                self.config.mode,
                self.config.k,
                self._next_seed(),
                cell_budget=self.config.cell_budget,
                clamp_k=self.config.clamp_k,
            )
            self.ui.display_info(
                f"d={params.d} p={params.p} c={params.c:.6g} {self.config.mode} "
                f"k={index.k}",
            )
            report = check_sandwich(index, list(queries), self.config.threads)
            self.ui.display(report)
            passed = passed and report.passed
        return passed

    def _false_positives(self) -> bool:
        passed = True
        for params in self._cells():
            dataset, queries = random_workload(
                params,
                self.args.n,
                self.args.queries,
                self._next_seed(),
            )
            k = self.config.k or resolve_k(
                dataset,
                params,
                self.config.mode,
                clamp_k=self.config.clamp_k,
            )
            report = check_expected_false_positives(
                dataset,
                params,
                self.config.mode,
                k,
                self.args.builds,
                list(queries),
                self._next_seed(),
                self.config.threads,
            )
            self.ui.display_info(f"d={params.d} p={params.p} c={params.c:.6g}")
            self.ui.display(report)
            passed = passed and report.passed
        return passed

    def _norms(self) -> bool:
        report = PropertyReport(title="norm inequalities and projection implications")
        for d in self.args.d:
            report.checks.extend(
                check_norm_inequality(
                    d,
                    self.config.p,
                    self.args.trials,
                    self._next_seed(),
                ),
            )
            report.checks.extend(
                check_projection_observations(
                    d,
                    self.config.p,
                    self.config.r,
                    self.config.distribution,
                    self.args.trials,
                    self._next_seed(),
                ),
            )
        self.ui.display(report)
        return report.passed

    @override
    def execute(self) -> None:
        """Run the selected suite.

        Raises:
            InvariantViolationError: if any check of the suite failed.

        """
        suites: dict[str, Callable[[], bool]] = {
            "bounds": self._bounds,
            "tightness": self._tightness,
            "sandwich": self._sandwich,
            "norms": self._norms,
            "false-positives": self._false_positives,
        }
        if self.args.csv is not None and self.args.suite not in {
            "bounds",
            "tightness",
        }:
            self.ui.display_warning("--csv only applies to bounds and tightness")
        logger.info("Running validation suite %s", self.args.suite)
        if not suites[self.args.suite]():
            msg = f"validation suite {self.args.suite} reported failures"
            raise InvariantViolationError(msg)
