"""
Shared plumbing for the report management commands.

Exit codes: 0 success, 1 usage, 2 data error, 3 tolerance failure. Domain
errors surface as a single ``code: message`` line.
"""
import argparse
import sys
from enum import IntEnum
from functools import wraps
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from core.choices import Frequency, Position
from core.exceptions import InvalidConfig, TailcorrError

from .runconfig import RunConfig


class ExitCode(IntEnum):
    OK = 0
    USAGE = 1
    DATA = 2
    TOLERANCE = 3


def weight_pair(text):
    try:
        w1, w2 = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected w1,w2 (e.g. 0.5,0.5), got {text!r}")
    return w1, w2


def unsigned_seed(text):
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed {seed} is not an unsigned 64-bit integer")
    return seed


def _usage_error(parser, message):
    if parser.called_from_command_line:
        parser.print_usage(sys.stderr)
        parser.exit(ExitCode.USAGE, f"{parser.prog}: error: {message}\n")
    raise CommandError(f"Error: {message}", returncode=ExitCode.USAGE)


def data_errors(handle):
    """
    Translate domain errors raised by ``handle`` into data-error exits.

    Conflicting or invalid arguments are reported as usage errors before this
    point, by ``ReportCommand.run_config`` and ``ReportCommand.build_grid``.
    """
    @wraps(handle)
    def wrapper(self, *args, **options):
        try:
            return handle(self, *args, **options)
        except TailcorrError as exc:
            raise CommandError(f"{exc.code}: {exc}", returncode=ExitCode.DATA)
    return wrapper


class UsageExitMixin:
    """Argument errors exit with the usage code instead of argparse's 2."""

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = lambda message: _usage_error(parser, message)
        return parser

    def usage(self, message):
        if isinstance(message, TailcorrError):
            message = f"{message.code}: {message}"
        return CommandError(f"Error: {message}", returncode=ExitCode.USAGE)


class ReportCommand(UsageExitMixin, BaseCommand):
    """Base for commands that evaluate a surface on files or synthetic data."""

    formats = ("csv", "svg", "text")
    default_format = "text"

    def add_arguments(self, parser):
        parser.add_argument('--asset1', type=Path, help='Closing prices of the first asset (CSV date,close).')
        parser.add_argument('--asset2', type=Path, help='Closing prices of the second asset (CSV date,close).')
        parser.add_argument('--synthetic', type=Path, help='Generator config (TOML) instead of price files.')
        parser.add_argument('--frequency', choices=Frequency.values, help='Return frequency (default: from grid, else daily).')
        parser.add_argument('--grid', help='paper-daily, paper-weekly (aliases of standard-daily, standard-weekly) or a grid CSV (probability,w1,w2,position).')
        parser.add_argument('--weights', type=weight_pair, action='append', default=[], help='Weight pair w1,w2 (repeatable).')
        parser.add_argument('--position', choices=[*Position.values, 'both'], default='both')
        parser.add_argument('--format', dest='output_format', choices=self.formats, default=self.default_format)
        parser.add_argument('--out', type=Path, help='Write the artifact here instead of stdout.')
        parser.add_argument('--seed', type=unsigned_seed, help='Override the synthetic generator seed.')

    def run_config(self, options):
        try:
            return self._run_config(options)
        except InvalidConfig as exc:
            raise self.usage(exc)

    def build_grid(self, cfg, frequency):
        """The run's grid at ``frequency``; argument conflicts and an empty grid are usage errors."""
        try:
            grid = cfg.build_grid(frequency)
        except InvalidConfig as exc:
            raise self.usage(exc)
        if not grid:
            raise self.usage("grid is empty after applying --weights/--position")
        return grid

    def _run_config(self, options):
        return RunConfig(
            asset1=options.get('asset1'),
            asset2=options.get('asset2'),
            synthetic=options.get('synthetic'),
            frequency=options.get('frequency'),
            grid=options.get('grid'),
            weights=tuple(options.get('weights') or ()),
            position=options.get('position') or 'both',
            output_format=options.get('output_format') or self.default_format,
            out=options.get('out'),
            seed=options.get('seed'),
        )

    def emit(self, content, out=None):
        if out is None:
            self.stdout.write(content, ending="")
            return
        Path(out).write_text(content, encoding="utf-8")
        self.stderr.write(self.style.SUCCESS(f"Wrote {out}"))
