import argparse
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from ...base import ExitCode, UsageExitMixin, data_errors, unsigned_seed
from ...selftest import render_report, run_selftest


class Command(UsageExitMixin, BaseCommand):
    help = 'Gaussian constancy selftest: implied correlation must match the generating correlation everywhere.'

    def add_arguments(self, parser):
        parser.add_argument('--seed', type=unsigned_seed, action='append', default=[],
                            help='Seed to run (repeatable; default: the configured seeds).')
        parser.add_argument('--out', type=Path, help='Also write the report to this file.')
        parser.add_argument('--n', type=int, help=argparse.SUPPRESS)

    @data_errors
    def handle(self, *args, **options):
        seeds = options.get('seed') or settings.TAILCORR['SELFTEST_SEEDS']
        n = options.get('n')
        if n is not None and n < 1:
            raise self.usage("--n must be positive")

        report = run_selftest(seeds, n=n)
        text = render_report(report)
        self.stdout.write(text, ending="")
        if options.get('out'):
            Path(options['out']).write_text(text, encoding="utf-8")

        if not report.passed:
            names = "; ".join(
                f"seed {item.seed} {item.point.p.label} {item.point.spec.label} {item.point.spec.position.value}"
                for item in report.breaches
            )
            raise CommandError(f"tolerance breached at {names}", returncode=ExitCode.TOLERANCE)
        self.stderr.write(self.style.SUCCESS("Gaussian constancy holds at every grid point."))
