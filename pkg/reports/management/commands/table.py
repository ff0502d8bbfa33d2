from core.exceptions import InvalidConfig

from ...base import ReportCommand, data_errors
from ...rendering import render_csv, render_text
from ...runconfig import evaluate, save_run, storable_seed


class Command(ReportCommand):
    help = 'Implied correlation surface as a table: probability levels by weight pair and position.'

    formats = ("csv", "text")

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--save', action='store_true', help='Persist the surface as a SurfaceRun.')

    @data_errors
    def handle(self, *args, **options):
        cfg = self.run_config(options)
        if options.get('save'):
            try:
                storable_seed(cfg)
            except InvalidConfig as exc:
                raise self.usage(exc)

        frequency = cfg.resolved_frequency
        surface = evaluate(cfg, frequency, self.build_grid(cfg, frequency))

        if options.get('save'):
            run = save_run(cfg, surface)
            self.stderr.write(self.style.SUCCESS(f"Saved surface run {run.id}"))

        renderer = render_csv if cfg.output_format == "csv" else render_text
        self.emit(renderer(surface), cfg.out)
        if surface.out_of_range:
            self.stderr.write(self.style.WARNING(
                f"{len(surface.out_of_range)} implied correlations fall outside [-1, 1]"
            ))
