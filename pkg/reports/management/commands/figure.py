from ...base import ReportCommand, data_errors
from ...rendering import render_csv, render_svg
from ...runconfig import evaluate

EQUAL_WEIGHTS = (0.5, 0.5)


class Command(ReportCommand):
    help = 'Implied correlation against waiting period for one weight pair (SVG chart or CSV points).'

    formats = ("csv", "svg")
    default_format = "svg"

    @data_errors
    def handle(self, *args, **options):
        if len(options.get('weights') or ()) > 1:
            raise self.usage("figure plots a single weight pair; give --weights at most once")
        options['weights'] = options.get('weights') or [EQUAL_WEIGHTS]

        cfg = self.run_config(options)
        frequency = cfg.resolved_frequency
        surface = evaluate(cfg, frequency, self.build_grid(cfg, frequency))
        renderer = render_csv if cfg.output_format == "csv" else render_svg
        self.emit(renderer(surface), cfg.out)
