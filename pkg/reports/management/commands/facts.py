import math

from core.choices import Frequency
from core.exceptions import TailcorrError
from risk.facts import summarize_facts

from ...base import ReportCommand, data_errors
from ...runconfig import evaluate


def _number(value, spec=".3f"):
    return "n/a" if value is None or math.isnan(value) else format(value, spec)


class Command(ReportCommand):
    help = 'Stylized facts of implied correlation on the daily (and, when possible, weekly) surfaces.'

    formats = ("text",)

    @data_errors
    def handle(self, *args, **options):
        cfg = self.run_config(options)
        daily = evaluate(cfg, Frequency.DAILY, self.build_grid(cfg, Frequency.DAILY))

        weekly = None
        try:
            weekly = evaluate(cfg, Frequency.WEEKLY)
        except TailcorrError as exc:
            self.stderr.write(self.style.WARNING(f"Weekly surface skipped: {exc.code}: {exc}"))

        summary = summarize_facts(daily, weekly)
        lines = []
        for facts in (summary.daily, summary.weekly):
            if facts is None:
                continue
            lines.append(f"[{facts.frequency}] Pearson {_number(facts.pearson)}, "
                         f"average implied {_number(facts.average_rho)}, "
                         f"range {_number(facts.min_rho)}..{_number(facts.max_rho)} "
                         f"(spread {_number(facts.spread)}), {facts.out_of_range} outside [-1, 1]")
            for item in facts.weights:
                lines.append(
                    f"  ({item.w1:.0%}, {item.w2:.0%}): long > short at {item.long_above_short}/{item.levels} levels, "
                    f"{item.long_above_short_deep}/{item.deep_levels} deepest; "
                    f"slope long {_number(item.long_slope, '+.4f')}, short {_number(item.short_slope, '+.4f')}; "
                    f"deepest spread {_number(item.deepest_spread, '+.3f')}"
                )
            lines.append(f"  deepest-level spread differs across weights by {_number(facts.max_spread_gap)}")
        if summary.frequency_gap is not None:
            lines.append(f"Weekly minus daily Pearson: {_number(summary.frequency_gap, '+.3f')}")
        self.emit("\n".join(lines) + "\n", cfg.out)
