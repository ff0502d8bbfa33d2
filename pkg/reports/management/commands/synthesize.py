from pathlib import Path

from django.core.management.base import BaseCommand

from marketdata.loaders import dump_csv
from marketdata.transforms import price_path
from synthetic.config import load_generator_config
from synthetic.generators import generate

from ...base import UsageExitMixin, data_errors, unsigned_seed


class Command(UsageExitMixin, BaseCommand):
    help = 'Write a synthetic return pair as two price CSV files (base 100) loadable with --asset1/--asset2.'

    def add_arguments(self, parser):
        parser.add_argument('--synthetic', type=Path, required=True, help='Generator config (TOML).')
        parser.add_argument('--out-dir', type=Path, required=True)
        parser.add_argument('--seed', type=unsigned_seed, help='Override the generator seed.')

    @data_errors
    def handle(self, *args, **options):
        cfg = load_generator_config(options['synthetic'], seed=options.get('seed'))
        out_dir = Path(options["out_dir"])
        out_dir.mkdir(parents=True, exist_ok=True)
        for returns in generate(cfg):
            path = dump_csv(price_path(returns), out_dir / f"{returns.asset_id}.csv")
            self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))
