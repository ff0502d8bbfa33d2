from celery import shared_task

from reports.runconfig import RunConfig, evaluate, save_run, storable_seed


@shared_task
def build_surface_run(options):
    """
    Evaluate and persist a surface in the background.

    ``options`` are the ``table`` source and grid options (JSON-serializable), e.g.
    ``{"synthetic": "cfg.toml", "grid": "standard-daily"}``. Returns the id of
    the run this task saved.
    """
    options = dict(options)
    options["weights"] = tuple(tuple(pair) for pair in options.get("weights") or ())
    cfg = RunConfig(**options)
    storable_seed(cfg)
    run = save_run(cfg, evaluate(cfg))
    return str(run.id)
