import logging
import uuid

from django.db import models, transaction

from core.choices import Frequency, Position
from core.exceptions import InvalidConfig
from marketdata.series import PortfolioSpec

from .correlation import CorrelationSurface, ImpliedCorrelationPoint
from .var import ProbabilityLevel

logger = logging.getLogger(__name__)

# SurfaceRun.seed is a signed 64-bit column
MAX_STORED_SEED = 2 ** 63 - 1


class SurfaceRunManager(models.Manager):
    def create_from_surface(self, surface, source="", grid_name="", seed=None):
        """Persist a computed surface and all of its points atomically."""
        if seed is not None and not 0 <= seed <= MAX_STORED_SEED:
            raise InvalidConfig(f"seed {seed} cannot be stored; saved runs need a seed below 2**63")
        with transaction.atomic():
            run = self.create(
                frequency=surface.frequency,
                source=source,
                grid_name=grid_name,
                n_obs=surface.n_obs,
                pearson=surface.pearson,
                seed=seed,
            )
            SurfacePoint.objects.bulk_create([
                SurfacePoint(
                    run=run,
                    probability=point.p.p,
                    waiting_periods=point.p.waiting_periods,
                    period=point.p.period or "",
                    w1=point.spec.w1,
                    w2=point.spec.w2,
                    position=point.spec.position,
                    rho=point.rho,
                    in_range=point.in_range,
                    var_asset1=point.var_asset1,
                    var_asset2=point.var_asset2,
                    var_portfolio=point.var_portfolio,
                )
                for point in surface.points
            ])
        logger.info("Saved %s surface run %s with %d points", run.frequency, run.id, len(surface))
        return run


class SurfaceRun(models.Model):
    """
    One evaluated implied-correlation surface.

    Points keep the individual and portfolio VaRs that produced them so a run
    can be audited without recomputing it.
    """
    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    frequency = models.CharField(max_length=10, choices=Frequency.choices)
    source = models.CharField(max_length=255, blank=True)
    grid_name = models.CharField(max_length=255, blank=True)
    n_obs = models.PositiveIntegerField()
    pearson = models.FloatField()
    seed = models.BigIntegerField(null=True, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    objects = SurfaceRunManager()

    def __str__(self):
        return f"{self.get_frequency_display()} surface ({str(self.id)[:8]})"

    def to_surface(self):
        points = [
            ImpliedCorrelationPoint(
                rho=point.rho,
                frequency=Frequency(self.frequency),
                p=ProbabilityLevel(point.probability, point.waiting_periods, point.period or None),
                spec=PortfolioSpec(point.w1, point.w2, point.position),
                var_asset1=point.var_asset1,
                var_asset2=point.var_asset2,
                var_portfolio=point.var_portfolio,
            )
            for point in self.points.order_by("id")
        ]
        return CorrelationSurface(self.frequency, points, self.pearson, self.n_obs)


class SurfacePoint(models.Model):
    run = models.ForeignKey(SurfaceRun, related_name="points", on_delete=models.CASCADE)
    probability = models.FloatField()
    waiting_periods = models.PositiveIntegerField(null=True, blank=True)
    period = models.CharField(max_length=20, blank=True)
    w1 = models.FloatField()
    w2 = models.FloatField()
    position = models.CharField(max_length=10, choices=Position.choices)
    rho = models.FloatField()
    in_range = models.BooleanField(default=True)
    var_asset1 = models.FloatField(null=True, blank=True)
    var_asset2 = models.FloatField(null=True, blank=True)
    var_portfolio = models.FloatField(null=True, blank=True)

    class Meta:
        unique_together = ('run', 'probability', 'w1', 'position')

    def __str__(self):
        return f"rho={self.rho:.3f} at {self.probability:.2%} ({self.position})"
