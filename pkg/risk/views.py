import math

from django.db.models import Count
from rest_framework import permissions, viewsets
from rest_framework.response import Response
from rest_framework.decorators import action

from .facts import surface_facts
from .models import SurfaceRun
from .pagination import StandardResultsSetPagination
from .serializers import SurfaceRunSerializer, SurfaceRunSummarySerializer


def _finite(value):
    # strict JSON has no NaN
    return None if value is None or math.isnan(value) else value


class SurfaceRunViewSet(viewsets.ReadOnlyModelViewSet):
    """
    Read-only access to persisted implied-correlation surfaces.

    Custom Actions:
    - facts: stylized-fact summary of one run
    """
    permission_classes = [permissions.AllowAny]
    pagination_class = StandardResultsSetPagination

    def get_queryset(self):
        queryset = SurfaceRun.objects.annotate(point_count=Count('points')).order_by('-created_at')
        frequency = self.request.query_params.get('frequency')
        if frequency:
            queryset = queryset.filter(frequency=frequency)
        if self.action != 'list':
            queryset = queryset.prefetch_related('points')
        return queryset

    def get_serializer_class(self):
        if self.action == 'list':
            return SurfaceRunSummarySerializer
        return SurfaceRunSerializer

    @action(detail=True, methods=['get'])
    def facts(self, request, pk=None):
        run = self.get_object()
        summary = surface_facts(run.to_surface())
        return Response({
            "frequency": summary.frequency,
            "pearson": summary.pearson,
            "average_rho": _finite(summary.average_rho),
            "min_rho": _finite(summary.min_rho),
            "max_rho": _finite(summary.max_rho),
            "out_of_range": summary.out_of_range,
            "weights": [
                {
                    "w1": facts.w1,
                    "w2": facts.w2,
                    "long_above_short": facts.long_above_short,
                    "levels": facts.levels,
                    "long_above_short_deep": facts.long_above_short_deep,
                    "long_slope": _finite(facts.long_slope),
                    "short_slope": _finite(facts.short_slope),
                    "deepest_spread": _finite(facts.deepest_spread),
                }
                for facts in summary.weights
            ],
        })
