from rest_framework import serializers

from .models import SurfacePoint, SurfaceRun


class SurfacePointSerializer(serializers.ModelSerializer):
    class Meta:
        model = SurfacePoint
        fields = [
            'probability', 'waiting_periods', 'period', 'w1', 'w2', 'position',
            'rho', 'in_range', 'var_asset1', 'var_asset2', 'var_portfolio',
        ]


class SurfaceRunSerializer(serializers.ModelSerializer):
    points = SurfacePointSerializer(many=True, read_only=True)
    out_of_range = serializers.SerializerMethodField()

    class Meta:
        model = SurfaceRun
        fields = [
            'id', 'frequency', 'source', 'grid_name', 'n_obs', 'pearson',
            'seed', 'created_at', 'out_of_range', 'points',
        ]

    def get_out_of_range(self, obj):
        return sum(1 for point in obj.points.all() if not point.in_range)


class SurfaceRunSummarySerializer(serializers.ModelSerializer):
    """Lightweight serializer for run listings"""
    point_count = serializers.IntegerField(read_only=True)

    class Meta:
        model = SurfaceRun
        fields = ['id', 'frequency', 'source', 'grid_name', 'n_obs', 'pearson', 'created_at', 'point_count']
