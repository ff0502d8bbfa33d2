from django.contrib import admin

from .models import SurfacePoint, SurfaceRun


class SurfacePointInline(admin.TabularInline):
    model = SurfacePoint
    extra = 0
    can_delete = False
    readonly_fields = [
        'probability', 'waiting_periods', 'w1', 'w2', 'position',
        'rho', 'in_range', 'var_asset1', 'var_asset2', 'var_portfolio',
    ]
    exclude = ['period']


@admin.register(SurfaceRun)
class SurfaceRunAdmin(admin.ModelAdmin):
    list_display = ['id', 'frequency', 'source', 'grid_name', 'n_obs', 'pearson', 'created_at']
    list_filter = ['frequency']
    search_fields = ['source', 'grid_name']
    inlines = [SurfacePointInline]
