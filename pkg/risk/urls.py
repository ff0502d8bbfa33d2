from django.urls import path, include
from rest_framework.routers import DefaultRouter

from .views import SurfaceRunViewSet

router = DefaultRouter()
router.register(r'surfaces', SurfaceRunViewSet, basename='surface')

urlpatterns = [
    path('', include(router.urls)),
]
