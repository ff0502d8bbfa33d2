"""
Celery app for background surface builds and the scheduled selftest.

Tasks live in ``risk.tasks`` and ``reports.tasks``. They run the same code
paths as the ``table --save`` and ``selftest`` commands.
"""
import os

from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')

app = Celery('tailcorr')

# CELERY_* keys in settings.py (broker, serializers, beat schedule)
app.config_from_object('django.conf:settings', namespace='CELERY')
app.autodiscover_tasks()
