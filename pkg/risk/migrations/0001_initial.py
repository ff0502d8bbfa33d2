# Generated by Django 5.2.10 on 2026-10-19 09:12

import django.db.models.deletion
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SurfaceRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('frequency', models.CharField(choices=[('daily', 'Daily'), ('weekly', 'Weekly')], max_length=10)),
                ('source', models.CharField(blank=True, max_length=255)),
                ('grid_name', models.CharField(blank=True, max_length=255)),
                ('n_obs', models.PositiveIntegerField()),
                ('pearson', models.FloatField()),
                ('seed', models.BigIntegerField(blank=True, null=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
        ),
        migrations.CreateModel(
            name='SurfacePoint',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('probability', models.FloatField()),
                ('waiting_periods', models.PositiveIntegerField(blank=True, null=True)),
                ('period', models.CharField(blank=True, max_length=20)),
                ('w1', models.FloatField()),
                ('w2', models.FloatField()),
                ('position', models.CharField(choices=[('long', 'Long'), ('short', 'Short')], max_length=10)),
                ('rho', models.FloatField()),
                ('in_range', models.BooleanField(default=True)),
                ('var_asset1', models.FloatField(blank=True, null=True)),
                ('var_asset2', models.FloatField(blank=True, null=True)),
                ('var_portfolio', models.FloatField(blank=True, null=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='points', to='risk.surfacerun')),
            ],
            options={
                'unique_together': {('run', 'probability', 'w1', 'position')},
            },
        ),
    ]
