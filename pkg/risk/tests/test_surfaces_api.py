from datetime import timedelta

import pytest
from django.utils import timezone
from rest_framework.test import APIClient

from core.choices import Frequency
from core.exceptions import InvalidConfig
from risk.correlation import build_surface
from risk.grids import preset_grid
from risk.models import SurfacePoint, SurfaceRun
from risk.tasks import build_surface_run
from synthetic.config import GeneratorConfig
from synthetic.generators import gen_bivariate_gaussian


@pytest.fixture
def api_client():
    return APIClient()


@pytest.fixture
def daily_surface():
    r1, r2 = gen_bivariate_gaussian(GeneratorConfig(seed=5, n=2000, rho=0.42))
    return build_surface(r1, r2, Frequency.DAILY, preset_grid("standard-daily"))


@pytest.fixture
def saved_run(daily_surface):
    return SurfaceRun.objects.create_from_surface(daily_surface, source="synthetic:test", grid_name="standard-daily", seed=5)


@pytest.mark.django_db
def test_saved_run_restores_the_surface(saved_run, daily_surface):
    """Persisted points come back in grid order with the same values."""
    assert SurfacePoint.objects.filter(run=saved_run).count() == 36
    restored = saved_run.to_surface()
    assert [point.key for point in restored] == [point.key for point in daily_surface]
    assert [point.rho for point in restored] == [point.rho for point in daily_surface]
    assert restored.levels()[-1].annotated_label == "99.81% (2 years)"


@pytest.mark.django_db
def test_list_runs(api_client, saved_run):
    response = api_client.get('/api/v1/risk/surfaces/')
    assert response.status_code == 200
    assert response.data['count'] == 1
    summary = response.data['results'][0]
    assert summary['point_count'] == 36
    assert summary['grid_name'] == "standard-daily"
    assert 'points' not in summary


@pytest.mark.django_db
def test_list_filters_by_frequency(api_client, saved_run):
    response = api_client.get('/api/v1/risk/surfaces/', {'frequency': 'weekly'})
    assert response.status_code == 200
    assert response.data['count'] == 0


@pytest.mark.django_db
def test_run_detail_includes_points(api_client, saved_run):
    response = api_client.get(f'/api/v1/risk/surfaces/{saved_run.id}/')
    assert response.status_code == 200
    assert len(response.data['points']) == 36
    assert response.data['out_of_range'] == 0
    assert response.data['seed'] == 5


@pytest.mark.django_db
def test_run_facts(api_client, saved_run):
    response = api_client.get(f'/api/v1/risk/surfaces/{saved_run.id}/facts/')
    assert response.status_code == 200
    assert response.data['frequency'] == "daily"
    assert len(response.data['weights']) == 3
    assert response.data['weights'][0]['levels'] == 6


@pytest.mark.django_db
def test_surfaces_are_read_only(api_client, saved_run):
    response = api_client.delete(f'/api/v1/risk/surfaces/{saved_run.id}/')
    assert response.status_code == 405
    assert response.data['code'] == 'method_not_allowed'
    assert SurfaceRun.objects.count() == 1


@pytest.mark.django_db
def test_build_surface_run_task(tmp_path):
    config = tmp_path / "gaussian.toml"
    config.write_text("[generator]\nseed = 9\nn = 3000\nrho = 0.3\n", encoding="utf-8")

    run_id = build_surface_run({"synthetic": str(config), "grid": "standard-daily"})

    run = SurfaceRun.objects.get(id=run_id)
    assert run.points.count() == 36
    assert run.seed == 9
    assert run.source == "synthetic:gaussian.toml"


@pytest.mark.django_db
def test_build_surface_run_returns_its_own_run(tmp_path, saved_run):
    """A run stamped later by another worker does not replace the task's own id."""
    SurfaceRun.objects.filter(id=saved_run.id).update(created_at=timezone.now() + timedelta(hours=1))
    config = tmp_path / "gaussian.toml"
    config.write_text("[generator]\nseed = 9\nn = 3000\nrho = 0.3\n", encoding="utf-8")

    run_id = build_surface_run({"synthetic": str(config), "weights": [[0.5, 0.5]], "position": "long"})

    assert run_id != str(saved_run.id)
    run = SurfaceRun.objects.get(id=run_id)
    assert run.seed == 9
    assert run.points.count() == 6


@pytest.mark.django_db
def test_create_from_surface_rejects_seed_outside_signed_range(daily_surface):
    with pytest.raises(InvalidConfig):
        SurfaceRun.objects.create_from_surface(daily_surface, seed=2 ** 63)
    assert not SurfaceRun.objects.exists()

@pytest.mark.django_db
def test_build_surface_run_rejects_unstorable_seed(tmp_path):
    config = tmp_path / "gaussian.toml"
    config.write_text("[generator]\nseed = 9\nn = 3000\nrho = 0.3\n", encoding="utf-8")
    with pytest.raises(InvalidConfig):
        build_surface_run({"synthetic": str(config), "seed": 2 ** 63})
    assert not SurfaceRun.objects.exists()

@pytest.mark.django_db
def test_unknown_run_reports_error_code(api_client):
    response = api_client.get('/api/v1/risk/surfaces/00000000-0000-0000-0000-000000000000/')
    assert response.status_code == 404
    assert response.data['code'] == 'not_found'
    assert 'detail' in response.data
