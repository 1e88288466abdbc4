import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    max_examples=50,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def apery_analysis():
    from holonorm.pipeline import AnalysisConfig, analyze
    from holonorm.seqdef import catalog_get

    return analyze(catalog_get("apery"), AnalysisConfig())


@pytest.fixture(scope="session")
def franel_analysis():
    from holonorm.pipeline import AnalysisConfig, analyze
    from holonorm.seqdef import catalog_get

    return analyze(catalog_get("franel"), AnalysisConfig())


@pytest.fixture(scope="session")
def binomial_analysis():
    from holonorm.pipeline import AnalysisConfig, analyze
    from holonorm.seqdef import catalog_get

    return analyze(catalog_get("binomial"), AnalysisConfig())


@pytest.fixture(scope="session")
def narayana_analysis():
    from holonorm.pipeline import AnalysisConfig, analyze
    from holonorm.seqdef import catalog_get

    return analyze(catalog_get("narayana"), AnalysisConfig())


@pytest.fixture(scope="session")
def trinomial_analysis():
    from holonorm.pipeline import AnalysisConfig, analyze
    from holonorm.seqdef import catalog_get

    return analyze(catalog_get("central-trinomial-triangle"), AnalysisConfig())
