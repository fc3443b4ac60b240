import os
import pytest
from app.services.semiring_service import SemiringService

SEMIRING_DIR = os.path.join(os.path.dirname(__file__), "semirings")


@pytest.fixture
def boolean():
    return SemiringService.builtin("boolean")


@pytest.fixture
def s3():
    return SemiringService.builtin("truncated_nat", 2)


@pytest.fixture
def s4():
    return SemiringService.builtin("truncated_nat", 3)


@pytest.fixture
def z4():
    return SemiringService.builtin("zmod", 4)


@pytest.fixture
def minplus4():
    return SemiringService.builtin("chain_minplus", 4)


@pytest.fixture
def s3_path():
    return os.path.join(SEMIRING_DIR, "S3.sr")


@pytest.fixture
def s4_path():
    return os.path.join(SEMIRING_DIR, "S4.sr")


@pytest.fixture
def s3_text(s3_path):
    with open(s3_path, encoding="utf-8") as handle:
        return handle.read()


@pytest.fixture
def client():
    from app import create_app

    app = create_app()
    app.config["TESTING"] = True
    with app.test_client() as test_client:
        yield test_client
