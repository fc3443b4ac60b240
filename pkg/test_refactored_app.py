#!/usr/bin/env python3
"""
Smoke test that the application structure imports and wires together
"""


def test_imports():
    """All modules import and the Flask app is created with its blueprint"""
    from app.config.settings import settings
    from app.models.schemas import FiniteSemiring, SubtractiveSpace
    from app.core.file_utils import SemiringFileManager
    from app.services.semiring_service import SemiringService
    from app.services.ideal_service import IdealService
    from app.services.topology_service import TopologyService
    from app.services.nat_service import NatIdealService
    from app.services.verification_service import VerificationService
    from app.api.v1.endpoints.workbench_endpoint import workbench_bp
    from app.cli import cli
    from app import create_app

    app = create_app()
    assert "workbench" in app.blueprints
    assert app.config["MAX_CONTENT_LENGTH"] == settings.MAX_CONTENT_LENGTH
    assert set(cli.commands) == {"validate", "ideals", "closure", "topology", "check", "search", "nat", "serve"}


def test_semiring_files_directory_is_readable():
    import os
    from app.core.file_utils import SemiringFileManager

    directory = os.path.join(os.path.dirname(__file__), "semirings")
    names = [s.name for s in SemiringFileManager.read_semirings([directory])]
    assert names == ["B", "S3", "S4"]


if __name__ == "__main__":
    test_imports()
