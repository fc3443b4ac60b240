import os
from dotenv import load_dotenv

load_dotenv()


def _env_bool(name: str, default: bool) -> bool:
    return os.getenv(name, str(default)).strip().lower() in {"1", "true", "yes", "on"}


class Settings:
    # Logging Configuration
    DEBUG: bool = _env_bool("WORKBENCH_DEBUG", False)
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")
    ENABLE_FILE_LOGGING: bool = _env_bool("ENABLE_FILE_LOGGING", False)
    LOG_DIR: str = os.getenv("LOG_DIR", "logs")

    # Ideal / Topology Caps
    MAX_ORDER: int = int(os.getenv("MAX_ORDER", "8"))
    POINT_CAP: int = int(os.getenv("POINT_CAP", "4096"))
    CLOSED_CAP: int = int(os.getenv("CLOSED_CAP", "100000"))
    SOFT_BUDGET_SECONDS: float = float(os.getenv("SOFT_BUDGET_SECONDS", "10.0"))

    # Corpus Search Configuration
    SEARCH_MAX_ORDER: int = int(os.getenv("SEARCH_MAX_ORDER", "4"))
    ORACLE_MAX_ORDER: int = int(os.getenv("ORACLE_MAX_ORDER", "5"))

    # Natural-number backend
    NAT_ORACLE_FACTOR: int = int(os.getenv("NAT_ORACLE_FACTOR", "10"))
    # the membership window grows with the square of the largest generator
    NAT_MAX_GENERATOR: int = int(os.getenv("NAT_MAX_GENERATOR", "1000"))

    # Suite execution
    N_JOBS: int = int(os.getenv("N_JOBS", "1"))

    # Semiring files
    SEMIRING_EXTENSIONS: set = {'.sr', '.semiring', '.txt'}

    # HTTP API
    API_HOST: str = os.getenv("API_HOST", "127.0.0.1")
    API_PORT: int = int(os.getenv("API_PORT", "5000"))
    MAX_CONTENT_LENGTH: int = 1024 * 1024


# Create a global settings instance
settings = Settings()
